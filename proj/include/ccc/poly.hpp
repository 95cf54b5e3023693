#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ccc/field.hpp"

namespace ccc {

// Univariate polynomial over a Field, coefficients low to high, trimmed.
class Poly {
 public:
  explicit Poly(Field f = Field());
  Poly(Field f, std::vector<Elem> coeffs);

  static Poly constant(const Elem& c);
  static Poly monomial(const Elem& c, std::size_t k);
  static Poly x(const Field& f);

  const Field& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Elem>& coeffs() const { return c_; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  Elem lc() const;
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  Poly monic() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Elem& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Elem& c) { return a *= c; }
  friend Poly operator/(const Poly& a, const Poly& b);  // quotient
  friend Poly operator%(const Poly& a, const Poly& b);  // remainder

  Elem eval(const Elem& x) const;
  Poly compose(const Poly& g) const;
  Poly derivative() const;
  Poly pow(unsigned e) const;
  // Coefficient-wise map into an extension of the field.
  Poly embed(const Field& ext) const;
  // f(T) = v(T^k): returns v when every exponent is divisible by k.
  bool deflate(unsigned k, Poly& v) const;
  Poly inflate(unsigned k) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Degree first, then coefficients from the top down.
  int compare(const Poly& o) const;
  bool operator<(const Poly& o) const { return compare(o) < 0; }

  std::string str(const std::string& var = "T") const;

 private:
  void trim();
  Field f_;
  std::vector<Elem> c_;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
bool divides(const Poly& d, const Poly& a);
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
// g = gcd(a, b) monic with s*a + t*b = g.
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);
Poly powmod(const Poly& a, const mpz_class& e, const Poly& m);

Poly parse_poly(const Field& f, std::string_view text, const std::string& var = "T");

// Renders a coefficient list in the literal grammar.
std::string format_poly(const std::vector<std::string>& coeffs, const std::string& var);

}  // namespace ccc
