#pragma once

// Exact coefficient fields: Q, GF(p^e), F_p(t) and towers of simple
// extensions.  A Field is a cheap shared handle to an immutable node; an
// Elem carries its field handle plus a canonical representation, so
// equality of elements is equality of representations.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccc/error.hpp"
#include "ccc/fp_poly.hpp"

namespace ccc {

enum class FieldKind { Rationals, Prime, Function, Extension };

namespace detail {

struct RatFun {
  fp::Vec num;
  fp::Vec den;  // monic, coprime to num
};

struct Rep;
using ExtVec = std::vector<Rep>;

struct Rep {
  std::variant<mpq_class, std::uint64_t, RatFun, ExtVec> v;
};

struct FieldNode;
using NodePtr = std::shared_ptr<const FieldNode>;

struct FieldNode {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;       // characteristic
  std::string var;           // variable of F_p(var) or extension generator
  NodePtr base;              // immediate base (extensions only)
  std::vector<Rep> minpoly;  // monic, coefficients over base, size degree+1
  unsigned degree = 1;       // over base
  unsigned gf_exp = 0;       // nonzero when this node is the GF(p^e) alias
  bool finite = false;
  mpz_class order;           // for finite fields
  bool separable_step = true;
  std::optional<Rep> radicand;  // minpoly == X^(p^e) - c: holds c
  std::string descriptor;

  Rep zero() const;
  Rep one() const;
  Rep from_int(const mpz_class& n) const;
  bool is_zero(const Rep& a) const;
  bool eq(const Rep& a, const Rep& b) const;
  int cmp(const Rep& a, const Rep& b) const;
  Rep add(const Rep& a, const Rep& b) const;
  Rep sub(const Rep& a, const Rep& b) const;
  Rep neg(const Rep& a) const;
  Rep mul(const Rep& a, const Rep& b) const;
  Rep inv(const Rep& a) const;
  std::string fmt(const Rep& a) const;
};

}  // namespace detail

class Elem;

class Field {
 public:
  Field();  // the rationals
  explicit Field(detail::NodePtr n) : n_(std::move(n)) {}

  static Field rationals();
  static Field prime(std::uint64_t p);
  static Field finite(std::uint64_t p, unsigned e);
  static Field function_field(std::uint64_t p, const std::string& var = "t");
  // Parses the descriptor grammar; extension minimal polynomials are
  // checked for irreducibility.
  static Field parse(std::string_view descriptor);
  // The caller guarantees that coeffs (monic, low to high) is irreducible.
  static Field extension_unchecked(const Field& base, const std::vector<Elem>& coeffs,
                                   const std::string& gen);

  FieldKind kind() const { return n_->kind; }
  std::uint64_t characteristic() const { return n_->p; }
  bool is_finite() const { return n_->finite; }
  const mpz_class& order() const { return n_->order; }
  unsigned degree() const { return n_->degree; }
  bool is_gf_alias() const { return n_->gf_exp != 0; }
  bool is_extension() const { return n_->kind == FieldKind::Extension; }
  bool is_perfect() const;
  Field base() const;
  const std::string& descriptor() const { return n_->descriptor; }
  const std::string& generator_name() const { return n_->var; }
  std::vector<Elem> minpoly() const;
  // Separable step over the immediate base, or X^p - c.
  bool separable_step() const { return n_->separable_step; }
  std::optional<Elem> radicand() const;
  // Number of extension steps above the bottom field.
  int tower_height() const;
  Field bottom() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(long long n) const;
  Elem from_mpz(const mpz_class& n) const;
  Elem from_rational(const mpq_class& q) const;
  // The variable of F_p(t) or the generator of an extension.
  Elem gen() const;
  // F_p(t) only: num/den with any nonzero den.
  Elem from_ratfun(fp::Vec num, fp::Vec den) const;
  Elem parse_element(std::string_view literal) const;

  // Elements of a subfield of this tower map in canonically.
  bool contains(const Field& sub) const;
  Elem embed(const Elem& x) const;
  Elem from_coords(const std::vector<Elem>& coords) const;
  std::vector<Elem> coords(const Elem& x) const;

  // Finite fields: a fixed bijection with [0, q).
  Elem element_at(std::uint64_t idx) const;
  std::uint64_t index_of(const Elem& x) const;
  std::uint64_t size_u64() const;

  Elem random(std::mt19937_64& rng) const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }
  const detail::NodePtr& node() const { return n_; }

 private:
  detail::NodePtr n_;
};

class Elem {
 public:
  Elem() = default;
  Elem(detail::NodePtr f, detail::Rep r) : f_(std::move(f)), r_(std::move(r)) {}

  Field field() const { return Field(f_); }
  const detail::NodePtr& node() const { return f_; }
  const detail::Rep& rep() const { return r_; }
  bool valid() const { return static_cast<bool>(f_); }

  bool is_zero() const { return f_->is_zero(r_); }
  bool is_one() const;
  Elem operator-() const { return Elem(f_, f_->neg(r_)); }
  Elem inverse() const { return Elem(f_, f_->inv(r_)); }
  Elem pow(long long e) const;
  Elem pow(const mpz_class& e) const;

  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  Elem& operator*=(const Elem& o);
  Elem& operator/=(const Elem& o);
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(Elem a, const Elem& b) { return a *= b; }
  friend Elem operator/(Elem a, const Elem& b) { return a /= b; }

  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }
  // Canonical total order (used for deterministic choices).
  int compare(const Elem& o) const;
  bool operator<(const Elem& o) const { return compare(o) < 0; }

  std::string str() const { return f_->fmt(r_); }

  // Rationals only.
  const mpq_class& rational() const;
  // Prime fields only.
  std::uint64_t residue() const;
  // F_p(t) only.
  const detail::RatFun& ratfun() const;

 private:
  void check_same(const Elem& o) const;
  detail::NodePtr f_;
  detail::Rep r_;
};

std::ostream& operator<<(std::ostream& os, const Elem& x);

// Nodes are compatible when they describe the same field.
bool same_field(const detail::NodePtr& a, const detail::NodePtr& b);

}  // namespace ccc
