#pragma once

// Dense polynomials over a prime field F_p, coefficients in [0, p).
// Vectors are little-endian and trimmed; the zero polynomial is empty.

#include <cstdint>
#include <string>
#include <vector>

namespace ccc::fp {

using Coef = std::uint64_t;
using Vec = std::vector<Coef>;

Coef mul_mod(Coef a, Coef b, Coef p);
Coef pow_mod(Coef a, std::uint64_t e, Coef p);
Coef inv_mod(Coef a, Coef p);
bool is_prime(std::uint64_t n);

void trim(Vec& a);
inline int deg(const Vec& a) { return static_cast<int>(a.size()) - 1; }
inline Coef lc(const Vec& a) { return a.empty() ? 0 : a.back(); }

Vec add(const Vec& a, const Vec& b, Coef p);
Vec sub(const Vec& a, const Vec& b, Coef p);
Vec neg(const Vec& a, Coef p);
Vec scale(const Vec& a, Coef c, Coef p);
Vec mul(const Vec& a, const Vec& b, Coef p);
Vec shift(const Vec& a, std::size_t k);
void divmod(const Vec& a, const Vec& b, Coef p, Vec& q, Vec& r);
Vec rem(const Vec& a, const Vec& b, Coef p);
Vec quo(const Vec& a, const Vec& b, Coef p);
Vec monic(const Vec& a, Coef p);
Vec gcd(Vec a, Vec b, Coef p);
// Returns g = gcd(a,b) monic and s,t with s*a + t*b = g.
Vec xgcd(const Vec& a, const Vec& b, Coef p, Vec& s, Vec& t);
Vec pow(const Vec& a, std::uint64_t e, Coef p);
Vec powmod(const Vec& a, std::uint64_t e, const Vec& m, Coef p);
Vec derivative(const Vec& a, Coef p);
Coef eval(const Vec& a, Coef x, Coef p);
Vec compose(const Vec& a, const Vec& b, Coef p);
// Inverse of a modulo m (gcd must be 1).
Vec invmod(const Vec& a, const Vec& m, Coef p);

// a(t) = b(t^p) test and extraction: returns false when some exponent
// not divisible by p carries a nonzero coefficient.
bool deflate_p(const Vec& a, Coef p, Vec& out);

bool is_irreducible(const Vec& a, Coef p);
// Least monic irreducible of degree d in the order "by coefficients read
// from the constant term upward as a base-p number".
Vec least_irreducible(unsigned d, Coef p);

int compare(const Vec& a, const Vec& b);
std::string to_string(const Vec& a, const std::string& var);

}  // namespace ccc::fp
