#pragma once

// Square-free testing, radicals, irreducible factorization and root
// extraction over every supported field, including the imperfect ones.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccc/poly.hpp"

namespace ccc {

struct FactorOptions {
  // Desk-scale bounds; exceeding them raises DegreeTooLarge.
  int max_degree = 48;
  int max_t_degree = 128;
  std::uint64_t seed = 0x5eed;
};

struct FactorReport {
  Elem unit;
  std::vector<std::pair<Poly, int>> factors;  // monic, distinct, sorted

  Poly product() const;
  bool squarefree() const;
  std::string str(const std::string& var = "T") const;
};

FactorReport factor(const Poly& f, const FactorOptions& opt = {});
bool is_irreducible(const Poly& f, const FactorOptions& opt = {});
bool is_separable(const Poly& f);
bool squarefree_test(const Poly& f, const FactorOptions& opt = {});
Poly radical(const Poly& f, const FactorOptions& opt = {});
// Distinct roots in the coefficient field, canonically sorted.
std::vector<Elem> roots(const Poly& f, const FactorOptions& opt = {});

std::optional<Elem> pth_root(const Elem& x);
std::optional<Elem> is_nth_power(const Elem& x, unsigned n);

// Canonical p-basis element of an imperfect field in the supported
// towers (t for F_p(t); see p_components).
Elem p_basis_element(const Field& f);
// Writes x = sum_j pi^j * y_j^p with pi = p_basis_element; returns y.
std::vector<Elem> p_components(const Elem& x);

Field make_extension(const Field& base, const Poly& minpoly, const std::string& name);

namespace detail {
// Backends for monic, square-free, separable inputs.
std::vector<Poly> split_finite(const Poly& f, std::uint64_t seed);
std::vector<Poly> split_rational(const Poly& f, const FactorOptions& opt);
std::vector<Poly> split_function_field(const Poly& f, const FactorOptions& opt);
std::vector<Poly> split_extension(const Poly& f, const FactorOptions& opt);
std::vector<Poly> split_separable(const Poly& f, const FactorOptions& opt);
}  // namespace detail

}  // namespace ccc
