#pragma once

// GL_n(k)-orbits of endomorphisms under conjugation: invariant factors,
// cocharacter-closedness, semisimplification and its witnesses.

#include <optional>
#include <string>
#include <vector>

#include "ccc/factor.hpp"
#include "ccc/limit.hpp"
#include "ccc/matrix.hpp"

namespace ccc {

struct EndoClass {
  Matrix representative;
  std::vector<Poly> invariant_factors;  // d_1 | d_2 | ... | d_r, all nonconstant
  Poly min_poly;
  Poly char_poly;
  std::size_t commutant_dimension = 0;

  // Canonical orbit identifier, e.g. "[T+1 | T^2+1]".
  std::string id() const;
  // Elementary divisors (prime powers), canonically sorted.
  std::vector<std::pair<Poly, int>> elementary_divisors(const FactorOptions& opt = {}) const;
  bool operator==(const EndoClass& o) const { return invariant_factors == o.invariant_factors; }
};

Poly char_poly(const Matrix& f);
Poly min_poly(const Matrix& f);
// Invariant factors of T*I - f via a Smith form over k[T].
std::vector<Poly> invariant_factor_list(const Matrix& f);
EndoClass invariant_factors(const Matrix& f);
std::string orbit_id(const Matrix& f);
// Block companion matrix of the given invariant factors.
Matrix rational_canonical_form(const std::vector<Poly>& factors, const Field& k);

struct ClosednessReport {
  bool closed = false;
  FactorReport min_poly_factorization;
  // Certificate when not closed: an f-stable proper subspace (basis rows),
  // the cocharacter it induces and the resulting limit.
  std::vector<Vec> stable_subspace;
  std::optional<Cocharacter> destabilizer;
  std::optional<Matrix> limit;
};

ClosednessReport is_cocharacter_closed(const Matrix& f, const FactorOptions& opt = {});
bool is_geometrically_closed(const Matrix& f);
EndoClass semisimplification(const Matrix& f, const FactorOptions& opt = {});

struct Witness {
  Cocharacter cocharacter;
  Matrix limit;
};
Witness witness_cocharacter(const Matrix& f, const FactorOptions& opt = {});

Matrix ru_conjugator(const Matrix& f, const Matrix& f_limit, const Cocharacter& lambda);
std::size_t commutant_dimension(const Matrix& f);
// Dimension via the Frobenius formula on invariant factors.
std::size_t commutant_dimension_from_factors(const std::vector<Poly>& factors);

// Conjugation action of GL_n on End(k^n), points flattened row-major.
class ConjugationAction : public LinearAction {
 public:
  ConjugationAction(Field f, std::size_t n) : f_(std::move(f)), n_(n) {}
  std::string name() const override { return "conjugation"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return n_ * n_; }
  std::size_t rank() const override { return n_; }
  long long coordinate_weight(std::size_t coord, const Weights& w) const override;
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;
  std::optional<bool> same_orbit(const Vec& a, const Vec& b) const override;

  Vec flatten(const Matrix& m) const { return m.entries(); }
  Matrix unflatten(const Vec& v) const { return Matrix(f_, n_, n_, v); }

 private:
  Field f_;
  std::size_t n_;
};

// Convenience wrapper: limit of a matrix under conjugation.
std::optional<Matrix> conjugation_limit(const Matrix& f, const Cocharacter& lambda);

// Adapted basis of a chain of subspaces (each given by spanning rows),
// smallest first; returns columns of the conjugator and the layer sizes.
Matrix adapted_basis(const Field& k, std::size_t n, const std::vector<std::vector<Vec>>& chain,
                     std::vector<std::size_t>& layer_sizes);

}  // namespace ccc
