#pragma once

// Tuples of matrices as modules over the algebra they generate:
// enveloping algebras, composition series, radicals and semisimplicity.

#include <cstdint>
#include <string>
#include <vector>

#include "ccc/limit.hpp"
#include "ccc/matrix.hpp"

namespace ccc {

using MatrixTuple = std::vector<Matrix>;

std::vector<Matrix> enveloping_basis(const MatrixTuple& t);

struct CompositionFactor {
  std::size_t dimension = 0;
  std::string fingerprint;  // minimal polynomials of the generators on the factor
};

struct CompositionSeries {
  Matrix basis;                    // columns adapted to the series, bottom first
  std::vector<std::size_t> layers;  // factor dimensions, bottom first
};

struct ModuleReport {
  std::size_t algebra_dimension = 0;
  std::size_t radical_dimension = 0;
  std::vector<CompositionFactor> factors;
  bool semisimple = false;
  std::uint64_t seed = 0;
  std::string method;
  CompositionSeries series;
};

constexpr std::uint64_t kDefaultTupleSeed = 0x7e57;

CompositionSeries composition_series(const MatrixTuple& t, std::uint64_t seed = kDefaultTupleSeed);
ModuleReport is_semisimple(const MatrixTuple& t, std::uint64_t seed = kDefaultTupleSeed);
// Characteristic zero only: dimension of the kernel of (a, b) -> tr(ab)
// on the enveloping algebra.
std::size_t trace_form_radical_dimension(const MatrixTuple& t);
ModuleReport gcr_over_k(const MatrixTuple& generators, std::uint64_t seed = kDefaultTupleSeed);
// Coordinates (v_1, ..., v_r) over base with v = sum alpha_i v_i.
std::vector<Vec> tuple_from_extension_point(const Vec& v, const std::vector<Elem>& basis, const Field& base);
MatrixTuple semisimplify_tuple(const MatrixTuple& t, std::uint64_t seed = kDefaultTupleSeed);

// Simultaneous conjugation on End(k^n)^r.
class TupleConjugationAction : public LinearAction {
 public:
  TupleConjugationAction(Field f, std::size_t n, std::size_t r) : f_(std::move(f)), n_(n), r_(r) {}
  std::string name() const override { return "tuple-conjugation"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return r_ * n_ * n_; }
  std::size_t rank() const override { return n_; }
  long long coordinate_weight(std::size_t coord, const Weights& w) const override;
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;

  Vec flatten(const MatrixTuple& t) const;
  MatrixTuple unflatten(const Vec& v) const;

 private:
  Field f_;
  std::size_t n_, r_;
};

// GL_n acting on r-tuples of vectors in k^n.
class StandardAction : public LinearAction {
 public:
  StandardAction(Field f, std::size_t n, std::size_t copies = 1) : f_(std::move(f)), n_(n), r_(copies) {}
  std::string name() const override { return "standard"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return r_ * n_; }
  std::size_t rank() const override { return n_; }
  long long coordinate_weight(std::size_t coord, const Weights& w) const override { return w[coord % n_]; }
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;

 private:
  Field f_;
  std::size_t n_, r_;
};

}  // namespace ccc
