#pragma once

// Concrete action models for accessibility graphs.

#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "ccc/endo.hpp"
#include "ccc/orbit_graph.hpp"
#include "ccc/tuple.hpp"

namespace ccc {

// Rows of every subspace of F_q^n in reduced echelon form, by dimension.
std::vector<std::vector<Vec>> all_subspaces(const Field& k, std::size_t n, std::size_t budget = kDefaultBudget);
// Invertible n x n matrices over a finite field, in index order.
std::vector<Matrix> all_invertible(const Field& k, std::size_t n, std::size_t budget = kDefaultBudget);
// Every vector of F_q^dim, in index order.
std::vector<Vec> all_vectors(const Field& k, std::size_t dim, std::size_t budget = kDefaultBudget);

// Limits of a tuple of matrices along the cocharacters attached to chains
// of jointly stable subspaces; each chain gives weights L-1, L-3, ... on
// its L layers, smallest subspace first.
struct FlagLimit {
  std::vector<Matrix> limit;
  Cocharacter witness;
};
std::vector<FlagLimit> flag_limits(const MatrixTuple& t, std::size_t budget = kDefaultBudget);

// GL_n(k) conjugation on End(k^n); flag enumeration over finite fields.
class EndoModel : public ActionModel {
 public:
  EndoModel(Field k, std::size_t n, std::size_t budget = kDefaultBudget);
  std::string name() const override { return "endo"; }
  const LinearAction& action() const override { return action_; }
  std::string orbit_id(const Vec& v) const override;
  Vec representative(const Vec& v) const override;
  std::string describe(const Vec& v) const override;
  std::vector<OneStepLimit> one_step_limits(const Vec& v) const override;
  std::optional<std::vector<Vec>> all_points() const override;

 private:
  ConjugationAction action_;
  std::size_t n_, budget_;
};

// Simultaneous conjugation of r-tuples of n x n matrices over a finite
// field; orbit ids are least points of enumerated orbits.
class TupleModel : public ActionModel {
 public:
  TupleModel(Field k, std::size_t n, std::size_t r, std::size_t budget = kDefaultBudget);
  std::string name() const override { return "tuple"; }
  const LinearAction& action() const override { return action_; }
  std::string orbit_id(const Vec& v) const override;
  Vec representative(const Vec& v) const override;
  std::vector<OneStepLimit> one_step_limits(const Vec& v) const override;
  std::optional<std::vector<Vec>> all_points() const override;

 private:
  Vec least_point(const Vec& v) const;
  TupleConjugationAction action_;
  std::size_t n_, r_, budget_;
  std::vector<Matrix> group_;
  mutable std::mutex mu_;
  mutable std::map<Vec, Vec> cache_;
};

// G_m acting on the line by a . z = a^2 z.
class LineAction : public LinearAction {
 public:
  explicit LineAction(Field f) : f_(std::move(f)) {}
  std::string name() const override { return "rsquares"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return 1; }
  std::size_t rank() const override { return 1; }
  long long coordinate_weight(std::size_t, const Weights& w) const override { return 2 * w[0]; }
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;
  std::optional<bool> same_orbit(const Vec& a, const Vec& b) const override;

 private:
  Field f_;
};

// Square classes of the line; zero is its own orbit.
std::string square_class_id(const Elem& z);

class RSquaresModel : public ActionModel {
 public:
  explicit RSquaresModel(Field k);
  std::string name() const override { return "rsquares"; }
  const LinearAction& action() const override { return action_; }
  std::string orbit_id(const Vec& v) const override { return square_class_id(v.at(0)); }
  std::vector<OneStepLimit> one_step_limits(const Vec& v) const override;

 private:
  LineAction action_;
};

// SL_2 x G_m on S^2(E) + E over a prime field. Coordinates x^2, xy, y^2,
// e1, e2. (h, b) with h = [[q, r], [s, t]] sends x to qx + sy and y to
// rx + ty, scales S^2(E) by b^2 and E by 1/b. Group elements are 3 x 3
// matrices blockdiag(h, b); cocharacters have weights (m, n).
class FromF4Action : public LinearAction {
 public:
  explicit FromF4Action(Field f);
  std::string name() const override { return "fromf4"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return 5; }
  std::size_t rank() const override { return 2; }
  std::size_t group_dimension() const override { return 3; }
  long long coordinate_weight(std::size_t coord, const Weights& w) const override;
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;

 private:
  Field f_;
};

class FromF4Model : public ActionModel {
 public:
  explicit FromF4Model(std::uint64_t p = 5, int weight_range = 3);
  std::string name() const override { return "fromf4"; }
  const LinearAction& action() const override { return action_; }
  std::string orbit_id(const Vec& v) const override;
  Vec representative(const Vec& v) const override;
  std::string describe(const Vec& v) const override;
  std::vector<OneStepLimit> one_step_limits(const Vec& v) const override;
  std::optional<std::vector<Vec>> all_points() const override;

  std::size_t group_order() const { return group_.size(); }
  std::size_t orbit_count() const;
  Matrix group_matrix(std::size_t idx) const;
  Vec point(std::uint32_t code) const;
  std::uint32_t code(const Vec& v) const;

 private:
  struct G {
    std::uint32_t q, r, s, t, b;
  };
  std::uint32_t act_code(const G& g, std::uint32_t code) const;
  FromF4Action action_;
  std::uint64_t p_;
  int range_;
  std::vector<G> group_;
  std::vector<std::uint32_t> least_;  // least code in the orbit of each code
};

// PGL_2 acting on gl_2 / scalars in characteristic 2. Points are 2 x 2
// matrices normalized to X - X_11 I and flattened.
class PGL2Action : public LinearAction {
 public:
  explicit PGL2Action(Field f);
  std::string name() const override { return "pgl2"; }
  const Field& field() const override { return f_; }
  std::size_t dimension() const override { return 4; }
  std::size_t rank() const override { return 2; }
  long long coordinate_weight(std::size_t coord, const Weights& w) const override;
  Vec act(const Matrix& g, const Vec& v, bool inverse) const override;
  Vec normalize(const Matrix& x) const;

 private:
  Field f_;
};

// Trace-zero classes only. One-step limits are structural: a proper limit
// exists iff the determinant is a square in k.
class PGL2Model : public ActionModel {
 public:
  explicit PGL2Model(Field k);
  std::string name() const override { return "pgl2"; }
  const LinearAction& action() const override { return action_; }
  std::string orbit_id(const Vec& v) const override;
  std::vector<OneStepLimit> one_step_limits(const Vec& v) const override;
  const PGL2Action& pgl2() const { return action_; }

 private:
  PGL2Action action_;
};

std::unique_ptr<ActionModel> make_model(const std::string& name, const Field& k, std::size_t n, std::size_t r,
                                        std::size_t budget = kDefaultBudget);

}  // namespace ccc
