#pragma once

// Cocharacters in diagonal form, weight gradings and limits along them
// for linear actions.  A cocharacter with conjugator c stands for
// c * lambda * c^-1; limits are computed as c . lim_lambda (c^-1 . v).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccc/matrix.hpp"

namespace ccc {

using Weights = std::vector<long long>;

struct Cocharacter {
  Weights weights;
  std::optional<Matrix> conjugator;

  static Cocharacter diagonal(Weights w) { return {std::move(w), std::nullopt}; }
  bool is_zero() const;
  std::size_t rank() const { return weights.size(); }
  // n * this + other; both must share the conjugator.
  Cocharacter combine(long long n, const Cocharacter& other) const;
  std::string str() const;
};

struct WeightGrading {
  std::map<long long, Vec> components;  // only nonzero components
  Vec reassemble(const Field& f, std::size_t dim) const;
};

enum class LimitClass { FixesPoint, DestabilizesWithinRationalOrbit, ProperlyDestabilizes, Unknown };
const char* limit_class_name(LimitClass c);

struct LimitResult {
  bool exists = false;
  std::optional<Vec> value;
  LimitClass classification = LimitClass::Unknown;
};

// A linear action of a group containing a split torus of the given rank,
// diagonal in the point coordinates.
class LinearAction {
 public:
  virtual ~LinearAction() = default;
  virtual std::string name() const = 0;
  virtual const Field& field() const = 0;
  virtual std::size_t dimension() const = 0;
  virtual std::size_t rank() const = 0;
  // Size of the conjugator matrices accepted by act().
  virtual std::size_t group_dimension() const { return rank(); }
  virtual long long coordinate_weight(std::size_t coord, const Weights& w) const = 0;
  // g . v, or g^-1 . v when inverse is set.
  virtual Vec act(const Matrix& g, const Vec& v, bool inverse) const = 0;
  // Rational orbit comparison, when the model can decide it.
  virtual std::optional<bool> same_orbit(const Vec&, const Vec&) const { return std::nullopt; }
};

WeightGrading grade_vector(const Vec& v, const Cocharacter& lambda, const LinearAction& model);
LimitResult limit(const Vec& v, const Cocharacter& lambda, const LinearAction& model);

enum class ParabolicMembership { InRuP, InLevi, InPNotLevi, NotInP };
const char* membership_name(ParabolicMembership m);
ParabolicMembership p_lambda_membership(const Matrix& g, const Cocharacter& lambda);

// Smallest point on the curve (1, -N, N^2, ...) pairing nonzero with
// every listed character.
Cocharacter torus_to_cocharacter(const std::vector<Weights>& characters, std::size_t rank);

struct IteratedLimit {
  long long threshold = 0;  // N
  long long bound = 0;      // largest n tested
  LimitResult witness;
};
IteratedLimit iterated_limit_check(const Vec& v, const Cocharacter& lambda, const Cocharacter& mu,
                                   const LinearAction& model);

}  // namespace ccc
