#include "ccc/limit.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace ccc {

bool Cocharacter::is_zero() const {
  return std::all_of(weights.begin(), weights.end(), [](long long w) { return w == 0; });
}

Cocharacter Cocharacter::combine(long long n, const Cocharacter& other) const {
  if (other.weights.size() != weights.size()) fail(ErrorKind::DimensionMismatch, "cocharacter ranks differ");
  if (conjugator.has_value() != other.conjugator.has_value() ||
      (conjugator && *conjugator != *other.conjugator))
    fail(ErrorKind::PreconditionFailed, "cocharacters are not simultaneously diagonal");
  Cocharacter out{weights, conjugator};
  for (std::size_t i = 0; i < weights.size(); ++i) out.weights[i] = n * weights[i] + other.weights[i];
  return out;
}

std::string Cocharacter::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
  os << ")";
  if (conjugator) os << " conj " << conjugator->str();
  return os.str();
}

Vec WeightGrading::reassemble(const Field& f, std::size_t dim) const {
  Vec out = zero_vec(f, dim);
  for (const auto& [w, comp] : components)
    for (std::size_t i = 0; i < dim; ++i) out[i] += comp[i];
  return out;
}

const char* limit_class_name(LimitClass c) {
  switch (c) {
    case LimitClass::FixesPoint: return "FixesPoint";
    case LimitClass::DestabilizesWithinRationalOrbit: return "DestabilizesWithinRationalOrbit";
    case LimitClass::ProperlyDestabilizes: return "ProperlyDestabilizes";
    case LimitClass::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* membership_name(ParabolicMembership m) {
  switch (m) {
    case ParabolicMembership::InRuP: return "InRuP";
    case ParabolicMembership::InLevi: return "InLevi";
    case ParabolicMembership::InPNotLevi: return "InPNotLevi";
    case ParabolicMembership::NotInP: return "NotInP";
  }
  return "NotInP";
}

namespace {

void check_shapes(const Vec& v, const Cocharacter& lambda, const LinearAction& model) {
  if (v.size() != model.dimension()) fail(ErrorKind::DimensionMismatch, "point has the wrong dimension for " + model.name());
  if (lambda.rank() != model.rank()) fail(ErrorKind::DimensionMismatch, "cocharacter rank does not match " + model.name());
  if (lambda.conjugator) {
    const Matrix& c = *lambda.conjugator;
    if (!c.is_square() || c.rows() != model.group_dimension())
      fail(ErrorKind::DimensionMismatch, "conjugator has the wrong size");
  }
}

Vec to_lambda_frame(const Vec& v, const Cocharacter& lambda, const LinearAction& model) {
  return lambda.conjugator ? model.act(*lambda.conjugator, v, true) : v;
}

Vec from_lambda_frame(const Vec& v, const Cocharacter& lambda, const LinearAction& model) {
  return lambda.conjugator ? model.act(*lambda.conjugator, v, false) : v;
}

}  // namespace

WeightGrading grade_vector(const Vec& v, const Cocharacter& lambda, const LinearAction& model) {
  check_shapes(v, lambda, model);
  Vec local = to_lambda_frame(v, lambda, model);
  std::map<long long, Vec> parts;
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (local[i].is_zero()) continue;
    long long w = model.coordinate_weight(i, lambda.weights);
    auto it = parts.try_emplace(w, zero_vec(model.field(), local.size())).first;
    it->second[i] = local[i];
  }
  WeightGrading g;
  for (auto& [w, comp] : parts) g.components.emplace(w, from_lambda_frame(comp, lambda, model));
  return g;
}

LimitResult limit(const Vec& v, const Cocharacter& lambda, const LinearAction& model) {
  check_shapes(v, lambda, model);
  Vec local = to_lambda_frame(v, lambda, model);
  Vec fixed = zero_vec(model.field(), local.size());
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (local[i].is_zero()) continue;
    long long w = model.coordinate_weight(i, lambda.weights);
    if (w < 0) return {};
    if (w == 0) fixed[i] = local[i];
  }
  LimitResult r;
  r.exists = true;
  r.value = from_lambda_frame(fixed, lambda, model);
  if (*r.value == v) {
    r.classification = LimitClass::FixesPoint;
  } else if (auto same = model.same_orbit(v, *r.value)) {
    r.classification = *same ? LimitClass::DestabilizesWithinRationalOrbit : LimitClass::ProperlyDestabilizes;
  }
  return r;
}

ParabolicMembership p_lambda_membership(const Matrix& g0, const Cocharacter& lambda) {
  const std::size_t n = lambda.rank();
  if (!g0.is_square() || g0.rows() != n) fail(ErrorKind::DimensionMismatch, "matrix and cocharacter sizes differ");
  if (!try_inverse(g0)) fail(ErrorKind::DomainError, "matrix is not invertible");
  Matrix g = g0;
  if (lambda.conjugator) {
    if (lambda.conjugator->rows() != n) fail(ErrorKind::DimensionMismatch, "conjugator has the wrong size");
    g = inverse(*lambda.conjugator) * g0 * *lambda.conjugator;
  }
  const auto& w = lambda.weights;
  bool levi = true, unipotent = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (g(i, j).is_zero()) {
        if (i == j) unipotent = false;
        continue;
      }
      if (w[i] < w[j]) return ParabolicMembership::NotInP;
      if (w[i] != w[j]) levi = false;
      if (w[i] == w[j] && (i != j || !g(i, j).is_one())) unipotent = false;
    }
  if (levi) return ParabolicMembership::InLevi;
  if (unipotent) return ParabolicMembership::InRuP;
  return ParabolicMembership::InPNotLevi;
}

Cocharacter torus_to_cocharacter(const std::vector<Weights>& characters, std::size_t rank) {
  for (const auto& c : characters) {
    if (c.size() != rank) fail(ErrorKind::DimensionMismatch, "character length differs from the rank");
    if (std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; }))
      fail(ErrorKind::PreconditionFailed, "characters must be nonzero");
  }
  if (characters.empty()) return Cocharacter::diagonal(Weights(rank, 0));
  for (long long N = 0;; ++N) {
    Weights mu(rank);
    long long term = 1;
    for (std::size_t i = 0; i < rank; ++i) {
      mu[i] = term;
      term *= -N;
    }
    bool ok = true;
    for (const auto& c : characters) {
      long long s = 0;
      for (std::size_t i = 0; i < rank; ++i) s += c[i] * mu[i];
      if (s == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return Cocharacter::diagonal(mu);
  }
}

IteratedLimit iterated_limit_check(const Vec& v, const Cocharacter& lambda, const Cocharacter& mu,
                                   const LinearAction& model) {
  LimitResult first = limit(v, lambda, model);
  if (!first.exists) fail(ErrorKind::PreconditionFailed, "limit along the first cocharacter does not exist");
  LimitResult second = limit(*first.value, mu, model);
  if (!second.exists) fail(ErrorKind::PreconditionFailed, "limit along the second cocharacter does not exist");
  lambda.combine(1, mu);  // validates simultaneous diagonality

  long long max_entry = 0, max_coord = 0;
  for (long long w : mu.weights) max_entry = std::max(max_entry, std::llabs(w));
  for (std::size_t i = 0; i < model.dimension(); ++i)
    max_coord = std::max(max_coord, std::llabs(model.coordinate_weight(i, mu.weights)));
  const long long bound = std::max(1 + 2 * max_entry, 1 + max_coord);

  // Scan downward: the threshold is one past the largest failing n.
  long long threshold = 1;
  for (long long n = bound; n >= 1; --n) {
    LimitResult r = limit(v, lambda.combine(n, mu), model);
    if (!r.exists || *r.value != *second.value) {
      threshold = n + 1;
      break;
    }
  }
  if (threshold > bound) fail(ErrorKind::InternalError, "combined limits disagree at the search bound");
  IteratedLimit out;
  out.threshold = threshold;
  out.bound = bound;
  out.witness = second;
  return out;
}

}  // namespace ccc
