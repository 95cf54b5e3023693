#include "ccc/models.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ccc {

namespace {

void require_finite(const Field& k, const std::string& what) {
  if (!k.is_finite()) fail(ErrorKind::EnumerationBudgetExceeded, what + " needs a finite field to enumerate");
}

std::uint64_t checked_power(std::uint64_t q, std::size_t e, std::size_t budget) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    out *= q;
    if (out > budget) fail(ErrorKind::EnumerationBudgetExceeded, "enumeration exceeds the budget");
  }
  return out;
}

Vec decode(const Field& k, std::uint64_t code, std::size_t dim) {
  const std::uint64_t q = k.size_u64();
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    v[i] = k.element_at(code % q);
    code /= q;
  }
  return v;
}

// Limit engine view of simultaneous conjugation without orbit classification.
class QuietTupleAction : public TupleConjugationAction {
 public:
  using TupleConjugationAction::TupleConjugationAction;
  std::optional<bool> same_orbit(const Vec&, const Vec&) const override { return std::nullopt; }
};

template <class Limits>
std::vector<OneStepLimit> dedupe(Limits&& candidates) {
  std::vector<OneStepLimit> out;
  std::set<std::string> seen;
  for (auto& c : candidates)
    if (seen.insert(c.target).second) out.push_back(std::move(c));
  return out;
}

}  // namespace

std::vector<Vec> all_vectors(const Field& k, std::size_t dim, std::size_t budget) {
  require_finite(k, "vector enumeration");
  const std::uint64_t count = checked_power(k.size_u64(), dim, budget);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) out.push_back(decode(k, c, dim));
  return out;
}

std::vector<std::vector<Vec>> all_subspaces(const Field& k, std::size_t n, std::size_t budget) {
  require_finite(k, "subspace enumeration");
  const std::uint64_t q = k.size_u64();
  std::vector<std::vector<Vec>> out;
  // Pivot sets as bitmasks; free entries sit right of each pivot outside pivot columns.
  for (std::size_t r = 0; r <= n; ++r) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != r) continue;
      std::vector<std::size_t> piv;
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1u) piv.push_back(j);
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = piv[i] + 1; j < n; ++j)
          if (!(mask >> j & 1u)) free.emplace_back(i, j);
      const std::uint64_t count = checked_power(q, free.size(), budget);
      for (std::uint64_t c = 0; c < count; ++c) {
        std::vector<Vec> rows(r, zero_vec(k, n));
        for (std::size_t i = 0; i < r; ++i) rows[i][piv[i]] = k.one();
        std::uint64_t x = c;
        for (const auto& [i, j] : free) {
          rows[i][j] = k.element_at(x % q);
          x /= q;
        }
        out.push_back(std::move(rows));
        if (out.size() > budget) fail(ErrorKind::EnumerationBudgetExceeded, "too many subspaces for the budget");
      }
    }
  }
  return out;
}

std::vector<Matrix> all_invertible(const Field& k, std::size_t n, std::size_t budget) {
  require_finite(k, "group enumeration");
  std::vector<Vec> vecs = all_vectors(k, n, budget);
  std::vector<Matrix> out;
  std::vector<Vec> cols;
  std::function<void()> grow = [&]() {
    if (cols.size() == n) {
      out.push_back(Matrix::from_columns(k, cols, n));
      if (out.size() > budget) fail(ErrorKind::EnumerationBudgetExceeded, "group order exceeds the budget");
      return;
    }
    EchelonBasis eb(k, n);
    for (const auto& c : cols) eb.insert(c);
    for (const auto& v : vecs) {
      if (eb.contains(v)) continue;
      cols.push_back(v);
      grow();
      cols.pop_back();
    }
  };
  grow();
  return out;
}

std::vector<FlagLimit> flag_limits(const MatrixTuple& t, std::size_t budget) {
  if (t.empty()) fail(ErrorKind::PreconditionFailed, "empty matrix tuple");
  const Field& k = t[0].field();
  const std::size_t n = t[0].rows();
  require_finite(k, "flag enumeration");
  struct Stable {
    std::vector<Vec> rows;
    EchelonBasis span;
  };
  std::vector<Stable> stable;
  for (auto& rows : all_subspaces(k, n, budget)) {
    if (rows.empty() || rows.size() == n) continue;
    EchelonBasis eb(k, n);
    for (const auto& r : rows) eb.insert(r);
    bool ok = true;
    for (const auto& g : t) {
      for (const auto& r : rows)
        if (!eb.contains(g.apply(r))) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) stable.push_back({std::move(rows), std::move(eb)});
  }
  QuietTupleAction action(k, n, t.size());
  Vec point = action.flatten(t);
  std::vector<FlagLimit> out;
  std::vector<std::size_t> chain;
  std::function<void()> visit = [&]() {
    std::vector<std::vector<Vec>> spaces;
    for (auto i : chain) spaces.push_back(stable[i].rows);
    std::vector<std::size_t> layers;
    Matrix basis = adapted_basis(k, n, spaces, layers);
    const long long L = static_cast<long long>(layers.size());
    Weights w;
    for (long long l = 0; l < L; ++l) w.insert(w.end(), layers[static_cast<std::size_t>(l)], L - 1 - 2 * l);
    Cocharacter lambda{w, chain.empty() ? std::nullopt : std::optional<Matrix>(basis)};
    LimitResult r = limit(point, lambda, action);
    if (!r.exists) fail(ErrorKind::InternalError, "stable flag gave no limit");
    out.push_back({action.unflatten(*r.value), lambda});
    if (out.size() > budget) fail(ErrorKind::EnumerationBudgetExceeded, "too many flags for the budget");
    const std::size_t top = chain.empty() ? 0 : stable[chain.back()].rows.size();
    for (std::size_t i = 0; i < stable.size(); ++i) {
      if (stable[i].rows.size() <= top) continue;
      if (!chain.empty()) {
        const auto& lower = stable[chain.back()].rows;
        if (!std::all_of(lower.begin(), lower.end(), [&](const Vec& v) { return stable[i].span.contains(v); }))
          continue;
      }
      chain.push_back(i);
      visit();
      chain.pop_back();
    }
  };
  visit();
  return out;
}

// ---------------------------------------------------------------- endo

EndoModel::EndoModel(Field k, std::size_t n, std::size_t budget) : action_(k, n), n_(n), budget_(budget) {
  require_finite(k, "the endo model");
}

std::string EndoModel::orbit_id(const Vec& v) const { return ccc::orbit_id(action_.unflatten(v)); }

Vec EndoModel::representative(const Vec& v) const {
  return rational_canonical_form(invariant_factor_list(action_.unflatten(v)), field()).entries();
}

std::string EndoModel::describe(const Vec& v) const { return orbit_id(v); }

std::vector<OneStepLimit> EndoModel::one_step_limits(const Vec& v) const {
  std::vector<OneStepLimit> cands;
  for (auto& fl : flag_limits({action_.unflatten(v)}, budget_))
    cands.push_back({ccc::orbit_id(fl.limit[0]), fl.limit[0].entries(), fl.witness});
  return dedupe(cands);
}

std::optional<std::vector<Vec>> EndoModel::all_points() const { return all_vectors(field(), n_ * n_, budget_); }

// ---------------------------------------------------------------- tuples

TupleModel::TupleModel(Field k, std::size_t n, std::size_t r, std::size_t budget)
    : action_(k, n, r), n_(n), r_(r), budget_(budget) {
  require_finite(k, "the tuple model");
  group_ = all_invertible(k, n, budget);
}

Vec TupleModel::least_point(const Vec& v) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find(v); it != cache_.end()) return it->second;
  }
  Vec best = v;
  for (const auto& g : group_) {
    Vec w = action_.act(g, v, false);
    if (w < best) best = w;
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(v, best);
  return best;
}

std::string TupleModel::orbit_id(const Vec& v) const {
  std::ostringstream os;
  auto t = action_.unflatten(least_point(v));
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "; " : "") << t[i].str();
  return os.str();
}

Vec TupleModel::representative(const Vec& v) const { return least_point(v); }

std::vector<OneStepLimit> TupleModel::one_step_limits(const Vec& v) const {
  std::vector<OneStepLimit> cands;
  for (auto& fl : flag_limits(action_.unflatten(v), budget_)) {
    Vec p = action_.flatten(fl.limit);
    cands.push_back({orbit_id(p), p, fl.witness});
  }
  return dedupe(cands);
}

std::optional<std::vector<Vec>> TupleModel::all_points() const {
  return all_vectors(field(), r_ * n_ * n_, budget_);
}

// ---------------------------------------------------------------- rsquares

Vec LineAction::act(const Matrix& g, const Vec& v, bool inverse) const {
  Elem a = g(0, 0);
  Elem s = a * a;
  return {inverse ? v.at(0) / s : v.at(0) * s};
}

std::optional<bool> LineAction::same_orbit(const Vec& a, const Vec& b) const {
  if (a.at(0).is_zero() || b.at(0).is_zero()) return a.at(0).is_zero() == b.at(0).is_zero();
  return is_nth_power(a[0] / b[0], 2).has_value();
}

namespace {

mpz_class squarefree_part(mpz_class n) {
  mpz_class out = 1;
  for (mpz_class d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e % 2) out *= d;
  }
  return out * n;
}

}  // namespace

std::string square_class_id(const Elem& z) {
  if (z.is_zero()) return "0";
  const Field k = z.field();
  if (k.kind() == FieldKind::Rationals) {
    const mpq_class& q = z.rational();
    mpz_class prod = q.get_num() * q.get_den();
    int sign = sgn(prod);
    mpz_class s = squarefree_part(abs(prod));
    if (sign < 0) s = -s;
    return "sq(" + s.get_str() + ")";
  }
  if (k.is_finite()) {
    if (k.characteristic() == 2 || is_nth_power(z, 2)) return "sq(1)";
    return "sq(nonsquare)";
  }
  fail(ErrorKind::UnsupportedField, "square classes are canonical only over Q and finite fields");
}

RSquaresModel::RSquaresModel(Field k) : action_(std::move(k)) {}

std::vector<OneStepLimit> RSquaresModel::one_step_limits(const Vec& v) const {
  std::vector<OneStepLimit> cands;
  for (long long w : {0LL, 1LL, -1LL}) {
    auto lambda = Cocharacter::diagonal({w});
    LimitResult r = limit(v, lambda, action_);
    if (r.exists) cands.push_back({orbit_id(*r.value), *r.value, lambda});
  }
  return dedupe(cands);
}

// ---------------------------------------------------------------- fromf4

FromF4Action::FromF4Action(Field f) : f_(std::move(f)) {
  if (f_.kind() != FieldKind::Prime) fail(ErrorKind::UnsupportedField, "the fromf4 model is built over prime fields");
}

long long FromF4Action::coordinate_weight(std::size_t coord, const Weights& w) const {
  const long long m = w.at(0), n = w.at(1);
  switch (coord) {
    case 0: return 2 * m + 2 * n;
    case 1: return 2 * n;
    case 2: return -2 * m + 2 * n;
    case 3: return m - n;
    default: return -m - n;
  }
}

Vec FromF4Action::act(const Matrix& g0, const Vec& v, bool inverse) const {
  Matrix g = inverse ? ccc::inverse(g0) : g0;
  const Elem &q = g(0, 0), &r = g(0, 1), &s = g(1, 0), &t = g(1, 1), &b = g(2, 2);
  const Elem two = f_.from_int(2), b2 = b * b, bi = b.inverse();
  const Elem &A = v[0], &B = v[1], &C = v[2], &D = v[3], &E = v[4];
  return {(A * q * q + B * q * r + C * r * r) * b2,
          (two * A * q * s + B * (q * t + r * s) + two * C * r * t) * b2,
          (A * s * s + B * s * t + C * t * t) * b2,
          (D * q + E * r) * bi,
          (D * s + E * t) * bi};
}

FromF4Model::FromF4Model(std::uint64_t p, int weight_range)
    : action_(Field::prime(p)), p_(p), range_(weight_range) {
  const auto P = static_cast<std::uint32_t>(p);
  for (std::uint32_t q = 0; q < P; ++q)
    for (std::uint32_t r = 0; r < P; ++r)
      for (std::uint32_t s = 0; s < P; ++s)
        for (std::uint32_t t = 0; t < P; ++t) {
          if ((q * t + P * P - r * s % P) % P != 1) continue;
          for (std::uint32_t b = 1; b < P; ++b) group_.push_back({q, r, s, t, b});
        }
  const std::uint32_t total = P * P * P * P * P;
  least_.assign(total, total);
  for (std::uint32_t c = 0; c < total; ++c) {
    if (least_[c] != total) continue;
    std::vector<std::uint32_t> orbit;
    for (const auto& g : group_) orbit.push_back(act_code(g, c));
    std::uint32_t lo = *std::min_element(orbit.begin(), orbit.end());
    for (auto o : orbit) least_[o] = lo;
  }
}

std::uint32_t FromF4Model::act_code(const G& g, std::uint32_t code) const {
  const auto P = static_cast<std::uint64_t>(p_);
  std::uint64_t c[5];
  for (auto& x : c) {
    x = code % P;
    code /= static_cast<std::uint32_t>(P);
  }
  std::uint64_t binv = 1;
  while (binv * g.b % P != 1) ++binv;
  const std::uint64_t b2 = std::uint64_t{g.b} * g.b % P;
  const std::uint64_t q = g.q, r = g.r, s = g.s, t = g.t;
  std::uint64_t out[5] = {
      (c[0] * q * q + c[1] * q * r + c[2] * r * r) % P * b2 % P,
      (2 * c[0] * q * s + c[1] * ((q * t + r * s) % P) + 2 * c[2] * r * t) % P * b2 % P,
      (c[0] * s * s + c[1] * s * t + c[2] * t * t) % P * b2 % P,
      (c[3] * q + c[4] * r) % P * binv % P,
      (c[3] * s + c[4] * t) % P * binv % P,
  };
  std::uint64_t res = 0;
  for (int i = 4; i >= 0; --i) res = res * P + out[i];
  return static_cast<std::uint32_t>(res);
}

Vec FromF4Model::point(std::uint32_t code) const {
  Vec v;
  for (int i = 0; i < 5; ++i) {
    v.push_back(field().from_int(code % p_));
    code /= static_cast<std::uint32_t>(p_);
  }
  return v;
}

std::uint32_t FromF4Model::code(const Vec& v) const {
  if (v.size() != 5) fail(ErrorKind::DimensionMismatch, "fromf4 points have 5 coordinates");
  std::uint64_t res = 0;
  for (int i = 4; i >= 0; --i) res = res * p_ + v[static_cast<std::size_t>(i)].residue();
  return static_cast<std::uint32_t>(res);
}

Matrix FromF4Model::group_matrix(std::size_t idx) const {
  const G& g = group_.at(idx);
  const Field& k = field();
  Matrix m(k, 3, 3);
  m(0, 0) = k.from_int(g.q);
  m(0, 1) = k.from_int(g.r);
  m(1, 0) = k.from_int(g.s);
  m(1, 1) = k.from_int(g.t);
  m(2, 2) = k.from_int(g.b);
  return m;
}

std::size_t FromF4Model::orbit_count() const {
  std::set<std::uint32_t> s(least_.begin(), least_.end());
  return s.size();
}

Vec FromF4Model::representative(const Vec& v) const { return point(least_[code(v)]); }

std::string FromF4Model::describe(const Vec& v) const {
  static const char* names[5] = {"x^2", "xy", "y^2", "e1", "e2"};
  std::string out;
  for (std::size_t i = 0; i < 5; ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += "+";
    if (!v[i].is_one()) out += v[i].str() + "*";
    out += names[i];
  }
  return out.empty() ? "0" : out;
}

std::string FromF4Model::orbit_id(const Vec& v) const { return describe(representative(v)); }

std::vector<OneStepLimit> FromF4Model::one_step_limits(const Vec& v) const {
  const std::uint32_t c = code(v);
  std::vector<OneStepLimit> cands{{orbit_id(v), v, Cocharacter::diagonal({0, 0})}};
  std::set<std::uint32_t> seen{least_[c]};
  const auto P = static_cast<std::uint32_t>(p_);
  for (std::size_t gi = 0; gi < group_.size(); ++gi) {
    std::uint32_t moved = act_code(group_[gi], c);
    std::uint32_t digits[5];
    for (std::uint32_t i = 0, x = moved; i < 5; ++i, x /= P) digits[i] = x % P;
    for (int m = -range_; m <= range_; ++m)
      for (int n = -range_; n <= range_; ++n) {
        const Weights w{m, n};
        bool exists = true;
        std::uint32_t lim = 0;
        for (int i = 4; i >= 0; --i) {
          long long wt = action_.coordinate_weight(static_cast<std::size_t>(i), w);
          if (digits[i] != 0 && wt < 0) exists = false;
          lim = lim * P + (wt == 0 ? digits[i] : 0);
        }
        if (!exists || !seen.insert(least_[lim]).second) continue;
        // Witness g^{-1} . lambda: the engine moves v by g before projecting.
        Cocharacter lambda{w, std::nullopt};
        const G& g = group_[gi];
        if (g.q != 1 || g.r != 0 || g.s != 0 || g.t != 1 || g.b != 1) lambda.conjugator = inverse(group_matrix(gi));
        LimitResult r = limit(v, lambda, action_);
        if (!r.exists || least_[code(*r.value)] != least_[lim])
          fail(ErrorKind::InternalError, "fromf4 witness does not reproduce its limit");
        cands.push_back({orbit_id(*r.value), *r.value, lambda});
      }
  }
  return cands;
}

std::optional<std::vector<Vec>> FromF4Model::all_points() const {
  std::vector<Vec> out;
  for (std::uint32_t c = 0; c < least_.size(); ++c) out.push_back(point(c));
  return out;
}

// ---------------------------------------------------------------- pgl2

PGL2Action::PGL2Action(Field f) : f_(std::move(f)) {
  if (f_.characteristic() != 2) fail(ErrorKind::UnsupportedField, "the PGL_2 demo lives in characteristic 2");
}

long long PGL2Action::coordinate_weight(std::size_t coord, const Weights& w) const {
  return w.at(coord / 2) - w.at(coord % 2);
}

Vec PGL2Action::normalize(const Matrix& x) const {
  Matrix y = x - Matrix::identity(f_, 2) * x(0, 0);
  return y.entries();
}

Vec PGL2Action::act(const Matrix& g, const Vec& v, bool inverse_action) const {
  Matrix x(f_, 2, 2, v);
  Matrix gi = inverse(g);
  return normalize(inverse_action ? gi * x * g : g * x * gi);
}

PGL2Model::PGL2Model(Field k) : action_(std::move(k)) {}

std::string PGL2Model::orbit_id(const Vec& v) const {
  Vec x = action_.normalize(Matrix(field(), 2, 2, v));
  if (!x[3].is_zero()) fail(ErrorKind::UnsupportedField, "only trace-zero classes are classified");
  if (x[1].is_zero() && x[2].is_zero()) return "0";
  const Elem det = x[1] * x[2];
  if (field().is_finite() || pth_root(det)) return "nilpotent";
  // The class is the coset det + k^2; its non-square part is canonical.
  const auto comps = p_components(det);
  const Elem part = p_basis_element(field()) * comps.at(1) * comps.at(1);
  return "det in " + part.str() + " + k^2";
}

std::vector<OneStepLimit> PGL2Model::one_step_limits(const Vec& v) const {
  const std::string own = orbit_id(v);
  std::vector<OneStepLimit> out{{own, v, Cocharacter::diagonal({0, 0})}};
  if (own == "0") return out;
  Vec x = action_.normalize(Matrix(field(), 2, 2, v));
  auto s = pth_root(x[1] * x[2]);
  if (!s) return out;  // no rational eigenvector, so no proper parabolic contains it
  Matrix nil = Matrix(field(), 2, 2, x) + Matrix::identity(field(), 2) * *s;
  Vec eig = nullspace(nil).at(0);
  Matrix c = Matrix::from_columns(field(), extend_to_basis(field(), {eig}, 2), 2);
  Cocharacter lambda{{1, -1}, c};
  LimitResult r = limit(v, lambda, action_);
  if (!r.exists) fail(ErrorKind::InternalError, "eigenvector flag gave no limit");
  out.push_back({orbit_id(*r.value), *r.value, lambda});
  return out;
}

std::unique_ptr<ActionModel> make_model(const std::string& name, const Field& k, std::size_t n, std::size_t r,
                                        std::size_t budget) {
  if (name == "endo") return std::make_unique<EndoModel>(k, n, budget);
  if (name == "tuple") return std::make_unique<TupleModel>(k, n, r, budget);
  if (name == "rsquares") return std::make_unique<RSquaresModel>(k);
  if (name == "fromf4") {
    if (k.kind() != FieldKind::Prime) fail(ErrorKind::UnsupportedField, "the fromf4 model is built over prime fields");
    return std::make_unique<FromF4Model>(k.characteristic());
  }
  if (name == "pgl2") return std::make_unique<PGL2Model>(k);
  fail(ErrorKind::PreconditionFailed, "unknown model " + name);
}

}  // namespace ccc
