#include "ccc/endo.hpp"

#include <algorithm>

namespace ccc {
namespace {

using PolyMatrix = std::vector<std::vector<Poly>>;

void require_square(const Matrix& f) {
  if (!f.is_square()) fail(ErrorKind::NonSquare, "matrix is not square");
}

// Smith normal form diagonal of a nonsingular polynomial matrix.
std::vector<Poly> smith_diagonal(PolyMatrix m) {
  const std::size_t n = m.size();
  std::vector<Poly> diag;
  for (std::size_t k = 0; k < n; ++k) {
    while (true) {
      std::size_t bi = n, bj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!m[i][j].is_zero() && (bi == n || m[i][j].degree() < m[bi][bj].degree())) {
            bi = i;
            bj = j;
          }
      if (bi == n) fail(ErrorKind::InternalError, "singular characteristic matrix");
      std::swap(m[k], m[bi]);
      for (auto& row : m) std::swap(row[k], row[bj]);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        Poly q, r;
        divmod(m[i][k], m[k][k], q, r);
        for (std::size_t j = k; j < n; ++j) m[i][j] -= q * m[k][j];
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero()) continue;
        Poly q, r;
        divmod(m[k][j], m[k][k], q, r);
        for (std::size_t i = k; i < n; ++i) m[i][j] -= q * m[i][k];
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = n;
      for (std::size_t i = k + 1; i < n && bad == n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (!divides(m[k][k], m[i][j])) {
            bad = i;
            break;
          }
      if (bad == n) break;
      for (std::size_t j = k; j < n; ++j) m[k][j] += m[bad][j];
    }
    diag.push_back(m[k][k].monic());
  }
  return diag;
}

int multiplicity(Poly chi, const Poly& q) {
  int e = 0;
  while (true) {
    Poly quo, rem;
    divmod(chi, q, quo, rem);
    if (!rem.is_zero()) return e;
    chi = quo;
    ++e;
  }
}

}  // namespace

std::string EndoClass::id() const {
  std::string s = "[";
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) s += (i ? " | " : "") + invariant_factors[i].str("T");
  return s + "]";
}

std::vector<std::pair<Poly, int>> EndoClass::elementary_divisors(const FactorOptions& opt) const {
  std::vector<std::pair<Poly, int>> out;
  for (const auto& d : invariant_factors)
    for (const auto& [q, e] : factor(d, opt).factors) out.emplace_back(q, e);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int c = a.first.compare(b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  return out;
}

Poly char_poly(const Matrix& f) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  Matrix h = f;
  // Similarity reduction to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (!h(i, j).is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    Elem inv = h(j + 1, j).inverse();
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h(i, j).is_zero()) continue;
      Elem u = h(i, j) * inv;
      for (std::size_t c = 0; c < n; ++c) h(i, c) -= u * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += u * h(r, i);
    }
  }
  // Recurrence on leading principal submatrices (1-based indices).
  auto H = [&](std::size_t i, std::size_t j) -> const Elem& { return h(i - 1, j - 1); };
  std::vector<Poly> p(n + 1, Poly(k));
  p[0] = Poly::constant(k.one());
  Poly x = Poly::x(k);
  for (std::size_t m = 1; m <= n; ++m) {
    p[m] = (x - Poly::constant(H(m, m))) * p[m - 1];
    Elem prod = k.one();
    for (std::size_t i = 1; i < m; ++i) {
      prod *= H(m - i + 1, m - i);
      Elem c = H(m - i, m) * prod;
      if (!c.is_zero()) p[m] -= p[m - i - 1] * c;
    }
  }
  return p[n];
}

Poly min_poly(const Matrix& f) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  EchelonBasis basis(k, n * n);
  Matrix power = Matrix::identity(k, n);
  for (std::size_t d = 0;; ++d) {
    Vec coeffs;
    Vec residue = basis.reduce_with_coeffs(power.entries(), coeffs);
    if (is_zero_vec(residue)) {
      std::vector<Elem> c(d + 1, k.zero());
      for (std::size_t i = 0; i < d; ++i) c[i] = -coeffs[i];
      c[d] = k.one();
      return Poly(k, c);
    }
    basis.insert(power.entries());
    power = power * f;
  }
}

std::vector<Poly> invariant_factor_list(const Matrix& f) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  PolyMatrix m(n, std::vector<Poly>(n, Poly(k)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = Poly::constant(-f(i, j));
      if (i == j) m[i][j] += Poly::x(k);
    }
  std::vector<Poly> out;
  for (auto& d : smith_diagonal(std::move(m)))
    if (d.degree() > 0) out.push_back(d);
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return a.degree() < b.degree(); });
  return out;
}

std::size_t commutant_dimension_from_factors(const std::vector<Poly>& factors) {
  std::size_t r = factors.size(), dim = 0;
  for (std::size_t i = 0; i < r; ++i) dim += static_cast<std::size_t>(factors[i].degree()) * (2 * (r - 1 - i) + 1);
  return dim;
}

EndoClass invariant_factors(const Matrix& f) {
  EndoClass c;
  c.representative = f;
  c.invariant_factors = invariant_factor_list(f);
  c.min_poly = c.invariant_factors.empty() ? Poly::constant(f.field().one()) : c.invariant_factors.back();
  c.char_poly = Poly::constant(f.field().one());
  for (const auto& d : c.invariant_factors) c.char_poly *= d;
  c.commutant_dimension = commutant_dimension_from_factors(c.invariant_factors);
  return c;
}

std::string orbit_id(const Matrix& f) {
  EndoClass c;
  c.invariant_factors = invariant_factor_list(f);
  return c.id();
}

Matrix rational_canonical_form(const std::vector<Poly>& factors, const Field& k) {
  std::vector<Matrix> blocks;
  for (const auto& d : factors) blocks.push_back(Matrix::companion(d));
  if (blocks.empty()) return Matrix(k, 0, 0);
  return Matrix::block_diag(blocks);
}

long long ConjugationAction::coordinate_weight(std::size_t coord, const Weights& w) const {
  return w[coord / n_] - w[coord % n_];
}

Vec ConjugationAction::act(const Matrix& g, const Vec& v, bool inverse_action) const {
  Matrix x = unflatten(v);
  Matrix gi = inverse(g);
  return (inverse_action ? gi * x * g : g * x * gi).entries();
}

std::optional<bool> ConjugationAction::same_orbit(const Vec& a, const Vec& b) const {
  return orbit_id(unflatten(a)) == orbit_id(unflatten(b));
}

std::optional<Matrix> conjugation_limit(const Matrix& f, const Cocharacter& lambda) {
  require_square(f);
  ConjugationAction model(f.field(), f.rows());
  // Only existence and value are needed here; skip orbit classification.
  struct Quiet : ConjugationAction {
    using ConjugationAction::ConjugationAction;
    std::optional<bool> same_orbit(const Vec&, const Vec&) const override { return std::nullopt; }
  } quiet(f.field(), f.rows());
  LimitResult r = limit(f.entries(), lambda, quiet);
  if (!r.exists) return std::nullopt;
  return model.unflatten(*r.value);
}

Matrix adapted_basis(const Field& k, std::size_t n, const std::vector<std::vector<Vec>>& chain,
                     std::vector<std::size_t>& layer_sizes) {
  EchelonBasis eb(k, n);
  std::vector<Vec> cols;
  layer_sizes.clear();
  for (const auto& space : chain) {
    std::size_t before = cols.size();
    for (const auto& v : space)
      if (eb.insert(v)) cols.push_back(v);
    if (cols.size() > before) layer_sizes.push_back(cols.size() - before);
  }
  std::size_t before = cols.size();
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    Vec e = zero_vec(k, n);
    e[i] = k.one();
    if (eb.insert(e)) cols.push_back(e);
  }
  if (cols.size() > before) layer_sizes.push_back(cols.size() - before);
  return Matrix::from_columns(k, cols, n);
}

namespace {

// Cocharacter from a chain of layers, highest weight on the smallest
// subspace, weights weight_of(layer index) per basis vector.
Cocharacter chain_cocharacter(const Matrix& basis, const std::vector<std::size_t>& layers,
                              const std::vector<long long>& layer_weights) {
  Cocharacter c;
  for (std::size_t l = 0; l < layers.size(); ++l)
    for (std::size_t i = 0; i < layers[l]; ++i) c.weights.push_back(layer_weights[l]);
  if (!basis.is_identity()) c.conjugator = basis;
  return c;
}

std::vector<Vec> column_space(const Matrix& m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return span_basis(m.field(), cols, m.rows());
}

}  // namespace

ClosednessReport is_cocharacter_closed(const Matrix& f, const FactorOptions& opt) {
  require_square(f);
  ClosednessReport rep;
  Poly mu = min_poly(f);
  rep.min_poly_factorization = factor(mu, opt);
  rep.closed = rep.min_poly_factorization.squarefree();
  if (rep.closed) return rep;
  const Field& k = f.field();
  const std::size_t n = f.rows();
  Matrix r = eval_poly(radical(mu, opt), f);
  rep.stable_subspace = nullspace(r);
  std::vector<std::size_t> layers;
  Matrix basis = adapted_basis(k, n, {rep.stable_subspace}, layers);
  rep.destabilizer = chain_cocharacter(basis, layers, {1, -1});
  rep.limit = conjugation_limit(f, *rep.destabilizer);
  if (!rep.limit || orbit_id(*rep.limit) == orbit_id(f))
    fail(ErrorKind::InternalError, "closedness certificate failed to leave the orbit");
  return rep;
}

bool is_geometrically_closed(const Matrix& f) { return is_separable(min_poly(f)); }

EndoClass semisimplification(const Matrix& f, const FactorOptions& opt) {
  require_square(f);
  const Field& k = f.field();
  Poly mu = min_poly(f);
  Poly chi = char_poly(f);
  FactorReport fr = factor(mu, opt);
  std::vector<Matrix> blocks;
  std::vector<std::pair<Poly, int>> mult;
  int top = 0;
  for (const auto& [q, e] : fr.factors) {
    int m = multiplicity(chi, q);
    mult.emplace_back(q, m);
    top = std::max(top, m);
    for (int i = 0; i < m; ++i) blocks.push_back(Matrix::companion(q));
  }
  EndoClass c;
  c.representative = blocks.empty() ? Matrix(k, 0, 0) : Matrix::block_diag(blocks);
  for (int j = top - 1; j >= 0; --j) {
    Poly d = Poly::constant(k.one());
    for (const auto& [q, m] : mult)
      if (m > j) d *= q;
    c.invariant_factors.push_back(d);
  }
  c.min_poly = c.invariant_factors.empty() ? Poly::constant(k.one()) : c.invariant_factors.back();
  c.char_poly = chi;
  c.commutant_dimension = commutant_dimension_from_factors(c.invariant_factors);
  return c;
}

Witness witness_cocharacter(const Matrix& f, const FactorOptions& opt) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  Poly mu = min_poly(f);
  if (squarefree_test(mu, opt)) return {Cocharacter::diagonal(Weights(n, 0)), f};
  Matrix r = eval_poly(radical(mu, opt), f);
  // Images r^j W, from W down to 0.
  std::vector<std::vector<Vec>> images;
  Matrix power = Matrix::identity(k, n);
  while (!power.is_zero()) {
    images.push_back(column_space(power));
    power = power * r;
  }
  const long long depth = static_cast<long long>(images.size());
  std::vector<std::vector<Vec>> chain(images.rbegin(), images.rend());
  std::vector<std::size_t> layers;
  Matrix basis = adapted_basis(k, n, chain, layers);
  // Layer j (r^j W modulo r^{j+1} W) gets weight 2j - (depth - 1).
  std::vector<long long> weights;
  for (long long l = 0; l < static_cast<long long>(layers.size()); ++l) {
    long long j = depth - 1 - l;
    weights.push_back(2 * j - (depth - 1));
  }
  Witness w{chain_cocharacter(basis, layers, weights), Matrix(k)};
  auto lim = conjugation_limit(f, w.cocharacter);
  if (!lim) fail(ErrorKind::InternalError, "witness cocharacter has no limit");
  w.limit = *lim;
  if (orbit_id(w.limit) != semisimplification(f, opt).id())
    fail(ErrorKind::InternalError, "witness limit is not the semisimplification");
  return w;
}

Matrix ru_conjugator(const Matrix& f, const Matrix& f_limit, const Cocharacter& lambda) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  auto lim = conjugation_limit(f, lambda);
  if (!lim || *lim != f_limit) fail(ErrorKind::PreconditionFailed, "f_limit is not the limit of f along the cocharacter");
  if (orbit_id(f) != orbit_id(f_limit)) fail(ErrorKind::NotRuConjugate, "f and its limit lie in different orbits");
  Matrix c = lambda.conjugator ? *lambda.conjugator : Matrix::identity(k, n);
  Matrix ci = inverse(c);
  Matrix F = ci * f * c, L = ci * f_limit * c;
  const auto& w = lambda.weights;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (w[i] > w[j]) slots.emplace_back(i, j);
  // (I + X) F = L (I + X)  <=>  X F - L X = L - F.
  Matrix system(k, n * n, slots.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    Matrix e(k, n, n);
    e(slots[s].first, slots[s].second) = k.one();
    Matrix img = e * F - L * e;
    for (std::size_t q = 0; q < n * n; ++q) system(q, s) = img.entries()[q];
  }
  Matrix rhs = L - F;
  auto x = solve(system, rhs.entries());
  if (!x) fail(ErrorKind::NotRuConjugate, "no unipotent conjugator in R_u(P_lambda)(k)");
  Matrix u = Matrix::identity(k, n);
  for (std::size_t s = 0; s < slots.size(); ++s) u(slots[s].first, slots[s].second) = (*x)[s];
  return c * u * ci;
}

std::size_t commutant_dimension(const Matrix& f) {
  require_square(f);
  const Field& k = f.field();
  const std::size_t n = f.rows();
  Matrix system(k, n * n, n * n);
  for (std::size_t s = 0; s < n * n; ++s) {
    Matrix e(k, n, n);
    e(s / n, s % n) = k.one();
    Matrix img = e * f - f * e;
    for (std::size_t q = 0; q < n * n; ++q) system(q, s) = img.entries()[q];
  }
  return n * n - rank(system);
}

}  // namespace ccc
