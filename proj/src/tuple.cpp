#include "ccc/tuple.hpp"

#include <deque>
#include <optional>
#include <random>

#include "ccc/endo.hpp"
#include "ccc/factor.hpp"

namespace ccc {
namespace {

void check_tuple(const MatrixTuple& t) {
  if (t.empty()) fail(ErrorKind::PreconditionFailed, "empty matrix tuple");
  const std::size_t n = t[0].rows();
  for (const auto& m : t) {
    if (!m.is_square()) fail(ErrorKind::NonSquare, "tuple entries must be square");
    if (m.rows() != n) fail(ErrorKind::DimensionMismatch, "tuple entries differ in size");
    if (m.field() != t[0].field()) fail(ErrorKind::DimensionMismatch, "tuple entries differ in field");
  }
}

bool imperfect_bottom(const Field& k) { return k.bottom().kind() == FieldKind::Function; }

std::vector<Vec> spin(const Vec& v, const MatrixTuple& gens, const Field& k) {
  EchelonBasis eb(k, v.size());
  std::vector<Vec> out;
  std::deque<Vec> queue;
  if (eb.insert(v)) {
    out.push_back(v);
    queue.push_back(v);
  }
  while (!queue.empty()) {
    Vec u = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Vec w = g.apply(u);
      if (eb.insert(w)) {
        out.push_back(w);
        queue.push_back(w);
      }
    }
  }
  return out;
}

// Matrices X with g S = S X for every generator, S given by columns.
MatrixTuple restrict_to(const MatrixTuple& gens, const std::vector<Vec>& sub, const Field& k) {
  EchelonBasis eb(k, sub[0].size());
  for (const auto& s : sub) eb.insert(s);
  MatrixTuple out;
  for (const auto& g : gens) {
    std::vector<Vec> cols;
    for (const auto& s : sub) {
      Vec coeffs;
      Vec res = eb.reduce_with_coeffs(g.apply(s), coeffs);
      if (!is_zero_vec(res)) fail(ErrorKind::InternalError, "subspace is not a submodule");
      coeffs.resize(sub.size(), k.zero());
      cols.push_back(coeffs);
    }
    out.push_back(Matrix::from_columns(k, cols, sub.size()));
  }
  return out;
}

MatrixTuple transposed(const MatrixTuple& gens) {
  MatrixTuple out;
  for (const auto& g : gens) out.push_back(g.transpose());
  return out;
}

struct Search {
  std::mt19937_64 rng;
  std::string method;
};

// A proper nonzero submodule of k^d, or nothing when the module is simple.
std::optional<std::vector<Vec>> proper_submodule(const MatrixTuple& gens, const Field& k, Search& s) {
  const std::size_t d = gens[0].rows();
  if (d <= 1) return std::nullopt;
  // Generators that are all scalar split every line off.
  bool all_scalar = true;
  for (const auto& g : gens) {
    for (std::size_t i = 0; i < d && all_scalar; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if ((i == j && g(i, j) != g(0, 0)) || (i != j && !g(i, j).is_zero())) {
          all_scalar = false;
          break;
        }
  }
  if (all_scalar) {
    Vec e = zero_vec(k, d);
    e[0] = k.one();
    return std::vector<Vec>{e};
  }
  if (gens.size() == 1) {
    s.method = "characteristic-factor";
    FactorReport fr = factor(char_poly(gens[0]));
    if (fr.factors.size() == 1 && fr.factors[0].second == 1) return std::nullopt;
    const Poly& q = fr.factors[0].first;
    std::vector<Vec> kern = nullspace(eval_poly(q, gens[0]));
    return spin(kern.at(0), gens, k);
  }
  if (imperfect_bottom(k))
    fail(ErrorKind::UnsupportedField, "semisimplicity of multi-matrix tuples over F_p(t) is not supported");
  if (k.is_finite() && k.order() < 64 && d <= 12) {
    mpz_class total;
    mpz_pow_ui(total.get_mpz_t(), k.order().get_mpz_t(), d);
    if (total <= 4096) {
      s.method = "exhaustive-spin";
      const std::uint64_t q = k.size_u64(), count = total.get_ui();
      for (std::uint64_t code = 1; code < count; ++code) {
        Vec v(d);
        std::uint64_t x = code;
        bool leading_one = false, seen = false;
        for (std::size_t i = 0; i < d; ++i) {
          v[i] = k.element_at(x % q);
          x /= q;
          if (!seen && !v[i].is_zero()) {
            seen = true;
            leading_one = v[i].is_one();
          }
        }
        if (!leading_one) continue;
        auto sub = spin(v, gens, k);
        if (sub.size() < d) return sub;
      }
      return std::nullopt;
    }
  }
  // Norton's irreducibility test on random algebra elements.
  s.method = "norton";
  std::vector<Matrix> alg = enveloping_basis(gens);
  MatrixTuple dual = transposed(gens);
  for (int attempt = 0; attempt < 400; ++attempt) {
    Matrix a(k, d, d);
    for (const auto& b : alg) a += b * k.random(s.rng);
    FactorReport fr = factor(char_poly(a));
    for (const auto& [q, e] : fr.factors) {
      Matrix qa = eval_poly(q, a);
      std::vector<Vec> kern = nullspace(qa);
      auto sub = spin(kern.at(0), gens, k);
      if (sub.size() < d) return sub;
      std::vector<Vec> dkern = nullspace(qa.transpose());
      auto dsub = spin(dkern.at(0), dual, k);
      if (dsub.size() < d) return nullspace(Matrix::from_rows(k, dsub));
      if (kern.size() == static_cast<std::size_t>(q.degree())) return std::nullopt;
    }
  }
  fail(ErrorKind::InternalError, "irreducibility test did not reach a certificate");
}

// Basis (columns in k^d) of a simple submodule.
std::vector<Vec> simple_submodule(const MatrixTuple& gens, const Field& k, Search& s) {
  const std::size_t d = gens[0].rows();
  MatrixTuple cur = gens;
  Matrix embed = Matrix::identity(k, d);
  while (true) {
    auto sub = proper_submodule(cur, k, s);
    if (!sub) {
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < embed.cols(); ++j) cols.push_back(embed.col(j));
      return cols;
    }
    const std::size_t height = embed.cols();
    cur = restrict_to(cur, *sub, k);
    embed = embed * Matrix::from_columns(k, *sub, height);
  }
}

CompositionSeries series_impl(const MatrixTuple& t, Search& s) {
  check_tuple(t);
  const Field& k = t[0].field();
  const std::size_t n = t[0].rows();
  CompositionSeries cs;
  std::vector<Vec> cols;
  while (cols.size() < n) {
    std::vector<Vec> full = extend_to_basis(k, cols, n);
    Matrix B = Matrix::from_columns(k, full, n);
    Matrix Bi = inverse(B);
    const std::size_t m = cols.size(), q = n - m;
    MatrixTuple quot;
    for (const auto& g : t) quot.push_back((Bi * g * B).submatrix(m, m, q, q));
    std::vector<Vec> simple = simple_submodule(quot, k, s);
    for (const auto& sv : simple) {
      Vec lifted = zero_vec(k, n);
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t r = 0; r < n; ++r) lifted[r] += full[m + i][r] * sv[i];
      cols.push_back(lifted);
    }
    cs.layers.push_back(simple.size());
  }
  cs.basis = Matrix::from_columns(k, cols, n);
  return cs;
}

std::vector<std::size_t> layer_starts(const std::vector<std::size_t>& layers) {
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  for (auto l : layers) {
    starts.push_back(pos);
    pos += l;
  }
  return starts;
}

}  // namespace

std::vector<Matrix> enveloping_basis(const MatrixTuple& t) {
  check_tuple(t);
  const Field& k = t[0].field();
  const std::size_t n = t[0].rows();
  EchelonBasis eb(k, n * n);
  std::vector<Matrix> basis;
  std::deque<Matrix> queue;
  Matrix id = Matrix::identity(k, n);
  eb.insert(id.entries());
  basis.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    Matrix w = queue.front();
    queue.pop_front();
    for (const auto& g : t) {
      Matrix x = g * w;
      if (eb.insert(x.entries())) {
        basis.push_back(x);
        queue.push_back(x);
      }
    }
  }
  return basis;
}

CompositionSeries composition_series(const MatrixTuple& t, std::uint64_t seed) {
  Search s{std::mt19937_64(seed), ""};
  return series_impl(t, s);
}

ModuleReport is_semisimple(const MatrixTuple& t, std::uint64_t seed) {
  check_tuple(t);
  const Field& k = t[0].field();
  const std::size_t n = t[0].rows();
  ModuleReport rep;
  rep.seed = seed;
  Search s{std::mt19937_64(seed), "trivial"};
  rep.series = series_impl(t, s);
  rep.method = s.method;
  std::vector<Matrix> alg = enveloping_basis(t);
  rep.algebra_dimension = alg.size();
  // The radical is the kernel of the projection onto the block diagonal
  // of an adapted composition basis.
  Matrix Bi = inverse(rep.series.basis);
  auto starts = layer_starts(rep.series.layers);
  std::vector<Vec> images;
  for (const auto& a : alg) {
    Matrix local = Bi * a * rep.series.basis;
    Vec diag;
    for (std::size_t l = 0; l < starts.size(); ++l)
      for (std::size_t i = 0; i < rep.series.layers[l]; ++i)
        for (std::size_t j = 0; j < rep.series.layers[l]; ++j) diag.push_back(local(starts[l] + i, starts[l] + j));
    images.push_back(diag);
  }
  std::size_t image_rank = rank(Matrix::from_rows(k, images));
  rep.radical_dimension = alg.size() - image_rank;
  rep.semisimple = rep.radical_dimension == 0;
  for (std::size_t l = 0; l < starts.size(); ++l) {
    CompositionFactor cf;
    cf.dimension = rep.series.layers[l];
    for (std::size_t g = 0; g < t.size(); ++g) {
      Matrix local = (Bi * t[g] * rep.series.basis).submatrix(starts[l], starts[l], cf.dimension, cf.dimension);
      cf.fingerprint += (g ? "; " : "") + min_poly(local).str("T");
    }
    rep.factors.push_back(cf);
  }
  (void)n;
  return rep;
}

std::size_t trace_form_radical_dimension(const MatrixTuple& t) {
  check_tuple(t);
  const Field& k = t[0].field();
  if (k.characteristic() != 0) fail(ErrorKind::UnsupportedField, "trace form radical needs characteristic 0");
  std::vector<Matrix> alg = enveloping_basis(t);
  const std::size_t m = alg.size(), n = t[0].rows();
  Matrix gram(k, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Matrix p = alg[i] * alg[j];
      Elem tr = k.zero();
      for (std::size_t d = 0; d < n; ++d) tr += p(d, d);
      gram(i, j) = tr;
    }
  return m - rank(gram);
}

ModuleReport gcr_over_k(const MatrixTuple& generators, std::uint64_t seed) {
  check_tuple(generators);
  for (const auto& g : generators)
    if (!try_inverse(g)) fail(ErrorKind::PreconditionFailed, "group generators must be invertible");
  // Inverses are polynomials in each generator, so the group and the
  // generators span the same algebra.
  return is_semisimple(generators, seed);
}

namespace {

std::vector<Elem> flat_coords(const Elem& x, const Field& base) {
  Field f = x.field();
  if (f == base) return {x};
  if (!f.is_extension()) fail(ErrorKind::BasisMismatch, "field is not an extension of the given base");
  std::vector<Elem> out;
  for (const auto& c : f.coords(x)) {
    auto sub = flat_coords(c, base);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace

std::vector<Vec> tuple_from_extension_point(const Vec& v, const std::vector<Elem>& basis, const Field& base) {
  if (basis.empty()) fail(ErrorKind::BasisMismatch, "empty basis");
  Field top = basis[0].field();
  std::vector<Vec> cols;
  for (const auto& a : basis) cols.push_back(flat_coords(top.embed(a), base));
  const std::size_t D = cols[0].size();
  if (basis.size() != D) fail(ErrorKind::BasisMismatch, "basis size differs from the extension degree");
  Matrix A = Matrix::from_columns(base, cols, D);
  auto Ai = try_inverse(A);
  if (!Ai) fail(ErrorKind::BasisMismatch, "given elements are not a basis");
  std::vector<Vec> out(basis.size(), zero_vec(base, v.size()));
  for (std::size_t j = 0; j < v.size(); ++j) {
    Vec c = Ai->apply(flat_coords(top.embed(v[j]), base));
    for (std::size_t i = 0; i < basis.size(); ++i) out[i][j] = c[i];
  }
  return out;
}

MatrixTuple semisimplify_tuple(const MatrixTuple& t, std::uint64_t seed) {
  CompositionSeries cs = composition_series(t, seed);
  const Field& k = t[0].field();
  Matrix Bi = inverse(cs.basis);
  auto starts = layer_starts(cs.layers);
  MatrixTuple out;
  for (const auto& g : t) {
    Matrix local = Bi * g * cs.basis;
    std::vector<Matrix> blocks;
    for (std::size_t l = 0; l < starts.size(); ++l)
      blocks.push_back(local.submatrix(starts[l], starts[l], cs.layers[l], cs.layers[l]));
    out.push_back(Matrix::block_diag(blocks));
  }
  (void)k;
  return out;
}

long long TupleConjugationAction::coordinate_weight(std::size_t coord, const Weights& w) const {
  std::size_t c = coord % (n_ * n_);
  return w[c / n_] - w[c % n_];
}

Vec TupleConjugationAction::act(const Matrix& g, const Vec& v, bool inverse_action) const {
  Matrix gi = inverse(g);
  MatrixTuple t = unflatten(v);
  for (auto& m : t) m = inverse_action ? gi * m * g : g * m * gi;
  return flatten(t);
}

Vec TupleConjugationAction::flatten(const MatrixTuple& t) const {
  Vec out;
  for (const auto& m : t) out.insert(out.end(), m.entries().begin(), m.entries().end());
  return out;
}

MatrixTuple TupleConjugationAction::unflatten(const Vec& v) const {
  MatrixTuple t;
  for (std::size_t i = 0; i < r_; ++i)
    t.emplace_back(f_, n_, n_, Vec(v.begin() + static_cast<std::ptrdiff_t>(i * n_ * n_),
                                   v.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_ * n_)));
  return t;
}

Vec StandardAction::act(const Matrix& g, const Vec& v, bool inverse_action) const {
  Matrix m = inverse_action ? inverse(g) : g;
  Vec out;
  for (std::size_t i = 0; i < r_; ++i) {
    Vec part(v.begin() + static_cast<std::ptrdiff_t>(i * n_), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_));
    Vec img = m.apply(part);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

}  // namespace ccc
