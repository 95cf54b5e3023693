#include "ccc/factor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ccc/matrix.hpp"

namespace ccc {

using Factors = std::vector<std::pair<Poly, int>>;

namespace {

void normalize_factors(Factors& fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) { return a.first.compare(b.first) < 0; });
  Factors out;
  for (auto& f : fs) {
    if (!out.empty() && out.back().first == f.first)
      out.back().second += f.second;
    else
      out.push_back(std::move(f));
  }
  fs = std::move(out);
}

void check_degree(const Poly& f, const FactorOptions& opt) {
  if (f.degree() > opt.max_degree)
    fail(ErrorKind::DegreeTooLarge, "degree " + std::to_string(f.degree()) + " exceeds factorization bound " +
                                        std::to_string(opt.max_degree));
}

// All coefficients p-th powers: returns the coefficient-wise root.
std::optional<Poly> coefficient_root(const Poly& q) {
  std::vector<Elem> r;
  for (const auto& c : q.coeffs()) {
    auto y = pth_root(c);
    if (!y) return std::nullopt;
    r.push_back(*y);
  }
  return Poly(q.field(), r);
}

Factors factor_monic(const Poly& f, const FactorOptions& opt);

void push_split(Factors& out, const Poly& z, int mult, const FactorOptions& opt) {
  if (z.degree() <= 0) return;
  for (auto& q : detail::split_separable(z, opt)) out.emplace_back(q.monic(), mult);
}

Factors factor_monic(const Poly& f, const FactorOptions& opt) {
  Factors out;
  if (f.degree() <= 0) return out;
  check_degree(f, opt);
  std::uint64_t p = f.field().characteristic();
  Poly d = f.derivative();
  if (p == 0) {
    // Yun's square-free decomposition.
    Poly b = gcd(f, d);
    Poly c = f / b;
    Poly e = d / b - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
      Poly a = gcd(c, e);
      push_split(out, a, i, opt);
      c = c / a;
      e = e / a - c.derivative();
      ++i;
    }
    return out;
  }
  if (d.is_zero()) {
    Poly v;
    f.deflate(static_cast<unsigned>(p), v);
    for (auto& [q, e] : factor_monic(v.monic(), opt)) {
      if (auto g = coefficient_root(q))
        out.emplace_back(g->monic(), e * static_cast<int>(p));
      else
        out.emplace_back(q.inflate(static_cast<unsigned>(p)), e);
    }
    return out;
  }
  Poly c = gcd(f, d);
  Poly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    push_split(out, z.monic(), i, opt);
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    for (auto& fe : factor_monic(c.monic(), opt)) out.push_back(fe);
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<Poly> split_separable(const Poly& f, const FactorOptions& opt) {
  if (f.degree() <= 1) return {f.monic()};
  check_degree(f, opt);
  const Field& F = f.field();
  if (F.is_finite()) return split_finite(f.monic(), opt.seed);
  switch (F.kind()) {
    case FieldKind::Rationals: return split_rational(f.monic(), opt);
    case FieldKind::Function: return split_function_field(f.monic(), opt);
    case FieldKind::Extension: return split_extension(f.monic(), opt);
    default: break;
  }
  fail(ErrorKind::UnsupportedField, "no factorization backend for " + F.descriptor());
}

namespace {

void edf(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const Field& F = g.field();
  const mpz_class& q = F.order();
  std::uint64_t p = F.characteristic();
  unsigned k = 0;
  for (mpz_class t = q; t > 1; t /= static_cast<unsigned long>(p)) ++k;
  while (true) {
    std::vector<Elem> c;
    for (int i = 0; i < g.degree(); ++i) c.push_back(F.random(rng));
    Poly a(F, c);
    if (a.degree() <= 0) continue;
    Poly b(F);
    if (p != 2) {
      mpz_class e;
      mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
      e = (e - 1) / 2;
      b = powmod(a, e, g) - Poly::constant(F.one());
    } else {
      Poly t = a % g;
      b = t;
      for (unsigned j = 1; j < k * static_cast<unsigned>(d); ++j) {
        t = (t * t) % g;
        b += t;
      }
    }
    Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      edf(h, d, rng, out);
      edf(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> split_finite(const Poly& f, std::uint64_t seed) {
  const Field& F = f.field();
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  Poly x = Poly::x(F);
  Poly h = x;
  Poly g = f.monic();
  int i = 0;
  while (2 * (i + 1) <= g.degree()) {
    ++i;
    h = powmod(h, F.order(), g);
    Poly dd = gcd(h - x, g);
    if (dd.degree() > 0) {
      edf(dd, i, rng, out);
      g = g / dd;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.push_back(g.monic());
  return out;
}

std::vector<Poly> split_extension(const Poly& f, const FactorOptions& opt) {
  // Over K = k(theta): factor the minimal polynomial over k of a primitive
  // element a of A = K[T]/(f), then pull factors back by gcd.
  const Field& K = f.field();
  Field k = K.base();
  int r = static_cast<int>(K.degree());
  int n = f.degree();
  std::size_t D = static_cast<std::size_t>(r * n);
  if (static_cast<int>(D) > opt.max_degree)
    fail(ErrorKind::DegreeTooLarge, "extension factorization needs degree " + std::to_string(D) + " over the base");
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  Poly T = Poly::x(K);
  Poly theta = Poly::constant(K.gen());

  auto flatten = [&](const Poly& a) {
    Vec v;
    v.reserve(D);
    for (int j = 0; j < n; ++j) {
      auto c = K.coords(a.coeff(static_cast<std::size_t>(j)));
      v.insert(v.end(), c.begin(), c.end());
    }
    return v;
  };

  for (int attempt = 0; attempt < 400; ++attempt) {
    Poly a(K);
    if (attempt < 4) {
      a = T + theta * K.from_int(attempt + 1);
    } else if (attempt < 40) {
      a = T + theta * K.embed(k.random(rng));
    } else {
      std::vector<Elem> cs;
      for (int j = 0; j < n; ++j) cs.push_back(K.random(rng));
      a = Poly(K, cs) % f;
    }
    if (attempt < 4 && K.characteristic() && (attempt + 1) % static_cast<int>(K.characteristic()) == 0) continue;
    EchelonBasis eb(k, D);
    Poly power = Poly::constant(K.one());
    std::optional<Poly> minpoly;
    for (std::size_t m = 0; m <= D; ++m) {
      Vec v = flatten(power);
      Vec co;
      Vec res = eb.reduce_with_coeffs(v, co);
      if (is_zero_vec(res)) {
        std::vector<Elem> mc(m + 1, k.zero());
        for (std::size_t j = 0; j < m; ++j) mc[j] = -co[j];
        mc[m] = k.one();
        minpoly = Poly(k, mc);
        break;
      }
      eb.insert(v);
      power = (power * a) % f;
    }
    if (!minpoly || static_cast<std::size_t>(minpoly->degree()) < D) continue;
    FactorReport fr = factor(*minpoly, opt);
    if (fr.factors.size() == 1) return {f};
    std::vector<Poly> out;
    Poly prod = Poly::constant(K.one());
    for (auto& [g, e] : fr.factors) {
      Poly ga(K);
      for (std::size_t i = g.coeffs().size(); i-- > 0;)
        ga = (ga * a + Poly::constant(K.embed(g.coeffs()[i]))) % f;
      Poly G = gcd(f, ga);
      out.push_back(G);
      prod *= G;
    }
    if (prod == f) return out;
    fail(ErrorKind::InternalError, "extension factor recombination failed");
  }
  fail(ErrorKind::InternalError, "no primitive element found for extension factorization");
}

}  // namespace detail

Poly FactorReport::product() const {
  Poly r = Poly::constant(unit);
  for (const auto& [q, e] : factors) r *= q.pow(static_cast<unsigned>(e));
  return r;
}

bool FactorReport::squarefree() const {
  for (const auto& f : factors)
    if (f.second > 1) return false;
  return true;
}

std::string FactorReport::str(const std::string& var) const {
  std::ostringstream os;
  if (!unit.is_one() || factors.empty()) os << "(" << unit.str() << ")";
  for (const auto& [q, e] : factors) {
    os << "(" << q.str(var) << ")";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

FactorReport factor(const Poly& f, const FactorOptions& opt) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "factor of the zero polynomial");
  FactorReport r{f.lc(), {}};
  r.factors = factor_monic(f.monic(), opt);
  normalize_factors(r.factors);
  return r;
}

bool is_irreducible(const Poly& f, const FactorOptions& opt) {
  if (f.degree() < 1) return false;
  auto r = factor(f, opt);
  return r.factors.size() == 1 && r.factors[0].second == 1;
}

bool is_separable(const Poly& f) {
  if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "separability of the zero polynomial");
  if (f.degree() <= 1) return true;
  Poly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

bool squarefree_test(const Poly& f0, const FactorOptions& opt) {
  if (f0.is_zero()) fail(ErrorKind::ZeroPolynomial, "square-free test of the zero polynomial");
  Poly f = f0.monic();
  if (f.degree() <= 1) return true;
  std::uint64_t p = f.field().characteristic();
  Poly d = f.derivative();
  if (!d.is_zero()) {
    Poly w = gcd(f, d);
    Poly u = f / w;
    if (gcd(u, u.derivative()).degree() > 0) return false;
    if (gcd(u, w).degree() > 0) return false;
    if (w.degree() == 0) return true;
    if (!w.derivative().is_zero()) return false;
    return squarefree_test(w, opt);
  }
  // f = v(T^p): square-free iff v is and no factor of v has all
  // coefficients p-th powers.
  Poly v;
  f.deflate(static_cast<unsigned>(p), v);
  FactorReport fr = factor(v, opt);
  for (const auto& [q, e] : fr.factors) {
    if (e > 1) return false;
    if (coefficient_root(q)) return false;
  }
  return true;
}

Poly radical(const Poly& f, const FactorOptions& opt) {
  FactorReport fr = factor(f, opt);
  Poly r = Poly::constant(f.field().one());
  for (const auto& [q, e] : fr.factors) r *= q;
  return r;
}

std::vector<Elem> roots(const Poly& f, const FactorOptions& opt) {
  std::vector<Elem> out;
  for (const auto& [q, e] : factor(f, opt).factors)
    if (q.degree() == 1) out.push_back(-q.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Columns: coordinates of theta^(p*i) over the base.
Matrix frobenius_matrix(const Field& K) {
  std::uint64_t p = K.characteristic();
  Field k = K.base();
  std::size_t d = K.degree();
  Matrix m(k, d, d);
  Elem th = K.gen().pow(static_cast<long long>(p));
  Elem cur = K.one();
  for (std::size_t i = 0; i < d; ++i) {
    auto c = K.coords(cur);
    for (std::size_t r = 0; r < d; ++r) m(r, i) = c[r];
    cur *= th;
  }
  return m;
}

// x in k written as sum_{i<p} c^i X_i^p; returns X.
std::optional<Vec> decompose_wrt(const Elem& x, const Elem& c) {
  const Field& k = x.field();
  std::size_t p = k.characteristic();
  Matrix m(k, p, p);
  Elem ci = k.one();
  for (std::size_t i = 0; i < p; ++i) {
    auto comp = p_components(ci);
    if (comp.size() != p) return std::nullopt;
    for (std::size_t j = 0; j < p; ++j) m(j, i) = comp[j];
    ci *= c;
  }
  auto xc = p_components(x);
  if (xc.size() != p) return std::nullopt;
  return solve(m, xc);
}

}  // namespace

std::optional<Elem> pth_root(const Elem& x) {
  const Field F = x.field();
  std::uint64_t p = F.characteristic();
  if (p == 0) fail(ErrorKind::DomainError, "p-th roots need positive characteristic");
  if (x.is_zero()) return x;
  switch (F.kind()) {
    case FieldKind::Prime: return x;
    case FieldKind::Function: {
      const auto& rf = x.ratfun();
      fp::Vec n, d;
      if (!fp::deflate_p(rf.num, p, n) || !fp::deflate_p(rf.den, p, d)) return std::nullopt;
      return Elem(F.node(), detail::Rep{detail::RatFun{n, d}});
    }
    case FieldKind::Extension: {
      if (F.is_finite()) {
        mpz_class e = F.order() / static_cast<unsigned long>(p);
        return x.pow(e);
      }
      Field k = F.base();
      if (F.separable_step()) {
        auto z = solve(frobenius_matrix(F), F.coords(x));
        if (!z) fail(ErrorKind::InternalError, "Frobenius matrix is singular");
        Elem y = F.zero(), th = F.one();
        for (const auto& zi : *z) {
          auto r = pth_root(zi);
          if (!r) return std::nullopt;
          y += F.embed(*r) * th;
          th *= F.gen();
        }
        return y;
      }
      if (auto c = F.radicand()) {
        // a^q = c with q = p^e: y = sum y_j a^j has y^p = sum_m a^(pm) sum_k c^k y_(m+kq/p)^p.
        auto cs = F.coords(x);
        const std::size_t q = cs.size(), stride = q / p;
        std::vector<Elem> ys(q, k.zero());
        for (std::size_t i = 0; i < q; ++i) {
          if (cs[i].is_zero()) continue;
          if (i % p) return std::nullopt;
          auto X = decompose_wrt(cs[i], *c);
          if (!X) fail(ErrorKind::UnsupportedField, "radicand is not part of a p-basis");
          for (std::size_t kk = 0; kk < X->size(); ++kk) ys[i / p + kk * stride] = (*X)[kk];
        }
        Elem y = F.zero(), th = F.one();
        for (const auto& yj : ys) {
          y += F.embed(yj) * th;
          th *= F.gen();
        }
        return y;
      }
      fail(ErrorKind::UnsupportedField,
           "p-th roots over inseparable steps other than X^(p^e) - c are not supported: " + F.descriptor());
    }
    default: break;
  }
  fail(ErrorKind::DomainError, "p-th roots need positive characteristic");
}

Elem p_basis_element(const Field& F) {
  if (F.characteristic() == 0 || F.is_finite()) fail(ErrorKind::DomainError, "field is perfect");
  if (F.kind() == FieldKind::Function) return F.gen();
  if (F.separable_step()) return F.embed(p_basis_element(F.base()));
  if (F.radicand()) return F.gen();
  fail(ErrorKind::UnsupportedField, "no p-basis available for " + F.descriptor());
}

std::vector<Elem> p_components(const Elem& x) {
  const Field F = x.field();
  std::uint64_t p = F.characteristic();
  if (p == 0) fail(ErrorKind::DomainError, "p-components need positive characteristic");
  if (F.is_finite()) return {*pth_root(x)};
  if (F.kind() == FieldKind::Function) {
    const auto& rf = x.ratfun();
    // x = N D^(p-1) / D^p.
    fp::Vec a = fp::mul(rf.num, fp::pow(rf.den, p - 1, p), p);
    Elem dinv = Elem(F.node(), detail::Rep{detail::RatFun{rf.den, {1}}}).inverse();
    std::vector<Elem> out;
    for (std::uint64_t j = 0; j < p; ++j) {
      fp::Vec aj;
      for (std::size_t i = j; i < a.size(); i += p) {
        std::size_t pos = (i - j) / p;
        if (aj.size() <= pos) aj.resize(pos + 1, 0);
        aj[pos] = a[i];
      }
      fp::trim(aj);
      out.push_back(Elem(F.node(), detail::Rep{detail::RatFun{aj, {1}}}) * dinv);
    }
    return out;
  }
  if (F.kind() == FieldKind::Extension) {
    if (F.separable_step()) {
      auto z = solve(frobenius_matrix(F), F.coords(x));
      if (!z) fail(ErrorKind::InternalError, "Frobenius matrix is singular");
      std::vector<Elem> out(p, F.zero());
      Elem th = F.one();
      for (const auto& zi : *z) {
        auto comp = p_components(zi);
        for (std::size_t j = 0; j < p; ++j) out[j] += F.embed(comp[j]) * th;
        th *= F.gen();
      }
      return out;
    }
    if (F.radicand()) {
      // Base elements are p-th powers in F, so group coordinates by i mod p.
      auto cs = F.coords(x);
      std::vector<Elem> out(p, F.zero());
      for (std::size_t i = 0; i < cs.size(); ++i)
        out[i % p] += F.gen().pow(static_cast<long long>(i / p)) * *pth_root(F.embed(cs[i]));
      return out;
    }
  }
  fail(ErrorKind::UnsupportedField, "no p-basis available for " + F.descriptor());
}

std::optional<Elem> is_nth_power(const Elem& x, unsigned n) {
  if (n == 0) fail(ErrorKind::DomainError, "root index must be positive");
  if (n == 1 || x.is_zero()) return x;
  const Field F = x.field();
  if (F.kind() == FieldKind::Rationals) {
    const mpq_class& q = x.rational();
    mpz_class num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg && n % 2 == 0) return std::nullopt;
    if (neg) num = -num;
    mpz_class a, b;
    if (!mpz_root(a.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
    if (!mpz_root(b.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
    mpq_class r(neg ? mpz_class(-a) : a, b);
    r.canonicalize();
    return F.from_rational(r);
  }
  std::vector<Elem> xs(n + 1, F.zero());
  xs[n] = F.one();
  xs[0] = -x;
  auto rs = roots(Poly(F, xs));
  if (rs.empty()) return std::nullopt;
  return rs.front();
}

Field make_extension(const Field& base, const Poly& minpoly, const std::string& name) {
  Poly m = minpoly.embed(base);
  if (m.degree() < 1) fail(ErrorKind::NotIrreducible, "minimal polynomial must have positive degree");
  m = m.monic();
  if (!is_irreducible(m)) fail(ErrorKind::NotIrreducible, m.str(name) + " is reducible over " + base.descriptor());
  return Field::extension_unchecked(base, m.coeffs(), name);
}

}  // namespace ccc
