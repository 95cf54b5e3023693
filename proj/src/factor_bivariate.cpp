// Factorization over F_p(t): clear denominators, reduce modulo a place P
// of F_p[t], factor over the residue field, lift P-adically and recombine.

#include <algorithm>
#include <optional>

#include "ccc/factor.hpp"

namespace ccc::detail {
namespace {

using fp::Vec;
using BPoly = std::vector<Vec>;  // coefficients in T, each in F_p[t]

void btrim(BPoly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

BPoly bmul_mod(const BPoly& a, const BPoly& b, const Vec& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  BPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
  for (auto& c : r) c = fp::rem(c, m, p);
  btrim(r);
  return r;
}

bool bdivide(const BPoly& a, const BPoly& b, BPoly& q, std::uint64_t p) {
  BPoly r = a;
  btrim(r);
  if (r.size() < b.size()) return false;
  q.assign(r.size() - b.size() + 1, Vec{});
  for (std::size_t k = r.size(); k-- > b.size() - 1;) {
    if (!r[k].empty()) {
      Vec c, rr;
      fp::divmod(r[k], b.back(), p, c, rr);
      if (!rr.empty()) return false;
      std::size_t off = k - (b.size() - 1);
      q[off] = c;
      for (std::size_t j = 0; j < b.size(); ++j) r[off + j] = fp::sub(r[off + j], fp::mul(c, b[j], p), p);
    }
  }
  for (const auto& c : r)
    if (!c.empty()) return false;
  btrim(q);
  return true;
}

Vec bcontent(const BPoly& a, std::uint64_t p) {
  Vec g;
  for (const auto& c : a) g = fp::gcd(g, c, p);
  return g;
}

// Residue field F_p[t]/P together with reduction and lifting maps.
struct Place {
  std::uint64_t p;
  Vec P;
  Field Fq;

  Elem reduce(const Vec& a) const {
    Vec r = fp::rem(a, P, p);
    if (P.size() == 2) return Fq.from_int(static_cast<long long>(fp::eval(r, (p - P[0]) % p, p)));
    Field Fp = Fq.base();
    std::vector<Elem> c;
    for (std::size_t i = 0; i + 1 < P.size(); ++i) c.push_back(Fp.from_int(static_cast<long long>(i < r.size() ? r[i] : 0)));
    return Fq.from_coords(c);
  }
  Vec lift(const Elem& x) const {
    Vec r;
    if (P.size() == 2) {
      r = {x.residue()};
    } else {
      for (const auto& c : Fq.coords(x)) r.push_back(c.residue());
    }
    fp::trim(r);
    return r;
  }
  Poly reduce(const BPoly& a) const {
    std::vector<Elem> c;
    for (const auto& x : a) c.push_back(reduce(x));
    return Poly(Fq, c);
  }
};

Place make_place(std::uint64_t p, const Vec& P) {
  Field Fp = Field::prime(p);
  if (P.size() == 2) return {p, P, Fp};
  std::vector<Elem> c;
  for (auto x : P) c.push_back(Fp.from_int(static_cast<long long>(x)));
  return {p, P, Field::extension_unchecked(Fp, c, "w")};
}

}  // namespace

std::vector<Poly> split_function_field(const Poly& f, const FactorOptions& opt) {
  const Field& K = f.field();
  const std::uint64_t p = K.characteristic();
  int n = f.degree();
  if (n <= 1) return {f};

  // Primitive bivariate form.
  Vec D = {1};
  for (const auto& c : f.coeffs()) {
    const Vec& den = c.ratfun().den;
    D = fp::quo(fp::mul(D, den, p), fp::gcd(D, den, p), p);
  }
  BPoly F;
  for (const auto& c : f.coeffs()) F.push_back(fp::mul(c.ratfun().num, fp::quo(D, c.ratfun().den, p), p));
  Vec ct = bcontent(F, p);
  int dt = 0;
  for (auto& c : F) {
    c = fp::quo(c, ct, p);
    dt = std::max(dt, fp::deg(c));
  }
  if (dt > opt.max_t_degree) fail(ErrorKind::DegreeTooLarge, "t-degree exceeds the configured bound");
  const Vec& L = F.back();

  // Find a good place: degree 1 first, then larger degrees.
  std::optional<Place> place;
  std::vector<Poly> modular;
  for (unsigned m = 1; m <= 16 && !place; ++m) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < m && count < (1u << 20); ++i) count *= p;
    for (std::uint64_t code = 0; code < count && !place; ++code) {
      Vec P(m + 1, 0);
      P[m] = 1;
      std::uint64_t x = code;
      for (unsigned i = 0; i < m; ++i) {
        P[i] = x % p;
        x /= p;
      }
      if (!fp::is_irreducible(P, p)) continue;
      if (fp::rem(L, P, p).empty()) continue;
      Place pl = make_place(p, P);
      Poly fb = pl.reduce(F).monic();
      Poly d = fb.derivative();
      if (d.is_zero() || gcd(fb, d).degree() > 0) continue;
      modular = split_finite(fb, opt.seed);
      place = pl;
    }
  }
  if (!place) fail(ErrorKind::UnsupportedField, "no good specialization place found");
  if (modular.size() == 1) return {f};
  const Place& pl = *place;
  const std::size_t r = modular.size();
  const int m = fp::deg(pl.P);

  // Lift until P^prec exceeds twice the t-degree.
  int prec = 1;
  while (prec * m <= 2 * dt) ++prec;
  std::vector<Poly> cof(r);
  for (std::size_t i = 0; i < r; ++i) {
    Poly others = Poly::constant(pl.Fq.one());
    for (std::size_t j = 0; j < r; ++j)
      if (j != i) others *= modular[j];
    Poly s, t;
    xgcd(others, modular[i], s, t);
    cof[i] = s;
  }
  std::vector<BPoly> g(r);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& c : modular[i].coeffs()) g[i].push_back(pl.lift(c));

  Vec Pk = pl.P;
  for (int k = 1; k < prec; ++k) {
    Vec Pk1 = fp::mul(Pk, pl.P, p);
    Vec linv = fp::invmod(fp::rem(L, Pk1, p), Pk1, p);
    BPoly prod = {Vec{1}};
    for (const auto& gi : g) prod = bmul_mod(prod, gi, Pk1, p);
    BPoly e(std::max(F.size(), prod.size()));
    for (std::size_t i = 0; i < e.size(); ++i) {
      Vec a = i < F.size() ? fp::rem(fp::mul(F[i], linv, p), Pk1, p) : Vec{};
      Vec b = i < prod.size() ? prod[i] : Vec{};
      Vec diff = fp::sub(a, b, p);
      Vec q, rem;
      fp::divmod(diff, Pk, p, q, rem);
      if (!rem.empty()) fail(ErrorKind::InternalError, "Hensel lifting lost divisibility");
      e[i] = q;
    }
    btrim(e);
    Poly ebar = pl.reduce(e);
    for (std::size_t i = 0; i < r; ++i) {
      Poly delta = (ebar * cof[i]) % modular[i];
      for (std::size_t j = 0; j < delta.coeffs().size(); ++j) {
        if (j >= g[i].size()) g[i].resize(j + 1);
        g[i][j] = fp::rem(fp::add(g[i][j], fp::mul(pl.lift(delta.coeffs()[j]), Pk, p), p), Pk1, p);
      }
    }
    Pk = Pk1;
  }

  // Recombination.
  std::vector<Poly> out;
  auto to_field = [&](const BPoly& h) {
    std::vector<Elem> c;
    for (const auto& x : h) c.push_back(K.from_ratfun(x, {1}));
    return Poly(K, c).monic();
  };
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  BPoly cur = F;
  std::size_t s = 1;
  while (2 * s <= idx.size()) {
    bool found = false;
    std::vector<bool> pick(idx.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      BPoly cand = {fp::rem(cur.back(), Pk, p)};
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (pick[i]) cand = bmul_mod(cand, g[idx[i]], Pk, p);
      Vec c = bcontent(cand, p);
      if (c.empty()) continue;
      for (auto& x : cand) x = fp::quo(x, c, p);
      BPoly q;
      if (!bdivide(cur, cand, q, p)) continue;
      out.push_back(to_field(cand));
      cur = q;
      std::vector<std::size_t> rest;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (!pick[i]) rest.push_back(idx[i]);
      idx = rest;
      found = true;
      break;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!found) ++s;
  }
  if (cur.size() > 1) out.push_back(to_field(cur));
  return out;
}

}  // namespace ccc::detail
