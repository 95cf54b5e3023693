// Factorization over Q: modular factorization, Hensel lifting and
// recombination of lifted factors.

#include <algorithm>

#include "ccc/factor.hpp"

namespace ccc::detail {
namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

void zmod(ZPoly& a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(a);
}

void zsym(ZPoly& a, const mpz_class& m) {
  mpz_class half = m / 2;
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(a);
}

mpz_class zcontent(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

// Exact division over Z; false when b does not divide a.
bool zdivide(const ZPoly& a, const ZPoly& b, ZPoly& q) {
  ZPoly r = a;
  if (r.size() < b.size()) return r.empty() ? (q.clear(), true) : false;
  q.assign(r.size() - b.size() + 1, 0);
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] != 0) {
      if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return false;
      mpz_class c = r[k] / b.back();
      std::size_t off = k - (b.size() - 1);
      q[off] = c;
      for (std::size_t j = 0; j < b.size(); ++j) r[off + j] -= c * b[j];
    }
    if (k == 0) break;
  }
  for (const auto& c : r)
    if (c != 0) return false;
  ztrim(q);
  return true;
}

Poly to_fp(const ZPoly& a, const Field& F) {
  std::vector<Elem> c;
  for (const auto& x : a) c.push_back(F.from_mpz(x));
  return Poly(F, c);
}

ZPoly from_fp(const Poly& a) {
  ZPoly r;
  for (const auto& c : a.coeffs()) r.push_back(mpz_class(static_cast<unsigned long>(c.residue())));
  ztrim(r);
  return r;
}

std::vector<std::uint64_t> small_primes() {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 3; ps.size() < 400; p += 2)
    if (fp::is_prime(p)) ps.push_back(p);
  return ps;
}

}  // namespace

std::vector<Poly> split_rational(const Poly& f, const FactorOptions& opt) {
  const Field& Q = f.field();
  int n = f.degree();
  if (n <= 1) return {f};
  // Integer primitive multiple of f.
  mpz_class L = 1;
  for (const auto& c : f.coeffs()) L = lcm(L, c.rational().get_den());
  ZPoly F;
  for (const auto& c : f.coeffs()) {
    mpq_class v = c.rational() * L;
    F.push_back(v.get_num());
  }
  mpz_class ct = zcontent(F);
  for (auto& c : F) c /= ct;

  // Choose a prime keeping the degree and square-freeness.
  std::uint64_t p = 0;
  std::vector<Poly> modular;
  std::size_t best = SIZE_MAX;
  int good = 0;
  for (auto cand : small_primes()) {
    if (mpz_divisible_ui_p(F.back().get_mpz_t(), cand)) continue;
    Field Fp = Field::prime(cand);
    Poly fb = to_fp(F, Fp).monic();
    if (gcd(fb, fb.derivative()).degree() > 0) continue;
    auto fs = split_finite(fb, opt.seed);
    if (fs.size() == 1) return {f};
    if (fs.size() < best) {
      best = fs.size();
      p = cand;
      modular = fs;
    }
    if (++good >= 5) break;
  }
  if (p == 0) fail(ErrorKind::InternalError, "no suitable prime for rational factorization");
  Field Fp = Field::prime(p);

  // Coefficient bound for factors (times the leading coefficient).
  mpz_class norm2 = 0;
  for (const auto& c : F) norm2 += c * c;
  mpz_class norm = sqrt(norm2) + 1;
  mpz_class B = abs(F.back()) * norm;
  B <<= static_cast<unsigned long>(n);
  B = 2 * B + 1;
  mpz_class pk = static_cast<unsigned long>(p);
  mpz_class P = pk;
  while (P <= B) P *= pk;

  // Multifactor linear Hensel lifting of the monic modular factors.
  std::size_t r = modular.size();
  Poly fbar = to_fp(F, Fp).monic();
  std::vector<Poly> cof(r);
  {
    // s_i with sum s_i * prod_{j != i} g_j = 1 mod p.
    for (std::size_t i = 0; i < r; ++i) {
      Poly others = Poly::constant(Fp.one());
      for (std::size_t j = 0; j < r; ++j)
        if (j != i) others *= modular[j];
      Poly s, t;
      xgcd(others, modular[i], s, t);
      cof[i] = s;
    }
  }
  std::vector<ZPoly> g(r);
  for (std::size_t i = 0; i < r; ++i) g[i] = from_fp(modular[i]);
  mpz_class lcinv;
  mpz_class modulus = pk;
  // Target: monic F / lc modulo the current modulus.
  auto target = [&](const mpz_class& m) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), F.back().get_mpz_t(), m.get_mpz_t());
    ZPoly t = F;
    for (auto& c : t) c *= inv;
    zmod(t, m);
    return t;
  };
  while (modulus < P) {
    mpz_class next = modulus * pk;
    ZPoly prod = {1};
    for (const auto& gi : g) {
      prod = zmul(prod, gi);
      zmod(prod, next);
    }
    ZPoly e = target(next);
    e.resize(std::max(e.size(), prod.size()), 0);
    for (std::size_t i = 0; i < prod.size(); ++i) e[i] -= prod[i];
    zmod(e, next);
    for (auto& c : e) c /= modulus;
    Poly ebar = to_fp(e, Fp);
    for (std::size_t i = 0; i < r; ++i) {
      Poly delta = (ebar * cof[i]) % modular[i];
      ZPoly d = from_fp(delta);
      g[i].resize(std::max(g[i].size(), d.size()), 0);
      for (std::size_t j = 0; j < d.size(); ++j) g[i][j] += d[j] * modulus;
      zmod(g[i], next);
    }
    modulus = next;
  }

  // Recombination over subsets of increasing size.
  std::vector<Poly> out;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  ZPoly cur = F;
  std::size_t s = 1;
  while (2 * s <= idx.size()) {
    bool found = false;
    std::vector<bool> pick(idx.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(s), true);
    do {
      ZPoly cand = {cur.back()};
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (pick[i]) {
          cand = zmul(cand, g[idx[i]]);
          zsym(cand, modulus);
        }
      mpz_class c = zcontent(cand);
      if (c == 0) continue;
      for (auto& x : cand) x /= c;
      if (cand.back() < 0)
        for (auto& x : cand) x = -x;
      ZPoly q;
      if (!zdivide(cur, cand, q)) continue;
      std::vector<Elem> qc;
      for (const auto& x : cand) qc.push_back(Q.from_mpz(x));
      out.push_back(Poly(Q, qc).monic());
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
  if (cur.size() > 1) {
    std::vector<Elem> qc;
    for (const auto& x : cur) qc.push_back(Q.from_mpz(x));
    out.push_back(Poly(Q, qc).monic());
  }
  return out;
}

}  // namespace ccc::detail
