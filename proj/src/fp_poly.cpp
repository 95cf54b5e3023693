#include "ccc/fp_poly.hpp"

#include <algorithm>

#include "ccc/error.hpp"

namespace ccc::fp {

Coef mul_mod(Coef a, Coef b, Coef p) {
  return static_cast<Coef>((static_cast<unsigned __int128>(a) * b) % p);
}

Coef pow_mod(Coef a, std::uint64_t e, Coef p) {
  Coef r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

Coef inv_mod(Coef a, Coef p) {
  if (a % p == 0) fail(ErrorKind::DomainError, "division by zero");
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<Coef>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec add(const Vec& a, const Vec& b, Coef p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Coef x = i < a.size() ? a[i] : 0;
    Coef y = i < b.size() ? b[i] : 0;
    Coef s = x + y;
    r[i] = s >= p ? s - p : s;
  }
  trim(r);
  return r;
}

Vec sub(const Vec& a, const Vec& b, Coef p) {
  Vec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Coef x = i < a.size() ? a[i] : 0;
    Coef y = i < b.size() ? b[i] : 0;
    r[i] = x >= y ? x - y : x + p - y;
  }
  trim(r);
  return r;
}

Vec neg(const Vec& a, Coef p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] ? p - a[i] : 0;
  return r;
}

Vec scale(const Vec& a, Coef c, Coef p) {
  c %= p;
  if (c == 0) return {};
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_mod(a[i], c, p);
  return r;
}

Vec mul(const Vec& a, const Vec& b, Coef p) {
  if (a.empty() || b.empty()) return {};
  // Accumulate in 128 bits and reduce once per output coefficient when safe.
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  Vec r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<Coef>(acc[i] % p);
  trim(r);
  return r;
}

Vec shift(const Vec& a, std::size_t k) {
  if (a.empty()) return {};
  Vec r(k, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

void divmod(const Vec& a, const Vec& b, Coef p, Vec& q, Vec& r) {
  if (b.empty()) fail(ErrorKind::DomainError, "polynomial division by zero");
  r = a;
  if (a.size() < b.size()) {
    q.clear();
    return;
  }
  q.assign(a.size() - b.size() + 1, 0);
  Coef inv = inv_mod(b.back(), p);
  for (std::size_t k = a.size(); k-- >= b.size();) {
    Coef c = mul_mod(r[k], inv, p);
    std::size_t off = k - (b.size() - 1);
    q[off] = c;
    if (c) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        Coef t = mul_mod(c, b[j], p);
        r[off + j] = r[off + j] >= t ? r[off + j] - t : r[off + j] + p - t;
      }
    }
    if (k == 0) break;
  }
  trim(q);
  trim(r);
}

Vec rem(const Vec& a, const Vec& b, Coef p) {
  Vec q, r;
  divmod(a, b, p, q, r);
  return r;
}

Vec quo(const Vec& a, const Vec& b, Coef p) {
  Vec q, r;
  divmod(a, b, p, q, r);
  return q;
}

Vec monic(const Vec& a, Coef p) {
  if (a.empty()) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

Vec gcd(Vec a, Vec b, Coef p) {
  while (!b.empty()) {
    Vec r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Vec xgcd(const Vec& a, const Vec& b, Coef p, Vec& s, Vec& t) {
  Vec r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  while (!r1.empty()) {
    Vec q, r;
    divmod(r0, r1, p, q, r);
    Vec s2 = sub(s0, mul(q, s1, p), p);
    Vec t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return {};
  }
  Coef inv = inv_mod(r0.back(), p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
  return scale(r0, inv, p);
}

Vec pow(const Vec& a, std::uint64_t e, Coef p) {
  Vec r = {1 % p};
  trim(r);
  Vec b = a;
  while (e) {
    if (e & 1) r = mul(r, b, p);
    e >>= 1;
    if (e) b = mul(b, b, p);
  }
  return r;
}

Vec powmod(const Vec& a, std::uint64_t e, const Vec& m, Coef p) {
  Vec r = rem({1}, m, p);
  Vec b = rem(a, m, p);
  while (e) {
    if (e & 1) r = rem(mul(r, b, p), m, p);
    e >>= 1;
    if (e) b = rem(mul(b, b, p), m, p);
  }
  return r;
}

Vec derivative(const Vec& a, Coef p) {
  if (a.size() <= 1) return {};
  Vec r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul_mod(a[i], i % p, p);
  trim(r);
  return r;
}

Coef eval(const Vec& a, Coef x, Coef p) {
  Coef r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = (mul_mod(r, x, p) + a[i]) % p;
  return r;
}

Vec compose(const Vec& a, const Vec& b, Coef p) {
  Vec r;
  for (std::size_t i = a.size(); i-- > 0;) r = add(mul(r, b, p), a[i] ? Vec{a[i]} : Vec{}, p);
  return r;
}

Vec invmod(const Vec& a, const Vec& m, Coef p) {
  Vec s, t;
  Vec g = xgcd(rem(a, m, p), m, p, s, t);
  if (g.size() != 1) fail(ErrorKind::DomainError, "polynomial not invertible modulo modulus");
  return rem(s, m, p);
}

bool deflate_p(const Vec& a, Coef p, Vec& out) {
  out.clear();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && i % p) return false;
  }
  if (a.empty()) return true;
  out.assign((a.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < a.size(); i += p) out[i / p] = a[i];
  trim(out);
  return true;
}

bool is_irreducible(const Vec& a, Coef p) {
  int d = deg(a);
  if (d <= 0) return false;
  if (d == 1) return true;
  Vec m = monic(a, p);
  Vec x = {0, 1};
  Vec xp = x;
  for (int i = 1; i <= d / 2; ++i) {
    xp = powmod(xp, p, m, p);
    Vec g = gcd(m, sub(xp, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Vec least_irreducible(unsigned d, Coef p) {
  if (d == 0) fail(ErrorKind::DomainError, "degree 0 has no irreducible polynomial");
  Vec c(d, 0);
  while (true) {
    Vec f = c;
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
    std::size_t i = 0;
    while (i < d && ++c[i] == p) c[i++] = 0;
    if (i == d) fail(ErrorKind::InternalError, "no irreducible polynomial found");
  }
}

int compare(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::string to_string(const Vec& a, const std::string& var) {
  if (a.empty()) return "0";
  std::string s;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (!a[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(a[i]);
      continue;
    }
    if (a[i] != 1) s += std::to_string(a[i]) + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

}  // namespace ccc::fp
