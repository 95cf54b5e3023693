#include "ccc/poly.hpp"

#include <algorithm>

namespace ccc {

Poly::Poly(Field f) : f_(std::move(f)) {}

Poly::Poly(Field f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  for (auto& c : c_) c = f_.embed(c);
  trim();
}

Poly Poly::constant(const Elem& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Elem& c, std::size_t k) {
  std::vector<Elem> v(k + 1, c.field().zero());
  v[k] = c;
  return Poly(c.field(), std::move(v));
}

Poly Poly::x(const Field& f) { return monomial(f.one(), 1); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Elem Poly::lc() const { return c_.empty() ? f_.zero() : c_.back(); }

Poly Poly::monic() const {
  if (c_.empty() || c_.back().is_one()) return *this;
  return *this * c_.back().inverse();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), f_.zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, f_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j].is_zero()) continue;
      r[i + j] += c_[i] * o.c_[j];
    }
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Elem& c) {
  Elem e = f_.embed(c);
  for (auto& x : c_) x *= e;
  trim();
  return *this;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) fail(ErrorKind::DomainError, "polynomial division by zero");
  const Field& f = a.field();
  std::vector<Elem> rc = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) {
    q = Poly(f);
    r = a;
    return;
  }
  std::vector<Elem> qc(a.degree() - db + 1, f.zero());
  Elem inv = b.lc().inverse();
  const auto& bc = b.coeffs();
  for (int k = a.degree(); k >= db; --k) {
    if (rc[k].is_zero()) continue;
    Elem c = rc[k] * inv;
    qc[k - db] = c;
    for (int j = 0; j <= db; ++j) rc[k - db + j] -= c * bc[j];
  }
  rc.resize(db > 0 ? db : 0, f.zero());
  q = Poly(f, std::move(qc));
  r = Poly(f, std::move(rc));
}

Poly operator/(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return q;
}

Poly operator%(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return r;
}

bool divides(const Poly& d, const Poly& a) { return (a % d).is_zero(); }

Poly gcd(const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return (a / gcd(a, b) * b).monic();
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
  const Field& f = a.field();
  Poly r0 = a, r1 = b, s0 = Poly::constant(f.one()), s1(f), t0(f), t1 = Poly::constant(f.one());
  while (!r1.is_zero()) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = Poly(f);
    t = Poly(f);
    return r0;
  }
  Elem inv = r0.lc().inverse();
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

Poly powmod(const Poly& a, const mpz_class& e0, const Poly& m) {
  mpz_class e = e0;
  Poly r = Poly::constant(a.field().one()) % m;
  Poly b = a % m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = (r * b) % m;
    e >>= 1;
    if (e > 0) b = (b * b) % m;
  }
  return r;
}

Elem Poly::eval(const Elem& x0) const {
  Elem x = x0;
  // Evaluate in the larger of the two fields.
  Field target = x.field().contains(f_) ? x.field() : f_;
  x = target.embed(x);
  Elem r = target.zero();
  for (std::size_t i = c_.size(); i-- > 0;) r = r * x + target.embed(c_[i]);
  return r;
}

Poly Poly::compose(const Poly& g) const {
  Field target = g.field().contains(f_) ? g.field() : f_;
  Poly r(target);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * g + Poly::constant(target.embed(c_[i]));
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Elem> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * f_.from_int(static_cast<long long>(i)));
  return Poly(f_, std::move(r));
}

Poly Poly::pow(unsigned e) const {
  Poly r = Poly::constant(f_.one()), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::embed(const Field& ext) const {
  std::vector<Elem> r;
  for (const auto& c : c_) r.push_back(ext.embed(c));
  return Poly(ext, std::move(r));
}

bool Poly::deflate(unsigned k, Poly& v) const {
  std::vector<Elem> r;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i % k == 0)
      r.push_back(c_[i]);
    else if (!c_[i].is_zero())
      return false;
  }
  v = Poly(f_, std::move(r));
  return true;
}

Poly Poly::inflate(unsigned k) const {
  if (c_.empty()) return *this;
  std::vector<Elem> r((c_.size() - 1) * k + 1, f_.zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return Poly(f_, std::move(r));
}

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

int Poly::compare(const Poly& o) const {
  if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
  for (std::size_t i = c_.size(); i-- > 0;) {
    int c = c_[i].compare(o.c_[i]);
    if (c) return c;
  }
  return 0;
}

std::string format_poly(const std::vector<std::string>& coeffs, const std::string& var) {
  std::string s;
  auto is_simple = [](const std::string& c) {
    if (c.empty()) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
      char ch = c[i];
      if (i == 0 && ch == '-') continue;
      if (ch == '+' || ch == '-' || ch == '/' || ch == '(' || ch == ')') return false;
    }
    return true;
  };
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::string& c = coeffs[i];
    if (c == "0") continue;
    std::string term;
    if (i == 0) {
      term = is_simple(c) ? c : "(" + c + ")";
    } else {
      std::string mono = var + (i > 1 ? "^" + std::to_string(i) : "");
      if (c == "1")
        term = mono;
      else if (c == "-1")
        term = "-" + mono;
      else if (is_simple(c))
        term = c + "*" + mono;
      else
        term = "(" + c + ")*" + mono;
    }
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s.empty() ? "0" : s;
}

std::string Poly::str(const std::string& var) const {
  std::vector<std::string> cs;
  for (const auto& c : c_) cs.push_back(c.str());
  return format_poly(cs, var);
}

}  // namespace ccc
