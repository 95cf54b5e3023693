#include "ccc/field.hpp"

#include "ccc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace ccc {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::NotLinearizable: return "NotLinearizable";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotRuConjugate: return "NotRuConjugate";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::NonUniqueMinimal: return "NonUniqueMinimal";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::InvalidConvention: return "InvalidConvention";
    case ErrorKind::NonClosedSupport: return "NonClosedSupport";
    case ErrorKind::ReplayMismatch: return "ReplayMismatch";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Error";
}

namespace detail {
namespace {

RatFun normalize(fp::Vec num, fp::Vec den, std::uint64_t p) {
  if (den.empty()) fail(ErrorKind::DomainError, "division by zero");
  if (num.empty()) return {{}, {1}};
  fp::Vec g = fp::gcd(num, den, p);
  if (g.size() > 1) {
    num = fp::quo(num, g, p);
    den = fp::quo(den, g, p);
  }
  std::uint64_t inv = fp::inv_mod(den.back(), p);
  return {fp::scale(num, inv, p), fp::scale(den, inv, p)};
}

// Polynomials over a base node, used for extension arithmetic.
void trim_ext(const FieldNode& b, ExtVec& a) {
  while (!a.empty() && b.is_zero(a.back())) a.pop_back();
}

void divmod_ext(const FieldNode& b, const ExtVec& a, const ExtVec& d, ExtVec& q, ExtVec& r) {
  r = a;
  trim_ext(b, r);
  q.clear();
  if (r.size() < d.size()) return;
  q.assign(r.size() - d.size() + 1, b.zero());
  Rep inv = b.inv(d.back());
  for (std::size_t k = r.size(); k-- >= d.size();) {
    if (!b.is_zero(r[k])) {
      Rep c = b.mul(r[k], inv);
      std::size_t off = k - (d.size() - 1);
      for (std::size_t j = 0; j < d.size(); ++j) r[off + j] = b.sub(r[off + j], b.mul(c, d[j]));
      q[off] = c;
    }
    if (k == 0) break;
  }
  trim_ext(b, r);
  trim_ext(b, q);
}

ExtVec mul_poly_ext(const FieldNode& b, const ExtVec& x, const ExtVec& y) {
  if (x.empty() || y.empty()) return {};
  ExtVec r(x.size() + y.size() - 1, b.zero());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (b.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (b.is_zero(y[j])) continue;
      r[i + j] = b.add(r[i + j], b.mul(x[i], y[j]));
    }
  }
  trim_ext(b, r);
  return r;
}

ExtVec sub_poly_ext(const FieldNode& b, const ExtVec& x, const ExtVec& y) {
  ExtVec r(std::max(x.size(), y.size()), b.zero());
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < x.size()) r[i] = x[i];
    if (i < y.size()) r[i] = b.sub(r[i], y[i]);
  }
  trim_ext(b, r);
  return r;
}

bool simple_token(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (i == 0 && c == '-') continue;
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '^' || c == '*'))
      return false;
  }
  return true;
}

}  // namespace

Rep FieldNode::zero() const { return from_int(0); }
Rep FieldNode::one() const { return from_int(1); }

Rep FieldNode::from_int(const mpz_class& n) const {
  switch (kind) {
    case FieldKind::Rationals: return Rep{mpq_class(n)};
    case FieldKind::Prime: {
      mpz_class r = n % mpz_class(static_cast<unsigned long>(p));
      if (r < 0) r += static_cast<unsigned long>(p);
      return Rep{static_cast<std::uint64_t>(r.get_ui())};
    }
    case FieldKind::Function: {
      mpz_class r = n % mpz_class(static_cast<unsigned long>(p));
      if (r < 0) r += static_cast<unsigned long>(p);
      fp::Vec num;
      if (r != 0) num.push_back(r.get_ui());
      return Rep{RatFun{num, {1}}};
    }
    case FieldKind::Extension: {
      ExtVec v(degree, base->zero());
      v[0] = base->from_int(n);
      return Rep{v};
    }
  }
  return {};
}

bool FieldNode::is_zero(const Rep& a) const {
  switch (kind) {
    case FieldKind::Rationals: return sgn(std::get<mpq_class>(a.v)) == 0;
    case FieldKind::Prime: return std::get<std::uint64_t>(a.v) == 0;
    case FieldKind::Function: return std::get<RatFun>(a.v).num.empty();
    case FieldKind::Extension:
      for (const Rep& c : std::get<ExtVec>(a.v))
        if (!base->is_zero(c)) return false;
      return true;
  }
  return false;
}

bool FieldNode::eq(const Rep& a, const Rep& b) const { return cmp(a, b) == 0; }

int FieldNode::cmp(const Rep& a, const Rep& b) const {
  switch (kind) {
    case FieldKind::Rationals: {
      int c = ::cmp(std::get<mpq_class>(a.v), std::get<mpq_class>(b.v));
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case FieldKind::Prime: {
      auto x = std::get<std::uint64_t>(a.v), y = std::get<std::uint64_t>(b.v);
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      const auto& y = std::get<RatFun>(b.v);
      int c = fp::compare(x.num, y.num);
      return c ? c : fp::compare(x.den, y.den);
    }
    case FieldKind::Extension: {
      const auto& x = std::get<ExtVec>(a.v);
      const auto& y = std::get<ExtVec>(b.v);
      for (std::size_t i = degree; i-- > 0;) {
        int c = base->cmp(x[i], y[i]);
        if (c) return c;
      }
      return 0;
    }
  }
  return 0;
}

Rep FieldNode::add(const Rep& a, const Rep& b) const {
  switch (kind) {
    case FieldKind::Rationals: return Rep{mpq_class(std::get<mpq_class>(a.v) + std::get<mpq_class>(b.v))};
    case FieldKind::Prime: {
      auto s = std::get<std::uint64_t>(a.v) + std::get<std::uint64_t>(b.v);
      return Rep{s >= p ? s - p : s};
    }
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      const auto& y = std::get<RatFun>(b.v);
      if (x.den == y.den) return Rep{normalize(fp::add(x.num, y.num, p), x.den, p)};
      return Rep{normalize(fp::add(fp::mul(x.num, y.den, p), fp::mul(y.num, x.den, p), p),
                           fp::mul(x.den, y.den, p), p)};
    }
    case FieldKind::Extension: {
      const auto& x = std::get<ExtVec>(a.v);
      const auto& y = std::get<ExtVec>(b.v);
      ExtVec r(degree);
      for (unsigned i = 0; i < degree; ++i) r[i] = base->add(x[i], y[i]);
      return Rep{r};
    }
  }
  return {};
}

Rep FieldNode::neg(const Rep& a) const {
  switch (kind) {
    case FieldKind::Rationals: return Rep{mpq_class(-std::get<mpq_class>(a.v))};
    case FieldKind::Prime: {
      auto x = std::get<std::uint64_t>(a.v);
      return Rep{x ? p - x : 0};
    }
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      return Rep{RatFun{fp::neg(x.num, p), x.den}};
    }
    case FieldKind::Extension: {
      const auto& x = std::get<ExtVec>(a.v);
      ExtVec r(degree);
      for (unsigned i = 0; i < degree; ++i) r[i] = base->neg(x[i]);
      return Rep{r};
    }
  }
  return {};
}

Rep FieldNode::sub(const Rep& a, const Rep& b) const {
  if (kind == FieldKind::Rationals)
    return Rep{mpq_class(std::get<mpq_class>(a.v) - std::get<mpq_class>(b.v))};
  if (kind == FieldKind::Prime) {
    auto x = std::get<std::uint64_t>(a.v), y = std::get<std::uint64_t>(b.v);
    return Rep{x >= y ? x - y : x + p - y};
  }
  return add(a, neg(b));
}

Rep FieldNode::mul(const Rep& a, const Rep& b) const {
  switch (kind) {
    case FieldKind::Rationals: return Rep{mpq_class(std::get<mpq_class>(a.v) * std::get<mpq_class>(b.v))};
    case FieldKind::Prime: return Rep{fp::mul_mod(std::get<std::uint64_t>(a.v), std::get<std::uint64_t>(b.v), p)};
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      const auto& y = std::get<RatFun>(b.v);
      if (x.num.empty() || y.num.empty()) return zero();
      // Cross-cancel before multiplying to keep degrees small.
      fp::Vec g1 = fp::gcd(x.num, y.den, p), g2 = fp::gcd(y.num, x.den, p);
      fp::Vec n1 = fp::quo(x.num, g1, p), d2 = fp::quo(y.den, g1, p);
      fp::Vec n2 = fp::quo(y.num, g2, p), d1 = fp::quo(x.den, g2, p);
      fp::Vec num = fp::mul(n1, n2, p), den = fp::mul(d1, d2, p);
      std::uint64_t inv = fp::inv_mod(den.back(), p);
      return Rep{RatFun{fp::scale(num, inv, p), fp::scale(den, inv, p)}};
    }
    case FieldKind::Extension: {
      ExtVec prod = mul_poly_ext(*base, std::get<ExtVec>(a.v), std::get<ExtVec>(b.v));
      for (std::size_t k = prod.size(); k-- > degree;) {
        if (base->is_zero(prod[k])) continue;
        Rep c = prod[k];
        for (unsigned i = 0; i < degree; ++i)
          prod[k - degree + i] = base->sub(prod[k - degree + i], base->mul(c, minpoly[i]));
        prod[k] = base->zero();
      }
      prod.resize(degree, base->zero());
      return Rep{prod};
    }
  }
  return {};
}

Rep FieldNode::inv(const Rep& a) const {
  if (is_zero(a)) fail(ErrorKind::DomainError, "division by zero");
  switch (kind) {
    case FieldKind::Rationals: return Rep{mpq_class(1 / std::get<mpq_class>(a.v))};
    case FieldKind::Prime: return Rep{fp::inv_mod(std::get<std::uint64_t>(a.v), p)};
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      return Rep{normalize(x.den, x.num, p)};
    }
    case FieldKind::Extension: {
      // Extended Euclid of a against the minimal polynomial over the base.
      const FieldNode& b = *base;
      ExtVec r0 = minpoly, r1 = std::get<ExtVec>(a.v);
      trim_ext(b, r1);
      ExtVec s0, s1 = {b.one()};
      while (r1.size() > 1) {
        ExtVec q, r;
        divmod_ext(b, r0, r1, q, r);
        ExtVec s2 = sub_poly_ext(b, s0, mul_poly_ext(b, q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
      }
      if (r1.empty()) fail(ErrorKind::InternalError, "minimal polynomial is reducible");
      Rep c = b.inv(r1[0]);
      ExtVec out(degree, b.zero());
      for (std::size_t i = 0; i < s1.size() && i < degree; ++i) out[i] = b.mul(s1[i], c);
      return Rep{out};
    }
  }
  return {};
}

std::string FieldNode::fmt(const Rep& a) const {
  switch (kind) {
    case FieldKind::Rationals: return std::get<mpq_class>(a.v).get_str();
    case FieldKind::Prime: return std::to_string(std::get<std::uint64_t>(a.v));
    case FieldKind::Function: {
      const auto& x = std::get<RatFun>(a.v);
      std::string n = fp::to_string(x.num, var);
      if (x.den.size() == 1) return n;
      std::string d = fp::to_string(x.den, var);
      auto wrap = [](const std::string& s) {
        return s.find_first_of("+*") == std::string::npos ? s : "(" + s + ")";
      };
      return wrap(n) + "/" + wrap(d);
    }
    case FieldKind::Extension: {
      const auto& x = std::get<ExtVec>(a.v);
      std::string s;
      for (std::size_t i = degree; i-- > 0;) {
        if (base->is_zero(x[i])) continue;
        std::string c = base->fmt(x[i]);
        std::string term;
        if (i == 0) {
          term = simple_token(c) ? c : "(" + c + ")";
        } else {
          std::string mono = var + (i > 1 ? "^" + std::to_string(i) : "");
          if (c == "1")
            term = mono;
          else if (c == "-1")
            term = "-" + mono;
          else if (simple_token(c))
            term = c + "*" + mono;
          else
            term = "(" + c + ")*" + mono;
        }
        if (!s.empty() && term[0] != '-') s += "+";
        s += term;
      }
      return s.empty() ? "0" : s;
    }
  }
  return "";
}

}  // namespace detail

using detail::ExtVec;
using detail::FieldNode;
using detail::NodePtr;
using detail::Rep;

bool same_field(const NodePtr& a, const NodePtr& b) {
  return a == b || (a && b && a->descriptor == b->descriptor);
}

namespace {

NodePtr rationals_node() {
  static const NodePtr q = [] {
    auto n = std::make_shared<FieldNode>();
    n->kind = FieldKind::Rationals;
    n->descriptor = "Q";
    return n;
  }();
  return q;
}

}  // namespace

Field::Field() : n_(rationals_node()) {}

Field Field::rationals() { return Field(); }

Field Field::prime(std::uint64_t p) {
  if (!fp::is_prime(p)) fail(ErrorKind::DomainError, "characteristic must be prime");
  if (p >= (1ULL << 31)) fail(ErrorKind::UnsupportedField, "prime too large");
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldKind::Prime;
  n->p = p;
  n->finite = true;
  n->order = static_cast<unsigned long>(p);
  n->descriptor = "GF(" + std::to_string(p) + ")";
  return Field(n);
}

Field Field::finite(std::uint64_t p, unsigned e) {
  if (e == 0) fail(ErrorKind::DomainError, "GF(p^e) requires e >= 1");
  Field fp_ = prime(p);
  if (e == 1) return fp_;
  fp::Vec m = fp::least_irreducible(e, p);
  std::vector<Elem> coeffs;
  for (auto c : m) coeffs.push_back(fp_.from_int(static_cast<long long>(c)));
  Field f = extension_unchecked(fp_, coeffs, "g");
  auto n = std::make_shared<FieldNode>(*f.node());
  n->gf_exp = e;
  n->descriptor = "GF(" + std::to_string(p) + "^" + std::to_string(e) + ")";
  return Field(n);
}

Field Field::function_field(std::uint64_t p, const std::string& var) {
  Field fp_ = prime(p);
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldKind::Function;
  n->p = fp_.characteristic();
  n->var = var;
  n->descriptor = "Fp(" + var + "):p=" + std::to_string(p);
  return Field(n);
}

Field Field::extension_unchecked(const Field& base, const std::vector<Elem>& coeffs,
                                 const std::string& gen) {
  if (coeffs.size() < 2) fail(ErrorKind::DomainError, "extension needs degree >= 1");
  if (!coeffs.back().is_one()) fail(ErrorKind::DomainError, "minimal polynomial must be monic");
  for (Field f = base;; f = f.base()) {
    if (f.generator_name() == gen) fail(ErrorKind::DomainError, "generator name already used in tower: " + gen);
    if (!f.is_extension()) break;
  }
  auto n = std::make_shared<FieldNode>();
  n->kind = FieldKind::Extension;
  n->p = base.characteristic();
  n->var = gen;
  n->base = base.node();
  n->degree = static_cast<unsigned>(coeffs.size() - 1);
  for (const Elem& c : coeffs) {
    Elem e = base.embed(c);
    n->minpoly.push_back(e.rep());
  }
  n->finite = base.is_finite();
  if (n->finite) {
    mpz_pow_ui(n->order.get_mpz_t(), base.order().get_mpz_t(), n->degree);
  }
  // Separability of this step and the X^p - c shape.
  std::uint64_t p = n->p;
  if (p) {
    bool all_mult = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (i % p && !coeffs[i].is_zero()) all_mult = false;
    n->separable_step = !all_mult;
    std::uint64_t q = p;
    while (q < n->degree) q *= p;
    if (all_mult && n->degree == q) {
      bool binomial = true;
      for (std::size_t i = 1; i < n->degree; ++i)
        if (!coeffs[i].is_zero()) binomial = false;
      if (binomial) n->radicand = base.node()->neg(coeffs[0].rep());
    }
  }
  std::vector<std::string> cs;
  for (const Elem& c : coeffs) cs.push_back(base.embed(c).str());
  std::string poly = format_poly(cs, gen);
  n->descriptor = "ext(" + base.descriptor() + ";" + poly + ";" + gen + ")";
  return Field(n);
}

bool Field::is_perfect() const {
  if (n_->p == 0 || n_->finite) return true;
  return false;
}

Field Field::base() const { return n_->base ? Field(n_->base) : *this; }

int Field::tower_height() const {
  int h = 0;
  for (NodePtr n = n_; n->kind == FieldKind::Extension; n = n->base) ++h;
  return h;
}

Field Field::bottom() const {
  NodePtr n = n_;
  while (n->kind == FieldKind::Extension) n = n->base;
  return Field(n);
}

std::vector<Elem> Field::minpoly() const {
  std::vector<Elem> out;
  for (const Rep& r : n_->minpoly) out.emplace_back(n_->base, r);
  return out;
}

std::optional<Elem> Field::radicand() const {
  if (!n_->radicand) return std::nullopt;
  return Elem(n_->base, *n_->radicand);
}

Elem Field::zero() const { return Elem(n_, n_->zero()); }
Elem Field::one() const { return Elem(n_, n_->one()); }
Elem Field::from_int(long long n) const { return Elem(n_, n_->from_int(mpz_class(static_cast<long>(n)))); }
Elem Field::from_mpz(const mpz_class& n) const { return Elem(n_, n_->from_int(n)); }

Elem Field::from_rational(const mpq_class& q) const {
  return from_mpz(q.get_num()) / from_mpz(q.get_den());
}

Elem Field::from_ratfun(fp::Vec num, fp::Vec den) const {
  if (n_->kind != FieldKind::Function) fail(ErrorKind::DomainError, "not a rational function field");
  fp::trim(num);
  fp::trim(den);
  return Elem(n_, Rep{detail::normalize(std::move(num), std::move(den), n_->p)});
}

Elem Field::gen() const {
  if (n_->kind == FieldKind::Function) return Elem(n_, Rep{detail::RatFun{{0, 1}, {1}}});
  if (n_->kind == FieldKind::Extension) {
    ExtVec v(n_->degree, n_->base->zero());
    if (n_->degree == 1) {
      // Degree-one extension: the generator is the root of X + c0.
      v[0] = n_->base->neg(n_->minpoly[0]);
    } else {
      v[1] = n_->base->one();
    }
    return Elem(n_, Rep{v});
  }
  fail(ErrorKind::DomainError, "field " + descriptor() + " has no generator");
}

bool Field::contains(const Field& sub) const {
  for (NodePtr n = n_;; n = n->base) {
    if (same_field(n, sub.node())) return true;
    if (n->kind != FieldKind::Extension) return false;
  }
}

Elem Field::embed(const Elem& x) const {
  if (same_field(x.node(), n_)) return Elem(n_, x.rep());
  if (n_->kind != FieldKind::Extension)
    fail(ErrorKind::DomainError, "cannot embed element of " + x.field().descriptor() + " into " + descriptor());
  Elem b = base().embed(x);
  ExtVec v(n_->degree, n_->base->zero());
  v[0] = b.rep();
  return Elem(n_, Rep{v});
}

Elem Field::from_coords(const std::vector<Elem>& c) const {
  if (n_->kind != FieldKind::Extension || c.size() != n_->degree)
    fail(ErrorKind::DimensionMismatch, "coordinate vector does not match extension degree");
  ExtVec v;
  Field b = base();
  for (const Elem& e : c) v.push_back(b.embed(e).rep());
  return Elem(n_, Rep{v});
}

std::vector<Elem> Field::coords(const Elem& x) const {
  Elem y = embed(x);
  if (n_->kind != FieldKind::Extension) return {y};
  std::vector<Elem> out;
  for (const Rep& r : std::get<ExtVec>(y.rep().v)) out.emplace_back(n_->base, r);
  return out;
}

std::uint64_t Field::size_u64() const {
  if (!n_->finite) fail(ErrorKind::DomainError, "field is infinite");
  if (!n_->order.fits_ulong_p()) fail(ErrorKind::EnumerationBudgetExceeded, "field too large");
  return n_->order.get_ui();
}

Elem Field::element_at(std::uint64_t idx) const {
  if (n_->kind == FieldKind::Prime) return Elem(n_, Rep{idx % n_->p});
  if (n_->kind != FieldKind::Extension || !n_->finite)
    fail(ErrorKind::DomainError, "element enumeration needs a finite field");
  Field b = base();
  std::uint64_t q = b.size_u64();
  ExtVec v;
  for (unsigned i = 0; i < n_->degree; ++i) {
    v.push_back(b.element_at(idx % q).rep());
    idx /= q;
  }
  return Elem(n_, Rep{v});
}

std::uint64_t Field::index_of(const Elem& x) const {
  Elem y = embed(x);
  if (n_->kind == FieldKind::Prime) return std::get<std::uint64_t>(y.rep().v);
  if (n_->kind != FieldKind::Extension || !n_->finite)
    fail(ErrorKind::DomainError, "element enumeration needs a finite field");
  Field b = base();
  std::uint64_t q = b.size_u64(), idx = 0;
  const auto& v = std::get<ExtVec>(y.rep().v);
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + b.index_of(Elem(n_->base, v[i]));
  return idx;
}

Elem Field::random(std::mt19937_64& rng) const {
  switch (n_->kind) {
    case FieldKind::Rationals: {
      std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      return Elem(n_, Rep{q});
    }
    case FieldKind::Prime: {
      std::uniform_int_distribution<std::uint64_t> d(0, n_->p - 1);
      return Elem(n_, Rep{d(rng)});
    }
    case FieldKind::Function: {
      std::uniform_int_distribution<std::uint64_t> d(0, n_->p - 1);
      std::uniform_int_distribution<int> deg(0, 2);
      fp::Vec num(deg(rng) + 1), den(std::uniform_int_distribution<int>(0, 1)(rng) + 1);
      for (auto& c : num) c = d(rng);
      for (auto& c : den) c = d(rng);
      den.back() = 1;
      fp::trim(num);
      return Elem(n_, Rep{detail::normalize(num, den, n_->p)});
    }
    case FieldKind::Extension: {
      Field b = base();
      ExtVec v;
      for (unsigned i = 0; i < n_->degree; ++i) v.push_back(b.random(rng).rep());
      return Elem(n_, Rep{v});
    }
  }
  return zero();
}

bool Field::operator==(const Field& o) const { return same_field(n_, o.n_); }

// ---------------------------------------------------------------- Elem

void Elem::check_same(const Elem& o) const {
  if (!f_ || !o.f_) fail(ErrorKind::DomainError, "uninitialized field element");
  if (f_ != o.f_ && f_->descriptor != o.f_->descriptor)
    fail(ErrorKind::DomainError, "elements of different fields: " + f_->descriptor + " vs " + o.f_->descriptor);
}

bool Elem::is_one() const { return f_->eq(r_, f_->one()); }

Elem& Elem::operator+=(const Elem& o) {
  check_same(o);
  r_ = f_->add(r_, o.r_);
  return *this;
}
Elem& Elem::operator-=(const Elem& o) {
  check_same(o);
  r_ = f_->sub(r_, o.r_);
  return *this;
}
Elem& Elem::operator*=(const Elem& o) {
  check_same(o);
  r_ = f_->mul(r_, o.r_);
  return *this;
}
Elem& Elem::operator/=(const Elem& o) {
  check_same(o);
  r_ = f_->mul(r_, f_->inv(o.r_));
  return *this;
}

Elem Elem::pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }

Elem Elem::pow(const mpz_class& e0) const {
  mpz_class e = e0;
  Rep base = r_;
  if (e < 0) {
    base = f_->inv(r_);
    e = -e;
  }
  Rep r = f_->one();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = f_->mul(r, base);
    e >>= 1;
    if (e > 0) base = f_->mul(base, base);
  }
  return Elem(f_, r);
}

bool Elem::operator==(const Elem& o) const {
  check_same(o);
  return f_->eq(r_, o.r_);
}

int Elem::compare(const Elem& o) const {
  check_same(o);
  return f_->cmp(r_, o.r_);
}

const mpq_class& Elem::rational() const {
  if (f_->kind != FieldKind::Rationals) fail(ErrorKind::DomainError, "not a rational number");
  return std::get<mpq_class>(r_.v);
}

std::uint64_t Elem::residue() const {
  if (f_->kind != FieldKind::Prime) fail(ErrorKind::DomainError, "not a prime-field element");
  return std::get<std::uint64_t>(r_.v);
}

const detail::RatFun& Elem::ratfun() const {
  if (f_->kind != FieldKind::Function) fail(ErrorKind::DomainError, "not a rational function");
  return std::get<detail::RatFun>(r_.v);
}

std::ostream& operator<<(std::ostream& os, const Elem& x) { return os << x.str(); }

}  // namespace ccc
