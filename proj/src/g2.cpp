#include "ccc/g2.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "ccc/error.hpp"

namespace ccc::g2 {

// ---------------------------------------------------------------- roots

std::string Root::str() const {
  if (a == 0 && b == 0) return "0";
  std::string out;
  auto term = [&](int c, const char* name) {
    if (c == 0) return;
    if (c < 0) out += "-";
    else if (!out.empty()) out += "+";
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += name;
  };
  term(a, "a");
  term(b, "b");
  return out;
}

std::string Coroot::str() const {
  std::ostringstream os;
  os << "(" << x << "," << y << ")";
  return os.str();
}

Root parse_root(const std::string& text) {
  Root r;
  std::size_t i = 0;
  bool any = false;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      fail(ErrorKind::SyntaxError, "malformed root '" + text + "'");
    }
    int c = 0;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = c * 10 + (text[i++] - '0');
      digits = true;
    }
    if (!digits) c = 1;
    if (i >= text.size() || (text[i] != 'a' && text[i] != 'b'))
      fail(ErrorKind::SyntaxError, "malformed root '" + text + "'");
    (text[i] == 'a' ? r.a : r.b) += sign * c;
    ++i;
    any = true;
    skip();
  }
  if (!any) fail(ErrorKind::SyntaxError, "empty root");
  return r;
}

Coroot parse_coroot(const std::string& text0) {
  std::string text;
  for (char ch : text0)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (auto comma = text.find(','); comma != std::string::npos) {
    try {
      return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
    } catch (const std::exception&) {
      fail(ErrorKind::SyntaxError, "malformed coroot '" + text0 + "'");
    }
  }
  bool neg = false;
  if (!text.empty() && text[0] == '-') {
    neg = true;
    text.erase(0, 1);
  }
  if (!text.empty() && text.back() == 'v') text.pop_back();
  if (!text.empty() && text.back() == '^') text.pop_back();
  if (text == "rho") return neg ? -rho_check() : rho_check();
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = text.substr(1, text.size() - 2);
  Root r = parse_root(text);
  if (!is_root(r)) fail(ErrorKind::DomainError, "not a root: " + r.str());
  Coroot c = coroot(r);
  return neg ? -c : c;
}

const std::vector<Root>& positive_roots() {
  static const std::vector<Root> roots{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
  return roots;
}

const std::vector<Root>& all_roots() {
  static const std::vector<Root> roots = [] {
    std::vector<Root> out = positive_roots();
    for (const auto& r : positive_roots()) out.push_back(-r);
    return out;
  }();
  return roots;
}

bool is_root(Root r) {
  const auto& all = all_roots();
  return std::find(all.begin(), all.end(), r) != all.end();
}

int inner(Root r, Root s) { return 2 * r.a * s.a + 6 * r.b * s.b - 3 * (r.a * s.b + r.b * s.a); }

Coroot coroot(Root r) {
  if (!is_root(r)) fail(ErrorKind::DomainError, "not a root: " + r.str());
  // r-check = 2 r / (r, r), with alpha-check = alpha and beta-check = beta / 3.
  const long long len = inner(r, r);
  return {2LL * r.a / len, 6LL * r.b / len};
}

long long pairing(Root r, Coroot c) { return c.x * (2LL * r.a - 3LL * r.b) + c.y * (2LL * r.b - r.a); }

std::string Convention::str() const {
  std::string out;
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

// ---------------------------------------------------------------- constants

namespace {

std::size_t root_index(Root r) {
  const auto& all = all_roots();
  auto it = std::find(all.begin(), all.end(), r);
  if (it == all.end()) fail(ErrorKind::DomainError, "not a root: " + r.str());
  return static_cast<std::size_t>(it - all.begin());
}

// Largest p with s - p r a root, so |N_{r,s}| = p + 1.
int string_below(Root r, Root s) {
  int p = 0;
  Root cur = s + (-r);
  while (is_root(cur)) {
    ++p;
    cur = cur + (-r);
  }
  return p;
}

const std::array<std::pair<Root, Root>, 4> kExtraspecial{{{{1, 0}, {0, 1}}, {{1, 0}, {1, 1}}, {{1, 0}, {2, 1}}, {{0, 1}, {3, 1}}}};
const std::pair<Root, Root> kFreePair{{1, 1}, {2, 1}};

}  // namespace

bool RootSystem::close_and_check(std::map<std::pair<Root, Root>, int>& t) const {
  auto set = [&](Root r, Root s, long long v, bool& changed) {
    auto [it, inserted] = t.try_emplace({r, s}, static_cast<int>(v));
    if (inserted) changed = true;
    else if (it->second != v) return false;
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = t;
    for (const auto& [key, v] : snapshot) {
      const auto [r, s] = key;
      if (!set(s, r, -v, changed) || !set(-r, -s, -v, changed)) return false;
      const Root tt = -(r + s);
      const long long rr = inner(r, r), ss = inner(s, s), tn = inner(tt, tt);
      if ((v * rr) % tn != 0 || (v * ss) % tn != 0) return false;
      if (!set(s, tt, v * rr / tn, changed) || !set(tt, r, v * ss / tn, changed)) return false;
    }
  }
  for (const auto& r : all_roots())
    for (const auto& s : all_roots()) {
      if (!is_root(r + s)) continue;
      auto it = t.find({r, s});
      if (it == t.end() || std::abs(it->second) != string_below(r, s) + 1) return false;
    }
  return true;
}

RootSystem::RootSystem(Convention c) : conv_(c) {
  for (int s : c.signs)
    if (s != 1 && s != -1) fail(ErrorKind::InvalidConvention, "extraspecial signs must be +1 or -1");
  std::vector<int> passing;
  std::map<std::pair<Root, Root>, int> found;
  for (int free : {1, -1}) {
    std::map<std::pair<Root, Root>, int> t;
    for (std::size_t i = 0; i < kExtraspecial.size(); ++i) {
      const auto& [r, s] = kExtraspecial[i];
      t[{r, s}] = c.signs[i] * (string_below(r, s) + 1);
    }
    t[kFreePair] = free * (string_below(kFreePair.first, kFreePair.second) + 1);
    if (!close_and_check(t)) continue;
    n_ = t;
    if (jacobi_holds()) {
      passing.push_back(free);
      if (found.empty()) found = t;
    }
  }
  if (passing.size() != 1)
    fail(ErrorKind::InvalidConvention, "convention " + c.str() + " admits " + std::to_string(passing.size()) +
                                           " consistent completions");
  free_sign_ = passing.front();
  n_ = found;
}

RootSystem generate_structure_constants(const Convention& c) { return RootSystem(c); }

int RootSystem::N(Root r, Root s) const {
  auto it = n_.find({r, s});
  return it == n_.end() ? 0 : it->second;
}

std::vector<long long> RootSystem::bracket(std::size_t i, std::size_t j) const {
  std::vector<long long> out(14, 0);
  const auto& all = all_roots();
  const Coroot h[2] = {{1, 0}, {0, 1}};
  if (i < 2 && j < 2) return out;
  if (i < 2) {
    out[j] = pairing(all[j - 2], h[i]);
    return out;
  }
  if (j < 2) {
    out[i] = -pairing(all[i - 2], h[j]);
    return out;
  }
  const Root r = all[i - 2], s = all[j - 2];
  if (r + s == Root{}) {
    Coroot c = coroot(r);
    out[0] = c.x;
    out[1] = c.y;
  } else if (is_root(r + s)) {
    out[2 + root_index(r + s)] = N(r, s);
  }
  return out;
}

bool RootSystem::jacobi_holds() const {
  std::vector<std::vector<std::vector<long long>>> table(14, std::vector<std::vector<long long>>(14));
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = 0; j < 14; ++j) table[i][j] = bracket(i, j);
  auto br = [&](std::size_t x, const std::vector<long long>& v) {
    std::vector<long long> out(14, 0);
    for (std::size_t m = 0; m < 14; ++m)
      if (v[m])
        for (std::size_t q = 0; q < 14; ++q) out[q] += v[m] * table[x][m][q];
    return out;
  };
  for (std::size_t i = 0; i < 14; ++i)
    for (std::size_t j = 0; j < 14; ++j)
      for (std::size_t k = 0; k < 14; ++k) {
        auto a = br(i, table[j][k]), b = br(j, table[k][i]), c = br(k, table[i][j]);
        for (std::size_t q = 0; q < 14; ++q)
          if (a[q] + b[q] + c[q] != 0) return false;
      }
  return true;
}

// ---------------------------------------------------------------- Laurent

namespace {

void trim(Laurent& l) {
  for (auto it = l.begin(); it != l.end();) it = it->second.is_zero() ? l.erase(it) : std::next(it);
}

Laurent add(Laurent a, const Laurent& b) {
  for (const auto& [d, c] : b) {
    auto [it, ins] = a.try_emplace(d, c);
    if (!ins) it->second += c;
  }
  trim(a);
  return a;
}

Laurent neg(Laurent a) {
  for (auto& [d, c] : a) c = -c;
  return a;
}

Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) {
      auto [it, ins] = out.try_emplace(da + db, ca * cb);
      if (!ins) it->second += ca * cb;
    }
  trim(out);
  return out;
}

Laurent power(const Laurent& a, int e, const Field& k) {
  Laurent out{{0, k.one()}};
  for (int i = 0; i < e; ++i) out = mul(out, a);
  return out;
}

Laurent scale(Laurent a, long long n, const Field& k) {
  const Elem c = k.from_int(n);
  for (auto& [d, x] : a) x *= c;
  trim(a);
  return a;
}

std::string laurent_str(const Laurent& l) {
  if (l.empty()) return "0";
  if (l.size() == 1 && l.begin()->first == 0) return l.begin()->second.str();
  std::string out;
  for (const auto& [d, c] : l) {
    if (!out.empty()) out += "+";
    std::string cs = c.str();
    if (d == 0) {
      out += cs;
      continue;
    }
    out += (cs.find_first_of("+-*/ ") != std::string::npos ? "(" + cs + ")" : cs) + "*s^" + std::to_string(d);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- words

Word Word::letter(Root r, const Elem& c) {
  Laurent l;
  if (!c.is_zero()) l.emplace(0, c);
  return Word(c.field(), {{r, l}});
}

Word Word::parse(const Field& k, const std::string& text) {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip();
  if (text.substr(i) == "1" || i == text.size()) return Word(k);
  while (i < text.size()) {
    if (text.compare(i, 2, "u(") != 0) fail(ErrorKind::SyntaxError, "expected u( in word '" + text + "'");
    i += 2;
    int depth = 1;
    std::size_t start = i;
    while (i < text.size() && depth > 0) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      ++i;
    }
    if (depth != 0) fail(ErrorKind::SyntaxError, "unbalanced parentheses in word '" + text + "'");
    std::string body = text.substr(start, i - 1 - start);
    auto semi = body.find(';');
    if (semi == std::string::npos) fail(ErrorKind::SyntaxError, "letter needs root;argument: '" + body + "'");
    Root r = parse_root(body.substr(0, semi));
    if (!is_root(r)) fail(ErrorKind::DomainError, "not a root: " + r.str());
    Elem c = k.parse_element(body.substr(semi + 1));
    Laurent l;
    if (!c.is_zero()) l.emplace(0, c);
    out.push_back({r, l});
    skip();
  }
  return Word(k, out);
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l.arg = neg(l.arg);
  return Word(k_, out);
}

Word Word::operator*(const Word& o) const {
  if (o.k_ != k_) fail(ErrorKind::DimensionMismatch, "words over different fields");
  std::vector<Letter> out = letters_;
  out.insert(out.end(), o.letters_.begin(), o.letters_.end());
  return Word(k_, out);
}

bool Word::operator==(const Word& o) const {
  if (letters_.size() != o.letters_.size()) return false;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].root != o.letters_[i].root) return false;
    const auto &a = letters_[i].arg, &b = o.letters_[i].arg;
    if (a.size() != b.size()) return false;
    for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib)
      if (ia->first != ib->first || ia->second != ib->second) return false;
  }
  return true;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += "*";
    out += "u(" + l.root.str() + ";" + laurent_str(l.arg) + ")";
  }
  return out;
}

// ---------------------------------------------------------------- collection

namespace {

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long exact_div(long long a, long long b) {
  if (a % b != 0) fail(ErrorKind::InternalError, "non-integral commutator constant");
  return a / b;
}

// M_{r,s,i} = N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s} / i!
long long M(const RootSystem& rs, Root r, Root s, int i) {
  long long prod = 1;
  Root cur = s;
  for (int k = 0; k < i; ++k) {
    prod *= rs.N(r, cur);
    cur = cur + r;
  }
  return exact_div(prod, factorial(i));
}

long long commutator_constant(const RootSystem& rs, int i, int j, Root r, Root s) {
  if (j == 1) return M(rs, r, s, i);
  if (i == 1) return (j % 2 ? -1 : 1) * M(rs, s, r, j);
  if (i == 3 && j == 2) return exact_div(M(rs, r + s, r, 2), 3);
  if (i == 2 && j == 3) return exact_div(-2 * M(rs, s + r, s, 2), 3);
  fail(ErrorKind::InternalError, "no commutator constant for (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

void normalize(std::vector<Letter>& w) {
  std::vector<Letter> out;
  for (auto& l : w) {
    if (l.arg.empty()) continue;
    if (!out.empty() && out.back().root == l.root) {
      out.back().arg = add(out.back().arg, l.arg);
      if (out.back().arg.empty()) out.pop_back();
    } else {
      out.push_back(std::move(l));
    }
  }
  w = std::move(out);
}

}  // namespace

Word collect(const Word& w, const RootSystem& rs, const std::vector<Root>& order, Strategy strategy) {
  const Field& k = w.field();
  std::map<Root, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  for (const auto& r : positive_roots())
    if (!pos.count(r)) fail(ErrorKind::PreconditionFailed, "collection order must list every positive root");
  for (const auto& l : w.letters())
    if (!l.root.positive()) fail(ErrorKind::NonClosedSupport, "letter on negative root " + l.root.str());
  std::vector<Letter> cur = w.letters();
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 100000) fail(ErrorKind::InternalError, "collection did not terminate");
    normalize(cur);
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      if (pos[cur[i].root] > pos[cur[i + 1].root]) {
        at = i;
        if (strategy == Strategy::Leftmost) break;
      }
    if (!at) break;
    // u_d(s) u_g(c) = u_g(c) u_d(s) [u_d(s), u_g(c)]
    const Letter d = cur[*at], g = cur[*at + 1];
    std::vector<Letter> repl{g, d};
    if (is_root(d.root + g.root)) {
      std::vector<std::pair<int, int>> ij;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (is_root(Root{i * g.root.a + j * d.root.a, i * g.root.b + j * d.root.b})) ij.emplace_back(i, j);
      std::stable_sort(ij.begin(), ij.end(), [](auto x, auto y) { return x.first + x.second < y.first + y.second; });
      for (auto [i, j] : ij) {
        long long C = commutator_constant(rs, i, j, g.root, d.root);
        Laurent arg = scale(mul(power(neg(g.arg), i, k), power(d.arg, j, k)), C, k);
        repl.push_back({Root{i * g.root.a + j * d.root.a, i * g.root.b + j * d.root.b}, arg});
      }
    }
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(*at), cur.begin() + static_cast<std::ptrdiff_t>(*at + 2));
    cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(*at), repl.begin(), repl.end());
  }
  return Word(k, cur);
}

Word torus_conjugate(const Word& w, Coroot lambda) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    const int shift = static_cast<int>(pairing(l.root, lambda));
    Laurent moved;
    for (const auto& [d, c] : l.arg) moved.emplace(d + shift, c);
    out.push_back({l.root, moved});
  }
  return Word(w.field(), out);
}

Word specialize(const Word& w, const Elem& s) {
  std::vector<Letter> out;
  for (const auto& l : w.letters()) {
    Elem v = w.field().zero();
    for (const auto& [d, c] : l.arg) v += c * s.pow(static_cast<long long>(d));
    Laurent arg;
    if (!v.is_zero()) arg.emplace(0, v);
    out.push_back({l.root, arg});
  }
  return Word(w.field(), out);
}

std::optional<Word> word_limit(const Word& w, Coroot lambda, const RootSystem& rs) {
  Word moved = collect(torus_conjugate(w, lambda), rs);
  std::vector<Letter> out;
  for (const auto& l : moved.letters()) {
    if (l.arg.begin()->first < 0) return std::nullopt;
    auto it = l.arg.find(0);
    if (it != l.arg.end()) out.push_back({l.root, Laurent{{0, it->second}}});
  }
  return Word(w.field(), out);
}

// ---------------------------------------------------------------- adjoint

Adjoint::Adjoint(const RootSystem& rs, Field k) : k_(std::move(k)) {
  for (const auto& r : all_roots()) {
    const std::size_t ri = 2 + root_index(r);
    std::vector<std::vector<long long>> ad(14, std::vector<long long>(14, 0));
    for (std::size_t j = 0; j < 14; ++j) {
      auto col = rs.bracket(ri, j);
      for (std::size_t i = 0; i < 14; ++i) ad[i][j] = col[i];
    }
    std::vector<std::vector<long long>> p(14, std::vector<long long>(14, 0));
    for (std::size_t i = 0; i < 14; ++i) p[i][i] = 1;
    std::vector<Matrix> pw;
    for (int e = 0;; ++e) {
      bool zero = true;
      Matrix m(k_, 14, 14);
      const long long f = factorial(e);
      for (std::size_t i = 0; i < 14; ++i)
        for (std::size_t j = 0; j < 14; ++j)
          if (p[i][j]) {
            zero = false;
            m(i, j) = k_.from_int(exact_div(p[i][j], f));
          }
      if (zero) break;
      pw.push_back(m);
      std::vector<std::vector<long long>> next(14, std::vector<long long>(14, 0));
      for (std::size_t i = 0; i < 14; ++i)
        for (std::size_t m2 = 0; m2 < 14; ++m2)
          if (ad[i][m2])
            for (std::size_t j = 0; j < 14; ++j) next[i][j] += ad[i][m2] * p[m2][j];
      p = std::move(next);
    }
    powers_[r] = std::move(pw);
  }
}

Matrix Adjoint::root_element(Root r, const Elem& c) const {
  auto it = powers_.find(r);
  if (it == powers_.end()) fail(ErrorKind::DomainError, "not a root: " + r.str());
  Matrix out(k_, 14, 14);
  Elem ci = k_.one();
  for (const auto& m : it->second) {
    out += m * ci;
    ci *= c;
  }
  return out;
}

Matrix Adjoint::evaluate(const Word& w) const {
  Matrix out = Matrix::identity(k_, 14);
  for (const auto& l : w.letters()) {
    if (l.arg.size() > 1 || (!l.arg.empty() && l.arg.begin()->first != 0))
      fail(ErrorKind::PreconditionFailed, "only constant arguments can be evaluated");
    out = out * root_element(l.root, l.arg.empty() ? k_.zero() : l.arg.begin()->second);
  }
  return out;
}

Word Adjoint::decompose(const Matrix& u0) const {
  Matrix u = u0;
  std::vector<Letter> out;
  for (const auto& xi : positive_roots()) {
    const std::size_t col = 2 + root_index(-xi);
    const Coroot cv = coroot(xi);
    const Elem hx = u(0, col), hy = u(1, col), cx = k_.from_int(cv.x), cy = k_.from_int(cv.y);
    const Elem c = !cx.is_zero() ? hx / cx : hy / cy;
    if (hx != c * cx || hy != c * cy) fail(ErrorKind::InternalError, "matrix is not in the unipotent radical");
    if (c.is_zero()) continue;
    out.push_back({xi, Laurent{{0, c}}});
    u = root_element(xi, -c) * u;
  }
  if (!u.is_identity()) fail(ErrorKind::InternalError, "matrix is not in the unipotent radical");
  return Word(k_, out);
}

// ---------------------------------------------------------------- figure

std::vector<std::string> figure_classes(unsigned p) {
  if (p == 3) return {"G2", "G2(a1)", "(~A1)3", "~A1", "A1", "1"};
  return {"G2", "G2(a1)", "~A1", "A1", "1"};
}

Word class_representative(const std::string& label, const Field& k) {
  static const std::map<std::string, std::string> reps{
      {"G2", "u(a;1)*u(b;1)"}, {"G2(a1)", "u(b;1)*u(2a+b;1)"}, {"(~A1)3", "u(b;1)*u(a+b;1)"},
      {"~A1", "u(a;1)"},       {"A1", "u(b;1)"},                {"1", "1"}};
  auto it = reps.find(label);
  if (it == reps.end()) fail(ErrorKind::DomainError, "unknown class " + label);
  return Word::parse(k, it->second);
}

std::vector<FigureEdge> figure_edges(unsigned p, const RootSystem& rs) {
  const Field k = p == 0 ? Field::rationals() : Field::prime(p);
  struct Step {
    std::string from, to;
    Coroot lambda;
    std::string conj, expect, how;
  };
  const Root b{0, 1}, ab{1, 1}, a2b{2, 1}, a3b{3, 1}, a3b2{3, 2};
  std::vector<Step> steps{
      {"G2", "~A1", coroot(a3b2), "", "u(a;1)", "via (3a+2b)^v"},
      {"G2", "A1", coroot(a2b), "", "u(b;1)", "via (2a+b)^v"},
      {"G2(a1)", "A1", coroot(a2b), "", "u(b;1)", "via (2a+b)^v"},
      {"G2(a1)", "~A1", coroot(b), "", "u(2a+b;1)", "via b^v"},
  };
  if (p != 3) {
    steps.push_back({"~A1", "A1", -coroot(ab), "u(2a+b;1)", "", "conjugate by u(2a+b;1), then -(a+b)^v"});
  } else {
    steps.push_back({"(~A1)3", "A1", coroot(a2b), "", "u(b;1)", "via (2a+b)^v"});
    steps.push_back({"(~A1)3", "~A1", -coroot(a3b), "", "u(a+b;1)", "via -(3a+b)^v"});
  }
  for (const auto& c : figure_classes(p))
    if (c != "1") steps.push_back({c, "1", rho_check(), "", "1", "via rho^v"});

  std::vector<FigureEdge> out;
  for (const auto& s : steps) {
    FigureEdge e{s.from, s.to, s.lambda, std::nullopt, class_representative(s.from, k), Word(k), s.how};
    Word w = collect(e.source, rs);
    Word expect = s.expect.empty() ? Word(k) : Word::parse(k, s.expect);
    if (!s.conj.empty()) {
      Word g = Word::parse(k, s.conj);
      e.conjugator = g;
      w = collect(g * w * g.inverse(), rs);
      // Expect u_a(1) u_{3a+b}(+-3); the sign is convention-dependent.
      std::optional<int> sign;
      for (int sg : {1, -1})
        if (w == Word::parse(k, "u(a;1)*u(3a+b;" + std::to_string(3 * sg) + ")")) sign = sg;
      if (!sign) fail(ErrorKind::ReplayMismatch, s.from + " -> " + s.to + ": conjugate is " + w.str());
      expect = Word::parse(k, "u(3a+b;" + std::to_string(3 * *sign) + ")");
      e.note += *sign > 0 ? " (sign +3)" : " (sign -3)";
    }
    auto lim = word_limit(w, s.lambda, rs);
    if (!lim) fail(ErrorKind::ReplayMismatch, s.from + " -> " + s.to + ": no limit along " + s.lambda.str());
    if (*lim != expect)
      fail(ErrorKind::ReplayMismatch, s.from + " -> " + s.to + ": got " + lim->str() + ", expected " + expect.str());
    e.result = *lim;
    out.push_back(std::move(e));
  }
  return out;
}

std::string figure_dot(unsigned p, const std::vector<FigureEdge>& edges) {
  std::ostringstream os;
  os << "digraph g2_" << (p == 3 ? "p3" : "pnot3") << " {\n";
  const auto classes = figure_classes(p);
  for (const auto& c : classes) os << "  \"" << c << "\";\n";
  std::set<std::pair<std::string, std::string>> present;
  for (const auto& e : edges) {
    present.emplace(e.from, e.to);
    os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.note << "\"];\n";
  }
  for (const auto& x : classes)
    for (const auto& y : classes)
      if (x != y && !present.count({x, y}))
        os << "  // non-edge \"" << x << "\" -> \"" << y << "\": asserted absent, not machine-checked\n";
  os << "}\n";
  return os.str();
}

}  // namespace ccc::g2
