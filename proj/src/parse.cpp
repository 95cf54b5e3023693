// Literal and descriptor parsing.

#include <cctype>
#include <functional>

#include "ccc/factor.hpp"
#include "ccc/field.hpp"
#include "ccc/poly.hpp"

namespace ccc {
namespace {

struct Token {
  enum Kind { Num, Ident, Op, End } kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Num, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else if (s.substr(i, 3) == "\xE2\x88\x92") {  // U+2212 minus sign
      out.push_back({Token::Op, "-"});
      i += 3;
    } else if (std::string_view("+-*/^()").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Op, std::string(1, static_cast<char>(c))});
      ++i;
    } else {
      fail(ErrorKind::SyntaxError, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

// Recursive-descent evaluator over any ring-like value type.
template <class V>
class Evaluator {
 public:
  struct Ops {
    std::function<V(const mpz_class&)> number;
    std::function<V(const std::string&)> ident;
    std::function<V(const V&, const V&)> div;
    std::function<V(const V&, long)> pow;
  };

  Evaluator(std::string_view text, Ops ops) : toks_(tokenize(text)), ops_(std::move(ops)) {}

  V run() {
    if (toks_.front().kind == Token::End) fail(ErrorKind::SyntaxError, "empty literal");
    V v = expr();
    if (peek().kind != Token::End) fail(ErrorKind::SyntaxError, "trailing input near '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(const char* op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }

  V expr() {
    bool negate = false;
    if (accept("-"))
      negate = true;
    else
      accept("+");
    V v = term();
    if (negate) v = -v;
    while (true) {
      if (accept("+"))
        v = v + term();
      else if (accept("-"))
        v = v - term();
      else
        return v;
    }
  }

  V term() {
    V v = factor();
    while (true) {
      if (accept("*")) {
        v = v * factor();
      } else if (accept("/")) {
        v = ops_.div(v, factor());
      } else if (peek().kind == Token::Ident || peek().kind == Token::Num ||
                 (peek().kind == Token::Op && peek().text == "(")) {
        v = v * factor();  // juxtaposition
      } else {
        return v;
      }
    }
  }

  V factor() {
    V b = atom();
    if (accept("^")) {
      bool neg = accept("-");
      if (peek().kind != Token::Num) fail(ErrorKind::SyntaxError, "exponent must be an integer");
      long e = std::stol(toks_[pos_++].text);
      b = ops_.pow(b, neg ? -e : e);
    }
    return b;
  }

  V atom() {
    const Token& t = peek();
    if (t.kind == Token::Num) {
      ++pos_;
      return ops_.number(mpz_class(t.text));
    }
    if (t.kind == Token::Ident) {
      ++pos_;
      return ops_.ident(t.text);
    }
    if (accept("(")) {
      V v = expr();
      if (!accept(")")) fail(ErrorKind::SyntaxError, "missing ')'");
      return v;
    }
    if (accept("-")) return -factor();
    fail(ErrorKind::SyntaxError, t.kind == Token::End ? "unexpected end of literal" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Ops ops_;
};

Elem lookup_generator(const Field& f, const std::string& name) {
  for (Field g = f;; g = g.base()) {
    if ((g.kind() == FieldKind::Function || g.kind() == FieldKind::Extension) && g.generator_name() == name)
      return f.embed(g.gen());
    if (!g.is_extension()) break;
  }
  fail(ErrorKind::SyntaxError, "unknown symbol '" + name + "' for field " + f.descriptor());
}

std::string strip(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

Elem Field::parse_element(std::string_view literal) const {
  Field f = *this;
  Evaluator<Elem>::Ops ops{
      [f](const mpz_class& n) { return f.from_mpz(n); },
      [f](const std::string& s) { return lookup_generator(f, s); },
      [](const Elem& a, const Elem& b) { return a / b; },
      [](const Elem& a, long e) { return a.pow(static_cast<long long>(e)); },
  };
  return Evaluator<Elem>(literal, ops).run();
}

Poly parse_poly(const Field& f, std::string_view text, const std::string& var) {
  Evaluator<Poly>::Ops ops{
      [f](const mpz_class& n) { return Poly::constant(f.from_mpz(n)); },
      [f, var](const std::string& s) {
        if (s == var) return Poly::x(f);
        return Poly::constant(lookup_generator(f, s));
      },
      [](const Poly& a, const Poly& b) {
        if (b.degree() != 0) fail(ErrorKind::SyntaxError, "polynomial literal divides by a non-constant");
        return a * b.lc().inverse();
      },
      [](const Poly& a, long e) {
        if (e < 0) {
          if (a.degree() != 0) fail(ErrorKind::SyntaxError, "negative power of a non-constant");
          return Poly::constant(a.lc().pow(static_cast<long long>(e)));
        }
        return a.pow(static_cast<unsigned>(e));
      },
  };
  return Evaluator<Poly>(text, ops).run();
}

Field Field::parse(std::string_view text) {
  std::string s = strip(text);
  if (s == "Q" || s == "QQ") return rationals();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(3, s.size() - 4);
    std::size_t caret = inner.find('^');
    try {
      if (caret != std::string::npos) {
        unsigned long p = std::stoul(inner.substr(0, caret));
        unsigned long e = std::stoul(inner.substr(caret + 1));
        return finite(p, static_cast<unsigned>(e));
      }
      unsigned long q = std::stoul(inner);
      // Accept GF(q) for a prime power q.
      for (unsigned long p = 2; p <= q; ++p) {
        if (q % p) continue;
        unsigned e = 0;
        unsigned long r = q;
        while (r % p == 0) {
          r /= p;
          ++e;
        }
        if (r != 1) fail(ErrorKind::DomainError, "GF order must be a prime power");
        return finite(p, e);
      }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    fail(ErrorKind::SyntaxError, "malformed descriptor '" + s + "'");
  }
  if (s.rfind("Fp(", 0) == 0) {
    std::size_t close = s.find(')');
    if (close == std::string::npos || s.compare(close, 4, "):p=") != 0)
      fail(ErrorKind::SyntaxError, "malformed descriptor '" + s + "'");
    std::string var = s.substr(3, close - 3);
    try {
      unsigned long p = std::stoul(s.substr(close + 4));
      return function_field(p, var);
    } catch (const std::logic_error&) {
      fail(ErrorKind::SyntaxError, "malformed descriptor '" + s + "'");
    }
  }
  if (s.rfind("ext(", 0) == 0 && s.back() == ')') {
    std::string inner = s.substr(4, s.size() - 5);
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ';' && depth == 0) {
        parts.push_back(inner.substr(last, i - last));
        last = i + 1;
      }
    }
    parts.push_back(inner.substr(last));
    if (parts.size() != 3) fail(ErrorKind::SyntaxError, "ext(...) needs base;minpoly;generator");
    Field base = parse(parts[0]);
    std::string gen = strip(parts[2]);
    if (gen.empty()) fail(ErrorKind::SyntaxError, "empty generator name");
    // The minimal polynomial may be written in the generator or in X.
    Poly m(base);
    try {
      m = parse_poly(base, parts[1], gen);
    } catch (const Error&) {
      m = parse_poly(base, parts[1], "X");
    }
    return make_extension(base, m, gen);
  }
  fail(ErrorKind::SyntaxError, "unknown field descriptor '" + s + "'");
}

}  // namespace ccc
