#pragma once

// The G2 root system, Chevalley structure constants, commutator collection
// of unipotent words and cocharacter limits of such words.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccc/field.hpp"
#include "ccc/matrix.hpp"

namespace ccc::g2 {

// a*alpha + b*beta; alpha short, beta long.
struct Root {
  int a = 0, b = 0;
  Root operator+(Root o) const { return {a + o.a, b + o.b}; }
  Root operator-() const { return {-a, -b}; }
  bool operator==(const Root& o) const { return a == o.a && b == o.b; }
  bool operator!=(const Root& o) const { return !(*this == o); }
  bool operator<(const Root& o) const { return a != o.a ? a < o.a : b < o.b; }
  int height() const { return a + b; }
  bool positive() const { return a >= 0 && b >= 0; }
  std::string str() const;  // "3a+2b", "-b"
};

// x * alpha-check + y * beta-check.
struct Coroot {
  long long x = 0, y = 0;
  Coroot operator-() const { return {-x, -y}; }
  Coroot operator+(Coroot o) const { return {x + o.x, y + o.y}; }
  bool operator==(const Coroot& o) const { return x == o.x && y == o.y; }
  std::string str() const;
};

Root parse_root(const std::string& text);
// "3a+2b" for the coroot of that root, a leading '-' negates, or "x,y".
Coroot parse_coroot(const std::string& text);

const std::vector<Root>& positive_roots();  // height order: a, b, a+b, 2a+b, 3a+b, 3a+2b
const std::vector<Root>& all_roots();       // positive roots, then their negatives
bool is_root(Root r);
int inner(Root r, Root s);  // (alpha, alpha) = 2, (beta, beta) = 6
Coroot coroot(Root r);
long long pairing(Root r, Coroot c);
inline Coroot rho_check() { return {3, 5}; }

// Signs on the extraspecial pairs (a, b), (a, a+b), (a, 2a+b), (b, 3a+b).
struct Convention {
  std::array<int, 4> signs{1, 1, 1, 1};
  std::string str() const;
};

class RootSystem {
 public:
  // Generates all N_{r,s} from the convention; see generate_structure_constants.
  explicit RootSystem(Convention c = {});
  const Convention& convention() const { return conv_; }
  int N(Root r, Root s) const;  // 0 when r + s is not a root
  // Sign chosen for the remaining positive pair (a+b, 2a+b).
  int free_sign() const { return free_sign_; }
  // Bracket of basis elements of the 14-dimensional Lie algebra: indices
  // 0, 1 are alpha-check, beta-check; 2 + i is e_{all_roots()[i]}.
  std::vector<long long> bracket(std::size_t i, std::size_t j) const;
  // Exhaustive Jacobi identity over all basis triples.
  bool jacobi_holds() const;

 private:
  bool close_and_check(std::map<std::pair<Root, Root>, int>& table) const;
  Convention conv_;
  int free_sign_ = 0;
  std::map<std::pair<Root, Root>, int> n_;
};

RootSystem generate_structure_constants(const Convention& c);

// Laurent polynomial in the limit parameter: degree -> coefficient.
using Laurent = std::map<int, Elem>;

struct Letter {
  Root root;
  Laurent arg;
};

class Word {
 public:
  explicit Word(Field k) : k_(std::move(k)) {}
  Word(Field k, std::vector<Letter> letters) : k_(std::move(k)), letters_(std::move(letters)) {}
  static Word parse(const Field& k, const std::string& text);  // "u(3a+b;1)*u(b;-1)", "1" for empty
  static Word letter(Root r, const Elem& c);

  const Field& field() const { return k_; }
  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  Word inverse() const;
  Word operator*(const Word& o) const;
  // Constant arguments only.
  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }
  std::string str() const;

 private:
  Field k_;
  std::vector<Letter> letters_;
};

enum class Strategy { Leftmost, Rightmost };

// Normal form: one letter per root in the given order (height order by default).
Word collect(const Word& w, const RootSystem& rs, const std::vector<Root>& order = positive_roots(),
             Strategy strategy = Strategy::Leftmost);
// lambda(s) w lambda(s)^{-1}: u_r(c) becomes u_r(s^<r, lambda> c).
Word torus_conjugate(const Word& w, Coroot lambda);
// Specializes every Laurent argument at a given nonzero value.
Word specialize(const Word& w, const Elem& s);
std::optional<Word> word_limit(const Word& w, Coroot lambda, const RootSystem& rs);

// Adjoint representation: Ad(u_r(c)) = exp(c ad e_r), reduced into k.
class Adjoint {
 public:
  Adjoint(const RootSystem& rs, Field k);
  Matrix root_element(Root r, const Elem& c) const;
  Matrix evaluate(const Word& w) const;  // constant arguments only
  // Peels factors in height order; the matrix must lie in U.
  Word decompose(const Matrix& u) const;

 private:
  Field k_;
  std::map<Root, std::vector<Matrix>> powers_;  // (ad e_r)^i / i!
};

struct FigureEdge {
  std::string from, to;
  Coroot cocharacter;
  std::optional<Word> conjugator;  // applied as g w g^{-1} before the limit
  Word source, result;
  std::string note;
};

std::vector<std::string> figure_classes(unsigned p);
Word class_representative(const std::string& label, const Field& k);
// Replays each positive edge; raises ReplayMismatch on any disagreement.
std::vector<FigureEdge> figure_edges(unsigned p, const RootSystem& rs);
std::string figure_dot(unsigned p, const std::vector<FigureEdge>& edges);

}  // namespace ccc::g2
