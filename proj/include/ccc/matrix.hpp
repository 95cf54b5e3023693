#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccc/field.hpp"
#include "ccc/poly.hpp"

namespace ccc {

using Vec = std::vector<Elem>;

// Dense row-major matrix over a Field.
class Matrix {
 public:
  explicit Matrix(Field f = Field(), std::size_t rows = 0, std::size_t cols = 0);
  Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<Vec>& rows);
  static Matrix from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t height);
  static Matrix diagonal(const Field& f, const Vec& d);
  static Matrix companion(const Poly& monic);
  static Matrix block_diag(const std::vector<Matrix>& blocks);
  static Matrix parse(const Field& f, const std::vector<std::vector<std::string>>& rows);

  const Field& field() const { return f_; }
  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool is_square() const { return r_ == c_; }
  bool is_zero() const;
  bool is_identity() const;

  Elem& operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }
  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  const std::vector<Elem>& entries() const { return e_; }

  Matrix operator-() const;
  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(Matrix a, const Elem& c);
  Vec apply(const Vec& v) const;

  Matrix transpose() const;
  Matrix embed(const Field& ext) const;
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  int compare(const Matrix& o) const;

  std::string str() const;

 private:
  Field f_;
  std::size_t r_ = 0, c_ = 0;
  std::vector<Elem> e_;
};

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);
Elem det(const Matrix& m);
std::optional<Matrix> try_inverse(const Matrix& m);
Matrix inverse(const Matrix& m);
// Basis of {x : m x = 0}.
std::vector<Vec> nullspace(const Matrix& m);
// Some x with m x = b, if any.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
// Canonical (RREF) row basis of the span of the given vectors.
std::vector<Vec> span_basis(const Field& f, const std::vector<Vec>& vecs, std::size_t dim);
// Extends an independent family to a basis of f^dim with standard vectors.
std::vector<Vec> extend_to_basis(const Field& f, const std::vector<Vec>& vecs, std::size_t dim);
Matrix eval_poly(const Poly& p, const Matrix& m);
Matrix matrix_pow(const Matrix& m, unsigned e);

// Incremental echelon basis, used for spans, Krylov sequences and spinning.
class EchelonBasis {
 public:
  EchelonBasis(Field f, std::size_t dim) : f_(std::move(f)), dim_(dim) {}
  // Reduces v against the basis; returns the residue.
  Vec reduce(const Vec& v) const;
  // Same, also expressing v - residue in terms of the inserted vectors.
  Vec reduce_with_coeffs(const Vec& v, Vec& coeffs) const;
  bool contains(const Vec& v) const;
  // Inserts v if independent; returns whether it was new.
  bool insert(const Vec& v);
  std::size_t size() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& inserted() const { return originals_; }

 private:
  Field f_;
  std::size_t dim_;
  std::vector<Vec> rows_;           // echelon rows, normalized at pivot
  std::vector<std::size_t> piv_;
  std::vector<Vec> combos_;         // rows_[i] = sum combos_[i][j] * originals_[j]
  std::vector<Vec> originals_;
};

Vec zero_vec(const Field& f, std::size_t n);
bool is_zero_vec(const Vec& v);

}  // namespace ccc
