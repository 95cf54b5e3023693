#include "ccc/matrix.hpp"

#include <sstream>

namespace ccc {

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), r_(rows), c_(cols), e_(rows * cols, f_.zero()) {}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : f_(std::move(f)), r_(rows), c_(cols), e_(std::move(entries)) {
  if (e_.size() != r_ * c_) fail(ErrorKind::DimensionMismatch, "matrix entry count mismatch");
  for (auto& x : e_) x = f_.embed(x);
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<Vec>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  std::vector<Elem> e;
  for (const auto& r : rows) {
    if (r.size() != nc) fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
    e.insert(e.end(), r.begin(), r.end());
  }
  return Matrix(f, rows.size(), nc, std::move(e));
}

Matrix Matrix::from_columns(const Field& f, const std::vector<Vec>& cols, std::size_t height) {
  Matrix m(f, height, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != height) fail(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t i = 0; i < height; ++i) m(i, j) = f.embed(cols[j][i]);
  }
  return m;
}

Matrix Matrix::diagonal(const Field& f, const Vec& d) {
  Matrix m(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = f.embed(d[i]);
  return m;
}

Matrix Matrix::companion(const Poly& p0) {
  if (p0.degree() < 1) fail(ErrorKind::DomainError, "companion matrix needs degree >= 1");
  Poly p = p0.monic();
  std::size_t n = static_cast<std::size_t>(p.degree());
  const Field& f = p.field();
  Matrix m(f, n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = f.one();
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -p.coeff(i);
  return m;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return Matrix();
  const Field& f = blocks[0].field();
  std::size_t n = 0, m = 0;
  for (const auto& b : blocks) {
    n += b.rows();
    m += b.cols();
  }
  Matrix out(f, n, m);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = f.embed(b(i, j));
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Matrix Matrix::parse(const Field& f, const std::vector<std::vector<std::string>>& rows) {
  std::vector<Vec> r;
  for (const auto& row : rows) {
    Vec v;
    for (const auto& s : row) v.push_back(f.parse_element(s));
    r.push_back(std::move(v));
  }
  return from_rows(f, r);
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if ((i == j) ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

Vec Matrix::row(std::size_t i) const { return Vec(e_.begin() + i * c_, e_.begin() + (i + 1) * c_); }

Vec Matrix::col(std::size_t j) const {
  Vec v;
  for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
  return v;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.e_) x = -x;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (r_ != o.r_ || c_ != o.c_) fail(ErrorKind::DimensionMismatch, "matrix difference shape mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) fail(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix m(a.f_, a.r_, b.c_);
  for (std::size_t i = 0; i < a.r_; ++i)
    for (std::size_t k = 0; k < a.c_; ++k) {
      const Elem& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.c_; ++j) {
        const Elem& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix operator*(Matrix a, const Elem& c) {
  Elem e = a.f_.embed(c);
  for (auto& x : a.e_) x *= e;
  return a;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != c_) fail(ErrorKind::DimensionMismatch, "vector length mismatch");
  Vec out(r_, f_.zero());
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j)
      if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix m(f_, c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::embed(const Field& ext) const {
  Matrix m(ext, r_, c_);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = ext.embed(e_[i]);
  return m;
}

Matrix Matrix::submatrix(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

int Matrix::compare(const Matrix& o) const {
  for (std::size_t i = 0; i < e_.size() && i < o.e_.size(); ++i) {
    int c = e_[i].compare(o.e_[i]);
    if (c) return c;
  }
  return e_.size() < o.e_.size() ? -1 : (e_.size() > o.e_.size() ? 1 : 0);
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

Rref rref(const Matrix& m0) {
  Matrix m = m0;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Elem inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Elem k = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= k * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {m, piv};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

Elem det(const Matrix& m0) {
  if (!m0.is_square()) fail(ErrorKind::NonSquare, "determinant of a non-square matrix");
  Matrix m = m0;
  std::size_t n = m.rows();
  Elem d = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c).is_zero()) ++sel;
    if (sel == n) return m.field().zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Elem inv = m(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Elem k = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= k * m(c, j);
    }
  }
  return d;
}

std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) fail(ErrorKind::NonSquare, "inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  Rref r = rref(aug);
  if (r.pivots.size() < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  return r.reduced.submatrix(0, n, n, n);
}

Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) fail(ErrorKind::DomainError, "matrix is singular");
  return *inv;
}

std::vector<Vec> nullspace(const Matrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : r.pivots) is_piv[c] = true;
  std::vector<Vec> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_piv[free]) continue;
    Vec v = zero_vec(m.field(), m.cols());
    v[free] = m.field().one();
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) fail(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vec x = zero_vec(m.field(), m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

std::vector<Vec> span_basis(const Field& f, const std::vector<Vec>& vecs, std::size_t dim) {
  if (vecs.empty()) return {};
  Rref r = rref(Matrix::from_rows(f, vecs));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < r.pivots.size(); ++i) out.push_back(r.reduced.row(i));
  (void)dim;
  return out;
}

std::vector<Vec> extend_to_basis(const Field& f, const std::vector<Vec>& vecs, std::size_t dim) {
  EchelonBasis eb(f, dim);
  std::vector<Vec> out;
  for (const auto& v : vecs)
    if (eb.insert(v)) out.push_back(v);
  for (std::size_t i = 0; i < dim && eb.size() < dim; ++i) {
    Vec e = zero_vec(f, dim);
    e[i] = f.one();
    if (eb.insert(e)) out.push_back(e);
  }
  return out;
}

Matrix eval_poly(const Poly& p, const Matrix& m) {
  const Field& f = m.field();
  Matrix r(f, m.rows(), m.cols());
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    r = r * m;
    Elem c = f.embed(p.coeffs()[i]);
    for (std::size_t k = 0; k < m.rows(); ++k) r(k, k) += c;
  }
  return r;
}

Matrix matrix_pow(const Matrix& m, unsigned e) {
  Matrix r = Matrix::identity(m.field(), m.rows()), b = m;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Vec EchelonBasis::reduce(const Vec& v0) const {
  Vec v = v0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Elem& c = v[piv_[i]];
    if (c.is_zero()) continue;
    Elem k = c;
    for (std::size_t j = piv_[i]; j < dim_; ++j)
      if (!rows_[i][j].is_zero()) v[j] -= k * rows_[i][j];
  }
  return v;
}

Vec EchelonBasis::reduce_with_coeffs(const Vec& v0, Vec& coeffs) const {
  Vec v = v0;
  coeffs = zero_vec(f_, originals_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (v[piv_[i]].is_zero()) continue;
    Elem k = v[piv_[i]];
    for (std::size_t j = piv_[i]; j < dim_; ++j)
      if (!rows_[i][j].is_zero()) v[j] -= k * rows_[i][j];
    for (std::size_t j = 0; j < combos_[i].size(); ++j)
      if (!combos_[i][j].is_zero()) coeffs[j] += k * combos_[i][j];
  }
  return v;
}

bool EchelonBasis::contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

bool EchelonBasis::insert(const Vec& v) {
  if (v.size() != dim_) fail(ErrorKind::DimensionMismatch, "vector length mismatch");
  Vec coeffs;
  Vec r = reduce_with_coeffs(v, coeffs);
  std::size_t p = 0;
  while (p < dim_ && r[p].is_zero()) ++p;
  if (p == dim_) return false;
  // r = v - sum coeffs * originals; normalize at the pivot.
  Elem inv = r[p].inverse();
  for (auto& x : r) x *= inv;
  Vec combo = zero_vec(f_, originals_.size() + 1);
  for (std::size_t j = 0; j < coeffs.size(); ++j) combo[j] = -coeffs[j] * inv;
  combo.back() = inv;
  originals_.push_back(v);
  for (auto& c : combos_) c.push_back(f_.zero());
  // Keep rows sorted by pivot for a stable reduction order.
  std::size_t pos = 0;
  while (pos < piv_.size() && piv_[pos] < p) ++pos;
  rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  piv_.insert(piv_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  combos_.insert(combos_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(combo));
  return true;
}

}  // namespace ccc
