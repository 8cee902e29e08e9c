#include "dyb/linalg.hpp"

#include "dyb/error.hpp"

namespace dyb {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::diagonal(const std::vector<Scalar>& d) {
  int n = static_cast<int>(d.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(r_ == o.r_ && c_ == o.c_, ErrorKind::ShapeMismatch, "matrix sum");
  Matrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) m.a_[k] += o.a_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(r_ == o.r_ && c_ == o.c_, ErrorKind::ShapeMismatch, "matrix difference");
  Matrix m = *this;
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) m.a_[k] -= o.a_[k];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(c_ == o.r_, ErrorKind::ShapeMismatch, "matrix product");
  Matrix m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Scalar& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (int j = 0; j < o.c_; ++j) {
        const Scalar& y = o(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix Matrix::operator*(const Scalar& s) const {
  Matrix m = *this;
  for (auto& x : m.a_)
    if (!x.is_zero()) x *= s;
  return m;
}

std::vector<Scalar> Matrix::operator*(const std::vector<Scalar>& v) const {
  require(c_ == static_cast<int>(v.size()), ErrorKind::ShapeMismatch, "matrix-vector product");
  std::vector<Scalar> out(r_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k)
      if (!(*this)(i, k).is_zero() && !v[k].is_zero()) out[i] += (*this)(i, k) * v[k];
  return out;
}

bool Matrix::is_zero() const {
  for (auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) {
      const Scalar& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::map(const std::function<Scalar(const Scalar&)>& f) const {
  Matrix m(r_, c_);
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!a_[k].is_zero()) m.a_[k] = f(a_[k]);
  return m;
}

int Matrix::nonzero_count() const {
  int n = 0;
  for (auto& x : a_)
    if (!x.is_zero()) ++n;
  return n;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          if (!b(k, l).is_zero()) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

namespace {

std::size_t weight_of(const Scalar& x) { return x.num().terms().size() + x.den().terms().size(); }

// Row reduction to reduced echelon form; returns pivot columns.
std::vector<int> rref(Matrix& m, int ncols) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < ncols && row < m.rows(); ++col) {
    int best = -1;
    std::size_t bw = 0;
    for (int i = row; i < m.rows(); ++i) {
      if (m(i, col).is_zero()) continue;
      std::size_t w = weight_of(m(i, col));
      if (best < 0 || w < bw) {
        best = i;
        bw = w;
      }
    }
    if (best < 0) continue;
    if (best != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(best, j));
    Scalar inv = m(row, col).inverse();
    for (int j = 0; j < m.cols(); ++j)
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      Scalar f = m(i, col);
      for (int j = 0; j < m.cols(); ++j)
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Matrix inverse(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorKind::ShapeMismatch, "inverse of a non-square matrix");
  int n = a.rows();
  Matrix m(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n + i) = Scalar(1);
  }
  auto piv = rref(m, n);
  if (static_cast<int>(piv.size()) < n) fail(ErrorKind::Degenerate, "singular matrix");
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(i, n + j);
  return out;
}

Matrix unipotent_inverse(const Matrix& a) {
  int n = a.rows();
  Matrix nil = a - Matrix::identity(n);
  Matrix term = Matrix::identity(n), sum = Matrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    term = term * nil * Scalar(-1);
    if (term.is_zero()) return sum;
    sum += term;
  }
  fail(ErrorKind::Degenerate, "operator is not unipotent");
}

std::vector<Scalar> solve(const Matrix& a, const std::vector<Scalar>& b) {
  int n = a.cols();
  Matrix m(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  auto piv = rref(m, n);
  for (int i = static_cast<int>(piv.size()); i < m.rows(); ++i)
    if (!m(i, n).is_zero()) fail(ErrorKind::Degenerate, "inconsistent linear system");
  if (static_cast<int>(piv.size()) < n) fail(ErrorKind::Degenerate, "underdetermined linear system");
  std::vector<Scalar> x(n);
  for (int i = 0; i < n; ++i) x[piv[i]] = m(i, n);
  return x;
}

std::vector<Scalar> solve_particular(const Matrix& a, const std::vector<Scalar>& b) {
  int n = a.cols();
  Matrix m(a.rows(), n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  auto piv = rref(m, n);
  for (int i = static_cast<int>(piv.size()); i < m.rows(); ++i)
    if (!m(i, n).is_zero()) fail(ErrorKind::Degenerate, "inconsistent linear system");
  std::vector<Scalar> x(n);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m(static_cast<int>(i), n);
  return x;
}

Matrix nullspace(const Matrix& a, std::vector<int>* free_coords) {
  Matrix m = a;
  auto piv = rref(m, a.cols());
  std::vector<bool> is_piv(a.cols(), false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix basis(a.cols(), static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    int f = free[k];
    basis(f, static_cast<int>(k)) = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!m(static_cast<int>(r), f).is_zero()) basis(piv[r], static_cast<int>(k)) = -m(static_cast<int>(r), f);
  }
  if (free_coords) *free_coords = free;
  return basis;
}

Scalar determinant(const Matrix& a) {
  require(a.rows() == a.cols(), ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  Matrix m = a;
  int n = a.rows();
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!m(i, col).is_zero() && (piv < 0 || weight_of(m(i, col)) < weight_of(m(piv, col)))) piv = i;
    if (piv < 0) return Scalar();
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m(col, j), m(piv, j));
      det = -det;
    }
    det *= m(col, col);
    Scalar inv = m(col, col).inverse();
    for (int i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      Scalar f = m(i, col) * inv;
      for (int j = col; j < n; ++j)
        if (!m(col, j).is_zero()) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

int rank(const Matrix& a) {
  Matrix m = a;
  return static_cast<int>(rref(m, a.cols()).size());
}

Matrix permute_factors(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm) {
  int k = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  require(m.rows() == total && m.cols() == total, ErrorKind::ShapeMismatch, "permute_factors");
  std::vector<int> pdims(k);
  for (int i = 0; i < k; ++i) pdims[i] = dims[perm[i]];
  // map[output index] = input index
  std::vector<int> map(total);
  std::vector<int> digits(k);
  for (int idx = 0; idx < total; ++idx) {
    int rem = idx;
    for (int i = k - 1; i >= 0; --i) {
      digits[i] = rem % pdims[i];
      rem /= pdims[i];
    }
    std::vector<int> in(k);
    for (int i = 0; i < k; ++i) in[perm[i]] = digits[i];
    int lin = 0;
    for (int i = 0; i < k; ++i) lin = lin * dims[i] + in[i];
    map[idx] = lin;
  }
  Matrix out(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

Matrix flip(int du, int dv) {
  Matrix p(dv * du, du * dv);
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < dv; ++j) p(j * du + i, i * dv + j) = Scalar(1);
  return p;
}

}  // namespace dyb
