#pragma once

#include <functional>
#include <vector>

#include "dyb/scalar.hpp"

namespace dyb {

/// Dense matrix of scalars.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<Scalar>& d);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& s) const;
  std::vector<Scalar> operator*(const std::vector<Scalar>& v) const;
  Matrix& operator+=(const Matrix& o) { return *this = *this + o; }

  bool is_zero() const;
  bool is_identity() const;
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const;
  Matrix map(const std::function<Scalar(const Scalar&)>& f) const;
  int nonzero_count() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Scalar> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);
/// Commutator ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);
/// Inverse by Gauss-Jordan elimination; throws Degenerate when singular.
Matrix inverse(const Matrix& a);
/// Inverse of 1 + N with N nilpotent, as a finite Neumann series.
Matrix unipotent_inverse(const Matrix& a);
/// Unique solution of A x = b; throws Degenerate when inconsistent or underdetermined.
std::vector<Scalar> solve(const Matrix& a, const std::vector<Scalar>& b);
/// Some solution of A x = b with every free coordinate zero; throws Degenerate when inconsistent.
std::vector<Scalar> solve_particular(const Matrix& a, const std::vector<Scalar>& b);
/// Basis of the kernel as columns; each column has a 1 at its free coordinate.
/// pivots receives, for each column, the index of that free coordinate.
Matrix nullspace(const Matrix& a, std::vector<int>* free_coords = nullptr);
int rank(const Matrix& a);
Scalar determinant(const Matrix& a);

/// Reorders tensor factors: result factor k is input factor perm[k].
Matrix permute_factors(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& perm);
/// Flip operator P on U (x) V, mapping u (x) v to v (x) u.
Matrix flip(int du, int dv);

}  // namespace dyb
