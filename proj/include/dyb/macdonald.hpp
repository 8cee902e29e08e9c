#pragma once

#include <map>
#include <string>
#include <vector>

#include "dyb/verify.hpp"

namespace dyb {

/// Finite sum of coefficient * T_nu with (T_nu f)(lambda) = f(lambda + nu). Coefficients are
/// dim x dim matrices over Scalars (1 x 1 for scalar operators).
class DiffOp {
 public:
  DiffOp() = default;
  DiffOp(ShiftFrame frame, int dim) : frame_(std::move(frame)), dim_(dim) {}
  static DiffOp identity(const ShiftFrame& frame, int dim = 1);
  static DiffOp scalar(const ShiftFrame& frame, const Scalar& c);

  const ShiftFrame& frame() const { return frame_; }
  int dim() const { return dim_; }
  const std::map<Weight, Matrix>& terms() const { return terms_; }

  void add(const Weight& nu, const Matrix& c);
  void add(const Weight& nu, const Scalar& c);
  /// Scalar coefficient of T_nu (zero when absent); requires dim 1.
  Scalar coeff(const Weight& nu) const;

  DiffOp operator*(const DiffOp& o) const;  // composition
  DiffOp operator+(const DiffOp& o) const;
  DiffOp operator-(const DiffOp& o) const;
  DiffOp operator*(const Scalar& c) const;
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }

  /// Application to a scalar function (dim 1).
  Scalar apply(const Scalar& f) const;
  /// phi o D o phi^{-1} for a scalar function phi.
  DiffOp conjugate(const Scalar& phi) const;
  /// Coefficients mapped entrywise and shifts mapped by a linear sign.
  DiffOp map(const std::function<Scalar(const Scalar&)>& f, int shift_sign = 1) const;

  std::string str() const;

 private:
  ShiftFrame frame_;
  int dim_ = 1;
  std::map<Weight, Matrix> terms_;
};

/// D^V_W = sum_nu Tr_{W[nu]}(R_{WV}(-lambda - rho)) T_nu acting on V[0]-valued functions.
/// For quantum sl_2 the central factor q^{c_W c_V / 2} of the gl_2-normalized R is removed.
DiffOp transfer_diffop(const WeightModule& V, const WeightModule& W, FusionMethod method = FusionMethod::Exchange);

/// Realization of x_i = q^{2 lambda_i} and q inside a shift frame.
struct MacdonaldFrame {
  ShiftFrame frame;
  std::vector<Scalar> x;
  Scalar q;
  /// Variables x1..xn and q; T_I multiplies x_i by q^2.
  static MacdonaldFrame polynomial(int n);
  /// Quantum gl_n frame: x_i = t_i^2, q = s^2.
  static MacdonaldFrame quantum(int n);
  /// Quantum sl_2 frame in the single coordinate lambda = lambda_1 - lambda_2: x_1/x_2 = t1^2.
  static MacdonaldFrame quantum_sl2();
};

/// M_r = sum_{|I| = r} prod_{i in I, j not in I} (t x_i - t^{-1} x_j)/(x_i - x_j) T_I.
DiffOp macdonald_operator(const MacdonaldFrame& f, int n, int r, const Scalar& t);
/// sum_{|I| = r} prod_{i in I} q^{2 mu_i} t^{n + 1 - 2i}, the eigenvalue of M_r on P_mu.
Scalar macdonald_eigenvalue(const MacdonaldFrame& f, const std::vector<int>& mu, int r, const Scalar& t);
/// Monic symmetric P_mu in x1..xn with parameters q, t (x-variable frame).
Scalar macdonald_polynomial(int n, const std::vector<int>& mu, const Scalar& t);
/// det(x_i^{mu_j + n - j}) / det(x_i^{n - j}).
Scalar schur_polynomial(int n, const std::vector<int>& mu);
/// Partitions of k with at most n parts.
std::vector<std::vector<int>> partitions(int k, int n);
/// Laurent monomials in x1..xn of total absolute degree at most d.
std::vector<Scalar> laurent_monomials(int n, int d);

/// Weyl denominator q^{-2(lambda, rho)} prod_{alpha > 0} (1 - q^{-2(lambda, alpha)}) in the sl_2 frame.
Scalar weyl_denominator_sl2();
/// prod_{alpha > 0} (q^{(lambda, alpha)} - q^{-(lambda, alpha)}) in the sl_2 frame.
Scalar symmetric_weyl_denominator_sl2();
/// gamma_m(q, lambda) = prod_{i=1}^m (q^{lambda} - q^{2i} q^{-lambda}) in the sl_2 frame.
Scalar gamma_m_sl2(int m);

/// Both sides of the transfer / Macdonald conjugation identity for n = 2, W = C^2,
/// V = S^{2m} C^2 and their difference. The conjugating function is the symmetric Weyl
/// denominator times gamma_m, or the asymmetric q^{-2(lambda, rho)} form on request.
struct ConjugationCheck {
  DiffOp lhs, rhs;
  ResidualReport report;
};
ConjugationCheck conjugation_check(int m, bool asymmetric_weyl_denominator = false);

/// Weighted trace functions for the 3-dimensional quantum sl_2 module.
/// Psi(lambda, mu) = q^{2(lambda, mu)} sum_k c_k(mu) z^k with z = q^{-2 lambda}; c_k is a
/// rational function of y = q^mu.
struct TraceSeries {
  int depth = 0;
  std::vector<Scalar> coeffs;
};
TraceSeries psi_series(int depth);
/// Q(lambda) on the zero weight space of the dual module, as a function of t1 = q^lambda.
Scalar q_factor();
/// Convention switches for the trace pipeline. The default uses the symmetric Weyl denominator
/// prod (q^{(lambda, alpha)} - q^{-(lambda, alpha)}) and includes Q^{-1}.
struct TraceConventions {
  /// Use q^{-2(lambda, rho)} prod (1 - q^{-2(lambda, alpha)}) instead.
  bool asymmetric_weyl_denominator = false;
  bool with_q = true;
};
/// Residual of D^{lambda, V}_W F_V = chi_W(q^{-2 mu}) F_V through z-order `order` for W = C^2 or
/// S^2 C^2 (w_dim 2 or 3); throws Precondition when the required trace depth exceeds 6.
ResidualReport mr_residual(int order, int w_dim = 2, TraceConventions conv = {});
/// Dual equations in the mu variable.
ResidualReport dual_mr_residual(int order, int w_dim = 2, TraceConventions conv = {});
/// F_V(lambda, mu) against F_{V*}(mu, lambda) through bi-order `order`.
ResidualReport symmetry_check(int order, TraceConventions conv = {});

}  // namespace dyb
