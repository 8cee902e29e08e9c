#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dyb/fusion.hpp"

namespace dyb {

/// Element of gl_n (x) gl_n in the matrix-unit basis: key (p, q) stands for E_p (x) E_q with
/// p = a * n + b for E_ab.
using Tensor2 = std::map<std::pair<int, int>, Scalar>;
/// Element of gl_n^{(x) 3}.
using Tensor3 = std::map<std::tuple<int, int, int>, Scalar>;

/// One term x (x) d of the dynamical derivative sum over a basis of the dynamical Cartan.
/// x is the diagonal matrix diag; d differentiates Scalars along one coordinate mu:
/// d = d/dvar when rate is zero, and d = rate * var * d/dvar when var = exp(mu * rate) is an
/// exponential symbol.
struct DerivTerm {
  std::vector<mpq_class> diag;
  int var;
  Scalar rate;
  Scalar apply(const Scalar& x) const;
};

/// Classical dynamical r-matrix realized inside gl_n (x) gl_n.
struct ClassicalRMatrix {
  std::string family;
  RootDatum datum;
  int n = 0;
  /// Declared coupling constant epsilon in r + r^{21} = epsilon Omega.
  Scalar coupling;
  Tensor2 coeffs;
  /// Casimir of the algebra (gl_n or sl_n) in the matrix-unit basis.
  Tensor2 omega;
  /// Derivative terms sum_i x_i (x) d/dx^i over the dynamical Cartan.
  std::vector<DerivTerm> frame;

  /// Evaluation on V (x) W (classical modules of the same datum).
  Matrix evaluate(const WeightModule& V, const WeightModule& W) const;
};

Tensor2 flip(const Tensor2& t);
Tensor2 add(const Tensor2& a, const Tensor2& b, const Scalar& c = Scalar(1));
/// Casimir of the datum as a tensor in gl_n (x) gl_n.
Tensor2 casimir(const RootDatum& d);
/// Basis of the dynamical Cartan with its coordinates: l_i classically, the exponential
/// symbols w_i = exp(-eps lambda_i / 2) in the trigonometric case.
std::vector<DerivTerm> standard_frame(const RootDatum& d, bool trig, const Scalar& eps);
/// exp(c (alpha, lambda)) for integral 2c as a Laurent monomial in the w symbols.
Scalar w_exp(const RootDatum& d, const Weight& alpha, const mpq_class& c);

/// sum_{alpha > 0} (e_alpha (x) e_{-alpha} - e_{-alpha} (x) e_alpha) / (alpha, lambda).
ClassicalRMatrix basic_rational_r(const RootDatum& d);
/// (eps/2) Omega + sum_{alpha > 0} (eps/2) coth(eps (alpha, lambda) / 2) (e_alpha ^ e_{-alpha}),
/// coth written in the w symbols. eps must be nonzero.
ClassicalRMatrix basic_trig_r(const RootDatum& d, const Scalar& eps);
/// The basic rational r-matrix of the reductive subalgebra spanned by h and the roots +-alpha,
/// alpha in roots (positive roots given as 0-based (a, b), a < b). Throws InvalidSubalgebra
/// when the set is not closed under addition.
ClassicalRMatrix r_l(const RootDatum& d, const std::vector<std::pair<int, int>>& roots);
/// (eps/2) Omega + sum_{alpha} phi_alpha e_alpha (x) e_{-alpha} for X a subset of the simple
/// roots (0-based indices).
ClassicalRMatrix r_eps_X(const RootDatum& d, const std::vector<int>& X, const Scalar& eps);

/// Generalized Belavin-Drinfeld triple (Gamma_1, Gamma_2, tau) over a commutative l in h.
struct BDTriple {
  /// Simple root indices of Gamma_1 and their images tau(alpha) in Gamma_2 (0-based).
  std::vector<int> gamma1, gamma2;
  /// Basis of l as diagonal vectors in epsilon coordinates.
  std::vector<std::vector<mpq_class>> l_basis;
};
/// Checks norm preservation and l-admissibility; throws InvalidTriple.
void check_triple(const RootDatum& d, const BDTriple& t);
/// 1/2 Omega + r_0 + sum K(lambda) e_alpha ^ f_alpha + 1/2 sum e_alpha ^ f_alpha with coupling 1.
/// The dynamical coordinates mu_j are those of lambda in the dual of l_basis, realized by
/// w_j = exp(-mu_j / 2). K along a tau-cycle is summed as a geometric series.
ClassicalRMatrix triple_r(const RootDatum& d, const BDTriple& t);
/// The r_0 in Lambda^2 h_0 used above, as an n x n antisymmetric matrix M with
/// r_0 = sum M_ab E_aa (x) E_bb.
Matrix triple_r0(const RootDatum& d, const BDTriple& t);

/// Maximal runs of consecutive integers in X (1-based labels).
std::vector<std::vector<int>> intervals(std::vector<int> X);

/// R_X on C^n (x) C^n at q = 1 (classical frame, X 1-based).
DynOp quantum_R_X(int n, const std::vector<int>& X);
/// R^eps_X with q = e^eps realized as s^2, q^{lambda_a} = t_a.
DynOp quantum_R_eps_X(int n, const std::vector<int>& X);

struct ClosedForms {
  DynOp J, R;
};
/// Closed forms of J_VV and R_VV for the vector representation of gl_n.
ClosedForms gl_closed_forms(int n, Mode mode);

/// All catalog names accepted by the command line.
const std::vector<std::string>& catalog_names();

}  // namespace dyb
