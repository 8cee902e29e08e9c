#pragma once

#include <string>
#include <vector>

#include "dyb/catalog.hpp"

namespace dyb {

/// Outcome of an exact residual computation.
struct ResidualReport {
  std::string equation;
  std::string operands;
  /// Number of residual entries checked and the number that are nonzero.
  int entries = 0;
  int nonzero = 0;
  /// Largest total degree of a numerator or denominator among the residual's inputs.
  int max_degree = 0;
  bool zero = true;
  /// First nonzero entry when the residual does not vanish.
  std::string witness_index;
  Scalar witness;

  bool ok() const { return zero; }
  std::string summary() const;
};

/// Builds a report from a residual matrix; labels index rows and columns.
ResidualReport matrix_report(std::string equation, std::string operands, const Matrix& residual,
                             const std::vector<const Matrix*>& inputs = {});

/// R^12(l - h3) R^13(l) R^23(l - h1) - R^23(l) R^13(l - h2) R^12(l) on V (x) V (x) V.
ResidualReport qdybe_residual(const DynOp& R);
/// Left side of the classical dynamical Yang-Baxter equation as an element of g^{(x) 3}.
ResidualReport cdybe_residual(const ClassicalRMatrix& r);
Tensor3 cdybe_tensor(const ClassicalRMatrix& r);
/// Hecke condition for R on C^n (x) C^n: PR = 1 on V_a (x) V_a, and on each mixed block
/// (PR - 1)(PR + q) = 0 with trace 1 - q.
ResidualReport hecke_check(const DynOp& R, const Scalar& q);
/// r + r^{21} - eps Omega with eps the declared coupling of r.
ResidualReport unitarity_check(const ClassicalRMatrix& r);
/// J_{U(x)W,V}(l)(J_{UW}(l - h3) (x) 1) - J_{U,W(x)V}(l)(1 (x) J_{WV}(l)).
ResidualReport cocycle_residual(const WeightModule& U, const WeightModule& W, const WeightModule& V,
                                FusionMethod method = FusionMethod::Exchange);
/// R R^{21} - 1.
ResidualReport inverse_unitarity(const DynOp& R);

/// Gauge data. Kind 1: a 2-form (classical: C_ij with C_ji = -C_ij on the frame coordinates;
/// quantum: multiplicative phi_ab). Kind 2: a constant shift nu (for exponential frames,
/// the factors w_i -> scale_i w_i instead). Kind 3: a permutation sigma of {0..n-1}.
struct Gauge {
  int kind = 2;
  std::vector<std::vector<Scalar>> form;
  std::vector<mpq_class> nu;
  std::vector<Scalar> scale;
  std::vector<int> sigma;
};
/// Checks that the classical 2-form is closed; throws InvalidGauge otherwise.
void check_closed(const ClassicalRMatrix& r, const std::vector<std::vector<Scalar>>& c);
/// Checks phi_ab phi_ba = 1 and the multiplicative closedness identity; throws InvalidGauge.
void check_closed_multiplicative(const std::vector<std::vector<Scalar>>& phi, Mode mode);
ClassicalRMatrix gauge_classical(const ClassicalRMatrix& r, const Gauge& g);
DynOp gauge_quantum(const DynOp& R, const Gauge& g);

/// Which slots shift the dynamical argument of the i-th braid generator.
enum class BraidShift {
  Preceding,  // lambda - sum_{k < i} h^(k)
  Following,  // lambda - sum_{k > i+1} h^(k)
};
struct HeckeRep {
  std::vector<Matrix> generators;
  std::vector<ResidualReport> relations;
  bool ok() const;
};
/// Generators P_{i,i+1} R_{i,i+1}(shifted) on V^{(x) p} and their braid, locality and
/// quadratic (Rc - 1)(Rc + q) = 0 relations.
HeckeRep dynamical_hecke_rep(const DynOp& R, int p, const Scalar& q, BraidShift shift = BraidShift::Preceding);

/// Random weight-zero perturbation of R: one off-diagonal entry inside a weight block, or a
/// diagonal entry, receives an extra lambda-dependent term. Deterministic in seed.
DynOp perturb(const DynOp& R, unsigned seed);
ClassicalRMatrix perturb(const ClassicalRMatrix& r, unsigned seed);

}  // namespace dyb
