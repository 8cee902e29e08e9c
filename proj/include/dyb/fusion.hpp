#pragma once

#include <string>
#include <vector>

#include "dyb/module.hpp"
#include "dyb/verma.hpp"

namespace dyb {

/// Operator depending on the dynamical variable, acting on an ordered tensor product.
struct DynOp {
  std::vector<WeightModule> factors;
  Mode mode = Mode::Classical;
  Matrix m;

  std::vector<int> dims() const;
  int dim() const { return m.rows(); }
  /// Basis index of each factor for a tensor basis index.
  std::vector<int> digits(int idx) const;
  /// Total weight of a tensor basis element.
  Weight weight(int idx) const;
  bool is_weight_zero() const;
};

/// Operator on mods acting by op on the ordered slots, with its dynamical argument shifted to
/// lambda - sum_{s in shift_slots} h^{(s)}. The shift slots must be disjoint from the acted slots.
Matrix place(const Matrix& op, Mode mode, const std::vector<WeightModule>& mods, const std::vector<int>& slots,
             const std::vector<int>& shift_slots = {});

/// Dynamical argument of every entry replaced by lambda - mu.
Matrix shift_matrix(const Matrix& m, Mode mode, const Weight& mu);

enum class FusionMethod { Exchange, ABRR };

/// J_{WV}(lambda) on W (x) V from compositions of Verma intertwiners.
DynOp fusion_exchange(const WeightModule& W, const WeightModule& V);
/// J_{WV}(lambda) on W (x) V as the fixed point of the ABRR recursion.
DynOp abrr_fusion(const WeightModule& W, const WeightModule& V);
DynOp fusion(const WeightModule& W, const WeightModule& V, FusionMethod method);
/// R_{VW}(lambda) = J_{VW}^{-1} R^{21} J^{21}_{WV} (R = 1 classically).
DynOp exchange_matrix(const WeightModule& V, const WeightModule& W, FusionMethod method);

/// Quantum sl_2 operator R times q^{-c_1 c_2 / 2} (charges of the input vectors), removing the
/// central factor of the gl_2-normalized constant R-matrix. Classical operators are returned as is.
DynOp sl2_normalized(const DynOp& R);

/// Universal sl_2 fusion J = 1 + sum_n f^n (x) e^n phi_n. The coefficient phi_n acts first and
/// depends on lambda (l1 or t1) and on the input weights m_1, m_2 of the two factors, carried by
/// the symbols u1, u2 (u_i = m_i classically, u_i = q^{m_i} quantum).
struct UniversalTerm {
  int n;
  Scalar coeff;
};
/// Classical: the closed product formula. Quantum: the universal ABRR recursion.
std::vector<UniversalTerm> universal_sl2_fusion(int depth, Mode mode);
/// Coefficient with the weight symbols specialized.
Scalar universal_coeff(const UniversalTerm& t, Mode mode, const mpq_class& m1, const mpq_class& m2);
DynOp evaluate_universal(const std::vector<UniversalTerm>& terms, const WeightModule& W, const WeightModule& V);

/// Coefficients of gamma^0 .. gamma^order of op(lambda / gamma), with q = exp(-eps gamma / 2) in
/// the quantum case. Throws NotRegular on a pole at gamma = 0.
std::vector<Matrix> classical_limit(const DynOp& op, int order);

/// Sum over positive roots of e_{-alpha} (x) e_alpha on W (x) V.
Matrix lowering_raising(const WeightModule& W, const WeightModule& V);

struct ShapovalovReport {
  Mode mode;
  int depth;
  /// (-1)^n / <f^n x, f^n x> from the Gram matrices of the Verma slice.
  std::vector<Scalar> inverse_form;
  /// The universal coefficient phi_n at lambda = 0 on the pair (M_L^+, M_{-L}^-).
  std::vector<Scalar> fusion_at_zero;
  bool ok() const { return inverse_form == fusion_at_zero; }
};
ShapovalovReport shapovalov_vs_fusion(Mode mode, int depth);

}  // namespace dyb
