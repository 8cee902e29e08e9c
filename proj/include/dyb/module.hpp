#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyb/linalg.hpp"
#include "dyb/rootdata.hpp"

namespace dyb {

/// Finite-dimensional weight module over g (classical) or U_q(g) (quantum),
/// given by the actions of the Chevalley generators on a weight basis.
/// Quantum conventions: K_i = q^{h_i}, Delta(E) = E (x) K + 1 (x) E,
/// Delta(F) = F (x) 1 + K^{-1} (x) F, [E, F] = (K - K^{-1})/(q - q^{-1}).
class WeightModule {
 public:
  WeightModule(RootDatum datum, Mode mode, std::string name, std::vector<Weight> weights, std::vector<int> charges);

  static WeightModule vector(const RootDatum& d, Mode mode);
  static WeightModule trivial(const RootDatum& d, Mode mode);

  const RootDatum& datum() const { return datum_; }
  Mode mode() const { return mode_; }
  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(weights_.size()); }
  const Weight& weight(int i) const { return weights_[i]; }
  const std::vector<Weight>& weights() const { return weights_; }
  /// Number of vector-representation factors carried by a basis vector (negative on duals).
  int charge(int i) const { return charges_[i]; }

  const Matrix& e(int i) const { return e_[i]; }
  const Matrix& f(int i) const { return f_[i]; }
  Matrix& e(int i) { return e_[i]; }
  Matrix& f(int i) { return f_[i]; }
  /// Diagonal operator q^{p (alpha_i, wt)}.
  Matrix k_power(int i, int p) const;
  /// Diagonal operator (alpha_i, wt) (classical) or [(alpha_i, wt)]_q (quantum).
  Matrix bracket_value(int i) const;
  /// Classical action of the matrix unit E_ab of gl_n (0-based). For sl_2 the diagonal
  /// units use the charge as the central element.
  Matrix gl_unit(int a, int b) const;

  /// Basis indices of a weight.
  std::vector<int> weight_space(const Weight& w) const;

  /// Optional realization inside the tensor power V^{(x) degree} of the vector module.
  bool has_embedding() const { return degree_ >= 0; }
  int degree() const { return degree_; }
  const Matrix& embedding() const { return embed_; }
  const Matrix& projection() const { return proj_; }
  void set_embedding(int degree, Matrix embed, Matrix proj);

  void set_name(std::string n) { name_ = std::move(n); }

 private:
  RootDatum datum_;
  Mode mode_;
  std::string name_;
  std::vector<Weight> weights_;
  std::vector<int> charges_;
  std::vector<Matrix> e_, f_;
  int degree_ = -1;
  Matrix embed_, proj_;
};

WeightModule tensor(const WeightModule& a, const WeightModule& b);
WeightModule tensor_power(const WeightModule& v, int m);
/// (q-)symmetric and (q-)exterior powers of the vector module, cut out of V^{(x) m}
/// by the eigenvalue of the braiding P R on each adjacent pair.
WeightModule sym_power(const RootDatum& d, Mode mode, int m);
WeightModule ext_power(const RootDatum& d, Mode mode, int m);
WeightModule dual(const WeightModule& m);

/// Checks the defining relations and weight compatibility; throws Convention on failure.
void check_module(const WeightModule& m);

/// Constant R-matrix on M (x) N, normalized on the vector module as
/// q sum E_aa (x) E_aa + sum_{a != b} E_aa (x) E_bb + (q - q^{-1}) sum_{a<b} E_ab (x) E_ba.
Matrix constant_R(const WeightModule& m, const WeightModule& n);
/// The same for sl_2 from the universal formula q^{(H (x) H + C (x) C)/2} sum_k c_k E^k (x) F^k,
/// C the charge; agrees with constant_R on embedded modules.
Matrix constant_R_sl2(const WeightModule& m, const WeightModule& n);
/// R_0 = R q^{-sum x_i (x) x_i}, i.e. R times the inverse of its diagonal.
Matrix strip_cartan(const Matrix& r);

/// Quantum integer [m]_q for an integer m.
Scalar qint(long m);

}  // namespace dyb
