#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyb/scalar.hpp"

namespace dyb {

/// Weight in the coordinates of the datum: epsilon coordinates for gl_n and sl_n
/// with n >= 3, the single value on h for sl_2.
using Weight = std::vector<mpq_class>;

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
Weight operator*(const mpq_class& c, const Weight& a);
std::string weight_str(const Weight& w);

enum class Flavor { GL, SL };

/// Positive root e_a - e_b with a < b (0-based), with its height.
struct Root {
  Weight w;
  int a, b;
  int height;
};

/// Type A root datum.
class RootDatum {
 public:
  static RootDatum gl(int n);
  static RootDatum sl(int n);
  static RootDatum from_name(const std::string& name);  // "gl3", "sl2"

  Flavor flavor() const { return flavor_; }
  int n() const { return n_; }
  int coords() const { return coords_; }
  int rank() const { return n_ - 1; }
  std::string name() const;

  const std::vector<Weight>& simple_roots() const { return simple_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const Weight& rho() const { return rho_; }
  Weight zero() const { return Weight(coords_, 0); }
  mpq_class form(const Weight& a, const Weight& b) const;
  /// Weight of the basis vector e_a of the vector representation.
  Weight vector_weight(int a) const;
  /// Coefficients on the simple roots, or nullopt outside the root lattice.
  std::optional<std::vector<mpq_class>> simple_coeffs(const Weight& beta) const;
  /// Height of beta if it lies in the positive cone of the root lattice, else -1.
  int height(const Weight& beta) const;

  ShiftFrame frame(Mode mode) const;
  /// Coefficients c_i with (lambda, mu) = sum_i c_i lambda_i.
  std::vector<mpq_class> lambda_coeffs(const Weight& mu) const;
  /// (lambda, mu) with lambda the classical dynamical variable.
  Scalar lambda_pair(const Weight& mu) const;
  /// q^{k (lambda, mu)} with lambda the quantum dynamical variable.
  Scalar q_lambda_pair(const Weight& mu, int k) const;
  /// (lambda + rho, mu) - (mu, mu)/2.
  Scalar theta(const Weight& mu) const;
  /// q^{2 theta(mu)}.
  Scalar q2theta(const Weight& mu) const;

  bool operator==(const RootDatum& o) const { return flavor_ == o.flavor_ && n_ == o.n_; }
  bool operator!=(const RootDatum& o) const { return !(*this == o); }

 private:
  Flavor flavor_ = Flavor::GL;
  int n_ = 0, coords_ = 0;
  std::vector<std::vector<mpq_class>> gram_;
  std::vector<Weight> simple_;
  std::vector<Root> positive_;
  Weight rho_;
};

}  // namespace dyb
