#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dyb/polynomial.hpp"

namespace dyb {

enum class Mode { Classical, Quantum };

/// Exact rational function over Q in canonical form: numerator and denominator
/// coprime, jointly integer-primitive, denominator with positive leading coefficient.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}
  Scalar(int c) : Scalar(static_cast<long>(c)) {}
  Scalar(const mpq_class& c);
  Scalar(const Polynomial& p);
  static Scalar fraction(const Polynomial& num, const Polynomial& den);
  /// Canonicalizes num/den when the caller knows they are coprime.
  static Scalar from_coprime(Polynomial num, Polynomial den);
  static Scalar var(int id) { return Scalar(Polynomial::var(id)); }
  static Scalar var(std::string_view name) { return var(vars::id(name)); }
  static Scalar parse(std::string_view text);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_.is_constant(); }
  std::optional<mpq_class> constant_value() const;
  std::uint64_t support() const { return num_.support() | den_.support(); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar inverse() const;
  Scalar pow(int k) const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string str() const;

 private:
  Polynomial num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

/// Laurent monomial given as (variable, exponent) pairs.
using LaurentMonomial = std::vector<std::pair<int, int>>;

/// Substitutes each listed variable by a Laurent monomial (variables not listed are fixed).
Scalar monomial_substitute(const Scalar& x, const std::vector<std::pair<int, LaurentMonomial>>& rules);
/// Substitutes variables by arbitrary scalars.
Scalar substitute(const Scalar& x, const std::vector<std::pair<int, Scalar>>& rules);
Scalar derivative(const Scalar& x, int var);
/// Full numeric evaluation; throws Pole when the denominator vanishes and
/// Precondition when a variable of x is left unassigned.
mpq_class evaluate(const Scalar& x, const std::vector<std::pair<int, mpq_class>>& point);
/// Partial numeric evaluation; throws Pole when the denominator vanishes identically.
Scalar evaluate_partial(const Scalar& x, const std::vector<std::pair<int, mpq_class>>& point);

/// How the dynamical coordinates lambda_i are realized by variables.
/// Additive: variable v_i = lambda_i, so lambda -> lambda + nu sends v_i to v_i + nu_i.
/// Multiplicative: v_i = base^(factor * lambda_i), so v_i goes to base^(factor * nu_i) * v_i.
struct ShiftFrame {
  enum class Kind { Additive, Multiplicative };
  Kind kind = Kind::Additive;
  std::vector<int> coord_vars;
  int base = -1;
  int factor = 1;

  static ShiftFrame classical(int n);
  static ShiftFrame quantum(int n);  // t_i = q^{lambda_i} = s^{2 lambda_i}
  int size() const { return static_cast<int>(coord_vars.size()); }
};

/// x(lambda + nu).
Scalar shift(const Scalar& x, const ShiftFrame& frame, const std::vector<mpq_class>& nu);
/// x(lambda - mu) for the standard classical (l_i) or quantum (t_i) frame.
Scalar shift_substitute(const Scalar& x, Mode mode, const std::vector<mpq_class>& mu);
/// x(-lambda - c), the reflection used by the transfer operators.
Scalar reflect(const Scalar& x, const ShiftFrame& frame, const std::vector<mpq_class>& c);

/// Truncated series in gamma with rational-function coefficients.
class GammaSeries {
 public:
  GammaSeries() = default;
  explicit GammaSeries(int order) : c_(static_cast<std::size_t>(order) + 1) {}
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& operator[](int k) const { return c_[k]; }
  Scalar& operator[](int k) { return c_[k]; }

  GammaSeries operator+(const GammaSeries& o) const;
  GammaSeries operator-(const GammaSeries& o) const;
  GammaSeries operator*(const GammaSeries& o) const;
  GammaSeries operator/(const GammaSeries& o) const;  // requires nonzero constant term
  bool operator==(const GammaSeries& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  std::vector<Scalar> c_;
};

/// Expansion of x(lambda / gamma), in the quantum case with q = exp(-eps gamma / 2),
/// so that t_i becomes w_i = exp(-eps lambda_i / 2). Throws NotRegular on a pole at gamma = 0.
GammaSeries gamma_expand(const Scalar& x, int order, Mode mode);

/// Scalar text helpers for fixed families.
Scalar lam(int i);   // l_i
Scalar tq(int i);    // t_i
Scalar svar();       // s = q^{1/2}
/// q^k in the quantum encoding, k may be half-integral.
Scalar qpow(const mpq_class& k);
/// Quantum integer [x]_q where q^x is given as a scalar.
Scalar qint_from_power(const Scalar& qx);

}  // namespace dyb
