#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyb {

inline constexpr int kMaxVars = 40;

/// Global variable registry. The standard names are registered in a fixed
/// order at startup so the monomial order, and hence every canonical form,
/// does not depend on the order in which computations touch variables.
namespace vars {
int id(std::string_view name);           // registers unknown names
std::optional<int> find(std::string_view name);
const std::string& name(int id);
int count();
int l(int i);  // classical dynamical coordinate, 1-based
int t(int i);  // q^{lambda_i}, 1-based
int w(int i);  // exp(-eps lambda_i / 2), 1-based
int x(int i);
int y(int i);
int u(int i);
int s();  // q^{1/2}
int g();  // gamma
int e();  // epsilon
int q();
int tpar();  // Macdonald t
int z();
}  // namespace vars

/// Exponent vector with cached total degree, ordered graded-lexicographically.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(int v, int e = 1);

  int operator[](int v) const { return e_[v]; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0 && is_zero_vec(); }
  void set(int v, int e);

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;  // requires divides
  static Monomial min(const Monomial& a, const Monomial& b);

  std::uint64_t support() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  /// Graded lex: true when a is strictly greater than b.
  friend bool grlex_greater(const Monomial& a, const Monomial& b);
  friend int grlex_compare(const Monomial& a, const Monomial& b);

 private:
  bool is_zero_vec() const;
  std::array<std::int16_t, kMaxVars> e_{};
  std::int32_t deg_ = 0;
};

struct Term {
  Monomial m;
  mpq_class c;
};

/// Sparse multivariate polynomial over Q, terms sorted by decreasing grlex.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c);
  Polynomial(const mpq_class& c);
  static Polynomial var(int v, int e = 1);
  static Polynomial monomial(const Monomial& m, const mpq_class& c);
  static Polynomial from_terms(std::vector<Term> terms);  // any order, merges duplicates

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<mpq_class> constant_value() const;
  const Term& lead() const { return terms_.front(); }
  int total_degree() const;
  int degree_in(int v) const;
  std::uint64_t support() const;
  Monomial min_monomial() const;  // componentwise minimum over terms

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const mpq_class& c) const;
  Polynomial mul_monomial(const Monomial& m, const mpq_class& c = 1) const;
  Polynomial div_monomial(const Monomial& m) const;
  Polynomial pow(unsigned k) const;

  /// Coefficients as a polynomial in v: result[k] multiplies v^k.
  std::vector<Polynomial> coeffs_in(int v) const;
  static Polynomial from_coeffs(int v, const std::vector<Polynomial>& cs);

  /// Integer normalization: integer coefficients, content 1, positive leading coefficient.
  Polynomial primitive() const;
  /// mpq factor f with *this == f * primitive().
  mpq_class content() const;

  Polynomial derivative(int v) const;
  mpq_class evaluate(const std::vector<std::optional<mpq_class>>& at, bool* complete = nullptr) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;

 private:
  std::vector<Term> terms_;
};

/// Exact quotient a / b when b divides a, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
/// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

}  // namespace dyb
