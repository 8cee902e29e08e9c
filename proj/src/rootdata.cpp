#include "dyb/rootdata.hpp"

#include "dyb/error.hpp"

namespace dyb {

Weight operator+(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "weight sum");
  Weight r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  require(a.size() == b.size(), ErrorKind::ShapeMismatch, "weight difference");
  Weight r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Weight operator-(const Weight& a) {
  Weight r = a;
  for (auto& x : r) x = -x;
  return r;
}

Weight operator*(const mpq_class& c, const Weight& a) {
  Weight r = a;
  for (auto& x : r) x *= c;
  return r;
}

std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].get_str();
  return s + ")";
}

RootDatum RootDatum::gl(int n) {
  require(n >= 1 && n <= 5, ErrorKind::Precondition, "gl_n supported for 1 <= n <= 5");
  RootDatum d;
  d.flavor_ = Flavor::GL;
  d.n_ = n;
  d.coords_ = n;
  d.gram_.assign(n, std::vector<mpq_class>(n, 0));
  for (int i = 0; i < n; ++i) d.gram_[i][i] = 1;
  for (int i = 0; i + 1 < n; ++i) {
    Weight a(n, 0);
    a[i] = 1;
    a[i + 1] = -1;
    d.simple_.push_back(a);
  }
  for (int h = 1; h < n; ++h)
    for (int a = 0; a + h < n; ++a) {
      Weight w(n, 0);
      w[a] = 1;
      w[a + h] = -1;
      d.positive_.push_back({w, a, a + h, h});
    }
  d.rho_.assign(n, 0);
  for (int a = 0; a < n; ++a) d.rho_[a] = mpq_class(n + 1, 2) - (a + 1);
  return d;
}

RootDatum RootDatum::sl(int n) {
  require(n >= 2 && n <= 5, ErrorKind::Precondition, "sl_n supported for 2 <= n <= 5");
  if (n > 2) {
    RootDatum d = gl(n);
    d.flavor_ = Flavor::SL;
    return d;
  }
  RootDatum d;
  d.flavor_ = Flavor::SL;
  d.n_ = 2;
  d.coords_ = 1;
  d.gram_ = {{mpq_class(1, 2)}};
  d.simple_ = {Weight{2}};
  d.positive_ = {{Weight{2}, 0, 1, 1}};
  d.rho_ = Weight{1};
  return d;
}

RootDatum RootDatum::from_name(const std::string& name) {
  if (name.size() >= 3 && (name.rfind("gl", 0) == 0 || name.rfind("sl", 0) == 0)) {
    int n = 0;
    try {
      n = std::stoi(name.substr(2));
    } catch (...) {
      fail(ErrorKind::Parse, "bad algebra name " + name);
    }
    return name[0] == 'g' ? gl(n) : sl(n);
  }
  fail(ErrorKind::Parse, "bad algebra name " + name);
}

std::string RootDatum::name() const { return (flavor_ == Flavor::GL ? "gl" : "sl") + std::to_string(n_); }

mpq_class RootDatum::form(const Weight& a, const Weight& b) const {
  require(static_cast<int>(a.size()) == coords_ && static_cast<int>(b.size()) == coords_, ErrorKind::ShapeMismatch,
          "weight length");
  mpq_class s = 0;
  for (int i = 0; i < coords_; ++i)
    for (int j = 0; j < coords_; ++j)
      if (gram_[i][j] != 0) s += a[i] * gram_[i][j] * b[j];
  return s;
}

Weight RootDatum::vector_weight(int a) const {
  if (coords_ == 1) return Weight{a == 0 ? 1 : -1};
  Weight w(coords_, 0);
  w[a] = 1;
  return w;
}

std::optional<std::vector<mpq_class>> RootDatum::simple_coeffs(const Weight& beta) const {
  if (coords_ == 1) return std::vector<mpq_class>{beta[0] / 2};
  std::vector<mpq_class> c(n_ - 1);
  mpq_class run = 0;
  for (int i = 0; i + 1 < n_; ++i) {
    run += beta[i];
    c[i] = run;
  }
  if (run + beta[n_ - 1] != 0) return std::nullopt;
  return c;
}

int RootDatum::height(const Weight& beta) const {
  auto c = simple_coeffs(beta);
  if (!c) return -1;
  int h = 0;
  for (auto& x : *c) {
    if (x < 0 || x.get_den() != 1) return -1;
    h += static_cast<int>(x.get_num().get_si());
  }
  return h;
}

ShiftFrame RootDatum::frame(Mode mode) const {
  return mode == Mode::Classical ? ShiftFrame::classical(coords_) : ShiftFrame::quantum(coords_);
}

std::vector<mpq_class> RootDatum::lambda_coeffs(const Weight& mu) const {
  std::vector<mpq_class> c(coords_);
  for (int i = 0; i < coords_; ++i)
    for (int j = 0; j < coords_; ++j) c[i] += gram_[i][j] * mu[j];
  return c;
}

Scalar RootDatum::lambda_pair(const Weight& mu) const {
  Scalar s;
  for (int i = 0; i < coords_; ++i) {
    mpq_class c = 0;
    for (int j = 0; j < coords_; ++j) c += gram_[i][j] * mu[j];
    if (c != 0) s += Scalar(c) * lam(i + 1);
  }
  return s;
}

Scalar RootDatum::q_lambda_pair(const Weight& mu, int k) const {
  LaurentMonomial m;
  Scalar s(1);
  for (int i = 0; i < coords_; ++i) {
    mpq_class c = 0;
    for (int j = 0; j < coords_; ++j) c += gram_[i][j] * mu[j];
    c *= k;
    if (c == 0) continue;
    if (c.get_den() != 1) fail(ErrorKind::Precondition, "q^{(lambda, mu)} with fractional exponent");
    s *= tq(i + 1).pow(static_cast<int>(c.get_num().get_si()));
  }
  return s;
}

Scalar RootDatum::theta(const Weight& mu) const {
  return lambda_pair(mu) + Scalar(form(rho_, mu) - form(mu, mu) / 2);
}

Scalar RootDatum::q2theta(const Weight& mu) const {
  return q_lambda_pair(mu, 2) * qpow(2 * form(rho_, mu) - form(mu, mu));
}

}  // namespace dyb
