#include <algorithm>
#include <map>

#include "dyb/error.hpp"
#include "dyb/scalar.hpp"

namespace dyb {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::NotRegular: return "not-regular";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Convention: return "convention-error";
    case ErrorKind::InvalidGauge: return "invalid-gauge";
    case ErrorKind::InvalidSubalgebra: return "invalid-subalgebra";
    case ErrorKind::InvalidTriple: return "invalid-triple";
    case ErrorKind::UnsupportedCycle: return "unsupported-cycle";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "error";
}

GammaSeries GammaSeries::operator+(const GammaSeries& o) const {
  GammaSeries r(std::min(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r[k] = c_[k] + o[k];
  return r;
}

GammaSeries GammaSeries::operator-(const GammaSeries& o) const {
  GammaSeries r(std::min(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k) r[k] = c_[k] - o[k];
  return r;
}

GammaSeries GammaSeries::operator*(const GammaSeries& o) const {
  GammaSeries r(std::min(order(), o.order()));
  for (int k = 0; k <= r.order(); ++k)
    for (int j = 0; j <= k; ++j)
      if (!c_[j].is_zero() && !o[k - j].is_zero()) r[k] += c_[j] * o[k - j];
  return r;
}

GammaSeries GammaSeries::operator/(const GammaSeries& o) const {
  if (o[0].is_zero()) fail(ErrorKind::NotRegular, "series division by a series without constant term");
  GammaSeries r(std::min(order(), o.order()));
  Scalar inv = o[0].inverse();
  for (int k = 0; k <= r.order(); ++k) {
    Scalar acc = c_[k];
    for (int j = 1; j <= k; ++j)
      if (!o[j].is_zero() && !r[k - j].is_zero()) acc -= o[j] * r[k - j];
    r[k] = acc * inv;
  }
  return r;
}

std::string GammaSeries::str() const {
  std::string out;
  for (int k = 0; k <= order(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[k].str() + ")";
    if (k > 0) out += "*g^" + std::to_string(k);
  }
  if (!out.empty()) out += " + ";
  return out + "O(g^" + std::to_string(order() + 1) + ")";
}

namespace {

// Coefficients of p(l / gamma) * gamma^deg, indexed by the power of gamma.
std::vector<Polynomial> homogeneous_parts(const Polynomial& p, std::uint64_t lmask, int& deg) {
  deg = 0;
  auto ldeg = [&](const Monomial& m) {
    int d = 0;
    for (int v = 0; v < kMaxVars; ++v)
      if (lmask >> v & 1) d += m[v];
    return d;
  };
  for (auto& t : p.terms()) deg = std::max(deg, ldeg(t.m));
  std::vector<std::vector<Term>> parts(static_cast<std::size_t>(deg) + 1);
  for (auto& t : p.terms()) parts[deg - ldeg(t.m)].push_back(t);
  std::vector<Polynomial> out;
  for (auto& ts : parts) out.push_back(Polynomial::from_terms(std::move(ts)));
  return out;
}

GammaSeries to_series(const std::vector<Polynomial>& parts, int order) {
  GammaSeries r(order);
  for (int k = 0; k <= order && k < static_cast<int>(parts.size()); ++k) r[k] = Scalar(parts[k]);
  return r;
}

// Series of p with s = exp(-eps gamma / 4) and t_i = w_i.
std::vector<Scalar> quantum_parts(const Polynomial& p, int order) {
  int sv = vars::s();
  std::vector<std::pair<int, LaurentMonomial>> tw;
  for (int i = 1; i <= 5; ++i) tw.push_back({vars::t(i), {{vars::w(i), 1}}});
  std::vector<Scalar> out(static_cast<std::size_t>(order) + 1);
  auto cs = p.coeffs_in(sv);
  Scalar eps = Scalar::var(vars::e());
  for (std::size_t j = 0; j < cs.size(); ++j) {
    if (cs[j].is_zero()) continue;
    Scalar cj = monomial_substitute(Scalar(cs[j]), tw);
    // exp(-j eps gamma / 4) = sum_k (-j eps / 4)^k gamma^k / k!
    Scalar a = eps * Scalar(mpq_class(-static_cast<long>(j), 4));
    Scalar term = cj;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) term = term * a / Scalar(k);
      out[k] += term;
    }
  }
  return out;
}

}  // namespace

GammaSeries gamma_expand(const Scalar& x, int order, Mode mode) {
  if (order < 0) fail(ErrorKind::Precondition, "negative order");
  if (mode == Mode::Classical) {
    std::uint64_t lmask = 0;
    for (int i = 1; i <= 5; ++i) lmask |= std::uint64_t{1} << vars::l(i);
    int dn = 0, dd = 0;
    auto pn = homogeneous_parts(x.num(), lmask, dn);
    auto pd = homogeneous_parts(x.den(), lmask, dd);
    int lead = dd - dn;
    if (lead < 0 && !x.is_zero()) fail(ErrorKind::NotRegular, x.str() + " has a pole at gamma = 0");
    GammaSeries out(order);
    if (x.is_zero() || lead > order) return out;
    int inner = order - lead;
    GammaSeries q = to_series(pn, inner) / to_series(pd, inner);
    for (int k = 0; k <= inner; ++k) out[k + lead] = q[k];
    return out;
  }
  if (x.is_zero()) return GammaSeries(order);
  int margin = x.den().degree_in(vars::s()) + 1;
  auto dn = quantum_parts(x.den(), order + margin);
  int od = 0;
  while (od < static_cast<int>(dn.size()) && dn[od].is_zero()) ++od;
  if (od == static_cast<int>(dn.size())) fail(ErrorKind::NotRegular, "denominator of " + x.str() + " vanishes to high order");
  auto nn = quantum_parts(x.num(), order + od);
  for (int k = 0; k < od; ++k)
    if (!nn[k].is_zero()) fail(ErrorKind::NotRegular, x.str() + " has a pole at gamma = 0");
  GammaSeries a(order), b(order);
  for (int k = 0; k <= order; ++k) {
    a[k] = nn[k + od];
    b[k] = dn[k + od];
  }
  return a / b;
}

}  // namespace dyb
