#include <algorithm>
#include <map>

#include "dyb/error.hpp"
#include "dyb/macdonald.hpp"

namespace dyb {

namespace {

constexpr int kMaxDepth = 6;

// Truncated Laurent series sum_k c[k] r^{lo + k}, exact through exponent hi().
struct Laurent {
  int lo = 0;
  std::vector<Scalar> c;
  int hi() const { return lo + static_cast<int>(c.size()) - 1; }
  Scalar at(int e) const {
    int k = e - lo;
    return k < 0 || k >= static_cast<int>(c.size()) ? Scalar() : c[k];
  }
};

// Expansion of x around var = 0 through exponent hi.
Laurent expand(const Scalar& x, int var, int hi) {
  Laurent out;
  if (x.is_zero()) {
    out.lo = hi;
    out.c.assign(1, Scalar());
    return out;
  }
  auto num = x.num().coeffs_in(var), den = x.den().coeffs_in(var);
  int n0 = 0, d0 = 0;
  while (num[n0].is_zero()) ++n0;
  while (den[d0].is_zero()) ++d0;
  out.lo = n0 - d0;
  int len = hi - out.lo + 1;
  if (len <= 0) {
    out.lo = hi;
    out.c.assign(1, Scalar());
    return out;
  }
  auto get = [](const std::vector<Polynomial>& v, int k) {
    return k < static_cast<int>(v.size()) ? Scalar(v[k]) : Scalar();
  };
  Scalar inv = get(den, d0).inverse();
  out.c.resize(len);
  for (int k = 0; k < len; ++k) {
    Scalar acc = get(num, n0 + k);
    for (int j = 1; j <= k; ++j) {
      Scalar dj = get(den, d0 + j);
      if (!dj.is_zero() && !out.c[k - j].is_zero()) acc -= dj * out.c[k - j];
    }
    out.c[k] = acc * inv;
  }
  return out;
}

Laurent mul(const Laurent& a, const Laurent& b) {
  Laurent out;
  out.lo = a.lo + b.lo;
  int hi = std::min(a.hi() + b.lo, b.hi() + a.lo);
  out.c.resize(std::max(hi - out.lo + 1, 1));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      int k = static_cast<int>(i + j);
      if (k >= static_cast<int>(out.c.size()) || a.c[i].is_zero() || b.c[j].is_zero()) continue;
      out.c[k] += a.c[i] * b.c[j];
    }
  return out;
}

int as_int(const mpq_class& x) { return static_cast<int>(x.get_num().get_si()); }

RootDatum sl2() { return RootDatum::sl(2); }
WeightModule three_dim() { return sym_power(sl2(), Mode::Quantum, 2); }

int zero_index(const WeightModule& v) {
  auto z = v.weight_space(Weight{0});
  require(z.size() == 1, ErrorKind::Precondition, "zero weight space must be one-dimensional");
  return z[0];
}

Scalar rename_t1(const Scalar& x, int to) { return monomial_substitute(x, {{vars::t(1), {{to, 1}}}}); }

// Diagonal coefficients of Phi^{v0}_mu on f^k x_mu, k = 0..depth, as functions of y = q^mu.
std::vector<Scalar> trace_coeffs(const WeightModule& V, int depth) {
  int v0 = zero_index(V);
  Intertwiner phi = solve_intertwiner(V, v0, Weight{0});
  int y = vars::y(1);
  // vectors of M_mu (x) V keyed by (level j of f^j x_mu, basis index of V)
  std::map<std::pair<int, int>, Scalar> vec;
  for (int b = 0; b < V.dim(); ++b) {
    if (phi.components[b].empty()) continue;
    const Weight& drop = phi.drops[b];
    require(phi.slice.contains(drop), ErrorKind::Convention, "intertwiner drop outside slice");
    int level = static_cast<int>(phi.slice.basis(drop)[0].size());
    require(phi.slice.basis(drop).size() == 1, ErrorKind::Convention, "sl2 slice blocks are one-dimensional");
    Scalar c = rename_t1(phi.components[b][0], y);
    if (!c.is_zero()) vec[{level, b}] = c;
  }
  const Matrix& f = V.f(0);
  Scalar yinv = Scalar::var(y).inverse();
  std::vector<Scalar> out;
  for (int k = 0; k <= depth; ++k) {
    auto it = vec.find({k, v0});
    out.push_back(it == vec.end() ? Scalar() : it->second);
    if (k == depth) break;
    // Delta(F) = F (x) 1 + K^{-1} (x) F; K^{-1} f^j x_mu = q^{2j - mu} f^j x_mu
    std::map<std::pair<int, int>, Scalar> next;
    for (auto& [key, c] : vec) {
      auto [j, b] = key;
      next[{j + 1, b}] += c;
      Scalar kinv = yinv * qpow(2 * j);
      for (int b2 = 0; b2 < V.dim(); ++b2)
        if (!f(b2, b).is_zero()) next[{j, b2}] += c * kinv * f(b2, b);
    }
    vec.clear();
    for (auto& [key, c] : next)
      if (!c.is_zero()) vec[key] = c;
  }
  return out;
}

// Q(mu) = m^op (1 (x) S^{-1}) J(-mu - rho) on the zero weight space of U, as a function of y.
Scalar q_on_zero(const WeightModule& U) {
  int w0 = zero_index(U);
  auto terms = universal_sl2_fusion(U.dim(), Mode::Quantum);
  ShiftFrame frame = sl2().frame(Mode::Quantum);
  // S^{-1}(e) = -K^{-1} e; phi_n meets weight zero on both sides
  Matrix s_inv_e = U.k_power(0, -1) * U.e(0) * Scalar(-1);
  Matrix en = Matrix::identity(U.dim()), fn = Matrix::identity(U.dim());
  Scalar out;
  for (auto& t : terms) {
    if (t.n > 0) {
      en = en * s_inv_e;
      fn = fn * U.f(0);
    }
    Scalar entry = (en * fn)(w0, w0);
    if (entry.is_zero()) continue;
    Scalar phi = reflect(universal_coeff(t, Mode::Quantum, 0, 0), frame, {1});
    out += entry * rename_t1(phi, vars::y(1));
  }
  return out;
}

// F_V(lambda, mu) = q^{-(lambda, mu)} G(r, y) with r = q^{-lambda}, y = q^mu, through r^hi.
Laurent f_series(const WeightModule& V, int hi, const TraceConventions& conv) {
  int depth = std::max(hi / 2, 0);
  require(depth <= kMaxDepth, ErrorKind::Precondition,
          "trace depth " + std::to_string(depth) + " exceeds " + std::to_string(kMaxDepth) + "; increase depth");
  auto c = trace_coeffs(V, depth);
  int y = vars::y(1), s = vars::s();
  Scalar qinv = conv.with_q ? q_on_zero(dual(V)).inverse() : Scalar(1);
  Laurent psi;
  psi.lo = 0;
  psi.c.assign(std::max(hi, 0) + 1, Scalar());
  for (int k = 0; 2 * k <= hi; ++k)
    // mu -> -mu - rho
    psi.c[2 * k] = monomial_substitute(c[k], {{y, {{y, -1}, {s, -2}}}}) * qinv;
  // the symmetric Weyl denominator contributes q^{lambda} (1 - r^2)
  Laurent out = psi;
  for (int k = 2; k < static_cast<int>(out.c.size()); ++k) out.c[k] -= psi.c[k - 2];
  // the asymmetric denominator carries an extra q^{-2 lambda} = r^2
  if (conv.asymmetric_weyl_denominator) {
    out.lo = 2;
    out.c.resize(std::max(hi - 1, 1));
  }
  return out;
}

int max_shift(const DiffOp& d) {
  int m = 0;
  for (auto& [nu, a] : d.terms()) m = std::max(m, std::abs(as_int(nu[0])));
  return m;
}

ResidualReport series_report(std::string eq, std::string operands, const Laurent& res, int lo, int hi) {
  ResidualReport rep;
  rep.equation = std::move(eq);
  rep.operands = std::move(operands);
  for (int e = lo; e <= hi; ++e) {
    ++rep.entries;
    Scalar v = res.at(e);
    if (v.is_zero()) continue;
    ++rep.nonzero;
    if (rep.zero) {
      rep.zero = false;
      rep.witness_index = "r^" + std::to_string(e);
      rep.witness = v;
    }
  }
  return rep;
}

WeightModule w_module(int w_dim) {
  require(w_dim == 2 || w_dim == 3, ErrorKind::Precondition, "W must be C^2 or S^2 C^2");
  return w_dim == 2 ? WeightModule::vector(sl2(), Mode::Quantum) : three_dim();
}

}  // namespace

TraceSeries psi_series(int depth) {
  require(depth >= 0 && depth <= kMaxDepth, ErrorKind::Precondition, "depth must lie in [0, 6]");
  return TraceSeries{depth, trace_coeffs(three_dim(), depth)};
}

Scalar q_factor() { return q_on_zero(dual(three_dim())); }

ResidualReport mr_residual(int order, int w_dim, TraceConventions conv) {
  require(order >= 0, ErrorKind::Precondition, "negative order");
  WeightModule V = three_dim(), W = w_module(w_dim);
  DiffOp d = transfer_diffop(V, W);
  int r = vars::z(), y = vars::y(1), hi = 2 * order;
  std::vector<std::pair<Weight, Laurent>> coeffs;
  int lo = 0;
  for (auto& [nu, a] : d.terms()) {
    Scalar c = monomial_substitute(a(0, 0), {{vars::t(1), {{r, -1}}}});
    coeffs.push_back({nu, expand(c, r, hi)});
    lo = std::min(lo, coeffs.back().second.lo);
  }
  Laurent g = f_series(V, hi - lo, conv);
  // T_nu: q^{-(lambda, mu)} -> y^{-nu} q^{-(lambda, mu)}, r -> q^{-nu} r
  Laurent res{std::min(lo, 0), std::vector<Scalar>(hi - std::min(lo, 0) + 1)};
  Scalar chi;
  for (const Weight& w : W.weights()) chi += Scalar::var(y).pow(-as_int(w[0]));
  for (auto& [nu, a] : coeffs) {
    int n = as_int(nu[0]);
    Laurent shifted = g;
    for (std::size_t k = 0; k < shifted.c.size(); ++k)
      shifted.c[k] = shifted.c[k] * Scalar::var(y).pow(-n) * qpow(-n * (g.lo + static_cast<int>(k)));
    Laurent term = mul(a, shifted);
    for (int e = res.lo; e <= hi; ++e) res.c[e - res.lo] += term.at(e);
  }
  for (int e = res.lo; e <= hi; ++e) res.c[e - res.lo] -= chi * g.at(e);
  return series_report("D_W F = chi_W(q^{-2 mu}) F", "V=S^2C^2 W=" + W.name() + " order=" + std::to_string(order),
                       res, res.lo, hi);
}

ResidualReport dual_mr_residual(int order, int w_dim, TraceConventions conv) {
  require(order >= 0, ErrorKind::Precondition, "negative order");
  WeightModule V = three_dim(), W = w_module(w_dim);
  DiffOp d = transfer_diffop(dual(V), W);
  int y = vars::y(1), hi = 2 * order, m = max_shift(d);
  Laurent g = f_series(V, hi + m, conv);
  // T_nu in mu: q^{-(lambda, mu)} -> r^nu q^{-(lambda, mu)}, y -> q^nu y
  int lo = g.lo - m;
  Laurent res{lo, std::vector<Scalar>(hi - lo + 1)};
  for (auto& [nu, a] : d.terms()) {
    int n = as_int(nu[0]);
    Scalar b = rename_t1(a(0, 0), y);
    for (int e = lo; e <= hi; ++e) {
      Scalar ge = g.at(e - n);
      if (ge.is_zero()) continue;
      res.c[e - lo] += b * monomial_substitute(ge, {{y, {{y, 1}, {vars::s(), 2 * n}}}});
    }
  }
  for (const Weight& w : W.weights()) {
    int n = as_int(w[0]);
    for (int e = lo; e <= hi; ++e) res.c[e - lo] -= g.at(e - n);
  }
  return series_report("D^mu_W F = chi_W(q^{-2 lambda}) F",
                       "V=S^2C^2 W=" + W.name() + " order=" + std::to_string(order), res, lo, hi);
}

ResidualReport symmetry_check(int order, TraceConventions conv) {
  require(order >= 0, ErrorKind::Precondition, "negative order");
  WeightModule V = three_dim(), Vd = dual(V);
  int r = vars::z(), y = vars::y(1), hi = 2 * order;
  // both sides carry q^{-(lambda, mu)}; compare the rest as series in r = q^{-lambda}, p = q^{-mu}
  int p = vars::y(2);
  auto bi = [&](const Laurent& g, int outer_var_sub) {
    std::map<std::pair<int, int>, Scalar> out;
    for (int e = g.lo; e <= hi; ++e) {
      Scalar c = g.at(e);
      if (c.is_zero()) continue;
      // y = 1/p on the left side; the right side has t = q^lambda = 1/r in the same slot
      Laurent inner = expand(monomial_substitute(c, {{y, {{outer_var_sub, -1}}}}), outer_var_sub, hi);
      for (int k = inner.lo; k <= hi; ++k)
        if (!inner.at(k).is_zero()) out[{e, k}] = inner.at(k);
    }
    return out;
  };
  auto left = bi(f_series(V, hi, conv), p);
  auto right_swapped = bi(f_series(Vd, hi, conv), r);
  std::map<std::pair<int, int>, Scalar> right;
  for (auto& [key, c] : right_swapped) right[{key.second, key.first}] = c;
  ResidualReport rep;
  rep.equation = "F_V(lambda, mu) = F_{V*}(mu, lambda)";
  rep.operands = "V=S^2C^2 bi-order=" + std::to_string(order);
  std::map<std::pair<int, int>, Scalar> diff = left;
  for (auto& [key, c] : right) diff[key] -= c;
  for (auto& [key, c] : diff) {
    if (key.first > hi || key.second > hi) continue;
    ++rep.entries;
    if (c.is_zero()) continue;
    ++rep.nonzero;
    if (rep.zero) {
      rep.zero = false;
      rep.witness_index = "r^" + std::to_string(key.first) + " p^" + std::to_string(key.second);
      rep.witness = c;
    }
  }
  return rep;
}

}  // namespace dyb
