#include "dyb/catalog.hpp"

#include <algorithm>
#include <set>

#include "dyb/error.hpp"

namespace dyb {

namespace {

int unit(int n, int a, int b) { return a * n + b; }

void put(Tensor2& t, int p, int q, const Scalar& c) {
  if (c.is_zero()) return;
  Scalar v = t[{p, q}] + c;
  if (v.is_zero())
    t.erase({p, q});
  else
    t[{p, q}] = v;
}

Scalar half(const Scalar& x) { return x / Scalar(2); }

// e_alpha ^ e_{-alpha} with coefficient c, alpha = e_a - e_b
void add_wedge(Tensor2& t, int n, int a, int b, const Scalar& c) {
  put(t, unit(n, a, b), unit(n, b, a), c);
  put(t, unit(n, b, a), unit(n, a, b), -c);
}

// (eps / 2) coth(eps (alpha, lambda) / 2) in the w symbols
Scalar half_coth(const RootDatum& d, const Weight& alpha, const Scalar& eps) {
  Scalar u = w_exp(d, alpha, 1);
  return half(eps) * (u + Scalar(1)) / (u - Scalar(1));
}

ClassicalRMatrix base(const RootDatum& d, std::string family, const Scalar& eps, bool trig) {
  ClassicalRMatrix r;
  r.family = std::move(family);
  r.datum = d;
  r.n = d.n();
  r.coupling = eps;
  r.omega = casimir(d);
  r.frame = standard_frame(d, trig, eps);
  return r;
}

// alpha_a + ... + alpha_{b-1} lies in <X>
bool in_span(const std::vector<int>& X, int a, int b) {
  for (int k = a; k < b; ++k)
    if (std::find(X.begin(), X.end(), k) == X.end()) return false;
  return true;
}

}  // namespace

Scalar DerivTerm::apply(const Scalar& x) const {
  Scalar d = derivative(x, var);
  if (rate.is_zero()) return d;
  return rate * Scalar::var(var) * d;
}

Matrix ClassicalRMatrix::evaluate(const WeightModule& V, const WeightModule& W) const {
  std::map<int, Matrix> cv, cw;
  auto get = [&](std::map<int, Matrix>& cache, const WeightModule& m, int p) -> const Matrix& {
    auto it = cache.find(p);
    if (it == cache.end()) it = cache.emplace(p, m.gl_unit(p / n, p % n)).first;
    return it->second;
  };
  Matrix out(V.dim() * W.dim(), V.dim() * W.dim());
  for (auto& [k, c] : coeffs) out += kron(get(cv, V, k.first), get(cw, W, k.second)) * c;
  return out;
}

Tensor2 flip(const Tensor2& t) {
  Tensor2 out;
  for (auto& [k, c] : t) out[{k.second, k.first}] = c;
  return out;
}

Tensor2 add(const Tensor2& a, const Tensor2& b, const Scalar& c) {
  Tensor2 out = a;
  for (auto& [k, v] : b) put(out, k.first, k.second, c * v);
  return out;
}

Tensor2 casimir(const RootDatum& d) {
  int n = d.n();
  Tensor2 t;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) put(t, unit(n, a, b), unit(n, b, a), Scalar(1));
  if (d.flavor() == Flavor::SL)
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) put(t, unit(n, a, a), unit(n, c, c), Scalar(mpq_class(-1, n)));
  return t;
}

std::vector<DerivTerm> standard_frame(const RootDatum& d, bool trig, const Scalar& eps) {
  std::vector<DerivTerm> f;
  Scalar rate = trig ? -half(eps) : Scalar();
  if (d.coords() == 1) {
    f.push_back({{1, -1}, trig ? vars::w(1) : vars::l(1), rate});
    return f;
  }
  for (int k = 0; k < d.n(); ++k) {
    std::vector<mpq_class> diag(d.n());
    diag[k] = 1;
    f.push_back({diag, trig ? vars::w(k + 1) : vars::l(k + 1), rate});
  }
  return f;
}

Scalar w_exp(const RootDatum& d, const Weight& alpha, const mpq_class& c) {
  auto co = d.lambda_coeffs(alpha);
  Scalar out(1);
  for (std::size_t i = 0; i < co.size(); ++i) {
    mpq_class e = -2 * c * co[i];
    require(e.get_den() == 1, ErrorKind::Precondition, "fractional exponent of a w symbol");
    if (e != 0) out *= Scalar::var(vars::w(static_cast<int>(i) + 1)).pow(static_cast<int>(e.get_num().get_si()));
  }
  return out;
}

ClassicalRMatrix basic_rational_r(const RootDatum& d) {
  ClassicalRMatrix r = base(d, "basic-rational", Scalar(), false);
  for (auto& a : d.positive_roots()) add_wedge(r.coeffs, r.n, a.a, a.b, d.lambda_pair(a.w).inverse());
  return r;
}

ClassicalRMatrix basic_trig_r(const RootDatum& d, const Scalar& eps) {
  require(!eps.is_zero(), ErrorKind::Degenerate, "the trigonometric family needs a nonzero coupling");
  ClassicalRMatrix r = base(d, "basic-trig", eps, true);
  r.coeffs = add(Tensor2{}, r.omega, half(eps));
  for (auto& a : d.positive_roots()) add_wedge(r.coeffs, r.n, a.a, a.b, half_coth(d, a.w, eps));
  return r;
}

ClassicalRMatrix r_l(const RootDatum& d, const std::vector<std::pair<int, int>>& roots) {
  int n = d.n();
  std::set<std::pair<int, int>> sig;
  for (auto [a, b] : roots) {
    require(a >= 0 && b < n && a < b, ErrorKind::InvalidSubalgebra, "roots must be positive (a < b)");
    sig.insert({a, b});
    sig.insert({b, a});
  }
  for (auto [a, b] : sig)
    for (auto [b2, c] : sig)
      if (b == b2 && a != c && !sig.count({a, c}))
        fail(ErrorKind::InvalidSubalgebra, "root subset is not closed under addition");
  ClassicalRMatrix r = base(d, "r-l", Scalar(), false);
  for (auto& a : d.positive_roots())
    if (sig.count({a.a, a.b})) add_wedge(r.coeffs, n, a.a, a.b, d.lambda_pair(a.w).inverse());
  return r;
}

ClassicalRMatrix r_eps_X(const RootDatum& d, const std::vector<int>& X, const Scalar& eps) {
  require(!eps.is_zero(), ErrorKind::Degenerate, "the trigonometric family needs a nonzero coupling");
  for (int i : X) require(i >= 0 && i < d.rank(), ErrorKind::Precondition, "X must consist of simple roots");
  ClassicalRMatrix r = base(d, "r-eps-X", eps, true);
  r.coeffs = add(Tensor2{}, r.omega, half(eps));
  for (auto& a : d.positive_roots()) {
    Scalar phi = in_span(X, a.a, a.b) ? half_coth(d, a.w, eps) : half(eps);
    // phi_{-alpha} = -phi_alpha in both cases
    add_wedge(r.coeffs, r.n, a.a, a.b, phi);
  }
  return r;
}

namespace {

Weight simple_vec(int n, int i) {
  Weight v(n, 0);
  v[i] = 1;
  v[i + 1] = -1;
  return v;
}

mpq_class dot(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix rational_matrix(const std::vector<std::vector<mpq_class>>& rows) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = Scalar(rows[i][j]);
  return m;
}

mpq_class value(const Scalar& x) {
  auto v = x.constant_value();
  require(v.has_value(), ErrorKind::Precondition, "expected a rational constant");
  return *v;
}

// gl_n matrix with rational entries, used to transport root vectors along tau
using Mat = std::vector<std::vector<mpq_class>>;

Mat unit_mat(int n, int a, int b) {
  Mat m(n, std::vector<mpq_class>(n));
  m[a][b] = 1;
  return m;
}

Mat bracket(const Mat& x, const Mat& y) {
  int n = static_cast<int>(x.size());
  Mat m(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (x[i][k] == 0 && y[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) m[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
    }
  return m;
}

// the single nonzero entry of a root vector: (a, b, coefficient)
std::tuple<int, int, mpq_class> root_entry(const Mat& m) {
  int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j] != 0) return {i, j, m[i][j]};
  fail(ErrorKind::InvalidTriple, "tau sends a root vector to zero");
}

// tau(E_ab) for a positive root inside <Gamma_1>, as +-E_cd
std::tuple<int, int, mpq_class> tau_root(int n, const BDTriple& t, int a, int b) {
  auto img = [&](int i) {
    auto it = std::find(t.gamma1.begin(), t.gamma1.end(), i);
    int j = t.gamma2[it - t.gamma1.begin()];
    return unit_mat(n, j, j + 1);
  };
  Mat m = img(a);
  for (int k = a + 1; k < b; ++k) m = bracket(m, img(k));
  return root_entry(m);
}

}  // namespace

void check_triple(const RootDatum& d, const BDTriple& t) {
  int n = d.n();
  require(t.gamma1.size() == t.gamma2.size(), ErrorKind::InvalidTriple, "tau needs one image per root");
  std::set<int> s1(t.gamma1.begin(), t.gamma1.end()), s2(t.gamma2.begin(), t.gamma2.end());
  require(s1.size() == t.gamma1.size() && s2.size() == t.gamma2.size(), ErrorKind::InvalidTriple,
          "tau must be a bijection");
  for (int i : t.gamma1) require(i >= 0 && i < d.rank(), ErrorKind::InvalidTriple, "Gamma_1 outside the simple roots");
  for (int i : t.gamma2) require(i >= 0 && i < d.rank(), ErrorKind::InvalidTriple, "Gamma_2 outside the simple roots");
  for (std::size_t i = 0; i < t.gamma1.size(); ++i)
    for (std::size_t j = 0; j < t.gamma1.size(); ++j)
      require(dot(simple_vec(n, t.gamma1[i]), simple_vec(n, t.gamma1[j])) ==
                  dot(simple_vec(n, t.gamma2[i]), simple_vec(n, t.gamma2[j])),
              ErrorKind::InvalidTriple, "tau does not preserve the form");
  for (auto& y : t.l_basis) require(static_cast<int>(y.size()) == n, ErrorKind::InvalidTriple, "l basis size");
  Matrix g(static_cast<int>(t.l_basis.size()), static_cast<int>(t.l_basis.size()));
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = Scalar(dot(t.l_basis[i], t.l_basis[j]));
  require(rank(g) == g.rows(), ErrorKind::InvalidTriple, "form restricted to l is degenerate");
  for (std::size_t i = 0; i < t.gamma1.size(); ++i) {
    Weight diff = simple_vec(n, t.gamma2[i]) - simple_vec(n, t.gamma1[i]);
    for (auto& y : t.l_basis) require(dot(diff, y) == 0, ErrorKind::InvalidTriple, "tau(alpha) - alpha not orthogonal to l");
  }
  // cycle sums must lie in l
  for (int start : t.gamma1) {
    Weight sum = simple_vec(n, start);
    int cur = start;
    bool cycle = false;
    for (std::size_t step = 0; step <= t.gamma1.size(); ++step) {
      auto it = std::find(t.gamma1.begin(), t.gamma1.end(), cur);
      if (it == t.gamma1.end()) break;
      cur = t.gamma2[it - t.gamma1.begin()];
      if (cur == start) {
        cycle = true;
        break;
      }
      sum = sum + simple_vec(n, cur);
    }
    if (!cycle) continue;
    std::vector<std::vector<mpq_class>> rows = t.l_basis;
    int r0 = rank(rational_matrix(rows));
    rows.push_back(sum);
    require(rank(rational_matrix(rows)) == r0, ErrorKind::InvalidTriple, "tau-cycle sum not in l");
  }
}

Matrix triple_r0(const RootDatum& d, const BDTriple& t) {
  int n = d.n();
  // h_0: orthogonal complement of l
  Matrix lm = rational_matrix(t.l_basis);
  Matrix bm = t.l_basis.empty() ? Matrix::identity(n) : nullspace(lm);
  int k = bm.cols();
  Matrix out(n, n);
  if (k < 2) return out;
  Matrix g0 = inverse(bm.transpose() * bm);
  Matrix omega0 = bm * g0 * bm.transpose();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) pairs.push_back({i, j});
  Matrix a(static_cast<int>(t.gamma1.size()) * n, static_cast<int>(pairs.size()));
  std::vector<Scalar> rhs(a.rows());
  for (std::size_t r = 0; r < t.gamma1.size(); ++r) {
    Weight al = simple_vec(n, t.gamma1[r]), ta = simple_vec(n, t.gamma2[r]);
    Weight phi = al - ta, psi = al + ta;
    std::vector<Scalar> pb(k);
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < n; ++c) pb[i] += Scalar(phi[c]) * bm(c, i);
    for (int col = 0; col < n; ++col) {
      int row = static_cast<int>(r) * n + col;
      for (std::size_t u = 0; u < pairs.size(); ++u) {
        auto [i, j] = pairs[u];
        a(row, static_cast<int>(u)) = pb[i] * bm(col, j) - pb[j] * bm(col, i);
      }
      for (int c = 0; c < n; ++c) rhs[row] += half(Scalar(psi[c]) * omega0(c, col));
    }
  }
  auto x = solve_particular(a, rhs);
  Matrix s(k, k);
  for (std::size_t u = 0; u < pairs.size(); ++u) {
    s(pairs[u].first, pairs[u].second) = x[u];
    s(pairs[u].second, pairs[u].first) = -x[u];
  }
  return bm * s * bm.transpose();
}

ClassicalRMatrix triple_r(const RootDatum& d, const BDTriple& t) {
  check_triple(d, t);
  int n = d.n(), kl = static_cast<int>(t.l_basis.size());
  ClassicalRMatrix r;
  r.family = "appA";
  r.datum = d;
  r.n = n;
  r.coupling = Scalar(1);
  r.omega = casimir(d);
  // lambda = sum_j mu_j y^j; the derivative sum is sum_{ij} G^{-1}_ij y_i (x) d/dmu_j
  Matrix g(kl, kl);
  for (int i = 0; i < kl; ++i)
    for (int j = 0; j < kl; ++j) g(i, j) = Scalar(dot(t.l_basis[i], t.l_basis[j]));
  Matrix gi = kl ? inverse(g) : g;
  for (int j = 0; j < kl; ++j) {
    std::vector<mpq_class> diag(n);
    for (int i = 0; i < kl; ++i)
      for (int c = 0; c < n; ++c) diag[c] += value(gi(i, j)) * t.l_basis[i][c];
    r.frame.push_back({diag, vars::w(j + 1), Scalar(mpq_class(-1, 2))});
  }
  // exp(-(alpha, lambda)) = prod_j w_j^{2 alpha(y_j)}
  auto xexp = [&](int a, int b) {
    Scalar out(1);
    for (int j = 0; j < kl; ++j) {
      mpq_class e = 2 * (t.l_basis[j][a] - t.l_basis[j][b]);
      require(e.get_den() == 1, ErrorKind::Precondition, "l basis must pair integrally with roots");
      if (e != 0) out *= Scalar::var(vars::w(j + 1)).pow(static_cast<int>(e.get_num().get_si()));
    }
    return out;
  };
  r.coeffs = add(Tensor2{}, r.omega, Scalar(mpq_class(1, 2)));
  Matrix r0 = triple_r0(d, t);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) put(r.coeffs, unit(n, a, a), unit(n, b, b), r0(a, b));
  for (auto& rt : d.positive_roots()) add_wedge(r.coeffs, n, rt.a, rt.b, Scalar(mpq_class(1, 2)));
  for (auto& rt : d.positive_roots()) {
    if (!in_span(t.gamma1, rt.a, rt.b)) continue;
    // K(lambda) e_alpha = sum_{m>0} x^m tau^m(e_alpha), x = exp(-(alpha, lambda))
    Scalar x = xexp(rt.a, rt.b);
    std::vector<std::tuple<int, int, mpq_class>> orbit;
    int a = rt.a, b = rt.b;
    mpq_class sign = 1;
    bool cycle = false;
    for (int step = 0; step < n * n; ++step) {
      if (!in_span(t.gamma1, a, b)) break;
      auto [c, e, coef] = tau_root(n, t, a, b);
      sign *= coef;
      a = c;
      b = e;
      orbit.push_back({a, b, sign});
      if (a == rt.a && b == rt.b) {
        cycle = true;
        break;
      }
    }
    int len = static_cast<int>(orbit.size());
    // along a cycle tau^len e_alpha = c e_alpha, and the series sums to (finite part) / (1 - c x^len)
    Scalar denom(1);
    if (cycle) denom = Scalar(1) - Scalar(std::get<2>(orbit.back())) * x.pow(len);
    for (int m = 0; m < len; ++m) {
      auto [c, e, sg] = orbit[m];
      Scalar coef = Scalar(sg) * x.pow(m + 1) / denom;
      // (K e_alpha) ^ f_alpha with K e_alpha = coef E_ce, f_alpha = E_ba
      put(r.coeffs, unit(n, c, e), unit(n, rt.b, rt.a), coef);
      put(r.coeffs, unit(n, rt.b, rt.a), unit(n, c, e), -coef);
    }
  }
  return r;
}

std::vector<std::vector<int>> intervals(std::vector<int> X) {
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  std::vector<std::vector<int>> out;
  for (int x : X) {
    if (out.empty() || out.back().back() + 1 != x)
      out.push_back({x});
    else
      out.back().push_back(x);
  }
  return out;
}

namespace {

std::vector<int> interval_label(int n, const std::vector<int>& X) {
  std::vector<int> label(n, -1);
  auto iv = intervals(X);
  for (std::size_t k = 0; k < iv.size(); ++k)
    for (int x : iv[k]) {
      require(x >= 1 && x <= n, ErrorKind::Precondition, "X must be a subset of {1..n}");
      label[x - 1] = static_cast<int>(k);
    }
  return label;
}

}  // namespace

DynOp quantum_R_X(int n, const std::vector<int>& X) {
  RootDatum d = RootDatum::gl(n);
  WeightModule v = WeightModule::vector(d, Mode::Classical);
  auto label = interval_label(n, X);
  Matrix r = Matrix::identity(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || label[a] < 0 || label[a] != label[b]) continue;
      Scalar c = (lam(a + 1) - lam(b + 1)).inverse();
      r(unit(n, a, b), unit(n, a, b)) += c;
      // E_ba (x) E_ab sends v_a (x) v_b to v_b (x) v_a
      r(unit(n, b, a), unit(n, a, b)) += c;
    }
  return DynOp{{v, v}, Mode::Classical, r};
}

DynOp quantum_R_eps_X(int n, const std::vector<int>& X) {
  RootDatum d = RootDatum::gl(n);
  WeightModule v = WeightModule::vector(d, Mode::Quantum);
  auto label = interval_label(n, X);
  Scalar q = qpow(1);
  Matrix r(n * n, n * n);
  for (int a = 0; a < n; ++a) {
    r(unit(n, a, a), unit(n, a, a)) = Scalar(1);
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      Scalar beta;
      if (label[a] >= 0 && label[a] == label[b])
        beta = (q - Scalar(1)) / (tq(a + 1) / tq(b + 1) - Scalar(1));
      else if (a > b)
        beta = Scalar(1) - q;
      r(unit(n, a, b), unit(n, a, b)) = q + beta;
      // beta_ab sits on E_ba (x) E_ab, matching R_X at q = 1
      r(unit(n, b, a), unit(n, a, b)) = beta;
    }
  }
  return DynOp{{v, v}, Mode::Quantum, r};
}

ClosedForms gl_closed_forms(int n, Mode mode) {
  require(n >= 2, ErrorKind::Precondition, "rank");
  RootDatum d = RootDatum::gl(n);
  WeightModule v = WeightModule::vector(d, mode);
  Matrix j = Matrix::identity(n * n), r(n * n, n * n);
  Scalar q = qpow(1);
  // y_ab = lambda_b - lambda_a + a - b (1-based a, b); Y_ab = q^{2 y_ab}
  auto y = [&](int a, int b) { return lam(b + 1) - lam(a + 1) + Scalar(a - b); };
  auto Y = [&](int a, int b) { return tq(b + 1).pow(2) * tq(a + 1).pow(-2) * qpow(2 * (a - b)); };
  for (int a = 0; a < n; ++a) {
    r(unit(n, a, a), unit(n, a, a)) = mode == Mode::Classical ? Scalar(1) : q;
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      // E_ba (x) E_ab: v_a (x) v_b -> v_b (x) v_a
      if (mode == Mode::Classical) {
        if (a < b) j(unit(n, b, a), unit(n, a, b)) = y(a, b).inverse();
        r(unit(n, b, a), unit(n, a, b)) = -y(a, b).inverse();
        r(unit(n, a, b), unit(n, a, b)) =
            a < b ? Scalar(1) : (y(a, b) - Scalar(1)) * (y(a, b) + Scalar(1)) / y(a, b).pow(2);
      } else {
        Scalar c = (q.inverse() - q) / (Y(b, a) - Scalar(1));
        if (a < b) j(unit(n, b, a), unit(n, a, b)) = c;
        r(unit(n, b, a), unit(n, a, b)) = (q.inverse() - q) / (Y(a, b) - Scalar(1));
        r(unit(n, a, b), unit(n, a, b)) =
            a < b ? Scalar(1)
                  : (Y(a, b) - q.pow(-2)) * (Y(a, b) - q.pow(2)) / (Y(a, b) - Scalar(1)).pow(2);
      }
    }
  }
  return {DynOp{{v, v}, mode, j}, DynOp{{v, v}, mode, r}};
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"basic-rational", "basic-trig", "r-l",          "r-eps-X",
                                              "appA",           "R-X",        "R-eps-X",      "gl-closed-form"};
  return names;
}

}  // namespace dyb
