#include "dyb/verify.hpp"

#include <random>
#include <sstream>

#include "dyb/error.hpp"

namespace dyb {

namespace {

int degree_of(const Scalar& x) { return std::max(x.num().total_degree(), x.den().total_degree()); }

struct Collector {
  std::vector<std::pair<std::string, Scalar>> items;
  int max_degree = 0;
  void add(std::string label, const Scalar& x) { items.emplace_back(std::move(label), x); }
  void input(const Matrix& m) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (!m(i, j).is_zero()) max_degree = std::max(max_degree, degree_of(m(i, j)));
  }
  void input(const Tensor2& t) {
    for (auto& [k, c] : t) max_degree = std::max(max_degree, degree_of(c));
  }
  ResidualReport report(std::string eq, std::string ops) const {
    ResidualReport r;
    r.equation = std::move(eq);
    r.operands = std::move(ops);
    r.max_degree = max_degree;
    r.entries = static_cast<int>(items.size());
    for (auto& [label, x] : items) {
      if (x.is_zero()) continue;
      if (r.zero) {
        r.zero = false;
        r.witness_index = label;
        r.witness = x;
      }
      ++r.nonzero;
    }
    return r;
  }
};

std::string pair_label(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

std::string unit_label(int n, int p) { return "E" + std::to_string(p / n + 1) + std::to_string(p % n + 1); }

void collect_matrix(Collector& c, const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) c.add(pair_label(i, j), m(i, j));
}

void accumulate(Tensor3& t, int a, int b, int c, const Scalar& x) {
  if (x.is_zero()) return;
  auto key = std::make_tuple(a, b, c);
  Scalar v = t[key] + x;
  if (v.is_zero())
    t.erase(key);
  else
    t[key] = v;
}

// [E_p, E_q] as up to two (unit, coefficient) terms
std::vector<std::pair<int, int>> unit_bracket(int n, int p, int q) {
  int a = p / n, b = p % n, c = q / n, d = q % n;
  std::vector<std::pair<int, int>> out;
  if (b == c) out.push_back({a * n + d, 1});
  if (d == a) out.push_back({c * n + b, -1});
  return out;
}

std::vector<std::pair<int, Scalar>> diag_units(int n, const std::vector<mpq_class>& diag) {
  std::vector<std::pair<int, Scalar>> out;
  for (int a = 0; a < n; ++a)
    if (diag[a] != 0) out.push_back({a * n + a, Scalar(diag[a])});
  return out;
}

std::string mod_names(const std::vector<WeightModule>& ms) {
  std::string s;
  for (auto& m : ms) s += (s.empty() ? "" : ",") + m.name();
  return s;
}

}  // namespace

std::string ResidualReport::summary() const {
  std::ostringstream o;
  o << equation << " [" << operands << "]: " << (zero ? "zero" : "NONZERO") << " (" << entries << " entries";
  if (!zero) o << ", " << nonzero << " nonzero, first " << witness_index << " = " << witness.str();
  o << ")";
  return o.str();
}

ResidualReport matrix_report(std::string equation, std::string operands, const Matrix& residual,
                             const std::vector<const Matrix*>& inputs) {
  Collector c;
  for (auto* m : inputs) c.input(*m);
  collect_matrix(c, residual);
  return c.report(std::move(equation), std::move(operands));
}

ResidualReport qdybe_residual(const DynOp& R) {
  require(R.factors.size() == 2 && R.factors[0].dim() == R.factors[1].dim(), ErrorKind::Precondition,
          "QDYBE needs an operator on V (x) V");
  require(R.is_weight_zero(), ErrorKind::Precondition, "QDYBE needs a weight-zero operator");
  const WeightModule& V = R.factors[0];
  std::vector<WeightModule> mods{V, V, V};
  Mode m = R.mode;
  Matrix lhs = place(R.m, m, mods, {0, 1}, {2}) * place(R.m, m, mods, {0, 2}) * place(R.m, m, mods, {1, 2}, {0});
  Matrix rhs = place(R.m, m, mods, {1, 2}) * place(R.m, m, mods, {0, 2}, {1}) * place(R.m, m, mods, {0, 1});
  return matrix_report("qdybe", V.name(), lhs - rhs, {&R.m});
}

Tensor3 cdybe_tensor(const ClassicalRMatrix& r) {
  int n = r.n;
  Tensor3 t;
  for (auto& d : r.frame) {
    auto units = diag_units(n, d.diag);
    for (auto& [k, c] : r.coeffs) {
      Scalar dc = d.apply(c);
      if (dc.is_zero()) continue;
      for (auto& [u, w] : units) {
        Scalar x = w * dc;
        accumulate(t, u, k.first, k.second, x);
        accumulate(t, k.first, u, k.second, -x);
        accumulate(t, k.first, k.second, u, x);
      }
    }
  }
  for (auto& [k1, c1] : r.coeffs)
    for (auto& [k2, c2] : r.coeffs) {
      Scalar cc = c1 * c2;
      // [r12, r13]
      for (auto [u, s] : unit_bracket(n, k1.first, k2.first)) accumulate(t, u, k1.second, k2.second, cc * Scalar(s));
      // [r12, r23]
      for (auto [u, s] : unit_bracket(n, k1.second, k2.first)) accumulate(t, k1.first, u, k2.second, cc * Scalar(s));
      // [r13, r23]
      for (auto [u, s] : unit_bracket(n, k1.second, k2.second)) accumulate(t, k1.first, k2.first, u, cc * Scalar(s));
    }
  return t;
}

ResidualReport cdybe_residual(const ClassicalRMatrix& r) {
  Tensor3 t = cdybe_tensor(r);
  Collector c;
  c.input(r.coeffs);
  int total = r.n * r.n;
  ResidualReport rep = c.report("cdybe", r.family + " " + r.datum.name());
  rep.entries = total * total * total;
  if (!t.empty()) {
    auto& [k, x] = *t.begin();
    rep.zero = false;
    rep.nonzero = static_cast<int>(t.size());
    rep.witness_index = unit_label(r.n, std::get<0>(k)) + "x" + unit_label(r.n, std::get<1>(k)) + "x" +
                        unit_label(r.n, std::get<2>(k));
    rep.witness = x;
  }
  return rep;
}

ResidualReport hecke_check(const DynOp& R, const Scalar& q) {
  require(R.factors.size() == 2, ErrorKind::Precondition, "Hecke check needs V (x) V");
  int n = R.factors[0].dim();
  Matrix M = flip(n, n) * R.m;
  Collector c;
  c.input(R.m);
  // nothing may leave the blocks V_a (x) V_b + V_b (x) V_a
  for (int i = 0; i < n * n; ++i)
    for (int j = 0; j < n * n; ++j) {
      int a = i / n, b = i % n, x = j / n, y = j % n;
      bool same = (a == x && b == y) || (a == y && b == x);
      if (!same) c.add("outside" + pair_label(i, j), M(i, j));
    }
  for (int a = 0; a < n; ++a) c.add("PR-1 on V_a(x)V_a, a=" + std::to_string(a + 1), M(a * n + a, a * n + a) - Scalar(1));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int i = a * n + b, j = b * n + a;
      Scalar m11 = M(i, i), m12 = M(i, j), m21 = M(j, i), m22 = M(j, j);
      std::string tag = " block " + std::to_string(a + 1) + std::to_string(b + 1);
      // (B - 1)(B + q) entrywise
      c.add("quad11" + tag, (m11 - Scalar(1)) * (m11 + q) + m12 * m21);
      c.add("quad12" + tag, (m11 - Scalar(1)) * m12 + m12 * (m22 + q));
      c.add("quad21" + tag, m21 * (m11 + q) + (m22 - Scalar(1)) * m21);
      c.add("quad22" + tag, m21 * m12 + (m22 - Scalar(1)) * (m22 + q));
      c.add("trace" + tag, m11 + m22 - (Scalar(1) - q));
    }
  return c.report("hecke", R.factors[0].name() + " q=" + q.str());
}

ResidualReport unitarity_check(const ClassicalRMatrix& r) {
  Tensor2 res = add(add(r.coeffs, flip(r.coeffs)), r.omega, -r.coupling);
  Collector c;
  c.input(r.coeffs);
  ResidualReport rep = c.report("unitarity", r.family + " " + r.datum.name() + " eps=" + r.coupling.str());
  rep.entries = r.n * r.n * r.n * r.n;
  if (!res.empty()) {
    rep.zero = false;
    rep.nonzero = static_cast<int>(res.size());
    rep.witness_index = unit_label(r.n, res.begin()->first.first) + "x" + unit_label(r.n, res.begin()->first.second);
    rep.witness = res.begin()->second;
  }
  return rep;
}

ResidualReport cocycle_residual(const WeightModule& U, const WeightModule& W, const WeightModule& V,
                                FusionMethod method) {
  Mode m = U.mode();
  std::vector<WeightModule> mods{U, W, V};
  WeightModule uw = tensor(U, W), wv = tensor(W, V);
  Matrix j_uw_v = fusion(uw, V, method).m;
  Matrix j_u_wv = fusion(U, wv, method).m;
  Matrix j_uw = fusion(U, W, method).m;
  Matrix j_wv = fusion(W, V, method).m;
  Matrix lhs = j_uw_v * place(j_uw, m, mods, {0, 1}, {2});
  Matrix rhs = j_u_wv * place(j_wv, m, mods, {1, 2});
  return matrix_report("cocycle", mod_names(mods), lhs - rhs, {&j_uw_v, &j_u_wv});
}

ResidualReport inverse_unitarity(const DynOp& R) {
  int n = R.factors[0].dim();
  Matrix p = flip(n, n);
  Matrix res = R.m * (p * R.m * p) - Matrix::identity(n * n);
  return matrix_report("R R21 = 1", R.factors[0].name(), res, {&R.m});
}

void check_closed(const ClassicalRMatrix& r, const std::vector<std::vector<Scalar>>& c) {
  int k = static_cast<int>(r.frame.size());
  require(static_cast<int>(c.size()) == k, ErrorKind::InvalidGauge, "2-form size must match the dynamical frame");
  for (int i = 0; i < k; ++i) {
    require(static_cast<int>(c[i].size()) == k, ErrorKind::InvalidGauge, "2-form must be square");
    for (int j = 0; j < k; ++j)
      require(c[i][j] == -c[j][i], ErrorKind::InvalidGauge, "2-form must be antisymmetric");
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int l = j + 1; l < k; ++l) {
        Scalar d = r.frame[i].apply(c[j][l]) - r.frame[j].apply(c[i][l]) + r.frame[l].apply(c[i][j]);
        if (!d.is_zero()) fail(ErrorKind::InvalidGauge, "2-form is not closed");
      }
}

void check_closed_multiplicative(const std::vector<std::vector<Scalar>>& phi, Mode mode) {
  int n = static_cast<int>(phi.size());
  auto at = [&](int a, int b) { return a == b ? Scalar(1) : phi[a][b]; };
  auto omega = [&](int c) {
    std::vector<mpq_class> w(n);
    w[c] = 1;
    return w;
  };
  for (int a = 0; a < n; ++a) {
    require(static_cast<int>(phi[a].size()) == n, ErrorKind::InvalidGauge, "2-form must be square");
    for (int b = 0; b < n; ++b)
      if (a != b && !(phi[a][b] * phi[b][a]).is_one())
        fail(ErrorKind::InvalidGauge, "multiplicative 2-form needs phi_ab phi_ba = 1");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Scalar x = at(a, b) / shift_substitute(at(a, b), mode, omega(c)) * at(b, c) /
                   shift_substitute(at(b, c), mode, omega(a)) * at(c, a) / shift_substitute(at(c, a), mode, omega(b));
        if (!x.is_one()) fail(ErrorKind::InvalidGauge, "multiplicative 2-form is not closed");
      }
}

namespace {

bool standard(const ClassicalRMatrix& r) {
  if (static_cast<int>(r.frame.size()) != r.n) return false;
  for (int i = 0; i < r.n; ++i)
    for (int a = 0; a < r.n; ++a)
      if (r.frame[i].diag[a] != (a == i ? 1 : 0)) return false;
  return true;
}

Tensor2 map_coeffs(const Tensor2& t, const std::function<Scalar(const Scalar&)>& f) {
  Tensor2 out;
  for (auto& [k, c] : t) {
    Scalar x = f(c);
    if (!x.is_zero()) out[k] = x;
  }
  return out;
}

void check_perm(const std::vector<int>& s, int n) {
  require(static_cast<int>(s.size()) == n, ErrorKind::Precondition, "permutation size");
  std::vector<bool> seen(n, false);
  for (int x : s) {
    require(x >= 0 && x < n && !seen[x], ErrorKind::Precondition, "not a permutation");
    seen[x] = true;
  }
}

}  // namespace

ClassicalRMatrix gauge_classical(const ClassicalRMatrix& r, const Gauge& g) {
  ClassicalRMatrix out = r;
  int n = r.n, k = static_cast<int>(r.frame.size());
  if (g.kind == 1) {
    check_closed(r, g.form);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        if (g.form[i][j].is_zero()) continue;
        for (auto [p, x] : diag_units(n, r.frame[i].diag))
          for (auto [q, y] : diag_units(n, r.frame[j].diag)) {
            Scalar c = g.form[i][j] * x * y;
            out.coeffs = add(out.coeffs, Tensor2{{{p, q}, c}});
            out.coeffs = add(out.coeffs, Tensor2{{{q, p}, -c}});
          }
      }
    out.family += "+gauge1";
    return out;
  }
  if (g.kind == 2) {
    std::vector<std::pair<int, Scalar>> rules;
    for (int i = 0; i < k; ++i) {
      const auto& d = r.frame[i];
      if (d.rate.is_zero()) {
        require(static_cast<int>(g.nu.size()) == k, ErrorKind::Precondition, "shift size must match the frame");
        rules.push_back({d.var, Scalar::var(d.var) - Scalar(g.nu[i])});
      } else {
        require(static_cast<int>(g.scale.size()) == k, ErrorKind::Precondition, "scale size must match the frame");
        require(!g.scale[i].is_zero(), ErrorKind::Precondition, "zero scale");
        rules.push_back({d.var, g.scale[i] * Scalar::var(d.var)});
      }
    }
    out.coeffs = map_coeffs(r.coeffs, [&](const Scalar& x) { return substitute(x, rules); });
    out.family += "+gauge2";
    return out;
  }
  require(g.kind == 3, ErrorKind::Precondition, "gauge kind must be 1, 2 or 3");
  check_perm(g.sigma, n);
  std::vector<std::pair<int, Scalar>> rules;
  if (standard(r)) {
    for (int a = 0; a < n; ++a) rules.push_back({r.frame[a].var, Scalar::var(r.frame[g.sigma[a]].var)});
  } else {
    require(k == 1 && n == 2, ErrorKind::Unsupported, "Weyl gauge needs the standard frame");
    if (g.sigma[0] == 1) {
      const auto& d = r.frame[0];
      rules.push_back({d.var, d.rate.is_zero() ? -Scalar::var(d.var) : Scalar::var(d.var).inverse()});
    }
  }
  Tensor2 t;
  for (auto& [key, c] : r.coeffs) {
    int p = g.sigma[key.first / n] * n + g.sigma[key.first % n];
    int q = g.sigma[key.second / n] * n + g.sigma[key.second % n];
    t[{p, q}] = rules.empty() ? c : substitute(c, rules);
  }
  out.coeffs = t;
  out.family += "+gauge3";
  return out;
}

DynOp gauge_quantum(const DynOp& R, const Gauge& g) {
  int n = R.factors[0].dim();
  DynOp out = R;
  if (g.kind == 1) {
    require(static_cast<int>(g.form.size()) == n, ErrorKind::InvalidGauge, "2-form size");
    check_closed_multiplicative(g.form, R.mode);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (a != b) out.m(a * n + b, a * n + b) *= g.form[a][b];
    return out;
  }
  if (g.kind == 2) {
    out.m = shift_matrix(R.m, R.mode, g.nu);
    return out;
  }
  require(g.kind == 3, ErrorKind::Precondition, "gauge kind must be 1, 2 or 3");
  check_perm(g.sigma, n);
  std::vector<std::pair<int, Scalar>> rules;
  for (int a = 0; a < n; ++a) {
    int from = R.mode == Mode::Classical ? vars::l(a + 1) : vars::t(a + 1);
    int to = R.mode == Mode::Classical ? vars::l(g.sigma[a] + 1) : vars::t(g.sigma[a] + 1);
    rules.push_back({from, Scalar::var(to)});
  }
  Matrix m(n * n, n * n);
  for (int i = 0; i < n * n; ++i)
    for (int j = 0; j < n * n; ++j) {
      if (R.m(i, j).is_zero()) continue;
      int si = g.sigma[i / n] * n + g.sigma[i % n], sj = g.sigma[j / n] * n + g.sigma[j % n];
      m(si, sj) = substitute(R.m(i, j), rules);
    }
  out.m = m;
  return out;
}

bool HeckeRep::ok() const {
  for (auto& r : relations)
    if (!r.ok()) return false;
  return true;
}

HeckeRep dynamical_hecke_rep(const DynOp& R, int p, const Scalar& q, BraidShift shift) {
  require(p >= 2, ErrorKind::Precondition, "p >= 2");
  const WeightModule& V = R.factors[0];
  int d = V.dim();
  std::vector<WeightModule> mods(p, V);
  HeckeRep rep;
  Matrix pf = flip(d, d);
  for (int i = 0; i + 1 < p; ++i) {
    std::vector<int> sh;
    if (shift == BraidShift::Preceding)
      for (int k = 0; k < i; ++k) sh.push_back(k);
    else
      for (int k = i + 2; k < p; ++k) sh.push_back(k);
    rep.generators.push_back(place(pf, R.mode, mods, {i, i + 1}) * place(R.m, R.mode, mods, {i, i + 1}, sh));
  }
  int dim = rep.generators[0].rows();
  Matrix id = Matrix::identity(dim);
  std::string ops = V.name() + " p=" + std::to_string(p);
  for (int i = 0; i + 1 < p; ++i) {
    const Matrix& g = rep.generators[i];
    rep.relations.push_back(
        matrix_report("quadratic " + std::to_string(i + 1), ops, (g - id) * (g + id * q), {&g}));
  }
  for (int i = 0; i + 2 < p; ++i) {
    const Matrix &a = rep.generators[i], &b = rep.generators[i + 1];
    rep.relations.push_back(
        matrix_report("braid " + std::to_string(i + 1), ops, a * b * a - b * a * b, {&a, &b}));
  }
  for (int i = 0; i + 1 < p; ++i)
    for (int j = i + 2; j + 1 < p; ++j) {
      const Matrix &a = rep.generators[i], &b = rep.generators[j];
      rep.relations.push_back(matrix_report("locality " + std::to_string(i + 1) + "," + std::to_string(j + 1), ops,
                                            a * b - b * a, {&a, &b}));
    }
  return rep;
}

DynOp perturb(const DynOp& R, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<std::pair<int, int>> spots;
  for (int i = 0; i < R.dim(); ++i)
    for (int j = 0; j < R.dim(); ++j)
      if (R.weight(i) == R.weight(j)) spots.push_back({i, j});
  auto [i, j] = spots[rng() % spots.size()];
  Scalar var = R.mode == Mode::Classical ? lam(1) : tq(1);
  DynOp out = R;
  out.m(i, j) += var * Scalar(static_cast<long>(1 + rng() % 5));
  return out;
}

ClassicalRMatrix perturb(const ClassicalRMatrix& r, unsigned seed) {
  std::mt19937 rng(seed);
  const auto& roots = r.datum.positive_roots();
  const auto& a = roots[rng() % roots.size()];
  ClassicalRMatrix out = r;
  Scalar var = Scalar::var(r.frame[0].var);
  out.coeffs = add(out.coeffs, Tensor2{{{a.a * r.n + a.b, a.b * r.n + a.a}, var * Scalar(static_cast<long>(1 + rng() % 5))}});
  out.family += "+perturbed";
  return out;
}

}  // namespace dyb
