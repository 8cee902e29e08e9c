#include "dyb/macdonald.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dyb/error.hpp"

namespace dyb {

DiffOp DiffOp::identity(const ShiftFrame& frame, int dim) {
  DiffOp d(frame, dim);
  d.add(Weight(frame.size(), 0), Matrix::identity(dim));
  return d;
}

DiffOp DiffOp::scalar(const ShiftFrame& frame, const Scalar& c) {
  DiffOp d(frame, 1);
  d.add(Weight(frame.size(), 0), c);
  return d;
}

void DiffOp::add(const Weight& nu, const Matrix& c) {
  require(c.rows() == dim_ && c.cols() == dim_, ErrorKind::ShapeMismatch, "difference operator coefficient");
  require(static_cast<int>(nu.size()) == frame_.size(), ErrorKind::ShapeMismatch, "shift length");
  auto it = terms_.find(nu);
  Matrix v = it == terms_.end() ? c : it->second + c;
  if (v.is_zero()) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[nu] = v;
  }
}

void DiffOp::add(const Weight& nu, const Scalar& c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  add(nu, m);
}

Scalar DiffOp::coeff(const Weight& nu) const {
  require(dim_ == 1, ErrorKind::Precondition, "scalar coefficient of a matrix operator");
  auto it = terms_.find(nu);
  return it == terms_.end() ? Scalar() : it->second(0, 0);
}

DiffOp DiffOp::operator*(const DiffOp& o) const {
  require(dim_ == o.dim_, ErrorKind::ShapeMismatch, "difference operator composition");
  DiffOp out(frame_, dim_);
  for (auto& [nu, a] : terms_)
    for (auto& [mu, b] : o.terms_) {
      Matrix sb = b.map([&](const Scalar& x) { return shift(x, frame_, nu); });
      out.add(nu + mu, a * sb);
    }
  return out;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
  DiffOp out = *this;
  for (auto& [nu, b] : o.terms_) out.add(nu, b);
  return out;
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + o * Scalar(-1); }

DiffOp DiffOp::operator*(const Scalar& c) const {
  DiffOp out(frame_, dim_);
  if (c.is_zero()) return out;
  for (auto& [nu, a] : terms_) out.add(nu, a * c);
  return out;
}

Scalar DiffOp::apply(const Scalar& f) const {
  require(dim_ == 1, ErrorKind::Precondition, "scalar application of a matrix operator");
  Scalar out;
  for (auto& [nu, a] : terms_) out += a(0, 0) * shift(f, frame_, nu);
  return out;
}

DiffOp DiffOp::conjugate(const Scalar& phi) const {
  DiffOp out(frame_, dim_);
  for (auto& [nu, a] : terms_) out.add(nu, a * (phi / shift(phi, frame_, nu)));
  return out;
}

DiffOp DiffOp::map(const std::function<Scalar(const Scalar&)>& f, int shift_sign) const {
  DiffOp out(frame_, dim_);
  for (auto& [nu, a] : terms_) out.add(mpq_class(shift_sign) * nu, a.map(f));
  return out;
}

std::string DiffOp::str() const {
  std::ostringstream o;
  bool first = true;
  for (auto& [nu, a] : terms_) {
    if (!first) o << " + ";
    first = false;
    o << "[";
    if (dim_ == 1) {
      o << a(0, 0).str();
    } else {
      for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) o << (i || j ? ", " : "") << a(i, j).str();
    }
    o << "] T" << weight_str(nu);
  }
  return first ? "0" : o.str();
}

DiffOp transfer_diffop(const WeightModule& V, const WeightModule& W, FusionMethod method) {
  const RootDatum& d = V.datum();
  ShiftFrame frame = d.frame(V.mode());
  auto zero = V.weight_space(d.zero());
  int d0 = static_cast<int>(zero.size());
  DynOp r = exchange_matrix(W, V, method);
  if (d.coords() == 1) r = sl2_normalized(r);
  int dv = V.dim();
  DiffOp out(frame, d0);
  std::vector<Weight> seen;
  for (int w = 0; w < W.dim(); ++w) {
    const Weight& nu = W.weight(w);
    if (std::find(seen.begin(), seen.end(), nu) != seen.end()) continue;
    seen.push_back(nu);
    Matrix c(d0, d0);
    for (int w2 : W.weight_space(nu))
      for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d0; ++j) {
          const Scalar& x = r.m(w2 * dv + zero[i], w2 * dv + zero[j]);
          if (!x.is_zero()) c(i, j) += reflect(x, frame, d.rho());
        }
    out.add(nu, c);
  }
  return out;
}

MacdonaldFrame MacdonaldFrame::polynomial(int n) {
  MacdonaldFrame f;
  f.frame.kind = ShiftFrame::Kind::Multiplicative;
  f.frame.base = vars::q();
  f.frame.factor = 2;
  for (int i = 1; i <= n; ++i) {
    f.frame.coord_vars.push_back(vars::x(i));
    f.x.push_back(Scalar::var(vars::x(i)));
  }
  f.q = Scalar::var(vars::q());
  return f;
}

MacdonaldFrame MacdonaldFrame::quantum(int n) {
  MacdonaldFrame f;
  f.frame = ShiftFrame::quantum(n);
  for (int i = 1; i <= n; ++i) f.x.push_back(tq(i).pow(2));
  f.q = qpow(1);
  return f;
}

MacdonaldFrame MacdonaldFrame::quantum_sl2() {
  MacdonaldFrame f;
  f.frame = ShiftFrame::quantum(1);
  f.x = {tq(1).pow(2), Scalar(1)};
  f.q = qpow(1);
  return f;
}

namespace {

// shift of T_I in the frame
Weight subset_shift(const MacdonaldFrame& f, const std::vector<int>& in) {
  int n = static_cast<int>(in.size());
  if (f.frame.size() == n) {
    Weight w(n, 0);
    for (int i = 0; i < n; ++i) w[i] = in[i];
    return w;
  }
  // sl_2 coordinate lambda_1 - lambda_2
  return Weight{mpq_class(in[0] - in[1])};
}

std::vector<std::vector<int>> subsets_of_size(int n, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> in(n, 0);
  std::fill(in.end() - r, in.end(), 1);
  do out.push_back(in);
  while (std::next_permutation(in.begin(), in.end()));
  return out;
}

}  // namespace

DiffOp macdonald_operator(const MacdonaldFrame& f, int n, int r, const Scalar& t) {
  require(static_cast<int>(f.x.size()) == n, ErrorKind::Precondition, "frame size");
  require(r >= 0 && r <= n, ErrorKind::Precondition, "0 <= r <= n");
  DiffOp out(f.frame, 1);
  Scalar ti = t.inverse();
  for (auto& in : subsets_of_size(n, r)) {
    Scalar c(1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (in[i] && !in[j]) c *= (t * f.x[i] - ti * f.x[j]) / (f.x[i] - f.x[j]);
    out.add(subset_shift(f, in), c);
  }
  return out;
}

Scalar macdonald_eigenvalue(const MacdonaldFrame& f, const std::vector<int>& mu, int r, const Scalar& t) {
  int n = static_cast<int>(mu.size());
  Scalar out;
  for (auto& in : subsets_of_size(n, r)) {
    Scalar p(1);
    for (int i = 0; i < n; ++i)
      if (in[i]) p *= f.q.pow(2 * mu[i]) * t.pow(n - 1 - 2 * i);
    out += p;
  }
  return out;
}

std::vector<std::vector<int>> partitions(int k, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (static_cast<int>(cur.size()) == n) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 0; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

namespace {

Scalar x_monomial(const std::vector<int>& e) {
  Scalar m(1);
  for (std::size_t i = 0; i < e.size(); ++i) m *= Scalar::var(vars::x(static_cast<int>(i) + 1)).pow(e[i]);
  return m;
}

Scalar monomial_symmetric(const std::vector<int>& nu) {
  std::vector<int> e = nu;
  std::sort(e.begin(), e.end());
  Scalar out;
  do out += x_monomial(e);
  while (std::next_permutation(e.begin(), e.end()));
  return out;
}

bool dominated(const std::vector<int>& a, const std::vector<int>& b) {
  int sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (sa > sb) return false;
  }
  return true;
}

// coefficient of x^e in a polynomial in the x variables
Scalar x_coefficient(const Scalar& p, const std::vector<int>& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    require(p.den().degree_in(vars::x(static_cast<int>(i) + 1)) == 0, ErrorKind::Precondition,
            "not a polynomial in x");
  std::vector<Term> keep;
  for (auto& t : p.num().terms()) {
    bool match = true;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (t.m[vars::x(static_cast<int>(i) + 1)] != e[i]) match = false;
    if (!match) continue;
    Monomial m = t.m;
    for (std::size_t i = 0; i < e.size(); ++i) m.set(vars::x(static_cast<int>(i) + 1), 0);
    keep.push_back({m, t.c});
  }
  return Scalar::fraction(Polynomial::from_terms(keep), p.den());
}

}  // namespace

Scalar macdonald_polynomial(int n, const std::vector<int>& mu, const Scalar& t) {
  require(static_cast<int>(mu.size()) == n, ErrorKind::Precondition, "partition length must be n");
  for (int i = 0; i + 1 < n; ++i) require(mu[i] >= mu[i + 1], ErrorKind::Precondition, "mu must be dominant");
  require(mu.back() >= 0, ErrorKind::Precondition, "mu must be a partition");
  int k = std::accumulate(mu.begin(), mu.end(), 0);
  std::vector<std::vector<int>> lower;
  for (auto& nu : partitions(k, n))
    if (nu != mu && dominated(nu, mu)) lower.push_back(nu);
  MacdonaldFrame f = MacdonaldFrame::polynomial(n);
  DiffOp m1 = macdonald_operator(f, n, 1, t);
  Scalar ev = macdonald_eigenvalue(f, mu, 1, t);
  auto residual = [&](const Scalar& p) { return m1.apply(p) - ev * p; };
  if (lower.empty()) return monomial_symmetric(mu);
  // (M_1 - ev) (m_mu + sum c_nu m_nu) = 0 read off on the dominant monomials
  int u = static_cast<int>(lower.size());
  std::vector<Scalar> images;
  for (auto& nu : lower) images.push_back(residual(monomial_symmetric(nu)));
  Scalar top = residual(monomial_symmetric(mu));
  std::vector<std::vector<int>> rows = lower;
  rows.push_back(mu);
  Matrix a(static_cast<int>(rows.size()), u);
  std::vector<Scalar> b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int j = 0; j < u; ++j) a(static_cast<int>(i), j) = x_coefficient(images[j], rows[i]);
    b[i] = -x_coefficient(top, rows[i]);
  }
  auto c = solve(a, b);
  Scalar p = monomial_symmetric(mu);
  for (int j = 0; j < u; ++j) p += c[j] * monomial_symmetric(lower[j]);
  return p;
}

Scalar schur_polynomial(int n, const std::vector<int>& mu) {
  Matrix num(n, n), den(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar x = Scalar::var(vars::x(i + 1));
      num(i, j) = x.pow(mu[j] + n - 1 - j);
      den(i, j) = x.pow(n - 1 - j);
    }
  return determinant(num) / determinant(den);
}

std::vector<Scalar> laurent_monomials(int n, int d) {
  std::vector<Scalar> out;
  std::vector<int> e(n, -d);
  while (true) {
    int tot = 0;
    for (int x : e) tot += std::abs(x);
    if (tot <= d) out.push_back(x_monomial(e));
    int i = 0;
    while (i < n && e[i] == d) e[i++] = -d;
    if (i == n) break;
    ++e[i];
  }
  return out;
}

Scalar weyl_denominator_sl2() {
  Scalar t = tq(1);
  return t.inverse() * (Scalar(1) - t.pow(-2));
}

Scalar symmetric_weyl_denominator_sl2() {
  Scalar t = tq(1);
  return t - t.inverse();
}

Scalar gamma_m_sl2(int m) {
  Scalar t = tq(1), out(1);
  for (int i = 1; i <= m; ++i) out *= t - qpow(2 * i) * t.inverse();
  return out;
}

ConjugationCheck conjugation_check(int m, bool asymmetric_weyl_denominator) {
  require(m >= 0, ErrorKind::Precondition, "m >= 0");
  RootDatum d = RootDatum::sl(2);
  WeightModule w = WeightModule::vector(d, Mode::Quantum);
  WeightModule v = m == 0 ? WeightModule::trivial(d, Mode::Quantum) : sym_power(d, Mode::Quantum, 2 * m);
  DiffOp dw = transfer_diffop(v, w);
  require(dw.dim() == 1, ErrorKind::Precondition, "zero weight space must be one-dimensional");
  // q -> q^{-1}, lambda -> -lambda: t1 = q^lambda is fixed, s -> 1/s, T_nu -> T_{-nu}
  int s = vars::s();
  DiffOp lhs = dw.map([&](const Scalar& x) { return monomial_substitute(x, {{s, {{s, -1}}}}); }, -1);
  MacdonaldFrame f = MacdonaldFrame::quantum_sl2();
  DiffOp mr = macdonald_operator(f, 2, 1, qpow(m + 1));
  Scalar phi = (asymmetric_weyl_denominator ? weyl_denominator_sl2() : symmetric_weyl_denominator_sl2()) * gamma_m_sl2(m);
  DiffOp rhs = mr.conjugate(phi);
  DiffOp diff = lhs - rhs;
  ResidualReport rep;
  rep.equation = "transfer = conjugated Macdonald";
  rep.operands = "n=2 r=1 m=" + std::to_string(m) + (asymmetric_weyl_denominator ? " asymmetric-delta" : "");
  rep.entries = static_cast<int>(lhs.terms().size() + rhs.terms().size());
  for (auto& [nu, a] : diff.terms()) {
    if (rep.zero) {
      rep.zero = false;
      rep.witness_index = "T" + weight_str(nu);
      rep.witness = a(0, 0);
    }
    ++rep.nonzero;
  }
  return {lhs, rhs, rep};
}

}  // namespace dyb
