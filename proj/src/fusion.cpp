#include "dyb/fusion.hpp"

#include <map>

#include "dyb/error.hpp"

namespace dyb {

std::vector<int> DynOp::dims() const {
  std::vector<int> d;
  for (auto& f : factors) d.push_back(f.dim());
  return d;
}

std::vector<int> DynOp::digits(int idx) const {
  int k = static_cast<int>(factors.size());
  std::vector<int> out(k);
  for (int i = k - 1; i >= 0; --i) {
    out[i] = idx % factors[i].dim();
    idx /= factors[i].dim();
  }
  return out;
}

Weight DynOp::weight(int idx) const {
  auto dg = digits(idx);
  Weight w = factors[0].datum().zero();
  for (std::size_t i = 0; i < factors.size(); ++i) w = w + factors[i].weight(dg[i]);
  return w;
}

bool DynOp::is_weight_zero() const {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && weight(r) != weight(c)) return false;
  return true;
}

Matrix shift_matrix(const Matrix& m, Mode mode, const Weight& mu) {
  bool zero = true;
  for (auto& x : mu) zero = zero && x == 0;
  if (zero) return m;
  return m.map([&](const Scalar& x) { return shift_substitute(x, mode, mu); });
}

Matrix place(const Matrix& op, Mode mode, const std::vector<WeightModule>& mods, const std::vector<int>& slots,
             const std::vector<int>& shift_slots) {
  int k = static_cast<int>(mods.size());
  std::vector<int> stride(k);
  int total = 1;
  for (int i = k - 1; i >= 0; --i) {
    stride[i] = total;
    total *= mods[i].dim();
  }
  int sub = 1;
  for (int s : slots) sub *= mods[s].dim();
  require(op.rows() == sub && op.cols() == sub, ErrorKind::ShapeMismatch, "place: operator size");
  std::map<Weight, Matrix> cache;
  Matrix out(total, total);
  for (int col = 0; col < total; ++col) {
    int sc = 0, base = col;
    for (int s : slots) {
      int dgt = col / stride[s] % mods[s].dim();
      sc = sc * mods[s].dim() + dgt;
      base -= dgt * stride[s];
    }
    Weight mu = mods[0].datum().zero();
    for (int s : shift_slots) mu = mu + mods[s].weight(col / stride[s] % mods[s].dim());
    auto it = cache.find(mu);
    if (it == cache.end()) it = cache.emplace(mu, shift_matrix(op, mode, mu)).first;
    const Matrix& m = it->second;
    for (int r = 0; r < sub; ++r) {
      const Scalar& x = m(r, sc);
      if (x.is_zero()) continue;
      int row = base, rem = r;
      for (int j = static_cast<int>(slots.size()) - 1; j >= 0; --j) {
        int s = slots[j];
        row += rem % mods[s].dim() * stride[s];
        rem /= mods[s].dim();
      }
      out(row, col) = x;
    }
  }
  return out;
}

DynOp fusion_exchange(const WeightModule& W, const WeightModule& V) {
  int dw = W.dim(), dv = V.dim();
  Matrix j(dw * dv, dw * dv);
  for (int v = 0; v < dv; ++v) {
    Intertwiner phi = solve_intertwiner(V, v, V.datum().zero());
    for (int w = 0; w < dw; ++w) {
      auto col = expectation_value(phi, W, w);
      for (int r = 0; r < dw * dv; ++r) j(r, w * dv + v) = col[r];
    }
  }
  return DynOp{{W, V}, W.mode(), j};
}

Matrix lowering_raising(const WeightModule& W, const WeightModule& V) {
  Matrix f(W.dim() * V.dim(), W.dim() * V.dim());
  for (auto& a : W.datum().positive_roots()) f += kron(W.gl_unit(a.b, a.a), V.gl_unit(a.a, a.b));
  return f;
}

DynOp abrr_fusion(const WeightModule& W, const WeightModule& V) {
  const RootDatum& d = V.datum();
  int dw = W.dim(), dv = V.dim(), n = dw * dv;
  Matrix id = Matrix::identity(n);
  Matrix step;
  std::vector<Scalar> diag(n);
  if (V.mode() == Mode::Classical) {
    step = lowering_raising(W, V);
    for (int i = 0; i < n; ++i) diag[i] = d.theta(V.weight(i % dv));
  } else {
    Matrix r0 = strip_cartan(constant_R(V, W));
    Matrix r0_21 = flip(dv, dw) * r0 * flip(dw, dv);
    step = unipotent_inverse(r0_21) - id;
    for (int i = 0; i < n; ++i) diag[i] = d.q2theta(V.weight(i % dv));
  }
  // classical: N[o,i] (theta_i - theta_o) = (F (1 + N))[o,i]
  // quantum:   N[o,i] (d_o / d_i - 1)     = ((A - 1)(1 + N))[o,i]
  Matrix nmat(n, n);
  for (int iter = 0; iter <= n + 1; ++iter) {
    Matrix rhs = step * (id + nmat);
    Matrix next(n, n);
    for (int o = 0; o < n; ++o)
      for (int i = 0; i < n; ++i) {
        if (rhs(o, i).is_zero()) continue;
        Scalar den = V.mode() == Mode::Classical ? diag[i] - diag[o] : diag[o] / diag[i] - Scalar(1);
        if (den.is_zero()) fail(ErrorKind::Convention, "ABRR recursion hit a resonant weight pair");
        next(o, i) = rhs(o, i) / den;
      }
    if (next == nmat) return DynOp{{W, V}, V.mode(), id + nmat};
    nmat = next;
  }
  fail(ErrorKind::Convention, "ABRR recursion did not stabilize");
}

DynOp fusion(const WeightModule& W, const WeightModule& V, FusionMethod method) {
  return method == FusionMethod::Exchange ? fusion_exchange(W, V) : abrr_fusion(W, V);
}

DynOp exchange_matrix(const WeightModule& V, const WeightModule& W, FusionMethod method) {
  int dv = V.dim(), dw = W.dim();
  Matrix jvw = fusion(V, W, method).m;
  Matrix jwv = fusion(W, V, method).m;
  Matrix mid = V.mode() == Mode::Quantum ? constant_R(W, V) * jwv : jwv;
  Matrix r = unipotent_inverse(jvw) * flip(dw, dv) * mid * flip(dv, dw);
  return DynOp{{V, W}, V.mode(), r};
}

DynOp sl2_normalized(const DynOp& R) {
  require(R.factors.size() == 2 && R.factors[0].datum().coords() == 1, ErrorKind::Precondition,
          "sl2 normalization needs an sl2 operator on two factors");
  DynOp out = R;
  if (R.mode == Mode::Classical) return out;
  const WeightModule &a = R.factors[0], &b = R.factors[1];
  for (int i = 0; i < out.dim(); ++i) {
    auto d = out.digits(i);
    Scalar c = qpow(mpq_class(-a.charge(d[0]) * b.charge(d[1]), 2));
    for (int j = 0; j < out.dim(); ++j)
      if (!out.m(j, i).is_zero()) out.m(j, i) *= c;
  }
  return out;
}

namespace {

Scalar uvar(int i) { return Scalar::var(vars::u(i)); }

}  // namespace

std::vector<UniversalTerm> universal_sl2_fusion(int depth, Mode mode) {
  require(depth >= 0, ErrorKind::Precondition, "depth must be nonnegative");
  std::vector<UniversalTerm> out{{0, Scalar(1)}};
  if (mode == Mode::Classical) {
    Scalar lam1 = lam(1), h2 = uvar(2);
    for (int n = 1; n <= depth; ++n) {
      Scalar c(mpq_class(n % 2 ? -1 : 1));
      for (int k = 1; k <= n; ++k) c /= Scalar(k);
      // h acts after e^n, on weight m_2 + 2n
      for (int k = n + 1; k <= 2 * n; ++k) c /= lam1 - (h2 + Scalar(2 * n)) + Scalar(k);
      out.push_back({n, c});
    }
    return out;
  }
  Scalar q = qpow(1), t = tq(1), u1 = uvar(1), u2 = uvar(2);
  std::vector<Scalar> ck{Scalar(1)};
  for (int k = 1; k <= depth; ++k) ck.push_back(ck.back() * qpow(k - 1) * (q - q.inverse()) / qint(k));
  // X_n = q^{2 theta(m_2 + 2n) - 2 theta(m_2)}
  auto x = [&](int n) { return t.pow(2 * n) * qpow(2 * n - 2 * n * n) * u2.pow(-2 * n); };
  for (int big = 1; big <= depth; ++big) {
    Scalar acc;
    for (int n = 0; n < big; ++n) {
      int k = big - n;
      acc += out[n].coeff * ck[k] * x(n) * u1.pow(k) * u2.pow(-k) * qpow(-4 * n * k - 2 * k * k);
    }
    out.push_back({big, acc / (Scalar(1) - x(big))});
  }
  return out;
}

Scalar universal_coeff(const UniversalTerm& t, Mode mode, const mpq_class& m1, const mpq_class& m2) {
  if (mode == Mode::Classical) return substitute(t.coeff, {{vars::u(1), Scalar(m1)}, {vars::u(2), Scalar(m2)}});
  mpq_class e1 = 2 * m1, e2 = 2 * m2;
  require(e1.get_den() == 1 && e2.get_den() == 1, ErrorKind::Precondition, "half-integral sl2 weights");
  return monomial_substitute(t.coeff, {{vars::u(1), {{vars::s(), static_cast<int>(e1.get_num().get_si())}}},
                                       {vars::u(2), {{vars::s(), static_cast<int>(e2.get_num().get_si())}}}});
}

DynOp evaluate_universal(const std::vector<UniversalTerm>& terms, const WeightModule& W, const WeightModule& V) {
  require(W.datum().coords() == 1, ErrorKind::Precondition, "universal fusion is for sl2");
  int dw = W.dim(), dv = V.dim();
  Matrix j(dw * dv, dw * dv);
  Matrix fn = Matrix::identity(dw), en = Matrix::identity(dv);
  for (auto& t : terms) {
    if (t.n > 0) {
      fn = fn * W.f(0);
      en = en * V.e(0);
    }
    Matrix k = kron(fn, en);
    if (k.is_zero()) break;
    std::vector<Scalar> phi;
    for (int w = 0; w < dw; ++w)
      for (int v = 0; v < dv; ++v) phi.push_back(universal_coeff(t, W.mode(), W.weight(w)[0], V.weight(v)[0]));
    j += k * Matrix::diagonal(phi);
  }
  return DynOp{{W, V}, W.mode(), j};
}

std::vector<Matrix> classical_limit(const DynOp& op, int order) {
  int n = op.dim();
  std::vector<Matrix> out(order + 1, Matrix(n, n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (op.m(r, c).is_zero()) continue;
      GammaSeries g = gamma_expand(op.m(r, c), order, op.mode);
      for (int k = 0; k <= order; ++k) out[k](r, c) = g[k];
    }
  return out;
}

ShapovalovReport shapovalov_vs_fusion(Mode mode, int depth) {
  RootDatum d = RootDatum::sl(2);
  VermaSlice slice(d, mode, d.zero(), depth);
  auto terms = universal_sl2_fusion(depth, mode);
  ShapovalovReport rep{mode, depth, {}, {}};
  for (int n = 0; n <= depth; ++n) {
    Weight beta{mpq_class(2 * n)};
    Scalar g = slice.gram(beta)(0, 0);
    rep.inverse_form.push_back(Scalar(n % 2 ? -1 : 1) / g);
    // lambda = 0; the factors have weights L and -L, with L the slice's symbolic weight
    Scalar phi;
    if (mode == Mode::Classical) {
      phi = substitute(terms[n].coeff, {{vars::l(1), Scalar(0)}, {vars::u(1), lam(1)}, {vars::u(2), -lam(1)}});
    } else {
      phi = monomial_substitute(terms[n].coeff,
                                {{vars::t(1), {}}, {vars::u(1), {{vars::t(1), 1}}}, {vars::u(2), {{vars::t(1), -1}}}});
    }
    rep.fusion_at_zero.push_back(phi);
  }
  return rep;
}

}  // namespace dyb
