#include "dyb/module.hpp"

#include <map>

#include "dyb/error.hpp"

namespace dyb {

Scalar qint(long m) { return qint_from_power(qpow(m)); }

WeightModule::WeightModule(RootDatum datum, Mode mode, std::string name, std::vector<Weight> weights,
                           std::vector<int> charges)
    : datum_(std::move(datum)), mode_(mode), name_(std::move(name)), weights_(std::move(weights)),
      charges_(std::move(charges)) {
  require(charges_.size() == weights_.size(), ErrorKind::ShapeMismatch, "charges");
  for (auto& w : weights_) require(static_cast<int>(w.size()) == datum_.coords(), ErrorKind::ShapeMismatch, "weight length");
  for (int i = 0; i < datum_.rank(); ++i) {
    e_.emplace_back(dim(), dim());
    f_.emplace_back(dim(), dim());
  }
}

WeightModule WeightModule::vector(const RootDatum& d, Mode mode) {
  int n = d.n();
  std::vector<Weight> ws;
  for (int a = 0; a < n; ++a) ws.push_back(d.vector_weight(a));
  WeightModule m(d, mode, "V", ws, std::vector<int>(n, 1));
  for (int i = 0; i + 1 < n; ++i) {
    m.e_[i](i, i + 1) = Scalar(1);
    m.f_[i](i + 1, i) = Scalar(1);
  }
  m.set_embedding(1, Matrix::identity(n), Matrix::identity(n));
  return m;
}

WeightModule WeightModule::trivial(const RootDatum& d, Mode mode) {
  WeightModule m(d, mode, "C", {d.zero()}, {0});
  m.set_embedding(0, Matrix::identity(1), Matrix::identity(1));
  return m;
}

void WeightModule::set_embedding(int degree, Matrix embed, Matrix proj) {
  degree_ = degree;
  embed_ = std::move(embed);
  proj_ = std::move(proj);
}

Matrix WeightModule::k_power(int i, int p) const {
  std::vector<Scalar> d;
  for (auto& w : weights_) {
    if (mode_ == Mode::Classical)
      d.emplace_back(1);
    else
      d.push_back(qpow(p * datum_.form(datum_.simple_roots()[i], w)));
  }
  return Matrix::diagonal(d);
}

Matrix WeightModule::bracket_value(int i) const {
  std::vector<Scalar> d;
  for (auto& w : weights_) {
    mpq_class h = datum_.form(datum_.simple_roots()[i], w);
    d.push_back(mode_ == Mode::Classical ? Scalar(h) : qint(h.get_num().get_si()));
  }
  return Matrix::diagonal(d);
}

Matrix WeightModule::gl_unit(int a, int b) const {
  require(mode_ == Mode::Classical, ErrorKind::Precondition, "gl_unit is a classical action");
  if (datum_.coords() == 1) {
    if (a == 0 && b == 1) return e_[0];
    if (a == 1 && b == 0) return f_[0];
    std::vector<Scalar> d;
    for (int i = 0; i < dim(); ++i) {
      mpq_class h = weights_[i][0];
      d.emplace_back(mpq_class((charges_[i] + (a == 0 ? h : -h)) / 2));
    }
    return Matrix::diagonal(d);
  }
  if (a == b) {
    std::vector<Scalar> d;
    for (auto& w : weights_) d.emplace_back(w[a]);
    return Matrix::diagonal(d);
  }
  if (b == a + 1) return e_[a];
  if (a == b + 1) return f_[b];
  if (a < b) return commutator(gl_unit(a, b - 1), e_[b - 1]);
  return commutator(f_[a - 1], gl_unit(a - 1, b));
}

std::vector<int> WeightModule::weight_space(const Weight& w) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (weights_[i] == w) out.push_back(i);
  return out;
}

WeightModule tensor(const WeightModule& a, const WeightModule& b) {
  require(a.datum() == b.datum() && a.mode() == b.mode(), ErrorKind::ShapeMismatch, "tensor of incompatible modules");
  std::vector<Weight> ws;
  std::vector<int> cs;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) {
      ws.push_back(a.weight(i) + b.weight(j));
      cs.push_back(a.charge(i) + b.charge(j));
    }
  WeightModule m(a.datum(), a.mode(), a.name() + "*" + b.name(), ws, cs);
  Matrix ia = Matrix::identity(a.dim()), ib = Matrix::identity(b.dim());
  for (int i = 0; i < a.datum().rank(); ++i) {
    if (a.mode() == Mode::Classical) {
      m.e(i) = kron(a.e(i), ib) + kron(ia, b.e(i));
      m.f(i) = kron(a.f(i), ib) + kron(ia, b.f(i));
    } else {
      m.e(i) = kron(a.e(i), b.k_power(i, 1)) + kron(ia, b.e(i));
      m.f(i) = kron(a.f(i), ib) + kron(a.k_power(i, -1), b.f(i));
    }
  }
  if (a.has_embedding() && b.has_embedding())
    m.set_embedding(a.degree() + b.degree(), kron(a.embedding(), b.embedding()), kron(a.projection(), b.projection()));
  return m;
}

WeightModule tensor_power(const WeightModule& v, int m) {
  if (m == 0) return WeightModule::trivial(v.datum(), v.mode());
  WeightModule r = v;
  for (int k = 1; k < m; ++k) r = tensor(r, v);
  return r;
}

namespace {

Matrix vector_R(const RootDatum& d) {
  int n = d.n();
  Matrix r(n * n, n * n);
  Scalar q = qpow(1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) r(a * n + b, a * n + b) = a == b ? q : Scalar(1);
  Scalar c = q - q.inverse();
  // E_ab (x) E_ba maps e_b (x) e_a to e_a (x) e_b
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) r(a * n + b, b * n + a) = c;
  return r;
}

// Operator on V^{(x) m} acting by r on the ordered slots (i, j).
Matrix two_site(const Matrix& r, int n, int m, int i, int j) {
  int total = 1;
  for (int k = 0; k < m; ++k) total *= n;
  std::vector<int> stride(m);
  int s = 1;
  for (int k = m - 1; k >= 0; --k) {
    stride[k] = s;
    s *= n;
  }
  Matrix out(total, total);
  for (int col = 0; col < total; ++col) {
    int ci = col / stride[i] % n, cj = col / stride[j] % n;
    int base = col - ci * stride[i] - cj * stride[j];
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const Scalar& x = r(p * n + q, ci * n + cj);
        if (!x.is_zero()) out(base + p * stride[i] + q * stride[j], col) = x;
      }
  }
  return out;
}

Matrix R_power(const RootDatum& d, int a, int b) {
  int n = d.n(), m = a + b;
  int total = 1;
  for (int k = 0; k < m; ++k) total *= n;
  Matrix rv = vector_R(d);
  Matrix result = Matrix::identity(total);
  for (int x = 0; x < a; ++x) {
    Matrix rx = Matrix::identity(total);
    for (int y = b - 1; y >= 0; --y) rx = rx * two_site(rv, n, m, x, a + y);
    result = result * rx;
  }
  return result;
}

WeightModule cut_power(const RootDatum& d, Mode mode, int m, bool symmetric) {
  WeightModule v = WeightModule::vector(d, mode);
  if (m == 0) return WeightModule::trivial(d, mode);
  if (m == 1) return v;
  WeightModule big = tensor_power(v, m);
  int n = d.n(), total = big.dim();
  Matrix braid = flip(n, n) * (mode == Mode::Quantum ? vector_R(d) : Matrix::identity(n * n));
  Scalar eig = mode == Mode::Quantum ? (symmetric ? qpow(1) : -qpow(-1)) : Scalar(symmetric ? 1 : -1);
  Matrix stacked((m - 1) * total, total);
  for (int k = 0; k + 1 < m; ++k) {
    Matrix op = two_site(braid, n, m, k, k + 1) - Matrix::identity(total) * eig;
    for (int r = 0; r < total; ++r)
      for (int c = 0; c < total; ++c) stacked(k * total + r, c) = op(r, c);
  }
  std::vector<int> free;
  Matrix embed = nullspace(stacked, &free);
  int k = embed.cols();
  Matrix proj(k, total);
  std::vector<Weight> ws;
  std::vector<int> cs;
  for (int j = 0; j < k; ++j) {
    proj(j, free[j]) = Scalar(1);
    ws.push_back(big.weight(free[j]));
    cs.push_back(m);
  }
  std::string name = (symmetric ? "S^" : "L^") + std::to_string(m) + "V";
  WeightModule sub(d, mode, name, ws, cs);
  for (int i = 0; i < d.rank(); ++i) {
    sub.e(i) = proj * big.e(i) * embed;
    sub.f(i) = proj * big.f(i) * embed;
  }
  sub.set_embedding(m, embed, proj);
  return sub;
}

}  // namespace

WeightModule sym_power(const RootDatum& d, Mode mode, int m) { return cut_power(d, mode, m, true); }
WeightModule ext_power(const RootDatum& d, Mode mode, int m) { return cut_power(d, mode, m, false); }

WeightModule dual(const WeightModule& m) {
  std::vector<Weight> ws;
  std::vector<int> cs;
  for (int i = 0; i < m.dim(); ++i) {
    ws.push_back(-m.weight(i));
    cs.push_back(-m.charge(i));
  }
  WeightModule r(m.datum(), m.mode(), m.name() + "^*", ws, cs);
  for (int i = 0; i < m.datum().rank(); ++i) {
    if (m.mode() == Mode::Classical) {
      r.e(i) = (m.e(i) * Scalar(-1)).transpose();
      r.f(i) = (m.f(i) * Scalar(-1)).transpose();
    } else {
      r.e(i) = (m.e(i) * m.k_power(i, -1) * Scalar(-1)).transpose();
      r.f(i) = (m.k_power(i, 1) * m.f(i) * Scalar(-1)).transpose();
    }
  }
  return r;
}

void check_module(const WeightModule& m) {
  const RootDatum& d = m.datum();
  int r = d.rank();
  for (int i = 0; i < r; ++i) {
    const Weight& a = d.simple_roots()[i];
    for (int x = 0; x < m.dim(); ++x)
      for (int y = 0; y < m.dim(); ++y) {
        if (!m.e(i)(x, y).is_zero() && m.weight(x) != m.weight(y) + a)
          fail(ErrorKind::Convention, m.name() + ": E_" + std::to_string(i) + " breaks weights");
        if (!m.f(i)(x, y).is_zero() && m.weight(x) != m.weight(y) - a)
          fail(ErrorKind::Convention, m.name() + ": F_" + std::to_string(i) + " breaks weights");
      }
    for (int j = 0; j < r; ++j) {
      Matrix c = commutator(m.e(i), m.f(j));
      Matrix want = i == j ? m.bracket_value(i) : Matrix(m.dim(), m.dim());
      if (c != want) fail(ErrorKind::Convention, m.name() + ": [E_i, F_j] relation fails");
      if (i == j) continue;
      Scalar two = m.mode() == Mode::Classical ? Scalar(2) : qint(2);
      for (int side = 0; side < 2; ++side) {
        const Matrix& x = side == 0 ? m.e(i) : m.f(i);
        const Matrix& y = side == 0 ? m.e(j) : m.f(j);
        Matrix rel = std::abs(i - j) == 1 ? x * x * y - x * y * x * two + y * x * x : commutator(x, y);
        if (!rel.is_zero()) fail(ErrorKind::Convention, m.name() + ": Serre relation fails");
      }
    }
  }
}

Matrix constant_R(const WeightModule& m, const WeightModule& n) {
  require(m.datum() == n.datum() && m.mode() == n.mode(), ErrorKind::ShapeMismatch, "constant_R");
  if (m.mode() == Mode::Classical) return Matrix::identity(m.dim() * n.dim());
  if (!m.has_embedding() || !n.has_embedding()) {
    if (m.datum().coords() == 1) return constant_R_sl2(m, n);
    fail(ErrorKind::Unsupported, "constant R-matrix needs modules realized in tensor powers");
  }
  Matrix big = R_power(m.datum(), m.degree(), n.degree());
  return kron(m.projection(), n.projection()) * big * kron(m.embedding(), n.embedding());
}

Matrix constant_R_sl2(const WeightModule& m, const WeightModule& n) {
  require(m.datum().coords() == 1 && m.mode() == Mode::Quantum, ErrorKind::Precondition, "sl2 quantum modules");
  int dm = m.dim(), dn = n.dim();
  std::vector<Scalar> cart;
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dn; ++j)
      cart.push_back(qpow((m.weight(i)[0] * n.weight(j)[0] + m.charge(i) * n.charge(j)) / 2));
  Matrix theta = Matrix::identity(dm * dn);
  Matrix ek = Matrix::identity(dm), fk = Matrix::identity(dn);
  Scalar q = qpow(1), c(1);
  for (int k = 1;; ++k) {
    ek = ek * m.e(0);
    fk = fk * n.f(0);
    if (ek.is_zero() || fk.is_zero()) break;
    c = c * qpow(k - 1) * (q - q.inverse()) / qint(k);
    theta += kron(ek, fk) * c;
  }
  return Matrix::diagonal(cart) * theta;
}

Matrix strip_cartan(const Matrix& r) {
  std::vector<Scalar> inv;
  for (int i = 0; i < r.rows(); ++i) inv.push_back(r(i, i).inverse());
  return r * Matrix::diagonal(inv);
}

}  // namespace dyb
