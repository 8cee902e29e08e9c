#include "dyb/verma.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "dyb/error.hpp"

namespace dyb {

namespace {

// Nonnegative simple-root coefficient vectors with sum <= depth.
void enumerate_drops(const RootDatum& d, int depth, std::vector<Weight>& out) {
  int r = d.rank();
  std::vector<int> c(r, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == r) {
      Weight w = d.zero();
      for (int k = 0; k < r; ++k) w = w + mpq_class(c[k]) * d.simple_roots()[k];
      out.push_back(w);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
    c[i] = 0;
  };
  rec(0, depth);
  std::stable_sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) { return d.height(a) < d.height(b); });
}

std::vector<std::pair<int, mpq_class>> sample_point(const RootDatum& d, Mode mode) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> num(3, 97), den(2, 13);
  std::vector<std::pair<int, mpq_class>> pt;
  auto draw = [&] {
    mpq_class x(num(rng), den(rng));
    x.canonicalize();
    return x;
  };
  for (int i = 1; i <= d.coords(); ++i) pt.emplace_back(mode == Mode::Classical ? vars::l(i) : vars::t(i), draw());
  if (mode == Mode::Quantum) pt.emplace_back(vars::s(), draw());
  return pt;
}

void add_to(WordVec& acc, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) acc.erase(it);
}

}  // namespace

long kostant_partition(const RootDatum& d, const Weight& beta) {
  const auto& roots = d.positive_roots();
  std::function<long(std::size_t, const Weight&)> rec = [&](std::size_t k, const Weight& rest) -> long {
    int h = d.height(rest);
    if (h < 0) return 0;
    if (h == 0) return 1;
    if (k == roots.size()) return 0;
    long total = 0;
    Weight cur = rest;
    while (d.height(cur) >= 0) {
      total += rec(k + 1, cur);
      cur = cur - roots[k].w;
    }
    return total;
  };
  return rec(0, beta);
}

VermaSlice::VermaSlice(RootDatum datum, Mode mode, Weight offset, int depth)
    : datum_(std::move(datum)), mode_(mode), offset_(std::move(offset)), depth_(depth) {
  require(depth >= 0, ErrorKind::Precondition, "depth must be nonnegative");
  enumerate_drops(datum_, depth, drops_);
  auto point = sample_point(datum_, mode_);
  for (const Weight& beta : drops_) {
    Block b;
    long want = kostant_partition(datum_, beta);
    auto coeffs = *datum_.simple_coeffs(beta);
    Word letters;
    for (int i = 0; i < datum_.rank(); ++i)
      for (int k = 0; k < coeffs[i].get_num().get_si(); ++k) letters.push_back(i);
    std::vector<std::vector<Scalar>> sym;
    int have = 0;
    do {
      if (have == want) break;
      std::vector<Word> trial = b.words;
      trial.push_back(letters);
      int m = static_cast<int>(trial.size());
      Matrix g(m, m);
      std::vector<Scalar> row(m);
      WordVec last{{letters, Scalar(1)}};
      for (int j = 0; j < m; ++j) row[j] = pair(trial[j], last);
      for (int i = 0; i + 1 < m; ++i)
        for (int j = 0; j + 1 < m; ++j) g(i, j) = Scalar(evaluate(sym[i][j], point));
      for (int j = 0; j < m; ++j) {
        Scalar x(evaluate(row[j], point));
        g(m - 1, j) = x;
        g(j, m - 1) = x;
      }
      if (rank(g) == m) {
        b.words = trial;
        for (int i = 0; i + 1 < m; ++i) sym[i].push_back(row[i]);
        sym.push_back(row);
        ++have;
      }
    } while (std::next_permutation(letters.begin(), letters.end()));
    if (have != want) fail(ErrorKind::Convention, "Shapovalov rank differs from the Kostant partition function");
    int m = have;
    b.gram = Matrix(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) b.gram(i, j) = sym[i][j];
    b.gram_inv = inverse(b.gram);
    blocks_.emplace(beta, std::move(b));
  }
}

const std::vector<Word>& VermaSlice::basis(const Weight& beta) const {
  auto it = blocks_.find(beta);
  if (it == blocks_.end()) fail(ErrorKind::Precondition, "weight drop " + weight_str(beta) + " beyond slice depth");
  return it->second.words;
}

int VermaSlice::dim() const {
  int n = 0;
  for (auto& [k, b] : blocks_) n += static_cast<int>(b.words.size());
  return n;
}

const Matrix& VermaSlice::gram(const Weight& beta) const {
  basis(beta);
  return blocks_.at(beta).gram;
}

Weight VermaSlice::content(const Word& w) const {
  Weight c = datum_.zero();
  for (int j : w) c = c + datum_.simple_roots()[j];
  return c;
}

Scalar VermaSlice::bracket(int i, const Weight& beta) const {
  const Weight& a = datum_.simple_roots()[i];
  mpq_class c = datum_.form(a, offset_ - beta);
  if (mode_ == Mode::Classical) return datum_.lambda_pair(a) + Scalar(c);
  Scalar x = datum_.q_lambda_pair(a, 1) * qpow(c);
  Scalar q = qpow(1);
  return (x - x.inverse()) / (q - q.inverse());
}

WordVec VermaSlice::raise(int i, const Word& w) const {
  WordVec out;
  Weight suffix = datum_.zero();
  for (int p = static_cast<int>(w.size()) - 1; p >= 0; --p) {
    if (w[p] == i) {
      Word rest = w;
      rest.erase(rest.begin() + p);
      add_to(out, rest, bracket(i, suffix));
    }
    suffix = suffix + datum_.simple_roots()[w[p]];
  }
  return out;
}

WordVec VermaSlice::raise(int i, const WordVec& v) const {
  WordVec out;
  for (auto& [w, c] : v)
    for (auto& [w2, c2] : raise(i, w)) add_to(out, w2, c * c2);
  return out;
}

Scalar VermaSlice::pair(const Word& u, const WordVec& v) const {
  if (v.empty()) return Scalar();
  if (u.empty()) {
    auto it = v.find(Word{});
    return it == v.end() ? Scalar() : it->second;
  }
  Word tail(u.begin() + 1, u.end());
  WordVec ev = raise(u[0], v);
  if (mode_ == Mode::Quantum) {
    // F_i is adjoint to E_i K_i^{-1}
    const Weight& a = datum_.simple_roots()[u[0]];
    Scalar k = datum_.q_lambda_pair(a, -1) * qpow(-datum_.form(a, offset_ - content(v.begin()->first)));
    for (auto& [w, c] : ev) c *= k;
  }
  return pair(tail, ev);
}

std::vector<Scalar> VermaSlice::coords(const Weight& beta, const WordVec& v) const {
  const auto& words = basis(beta);
  std::vector<Scalar> p;
  for (auto& b : words) p.push_back(pair(b, v));
  return blocks_.at(beta).gram_inv * p;
}

Matrix VermaSlice::e_block(int i, const Weight& beta) const {
  const auto& src = basis(beta);
  Weight to = beta - datum_.simple_roots()[i];
  if (!contains(to)) return Matrix(0, static_cast<int>(src.size()));
  Matrix m(static_cast<int>(basis(to).size()), static_cast<int>(src.size()));
  for (std::size_t k = 0; k < src.size(); ++k) {
    auto c = coords(to, raise(i, src[k]));
    for (std::size_t r = 0; r < c.size(); ++r) m(static_cast<int>(r), static_cast<int>(k)) = c[r];
  }
  return m;
}

Matrix VermaSlice::f_block(int i, const Weight& beta) const {
  const auto& src = basis(beta);
  Weight to = beta + datum_.simple_roots()[i];
  const auto& dst = basis(to);
  Matrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (std::size_t k = 0; k < src.size(); ++k) {
    Word w = src[k];
    w.insert(w.begin(), i);
    auto c = coords(to, WordVec{{w, Scalar(1)}});
    for (std::size_t r = 0; r < c.size(); ++r) m(static_cast<int>(r), static_cast<int>(k)) = c[r];
  }
  return m;
}

Intertwiner solve_intertwiner(const WeightModule& V, int v, const Weight& offset) {
  const RootDatum& d = V.datum();
  int n = V.dim();
  std::vector<int> height(n);
  int depth = 0;
  for (int k = 0; k < n; ++k) {
    height[k] = d.height(V.weight(k) - V.weight(v));
    depth = std::max(depth, height[k]);
  }
  VermaSlice slice(d, V.mode(), offset - V.weight(v), depth);
  auto drop = [&](int k) { return V.weight(k) - V.weight(v); };

  // unknowns: coordinates of u_{v'} for every v' strictly above v
  std::vector<int> start(n, -1);
  int unknowns = 0;
  for (int k = 0; k < n; ++k)
    if (height[k] > 0) {
      start[k] = unknowns;
      unknowns += static_cast<int>(slice.basis(drop(k)).size());
    }
  auto known = [&](int k) { return k == v ? Scalar(1) : Scalar(); };

  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (int i = 0; i < d.rank(); ++i) {
    Matrix kv = V.k_power(i, 1);
    for (int k2 = 0; k2 < n; ++k2) {
      if (height[k2] < 1) continue;
      Weight gamma = drop(k2) - d.simple_roots()[i];
      if (!slice.contains(gamma)) continue;
      int m = static_cast<int>(slice.basis(gamma).size());
      Matrix eb = slice.e_block(i, drop(k2));
      for (int r = 0; r < m; ++r) {
        std::vector<Scalar> row(unknowns);
        Scalar b;
        for (int c = 0; c < eb.cols(); ++c)
          if (!eb(r, c).is_zero()) row[start[k2] + c] += eb(r, c) * kv(k2, k2);
        for (int k1 = 0; k1 < n; ++k1) {
          const Scalar& ev = V.e(i)(k2, k1);
          if (ev.is_zero()) continue;
          if (height[k1] == 0)
            b -= ev * known(k1);
          else
            row[start[k1] + r] += ev;
        }
        rows.push_back(std::move(row));
        rhs.push_back(b);
      }
    }
  }
  std::vector<Scalar> x;
  if (unknowns > 0) {
    Matrix a(static_cast<int>(rows.size()), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < unknowns; ++c) a(static_cast<int>(r), c) = rows[r][c];
    x = solve(a, rhs);
  }
  Intertwiner phi{v, slice, std::vector<std::vector<Scalar>>(n), std::vector<Weight>(n)};
  for (int k = 0; k < n; ++k) {
    if (height[k] < 0) continue;
    phi.drops[k] = drop(k);
    if (height[k] == 0) {
      phi.components[k] = {known(k)};
      continue;
    }
    int m = static_cast<int>(slice.basis(drop(k)).size());
    phi.components[k].assign(x.begin() + start[k], x.begin() + start[k] + m);
  }
  return phi;
}

std::vector<Scalar> expectation_value(const Intertwiner& phi, const WeightModule& W, int w) {
  const VermaSlice& sl = phi.slice;
  const RootDatum& d = sl.datum();
  int nv = static_cast<int>(phi.components.size());
  int nw = W.dim();
  // highest weight of the final Verma module is lambda + nu
  Weight nu = sl.offset() - W.weight(w);
  std::vector<Scalar> out(static_cast<std::size_t>(nw) * nv);
  for (int k = 0; k < nv; ++k) {
    const auto& comp = phi.components[k];
    if (comp.empty()) continue;
    const auto& words = sl.basis(phi.drops[k]);
    Scalar qfac(1);
    if (sl.mode() == Mode::Quantum) qfac = d.q_lambda_pair(phi.drops[k], -1) * qpow(-d.form(phi.drops[k], nu));
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (comp[b].is_zero()) continue;
      std::vector<Scalar> vec(nw);
      vec[w] = Scalar(1);
      for (auto it = words[b].rbegin(); it != words[b].rend(); ++it) vec = W.f(*it) * vec;
      Scalar c = comp[b] * qfac;
      for (int x = 0; x < nw; ++x)
        if (!vec[x].is_zero()) out[static_cast<std::size_t>(x) * nv + k] += c * vec[x];
    }
  }
  return out;
}

}  // namespace dyb
