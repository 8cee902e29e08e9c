#include "dyb/polynomial.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "dyb/error.hpp"

namespace dyb {

namespace vars {
namespace {

struct Registry {
  std::deque<std::string> names;
  std::unordered_map<std::string, int> index;
  std::mutex mu;

  Registry() {
    auto add = [this](const std::string& n) {
      index.emplace(n, static_cast<int>(names.size()));
      names.push_back(n);
    };
    for (int i = 1; i <= 5; ++i) add("l" + std::to_string(i));
    add("s");
    for (int i = 1; i <= 5; ++i) add("t" + std::to_string(i));
    add("g");
    add("e");
    for (int i = 1; i <= 5; ++i) add("w" + std::to_string(i));
    add("q");
    add("t");
    for (int i = 1; i <= 4; ++i) add("x" + std::to_string(i));
    for (int i = 1; i <= 4; ++i) add("y" + std::to_string(i));
    for (int i = 1; i <= 2; ++i) add("u" + std::to_string(i));
    add("z");
  }
};

Registry& reg() {
  static Registry r;
  return r;
}

int fixed(const char* prefix, int i) { return id(std::string(prefix) + std::to_string(i)); }

}  // namespace

int id(std::string_view name) {
  auto& r = reg();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.index.find(std::string(name));
  if (it != r.index.end()) return it->second;
  if (static_cast<int>(r.names.size()) >= kMaxVars) fail(ErrorKind::Parse, "too many variables: " + std::string(name));
  int k = static_cast<int>(r.names.size());
  r.index.emplace(std::string(name), k);
  r.names.emplace_back(name);
  return k;
}

std::optional<int> find(std::string_view name) {
  auto& r = reg();
  std::lock_guard<std::mutex> lock(r.mu);
  auto it = r.index.find(std::string(name));
  if (it == r.index.end()) return std::nullopt;
  return it->second;
}

const std::string& name(int k) {
  auto& r = reg();
  std::lock_guard<std::mutex> lock(r.mu);
  return r.names.at(k);
}

int count() {
  auto& r = reg();
  std::lock_guard<std::mutex> lock(r.mu);
  return static_cast<int>(r.names.size());
}

int l(int i) { return fixed("l", i); }
int t(int i) { return fixed("t", i); }
int w(int i) { return fixed("w", i); }
int x(int i) { return fixed("x", i); }
int y(int i) { return fixed("y", i); }
int u(int i) { return fixed("u", i); }
int s() { return id("s"); }
int g() { return id("g"); }
int e() { return id("e"); }
int q() { return id("q"); }
int tpar() { return id("t"); }
int z() { return id("z"); }

}  // namespace vars

// ---- Monomial ----

Monomial Monomial::var(int v, int e) {
  Monomial m;
  m.set(v, e);
  return m;
}

void Monomial::set(int v, int e) {
  deg_ += e - e_[v];
  e_[v] = static_cast<std::int16_t>(e);
}

bool Monomial::is_zero_vec() const {
  for (auto x : e_)
    if (x != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::int16_t>(e_[i] + o.e_[i]);
  r.deg_ = deg_ + o.deg_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (int i = 0; i < kMaxVars; ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::int16_t>(e_[i] - o.e_[i]);
  r.deg_ = deg_ - o.deg_;
  return r;
}

Monomial Monomial::min(const Monomial& a, const Monomial& b) {
  Monomial r;
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e_[i] = std::min(a.e_[i], b.e_[i]);
    d += r.e_[i];
  }
  r.deg_ = d;
  return r;
}

std::uint64_t Monomial::support() const {
  std::uint64_t s = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (e_[i] != 0) s |= (std::uint64_t{1} << i);
  return s;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ > b.deg_ ? 1 : -1;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? 1 : -1;
  return 0;
}

bool grlex_greater(const Monomial& a, const Monomial& b) { return grlex_compare(a, b) > 0; }

// ---- Polynomial ----

Polynomial::Polynomial(long c) {
  if (c != 0) terms_.push_back({Monomial(), mpq_class(c)});
}

Polynomial::Polynomial(const mpq_class& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::var(int v, int e) { return monomial(Monomial::var(v, e), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const mpq_class& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex_greater(a.m, b.m); });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else if (t.c != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree() == 0); }

std::optional<mpq_class> Polynomial::constant_value() const {
  if (terms_.empty()) return mpq_class(0);
  if (terms_.size() == 1 && terms_[0].m.degree() == 0) return terms_[0].c;
  return std::nullopt;
}

int Polynomial::total_degree() const { return terms_.empty() ? -1 : terms_.front().m.degree(); }

int Polynomial::degree_in(int v) const {
  int d = terms_.empty() ? -1 : 0;
  for (auto& t : terms_) d = std::max(d, t.m[v]);
  return d;
}

std::uint64_t Polynomial::support() const {
  std::uint64_t s = 0;
  for (auto& t : terms_) s |= t.m.support();
  return s;
}

Monomial Polynomial::min_monomial() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_.front().m;
  for (auto& t : terms_) m = Monomial::min(m, t.m);
  return m;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

namespace {

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = grlex_compare(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().c = -out.back().c;
    } else {
      mpq_class s = subtract ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
      if (s != 0) out.push_back({a[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().c = -out.back().c;
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  r.terms_ = merge_terms(terms_, o.terms_, false);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r;
  r.terms_ = merge_terms(terms_, o.terms_, true);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return {};
  if (terms_.size() == 1) return o.mul_monomial(terms_[0].m, terms_[0].c);
  if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].m, o.terms_[0].c);
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) prod.push_back({a.m * b.m, a.c * b.c});
  return from_terms(std::move(prod));
}

Polynomial Polynomial::operator*(const mpq_class& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const mpq_class& c) const {
  if (c == 0) return {};
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Polynomial Polynomial::div_monomial(const Monomial& m) const {
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (auto& t : terms_) r.terms_.push_back({t.m / m, t.c});
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r(1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

std::vector<Polynomial> Polynomial::coeffs_in(int v) const {
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(std::max(0, degree_in(v)) + 1));
  for (auto& t : terms_) {
    Monomial m = t.m;
    int e = m[v];
    m.set(v, 0);
    buckets[e].push_back({m, t.c});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    Polynomial p;
    p.terms_ = std::move(b);  // dropping a fixed power of v preserves the order
    out.push_back(std::move(p));
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

Polynomial Polynomial::from_coeffs(int v, const std::vector<Polynomial>& cs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    Monomial x = Monomial::var(v, static_cast<int>(k));
    for (auto& t : cs[k].terms_) all.push_back({t.m * x, t.c});
  }
  return from_terms(std::move(all));
}

mpq_class Polynomial::content() const {
  if (terms_.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
  }
  mpq_class c(num, den);
  c.canonicalize();
  if (terms_.front().c < 0) c = -c;
  return c;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return {};
  mpq_class c = content();
  if (c == 1) return *this;
  mpq_class inv = 1 / c;
  return *this * inv;
}

Polynomial Polynomial::derivative(int v) const {
  std::vector<Term> out;
  for (auto& t : terms_) {
    int e = t.m[v];
    if (e == 0) continue;
    Monomial m = t.m;
    m.set(v, e - 1);
    out.push_back({m, t.c * e});
  }
  return from_terms(std::move(out));
}

mpq_class Polynomial::evaluate(const std::vector<std::optional<mpq_class>>& at, bool* complete) const {
  mpq_class sum = 0;
  bool ok = true;
  for (auto& t : terms_) {
    mpq_class p = t.c;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = t.m[v];
      if (e == 0) continue;
      if (v >= static_cast<int>(at.size()) || !at[v]) {
        ok = false;
        continue;
      }
      mpq_class b = *at[v], r = 1;
      for (int k = 0; k < e; ++k) r *= b;
      p *= r;
    }
    sum += p;
  }
  if (complete) *complete = ok;
  return sum;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : terms_) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (neg)
      out += "-";
    else if (!first)
      out += "+";
    first = false;
    bool unit = (c == 1);
    bool any = false;
    if (!unit || t.m.degree() == 0) {
      out += c.get_str();
      any = true;
    }
    for (int v = 0; v < kMaxVars; ++v) {
      int e = t.m[v];
      if (e == 0) continue;
      if (any) out += "*";
      out += vars::name(v);
      if (e != 1) out += "^" + std::to_string(e);
      any = true;
    }
  }
  return out;
}

// ---- division and gcd ----

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Polynomial();
  if (auto c = b.constant_value()) return a * mpq_class(1 / *c);
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  if ((b.support() & ~a.support()) != 0) return std::nullopt;
  std::vector<Term> q;
  Polynomial r = a;
  const Term& lb = b.lead();
  while (!r.is_zero()) {
    const Term& lr = r.lead();
    if (!lb.m.divides(lr.m)) return std::nullopt;
    Monomial m = lr.m / lb.m;
    mpq_class c = lr.c / lb.c;
    q.push_back({m, c});
    r -= b.mul_monomial(m, c);
  }
  return Polynomial::from_terms(std::move(q));
}

namespace {

using UPoly = std::vector<Polynomial>;  // coefficient k multiplies x^k

int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

void utrim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly prem(UPoly a, const UPoly& b) {
  int db = udeg(b);
  const Polynomial& lb = b.back();
  int e = udeg(a) - db + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    int d = udeg(a) - db;
    for (auto& c : a) c = c * lb;
    for (int k = 0; k <= db; ++k) a[k + d] -= la * b[k];
    utrim(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

Polynomial ucontent(const UPoly& p) {
  Polynomial g;
  for (auto& c : p) {
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g;
}

Polynomial exact(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) fail(ErrorKind::Degenerate, "inexact polynomial division in gcd");
  return *q;
}

// gcd of primitive polynomials with no common monomial factor and a shared variable v.
UPoly subresultant(UPoly a, UPoly b) {
  if (udeg(a) < udeg(b)) std::swap(a, b);
  Polynomial g(1), h(1);
  while (true) {
    int d = udeg(a) - udeg(b);
    UPoly r = prem(a, b);
    if (r.empty()) break;
    if (udeg(r) == 0) return UPoly{Polynomial(1)};
    a = std::move(b);
    Polynomial div = g * h.pow(static_cast<unsigned>(d));
    for (auto& c : r) c = exact(c, div);
    b = std::move(r);
    g = a.back();
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = exact(g.pow(static_cast<unsigned>(d)), h.pow(static_cast<unsigned>(d - 1)));
    }
  }
  Polynomial c = ucontent(b);
  if (!c.is_constant())
    for (auto& x : b) x = exact(x, c);
  return b;
}

Polynomial gcd_reduced(const Polynomial& a, const Polynomial& b) {
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a == b) return a;
  if (a.total_degree() <= b.total_degree()) {
    if (divide_exact(b, a)) return a;
  } else if (divide_exact(a, b)) {
    return b;
  }
  std::uint64_t sa = a.support(), sb = b.support();
  auto only = [](const Polynomial& p, std::uint64_t mask, const Polynomial& other) -> std::optional<Polynomial> {
    if (mask == 0) return std::nullopt;
    int v = __builtin_ctzll(mask);
    Polynomial g = other;
    for (auto& c : p.coeffs_in(v)) {
      g = gcd(g, c);
      if (g.is_constant()) return Polynomial(1);
    }
    return g;
  };
  if (auto r = only(a, sa & ~sb, b)) return *r;
  if (auto r = only(b, sb & ~sa, a)) return *r;
  std::uint64_t common = sa & sb;
  int best = -1, best_deg = 1 << 30;
  for (int v = 0; v < kMaxVars; ++v) {
    if (!(common >> v & 1)) continue;
    int d = std::max(a.degree_in(v), b.degree_in(v));
    if (d < best_deg) {
      best_deg = d;
      best = v;
    }
  }
  UPoly ua = a.coeffs_in(best), ub = b.coeffs_in(best);
  Polynomial ca = ucontent(ua), cb = ucontent(ub);
  Polynomial c = gcd(ca, cb);
  if (!ca.is_constant())
    for (auto& x : ua) x = exact(x, ca);
  if (!cb.is_constant())
    for (auto& x : ub) x = exact(x, cb);
  UPoly g = subresultant(std::move(ua), std::move(ub));
  return (c * Polynomial::from_coeffs(best, g)).primitive();
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  Monomial ma = a.min_monomial(), mb = b.min_monomial();
  Monomial m = Monomial::min(ma, mb);
  Polynomial ra = a.div_monomial(ma).primitive(), rb = b.div_monomial(mb).primitive();
  return gcd_reduced(ra, rb).mul_monomial(m);
}

}  // namespace dyb
