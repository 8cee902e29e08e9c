#include "dyb/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dyb/error.hpp"

namespace dyb {

Scalar::Scalar(const mpq_class& c) : num_(mpq_class(c.get_num())), den_(mpq_class(c.get_den())) {}

Scalar::Scalar(const Polynomial& p) : num_(p), den_(1) {
  if (!num_.is_zero()) {
    mpq_class c = num_.content();
    num_ = num_.primitive();
    mpq_class r = c;
    num_ = num_ * mpq_class(r.get_num());
    den_ = Polynomial(mpq_class(r.get_den()));
  }
}

Scalar Scalar::from_coprime(Polynomial num, Polynomial den) {
  if (den.is_zero()) fail(ErrorKind::Pole, "zero denominator");
  Scalar r;
  if (num.is_zero()) return r;
  mpq_class cn = num.content(), cd = den.content();
  mpq_class ratio = cn / cd;
  r.num_ = num.primitive() * mpq_class(ratio.get_num());
  r.den_ = den.primitive() * mpq_class(ratio.get_den());
  return r;
}

Scalar Scalar::fraction(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) fail(ErrorKind::Pole, "zero denominator");
  if (num.is_zero()) return Scalar();
  if (den.is_constant()) return from_coprime(num, den);
  Polynomial g = gcd(num, den);
  if (g.is_constant()) return from_coprime(num, den);
  return from_coprime(*divide_exact(num, g), *divide_exact(den, g));
}

bool Scalar::is_one() const {
  auto c = constant_value();
  return c && *c == 1;
}

std::optional<mpq_class> Scalar::constant_value() const {
  auto n = num_.constant_value();
  auto d = den_.constant_value();
  if (!n || !d) return std::nullopt;
  return mpq_class(*n / *d);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return fraction(num_ + o.num_, den_);
  if (den_.is_constant() || o.den_.is_constant()) return from_coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Polynomial g = gcd(den_, o.den_);
  if (g.is_constant()) return from_coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Polynomial b1 = *divide_exact(den_, g), d1 = *divide_exact(o.den_, g);
  Polynomial t = num_ * d1 + o.num_ * b1;
  if (t.is_zero()) return Scalar();
  Polynomial h = gcd(t, g);
  if (h.is_constant()) return from_coprime(t, b1 * d1 * g);
  return from_coprime(*divide_exact(t, h), b1 * d1 * *divide_exact(g, h));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar();
  if (den_.is_constant() && o.den_.is_constant()) return from_coprime(num_ * o.num_, den_ * o.den_);
  Polynomial a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant() && !a.is_constant()) {
    Polynomial g = gcd(a, d);
    if (!g.is_constant()) {
      a = *divide_exact(a, g);
      d = *divide_exact(d, g);
    }
  }
  if (!b.is_constant() && !c.is_constant()) {
    Polynomial g = gcd(c, b);
    if (!g.is_constant()) {
      c = *divide_exact(c, g);
      b = *divide_exact(b, g);
    }
  }
  return from_coprime(a * c, b * d);
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorKind::Pole, "division by zero");
  return from_coprime(den_, num_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::pow(int k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar r(1), b = *this;
  while (k) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k) b *= b;
  }
  return r;
}

std::string Scalar::str() const {
  if (den_.is_constant() && den_.lead().c == 1) return num_.str();
  std::string n = num_.str();
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.str();
  bool bare = den_.terms().size() == 1 &&
              (den_.is_constant() || (den_.lead().c == 1 && __builtin_popcountll(den_.support()) == 1));
  if (!bare) d = "(" + d + ")";
  return n + "/" + d;
}

// ---- parsing ----

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Scalar parse_all() {
    Scalar r = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar r = term();
    while (true) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  Scalar term() {
    Scalar r = unary();
    while (true) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        Scalar d = unary();
        if (d.is_zero()) error("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }
  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  long exponent() {
    bool neg = false, paren = eat('(');
    if (eat('-'))
      neg = true;
    else
      eat('+');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) error("expected integer exponent");
    long e = std::stol(std::string(s_.substr(start, pos_ - start)));
    if (paren && !eat(')')) error("expected ')'");
    return neg ? -e : e;
  }
  Scalar power() {
    Scalar b = atom();
    if (eat('^')) {
      long e = exponent();
      if (e < 0 && b.is_zero()) error("division by zero");
      return b.pow(static_cast<int>(e));
    }
    return b;
  }
  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar r = expr();
      if (!eat(')')) error("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      return Scalar::var(s_.substr(start, pos_ - start));
    }
    error("unexpected character");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return Parser(text).parse_all(); }

// ---- substitutions ----

namespace {

struct IntExps {
  std::array<int, kMaxVars> e{};
};

std::vector<std::pair<IntExps, mpq_class>> laurent_terms(const Polynomial& p,
                                                         const std::vector<std::pair<int, LaurentMonomial>>& rules) {
  std::vector<std::pair<IntExps, mpq_class>> out;
  out.reserve(p.terms().size());
  for (auto& t : p.terms()) {
    IntExps x;
    for (int v = 0; v < kMaxVars; ++v) x.e[v] = t.m[v];
    for (auto& [v, mono] : rules) {
      int k = t.m[v];
      if (k == 0) continue;
      x.e[v] -= k;
      for (auto& [w, a] : mono) x.e[w] += k * a;
    }
    out.emplace_back(x, t.c);
  }
  return out;
}

Polynomial from_laurent(const std::vector<std::pair<IntExps, mpq_class>>& ts, const IntExps& lift) {
  std::vector<Term> terms;
  terms.reserve(ts.size());
  for (auto& [x, c] : ts) {
    Monomial m;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = x.e[v] + lift.e[v];
      if (e != 0) m.set(v, e);
    }
    terms.push_back({m, c});
  }
  return Polynomial::from_terms(std::move(terms));
}

bool is_automorphism(const std::vector<std::pair<int, LaurentMonomial>>& rules) {
  std::uint64_t targets = 0;
  for (auto& r : rules) targets |= std::uint64_t{1} << r.first;
  for (auto& [v, mono] : rules) {
    int self = 0;
    for (auto& [w, a] : mono) {
      if (w == v)
        self += a;
      else if (targets >> w & 1)
        return false;
    }
    if (self != 1 && self != -1) return false;
  }
  return true;
}

Polynomial poly_substitute(const Polynomial& p, const std::vector<std::pair<int, Polynomial>>& rules) {
  std::map<std::pair<int, int>, Polynomial> cache;
  auto power = [&](int idx, int e) -> const Polynomial& {
    auto key = std::make_pair(idx, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, rules[idx].second.pow(static_cast<unsigned>(e))).first->second;
  };
  Polynomial sum;
  std::vector<Term> plain;
  for (auto& t : p.terms()) {
    Monomial rest = t.m;
    Polynomial prod(1);
    bool touched = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      int v = rules[i].first;
      int e = t.m[v];
      if (e == 0) continue;
      rest.set(v, 0);
      prod = prod * power(static_cast<int>(i), e);
      touched = true;
    }
    if (!touched)
      plain.push_back(t);
    else
      sum += prod.mul_monomial(rest, t.c);
  }
  return sum + Polynomial::from_terms(std::move(plain));
}

}  // namespace

Scalar monomial_substitute(const Scalar& x, const std::vector<std::pair<int, LaurentMonomial>>& rules) {
  if (x.is_zero() || rules.empty()) return x;
  auto n = laurent_terms(x.num(), rules);
  auto d = laurent_terms(x.den(), rules);
  IntExps lift;
  for (auto* ts : {&n, &d})
    for (auto& [e, c] : *ts)
      for (int v = 0; v < kMaxVars; ++v) lift.e[v] = std::max(lift.e[v], -e.e[v]);
  Polynomial pn = from_laurent(n, lift), pd = from_laurent(d, lift);
  if (!is_automorphism(rules)) return Scalar::fraction(pn, pd);
  Monomial common = Monomial::min(pn.min_monomial(), pd.min_monomial());
  if (common.degree() > 0) {
    pn = pn.div_monomial(common);
    pd = pd.div_monomial(common);
  }
  return Scalar::from_coprime(pn, pd);
}

Scalar substitute(const Scalar& x, const std::vector<std::pair<int, Scalar>>& rules) {
  if (x.is_zero() || rules.empty()) return x;
  std::vector<std::pair<int, Polynomial>> nums, dens;
  for (auto& [v, val] : rules) {
    nums.emplace_back(v, val.num());
    dens.emplace_back(v, val.den());
  }
  // Clear denominators: multiply through by prod den_v^{E_v}, E_v the max exponent of v.
  std::vector<int> emax(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i)
    emax[i] = std::max(x.num().degree_in(rules[i].first), x.den().degree_in(rules[i].first));
  Polynomial n, d;
  for (int pass = 0; pass < 2; ++pass) {
    const Polynomial& src = pass == 0 ? x.num() : x.den();
    Polynomial& dst = pass == 0 ? n : d;
    for (auto& t : src.terms()) {
      Monomial rest = t.m;
      Polynomial prod(t.c);
      for (std::size_t i = 0; i < rules.size(); ++i) {
        int v = rules[i].first;
        int e = t.m[v];
        rest.set(v, 0);
        if (e > 0) prod = prod * nums[i].second.pow(static_cast<unsigned>(e));
        if (emax[i] - e > 0) prod = prod * dens[i].second.pow(static_cast<unsigned>(emax[i] - e));
      }
      dst += prod.mul_monomial(rest);
    }
  }
  if (d.is_zero()) fail(ErrorKind::Pole, "substitution annihilates the denominator of " + x.str());
  return Scalar::fraction(n, d);
}

Scalar derivative(const Scalar& x, int v) {
  const Polynomial& n = x.num();
  const Polynomial& d = x.den();
  if (d.is_constant()) return Scalar::fraction(n.derivative(v), d);
  return Scalar::fraction(n.derivative(v) * d - n * d.derivative(v), d * d);
}

mpq_class evaluate(const Scalar& x, const std::vector<std::pair<int, mpq_class>>& point) {
  std::vector<std::optional<mpq_class>> at(kMaxVars);
  for (auto& [v, c] : point) at[v] = c;
  bool okn = true, okd = true;
  mpq_class n = x.num().evaluate(at, &okn);
  mpq_class d = x.den().evaluate(at, &okd);
  if (!okn || !okd) fail(ErrorKind::Precondition, "unassigned variable while evaluating " + x.str());
  if (d == 0) fail(ErrorKind::Pole, "pole of " + x.str() + " at the evaluation point");
  return n / d;
}

Scalar evaluate_partial(const Scalar& x, const std::vector<std::pair<int, mpq_class>>& point) {
  std::vector<std::pair<int, Polynomial>> rules;
  for (auto& [v, c] : point) rules.emplace_back(v, Polynomial(c));
  Polynomial n = poly_substitute(x.num(), rules), d = poly_substitute(x.den(), rules);
  if (d.is_zero()) fail(ErrorKind::Pole, "pole of " + x.str() + " at the evaluation point");
  return Scalar::fraction(n, d);
}

// ---- shifts ----

ShiftFrame ShiftFrame::classical(int n) {
  ShiftFrame f;
  f.kind = Kind::Additive;
  for (int i = 1; i <= n; ++i) f.coord_vars.push_back(vars::l(i));
  return f;
}

ShiftFrame ShiftFrame::quantum(int n) {
  ShiftFrame f;
  f.kind = Kind::Multiplicative;
  for (int i = 1; i <= n; ++i) f.coord_vars.push_back(vars::t(i));
  f.base = vars::s();
  f.factor = 2;
  return f;
}

namespace {

int integral_exponent(const mpq_class& v, int factor) {
  mpq_class e = v * factor;
  if (e.get_den() != 1) fail(ErrorKind::Precondition, "shift " + v.get_str() + " is not representable in the quantum encoding");
  return static_cast<int>(e.get_num().get_si());
}

}  // namespace

Scalar shift(const Scalar& x, const ShiftFrame& frame, const std::vector<mpq_class>& nu) {
  if (static_cast<int>(nu.size()) != frame.size()) fail(ErrorKind::ShapeMismatch, "shift vector length");
  if (x.is_zero()) return x;
  if (frame.kind == ShiftFrame::Kind::Additive) {
    std::vector<std::pair<int, Polynomial>> rules;
    for (int i = 0; i < frame.size(); ++i) {
      if (nu[i] == 0) continue;
      int v = frame.coord_vars[i];
      if (!(x.support() >> v & 1)) continue;
      rules.emplace_back(v, Polynomial::var(v) + Polynomial(nu[i]));
    }
    if (rules.empty()) return x;
    return Scalar::from_coprime(poly_substitute(x.num(), rules), poly_substitute(x.den(), rules));
  }
  std::vector<std::pair<int, LaurentMonomial>> rules;
  for (int i = 0; i < frame.size(); ++i) {
    if (nu[i] == 0) continue;
    int v = frame.coord_vars[i];
    if (!(x.support() >> v & 1)) continue;
    rules.push_back({v, {{v, 1}, {frame.base, integral_exponent(nu[i], frame.factor)}}});
  }
  return monomial_substitute(x, rules);
}

Scalar shift_substitute(const Scalar& x, Mode mode, const std::vector<mpq_class>& mu) {
  std::vector<mpq_class> nu;
  for (auto& m : mu) nu.push_back(-m);
  int n = static_cast<int>(mu.size());
  return shift(x, mode == Mode::Classical ? ShiftFrame::classical(n) : ShiftFrame::quantum(n), nu);
}

Scalar reflect(const Scalar& x, const ShiftFrame& frame, const std::vector<mpq_class>& c) {
  if (static_cast<int>(c.size()) != frame.size()) fail(ErrorKind::ShapeMismatch, "reflection vector length");
  if (frame.kind == ShiftFrame::Kind::Additive) {
    std::vector<std::pair<int, Polynomial>> rules;
    for (int i = 0; i < frame.size(); ++i) {
      int v = frame.coord_vars[i];
      rules.emplace_back(v, -Polynomial::var(v) - Polynomial(c[i]));
    }
    return Scalar::from_coprime(poly_substitute(x.num(), rules), poly_substitute(x.den(), rules));
  }
  std::vector<std::pair<int, LaurentMonomial>> rules;
  for (int i = 0; i < frame.size(); ++i) {
    int v = frame.coord_vars[i];
    rules.push_back({v, {{v, -1}, {frame.base, -integral_exponent(c[i], frame.factor)}}});
  }
  return monomial_substitute(x, rules);
}

Scalar lam(int i) { return Scalar::var(vars::l(i)); }
Scalar tq(int i) { return Scalar::var(vars::t(i)); }
Scalar svar() { return Scalar::var(vars::s()); }

Scalar qpow(const mpq_class& k) {
  int e = integral_exponent(k, 2);
  return Scalar::var(vars::s()).pow(e);
}

Scalar qint_from_power(const Scalar& qx) { return (qx - qx.inverse()) / (qpow(1) - qpow(-1)); }

}  // namespace dyb
