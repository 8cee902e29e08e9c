#include <gtest/gtest.h>

#include <random>

#include "dyb/error.hpp"
#include "dyb/scalar.hpp"

using namespace dyb;

namespace {

Scalar P(const char* s) { return Scalar::parse(s); }

Polynomial random_poly(std::mt19937& rng, const std::vector<int>& vs, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, maxdeg), pick(0, static_cast<int>(vs.size()) - 1);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    for (int j = 0; j < maxdeg; ++j) {
      int v = vs[pick(rng)];
      m.set(v, m[v] + (deg(rng) > maxdeg / 2 ? 1 : 0));
    }
    ts.push_back({m, coef(rng)});
  }
  return Polynomial::from_terms(ts);
}

Scalar random_scalar(std::mt19937& rng, const std::vector<int>& vs) {
  Polynomial d;
  while (d.is_zero()) d = random_poly(rng, vs, 3, 3);
  return Scalar::fraction(random_poly(rng, vs, 3, 3), d);
}

// Numeric oracle: evaluate at a point, or report a pole.
std::optional<mpq_class> at(const Scalar& x, const std::vector<std::pair<int, mpq_class>>& pt) {
  try {
    return evaluate(x, pt);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

TEST(Scalars, CanonicalText) {
  EXPECT_EQ(P("-1/(l1+1)").str(), "-1/(l1+1)");
  EXPECT_EQ(P("1/(-l1-1)").str(), "-1/(l1+1)");
  EXPECT_EQ(P("(l1^2-1)/(l1-1)").str(), "l1+1");
  EXPECT_EQ(P("(l1^2-1)/(l1-1)"), P("l1+1"));
  EXPECT_EQ(P("s^8*t1^2-1").str(), "s^8*t1^2-1");
  EXPECT_EQ(P("1/2*l1").str(), "l1/2");
  EXPECT_EQ(P("1/(2*l1)").str(), "1/(2*l1)");
  EXPECT_EQ(P("3/6").str(), "1/2");
  EXPECT_EQ(P("0/(l1+1)").str(), "0");
  EXPECT_EQ(P("s^-2").str(), "1/s^2");
}

TEST(Scalars, ParseRoundTrip) {
  std::mt19937 rng(7);
  std::vector<int> vs{vars::l(1), vars::l(2), vars::s()};
  for (int i = 0; i < 40; ++i) {
    Scalar x = random_scalar(rng, vs);
    EXPECT_EQ(Scalar::parse(x.str()), x) << x.str();
    EXPECT_EQ(Scalar::parse(x.str()).str(), x.str());
  }
}

TEST(Scalars, ParseErrors) {
  for (const char* bad : {"1/", "(l1", "l1+*2", "1/0", "l1^x", "2 3", "#"}) {
    try {
      Scalar::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Parse) << bad;
    }
  }
}

TEST(Scalars, FieldAxiomsAgainstNumericOracle) {
  std::mt19937 rng(11);
  std::vector<int> vs{vars::l(1), vars::l(2), vars::t(1)};
  std::vector<std::pair<int, mpq_class>> pt{{vars::l(1), mpq_class(3, 7)}, {vars::l(2), mpq_class(-5, 11)},
                                            {vars::t(1), mpq_class(13, 3)}};
  for (int i = 0; i < 60; ++i) {
    Scalar a = random_scalar(rng, vs), b = random_scalar(rng, vs), c = random_scalar(rng, vs);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).is_zero());
    if (!a.is_zero()) EXPECT_TRUE((a / a).is_one());
    auto va = at(a, pt), vb = at(b, pt);
    if (va && vb) {
      auto s = at(a + b, pt), p = at(a * b, pt);
      ASSERT_TRUE(s && p);
      EXPECT_EQ(*s, *va + *vb);
      EXPECT_EQ(*p, *va * *vb);
    }
  }
}

TEST(Scalars, GcdProperties) {
  std::mt19937 rng(3);
  std::vector<int> vs{vars::l(1), vars::l(2), vars::l(3)};
  for (int i = 0; i < 30; ++i) {
    Polynomial f = random_poly(rng, vs, 3, 3), g = random_poly(rng, vs, 3, 3), h = random_poly(rng, vs, 2, 2);
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    Polynomial d = gcd(f * h, g * h);
    EXPECT_TRUE(divide_exact(d, h.primitive()).has_value()) << d.str() << " / " << h.str();
    EXPECT_TRUE(divide_exact(f * h, d).has_value());
    EXPECT_TRUE(divide_exact(g * h, d).has_value());
    EXPECT_EQ(gcd(f * h, g * h), gcd(g * h, f * h));
  }
}

TEST(Scalars, ClassicalShift) {
  EXPECT_EQ(shift_substitute(P("1/(l1+1)"), Mode::Classical, {1}).str(), "1/l1");
  EXPECT_EQ(shift_substitute(P("1/(l1-l2)"), Mode::Classical, {1, 0}), P("1/(l1-l2-1)"));
}

TEST(Scalars, QuantumShift) {
  // t -> s^{-2 mu} t, i.e. lambda -> lambda - mu.
  Scalar x = P("(s^-2-s^2)/(s^4*t1^2-1)");
  EXPECT_EQ(shift_substitute(x, Mode::Quantum, {1}), P("(s^-2-s^2)/(t1^2-1)"));
  EXPECT_EQ(shift_substitute(x, Mode::Quantum, {-1}), P("(s^-2-s^2)/(s^8*t1^2-1)"));
  EXPECT_EQ(shift_substitute(P("t1/t2"), Mode::Quantum, {mpq_class(1, 2), 0}), P("t1/(s*t2)"));
}

TEST(Scalars, ShiftAgreesWithSubstitution) {
  std::mt19937 rng(5);
  std::vector<int> vs{vars::l(1), vars::l(2)};
  for (int i = 0; i < 20; ++i) {
    Scalar x = random_scalar(rng, vs);
    Scalar viaSub = substitute(x, {{vars::l(1), P("l1-2")}, {vars::l(2), P("l2+1/2")}});
    EXPECT_EQ(shift_substitute(x, Mode::Classical, {2, mpq_class(-1, 2)}), viaSub);
  }
}

TEST(Scalars, EvaluatePole) {
  Scalar x = P("1/(l1-l2)");
  try {
    evaluate(x, {{vars::l(1), 2}, {vars::l(2), 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Pole);
  }
  EXPECT_EQ(evaluate(x, {{vars::l(1), 3}, {vars::l(2), 1}}), mpq_class(1, 2));
}

TEST(Scalars, Derivative) {
  EXPECT_EQ(derivative(P("1/(l1+1)"), vars::l(1)), P("-1/(l1+1)^2"));
  EXPECT_EQ(derivative(P("l1^3*l2"), vars::l(2)), P("l1^3"));
}

TEST(Scalars, GammaExpandClassical) {
  GammaSeries g = gamma_expand(P("1/(l1+1)"), 2, Mode::Classical);
  EXPECT_TRUE(g[0].is_zero());
  EXPECT_EQ(g[1], P("1/l1"));
  EXPECT_EQ(g[2], P("-1/l1^2"));
  try {
    gamma_expand(P("l1"), 2, Mode::Classical);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRegular);
  }
}

TEST(Scalars, GammaExpandQuantum) {
  // (q^{-1} - q)/(q^{2(lambda+1)} - 1) with q = exp(-eps gamma / 2), t -> w.
  GammaSeries g = gamma_expand(P("(s^-2-s^2)/(s^4*t1^2-1)"), 2, Mode::Quantum);
  EXPECT_TRUE(g[0].is_zero());
  EXPECT_EQ(g[1], P("e/(w1^2-1)"));
  // order 2: numerator is odd in gamma, denominator q^2 w^2 - 1 = w^2 - 1 - eps gamma w^2 + ...
  EXPECT_EQ(g[2], P("e^2*w1^2/(w1^2-1)^2"));
  GammaSeries one = gamma_expand(P("s^2"), 3, Mode::Quantum);
  EXPECT_EQ(one[1], P("-e/2"));
  EXPECT_EQ(one[3], P("-e^3/48"));
}

TEST(Scalars, SeriesArithmetic) {
  GammaSeries a = gamma_expand(P("s^2"), 4, Mode::Quantum), b = gamma_expand(P("s^-2"), 4, Mode::Quantum);
  GammaSeries p = a * b;
  EXPECT_TRUE(p[0].is_one());
  for (int k = 1; k <= 4; ++k) EXPECT_TRUE(p[k].is_zero());
  EXPECT_EQ(a / a, gamma_expand(P("1"), 4, Mode::Quantum));
}
