#include <gtest/gtest.h>

#include "dyb/catalog.hpp"
#include "dyb/error.hpp"
#include "dyb/verify.hpp"

using namespace dyb;

namespace {

Scalar P(const char* s) { return Scalar::parse(s); }

// subsets of {0, ..., k - 1}
std::vector<std::vector<int>> subsets(int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<int> x;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) x.push_back(i);
    out.push_back(x);
  }
  return out;
}

std::vector<int> one_based(std::vector<int> x) {
  for (int& i : x) ++i;
  return x;
}

}  // namespace

TEST(ClosedForms, MatchFusionBothMethods) {
  for (Mode m : {Mode::Classical, Mode::Quantum})
    for (int n : {2, 3}) {
      WeightModule v = WeightModule::vector(RootDatum::gl(n), m);
      ClosedForms cf = gl_closed_forms(n, m);
      EXPECT_EQ(cf.J.m, fusion(v, v, FusionMethod::Exchange).m) << n;
      EXPECT_EQ(cf.J.m, fusion(v, v, FusionMethod::ABRR).m) << n;
      EXPECT_EQ(cf.R.m, exchange_matrix(v, v, FusionMethod::Exchange).m) << n;
      EXPECT_EQ(cf.R.m, exchange_matrix(v, v, FusionMethod::ABRR).m) << n;
    }
}

TEST(ClosedForms, Gl2ExampleEntries) {
  ClosedForms c = gl_closed_forms(2, Mode::Classical);
  // E_21 (x) E_12 coefficient of J and the a > b diagonal of R
  EXPECT_EQ(c.J.m(1 * 2 + 0, 0 * 2 + 1), P("1/(l2-l1-1)"));
  EXPECT_EQ(c.R.m(1 * 2 + 0, 1 * 2 + 0), P("1-1/(l2-l1-1)^2"));
  EXPECT_TRUE(qdybe_residual(c.R).ok());
  EXPECT_TRUE(qdybe_residual(gl_closed_forms(2, Mode::Quantum).R).ok());
}

TEST(Classical, BasicFamiliesSolveCdybe) {
  for (const char* name : {"sl2", "gl2", "gl3", "sl3", "gl4"}) {
    RootDatum d = RootDatum::from_name(name);
    auto rat = basic_rational_r(d);
    EXPECT_TRUE(cdybe_residual(rat).ok()) << cdybe_residual(rat).summary();
    EXPECT_TRUE(unitarity_check(rat).ok());
    for (Scalar eps : {Scalar(1), Scalar(2), P("-1/3")}) {
      auto trig = basic_trig_r(d, eps);
      EXPECT_TRUE(cdybe_residual(trig).ok()) << cdybe_residual(trig).summary();
      EXPECT_TRUE(unitarity_check(trig).ok());
    }
  }
}

TEST(Classical, RepsXSolveCdybe) {
  for (const char* name : {"sl2", "gl2", "gl3", "gl4"}) {
    RootDatum d = RootDatum::from_name(name);
    int n = d.n();
    for (auto& x : subsets(n - 1)) {
      auto r = r_eps_X(d, x, Scalar(1));
      auto rep = cdybe_residual(r);
      EXPECT_TRUE(rep.ok()) << name << " " << rep.summary();
      EXPECT_TRUE(unitarity_check(r).ok());
    }
  }
}

TEST(Classical, RlSubalgebras) {
  RootDatum d = RootDatum::gl(3);
  auto empty = r_l(d, {});
  EXPECT_TRUE(empty.coeffs.empty());
  auto full = r_l(d, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_EQ(full.coeffs, basic_rational_r(d).coeffs);
  auto levi = r_l(d, {{0, 1}});
  EXPECT_TRUE(cdybe_residual(levi).ok());
  EXPECT_TRUE(cdybe_residual(r_l(RootDatum::gl(4), {{0, 1}, {2, 3}})).ok());
  try {
    r_l(d, {{0, 1}, {1, 2}});
    FAIL() << "expected invalid-subalgebra";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSubalgebra);
  }
}

TEST(Triples, Gl3TripleSolvesCdybe) {
  RootDatum d = RootDatum::gl(3);
  BDTriple t{{0}, {1}, {{1, 1, 1}, {1, 0, -1}}};
  check_triple(d, t);
  auto r = triple_r(d, t);
  auto rep = cdybe_residual(r);
  EXPECT_TRUE(rep.ok()) << rep.summary();
  EXPECT_TRUE(unitarity_check(r).ok());
  EXPECT_TRUE(triple_r0(d, t).is_zero());
}

TEST(Triples, IdentityTripleIsTrigonometric) {
  for (const char* name : {"sl2", "gl2", "gl3"}) {
    RootDatum d = RootDatum::from_name(name);
    BDTriple t;
    for (int i = 0; i + 1 < d.n(); ++i) {
      t.gamma1.push_back(i);
      t.gamma2.push_back(i);
    }
    if ((d.flavor() == Flavor::GL))
      for (int i = 0; i < d.n(); ++i) {
        std::vector<mpq_class> e(d.n());
        e[i] = 1;
        t.l_basis.push_back(e);
      }
    else
      t.l_basis.push_back({1, -1});
    check_triple(d, t);
    auto r = triple_r(d, t);
    auto rep = cdybe_residual(r);
    EXPECT_TRUE(rep.ok()) << name << " " << rep.summary();
    std::vector<int> all;
    for (int i = 0; i + 1 < d.n(); ++i) all.push_back(i);
    auto rx = r_eps_X(d, all, Scalar(1));
    // both are expressed through exponential symbols of the same coordinates on gl_n
    if ((d.flavor() == Flavor::GL)) EXPECT_EQ(r.coeffs, rx.coeffs) << name;
  }
}

TEST(Triples, RejectsBadTriples) {
  RootDatum d = RootDatum::gl(3);
  auto bad = [&](BDTriple t) {
    try {
      check_triple(d, t);
      return false;
    } catch (const Error& e) {
      return e.kind() == ErrorKind::InvalidTriple;
    }
  };
  // l not orthogonal to tau(alpha) - alpha
  EXPECT_TRUE(bad({{0}, {1}, {{1, 0, 0}}}));
  EXPECT_TRUE(bad({{0}, {0, 1}, {{1, 1, 1}}}));
}

TEST(Quantum, RXSolvesQdybeAndHecke) {
  for (int n : {2, 3, 4})
    for (auto& x : subsets(n)) {
      DynOp r = quantum_R_X(n, one_based(x));
      auto rep = qdybe_residual(r);
      EXPECT_TRUE(rep.ok()) << n << " " << rep.summary();
      EXPECT_TRUE(hecke_check(r, Scalar(1)).ok());
      DynOp re = quantum_R_eps_X(n, one_based(x));
      auto rep2 = qdybe_residual(re);
      EXPECT_TRUE(rep2.ok()) << n << " " << rep2.summary();
      auto h = hecke_check(re, qpow(1));
      EXPECT_TRUE(h.ok()) << h.summary();
    }
}

TEST(Quantum, TrigonometricFamilyDegeneratesToRational) {
  // at s = 1 the in-block beta tends to 1/(l_b - l_a) after t_a = exp(eps l_a), eps -> 0;
  // the outside entries become exactly those of R_X
  for (auto& x : subsets(3)) {
    DynOp re = quantum_R_eps_X(3, one_based(x));
    Matrix at1 = re.m.map([](const Scalar& c) { return substitute(c, {{vars::id("s"), Scalar(1)}}); });
    DynOp r = quantum_R_X(3, one_based(x));
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (r.m(i, j).is_zero() || r.m(i, j).is_one()) EXPECT_EQ(at1(i, j), r.m(i, j)) << i << " " << j;
  }
}

TEST(Quantum, Intervals) {
  EXPECT_EQ(intervals({1, 2, 4}), (std::vector<std::vector<int>>{{1, 2}, {4}}));
  EXPECT_TRUE(intervals({}).empty());
}
