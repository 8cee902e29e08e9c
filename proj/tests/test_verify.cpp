#include <gtest/gtest.h>

#include "dyb/error.hpp"
#include "dyb/verify.hpp"

using namespace dyb;

namespace {

Scalar P(const char* s) { return Scalar::parse(s); }

WeightModule vec(const char* alg, Mode m) { return WeightModule::vector(RootDatum::from_name(alg), m); }

Matrix at_eps(const Matrix& m, const Scalar& eps) {
  return m.map([&](const Scalar& x) { return substitute(x, {{vars::id("e"), eps}}); });
}

bool throws_kind(const std::function<void()>& f, ErrorKind k) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

std::vector<std::vector<Scalar>> zero_form(int k) { return std::vector<std::vector<Scalar>>(k, std::vector<Scalar>(k)); }

}  // namespace

TEST(Qdybe, ExchangeMatricesSolveIt) {
  for (Mode m : {Mode::Classical, Mode::Quantum})
    for (const char* alg : {"sl2", "gl2", "gl3"}) {
      WeightModule v = vec(alg, m);
      auto rep = qdybe_residual(exchange_matrix(v, v, FusionMethod::Exchange));
      EXPECT_TRUE(rep.ok()) << rep.summary();
    }
}

TEST(Qdybe, ReportShape) {
  auto rep = qdybe_residual(quantum_R_X(2, {1, 2}));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.entries, 64);
  EXPECT_EQ(rep.nonzero, 0);
  EXPECT_EQ(rep.max_degree, 1);
  EXPECT_NE(rep.summary().find("zero"), std::string::npos);
}

TEST(Cocycle, HoldsOnTriples) {
  for (Mode m : {Mode::Classical, Mode::Quantum}) {
    RootDatum s2 = RootDatum::sl(2);
    WeightModule v = vec("sl2", m), s = sym_power(s2, m, 2);
    for (auto method : {FusionMethod::Exchange, FusionMethod::ABRR}) {
      EXPECT_TRUE(cocycle_residual(v, v, v, method).ok());
      EXPECT_TRUE(cocycle_residual(s, v, v, method).ok());
      EXPECT_TRUE(cocycle_residual(v, s, v, method).ok());
    }
    WeightModule g = vec("gl2", m);
    auto rep = cocycle_residual(g, g, g);
    EXPECT_TRUE(rep.ok()) << rep.summary();
  }
  WeightModule g3 = vec("gl3", Mode::Quantum);
  EXPECT_TRUE(cocycle_residual(g3, g3, g3).ok());
}

TEST(Hecke, ExchangeMatrixOfVectorRep) {
  // PR has eigenvalues q and -q^{-1} in the gl normalization; R/q is Hecke with parameter q^{-2}
  for (int n : {2, 3}) {
    DynOp r = exchange_matrix(vec(n == 2 ? "gl2" : "gl3", Mode::Quantum), vec(n == 2 ? "gl2" : "gl3", Mode::Quantum),
                              FusionMethod::Exchange);
    DynOp scaled = r;
    scaled.m = r.m * qpow(-1);
    EXPECT_TRUE(hecke_check(scaled, qpow(-2)).ok()) << hecke_check(scaled, qpow(-2)).summary();
  }
}

TEST(Hecke, DynamicalRepresentation) {
  for (int n : {2, 3})
    for (int p : {2, 3, 4}) {
      if (n == 3 && p == 4) continue;
      std::vector<int> all;
      for (int a = 1; a <= n; ++a) all.push_back(a);
      auto rep = dynamical_hecke_rep(quantum_R_eps_X(n, all), p, qpow(1));
      EXPECT_TRUE(rep.ok()) << n << " " << p;
      EXPECT_EQ(static_cast<int>(rep.generators.size()), p - 1);
      EXPECT_TRUE(dynamical_hecke_rep(quantum_R_X(n, all), p, Scalar(1)).ok());
    }
  auto rep = dynamical_hecke_rep(quantum_R_eps_X(3, {1, 2, 3}), 4, qpow(1));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.relations.size(), 3u + 2u + 1u);
}

TEST(Hecke, ShiftConventionMatters) {
  // shifting by the later slots gives the equation for the inverse matrix instead
  auto rep = dynamical_hecke_rep(quantum_R_eps_X(2, {1, 2}), 3, qpow(1), BraidShift::Following);
  bool braid_ok = true;
  for (auto& r : rep.relations)
    if (r.equation.rfind("braid", 0) == 0) braid_ok = braid_ok && r.ok();
  EXPECT_FALSE(braid_ok);
}

TEST(Gauge, ClassicalKinds) {
  RootDatum g3 = RootDatum::gl(3);
  auto r = basic_rational_r(g3);
  // constant and l1-dependent closed forms
  auto c = zero_form(3);
  c[0][1] = Scalar(2);
  c[1][0] = Scalar(-2);
  c[0][2] = lam(1);
  c[2][0] = -lam(1);
  auto g1 = gauge_classical(r, Gauge{1, c, {}, {}, {}});
  EXPECT_TRUE(cdybe_residual(g1).ok());
  EXPECT_FALSE(unitarity_check(g1).ok() && g1.coeffs == r.coeffs);
  auto bad = zero_form(3);
  bad[0][1] = lam(3);
  bad[1][0] = -lam(3);
  EXPECT_TRUE(throws_kind([&] { gauge_classical(r, Gauge{1, bad, {}, {}, {}}); }, ErrorKind::InvalidGauge));

  auto g2 = gauge_classical(r, Gauge{2, {}, {1, mpq_class(1, 2), -3}, {}, {}});
  EXPECT_TRUE(cdybe_residual(g2).ok());
  EXPECT_EQ(g2.coeffs.at({0 * 3 + 1, 1 * 3 + 0}), P("1/(l1-l2-1/2)"));

  auto g3r = gauge_classical(r, Gauge{3, {}, {}, {}, {2, 0, 1}});
  EXPECT_EQ(g3r.coeffs, r.coeffs);

  auto trig = basic_trig_r(g3, Scalar(1));
  auto t2 = gauge_classical(trig, Gauge{2, {}, {}, {Scalar(2), Scalar(3), P("1/5")}, {}});
  EXPECT_TRUE(cdybe_residual(t2).ok());
  auto t1 = gauge_classical(trig, Gauge{1, c, {}, {}, {}});
  EXPECT_TRUE(cdybe_residual(t1).ok());
  auto t3 = gauge_classical(basic_trig_r(RootDatum::sl(2), Scalar(1)), Gauge{3, {}, {}, {}, {1, 0}});
  EXPECT_TRUE(cdybe_residual(t3).ok());
}

TEST(Gauge, QuantumKinds) {
  DynOp r = quantum_R_eps_X(3, {1, 2, 3});
  auto phi = zero_form(3);
  phi[0][1] = Scalar(5);
  phi[1][0] = P("1/5");
  phi[0][2] = qpow(3);
  phi[2][0] = qpow(-3);
  phi[1][2] = Scalar(1);
  phi[2][1] = Scalar(1);
  auto g1 = gauge_quantum(r, Gauge{1, phi, {}, {}, {}});
  EXPECT_TRUE(qdybe_residual(g1).ok());
  EXPECT_NE(g1.m, r.m);

  auto open = zero_form(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) open[a][b] = Scalar(1);
  open[0][1] = tq(3);
  open[1][0] = tq(3).inverse();
  EXPECT_TRUE(throws_kind([&] { gauge_quantum(r, Gauge{1, open, {}, {}, {}}); }, ErrorKind::InvalidGauge));
  auto asym = zero_form(3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) asym[a][b] = Scalar(2);
  EXPECT_TRUE(throws_kind([&] { gauge_quantum(r, Gauge{1, asym, {}, {}, {}}); }, ErrorKind::InvalidGauge));

  auto g2 = gauge_quantum(r, Gauge{2, {}, {mpq_class(1, 2), 0, 2}, {}, {}});
  EXPECT_TRUE(qdybe_residual(g2).ok());

  // permuting the rational family relabels its intervals
  DynOp rx = quantum_R_X(3, {1, 2});
  EXPECT_EQ(gauge_quantum(rx, Gauge{3, {}, {}, {}, {2, 1, 0}}).m, quantum_R_X(3, {2, 3}).m);
  EXPECT_TRUE(qdybe_residual(gauge_quantum(r, Gauge{3, {}, {}, {}, {1, 2, 0}})).ok());
}

TEST(NegativeControls, PerturbationsAreCaught) {
  DynOp r = quantum_R_eps_X(2, {1, 2});
  DynOp rx = quantum_R_X(3, {1, 2, 3});
  for (unsigned seed : {1u, 2u, 3u, 7u, 11u}) {
    auto rep = qdybe_residual(perturb(r, seed));
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.witness.is_zero());
    EXPECT_FALSE(rep.witness_index.empty());
    EXPECT_FALSE(qdybe_residual(perturb(rx, seed)).ok());
    EXPECT_FALSE(cdybe_residual(perturb(basic_rational_r(RootDatum::gl(3)), seed)).ok());
    EXPECT_FALSE(cdybe_residual(perturb(basic_trig_r(RootDatum::sl(2), Scalar(1)), seed)).ok());
  }
  // identity plus a dynamical diagonal term
  DynOp id = rx;
  id.m = Matrix::identity(9);
  id.m(1, 1) += lam(1);
  EXPECT_FALSE(qdybe_residual(id).ok() && hecke_check(id, Scalar(1)).ok());
  ClassicalRMatrix broken = basic_rational_r(RootDatum::gl(2));
  broken.coeffs = add(broken.coeffs, Tensor2{{{0, 3}, Scalar(1)}});
  EXPECT_FALSE(unitarity_check(broken).ok());
}

TEST(ClassicalLimit, QuantumExchangeGivesTrigonometricR) {
  // R(lambda / gamma) = 1 - gamma r + O(gamma^2) with q = exp(-eps gamma / 2), eps symbolic
  Scalar eps = Scalar::var(vars::e());
  for (const char* alg : {"gl2", "gl3", "sl2"}) {
    RootDatum d = RootDatum::from_name(alg);
    WeightModule vq = WeightModule::vector(d, Mode::Quantum), vc = WeightModule::vector(d, Mode::Classical);
    DynOp r = exchange_matrix(vq, vq, FusionMethod::Exchange);
    if (d.flavor() == Flavor::SL) r = sl2_normalized(r);
    auto lim = classical_limit(r, 1);
    EXPECT_TRUE(lim[0].is_identity());
    EXPECT_EQ(lim[1], basic_trig_r(d, eps).evaluate(vc, vc) * Scalar(-1)) << alg;
    EXPECT_EQ(at_eps(lim[1], Scalar(1)), basic_trig_r(d, Scalar(1)).evaluate(vc, vc) * Scalar(-1)) << alg;
  }
  // the gl_2 normalization on sl_2 adds eps / n^2 times the identity
  RootDatum s2 = RootDatum::sl(2);
  WeightModule vq = WeightModule::vector(s2, Mode::Quantum), vc = WeightModule::vector(s2, Mode::Classical);
  auto raw = classical_limit(exchange_matrix(vq, vq, FusionMethod::Exchange), 1);
  EXPECT_EQ(raw[1], (basic_trig_r(s2, eps).evaluate(vc, vc) + Matrix::identity(4) * (eps / Scalar(4))) * Scalar(-1));
}

TEST(ClassicalLimit, RationalExchangeGivesBasicR) {
  for (const char* alg : {"gl2", "gl3"}) {
    RootDatum d = RootDatum::from_name(alg);
    WeightModule v = WeightModule::vector(d, Mode::Classical);
    auto lim = classical_limit(exchange_matrix(v, v, FusionMethod::ABRR), 1);
    EXPECT_EQ(lim[1], basic_rational_r(d).evaluate(v, v) * Scalar(-1)) << alg;
  }
}

TEST(Unitarity, ExchangeInverse) {
  for (Mode m : {Mode::Classical, Mode::Quantum}) {
    WeightModule v = vec("gl3", m);
    DynOp r = exchange_matrix(v, v, FusionMethod::Exchange);
    // R = J^{-1} J^{21} classically; the quantum one carries the constant R-matrix
    EXPECT_EQ(inverse_unitarity(r).ok(), m == Mode::Classical);
  }
  EXPECT_TRUE(inverse_unitarity(quantum_R_X(3, {1, 2, 3})).ok());
  EXPECT_FALSE(inverse_unitarity(quantum_R_eps_X(2, {1, 2})).ok());
}
