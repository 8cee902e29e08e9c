#include <gtest/gtest.h>

#include "dyb/error.hpp"
#include "dyb/module.hpp"

using namespace dyb;

namespace {

Matrix op_coproduct_E(const WeightModule& a, const WeightModule& b, int i) {
  if (a.mode() == Mode::Classical) return kron(a.e(i), Matrix::identity(b.dim())) + kron(Matrix::identity(a.dim()), b.e(i));
  return kron(a.k_power(i, 1), b.e(i)) + kron(a.e(i), Matrix::identity(b.dim()));
}

Matrix op_coproduct_F(const WeightModule& a, const WeightModule& b, int i) {
  if (a.mode() == Mode::Classical) return kron(a.f(i), Matrix::identity(b.dim())) + kron(Matrix::identity(a.dim()), b.f(i));
  return kron(Matrix::identity(a.dim()), b.f(i)) + kron(a.f(i), b.k_power(i, -1));
}

void expect_quasitriangular(const WeightModule& a, const WeightModule& b) {
  Matrix r = constant_R(a, b);
  WeightModule ab = tensor(a, b);
  for (int i = 0; i < a.datum().rank(); ++i) {
    EXPECT_EQ(r * ab.e(i), op_coproduct_E(a, b, i) * r) << a.name() << " " << b.name();
    EXPECT_EQ(r * ab.f(i), op_coproduct_F(a, b, i) * r) << a.name() << " " << b.name();
  }
}

}  // namespace

TEST(Reps, VectorModulesSatisfyRelations) {
  for (auto name : {"sl2", "gl2", "gl3", "sl3", "gl4"})
    for (Mode m : {Mode::Classical, Mode::Quantum}) {
      WeightModule v = WeightModule::vector(RootDatum::from_name(name), m);
      EXPECT_NO_THROW(check_module(v)) << name;
      EXPECT_NO_THROW(check_module(dual(v))) << name;
    }
}

TEST(Reps, Sl2VectorAction) {
  WeightModule v = WeightModule::vector(RootDatum::sl(2), Mode::Classical);
  EXPECT_EQ(v.e(0)(0, 1), Scalar(1));
  EXPECT_EQ(v.f(0)(1, 0), Scalar(1));
  EXPECT_EQ(v.weight(0), Weight{1});
  EXPECT_EQ(v.weight(1), Weight{-1});
  WeightModule vq = WeightModule::vector(RootDatum::sl(2), Mode::Quantum);
  EXPECT_EQ(vq.bracket_value(0), Matrix::diagonal({Scalar(1), Scalar(-1)}));
}

TEST(Reps, TensorProducts) {
  for (Mode m : {Mode::Classical, Mode::Quantum}) {
    WeightModule v = WeightModule::vector(RootDatum::gl(3), m);
    WeightModule v3 = tensor_power(v, 3);
    EXPECT_EQ(v3.dim(), 27);
    EXPECT_NO_THROW(check_module(v3));
    WeightModule s = WeightModule::vector(RootDatum::sl(2), m);
    WeightModule ss = tensor(s, s);
    EXPECT_EQ(ss.dim(), 4);
    EXPECT_EQ(ss.weight(1), Weight{0});
  }
}

TEST(Reps, SymAndExtPowers) {
  struct Case {
    const char* alg;
    bool sym;
    int m, dim;
  };
  for (Mode mode : {Mode::Classical, Mode::Quantum})
    for (Case c : {Case{"sl2", true, 2, 3}, Case{"sl2", true, 3, 4}, Case{"gl2", false, 2, 1}, Case{"gl3", false, 3, 1},
                   Case{"gl3", false, 2, 3}, Case{"gl3", true, 2, 6}, Case{"gl2", true, 4, 5}}) {
      RootDatum d = RootDatum::from_name(c.alg);
      WeightModule w = c.sym ? sym_power(d, mode, c.m) : ext_power(d, mode, c.m);
      EXPECT_EQ(w.dim(), c.dim) << c.alg << " " << c.m;
      EXPECT_NO_THROW(check_module(w)) << w.name();
      EXPECT_EQ(w.projection() * w.embedding(), Matrix::identity(w.dim()));
    }
}

TEST(Reps, GlUnitsCloseUnderCommutators) {
  WeightModule v = tensor(WeightModule::vector(RootDatum::gl(3), Mode::Classical),
                          sym_power(RootDatum::gl(3), Mode::Classical, 2));
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          Matrix want = Matrix(v.dim(), v.dim());
          if (b == c) want += v.gl_unit(a, d);
          if (d == a) want = want - v.gl_unit(c, b);
          EXPECT_EQ(commutator(v.gl_unit(a, b), v.gl_unit(c, d)), want);
        }
}

TEST(Reps, ConstantRIntertwinesCoproducts) {
  RootDatum g3 = RootDatum::gl(3), s2 = RootDatum::sl(2);
  WeightModule v3 = WeightModule::vector(g3, Mode::Quantum);
  expect_quasitriangular(v3, v3);
  expect_quasitriangular(ext_power(g3, Mode::Quantum, 2), v3);
  WeightModule v2 = WeightModule::vector(s2, Mode::Quantum);
  WeightModule s22 = sym_power(s2, Mode::Quantum, 2);
  expect_quasitriangular(v2, s22);
  expect_quasitriangular(s22, s22);
}

TEST(Reps, UniversalSl2FormulaAgrees) {
  RootDatum s2 = RootDatum::sl(2);
  WeightModule v = WeightModule::vector(s2, Mode::Quantum);
  WeightModule s22 = sym_power(s2, Mode::Quantum, 2);
  EXPECT_EQ(constant_R_sl2(v, v), constant_R(v, v));
  EXPECT_EQ(constant_R_sl2(s22, v), constant_R(s22, v));
  EXPECT_EQ(constant_R_sl2(v, s22), constant_R(v, s22));
}

TEST(Reps, VectorRSatisfiesHecke) {
  for (auto name : {"gl2", "gl3"}) {
    WeightModule v = WeightModule::vector(RootDatum::from_name(name), Mode::Quantum);
    int n = v.dim();
    Matrix pr = flip(n, n) * constant_R(v, v);
    Matrix id = Matrix::identity(n * n);
    Scalar q = qpow(1);
    EXPECT_TRUE(((pr - id * q) * (pr + id * q.inverse())).is_zero());
  }
}

TEST(Reps, ClassicalSpecialization) {
  RootDatum d = RootDatum::gl(3);
  WeightModule c = sym_power(d, Mode::Classical, 2), q = sym_power(d, Mode::Quantum, 2);
  ASSERT_EQ(c.dim(), q.dim());
  for (int i = 0; i < d.rank(); ++i)
    for (int x = 0; x < c.dim(); ++x)
      for (int y = 0; y < c.dim(); ++y) {
        Scalar at1 = Scalar(evaluate(q.e(i)(x, y), {{vars::s(), 1}}));
        EXPECT_EQ(at1, c.e(i)(x, y));
      }
}

TEST(Reps, BadModuleRejected) {
  WeightModule v = WeightModule::vector(RootDatum::gl(2), Mode::Classical);
  v.e(0)(0, 1) = Scalar(2);
  EXPECT_THROW(check_module(v), Error);
}
