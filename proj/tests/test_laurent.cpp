#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plf/laurent.hpp"

#include <random>

using namespace plf;

namespace {
LaurentRational rand_lr(std::mt19937_64& rng, int64_t q) {
  std::uniform_int_distribution<int> dn(0, 3), de(-2, 2);
  std::uniform_real_distribution<double> dc(-2.0, 2.0);
  LaurentPoly num, den;
  int tn = dn(rng) + 1, td = dn(rng) + 1;
  for (int i = 0; i < tn; ++i) num.add_term(de(rng), Cplx(dc(rng), dc(rng)));
  for (int i = 0; i < td; ++i) den.add_term(de(rng), Cplx(dc(rng), dc(rng)));
  if (num.is_zero()) num.add_term(0, Cplx(1, 0));
  if (den.is_zero()) den.add_term(0, Cplx(1, 0));
  return LaurentRational(num, den, q);
}
}  // namespace

TEST_CASE("division and substitution basics") {
  LaurentRational one = LaurentRational::constant(Cplx(1, 0), 3);
  LaurentRational X = LaurentRational::monomial(Cplx(1, 0), 1, 3);
  CHECK(lr_equal((one - X) / (one - X), one));
  // pow substitution X -> X^2
  LaurentRational a = one - X;
  LaurentRational b = a.subst_monomial(Cplx(1, 0), 2, 3);
  LaurentRational X2 = LaurentRational::monomial(Cplx(1, 0), 2, 3);
  CHECK(lr_equal(b, one - X2));
  CHECK_THROWS_AS(one / (one - one), DivideByZeroRational);
}

TEST_CASE("random algebra roundtrips") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    LaurentRational a = rand_lr(rng, 5), b = rand_lr(rng, 5);
    if (b.is_zero()) continue;
    CHECK(lr_equal((a * b) / b, a));
  }
}

TEST_CASE("lr_equal is an equivalence on samples") {
  std::mt19937_64 rng(99);
  LaurentRational a = rand_lr(rng, 3);
  CHECK(lr_equal(a, a));
  LaurentRational noisy = a.scaled(Cplx(1 + 1e-12, 0));
  CHECK(lr_equal(a, noisy));
  CHECK(lr_equal(noisy, a));
  LaurentRational one = LaurentRational::constant(Cplx(1, 0), 3);
  LaurentRational X = LaurentRational::monomial(Cplx(1, 0), 1, 3);
  CHECK_FALSE(lr_equal(one, one + X));
}

TEST_CASE("evaluation homomorphism") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> dx(0.1, 0.5);
  for (int i = 0; i < 50; ++i) {
    LaurentRational a = rand_lr(rng, 7), b = rand_lr(rng, 7);
    Cplx x0(dx(rng), 0);
    Cplx lhs = (a * b).eval(x0);
    Cplx rhs = a.eval(x0) * b.eval(x0);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + std::abs(rhs)));
    lhs = (a + b).eval(x0);
    rhs = a.eval(x0) + b.eval(x0);
    CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("constant certification") {
  LaurentRational one = LaurentRational::constant(Cplx(1, 0), 3);
  LaurentRational X = LaurentRational::monomial(Cplx(1, 0), 1, 3);
  LaurentRational c = ((one - X) * LaurentRational::constant(Cplx(0, 2), 3)) / (one - X);
  CHECK(std::abs(lr_constant_value(c) - Cplx(0, 2)) < 1e-12);
  CHECK_THROWS_AS(lr_constant_value(one + X), NotConstant);
}

TEST_CASE("degree cap trips on runaway products") {
  LaurentPoly big;
  big.add_term(0, Cplx(1, 0));
  big.add_term(200, Cplx(1, 0));
  LaurentRational a(big, LaurentPoly(Cplx(1, 0)), 3);
  CHECK_THROWS_AS(a * a, NonStabilizingShells);
}
