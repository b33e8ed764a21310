#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plf/characters.hpp"
#include "plf/tate.hpp"

using namespace plf;

namespace {
const double eps = 1e-9;
bool close(Cplx a, Cplx b) { return std::abs(a - b) < eps; }
}  // namespace

TEST_CASE("additive character basics") {
  PAdicField F = make_field(3, 12);
  AddCharF psi = AddCharF::standard(F, 0);
  CHECK(close(psi.eval(PAdicNumber::from_int(F, 5)), Cplx(1, 0)));  // trivial on O
  CHECK(psi.conductor_exponent() == 0);
  // additivity on random pairs
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    PAdicNumber x = random_padic(F, rng, -4, 2), y = random_padic(F, rng, -4, 2);
    PAdicNumber s = x + y;
    CHECK(close(psi.eval(s), psi.eval(x) * psi.eval(y)));
  }
  // twisted conductor: n(psi_c) = n(psi) - v(c)
  for (int64_t c : {3, 9}) {
    AddCharF t = psi.twisted(PAdicNumber::from_int(F, c));
    CHECK(t.conductor_exponent() == -PAdicNumber::from_int(F, c).valuation());
  }
  AddCharF tinv = psi.twisted(PAdicNumber::from_ratio(F, 1, 3));
  CHECK(tinv.conductor_exponent() == 1);
  // p odd: psi_2 has the same conductor
  CHECK(psi.twice().conductor_exponent() == 0);
}

TEST_CASE("psi_E of delta vanishes to 1") {
  PAdicField F = make_field(5, 12);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = kind == EtaleKind::Unramified ? EtaleAlgebra::unramified(F)
                                                   : EtaleAlgebra::ramified(F);
    AddCharE psiE(E, psi);
    CHECK(close(psiE.eval(E.delta()), Cplx(1, 0)));  // Tr(delta) = 0
    // conductor by search: 0 unramified, -1 ramified (inverse different)
    CHECK(psiE.conductor_exponent() == (kind == EtaleKind::Unramified ? 0 : -1));
    // psi_E(x) = psi(x + theta(x)) on random x
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
      EtaleElement z = E.make(random_padic(F, rng, -3, 2), random_padic(F, rng, -3, 2));
      CHECK(close(psiE.eval(z), psi.eval(z.trace())));
    }
  }
}

TEST_CASE("multiplicative characters of F") {
  PAdicField F = make_field(3, 12);
  MultCharF triv = MultCharF::trivial(F);
  CHECK(close(triv.eval(PAdicNumber::from_int(F, 7)), Cplx(1, 0)));
  MultCharF leg = MultCharF::quadratic(F);
  CHECK(close(leg.eval(PAdicNumber::from_int(F, 2)), Cplx(-1, 0)));  // 2 non-residue mod 3
  CHECK(leg.depth() == 1);
  std::mt19937_64 rng(31);
  MultCharF chi = MultCharF::from_generator(F, 2, 1, Cplx(0, 1));
  CHECK(chi.depth() == 2);
  for (int i = 0; i < 200; ++i) {
    PAdicNumber x = random_padic(F, rng), y = random_padic(F, rng);
    CHECK(close(chi.eval(x * y), chi.eval(x) * chi.eval(y)));
  }
  // trivial on 1 + p^d, not on 1 + p^{d-1}
  CHECK(close(chi.eval(PAdicNumber::from_int(F, 10)), Cplx(1, 0)));  // 1 + 9
  CHECK_FALSE(close(chi.eval(PAdicNumber::from_int(F, 4)), Cplx(1, 0)));  // 1 + 3
  CHECK_THROWS_AS(chi.eval(PAdicNumber::zero(F)), ZeroArgument);
}

TEST_CASE("depth minimization") {
  PAdicField F = make_field(5, 12);
  // a depth-2 spec that factors through depth 1: k multiple of p
  MultCharF c = MultCharF::from_generator(F, 2, 5, Cplx(1, 0));
  CHECK(c.depth() == 1);
}

TEST_CASE("characters of E and conjugate duals") {
  PAdicField F = make_field(3, 12);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = kind == EtaleKind::Unramified ? EtaleAlgebra::unramified(F)
                                                   : EtaleAlgebra::ramified(F);
    // residue characters at depth 1
    std::vector<MultCharE> chis;
    chis.push_back(MultCharE::unramified(E, Cplx(0, 1)));
    chis.push_back(MultCharE::norm_pullback(E, MultCharF::quadratic(F)));
    std::mt19937_64 rng(77);
    for (auto& chi : chis) {
      // multiplicativity
      for (int i = 0; i < 100; ++i) {
        EtaleElement z = E.make(random_padic(F, rng), random_padic(F, rng));
        EtaleElement w = E.make(random_padic(F, rng), random_padic(F, rng));
        if (z.norm().is_zero() || w.norm().is_zero()) continue;
        CHECK(close(chi.eval(z * w), chi.eval(z) * chi.eval(w)));
      }
      // (chi*)* = chi on sample points
      MultCharE dd = chi.conj_dual().conj_dual();
      for (int i = 0; i < 50; ++i) {
        EtaleElement z = E.make(random_padic(F, rng), random_padic(F, rng));
        if (z.norm().is_zero()) continue;
        CHECK(close(dd.eval(z), chi.eval(z)));
      }
      CHECK(chi.conj_dual().depth() == chi.depth());
    }
  }
}

TEST_CASE("split conjugate dual swaps and inverts") {
  PAdicField F = make_field(3, 12);
  EtaleAlgebra E = EtaleAlgebra::split(F);
  MultCharF c1 = MultCharF::quadratic(F), c2 = MultCharF::unramified(F, Cplx(0, 1));
  MultCharE tau = MultCharE::split_pair(E, c1, c2);
  MultCharE taus = tau.conj_dual();
  CHECK(taus.comp1().values_equal(c2.inverse()));
  CHECK(taus.comp2().values_equal(c1.inverse()));
  // restriction to F^x: chi1 * chi2
  MultCharF chi0 = tau.restrict_to_F();
  CHECK(chi0.values_equal(c1.product(c2)));
}

TEST_CASE("omega_EF") {
  PAdicField F = make_field(5, 12);
  EtaleAlgebra Es = EtaleAlgebra::split(F);
  EtaleAlgebra Eu = EtaleAlgebra::unramified(F);
  EtaleAlgebra Er = EtaleAlgebra::ramified(F);
  CHECK(omega_EF(Es, PAdicNumber::from_int(F, 5)) == 1);
  CHECK(omega_EF(Eu, PAdicNumber::from_int(F, 1)) == 1);
  CHECK(omega_EF(Eu, PAdicNumber::from_int(F, 5)) == -1);
  std::mt19937_64 rng(13);
  for (auto* Ep : {&Eu, &Er}) {
    // omega is quadratic and matches the table-backed character
    MultCharF om = omega_char(*Ep);
    for (int i = 0; i < 200; ++i) {
      PAdicNumber x = random_padic(F, rng), y = random_padic(F, rng);
      CHECK(omega_EF(*Ep, x) * omega_EF(*Ep, y) == omega_EF(*Ep, x * y));
      CHECK(close(om.eval(x), Cplx(omega_EF(*Ep, x), 0)));
    }
    for (int i = 0; i < 100; ++i) {
      EtaleElement z = Ep->make(random_padic(F, rng), random_padic(F, rng));
      if (z.norm().is_zero()) continue;
      CHECK(omega_EF(*Ep, z.norm()) == 1);
    }
  }
}

TEST_CASE("U1 characters through the pullback") {
  PAdicField F = make_field(3, 12);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = kind == EtaleKind::Unramified ? EtaleAlgebra::unramified(F)
                                                   : EtaleAlgebra::ramified(F);
    // eta must be trivial on F^x
    CHECK_THROWS_AS(U1Char(MultCharE::unramified(E, Cplx(0, 1))), NotTrivialOnF);
    // the trivial character always passes
    U1Char triv(MultCharE::trivial(E));
    CHECK(close(triv.eval(E.one()), Cplx(1, 0)));
    // eta(theta(a)) = eta(a)^{-1} for eta trivial on F^x: check on the
    // norm-one parametrized family once real families exist (suite tests)
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
      EtaleElement a = E.make(random_padic(F, rng), random_padic(F, rng));
      if (a.norm().is_zero()) continue;
      Cplx v1 = triv.eta().eval(a.theta());
      Cplx v2 = Cplx(1, 0) / triv.eta().eval(a);
      CHECK(close(v1, v2));
    }
  }
}
