#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plf/godement.hpp"

using namespace plf;

namespace {

EtaleAlgebra make_algebra(const PAdicField& F, EtaleKind kind) {
  switch (kind) {
    case EtaleKind::Split: return EtaleAlgebra::split(F);
    case EtaleKind::Unramified: return EtaleAlgebra::unramified(F);
    case EtaleKind::Ramified: return EtaleAlgebra::ramified(F);
  }
  throw Error("Unreachable", "make_algebra");
}

// a random element of U_2(F): diag(a, theta(a)^{-1}) * conj_delta(SL_2(F)) * w^k
Mat2E random_U2(const EtaleAlgebra& E, std::mt19937_64& rng) {
  const PAdicField& F = E.F();
  EtaleElement a = E.make(random_padic(F, rng, -1, 1), random_padic(F, rng, -1, 1));
  while (a.norm().is_zero())
    a = E.make(random_padic(F, rng, -1, 1), random_padic(F, rng, -1, 1));
  PAdicNumber x = random_padic(F, rng, -1, 1), y = random_padic(F, rng, -1, 1);
  PAdicNumber u = random_padic(F, rng, -1, 1);
  Mat2F h1{u, x * u, y * u, (PAdicNumber::from_int(F, 1) + x * y * u * u) * u.inverse()};
  EtaleElement d = E.delta();
  Mat2E conj{E.from_F(h1.a), d * E.from_F(h1.b), E.from_F(h1.c) * d.inverse(),
             E.from_F(h1.d)};
  Mat2E g = Mat2E::diag(a, a.theta().inverse()).mul(conj);
  if (rng() % 2) g = g.mul(Mat2E::w11(E));
  return g;
}

SchwartzF2 basis_phi(const PAdicField& F, int which) {
  PAdicNumber zero = PAdicNumber::zero(F);
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  switch (which % 4) {
    case 0: return SchwartzF2::unit_box(F);
    case 1: return SchwartzF2::box(F, one, 1, zero, 1);
    case 2: return SchwartzF2::box(F, zero, 1, one, 2, Cplx(1, 0.5));
    default: {
      SchwartzF2 f = SchwartzF2::unit_box(F);
      f.add_term(BallF{one, 2}, BallF{one, 1}, Cplx(0, 1));
      return f;
    }
  }
}

}  // namespace

TEST_CASE("U2 decomposition reconstructs the element") {
  PAdicField F = make_field(3, 24);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    std::mt19937_64 rng(61);
    for (int i = 0; i < 50; ++i) {
      Mat2E h = random_U2(E, rng);
      REQUIRE(h.in_U2());
      U2Decomposition dec = decompose_U2(h);
      EtaleElement d = E.delta();
      Mat2E conj{E.from_F(dec.h1.a), d * E.from_F(dec.h1.b),
                 E.from_F(dec.h1.c) * d.inverse(), E.from_F(dec.h1.d)};
      Mat2E back = Mat2E::diag(dec.a, dec.a.theta().inverse()).mul(conj);
      CHECK(back.a.same_residue(h.a, 6));
      CHECK(back.b.same_residue(h.b, 6));
      CHECK(back.c.same_residue(h.c, 6));
      CHECK(back.d.same_residue(h.d, 6));
    }
  }
}

TEST_CASE("section value is independent of the decomposition") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    std::mt19937_64 rng(62);
    for (auto& chi : e_char_family(E, 1, 3)) {
      GodementSection f{basis_phi(F, 1), chi, psi, +1, Cplx(1, 0)};
      MultCharF chi0 = chi.restrict_to_F();
      for (int i = 0; i < 15; ++i) {
        Mat2E h = random_U2(E, rng);
        U2Decomposition dec = decompose_U2(h);
        auto manual = [&](const EtaleElement& a, const Mat2F& h1) {
          int vN = static_cast<int>(a.norm_valuation());
          LaurentRational pref = LaurentRational::monomial(chi.eval(a), vN, F.p());
          return pref * tate_integral(f.phi.line_section(h1.c, h1.d), chi0, psi, 2, 0);
        };
        LaurentRational v1 = manual(dec.a, dec.h1);
        // rescale by c in F^x: a -> a c, h1 -> diag(c^{-1}, c) h1
        PAdicNumber c = random_padic(F, rng, -1, 1);
        Mat2F h1c{dec.h1.a * c.inverse(), dec.h1.b * c.inverse(), dec.h1.c * c,
                  dec.h1.d * c};
        LaurentRational v2 = manual(dec.a * E.from_F(c), h1c);
        CHECK(lr_equal(v1, v2));
        CHECK(lr_equal(v1, eval_section(f, h)));
      }
    }
  }
}

TEST_CASE("left equivariance of the section") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::unramified(F);
  std::mt19937_64 rng(63);
  for (auto& chi : e_char_family(E, 1, 2)) {
    GodementSection f{basis_phi(F, 0), chi, psi, +1, Cplx(1, 0)};
    for (int i = 0; i < 10; ++i) {
      Mat2E h = random_U2(E, rng);
      EtaleElement b = E.make(random_padic(F, rng, -1, 1), random_padic(F, rng, -1, 1));
      if (b.norm().is_zero()) continue;
      Mat2E bh = Mat2E::diag(b, b.theta().inverse()).mul(h);
      LaurentRational lhs = eval_section(f, bh);
      int vN = static_cast<int>(b.norm_valuation());
      LaurentRational factor = LaurentRational::monomial(chi.eval(b), vN, F.p());
      CHECK(lr_equal(lhs, factor * eval_section(f, h)));
    }
  }
}

TEST_CASE("field intertwining matches the closed form") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    int tested = 0;
    for (auto& chi : e_char_family(E, 1, 3)) {
      GodementSection f{basis_phi(F, tested), chi, psi, +1, Cplx(1, 0)};
      MultCharF chi0 = chi.restrict_to_F();
      Mat2E h = Mat2E::identity(E);
      LaurentRational lhs = intertwine_raw(f, h);
      GodementSection dual{fourier_symplectic(f.phi, psi.twice()), chi.conj_dual(), psi,
                           -1, Cplx(1, 0)};
      LaurentRational g2 = double_s_shift(gamma_wd(chi0, psi.twice()));
      EtaleElement md = -E.delta();
      int vN = static_cast<int>(E.delta().norm_valuation());
      LaurentRational mono = LaurentRational::monomial(
          Cplx(std::pow(3.0, -vN / 2.0), 0) / chi.eval(md), -vN, F.p());
      LaurentRational rhs = mono * eval_section(dual, h) / g2;
      CHECK(lr_equal(lhs, rhs));
      ++tested;
    }
  }
}

TEST_CASE("split intertwining matches the closed form") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::split(F);
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  Mat2F I2{one, PAdicNumber::zero(F), PAdicNumber::zero(F), one};
  int which = 0;
  for (auto c1 : {MultCharF::trivial(F), MultCharF::quadratic(F)})
    for (auto c2 : {MultCharF::trivial(F), MultCharF::unramified(F, Cplx(0, 1))}) {
      MultCharE tau = MultCharE::split_pair(E, c1, c2);
      GodementSection f{basis_phi(F, which++), tau, psi, +1, Cplx(1, 0)};
      LaurentRational lhs = intertwine_raw_split(f, I2);
      GodementSection dual{fourier_symplectic(f.phi, psi.twice()), tau.conj_dual(), psi,
                           -1, Cplx(1, 0)};
      LaurentRational g2 = double_s_shift(gamma_wd(c1.product(c2), psi.twice()));
      LaurentRational rhs = eval_section_split(dual, I2) / g2.scaled(c1.at_minus_one());
      CHECK(lr_equal(lhs, rhs));
    }
}

TEST_CASE("normalized intertwining certificate") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    int which = 0;
    for (auto& chi : e_char_family(E, 1, 3)) {
      GodementSection f{basis_phi(F, which++), chi, psi, +1, Cplx(1, 0)};
      CHECK_NOTHROW(intertwine_normalized(f, true));
    }
  }
  int which = 0;
  EtaleAlgebra Es = EtaleAlgebra::split(F);
  for (auto c1 : {MultCharF::trivial(F), MultCharF::quadratic(F)})
    for (auto c2 : {MultCharF::trivial(F), MultCharF::unramified(F, Cplx(-1, 0))}) {
      GodementSection f{basis_phi(F, which++), MultCharE::split_pair(Es, c1, c2), psi, +1,
                        Cplx(1, 0)};
      CHECK_NOTHROW(intertwine_normalized(f, true));
    }
}

TEST_CASE("double application of the normalized intertwining") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::unramified(F);
  auto chis = e_char_family(E, 1, 2);
  std::mt19937_64 rng(64);
  for (auto& chi : chis) {
    GodementSection f{basis_phi(F, 2), chi, psi, +1, Cplx(1, 0)};
    GodementSection ff = intertwine_normalized(intertwine_normalized(f));
    for (int i = 0; i < 5; ++i) {
      Mat2E h = random_U2(E, rng);
      CHECK(lr_equal(eval_section(ff, h), eval_section(f, h)));
    }
  }
}

TEST_CASE("fourier lemma, field case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    for (int which = 0; which < 3; ++which) {
      auto rep = verify_ft_field(E, psi, basis_phi(F, which), 60, 1000 + which);
      CHECK(rep.max_deviation < 1e-9);
    }
  }
}

TEST_CASE("fourier lemma, split case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  SchwartzF p1 = SchwartzF::indicator(F, PAdicNumber::from_int(F, 1), 1);
  SchwartzF p2 = SchwartzF::unit_ball(F);
  auto rep = verify_ft_split(F, psi, p1, p2, 60, 77);
  CHECK(rep.max_deviation < 1e-9);
  SchwartzF p3 = SchwartzF::indicator(F, PAdicNumber::from_int(F, 2), 2, Cplx(0, 1));
  auto rep2 = verify_ft_split(F, psi, p3, p1, 60, 78);
  CHECK(rep2.max_deviation < 1e-9);
}

TEST_CASE("two-route Psi, field case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    AddCharE psiE(E, psi);
    auto etas = u1_char_family(E, 1, 3);
    auto chis = e_char_family(E, 1, 2);
    int which = 0;
    for (auto& eta1 : etas)
      for (auto& chi : chis) {
        SchwartzF2 phi = basis_phi(F, which++);
        GodementSection f{phi, chi, psi, +1, Cplx(1, 0)};
        int level = std::max({1, eta1.eta().depth(), chi.depth()}) + 2;
        LaurentRational routeA = psi01_field(eta1, f, level);
        CHECK(lr_equal(routeA, psi01_field(eta1, f, level + 1)));  // level stability
        SchwartzE Phi = reduce_to_E_function(phi, E);
        MultCharE etachi = eta1.eta().product(chi);
        LaurentRational Z = tate_integral_E(Phi, etachi, psiE);
        double rho = fibration_measure_constant(E, psi, level);
        CHECK(lr_equal(routeA, Z.scaled(Cplx(rho, 0))));
      }
  }
}

TEST_CASE("ramified integrand at too-shallow level vanishes") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::unramified(F);
  auto etas = u1_char_family(E, 1, 4);
  REQUIRE(etas.size() >= 2);
  const U1Char& eta1 = etas[1];  // nontrivial on E^1
  GodementSection f{SchwartzF2::unit_box(F), MultCharE::trivial(E), psi, +1, Cplx(1, 0)};
  LaurentRational v = psi01_field(eta1, f, 3);
  CHECK(v.is_zero());
}

TEST_CASE("two-route Psi, split case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::split(F);
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  SchwartzF p1 = SchwartzF::indicator(F, one, 1);
  SchwartzF p2 = SchwartzF::unit_ball(F);
  for (auto eta : {MultCharF::trivial(F), MultCharF::quadratic(F)})
    for (auto c1 : {MultCharF::trivial(F), MultCharF::unramified(F, Cplx(0, 1))})
      for (auto c2 : {MultCharF::trivial(F), MultCharF::quadratic(F)}) {
        SchwartzF2 phiprime = SchwartzF2::product(p1, p2);
        SchwartzF2 phi = phiprime.translated(one, one, one, -one);  // rho(h0^{-1})
        GodementSection f{phi, MultCharE::split_pair(E, c1, c2), psi, +1, Cplx(1, 0)};
        LaurentRational routeA = psi01_split(eta, f);
        MultCharF ec1 = eta.product(c1);
        MultCharF ec2 = eta.inverse().product(c2);
        LaurentRational routeB = tate_integral(p2, ec1, psi) * tate_integral(p1, ec2, psi);
        routeB = routeB.scaled(ec1.at_minus_one());
        CHECK(lr_equal(routeA, routeB));
      }
}

TEST_CASE("minimal identity, field case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto kind : {EtaleKind::Unramified, EtaleKind::Ramified}) {
    EtaleAlgebra E = make_algebra(F, kind);
    AddCharE psiE(E, psi);
    auto etas = u1_char_family(E, 1, 2);
    auto chis = e_char_family(E, 1, 2);
    int which = 0;
    for (auto& eta1 : etas)
      for (auto& chi : chis) {
        GammaRS g = gamma_rs_field(eta1, chi, psi, basis_phi(F, which++));
        MultCharE etachi = eta1.eta().product(chi);
        LaurentRational gE = gamma_wd_E(etachi, psiE);
        int vN = static_cast<int>(E.delta().norm_valuation());
        LaurentRational mono = LaurentRational::monomial(
            eta1.at_minus_one() * chi.eval(E.delta()) * std::pow(3.0, vN / 2.0), vN,
            F.p());
        CHECK(lr_equal(g.Gamma_delta, mono * gE));
      }
  }
}

TEST_CASE("minimal identity, split case") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  for (auto eta : {MultCharF::trivial(F), MultCharF::quadratic(F)})
    for (auto c1 : {MultCharF::trivial(F), MultCharF::unramified(F, Cplx(0, 1))})
      for (auto c2 : {MultCharF::trivial(F), MultCharF::quadratic(F)}) {
        SchwartzF2 phi = canonical_phi_split(F, eta.product(c1).depth(),
                                             eta.inverse().product(c2).depth());
        GammaRS g = gamma_rs_split(eta, c1, c2, psi, phi);
        LaurentRational rhs = gamma_wd_pair_split(eta, c1, c2, psi)
                                  .scaled(eta.at_minus_one() * c2.at_minus_one());
        CHECK(lr_equal(g.Gamma_delta, rhs));
      }
}

TEST_CASE("Gamma_delta independent of phi") {
  PAdicField F = make_field(3, 24);
  AddCharF psi = AddCharF::standard(F, 0);
  EtaleAlgebra E = EtaleAlgebra::ramified(F);
  auto etas = u1_char_family(E, 1, 2);
  auto chis = e_char_family(E, 1, 2);
  const U1Char& eta1 = etas.back();
  const MultCharE& chi = chis.back();
  GammaRS g0 = gamma_rs_field(eta1, chi, psi, basis_phi(F, 0));
  for (int w = 1; w < 3; ++w) {
    GammaRS g = gamma_rs_field(eta1, chi, psi, basis_phi(F, w));
    CHECK(lr_equal(g.Gamma_delta, g0.Gamma_delta));
  }
}
