#pragma once

// Godement sections on U_2 (field case) and GL_2 (split case), the
// intertwining operator and its Whittaker normalization, the Fourier lemmas
// relating the transform on F^2 to the transform on E, the minimal
// Rankin-Selberg integrals Psi_{0,1}, and the gamma factor they define.

#include "plf/characters.hpp"
#include "plf/schwartz.hpp"
#include "plf/shells.hpp"
#include "plf/tate.hpp"

namespace plf {

// ---- 2x2 matrices over E ----------------------------------------------------

struct Mat2E {
  EtaleElement a, b, c, d;  // [[a, b], [c, d]]

  static Mat2E identity(const EtaleAlgebra& E) {
    return {E.one(), E.zero(), E.zero(), E.one()};
  }
  static Mat2E w11(const EtaleAlgebra& E) {
    return {E.zero(), E.one(), E.one(), E.zero()};
  }
  // upper unipotent with entry delta * x, x in F
  static Mat2E unipotent(const EtaleAlgebra& E, const PAdicNumber& x) {
    return {E.one(), E.delta().scale(x), E.zero(), E.one()};
  }
  static Mat2E diag(const EtaleElement& u, const EtaleElement& v) {
    return {u, u.algebra().zero(), u.algebra().zero(), v};
  }
  // j^{0,1}(alpha) = (1/2) [[1+alpha, 1-alpha], [1-alpha, 1+alpha]]
  static Mat2E embed_E1(const EtaleElement& alpha) {
    const EtaleAlgebra& E = alpha.algebra();
    PAdicNumber half = PAdicNumber::from_ratio(E.F(), 1, 2);
    EtaleElement p = (E.one() + alpha).scale(half);
    EtaleElement m = (E.one() - alpha).scale(half);
    return {p, m, m, p};
  }

  Mat2E mul(const Mat2E& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  EtaleElement det() const { return a * d - b * c; }

  // {}^t theta(h) J_2 h = J_2
  bool in_U2(int margin_level = 6) const {
    const EtaleAlgebra& E = a.algebra();
    Mat2E th{a.theta(), c.theta(), b.theta(), d.theta()};  // transpose of theta(h)
    Mat2E J{E.zero(), E.one(), E.one(), E.zero()};
    Mat2E m = th.mul(J).mul(*this);
    return m.a.same_residue(E.zero(), margin_level) &&
           m.d.same_residue(E.zero(), margin_level) &&
           m.b.same_residue(E.one(), margin_level) &&
           m.c.same_residue(E.one(), margin_level);
  }
};

// 2x2 over F, for the SL_2 part of the decomposition and the split case
struct Mat2F {
  PAdicNumber a, b, c, d;
  Mat2F mul(const Mat2F& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  PAdicNumber det() const { return a * d - b * c; }
};

// Hilbert-90 decomposition h = diag(a, theta(a)^{-1}) conj_delta(h1) with
// h1 in SL_2(F); the section a is only determined up to F^x
struct U2Decomposition {
  EtaleElement a;
  Mat2F h1;
};

U2Decomposition decompose_U2(const Mat2E& h);

// ---- Godement sections -------------------------------------------------------

// f_s^phi(-; tau), tagged with the direction of the s-dependence: slope +1
// carries |.|^s twists, slope -1 the |.|^{1-s} twists of the image section
struct GodementSection {
  SchwartzF2 phi;
  MultCharE tau;
  AddCharF psi;  // fixes the measure conventions and psi_2
  int slope = +1;
  Cplx coef = Cplx(1, 0);

  bool split() const { return tau.algebra().is_split(); }
  const EtaleAlgebra& algebra() const { return tau.algebra(); }
};

// evaluation at h (field case); uses the decomposition and an inner Tate
// integral on the bottom row of the SL_2 part
LaurentRational eval_section(const GodementSection& f, const Mat2E& h);
// split case: direct formula on GL_2(F)
LaurentRational eval_section_split(const GodementSection& f, const Mat2F& h);

// A(w_{1,1}, tau, s) f at h: |Delta|^{1/2} int_F f(w^{-1} u(delta x) h) dx
LaurentRational intertwine_raw(const GodementSection& f, const Mat2E& h);
LaurentRational intertwine_raw_split(const GodementSection& f, const Mat2F& h);

// the Whittaker-normalization integral int f(w u h) psi'^{-1}(u_{12}) du
LaurentRational whittaker_normalization_integral(const GodementSection& f, const Mat2E& h);
LaurentRational whittaker_normalization_integral_split(const GodementSection& f,
                                                       const Mat2F& h);

// A_{psi,delta}(w_{1,1}, tau, s) f = chi_0(-1) f_{1-s}^{phi^}(-; tau*); when
// certify is set, the normalization is re-derived from the two Whittaker
// integrals and NormalizationMismatch is raised on disagreement
GodementSection intertwine_normalized(const GodementSection& f, bool certify = false);

// ---- minimal Rankin-Selberg integrals ---------------------------------------

// field case: (1/N) sum over E^1 cosets at the given level
LaurentRational psi01_field(const U1Char& eta1, const GodementSection& f, int level);
// split case: shell sum over F^x
LaurentRational psi01_split(const MultCharF& eta, const GodementSection& f);

// the Tate-reduction route: Phi(a) = phi(delta(theta(a)-a)/2, (theta(a)+a)/2)
SchwartzE reduce_to_E_function(const SchwartzF2& phi, const EtaleAlgebra& E);

// canonical nonvanishing test functions for the gamma extraction: the split
// builder makes rho(h0) phi factor through depth-matched canonical balls, the
// field builder makes the E-reduction the ball 1 + p_E^d
SchwartzF2 canonical_phi_split(const PAdicField& F, int d1, int d2);
SchwartzF2 canonical_phi_field(const EtaleAlgebra& E, int d);

// measure constant relating the coset-sum route (vol(E^1) = 1 outer, dt/|t|
// inner) to the standard E^x Tate integral; computed from group indices
double fibration_measure_constant(const EtaleAlgebra& E, const AddCharF& psi, int level);

struct GammaRS {
  LaurentRational Gamma_delta;
  LaurentRational gamma_rs;
  LaurentRational psi_numerator;   // Psi(v x A f)
  LaurentRational psi_denominator; // Psi(v x f)
};

GammaRS gamma_rs_field(const U1Char& eta1, const MultCharE& chi, const AddCharF& psi,
                       const SchwartzF2& phi);
GammaRS gamma_rs_split(const MultCharF& eta, const MultCharF& chi1, const MultCharF& chi2,
                       const AddCharF& psi, const SchwartzF2& phi);

// ---- Fourier lemma checks ----------------------------------------------------

struct PointwiseReport {
  double max_deviation = 0;
  int samples = 0;
};

// phi^'(a) = |delta|_E^{1/2} Phi^(-delta theta(a)) over random sample points
PointwiseReport verify_ft_field(const EtaleAlgebra& E, const AddCharF& psi,
                                const SchwartzF2& phi, int samples, uint64_t seed);
// rho(h0) of the symplectic transform against the split product formula
PointwiseReport verify_ft_split(const PAdicField& F, const AddCharF& psi,
                                const SchwartzF& phi1, const SchwartzF& phi2, int samples,
                                uint64_t seed);

}  // namespace plf
