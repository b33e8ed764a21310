#include "plf/godement.hpp"

#include <cmath>
#include <map>

namespace plf {

namespace {

// extract the F-part of an element expected to lie in F (field case);
// the delta-part must vanish within the certified window
PAdicNumber f_part(const EtaleElement& z) {
  if (!z.y().is_zero() && z.y().valuation() < z.algebra().F().precision() - 5)
    throw Error("NotInF", "entry expected in F has a delta component");
  return z.x();
}

// |a|_E^{slope*s + c_extra} as a Laurent monomial, via v_F(N(a))
LaurentRational abs_E_power(const EtaleElement& a, int slope, int c_extra, int64_t q) {
  int vN = static_cast<int>(a.norm_valuation());
  double coef = std::pow(static_cast<double>(q), -static_cast<double>(c_extra * vN));
  return LaurentRational::monomial(Cplx(coef, 0), slope * vN, q);
}

}  // namespace

U2Decomposition decompose_U2(const Mat2E& h) {
  const EtaleAlgebra& E = h.a.algebra();
  EtaleElement alpha = h.det();
  EtaleElement a = hilbert90(E, alpha);
  EtaleElement ai = a.inverse();
  EtaleElement at = a.theta();
  // g' = diag(a^{-1}, theta(a)) h lies in SU_2
  Mat2E g{ai * h.a, ai * h.b, at * h.c, at * h.d};
  EtaleElement delta = E.delta();
  EtaleElement di = delta.inverse();
  // h1 = diag(delta,1)^{-1} g' diag(delta,1)
  Mat2F h1{f_part(g.a), f_part(g.b * di), f_part(delta * g.c), f_part(g.d)};
  PAdicNumber det1 = h1.det();
  if (!det1.same_residue(PAdicNumber::from_int(E.F(), 1), E.F().precision() - 5))
    throw Error("BadDecomposition", "SL_2 part has determinant != 1");
  return {a, h1};
}

LaurentRational eval_section(const GodementSection& f, const Mat2E& h) {
  const EtaleAlgebra& E = f.algebra();
  const PAdicField& F = E.F();
  int64_t q = F.p();
  U2Decomposition dec = decompose_U2(h);
  MultCharF chi0 = f.tau.restrict_to_F();
  int c_extra = f.slope == 1 ? 0 : 1;
  LaurentRational pref =
      abs_E_power(dec.a, f.slope, c_extra, q).scaled(f.coef * f.tau.eval(dec.a));
  SchwartzF line = f.phi.line_section(dec.h1.c, dec.h1.d);
  LaurentRational inner = tate_integral(line, chi0, f.psi, 2 * f.slope, f.slope == 1 ? 0 : 2);
  return pref * inner;
}

LaurentRational eval_section_split(const GodementSection& f, const Mat2F& h) {
  const PAdicField& F = f.psi.field();
  int64_t q = F.p();
  const MultCharF& chi1 = f.tau.comp1();
  MultCharF chi0 = f.tau.comp1().product(f.tau.comp2());
  PAdicNumber det = h.det();
  if (det.is_zero()) throw Error("Singular", "section evaluated at a singular matrix");
  int vd = static_cast<int>(det.valuation());
  int c_extra = f.slope == 1 ? 0 : 1;
  double cf = std::pow(static_cast<double>(q), -static_cast<double>(c_extra * vd));
  LaurentRational pref =
      LaurentRational::monomial(f.coef * chi1.eval(det) * cf, f.slope * vd, q);
  SchwartzF line = f.phi.line_section(h.c, h.d);
  LaurentRational inner = tate_integral(line, chi0, f.psi, 2 * f.slope, f.slope == 1 ? 0 : 2);
  return pref * inner;
}

namespace {

// Core of the unipotent integrals: integrate over x in F (self-dual measure
// for psi_2) the inner Tate data of the section along an affine family whose
// SL_2-part bottom row is (c1 + x d1, c2 + x d2), against an optional
// additive factor psifac(x).  The x-integral over each support ball closes
// in one line, so only the t-shells need summing.
struct AffineRowIntegral {
  const SchwartzF2* phi;
  MultCharF chi0;
  AddCharF psi;   // ambient psi: fixes the inner d^x t measure
  AddCharF psi2;  // measure of dx
  int slope;
  PAdicNumber c1, d1, c2, d2;
  std::optional<AddCharF> psifac;

  LaurentRational run() const;
};

LaurentRational AffineRowIntegral::run() const {
  const PAdicField& F = psi.field();
  int64_t q = F.p();
  int n2 = psi2.conductor_exponent();
  int m_s = 2 * slope, m_c = slope == 1 ? 0 : 2;
  int maxL = phi->max_level();

  auto val_or = [](const PAdicNumber& x, int64_t dflt) {
    return x.is_zero() ? dflt : x.valuation();
  };
  int64_t vspread = 0;
  for (auto v : {val_or(c1, 0), val_or(d1, 0), val_or(c2, 0), val_or(d2, 0)})
    vspread = std::max<int64_t>(vspread, std::llabs(v));

  int64_t vtw = psifac ? psifac->twist().valuation() : 0;

  // residue depth needed at shell k: ball membership of the x-free
  // conditions, intersection boundaries, and the psifac phase on the ball
  // center.  A phase whose flatness level exceeds the chosen depth sums to
  // zero over each residue class (geometric character sum), so those terms
  // are dropped exactly instead of being enumerated deeper.
  auto depth_needs = [&](int64_t k) -> std::pair<int, std::vector<int>> {
    int base = std::max(1, chi0.depth());
    std::vector<int> phase_need(phi->terms().size(), 0);
    size_t idx = 0;
    for (auto& term : phi->terms()) {
      struct Cond {
        bool xdep;
        int64_t lvl, vc, vd, vgamma;
        bool gamma_zero;
        int64_t xlevel;
      };
      std::vector<Cond> conds;
      auto scan = [&](const BallF& ball, const PAdicNumber& c, const PAdicNumber& d) {
        Cond cd{};
        cd.xdep = !d.is_zero();
        cd.lvl = ball.level;
        cd.vc = val_or(c, 0);
        cd.vd = val_or(d, 0);
        cd.gamma_zero = ball.center.is_zero();
        cd.vgamma = cd.gamma_zero ? 0 : ball.center.valuation();
        cd.xlevel = cd.xdep ? ball.level - k - cd.vd : 0;
        conds.push_back(cd);
      };
      scan(term.bz, c1, d1);
      scan(term.bw, c2, d2);
      for (auto& cd : conds) {
        if (!cd.xdep && !cd.gamma_zero) {
          // membership of p^k u c in a ball around gamma != 0 discriminates
          // u only on the critical shell k + v(c) = v(gamma); elsewhere it
          // is decided by valuations alone
          if (k + cd.vc == cd.vgamma)
            base = std::max<int>(base, static_cast<int>(cd.lvl - cd.vgamma));
        } else if (!cd.xdep && cd.gamma_zero) {
          // ball around zero: pure valuation test, u-free
        }
      }
      // intersection boundary of two x-dependent conditions
      if (conds[0].xdep && conds[1].xdep) {
        int64_t lcoarse = std::min(conds[0].xlevel, conds[1].xlevel);
        // the u-dependent part of the center difference has valuation
        // >= min over gamma-carrying conditions of (vgamma - k - vd)
        int64_t vd_min = INT64_MAX;
        for (auto& cd : conds)
          if (!cd.gamma_zero) vd_min = std::min(vd_min, cd.vgamma - k - cd.vd);
        if (vd_min != INT64_MAX)
          base = std::max<int>(base, static_cast<int>(lcoarse - vd_min + 1));
      }
      if (psifac) {
        // the finer condition supplies the meet center x0 = gamma/(t d) - c/d;
        // its phase discriminates u to depth -(v(tw) + vgamma - k - vd)
        const Cond* fine = nullptr;
        for (auto& cd : conds)
          if (cd.xdep && (!fine || cd.xlevel > fine->xlevel)) fine = &cd;
        if (fine && !fine->gamma_zero)
          phase_need[idx] =
              std::max<int>(0, static_cast<int>(-(vtw + fine->vgamma - k - fine->vd)));
      }
      ++idx;
    }
    return {base, phase_need};
  };

  auto x_ball_integral = [&](const BallF& b) -> Cplx {
    int L = b.level;
    if (!psifac) return Cplx(std::pow(static_cast<double>(q), n2 / 2.0 - L), 0);
    // int_{c0 + p^L O} psifac = psifac(c0) vol(p^L) [psifac trivial on p^L]
    if (vtw + L < 0) return Cplx(0, 0);
    return psifac->eval(b.center) * std::pow(static_cast<double>(q), n2 / 2.0 - L);
  };

  auto shell_at_depth = [&](int64_t k, int D,
                            const std::vector<int>& phase_need) -> Cplx {
    double cellvol =
        std::pow(static_cast<double>(q), psi.conductor_exponent() / 2.0 - D);
    Cplx acc = 0;
    for (uint64_t u = 1; u < F.ppow(D); ++u) {
      if (u % static_cast<uint64_t>(F.p()) == 0) continue;
      PAdicNumber t = PAdicNumber::from_unit(F, k, u);
      Cplx through = 0;
      size_t idx = 0;
      for (auto& term : phi->terms()) {
        if (phase_need[idx++] > D) continue;  // class sum vanishes exactly
        std::optional<BallF> xball;
        bool dead = false, xfree = true;
        auto add_condition = [&](const BallF& ball, const PAdicNumber& c,
                                 const PAdicNumber& d) {
          if (dead) return;
          if (d.is_zero()) {
            if (!ball.contains(t * c)) dead = true;
            return;
          }
          xfree = false;
          // t(c + x d) in ball  <=>  v(x - x0) >= level - v(t) - v(d)
          PAdicNumber x0 = ball.center / (t * d) - c / d;
          int L = static_cast<int>(ball.level - t.valuation() - d.valuation());
          BallF bx{x0, L};
          if (!xball) {
            xball = bx;
            return;
          }
          auto meet = intersect(*xball, bx);
          if (!meet)
            dead = true;
          else
            xball = *meet;
        };
        add_condition(term.bz, c1, d1);
        add_condition(term.bw, c2, d2);
        if (dead) continue;
        if (xfree) throw Error("BadSupport", "x-free integrand over F diverges");
        through += term.coef * x_ball_integral(*xball);
      }
      if (std::abs(through) == 0.0) continue;
      acc += through * chi0.on_unit_residue(u % F.ppow(std::max(1, chi0.depth())));
    }
    return acc * cellvol;
  };

  auto shell = [&](int64_t k) -> LaurentRational {
    // phases needing depth beyond the base vanish per residue class, so the
    // base discrimination depth is always enough
    auto [base, phase_need] = depth_needs(k);
    int D = base;
    if (D * std::log(static_cast<double>(q)) > std::log(5e6))
      throw Error("ShellTooLarge", "x-integral residue enumeration too large");
    Cplx s = shell_at_depth(k, D, phase_need);
    // depth certificate: stable under refinement by one digit
    Cplx s2 = shell_at_depth(k, D + 1, phase_need);
    if (std::abs(s - s2) > 1e-10 * std::max(1.0, std::max(std::abs(s), std::abs(s2))))
      throw NonStabilizingShells("x-integral shell value unstable in residue depth");
    double cf = std::pow(static_cast<double>(q), -static_cast<double>(m_c * k));
    Cplx w = std::pow(chi0.on_uniformizer(), static_cast<double>(k));
    return LaurentRational::monomial(s * w * cf, static_cast<int>(m_s * k), q);
  };

  int64_t hint = maxL + vspread + std::abs(n2) + chi0.depth() + 2;
  return lr_shell_sum(shell, -hint, hint, q);
}

struct FamilyData {
  LaurentRational prefactor;
  PAdicNumber c1, d1, c2, d2;
};

// affine data of x -> section-inner-row of w * u(delta x) * h (field case)
FamilyData field_family(const GodementSection& f, const Mat2E& h) {
  const EtaleAlgebra& E = f.algebra();
  const PAdicField& F = E.F();
  Mat2E w = Mat2E::w11(E);
  auto M = [&](int64_t xv) {
    return w.mul(Mat2E::unipotent(E, PAdicNumber::from_int(F, xv))).mul(h);
  };
  U2Decomposition d0 = decompose_U2(M(0));
  U2Decomposition d1 = decompose_U2(M(1));
  PAdicNumber rc = d0.h1.c, rd = d0.h1.d;
  PAdicNumber qc = d1.h1.c - rc, qd = d1.h1.d - rd;
  int c_extra = f.slope == 1 ? 0 : 1;
  LaurentRational pref =
      abs_E_power(d0.a, f.slope, c_extra, F.p()).scaled(f.coef * f.tau.eval(d0.a));
  return {pref, rc, qc, rd, qd};
}

FamilyData split_family(const GodementSection& f, const Mat2F& h) {
  const PAdicField& F = f.psi.field();
  Mat2F w{PAdicNumber::zero(F), PAdicNumber::from_int(F, 1), PAdicNumber::from_int(F, 1),
          PAdicNumber::zero(F)};
  auto M = [&](int64_t xv) {
    Mat2F u{PAdicNumber::from_int(F, 1), PAdicNumber::from_int(F, xv),
            PAdicNumber::zero(F), PAdicNumber::from_int(F, 1)};
    return w.mul(u).mul(h);
  };
  Mat2F M0 = M(0), M1 = M(1);
  PAdicNumber det = M0.det();
  int vd = static_cast<int>(det.valuation());
  int c_extra = f.slope == 1 ? 0 : 1;
  double cf = std::pow(static_cast<double>(F.p()), -static_cast<double>(c_extra * vd));
  LaurentRational pref =
      LaurentRational::monomial(f.coef * f.tau.comp1().eval(det) * cf, f.slope * vd, F.p());
  return {pref, M0.c, M1.c - M0.c, M0.d, M1.d - M0.d};
}

}  // namespace

LaurentRational intertwine_raw(const GodementSection& f, const Mat2E& h) {
  const EtaleAlgebra& E = f.algebra();
  FamilyData fam = field_family(f, h);
  AffineRowIntegral I{&f.phi,  f.tau.restrict_to_F(), f.psi, f.psi.twice(), f.slope,
                      fam.c1,  fam.d1,                fam.c2, fam.d2,       std::nullopt};
  double pref = std::pow(static_cast<double>(E.F().p()),
                         -static_cast<double>(E.Delta().valuation()) / 2.0);
  return fam.prefactor.scaled(Cplx(pref, 0)) * I.run();
}

LaurentRational intertwine_raw_split(const GodementSection& f, const Mat2F& h) {
  FamilyData fam = split_family(f, h);
  AffineRowIntegral I{&f.phi,
                      f.tau.comp1().product(f.tau.comp2()),
                      f.psi,
                      f.psi.twice(),
                      f.slope,
                      fam.c1,
                      fam.d1,
                      fam.c2,
                      fam.d2,
                      std::nullopt};
  return fam.prefactor * I.run();
}

LaurentRational whittaker_normalization_integral(const GodementSection& f, const Mat2E& h) {
  const EtaleAlgebra& E = f.algebra();
  FamilyData fam = field_family(f, h);
  // psi'^{-1}(u_{12}) with u_{12} = delta x: psi_E(delta^2 x)^{-1} = psi_2(-Delta x)
  AddCharF psifac = f.psi.twice().twisted(-E.Delta());
  AffineRowIntegral I{&f.phi,  f.tau.restrict_to_F(), f.psi, f.psi.twice(), f.slope,
                      fam.c1,  fam.d1,                fam.c2, fam.d2,       psifac};
  return fam.prefactor * I.run();
}

LaurentRational whittaker_normalization_integral_split(const GodementSection& f,
                                                       const Mat2F& h) {
  FamilyData fam = split_family(f, h);
  AddCharF psifac = f.psi.twice().twisted(PAdicNumber::from_int(f.psi.field(), -1));
  AffineRowIntegral I{&f.phi,
                      f.tau.comp1().product(f.tau.comp2()),
                      f.psi,
                      f.psi.twice(),
                      f.slope,
                      fam.c1,
                      fam.d1,
                      fam.c2,
                      fam.d2,
                      psifac};
  return fam.prefactor * I.run();
}

GodementSection intertwine_normalized(const GodementSection& f, bool certify) {
  MultCharF chi0 =
      f.split() ? f.tau.comp1().product(f.tau.comp2()) : f.tau.restrict_to_F();
  GodementSection g{fourier_symplectic(f.phi, f.psi.twice()), f.tau.conj_dual(), f.psi,
                    -f.slope, f.coef * chi0.at_minus_one()};
  if (certify) {
    if (f.split()) {
      const PAdicField& F = f.psi.field();
      Mat2F I2{PAdicNumber::from_int(F, 1), PAdicNumber::zero(F), PAdicNumber::zero(F),
               PAdicNumber::from_int(F, 1)};
      LaurentRational lhs = whittaker_normalization_integral_split(f, I2);
      LaurentRational rhs = whittaker_normalization_integral_split(g, I2);
      if (!lr_equal(lhs, rhs))
        throw NormalizationMismatch("split Whittaker integrals disagree");
    } else {
      Mat2E I2 = Mat2E::identity(f.algebra());
      LaurentRational lhs = whittaker_normalization_integral(f, I2);
      LaurentRational rhs = whittaker_normalization_integral(g, I2);
      if (!lr_equal(lhs, rhs))
        throw NormalizationMismatch("field Whittaker integrals disagree");
    }
  }
  return g;
}

LaurentRational psi01_field(const U1Char& eta1, const GodementSection& f, int level) {
  const EtaleAlgebra& E = f.algebra();
  auto reps = enumerate_E1_cosets(E, level);
  LaurentRational sum = LaurentRational::constant(Cplx(0, 0), E.F().p());
  double scale = 0;
  for (const EtaleElement& alpha : reps) {
    Cplx v = eta1.eval(alpha);
    LaurentRational term = eval_section(f, Mat2E::embed_E1(alpha)).scaled(v);
    scale = std::max(scale, term.num().max_abs());
    sum = sum + term;
  }
  // a group-sum of a nontrivial character cancels to rounding noise
  if (sum.num().max_abs() <=
      1e-11 * scale * std::max(1.0, sum.den().max_abs()))
    return LaurentRational::constant(Cplx(0, 0), E.F().p());
  return sum.scaled(Cplx(1.0 / static_cast<double>(reps.size()), 0));
}

LaurentRational psi01_split(const MultCharF& eta, const GodementSection& f) {
  const PAdicField& F = f.psi.field();
  int64_t q = F.p();
  MultCharF chi0 = f.tau.comp1().product(f.tau.comp2());
  int maxL = f.phi.max_level();
  int n = f.psi.conductor_exponent();
  int64_t hint = maxL + std::abs(n) + eta.depth() + chi0.depth() + f.tau.comp1().depth() + 3;

  auto shell = [&](int64_t k) -> LaurentRational {
    int D = std::max({1, eta.depth(), chi0.depth(), f.tau.comp1().depth(),
                      static_cast<int>(std::min<int64_t>(hint + 2, maxL - k + 2)),
                      static_cast<int>(std::min<int64_t>(hint + 2, k + maxL + 2))});
    double cellvol = std::pow(static_cast<double>(q), n / 2.0 - D);
    LaurentRational acc = LaurentRational::constant(Cplx(0, 0), q);
    PAdicNumber half = PAdicNumber::from_ratio(F, 1, 2);
    PAdicNumber one = PAdicNumber::from_int(F, 1);
    for (uint64_t u = 1; u < F.ppow(D); ++u) {
      if (u % static_cast<uint64_t>(F.p()) == 0) continue;
      PAdicNumber a = PAdicNumber::from_unit(F, k, u);
      PAdicNumber pl = (one + a) * half, mi = (one - a) * half;
      Mat2F j{pl, mi, mi, pl};
      LaurentRational val = eval_section_split(f, j);
      if (val.is_zero()) continue;
      acc = acc + val.scaled(eta.eval(a) * Cplx(cellvol, 0));
    }
    return acc;
  };
  return lr_shell_sum(shell, -hint, hint, q);
}

SchwartzE reduce_to_E_function(const SchwartzF2& phi, const EtaleAlgebra& E) {
  const PAdicField& F = E.F();
  if (E.is_split()) {
    // a = (x, y): delta(theta(a)-a)/2 = ((y-x)/2, (y-x)/2), (theta(a)+a)/2 =
    // ((x+y)/2, (x+y)/2); as a function of the coordinates this is the
    // GL_2(O)-translate by [[-1/2, 1/2], [1/2, 1/2]]
    PAdicNumber half = PAdicNumber::from_ratio(F, 1, 2);
    PAdicNumber mhalf = PAdicNumber::from_ratio(F, -1, 2);
    return SchwartzE(E, phi.translated(mhalf, half, half, half));
  }
  // a = z + delta w: delta(theta(a)-a)/2 = -Delta w, (theta(a)+a)/2 = z,
  // so Phi(z + delta w) = phi(-Delta w, z)
  SchwartzF2 out(F);
  for (auto& t : phi.terms()) {
    auto pre = preimage_scale(t.bz, -E.Delta());
    if (!pre) continue;
    out.add_term(t.bw, *pre, t.coef);
  }
  return SchwartzE(E, out);
}

SchwartzF2 canonical_phi_split(const PAdicField& F, int d1, int d2) {
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  SchwartzF2 prod =
      SchwartzF2::product(canonical_test_function(F, d2), canonical_test_function(F, d1));
  return prod.translated(one, one, one, -one);  // rho(h0^{-1})
}

SchwartzF2 canonical_phi_field(const EtaleAlgebra& E, int d) {
  // phi with phi(-Delta w, z) = 1_{1 + p_E^d}(z + delta w)
  const PAdicField& F = E.F();
  SchwartzE ball = SchwartzE::one_unit_ball(E, d);
  SchwartzF2 out(F);
  for (auto& t : ball.coords().terms()) {
    // z-condition becomes the y-ball; w-condition pulls back through -Delta
    BallF bx{t.bw.center * (-E.Delta()),
             static_cast<int>(t.bw.level + E.Delta().valuation())};
    out.add_term(bx, t.bz, t.coef);
  }
  return out;
}

double fibration_measure_constant(const EtaleAlgebra& E, const AddCharF& psi, int level) {
  const PAdicField& F = E.F();
  AddCharE psiE(E, psi);
  int probe = std::min(level + 2, F.precision() - 2);
  auto total = enumerate_E1_cosets(E, probe).size();
  size_t image_count = 0;
  {
    EtaleElement piE = E.uniformizer();
    EtaleElement scale = E.one();
    for (int i = 0; i < level; ++i) scale = scale * piE;
    std::map<std::pair<uint64_t, uint64_t>, int> seen;
    for (const EtaleElement& r : etale_residues(E, probe - level)) {
      EtaleElement w = E.one() + scale * r;
      EtaleElement im = w / w.theta();
      seen.emplace(unit_residue_key(im, probe), 1);
    }
    image_count = seen.size();
  }
  double idx = static_cast<double>(total) / static_cast<double>(image_count);
  int e = E.ramification();
  int jm = (level + e - 1) / e;
  double num = std::pow(static_cast<double>(F.p()), psi.conductor_exponent() / 2.0 - jm);
  double den =
      idx * std::pow(static_cast<double>(E.qE()), psiE.conductor_exponent() / 2.0 - level);
  return num / den;
}

GammaRS gamma_rs_field(const U1Char& eta1, const MultCharE& chi, const AddCharF& psi,
                       const SchwartzF2& phi) {
  const EtaleAlgebra& E = eta1.algebra();
  GodementSection f{phi, chi, psi, +1, Cplx(1, 0)};
  GodementSection Af = intertwine_normalized(f);
  int level = std::max({1, eta1.eta().depth(), chi.depth()}) + 2;
  LaurentRational den = psi01_field(eta1, f, level);
  if (den.is_zero()) throw ZeroDenominator("Psi_{0,1} vanishes for this test function");
  LaurentRational num = psi01_field(eta1, Af, level);
  LaurentRational Gamma = num / den;
  // gamma^RS = omega_pi(-1) omega_tau(delta)^{-1} |delta|_E^{-(s-1/2)} Gamma
  int64_t q = E.F().p();
  int vN = static_cast<int>(E.delta().norm_valuation());
  LaurentRational mono = LaurentRational::monomial(
      Cplx(std::pow(static_cast<double>(q), -vN / 2.0), 0), -vN, q);
  Cplx c = eta1.at_minus_one() / chi.at_delta();
  LaurentRational grs = Gamma * mono.scaled(c);
  return {Gamma, grs, num, den};
}

GammaRS gamma_rs_split(const MultCharF& eta, const MultCharF& chi1, const MultCharF& chi2,
                       const AddCharF& psi, const SchwartzF2& phi) {
  const PAdicField& F = psi.field();
  EtaleAlgebra E = EtaleAlgebra::split(F);
  MultCharE tau = MultCharE::split_pair(E, chi1, chi2);
  GodementSection f{phi, tau, psi, +1, Cplx(1, 0)};
  GodementSection Af = intertwine_normalized(f);
  LaurentRational den = psi01_split(eta, f);
  if (den.is_zero()) throw ZeroDenominator("Psi_{0,1} vanishes for this test function");
  LaurentRational num = psi01_split(eta, Af);
  LaurentRational Gamma = num / den;
  // omega_tau(delta) |delta|^{s-1/2} = chi2(-1) in the split case
  Cplx c = eta.at_minus_one() * chi2.at_minus_one();
  LaurentRational grs = Gamma.scaled(c);
  return {Gamma, grs, num, den};
}

PointwiseReport verify_ft_field(const EtaleAlgebra& E, const AddCharF& psi,
                                const SchwartzF2& phi, int samples, uint64_t seed) {
  const PAdicField& F = E.F();
  AddCharE psiE(E, psi);
  SchwartzF2 phihat = fourier_symplectic(phi, psi.twice());
  SchwartzE Phi = reduce_to_E_function(phi, E);
  SchwartzE Phihat = fourier_E(Phi, psiE);
  double rootdelta =
      std::pow(static_cast<double>(F.p()), -static_cast<double>(E.Delta().valuation()) / 2.0);

  PointwiseReport rep;
  std::mt19937_64 rng(seed);
  auto check_point = [&](const EtaleElement& a) {
    // Phi'(a) = phihat(-Delta y, x) for a = x + delta y
    Cplx lhs = phihat.eval(-(E.Delta() * a.y()), a.x());
    // |delta|_E^{1/2} Phihat(-delta theta(a))
    EtaleElement arg = -(E.delta() * a.theta());
    Cplx rhs = Cplx(rootdelta, 0) * Phihat.eval(arg);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
    ++rep.samples;
  };
  check_point(E.one());
  check_point(-E.one());
  check_point(E.delta());
  check_point(E.make(PAdicNumber::from_int(F, 1), PAdicNumber::zero(F)));
  while (rep.samples < samples) {
    EtaleElement a = E.make(random_padic(F, rng, -2, 2), random_padic(F, rng, -2, 2));
    check_point(a);
  }
  return rep;
}

PointwiseReport verify_ft_split(const PAdicField& F, const AddCharF& psi,
                                const SchwartzF& phi1, const SchwartzF& phi2, int samples,
                                uint64_t seed) {
  // phi' = phi1 (x) phi2 and phi = rho(h0^{-1}) phi', h0 = (1/2)[[1,1],[1,-1]]
  PAdicNumber half = PAdicNumber::from_ratio(F, 1, 2);
  PAdicNumber mhalf = PAdicNumber::from_ratio(F, -1, 2);
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  SchwartzF2 phiprime = SchwartzF2::product(phi1, phi2);
  SchwartzF2 phi = phiprime.translated(one, one, one, -one);  // rho(h0^{-1})
  SchwartzF2 phihat = fourier_symplectic(phi, psi.twice());
  SchwartzF2 lhs = phihat.translated(half, half, half, mhalf);  // rho(h0)
  SchwartzF2 phiprimehat = fourier_symplectic(phiprime, psi.twice());
  SchwartzF hat1 = fourier(phi1, psi), hat2 = fourier(phi2, psi);

  PointwiseReport rep;
  std::mt19937_64 rng(seed);
  while (rep.samples < samples) {
    PAdicNumber x = random_padic(F, rng, -2, 2), y = random_padic(F, rng, -2, 2);
    Cplx a = lhs.eval(x, y);
    // |2|_F^{-1} = 1 for p odd, carried explicitly
    Cplx b = phiprimehat.eval(x * mhalf, y * mhalf);
    Cplx c = hat2.eval(x) * hat1.eval(-y);
    rep.max_deviation = std::max({rep.max_deviation, std::abs(a - b), std::abs(b - c)});
    ++rep.samples;
  }
  return rep;
}

}  // namespace plf
