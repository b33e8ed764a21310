#include "plf/tate.hpp"

#include <cmath>

namespace plf {

namespace {

constexpr double kShellTol = 1e-12;

bool near(Cplx a, Cplx b, double scale) {
  return std::abs(a - b) <= kShellTol * std::max(1.0, scale);
}

// assemble sum_{k in [lo, hi]} S_k ratio_mono^k  +  certified geometric tail.
// shell(k) must be an exact finite sum; ratio carries the full k-dependence
// outside shell(k) as the monomial c X^e.
LaurentRational shell_sum(const std::function<Cplx(int64_t)>& shell, int64_t k_lo,
                          int64_t k_hi, Cplx ratio_c, int ratio_e, int64_t q) {
  LaurentPoly acc;
  double scale = 0;
  std::vector<Cplx> vals;
  for (int64_t k = k_lo; k <= k_hi + 3; ++k) {
    Cplx s = shell(k);
    vals.push_back(s);
    scale = std::max(scale, std::abs(s));
  }
  // snap character-sum noise to exact zero
  for (auto& s : vals)
    if (std::abs(s) <= kShellTol * std::max(1.0, scale)) s = Cplx(0, 0);
  // stabilization certificate: the last four shells must agree
  Cplx tailv = vals.back();
  for (int i = 0; i < 3; ++i)
    if (!near(vals[vals.size() - 1 - i], tailv, scale))
      throw NonStabilizingShells("shell values have not stabilized at the proven bound");
  for (int64_t k = k_lo; k <= k_hi + 3; ++k) {
    Cplx s = vals[static_cast<size_t>(k - k_lo)];
    Cplx c = s * std::pow(ratio_c, static_cast<double>(k));
    if (std::abs(c) > 0) acc.add_term(static_cast<int>(ratio_e * k), c);
  }
  LaurentRational head(acc, LaurentPoly(Cplx(1, 0)), q);
  if (std::abs(tailv) <= kShellTol * std::max(1.0, scale)) return head;
  // tail sum_{k > k_hi+3} tailv (ratio_c X^{ratio_e})^k
  if (ratio_e == 0 && std::abs(ratio_c - Cplx(1, 0)) < 1e-12)
    throw NonStabilizingShells("constant nonzero tail cannot be summed");
  int64_t k0 = k_hi + 4;
  LaurentPoly num = LaurentPoly::monomial(
      tailv * std::pow(ratio_c, static_cast<double>(k0)), static_cast<int>(ratio_e * k0));
  LaurentPoly den;
  den.add_term(0, Cplx(1, 0));
  den.add_term(ratio_e, -ratio_c);
  return head + LaurentRational(num, den, q);
}

}  // namespace

LaurentRational tate_integral(const SchwartzF& phi, const MultCharF& chi,
                              const AddCharF& psi, int m_s, int m_c) {
  const PAdicField& F = phi.field();
  int64_t q = F.p();
  int n = psi.conductor_exponent();
  if (phi.empty()) return LaurentRational::constant(Cplx(0, 0), q);

  int64_t k_lo = phi.min_support_valuation();
  int maxL = phi.max_level();
  int64_t k_hi = std::max<int64_t>(maxL, k_lo) + std::abs(n) + chi.depth() + 2;

  auto shell = [&](int64_t k) -> Cplx {
    int D = std::max({1, chi.depth(), static_cast<int>(maxL - k)});
    uint64_t mod = F.ppow(D);
    double cellvol = std::pow(static_cast<double>(q), n / 2.0 - D);
    Cplx s = 0;
    for (uint64_t u = 1; u < mod; ++u) {
      if (u % static_cast<uint64_t>(F.p()) == 0) continue;
      PAdicNumber t = PAdicNumber::from_unit(F, k, u);
      Cplx v = phi.eval(t);
      if (std::abs(v) == 0.0) continue;
      s += v * chi.on_unit_residue(u);
    }
    return s * cellvol;
  };

  Cplx ratio_c = chi.on_uniformizer() * std::pow(static_cast<double>(q), -m_c);
  return shell_sum(shell, k_lo, k_hi, ratio_c, m_s, q);
}

LaurentRational tate_integral_E(const SchwartzE& phi, const MultCharE& chi,
                                const AddCharE& psiE, int m_s, int m_c) {
  const EtaleAlgebra& E = phi.algebra();
  const PAdicField& F = E.F();
  int64_t q = F.p();
  if (E.is_split()) {
    // E^x = F^x x F^x: iterated independent Tate integrals of the slices is
    // wrong for non-product phi, so run a genuine 2D shell sum instead
    // (both coordinates get their own valuation shells)
    // Factor through the product structure: Z = sum over (k1, k2) shells.
    // Implemented as an iterated 1D integral with LaurentRational values.
    throw Error("Unsupported", "split E^x Tate integrals factor through F; use the F routine");
  }
  int f = E.residue_degree();
  int64_t qE = E.qE();
  int nE = psiE.conductor_exponent();

  int64_t k_lo;
  {
    // smallest v_E on the support of phi, from the coordinate data
    int64_t v = INT64_MAX;
    for (auto& t : phi.coords().terms()) {
      auto lo_z = t.bz.center.is_zero()
                      ? static_cast<int64_t>(t.bz.level)
                      : std::min<int64_t>(t.bz.center.valuation(), t.bz.level);
      auto lo_w = t.bw.center.is_zero()
                      ? static_cast<int64_t>(t.bw.level)
                      : std::min<int64_t>(t.bw.center.valuation(), t.bw.level);
      if (E.kind() == EtaleKind::Ramified)
        v = std::min(v, std::min<int64_t>(2 * lo_z, 2 * lo_w + 1));
      else
        v = std::min(v, std::min(lo_z, lo_w));
    }
    k_lo = v;
  }
  int maxL = phi.max_level() * E.ramification();
  int64_t k_hi = std::max<int64_t>(maxL, k_lo) + std::abs(nE) + chi.depth() + 2;

  EtaleElement pi = E.uniformizer();
  EtaleElement piinv = pi.inverse();

  auto shell = [&](int64_t k) -> Cplx {
    int D = std::max({1, chi.depth(), static_cast<int>(maxL - k)});
    if (2.0 * D * std::log(static_cast<double>(F.p())) > std::log(5e7))
      throw Error("ShellTooLarge", "residue enumeration would exceed the size guard");
    double cellvol = std::pow(static_cast<double>(qE), nE / 2.0 - D);
    EtaleElement pik = E.one();
    for (int64_t i = 0; i < k; ++i) pik = pik * pi;
    for (int64_t i = 0; i < -k; ++i) pik = pik * piinv;
    Cplx s = 0;
    for (const EtaleElement& u : etale_unit_residues(E, D)) {
      EtaleElement t = pik * u;
      Cplx v = phi.eval(t);
      if (std::abs(v) == 0.0) continue;
      s += v * chi.unit_value(u);
    }
    return s * cellvol;
  };

  Cplx ratio_c = chi.eval(pi) * std::pow(static_cast<double>(qE), -m_c);
  return shell_sum(shell, k_lo, k_hi, ratio_c, f * m_s, q);
}

SchwartzF canonical_test_function(const PAdicField& F, int depth) {
  if (depth == 0) return SchwartzF::unit_ball(F);
  return SchwartzF::indicator(F, PAdicNumber::from_int(F, 1), depth);
}

SchwartzE canonical_test_function_E(const EtaleAlgebra& E, int depth) {
  if (depth == 0) return SchwartzE::unit_lattice(E);
  return SchwartzE::one_unit_ball(E, depth);
}

LaurentRational gamma_wd(const MultCharF& chi, const AddCharF& psi, const SchwartzF& phi) {
  LaurentRational Z = tate_integral(phi, chi, psi);
  if (Z.is_zero()) throw DegenerateTestFunction("Z(s, chi, phi) vanishes");
  LaurentRational Zdual = tate_integral(fourier(phi, psi), chi.inverse(), psi);
  return dual_s(Zdual) / Z;
}

LaurentRational gamma_wd(const MultCharF& chi, const AddCharF& psi) {
  return gamma_wd(chi, psi, canonical_test_function(chi.field(), chi.depth()));
}

LaurentRational gamma_wd_E(const MultCharE& chi, const AddCharE& psiE, const SchwartzE& phi) {
  LaurentRational Z = tate_integral_E(phi, chi, psiE);
  if (Z.is_zero()) throw DegenerateTestFunction("Z_E(s, chi, phi) vanishes");
  LaurentRational Zdual = tate_integral_E(fourier_E(phi, psiE), chi.inverse(), psiE);
  return dual_s(Zdual) / Z;
}

LaurentRational gamma_wd_E(const MultCharE& chi, const AddCharE& psiE) {
  return gamma_wd_E(chi, psiE,
                    canonical_test_function_E(psiE.algebra(), std::max(chi.depth(), 0)));
}

MultCharF omega_char(const EtaleAlgebra& E) {
  const PAdicField& F = E.F();
  if (E.is_split()) return MultCharF::trivial(F);
  Cplx w = Cplx(is_norm(E, PAdicNumber::from_int(F, F.p())) ? 1 : -1, 0);
  if (E.kind() == EtaleKind::Unramified) return MultCharF::unramified(F, w);
  // ramified: unit part is the Legendre symbol
  return MultCharF::quadratic(F, w);
}

Cplx lambda_EF(const EtaleAlgebra& E, const AddCharF& psi) {
  if (!E.is_field()) throw Error("BadAlgebra", "lambda is defined for field E");
  AddCharE psiE(E, psi);
  LaurentRational g1 = gamma_wd(MultCharF::trivial(E.F()), psi);
  LaurentRational gw = gamma_wd(omega_char(E), psi);
  LaurentRational gE = gamma_wd_E(MultCharE::trivial(E), psiE);
  LaurentRational ratio = g1 * gw / gE;
  return lr_constant_value(ratio);  // throws NotConstant on X-dependence
}

LaurentRational gamma_wd_pair_field(const U1Char& eta1, const MultCharE& chi,
                                    const AddCharF& psi) {
  const EtaleAlgebra& E = eta1.algebra();
  AddCharE psiE(E, psi);
  Cplx lam = lambda_EF(E, psi);
  LaurentRational g = gamma_wd_E(eta1.eta().product(chi), psiE);
  return g.scaled(lam);
}

LaurentRational gamma_wd_pair_split(const MultCharF& eta, const MultCharF& chi1,
                                    const MultCharF& chi2, const AddCharF& psi) {
  return gamma_wd(eta.product(chi1), psi) * gamma_wd(eta.inverse().product(chi2), psi);
}

std::vector<SchwartzF> test_function_basis(const PAdicField& F, int depth) {
  std::vector<SchwartzF> out;
  PAdicNumber one = PAdicNumber::from_int(F, 1);
  PAdicNumber zero = PAdicNumber::zero(F);
  int d = std::max(depth, 1);
  out.push_back(SchwartzF::indicator(F, one, d));
  out.push_back(SchwartzF::indicator(F, PAdicNumber::from_int(F, F.primitive_root()), d));
  out.push_back(SchwartzF::indicator(F, one, d + 1));
  out.push_back(SchwartzF::indicator(F, PAdicNumber::from_int(F, F.p()), d + 1));
  SchwartzF combo(F);
  combo.add_term(BallF{one, d}, Cplx(1, 0));
  combo.add_term(BallF{PAdicNumber::from_int(F, 2), d}, Cplx(0.5, 0.25));
  out.push_back(combo);
  if (depth == 0) out[3] = SchwartzF::unit_ball(F);
  return out;
}

std::vector<SchwartzE> test_function_basis_E(const EtaleAlgebra& E, int depth) {
  const PAdicField& F = E.F();
  std::vector<SchwartzE> out;
  int d = std::max(depth, 1);
  out.push_back(SchwartzE::one_unit_ball(E, d));
  // translate of the unit ball by a unit
  {
    SchwartzE b = SchwartzE::one_unit_ball(E, d);
    SchwartzF2 f(F);
    for (auto& t : b.coords().terms()) {
      BallF bz{t.bz.center + PAdicNumber::from_int(F, 1), t.bz.level};
      f.add_term(bz, t.bw, t.coef);
    }
    // center 2 + p_E^d: still a unit ball since p odd
    out.push_back(SchwartzE(E, f));
  }
  out.push_back(SchwartzE::one_unit_ball(E, d + 1));
  if (depth == 0) out.push_back(SchwartzE::unit_lattice(E));
  else {
    // delta * (1 + p_E^d)
    SchwartzE b = SchwartzE::one_unit_ball(E, d);
    SchwartzF2 f(F);
    for (auto& t : b.coords().terms()) f.add_term(t.bw, t.bz, t.coef);
    out.push_back(SchwartzE(E, f));
  }
  return out;
}

}  // namespace plf
