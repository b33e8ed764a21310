#pragma once

// Local zeta integrals in closed form: shell decomposition over valuations,
// exact character sums per shell, and a certified geometric tail.  On top of
// them: gamma factors for characters of F^x and E^x, Langlands' lambda
// constant for E/F, and the character-level gamma of a pair.

#include "plf/characters.hpp"
#include "plf/laurent.hpp"
#include "plf/schwartz.hpp"

#include <functional>

namespace plf {

// Z(s, chi, phi) = int phi(t) chi(t) |t|^{m_s s + m_c} d^x t over F^x,
// with d^x t = dt/|t| and dt self-dual for psi.  Result lives in X = q^{-s}.
LaurentRational tate_integral(const SchwartzF& phi, const MultCharF& chi,
                              const AddCharF& psi, int m_s = 1, int m_c = 0);

// same over E^x; |t|_E^{m_s s + m_c} contributes X^{f m_s k} q_E^{-m_c k}
// on the shell v_E = k, so the result is already expressed over X = q^{-s}
LaurentRational tate_integral_E(const SchwartzE& phi, const MultCharE& chi,
                                const AddCharE& psiE, int m_s = 1, int m_c = 0);

// substitution s -> 1-s, i.e. X -> q^{-1} X^{-1} (valid for E-level results
// expressed over X as well, where it acts as X_E -> q_E^{-1} X_E^{-1})
inline LaurentRational dual_s(const LaurentRational& a) {
  return a.subst_monomial(Cplx(1.0 / static_cast<double>(a.q()), 0), -1, a.q());
}

// substitution s -> 2s-1, i.e. X -> q X^2
inline LaurentRational double_s_shift(const LaurentRational& a) {
  return a.subst_monomial(Cplx(static_cast<double>(a.q()), 0), 2, a.q());
}

// canonical test function matched to the depth of chi
SchwartzF canonical_test_function(const PAdicField& F, int depth);
SchwartzE canonical_test_function_E(const EtaleAlgebra& E, int depth);

// gamma^WD(s, chi, psi) = Z(1-s, chi^{-1}, phi^) / Z(s, chi, phi) for the
// canonical phi; independence of phi is a tested invariant, not an input
LaurentRational gamma_wd(const MultCharF& chi, const AddCharF& psi);
LaurentRational gamma_wd(const MultCharF& chi, const AddCharF& psi, const SchwartzF& phi);
LaurentRational gamma_wd_E(const MultCharE& chi, const AddCharE& psiE);
LaurentRational gamma_wd_E(const MultCharE& chi, const AddCharE& psiE, const SchwartzE& phi);

// the quadratic character of F^x attached to E/F (norm-group membership)
MultCharF omega_char(const EtaleAlgebra& E);

// Langlands lambda: the X-free value of
//   gamma(s, 1_F, psi) gamma(s, omega_{E/F}, psi) / gamma_E(s, 1_E, psi_E)
Cplx lambda_EF(const EtaleAlgebra& E, const AddCharF& psi);

// character-level gamma of the pair, through base change:
//   field: lambda_{E/F}(psi) * gamma_E(s, eta*chi, psi_E)
//   split: gamma(s, eta*chi1, psi) * gamma(s, eta^{-1}*chi2, psi)
LaurentRational gamma_wd_pair_field(const U1Char& eta1, const MultCharE& chi,
                                    const AddCharF& psi);
LaurentRational gamma_wd_pair_split(const MultCharF& eta, const MultCharF& chi1,
                                    const MultCharF& chi2, const AddCharF& psi);

// a small basis of test functions adapted to chi's depth, all with
// nonvanishing Z(s, chi, -) (for the phi-independence certificates)
std::vector<SchwartzF> test_function_basis(const PAdicField& F, int depth);
std::vector<SchwartzE> test_function_basis_E(const EtaleAlgebra& E, int depth);

}  // namespace plf
