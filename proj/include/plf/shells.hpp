#pragma once

// Bidirectional shell summation with certified geometric tails: the shell
// values are Laurent rationals, the tail law is discovered as a monomial
// ratio and certified over three consecutive shells before closing the sum.

#include "plf/errors.hpp"
#include "plf/laurent.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace plf {

// detect that a equals c X^e as a rational function (numerator proportional
// to a monomial shift of the denominator)
inline std::optional<std::pair<Cplx, int>> as_monomial(const LaurentRational& a) {
  const LaurentPoly &n = a.num(), &d = a.den();
  if (n.is_zero()) return std::nullopt;
  int e = n.min_exp() - d.min_exp();
  if (n.max_exp() - d.max_exp() != e) return std::nullopt;
  Cplx c = n.coef().begin()->second / d.coef().begin()->second;
  LaurentPoly shifted;
  for (auto& kv : d.coef()) shifted.add_term(kv.first + e, kv.second * c);
  LaurentPoly diff = n - shifted;
  if (diff.max_abs() > 1e-10 * std::max(n.max_abs(), 1e-30)) return std::nullopt;
  return std::make_pair(c, e);
}

// sum_{k in Z} shell(k), where shell(k) vanishes for k << 0 or follows a
// geometric law in both directions beyond [k_lo, k_hi]
inline LaurentRational lr_shell_sum(const std::function<LaurentRational(int64_t)>& shell,
                                    int64_t k_lo, int64_t k_hi, int64_t q) {
  constexpr int kMargin = 4;
  std::vector<LaurentRational> vals;
  double scale = 0;
  for (int64_t k = k_lo - kMargin; k <= k_hi + kMargin; ++k) {
    vals.push_back(shell(k));
    scale = std::max(scale, vals.back().num().max_abs());
  }
  auto effectively_zero = [&](const LaurentRational& v) {
    return v.is_zero() || v.num().max_abs() <= 1e-12 * std::max(1.0, scale);
  };

  LaurentRational total = LaurentRational::constant(Cplx(0, 0), q);
  for (auto& v : vals)
    if (!effectively_zero(v)) total = total + v;

  // one certified geometric tail per direction
  auto close_tail = [&](bool upward) -> LaurentRational {
    LaurentRational last = upward ? vals.back() : vals.front();
    LaurentRational prev = upward ? vals[vals.size() - 2] : vals[1];
    LaurentRational prev2 = upward ? vals[vals.size() - 3] : vals[2];
    if (effectively_zero(last)) {
      // vanishing tail needs the whole certificate window to vanish
      if (!effectively_zero(prev) || !effectively_zero(prev2))
        throw NonStabilizingShells("tail neither vanishes nor stabilizes");
      return LaurentRational::constant(Cplx(0, 0), q);
    }
    if (effectively_zero(prev) || effectively_zero(prev2))
      throw NonStabilizingShells("tail alternates between zero and nonzero shells");
    LaurentRational r1 = last / prev, r2 = prev / prev2;
    auto m1 = as_monomial(r1), m2 = as_monomial(r2);
    if (!m1 || !m2 || m1->second != m2->second ||
        std::abs(m1->first - m2->first) > 1e-9 * std::abs(m1->first))
      throw NonStabilizingShells("tail ratio is not a stable monomial");
    Cplx c = m1->first;
    int e = m1->second;
    if (e == 0 && std::abs(c - Cplx(1, 0)) < 1e-10)
      throw NonStabilizingShells("tail ratio 1 cannot be closed");
    // sum_{j >= 1} last * rho^j = last * rho / (1 - rho)
    LaurentPoly den;
    den.add_term(0, Cplx(1, 0));
    den.add_term(e, -c);
    LaurentRational rho_over = LaurentRational(LaurentPoly::monomial(c, e), den, q);
    return last * rho_over;
  };
  total = total + close_tail(true) + close_tail(false);
  return total;
}

}  // namespace plf
