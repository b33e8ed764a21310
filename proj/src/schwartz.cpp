#include "plf/schwartz.hpp"

namespace plf {

std::vector<TermF> transform_ball(const PAdicField& F, const BallF& ball, Cplx coef,
                                  const AddCharF& psi) {
  int n = psi.conductor_exponent();
  int k = ball.level;
  double volk = std::pow(static_cast<double>(F.p()), n / 2.0 - k);
  Cplx scale = coef * volk;
  std::vector<TermF> out;
  PAdicNumber zero = PAdicNumber::zero(F);
  const PAdicNumber& c = ball.center;
  if (c.is_zero() || c.valuation() >= k) {
    // psi(c x) is trivial on the whole dual support p^{n-k} O
    out.push_back({BallF{zero, n - k}, scale});
    return out;
  }
  // split the dual support into cosets mod p^{n - v(c)} where psi(c x) is flat
  int vc = static_cast<int>(c.valuation());
  int fine = n - vc, coarse = n - k;
  uint64_t cnt = F.ppow(fine - coarse);
  for (uint64_t j = 0; j < cnt; ++j) {
    PAdicNumber x0 =
        PAdicNumber::from_int(F, static_cast<int64_t>(j)) * PAdicNumber::from_unit(F, coarse, 1);
    out.push_back({BallF{x0, fine}, scale * psi.eval(c * x0)});
  }
  return out;
}

SchwartzF SchwartzF2::line_section(const PAdicNumber& c1, const PAdicNumber& c2) const {
  if (c1.is_zero() && c2.is_zero())
    throw Error("BadSupport", "line through the origin only");
  SchwartzF out(*F_);
  for (auto& t : terms_) {
    std::optional<BallF> cond;  // running intersection over the coordinates
    bool dead = false;
    auto apply = [&](const BallF& b, const PAdicNumber& c) {
      if (dead) return;
      if (c.is_zero()) {
        if (!b.contains(PAdicNumber::zero(*F_))) dead = true;
        return;
      }
      auto pre = preimage_scale(b, c);
      if (!pre) {
        dead = true;
        return;
      }
      if (!cond) {
        cond = *pre;
        return;
      }
      auto meet = intersect(*cond, *pre);
      if (!meet)
        dead = true;
      else
        cond = *meet;
    };
    apply(t.bz, c1);
    apply(t.bw, c2);
    if (dead) continue;
    if (!cond) continue;  // both coordinates constant: cannot happen, guarded above
    out.add_term(*cond, t.coef);
  }
  return out;
}

SchwartzF2 SchwartzF2::translated(const PAdicNumber& h11, const PAdicNumber& h12,
                                  const PAdicNumber& h21, const PAdicNumber& h22) const {
  const PAdicField& F = *F_;
  // require h in GL_2(O): integral entries, unit determinant
  auto integral = [](const PAdicNumber& x) { return x.is_zero() || x.valuation() >= 0; };
  PAdicNumber det = h11 * h22 - h12 * h21;
  if (!integral(h11) || !integral(h12) || !integral(h21) || !integral(h22) || det.is_zero() ||
      det.valuation() != 0)
    throw Error("BadTranslate", "translation matrix must lie in GL_2(O)");
  // inverse of h
  PAdicNumber di = det.inverse();
  PAdicNumber g11 = h22 * di, g12 = -(h12 * di), g21 = -(h21 * di), g22 = h11 * di;

  SchwartzF2 out(F);
  for (auto& t : terms_) {
    int L = std::max(t.bz.level, t.bw.level);
    // refine the box into squares of level L, then map squares to squares
    uint64_t nz = F.ppow(L - t.bz.level), nw = F.ppow(L - t.bw.level);
    for (uint64_t a = 0; a < nz; ++a)
      for (uint64_t b = 0; b < nw; ++b) {
        PAdicNumber cz = t.bz.center + PAdicNumber::from_int(F, static_cast<int64_t>(a)) *
                                           PAdicNumber::from_unit(F, t.bz.level, 1);
        PAdicNumber cw = t.bw.center + PAdicNumber::from_int(F, static_cast<int64_t>(b)) *
                                           PAdicNumber::from_unit(F, t.bw.level, 1);
        // (x,y) h in square(c, L)  <=>  (x,y) in square(c h^{-1}, L)
        PAdicNumber ez = cz * g11 + cw * g21;
        PAdicNumber ew = cz * g12 + cw * g22;
        out.add_term(BallF{ez, L}, BallF{ew, L}, t.coef);
      }
  }
  return out;
}

SchwartzF2 fourier_symplectic(const SchwartzF2& f, const AddCharF& psi2) {
  // f^(x, y) = [int f_z(z) psi2(z y) dz] * [int f_w(w) psi2(-w x) dw]
  const PAdicField& F = f.field();
  AddCharF psi2m = psi2.inverse();
  SchwartzF2 out(F);
  for (auto& t : f.terms()) {
    std::vector<TermF> ty = transform_ball(F, t.bz, Cplx(1, 0), psi2);   // in y
    std::vector<TermF> tx = transform_ball(F, t.bw, Cplx(1, 0), psi2m);  // in x
    for (auto& ax : tx)
      for (auto& ay : ty) out.add_term(ax.ball, ay.ball, t.coef * ax.coef * ay.coef);
  }
  return out;
}

SchwartzE fourier_E(const SchwartzE& phi, const AddCharE& psiE) {
  const EtaleAlgebra& E = phi.algebra();
  const PAdicField& F = E.F();
  SchwartzF2 out(F);
  if (E.is_split()) {
    const AddCharF& psi = psiE.base();
    for (auto& t : phi.coords().terms()) {
      std::vector<TermF> tu = transform_ball(F, t.bz, Cplx(1, 0), psi);
      std::vector<TermF> tv = transform_ball(F, t.bw, Cplx(1, 0), psi);
      for (auto& au : tu)
        for (auto& av : tv) out.add_term(au.ball, av.ball, t.coef * au.coef * av.coef);
    }
    return SchwartzE(E, out);
  }
  // field case
  AddCharF psi2 = psiE.base().twice();
  const PAdicNumber& Delta = E.Delta();
  double root_delta =
      std::pow(static_cast<double>(F.p()), -static_cast<double>(Delta.valuation()) / 2.0);
  // |delta|_E^{1/2} = q^{-v(Delta)/2}
  for (auto& t : phi.coords().terms()) {
    std::vector<TermF> tu = transform_ball(F, t.bz, Cplx(1, 0), psi2);  // at u
    std::vector<TermF> tw = transform_ball(F, t.bw, Cplx(1, 0), psi2);  // at Delta*v
    for (auto& au : tu)
      for (auto& aw : tw) {
        // condition on Delta*v: pull back through v -> Delta v
        auto pre = preimage_scale(aw.ball, Delta);
        if (!pre) continue;
        out.add_term(au.ball, *pre, t.coef * au.coef * aw.coef * root_delta);
      }
  }
  return SchwartzE(E, out);
}

}  // namespace plf
