#pragma once

// Schwartz-Bruhat functions as finite sums of ball indicators: on F, on F^2
// (products of balls with independent levels) and on E (through the
// coordinates z + delta*w, which also represent the split case (z, w)).
// Fourier transforms stay inside the class of finite ball sums.

#include "plf/characters.hpp"
#include "plf/errors.hpp"
#include "plf/etale.hpp"
#include "plf/padic.hpp"

#include <optional>
#include <vector>

namespace plf {

struct BallF {
  PAdicNumber center;
  int level;  // center + p^level O

  bool contains(const PAdicNumber& x) const {
    // residue comparison (clamped to the certified window rather than
    // subtracting, which would fault on deep benign cancellations)
    return x.same_residue(center, level);
  }
};

// intersection of two balls (ultrametric: nested or disjoint)
inline std::optional<BallF> intersect(const BallF& a, const BallF& b) {
  const BallF& fine = a.level >= b.level ? a : b;
  const BallF& coarse = a.level >= b.level ? b : a;
  if (coarse.contains(fine.center)) return fine;
  return std::nullopt;
}

// preimage of ball under t -> a*t: a^{-1} * ball
inline std::optional<BallF> preimage_scale(const BallF& b, const PAdicNumber& a) {
  if (a.is_zero()) return std::nullopt;  // caller handles the constant case
  PAdicNumber ai = a.inverse();
  return BallF{b.center * ai, static_cast<int>(b.level - a.valuation())};
}

struct TermF {
  BallF ball;
  Cplx coef;
};

class SchwartzF {
public:
  SchwartzF() : F_(nullptr) {}
  explicit SchwartzF(const PAdicField& F) : F_(&F) {}

  static SchwartzF indicator(const PAdicField& F, PAdicNumber center, int level,
                             Cplx coef = Cplx(1, 0)) {
    SchwartzF f(F);
    f.terms_.push_back({BallF{center, level}, coef});
    return f;
  }
  static SchwartzF unit_ball(const PAdicField& F) {
    return indicator(F, PAdicNumber::zero(F), 0);
  }

  const PAdicField& field() const { return *F_; }
  const std::vector<TermF>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add_term(BallF b, Cplx c) {
    if (std::abs(c) > 0) terms_.push_back({b, c});
  }

  Cplx eval(const PAdicNumber& x) const {
    Cplx s = 0;
    for (auto& t : terms_)
      if (t.ball.contains(x)) s += t.coef;
    return s;
  }

  int max_level() const {
    int m = 0;
    for (auto& t : terms_) m = std::max(m, t.ball.level);
    return m;
  }
  int64_t min_support_valuation() const {
    int64_t v = INT64_MAX;
    for (auto& t : terms_) {
      int64_t tv = t.ball.center.is_zero()
                       ? t.ball.level
                       : std::min<int64_t>(t.ball.center.valuation(), t.ball.level);
      v = std::min(v, tv);
    }
    return v;
  }

private:
  const PAdicField* F_;
  std::vector<TermF> terms_;
};

// the function t -> f(a t + b) restricted to ball supports, as a SchwartzF
inline SchwartzF compose_affine(const SchwartzF& f, const PAdicNumber& a,
                                const PAdicNumber& b) {
  SchwartzF out(f.field());
  for (auto& t : f.terms()) {
    if (a.is_zero()) {
      // constant in t: not a Schwartz function; callers must not do this
      throw Error("BadSupport", "affine composition with zero scale");
    }
    BallF shifted{t.ball.center - b, t.ball.level};
    if (auto pre = preimage_scale(shifted, a)) out.add_term(*pre, t.coef);
  }
  return out;
}

// ---- one-dimensional Fourier transform ------------------------------------

// transform of one ball indicator against psi (self-dual measure):
//   (1_{c+p^k O})^(x) = psi(c x) q^{n/2-k} 1_{p^{n-k} O}(x)
// expanded into honest ball terms at level n - v(c)
std::vector<TermF> transform_ball(const PAdicField& F, const BallF& ball, Cplx coef,
                                  const AddCharF& psi);

inline SchwartzF fourier(const SchwartzF& f, const AddCharF& psi) {
  SchwartzF out(f.field());
  for (auto& t : f.terms())
    for (auto& r : transform_ball(f.field(), t.ball, t.coef, psi)) out.add_term(r.ball, r.coef);
  return out;
}

// ---- F^2 and E -------------------------------------------------------------

struct TermF2 {
  BallF bz, bw;
  Cplx coef;
};

// finite sums of products of balls in coordinates (z, w); doubles as the
// model of S(E) via z + delta*w (field case) and (z, w) (split case)
class SchwartzF2 {
public:
  SchwartzF2() : F_(nullptr) {}
  explicit SchwartzF2(const PAdicField& F) : F_(&F) {}

  static SchwartzF2 box(const PAdicField& F, PAdicNumber cz, int kz, PAdicNumber cw, int kw,
                        Cplx coef = Cplx(1, 0)) {
    SchwartzF2 f(F);
    f.terms_.push_back({BallF{cz, kz}, BallF{cw, kw}, coef});
    return f;
  }
  static SchwartzF2 unit_box(const PAdicField& F) {
    return box(F, PAdicNumber::zero(F), 0, PAdicNumber::zero(F), 0);
  }
  static SchwartzF2 product(const SchwartzF& fz, const SchwartzF& fw) {
    SchwartzF2 f(fz.field());
    for (auto& a : fz.terms())
      for (auto& b : fw.terms()) f.terms_.push_back({a.ball, b.ball, a.coef * b.coef});
    return f;
  }

  const PAdicField& field() const { return *F_; }
  const std::vector<TermF2>& terms() const { return terms_; }
  void add_term(BallF bz, BallF bw, Cplx c) {
    if (std::abs(c) > 0) terms_.push_back({bz, bw, c});
  }

  Cplx eval(const PAdicNumber& z, const PAdicNumber& w) const {
    Cplx s = 0;
    for (auto& t : terms_)
      if (t.bz.contains(z) && t.bw.contains(w)) s += t.coef;
    return s;
  }

  int max_level() const {
    int m = 0;
    for (auto& t : terms_) m = std::max({m, t.bz.level, t.bw.level});
    return m;
  }
  int64_t min_support_valuation() const {
    int64_t v = INT64_MAX;
    for (auto& t : terms_) {
      auto lo = [](const BallF& b) {
        return b.center.is_zero() ? static_cast<int64_t>(b.level)
                                  : std::min<int64_t>(b.center.valuation(), b.level);
      };
      v = std::min(v, std::min(lo(t.bz), lo(t.bw)));
    }
    return v;
  }

  // the one-variable function t -> f(t*c1, t*c2); at least one ci nonzero
  SchwartzF line_section(const PAdicNumber& c1, const PAdicNumber& c2) const;

  // right translation (rho(h) f)(x, y) = f((x, y) h) for h in GL_2(O) with
  // unit determinant; ball terms map to ball terms after refinement
  SchwartzF2 translated(const PAdicNumber& h11, const PAdicNumber& h12,
                        const PAdicNumber& h21, const PAdicNumber& h22) const;

private:
  const PAdicField* F_;
  std::vector<TermF2> terms_;
};

// symplectic transform f^(x,y) = int f(z,w) psi2(z y - w x) dz dw, with dz,
// dw self-dual for psi2
SchwartzF2 fourier_symplectic(const SchwartzF2& f, const AddCharF& psi2);

// ---- Schwartz functions on E ------------------------------------------------

// Phi on E in coordinates (z, w) meaning z + delta*w (field) or the pair
// (z, w) itself (split); levels per coordinate are independent, which is
// strictly finer than p_E-balls in the ramified case
class SchwartzE {
public:
  SchwartzE() : E_(nullptr) {}
  SchwartzE(const EtaleAlgebra& E, SchwartzF2 f) : E_(&E), f_(std::move(f)) {}

  static SchwartzE unit_lattice(const EtaleAlgebra& E) {
    // indicator of O_E
    return SchwartzE(E, SchwartzF2::unit_box(E.F()));
  }
  // 1 + p_E^d
  static SchwartzE one_unit_ball(const EtaleAlgebra& E, int d) {
    const PAdicField& F = E.F();
    int kz = E.kind() == EtaleKind::Ramified ? (d + 1) / 2 : d;
    int kw = E.kind() == EtaleKind::Ramified ? d / 2 : d;
    PAdicNumber one = PAdicNumber::from_int(F, 1);
    PAdicNumber zero = PAdicNumber::zero(F);
    if (E.is_split())  // 1 = (1,1)
      return SchwartzE(E, SchwartzF2::box(F, one, d, one, d));
    return SchwartzE(E, SchwartzF2::box(F, one, kz, zero, kw));
  }

  const EtaleAlgebra& algebra() const { return *E_; }
  const SchwartzF2& coords() const { return f_; }

  Cplx eval(const EtaleElement& a) const { return f_.eval(a.x(), a.y()); }

  int max_level() const { return f_.max_level(); }
  int64_t min_support_valuation() const { return f_.min_support_valuation(); }

private:
  const EtaleAlgebra* E_;
  SchwartzF2 f_;
};

// E-Fourier transform with respect to psi_E and the self-dual measure
//   field: Phi^(u + delta v) = |delta|_E^{1/2} T_{psi_2}(z-slice)(u) *
//                              T_{psi_2}(w-slice)(Delta v)
//   split: Phi^(u, v) = T_psi(z-slice)(u) * T_psi(w-slice)(v)
// (psi here is psiE.base(), so twisted characters transform consistently)
SchwartzE fourier_E(const SchwartzE& phi, const AddCharE& psiE);

}  // namespace plf
