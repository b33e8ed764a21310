#pragma once

// The rank-2 etale algebra E over F: split (F x F), unramified (delta^2 a
// unit non-square) or ramified (delta^2 a uniformizer).  Elements are pairs
// of PAdicNumbers: x + y*delta in the field cases, (x, y) componentwise in
// the split case.  Includes the Hilbert-90 section of E^x -> E^1 and the
// finite quotients of E^1 used by the compact integrals.

#include "plf/errors.hpp"
#include "plf/padic.hpp"

#include <cstdint>
#include <vector>

namespace plf {

enum class EtaleKind { Split, Unramified, Ramified };

class EtaleAlgebra;
class EtaleElement;

class EtaleAlgebra {
public:
  EtaleAlgebra(const PAdicField& F, EtaleKind kind, PAdicNumber Delta)
      : F_(&F), kind_(kind), Delta_(Delta) {
    if (kind == EtaleKind::Unramified) {
      if (Delta_.is_zero() || Delta_.valuation() != 0)
        throw Error("BadDelta", "unramified case needs a unit Delta");
      if (legendre(F, Delta_.unit_residue(1)) != -1)
        throw Error("BadDelta", "unramified case needs a non-square unit Delta");
    } else if (kind == EtaleKind::Ramified) {
      if (Delta_.is_zero() || Delta_.valuation() != 1)
        throw Error("BadDelta", "ramified case needs v(Delta) = 1");
    }
  }

  static EtaleAlgebra split(const PAdicField& F) {
    return EtaleAlgebra(F, EtaleKind::Split, PAdicNumber::from_int(F, 1));
  }
  static EtaleAlgebra unramified(const PAdicField& F) {
    // smallest non-residue unit
    for (int64_t u = 2; u < F.p(); ++u)
      if (legendre(F, static_cast<uint64_t>(u)) == -1)
        return EtaleAlgebra(F, EtaleKind::Unramified, PAdicNumber::from_int(F, u));
    throw Error("BadDelta", "no non-residue found");
  }
  static EtaleAlgebra ramified(const PAdicField& F) {
    return EtaleAlgebra(F, EtaleKind::Ramified, PAdicNumber::from_int(F, F.p()));
  }

  const PAdicField& F() const { return *F_; }
  EtaleKind kind() const { return kind_; }
  bool is_split() const { return kind_ == EtaleKind::Split; }
  bool is_field() const { return kind_ != EtaleKind::Split; }
  const PAdicNumber& Delta() const { return Delta_; }

  int residue_degree() const { return kind_ == EtaleKind::Unramified ? 2 : 1; }
  int ramification() const { return kind_ == EtaleKind::Ramified ? 2 : 1; }
  int64_t qE() const {
    return kind_ == EtaleKind::Unramified ? F_->p() * F_->p() : F_->p();
  }

  EtaleElement delta() const;
  EtaleElement one() const;
  EtaleElement zero() const;
  EtaleElement from_F(const PAdicNumber& x) const;
  EtaleElement make(const PAdicNumber& x, const PAdicNumber& y) const;
  EtaleElement from_ints(int64_t x, int64_t y) const;
  EtaleElement uniformizer() const;  // p if e = 1, delta if e = 2

  bool operator==(const EtaleAlgebra& o) const {
    return F_ == o.F_ && kind_ == o.kind_;
  }

private:
  const PAdicField* F_;
  EtaleKind kind_;
  PAdicNumber Delta_;
};

class EtaleElement {
public:
  EtaleElement() : E_(nullptr) {}
  EtaleElement(const EtaleAlgebra& E, PAdicNumber x, PAdicNumber y)
      : E_(&E), x_(x), y_(y) {}

  const EtaleAlgebra& algebra() const { return *E_; }
  const PAdicNumber& x() const { return x_; }
  const PAdicNumber& y() const { return y_; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

  EtaleElement theta() const {
    if (E_->is_split()) return EtaleElement(*E_, y_, x_);
    return EtaleElement(*E_, x_, -y_);
  }

  PAdicNumber trace() const {
    if (E_->is_split()) return x_ + y_;
    return x_ + x_;
  }

  PAdicNumber norm() const {
    if (E_->is_split()) return x_ * y_;
    return x_ * x_ - y_ * y_ * E_->Delta();
  }

  // valuation in E, normalized so v_E(uniformizer) = 1; split case returns
  // min of the component valuations (used only for support bookkeeping)
  int64_t val_E() const {
    if (is_zero()) throw DivisionByZero("val_E of zero");
    switch (E_->kind()) {
      case EtaleKind::Split: {
        int64_t vx = x_.is_zero() ? INT64_MAX : x_.valuation();
        int64_t vy = y_.is_zero() ? INT64_MAX : y_.valuation();
        return std::min(vx, vy);
      }
      case EtaleKind::Unramified: {
        int64_t vx = x_.is_zero() ? INT64_MAX : x_.valuation();
        int64_t vy = y_.is_zero() ? INT64_MAX : y_.valuation();
        return std::min(vx, vy);
      }
      case EtaleKind::Ramified: {
        int64_t vx = x_.is_zero() ? INT64_MAX : 2 * x_.valuation();
        int64_t vy = y_.is_zero() ? INT64_MAX : 2 * y_.valuation() + 1;
        return std::min(vx, vy);
      }
    }
    throw Error("Unreachable", "val_E");
  }

  // v_F(N(z)); equals f * v_E(z) for the field cases
  int64_t norm_valuation() const {
    PAdicNumber n = norm();
    if (n.is_zero()) throw DivisionByZero("norm_valuation of zero divisor");
    return n.valuation();
  }

  friend EtaleElement operator+(const EtaleElement& a, const EtaleElement& b) {
    return EtaleElement(*a.E_, a.x_ + b.x_, a.y_ + b.y_);
  }
  friend EtaleElement operator-(const EtaleElement& a, const EtaleElement& b) {
    return EtaleElement(*a.E_, a.x_ - b.x_, a.y_ - b.y_);
  }
  EtaleElement operator-() const { return EtaleElement(*E_, -x_, -y_); }

  friend EtaleElement operator*(const EtaleElement& a, const EtaleElement& b) {
    if (a.E_->is_split())
      return EtaleElement(*a.E_, a.x_ * b.x_, a.y_ * b.y_);
    return EtaleElement(*a.E_, a.x_ * b.x_ + a.y_ * b.y_ * a.E_->Delta(),
                        a.x_ * b.y_ + a.y_ * b.x_);
  }

  EtaleElement inverse() const {
    if (E_->is_split()) {
      if (x_.is_zero() || y_.is_zero())
        throw DivisionByZero("split element with a zero component");
      return EtaleElement(*E_, x_.inverse(), y_.inverse());
    }
    PAdicNumber n = norm();
    if (n.is_zero()) throw DivisionByZero("inverse of zero");
    PAdicNumber ni = n.inverse();
    return EtaleElement(*E_, x_ * ni, -(y_ * ni));
  }

  friend EtaleElement operator/(const EtaleElement& a, const EtaleElement& b) {
    return a * b.inverse();
  }

  EtaleElement scale(const PAdicNumber& c) const {
    return EtaleElement(*E_, x_ * c, y_ * c);
  }

  bool same_residue(const EtaleElement& o, int level_E) const {
    // v_E(this - o) >= level_E, tested componentwise
    switch (E_->kind()) {
      case EtaleKind::Split:
      case EtaleKind::Unramified: {
        int lv = level_E;
        return x_.same_residue(o.x_, lv) && y_.same_residue(o.y_, lv);
      }
      case EtaleKind::Ramified: {
        int lx = (level_E + 1) / 2;  // p_E^m: x mod p^ceil(m/2), y mod p^floor(m/2)
        int ly = level_E / 2;
        return x_.same_residue(o.x_, lx) && y_.same_residue(o.y_, ly);
      }
    }
    throw Error("Unreachable", "same_residue");
  }

  std::string str() const { return "(" + x_.str() + "," + y_.str() + ")"; }

private:
  const EtaleAlgebra* E_;
  PAdicNumber x_, y_;
};

inline EtaleElement EtaleAlgebra::delta() const {
  if (is_split())
    return EtaleElement(*this, PAdicNumber::from_int(*F_, 1), PAdicNumber::from_int(*F_, -1));
  return EtaleElement(*this, PAdicNumber::zero(*F_), PAdicNumber::from_int(*F_, 1));
}
inline EtaleElement EtaleAlgebra::one() const {
  return EtaleElement(*this, PAdicNumber::from_int(*F_, 1),
                      is_split() ? PAdicNumber::from_int(*F_, 1) : PAdicNumber::zero(*F_));
}
inline EtaleElement EtaleAlgebra::zero() const {
  return EtaleElement(*this, PAdicNumber::zero(*F_), PAdicNumber::zero(*F_));
}
inline EtaleElement EtaleAlgebra::from_F(const PAdicNumber& x) const {
  return EtaleElement(*this, x, is_split() ? x : PAdicNumber::zero(*F_));
}
inline EtaleElement EtaleAlgebra::make(const PAdicNumber& x, const PAdicNumber& y) const {
  return EtaleElement(*this, x, y);
}
inline EtaleElement EtaleAlgebra::from_ints(int64_t x, int64_t y) const {
  return EtaleElement(*this, PAdicNumber::from_int(*F_, x), PAdicNumber::from_int(*F_, y));
}
inline EtaleElement EtaleAlgebra::uniformizer() const {
  if (kind_ == EtaleKind::Ramified) return delta();
  return from_F(PAdicNumber::from_int(*F_, F_->p()));
}

// ---- norm group membership -------------------------------------------------

// x in N_{E/F}(E^x)?  Split: always.  Unramified: v(x) even.  Ramified:
// tame Hilbert symbol (Delta, x) computed from Legendre symbols.
inline bool is_norm(const EtaleAlgebra& E, const PAdicNumber& x) {
  if (x.is_zero()) throw ZeroArgument("is_norm of zero");
  switch (E.kind()) {
    case EtaleKind::Split:
      return true;
    case EtaleKind::Unramified:
      return x.valuation() % 2 == 0;
    case EtaleKind::Ramified: {
      const PAdicField& F = E.F();
      int64_t alpha = E.Delta().valuation();  // = 1
      int64_t beta = x.valuation();
      int la = legendre(F, E.Delta().unit_residue(1));
      int lb = legendre(F, x.unit_residue(1));
      int eps = ((F.p() - 1) / 2) % 2;  // (-1,-1) sign
      int sign = 1;
      if ((alpha * beta * eps) % 2 != 0) sign = -sign;
      if (beta % 2 != 0 && la == -1) sign = -sign;
      if (alpha % 2 != 0 && lb == -1) sign = -sign;
      return sign == 1;
    }
  }
  throw Error("Unreachable", "is_norm");
}

// ---- Hilbert 90 -------------------------------------------------------------

// Section of a |-> a/theta(a): given alpha in E^1 returns a with
// a*theta(a)^{-1} = alpha.  Canonical choice 1 + alpha, scaled by a power of p
// to keep v_E(a) in {0, 1}; a = delta when alpha = -1.
inline EtaleElement hilbert90(const EtaleAlgebra& E, const EtaleElement& alpha) {
  if (!E.is_field()) throw Error("BadAlgebra", "hilbert90 needs a field");
  PAdicNumber n1 = alpha.norm() - PAdicNumber::from_int(E.F(), 1);
  if (!n1.is_zero() && n1.valuation() < E.F().precision() - 4)
    throw NotNormOne("hilbert90: N(alpha) != 1");
  EtaleElement a = alpha + E.one();
  if (a.is_zero()) return E.delta();
  int64_t v = a.val_E();
  if (v >= static_cast<int64_t>(E.ramification()) * (E.F().precision() - 4)) return E.delta();
  // F^x-scale so that v_E(a) is 0 or 1
  int64_t shift = (v >= 0) ? v / 2 : (v - 1) / 2;
  if (shift != 0) {
    PAdicNumber c = PAdicNumber::from_unit(E.F(), -shift, 1);
    a = a.scale(c);
  }
  return a;
}

// ---- finite quotients of E^1 -----------------------------------------------

// Hensel square root of a unit u with u = 1 mod p (field F, p odd)
inline PAdicNumber sqrt_one_unit(const PAdicNumber& u) {
  const PAdicField& F = u.field();
  PAdicNumber x = PAdicNumber::from_int(F, 1);
  PAdicNumber two_inv = PAdicNumber::from_int(F, 2).inverse();
  for (int i = 0; i < F.precision() + 2; ++i) {
    // Newton: x <- (x + u/x)/2
    PAdicNumber nx = (x + u / x) * two_inv;
    if (nx.same_residue(x, F.precision() - 3)) return nx;
    x = nx;
  }
  return x;
}

// Representatives of E^1 modulo E^1 cap (1 + p_E^m).  The reduction-to-the-
// residue-field part is enumerated by brute force over shallow residues; the
// 1-unit part is parametrized exactly by w = t + s*delta with
// t = -1 + sqrt(1 + s^2*Delta), which sweeps the norm-one 1-units once.
std::vector<EtaleElement> enumerate_E1_cosets(const EtaleAlgebra& E, int m);

// Brute-force oracle: image of the unit map a -> a/theta(a) (plus the
// delta-shifted branch in the ramified case), deduplicated at level m.
std::vector<EtaleElement> enumerate_E1_cosets_bruteforce(const EtaleAlgebra& E, int m);

// residue enumeration helpers (field case): all classes of O_E mod p_E^m
std::vector<EtaleElement> etale_residues(const EtaleAlgebra& E, int m);
// classes of (O_E/p_E^m)^x
std::vector<EtaleElement> etale_unit_residues(const EtaleAlgebra& E, int m);
// canonical key of an integral element of O_E at level m of p_E
std::pair<uint64_t, uint64_t> unit_residue_key(const EtaleElement& z, int m);

}  // namespace plf
