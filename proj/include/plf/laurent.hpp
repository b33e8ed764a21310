#pragma once

// C(q^{-s}) with complex coefficients: Laurent polynomials in X = q^{-s} and
// their quotients.  This is the value type of every integral and gamma
// factor; exactness lives in the exponent structure, coefficients are
// complex doubles compared with a tolerance.

#include "plf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace plf {

using Cplx = std::complex<double>;

constexpr int kLaurentDegreeCap = 256;

class LaurentPoly {
public:
  LaurentPoly() = default;
  explicit LaurentPoly(Cplx c) {
    if (std::abs(c) > 0) coef_[0] = c;
  }
  static LaurentPoly monomial(Cplx c, int e) {
    LaurentPoly p;
    if (std::abs(c) > 0) p.coef_[e] = c;
    return p;
  }

  bool is_zero() const { return coef_.empty(); }
  const std::map<int, Cplx>& coef() const { return coef_; }
  int min_exp() const { return coef_.empty() ? 0 : coef_.begin()->first; }
  int max_exp() const { return coef_.empty() ? 0 : coef_.rbegin()->first; }

  double max_abs() const {
    double m = 0;
    for (auto& kv : coef_) m = std::max(m, std::abs(kv.second));
    return m;
  }

  void add_term(int e, Cplx c) {
    coef_[e] += c;
    if (std::abs(coef_[e]) == 0.0) coef_.erase(e);
  }

  // drop coefficients that are numerically noise relative to the largest one
  void prune(double rel = 1e-13) {
    double m = max_abs();
    if (m == 0) {
      coef_.clear();
      return;
    }
    for (auto it = coef_.begin(); it != coef_.end();) {
      if (std::abs(it->second) < rel * m)
        it = coef_.erase(it);
      else
        ++it;
    }
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (auto& kv : b.coef_) r.add_term(kv.first, kv.second);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (auto& kv : b.coef_) r.add_term(kv.first, -kv.second);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (auto& ka : a.coef_)
      for (auto& kb : b.coef_) r.add_term(ka.first + kb.first, ka.second * kb.second);
    if (!r.coef_.empty() && r.max_exp() - r.min_exp() > kLaurentDegreeCap)
      throw NonStabilizingShells("Laurent degree cap exceeded (runaway shell sum?)");
    return r;
  }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (auto& kv : coef_) r.coef_[kv.first] = -kv.second;
    return r;
  }

  LaurentPoly scaled(Cplx c) const {
    LaurentPoly r;
    if (std::abs(c) == 0.0) return r;
    for (auto& kv : coef_) r.coef_[kv.first] = kv.second * c;
    return r;
  }

  // X -> c * X^k, k != 0
  LaurentPoly subst_monomial(Cplx c, int k) const {
    LaurentPoly r;
    for (auto& kv : coef_) {
      Cplx factor = std::pow(c, kv.first);
      r.add_term(kv.first * k, kv.second * factor);
    }
    return r;
  }

  Cplx eval(Cplx x) const {
    Cplx s = 0;
    for (auto& kv : coef_) s += kv.second * std::pow(x, kv.first);
    return s;
  }

  std::string str() const;

private:
  std::map<int, Cplx> coef_;
};

class LaurentRational {
public:
  LaurentRational() : num_(), den_(Cplx(1, 0)), q_(0) {}
  LaurentRational(LaurentPoly num, LaurentPoly den, int64_t q)
      : num_(std::move(num)), den_(std::move(den)), q_(q) {
    if (den_.is_zero()) throw DivideByZeroRational("zero denominator");
    normalize();
  }
  static LaurentRational constant(Cplx c, int64_t q) {
    return LaurentRational(LaurentPoly(c), LaurentPoly(Cplx(1, 0)), q);
  }
  static LaurentRational monomial(Cplx c, int e, int64_t q) {
    return LaurentRational(LaurentPoly::monomial(c, e), LaurentPoly(Cplx(1, 0)), q);
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  int64_t q() const { return q_; }
  bool is_zero() const { return num_.is_zero(); }

  friend LaurentRational operator+(const LaurentRational& a, const LaurentRational& b) {
    a.check(b);
    if (identical(a.den_, b.den_))
      return LaurentRational(a.num_ + b.num_, a.den_, a.q_);
    return LaurentRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, a.q_);
  }
  friend LaurentRational operator-(const LaurentRational& a, const LaurentRational& b) {
    a.check(b);
    if (identical(a.den_, b.den_))
      return LaurentRational(a.num_ - b.num_, a.den_, a.q_);
    return LaurentRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_, a.q_);
  }
  friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
    a.check(b);
    return LaurentRational(a.num_ * b.num_, a.den_ * b.den_, a.q_);
  }
  friend LaurentRational operator/(const LaurentRational& a, const LaurentRational& b) {
    a.check(b);
    if (b.is_zero()) throw DivideByZeroRational("division by zero rational");
    return LaurentRational(a.num_ * b.den_, a.den_ * b.num_, a.q_);
  }
  LaurentRational operator-() const { return LaurentRational(-num_, den_, q_); }

  LaurentRational scaled(Cplx c) const { return LaurentRational(num_.scaled(c), den_, q_); }

  // X -> c * X^k; used for s -> 1-s (c = 1/q, k = -1), s -> 2s-1 (c = q,
  // k = 2) and X_E -> X^f re-expression (c = 1, k = f, with q updated)
  LaurentRational subst_monomial(Cplx c, int k, int64_t new_q) const {
    return LaurentRational(num_.subst_monomial(c, k), den_.subst_monomial(c, k), new_q);
  }

  Cplx eval(Cplx x) const {
    Cplx d = den_.eval(x);
    if (std::abs(d) < 1e-300) throw DivideByZeroRational("evaluation at a pole");
    return num_.eval(x) / d;
  }

  std::string str() const;

private:
  void check(const LaurentRational& o) const {
    if (q_ != o.q_) throw Error("BaseMismatch", "Laurent rationals over different q");
  }
  static bool identical(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coef() == b.coef();
  }
  // strip common monomial factor, make lowest denominator coefficient 1
  void normalize() {
    num_.prune();
    den_.prune();
    if (den_.is_zero()) throw DivideByZeroRational("zero denominator after pruning");
    int shift = den_.min_exp();
    if (!num_.is_zero()) shift = std::min(shift, num_.min_exp());
    Cplx lead = den_.coef().begin()->second;
    LaurentPoly n2, d2;
    for (auto& kv : num_.coef()) n2.add_term(kv.first - shift, kv.second / lead);
    for (auto& kv : den_.coef()) d2.add_term(kv.first - shift, kv.second / lead);
    num_ = n2;
    den_ = d2;
  }

  LaurentPoly num_, den_;
  int64_t q_;
};

inline std::string LaurentPoly::str() const {
  if (coef_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& kv : coef_) {
    char buf[96];
    if (std::abs(kv.second.imag()) < 1e-12 * (1 + std::abs(kv.second.real())))
      snprintf(buf, sizeof buf, "%.6g", kv.second.real());
    else
      snprintf(buf, sizeof buf, "(%.6g%+.6gi)", kv.second.real(), kv.second.imag());
    if (!first) s += " + ";
    s += buf;
    if (kv.first != 0) s += "*X^" + std::to_string(kv.first);
    first = false;
  }
  return s;
}

inline std::string LaurentRational::str() const {
  return "[" + num_.str() + "] / [" + den_.str() + "]";
}

// coefficient-wise comparison of a*den(b) - b*den(a) against
// tol * (largest coefficient magnitude of the cross products)
inline bool lr_equal(const LaurentRational& a, const LaurentRational& b, double tol = 1e-9) {
  LaurentPoly x = a.num() * b.den();
  LaurentPoly y = b.num() * a.den();
  double scale = std::max({x.max_abs(), y.max_abs(), 1e-30});
  LaurentPoly d = x - y;
  return d.max_abs() <= tol * scale;
}

// maximum relative deviation, for reports
inline double lr_deviation(const LaurentRational& a, const LaurentRational& b) {
  LaurentPoly x = a.num() * b.den();
  LaurentPoly y = b.num() * a.den();
  double scale = std::max({x.max_abs(), y.max_abs(), 1e-30});
  return (x - y).max_abs() / scale;
}

// certified-constant extraction: the ratio must be coefficient-wise a single
// scalar (degree difference zero after reduction)
inline Cplx lr_constant_value(const LaurentRational& a, double tol = 1e-9) {
  if (a.is_zero()) return Cplx(0, 0);
  // proportionality num = c * den
  const LaurentPoly &n = a.num(), &d = a.den();
  if (n.min_exp() != d.min_exp() || n.max_exp() != d.max_exp())
    throw NotConstant("exponent ranges of numerator and denominator differ");
  Cplx c = n.coef().begin()->second / d.coef().begin()->second;
  LaurentPoly diff = n - d.scaled(c);
  if (diff.max_abs() > tol * std::max(n.max_abs(), 1e-30))
    throw NotConstant("ratio carries X-dependence");
  return c;
}

}  // namespace plf
