#pragma once

// Exact arithmetic in Q_p (p odd) at a fixed number of significant digits.
// An element is (valuation, unit residue mod p^prec) together with the count
// of certified digits; the certified count only decreases when a sum
// cancels leading digits.  Anything that would read digits outside the
// certified window raises PrecisionLoss.

#include "plf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace plf {

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// inverse of a mod m for gcd(a, m) = 1
inline uint64_t invmod(uint64_t a, uint64_t m) {
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
  while (nr != 0) {
    int64_t q = r / nr;
    int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DivisionByZero("invmod: argument not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

inline bool is_prime_small(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

class PAdicField {
public:
  PAdicField(int64_t p, int precision) : p_(p), prec_(precision) {
    if (!detail::is_prime_small(p) || p == 2)
      throw NonOddPrime("p must be an odd prime, got " + std::to_string(p));
    if (precision < 6)
      throw PrecisionTooSmall("precision must be >= 6, got " + std::to_string(precision));
    pmod_ = 1;
    for (int i = 0; i < prec_; ++i) {
      if (pmod_ > (uint64_t(1) << 62) / static_cast<uint64_t>(p_))
        throw PrecisionTooSmall("p^precision exceeds the 62-bit working window");
      pmod_ *= static_cast<uint64_t>(p_);
    }
    // smallest primitive root mod p; (Z/p^d)^x is cyclic for p odd
    for (int64_t g = 2; g < p_; ++g) {
      bool ok = true;
      for (int64_t q = 2; q <= p_ - 1; ++q) {
        if ((p_ - 1) % q == 0 && detail::is_prime_small(q) &&
            detail::powmod(g, (p_ - 1) / q, p_) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        proot_ = g;
        break;
      }
    }
  }

  int64_t p() const { return p_; }
  int64_t q() const { return p_; }  // residue cardinality
  int precision() const { return prec_; }
  uint64_t pmod() const { return pmod_; }
  int64_t primitive_root() const { return proot_; }

  uint64_t ppow(int k) const {
    uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<uint64_t>(p_);
    return r;
  }

  bool operator==(const PAdicField& o) const { return p_ == o.p_ && prec_ == o.prec_; }

private:
  int64_t p_;
  int prec_;
  uint64_t pmod_;
  int64_t proot_ = 0;
};

inline PAdicField make_field(int64_t p, int precision) { return PAdicField(p, precision); }

class PAdicNumber {
public:
  PAdicNumber() : f_(nullptr), zero_(true), val_(0), unit_(0), rel_(0) {}

  static PAdicNumber zero(const PAdicField& F) {
    PAdicNumber x;
    x.f_ = &F;
    return x;
  }

  static PAdicNumber from_int(const PAdicField& F, int64_t n) {
    if (n == 0) return zero(F);
    PAdicNumber x;
    x.f_ = &F;
    x.zero_ = false;
    x.val_ = 0;
    bool neg = n < 0;
    uint64_t u = neg ? static_cast<uint64_t>(-(n + 1)) + 1 : static_cast<uint64_t>(n);
    while (u % static_cast<uint64_t>(F.p()) == 0) {
      u /= static_cast<uint64_t>(F.p());
      ++x.val_;
    }
    u %= F.pmod();
    if (neg) u = F.pmod() - u;
    x.unit_ = u;
    x.rel_ = F.precision();
    return x;
  }

  // n / d with d nonzero
  static PAdicNumber from_ratio(const PAdicField& F, int64_t n, int64_t d) {
    if (d == 0) throw DivisionByZero("from_ratio: zero denominator");
    return from_int(F, n) / from_int(F, d);
  }

  // p^v * u with u a unit residue
  static PAdicNumber from_unit(const PAdicField& F, int64_t val, uint64_t unit) {
    if (unit % static_cast<uint64_t>(F.p()) == 0)
      throw DivisionByZero("from_unit: unit divisible by p");
    PAdicNumber x;
    x.f_ = &F;
    x.zero_ = false;
    x.val_ = val;
    x.unit_ = unit % F.pmod();
    x.rel_ = F.precision();
    return x;
  }

  const PAdicField& field() const { return *f_; }
  bool is_zero() const { return zero_; }
  int64_t valuation() const {
    if (zero_) throw DivisionByZero("valuation of zero");
    return val_;
  }
  uint64_t unit() const { return unit_; }
  int certified_digits() const { return zero_ ? f_->precision() : rel_; }
  bool is_unit() const { return !zero_ && val_ == 0; }

  // |x|_F as a power of q: returns the exponent -v(x); zero handled by caller
  double abs_value() const {
    if (zero_) return 0.0;
    double q = static_cast<double>(f_->p());
    return std::pow(q, -static_cast<double>(val_));
  }

  // unit residue mod p^digits, enforcing the 2-digit certification margin
  uint64_t unit_residue(int digits) const {
    if (zero_) return 0;
    if (digits > rel_ - 2)
      throw PrecisionLoss("unit_residue: requested " + std::to_string(digits) +
                          " digits with only " + std::to_string(rel_) + " certified");
    return unit_ % f_->ppow(digits);
  }

  PAdicNumber operator-() const {
    if (zero_) return *this;
    PAdicNumber r = *this;
    r.unit_ = f_->pmod() - unit_;
    return r;
  }

  friend PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b) {
    a.check_same(b);
    if (a.zero_) return b;
    if (b.zero_) return a;
    const PAdicField& F = *a.f_;
    const PAdicNumber &lo = (a.val_ <= b.val_) ? a : b, &hi = (a.val_ <= b.val_) ? b : a;
    int64_t d = hi.val_ - lo.val_;
    if (d >= lo.rel_) return lo;  // hi invisible inside lo's certified window
    int R = static_cast<int>(
        std::min<int64_t>(std::min<int64_t>(lo.rel_, hi.rel_ + d), F.precision()));
    uint64_t mod = F.ppow(R);
    uint64_t shifted = detail::mulmod(hi.unit_ % mod, F.ppow(static_cast<int>(d)) % mod, mod);
    uint64_t u = (lo.unit_ % mod + shifted) % mod;
    if (u == 0) {
      // full cancellation: exact zero when both operands carry full precision,
      // and likewise once the certified window exceeds any residue depth a
      // run can request (the precision invariant keeps uses at <= R-2 digits)
      if ((lo.rel_ == F.precision() && hi.rel_ == F.precision()) || R >= 8) return zero(F);
      throw PrecisionLoss("sum cancels beyond the certified window");
    }
    int k = 0;
    while (u % static_cast<uint64_t>(F.p()) == 0) {
      u /= static_cast<uint64_t>(F.p());
      ++k;
    }
    PAdicNumber r;
    r.f_ = &F;
    r.zero_ = false;
    r.val_ = lo.val_ + k;
    r.unit_ = u;
    r.rel_ = R - k;
    if (r.rel_ < 4) throw PrecisionLoss("sum leaves fewer than 4 certified digits");
    return r;
  }

  friend PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b) { return a + (-b); }

  friend PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b) {
    a.check_same(b);
    if (a.zero_ || b.zero_) return zero(*a.f_);
    PAdicNumber r;
    r.f_ = a.f_;
    r.zero_ = false;
    r.val_ = a.val_ + b.val_;
    r.unit_ = detail::mulmod(a.unit_, b.unit_, a.f_->pmod());
    r.rel_ = std::min(a.rel_, b.rel_);
    return r;
  }

  PAdicNumber inverse() const {
    if (zero_) throw DivisionByZero("inverse of zero");
    PAdicNumber r = *this;
    r.val_ = -val_;
    r.unit_ = detail::invmod(unit_, f_->pmod());
    return r;
  }

  friend PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b) {
    return a * b.inverse();
  }

  // x == y mod p^level as far as the certified digits can tell; probes past
  // the certified window are clamped to it rather than refuted
  bool same_residue(const PAdicNumber& o, int level) const {
    check_same(o);
    if (zero_ && o.zero_) return true;
    if (zero_ != o.zero_) {
      const PAdicNumber& nz = zero_ ? o : *this;
      return nz.val_ >= level;
    }
    if (val_ != o.val_) {
      // the difference has valuation exactly min(v, v')
      return std::min(val_, o.val_) >= level;
    }
    if (val_ >= level) return true;
    int need = static_cast<int>(level - val_);
    need = std::min({need, rel_ - 2, o.rel_ - 2});
    if (need <= 0) return true;
    return unit_ % f_->ppow(need) == o.unit_ % f_->ppow(need);
  }

  std::string str() const {
    if (zero_) return "0";
    return std::to_string(unit_) + "*" + std::to_string(f_->p()) + "^" + std::to_string(val_);
  }

private:
  void check_same(const PAdicNumber& o) const {
    if (f_ == nullptr || o.f_ == nullptr || !(*f_ == *o.f_))
      throw Error("FieldMismatch", "operands from different fields");
  }

  const PAdicField* f_;
  bool zero_;
  int64_t val_;
  uint64_t unit_;
  int rel_;
};

// uniform random element with valuation in [vmin, vmax], full precision
inline PAdicNumber random_padic(const PAdicField& F, std::mt19937_64& rng, int vmin = -2,
                                int vmax = 2) {
  std::uniform_int_distribution<int> dv(vmin, vmax);
  std::uniform_int_distribution<uint64_t> du(1, F.pmod() - 1);
  uint64_t u = du(rng);
  while (u % static_cast<uint64_t>(F.p()) == 0) u = du(rng);
  return PAdicNumber::from_unit(F, dv(rng), u);
}

// Legendre symbol of the unit part, via Euler's criterion
inline int legendre(const PAdicField& F, uint64_t unit) {
  uint64_t r = detail::powmod(unit % static_cast<uint64_t>(F.p()), (F.p() - 1) / 2,
                              static_cast<uint64_t>(F.p()));
  return r == 1 ? 1 : -1;
}

}  // namespace plf
