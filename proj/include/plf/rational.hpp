#pragma once

// Exact scalar types for the matrix-identity layer: arbitrary-precision
// rationals, the quadratic extension Q(delta) with delta^2 = Delta, and the
// split algebra Q x Q.  All of them plug into Eigen dense matrices through
// the NumTraits specializations at the bottom.

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace plf {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

class Rat {
public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(int n) : num_(n), den_(1) {}
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_ == 0) throw std::domain_error("Rat: zero denominator");
    reduce();
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

  friend Rat operator+(const Rat& x, const Rat& y) {
    return Rat(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend Rat operator-(const Rat& x, const Rat& y) {
    return Rat(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
  }
  friend Rat operator*(const Rat& x, const Rat& y) {
    return Rat(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend Rat operator/(const Rat& x, const Rat& y) {
    if (y.num_ == 0) throw std::domain_error("Rat: division by zero");
    return Rat(x.num_ * y.den_, x.den_ * y.num_);
  }
  Rat operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& x, const Rat& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rat& x, const Rat& y) { return !(x == y); }
  friend bool operator<(const Rat& x, const Rat& y) {
    return x.num_ * y.den_ < y.num_ * x.den_;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    std::ostringstream os;
    os << num_;
    if (den_ != 1) {
      os << "/";
      os << den_;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  void reduce() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt a = num_ < 0 ? BigInt(-num_) : num_;
    BigInt g = boost::multiprecision::gcd(a, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

// Element a + b*delta of Q(delta), delta^2 = Delta.  Delta is a process-wide
// configuration knob (set once before a verification run); the default 2 is a
// non-square, which is all the identity checks need.
class QDelta {
public:
  QDelta() : a_(0), b_(0) {}
  QDelta(long long n) : a_(n), b_(0) {}
  QDelta(int n) : a_(n), b_(0) {}
  QDelta(Rat a) : a_(std::move(a)), b_(0) {}
  QDelta(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static QDelta delta() { return QDelta(Rat(0), Rat(1)); }
  static const Rat& delta_sq();
  static void set_delta_sq(Rat d);  // not thread-safe; call before running trials

  const Rat& re() const { return a_; }
  const Rat& im() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QDelta conj() const { return QDelta(a_, -b_); }  // the involution theta
  Rat norm() const { return a_ * a_ - b_ * b_ * delta_sq(); }

  friend QDelta operator+(const QDelta& x, const QDelta& y) {
    return QDelta(x.a_ + y.a_, x.b_ + y.b_);
  }
  friend QDelta operator-(const QDelta& x, const QDelta& y) {
    return QDelta(x.a_ - y.a_, x.b_ - y.b_);
  }
  friend QDelta operator*(const QDelta& x, const QDelta& y) {
    return QDelta(x.a_ * y.a_ + x.b_ * y.b_ * delta_sq(), x.a_ * y.b_ + x.b_ * y.a_);
  }
  friend QDelta operator/(const QDelta& x, const QDelta& y) {
    Rat n = y.norm();
    if (n.is_zero()) throw std::domain_error("QDelta: division by zero");
    QDelta z = x * y.conj();
    return QDelta(z.a_ / n, z.b_ / n);
  }
  QDelta operator-() const { return QDelta(-a_, -b_); }
  QDelta& operator+=(const QDelta& o) { return *this = *this + o; }
  QDelta& operator-=(const QDelta& o) { return *this = *this - o; }
  QDelta& operator*=(const QDelta& o) { return *this = *this * o; }
  QDelta& operator/=(const QDelta& o) { return *this = *this / o; }

  friend bool operator==(const QDelta& x, const QDelta& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QDelta& x, const QDelta& y) { return !(x == y); }

  std::string str() const {
    std::ostringstream os;
    os << a_.str();
    if (!b_.is_zero()) os << (b_.sign() < 0 ? "" : "+") << b_.str() << "d";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const QDelta& z) { return os << z.str(); }

private:
  Rat a_, b_;
};

// Pair (x, y) in Q x Q with componentwise arithmetic; theta swaps the
// components.  Not a field (zero divisors), so matrix work over it goes
// through per-component operations.
class SplitQ {
public:
  SplitQ() : x_(0), y_(0) {}
  SplitQ(long long n) : x_(n), y_(n) {}
  SplitQ(int n) : x_(n), y_(n) {}
  SplitQ(Rat x, Rat y) : x_(std::move(x)), y_(std::move(y)) {}

  static SplitQ delta() { return SplitQ(Rat(1), Rat(-1)); }

  const Rat& first() const { return x_; }
  const Rat& second() const { return y_; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

  SplitQ conj() const { return SplitQ(y_, x_); }
  Rat norm_first() const { return x_ * y_; }

  friend SplitQ operator+(const SplitQ& a, const SplitQ& b) {
    return SplitQ(a.x_ + b.x_, a.y_ + b.y_);
  }
  friend SplitQ operator-(const SplitQ& a, const SplitQ& b) {
    return SplitQ(a.x_ - b.x_, a.y_ - b.y_);
  }
  friend SplitQ operator*(const SplitQ& a, const SplitQ& b) {
    return SplitQ(a.x_ * b.x_, a.y_ * b.y_);
  }
  friend SplitQ operator/(const SplitQ& a, const SplitQ& b) {
    return SplitQ(a.x_ / b.x_, a.y_ / b.y_);
  }
  SplitQ operator-() const { return SplitQ(-x_, -y_); }
  SplitQ& operator+=(const SplitQ& o) { return *this = *this + o; }
  SplitQ& operator-=(const SplitQ& o) { return *this = *this - o; }
  SplitQ& operator*=(const SplitQ& o) { return *this = *this * o; }

  friend bool operator==(const SplitQ& a, const SplitQ& b) {
    return a.x_ == b.x_ && a.y_ == b.y_;
  }
  friend bool operator!=(const SplitQ& a, const SplitQ& b) { return !(a == b); }

  std::string str() const { return "(" + x_.str() + "," + y_.str() + ")"; }
  friend std::ostream& operator<<(std::ostream& os, const SplitQ& z) { return os << z.str(); }

private:
  Rat x_, y_;
};

}  // namespace plf

namespace Eigen {

template <>
struct NumTraits<plf::Rat> : GenericNumTraits<plf::Rat> {
  typedef plf::Rat Real;
  typedef plf::Rat NonInteger;
  typedef plf::Rat Nested;
  static inline Real epsilon() { return plf::Rat(0); }
  static inline Real dummy_precision() { return plf::Rat(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 24,
    MulCost = 24
  };
};

template <>
struct NumTraits<plf::QDelta> : GenericNumTraits<plf::QDelta> {
  typedef plf::QDelta Real;
  typedef plf::QDelta NonInteger;
  typedef plf::QDelta Nested;
  static inline Real epsilon() { return plf::QDelta(0); }
  static inline Real dummy_precision() { return plf::QDelta(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 48,
    MulCost = 64
  };
};

template <>
struct NumTraits<plf::SplitQ> : GenericNumTraits<plf::SplitQ> {
  typedef plf::SplitQ Real;
  typedef plf::SplitQ NonInteger;
  typedef plf::SplitQ Nested;
  static inline Real epsilon() { return plf::SplitQ(0); }
  static inline Real dummy_precision() { return plf::SplitQ(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 48,
    MulCost = 48
  };
};

}  // namespace Eigen
