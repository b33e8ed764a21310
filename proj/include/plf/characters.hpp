#pragma once

// Additive characters of F and E (twists of the canonical conductor-zero
// character), multiplicative characters of F^x and E^x of finite depth, the
// derived characters built from them, and the norm-group quadratic character.
// Unit-group characters are stored as dense value tables on (O/p^d)^x, which
// keeps every derivation (product, inverse, conjugate-dual, restriction,
// norm pullback) a pointwise table operation.

#include "plf/errors.hpp"
#include "plf/etale.hpp"
#include "plf/laurent.hpp"
#include "plf/padic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <vector>

namespace plf {

inline Cplx root_of_unity(int64_t k, int64_t m) {
  double a = 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(m));
  return Cplx(std::cos(a), std::sin(a));
}

// ---- additive characters -----------------------------------------------

// psi_c(x) = psi0(c x) with psi0 the canonical character of conductor
// exponent 0: psi0(x) = exp(2 pi i {x}) on the p-power fractional part.
class AddCharF {
public:
  AddCharF(const PAdicField& F, PAdicNumber twist) : F_(&F), twist_(twist) {
    if (twist_.is_zero()) throw ZeroArgument("additive twist must be nonzero");
  }
  static AddCharF standard(const PAdicField& F, int conductor_exponent = 0) {
    return AddCharF(F, PAdicNumber::from_unit(F, -conductor_exponent, 1));
  }

  const PAdicField& field() const { return *F_; }
  const PAdicNumber& twist() const { return twist_; }
  int conductor_exponent() const { return static_cast<int>(-twist_.valuation()); }

  AddCharF twisted(const PAdicNumber& c) const { return AddCharF(*F_, twist_ * c); }
  AddCharF inverse() const {
    return AddCharF(*F_, twist_ * PAdicNumber::from_int(*F_, -1));
  }
  AddCharF twice() const { return twisted(PAdicNumber::from_int(*F_, 2)); }

  Cplx eval(const PAdicNumber& x) const {
    if (x.is_zero()) return Cplx(1, 0);
    PAdicNumber t = twist_ * x;
    if (t.is_zero() || t.valuation() >= 0) return Cplx(1, 0);
    int m = static_cast<int>(-t.valuation());
    uint64_t r = t.unit_residue(m);
    return root_of_unity(static_cast<int64_t>(r), static_cast<int64_t>(F_->ppow(m)));
  }

  // self-dual additive measure: vol(O) = q^{n/2}
  double vol_O() const {
    return std::pow(static_cast<double>(F_->p()), conductor_exponent() / 2.0);
  }

private:
  const PAdicField* F_;
  PAdicNumber twist_;
};

// psi_E = psi o Tr (field case) or psi x psi (split, via Tr(x,y) = x+y)
class AddCharE {
public:
  AddCharE(const EtaleAlgebra& E, const AddCharF& base) : E_(&E), base_(base) {
    conductor_ = search_conductor();
  }

  const EtaleAlgebra& algebra() const { return *E_; }
  const AddCharF& base() const { return base_; }

  Cplx eval(const EtaleElement& z) const { return base_.eval(z.trace()); }

  // largest m with triviality on p_E^m, found by search (the oracle route)
  int conductor_exponent() const { return conductor_; }

  AddCharE twisted_by_F(const PAdicNumber& c) const {
    return AddCharE(*E_, base_.twisted(c));
  }

  double vol_OE() const {
    return std::pow(static_cast<double>(E_->qE()),
                    static_cast<double>(conductor_) / 2.0);
  }

private:
  int search_conductor() const {
    // trivial on p_E^m iff trivial on pi_E^m * {1, delta} * O_F
    auto trivial_at = [&](int m) {
      EtaleElement pim = E_->one();
      EtaleElement pi = E_->uniformizer();
      EtaleElement piinv = pi.inverse();
      for (int i = 0; i < m; ++i) pim = pim * pi;
      for (int i = 0; i < -m; ++i) pim = pim * piinv;
      for (const EtaleElement& g : {pim, pim * E_->delta()}) {
        PAdicNumber tr = (E_->from_F(base_.twist()) * g).trace();
        if (!tr.is_zero() && tr.valuation() < 0) return false;
      }
      return true;
    };
    int m = 0;
    int guard = 4 * E_->F().precision();
    while (!trivial_at(m) && guard-- > 0) ++m;
    while (m > -2 * E_->F().precision() && trivial_at(m - 1)) --m;
    return m;
  }

  const EtaleAlgebra* E_;
  AddCharF base_;
  int conductor_;
};

// ---- multiplicative characters of F^x ------------------------------------

class MultCharF {
public:
  MultCharF() : F_(nullptr), depth_(0), w_(1, 0) {}

  static MultCharF trivial(const PAdicField& F) {
    MultCharF c;
    c.F_ = &F;
    c.depth_ = 0;
    c.w_ = Cplx(1, 0);
    return c;
  }

  // unramified twist: x -> w^{v(x)}
  static MultCharF unramified(const PAdicField& F, Cplx w) {
    MultCharF c = trivial(F);
    c.w_ = w;
    return c;
  }

  // depth-d character sending the fixed primitive root to
  // exp(2 pi i k / phi(p^d)); depth is minimized afterwards
  static MultCharF from_generator(const PAdicField& F, int d, int64_t k, Cplx w) {
    if (d < 0 || d > 4) throw Error("BadDepth", "supported depths are 0..4");
    MultCharF c = trivial(F);
    c.w_ = w;
    if (d == 0) return c;
    uint64_t mod = F.ppow(d);
    uint64_t ord = mod / static_cast<uint64_t>(F.p()) * (static_cast<uint64_t>(F.p()) - 1);
    c.table_.assign(mod, Cplx(0, 0));
    uint64_t g = static_cast<uint64_t>(F.primitive_root()) % mod;
    uint64_t x = 1;
    for (uint64_t j = 0; j < ord; ++j) {
      c.table_[x] = root_of_unity(static_cast<int64_t>((k % static_cast<int64_t>(ord)) *
                                                        static_cast<int64_t>(j % ord) %
                                                        static_cast<int64_t>(ord)),
                                  static_cast<int64_t>(ord));
      x = detail::mulmod(x, g, mod);
    }
    c.depth_ = d;
    c.F_ = &F;
    c.minimize_depth();
    return c;
  }

  // Legendre symbol as the depth-1 quadratic character
  static MultCharF quadratic(const PAdicField& F, Cplx w = Cplx(1, 0)) {
    return from_generator(F, 1, (F.p() - 1) / 2, w);
  }

  static MultCharF from_value_table(const PAdicField& F, int d, Cplx w,
                                    std::vector<Cplx> table) {
    MultCharF c = trivial(F);
    c.w_ = w;
    c.depth_ = d;
    c.table_ = std::move(table);
    c.minimize_depth();
    return c;
  }

  const PAdicField& field() const { return *F_; }
  int depth() const { return depth_; }
  Cplx on_uniformizer() const { return w_; }
  bool is_trivial() const { return depth_ == 0 && std::abs(w_ - Cplx(1, 0)) < 1e-12; }

  Cplx eval(const PAdicNumber& x) const {
    if (x.is_zero()) throw ZeroArgument("character of zero");
    Cplx v = std::pow(w_, static_cast<double>(x.valuation()));
    if (depth_ == 0) return v;
    return v * table_[x.unit_residue(depth_)];
  }

  Cplx on_unit_residue(uint64_t u) const {
    if (depth_ == 0) return Cplx(1, 0);
    return table_[u % F_->ppow(depth_)];
  }

  Cplx at_minus_one() const {
    return eval(PAdicNumber::from_int(*F_, -1));
  }

  MultCharF product(const MultCharF& o) const {
    MultCharF c = *this;
    c.w_ *= o.w_;
    int d = std::max(depth_, o.depth_);
    if (d > 0) {
      uint64_t mod = F_->ppow(d);
      std::vector<Cplx> t(mod, Cplx(0, 0));
      for (uint64_t u = 0; u < mod; ++u) {
        if (u % static_cast<uint64_t>(F_->p()) == 0) continue;
        t[u] = on_unit_residue(u) * o.on_unit_residue(u);
      }
      c.table_ = std::move(t);
      c.depth_ = d;
      c.minimize_depth();
    }
    return c;
  }

  MultCharF inverse() const {
    MultCharF c = *this;
    c.w_ = Cplx(1, 0) / w_;
    for (auto& v : c.table_)
      if (std::abs(v) > 0) v = Cplx(1, 0) / v;
    return c;
  }

  bool values_equal(const MultCharF& o, int samples = 50) const;

private:
  void minimize_depth() {
    while (depth_ >= 1) {
      // reducible to depth-1 iff constant on residues mod p^(depth-1) classes
      uint64_t mod = F_->ppow(depth_);
      uint64_t sub = F_->ppow(depth_ - 1);
      bool constant = true;
      for (uint64_t u = 0; u < mod && constant; ++u) {
        if (u % static_cast<uint64_t>(F_->p()) == 0) continue;
        uint64_t v = (u + sub) % mod;
        if (v % static_cast<uint64_t>(F_->p()) == 0) continue;
        if (std::abs(table_[u] - table_[v]) > 1e-9) constant = false;
      }
      if (!constant) break;
      --depth_;
      if (depth_ == 0) {
        table_.clear();
        break;
      }
      uint64_t nmod = F_->ppow(depth_);
      std::vector<Cplx> t(nmod, Cplx(0, 0));
      for (uint64_t u = 0; u < nmod; ++u) {
        if (u % static_cast<uint64_t>(F_->p()) == 0) continue;
        t[u] = table_[u];
      }
      table_ = std::move(t);
    }
  }

  const PAdicField* F_;
  int depth_;
  Cplx w_;  // value on the uniformizer p
  std::vector<Cplx> table_;  // values on (Z/p^depth)^x, indexed by residue
};

inline bool MultCharF::values_equal(const MultCharF& o, int samples) const {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < samples; ++i) {
    PAdicNumber x = random_padic(*F_, rng);
    if (std::abs(eval(x) - o.eval(x)) > 1e-9) return false;
  }
  return true;
}

// ---- multiplicative characters of E^x -------------------------------------

// Field case: value on pi_E plus a dense table on (O_E/p_E^d)^x.
// Split case: an ordered pair (chi1, chi2) matching tau = chi1 x chi2.
class MultCharE {
public:
  MultCharE() : E_(nullptr) {}

  static MultCharE split_pair(const EtaleAlgebra& E, MultCharF c1, MultCharF c2) {
    if (!E.is_split()) throw Error("BadAlgebra", "split_pair needs split E");
    MultCharE c;
    c.E_ = &E;
    c.c1_ = std::move(c1);
    c.c2_ = std::move(c2);
    return c;
  }

  static MultCharE trivial(const EtaleAlgebra& E) {
    MultCharE c;
    c.E_ = &E;
    if (E.is_split()) {
      c.c1_ = MultCharF::trivial(E.F());
      c.c2_ = MultCharF::trivial(E.F());
    } else {
      c.w_ = Cplx(1, 0);
      c.depth_ = 0;
    }
    return c;
  }

  static MultCharE unramified(const EtaleAlgebra& E, Cplx w) {
    MultCharE c = trivial(E);
    if (E.is_split())
      c.c1_ = MultCharF::unramified(E.F(), w);
    else
      c.w_ = w;
    return c;
  }

  // field case: build from an explicit evaluator on unit residues at depth d
  template <typename Fn>
  static MultCharE from_table(const EtaleAlgebra& E, int d, Cplx w, Fn&& unit_value) {
    if (!E.is_field()) throw Error("BadAlgebra", "from_table needs field E");
    MultCharE c;
    c.E_ = &E;
    c.w_ = w;
    c.depth_ = d;
    if (d > 0)
      for (const EtaleElement& u : etale_unit_residues(E, d))
        c.table_[key(u, d)] = unit_value(u);
    c.minimize_depth();
    return c;
  }

  // chi_F o N as a character of E^x
  static MultCharE norm_pullback(const EtaleAlgebra& E, const MultCharF& chiF);

  const EtaleAlgebra& algebra() const { return *E_; }
  bool is_split() const { return E_->is_split(); }
  const MultCharF& comp1() const { return c1_; }
  const MultCharF& comp2() const { return c2_; }
  int depth() const { return is_split() ? std::max(c1_.depth(), c2_.depth()) : depth_; }

  Cplx eval(const EtaleElement& z) const {
    if (z.is_zero()) throw ZeroArgument("character of zero");
    if (is_split()) {
      if (z.x().is_zero() || z.y().is_zero())
        throw ZeroArgument("split character of a zero divisor");
      return c1_.eval(z.x()) * c2_.eval(z.y());
    }
    int64_t v = z.val_E();
    EtaleElement u = z;
    if (v != 0) {
      EtaleElement pi = E_->uniformizer();
      EtaleElement piinv = pi.inverse();
      for (int64_t i = 0; i < v; ++i) u = u * piinv;
      for (int64_t i = 0; i < -v; ++i) u = u * pi;
    }
    Cplx val = std::pow(w_, static_cast<double>(v));
    if (depth_ == 0) return val;
    auto it = table_.find(key(u, depth_));
    if (it == table_.end()) throw Error("BadResidue", "unit residue missing from table");
    return val * it->second;
  }

  MultCharE product(const MultCharE& o) const {
    if (is_split()) return split_pair(*E_, c1_.product(o.c1_), c2_.product(o.c2_));
    const MultCharE* a = this;
    const MultCharE* b = &o;
    int d = std::max(depth_, o.depth_);
    MultCharE c;
    if (d == 0) {
      c = trivial(*E_);
      c.w_ = w_ * o.w_;
      return c;
    }
    return from_table(*E_, d, w_ * o.w_, [&](const EtaleElement& u) {
      return a->unit_value(u) * b->unit_value(u);
    });
  }

  MultCharE inverse() const {
    if (is_split()) return split_pair(*E_, c1_.inverse(), c2_.inverse());
    if (depth_ == 0) {
      MultCharE c = trivial(*E_);
      c.w_ = Cplx(1, 0) / w_;
      return c;
    }
    const MultCharE* self = this;
    return from_table(*E_, depth_, Cplx(1, 0) / w_, [self](const EtaleElement& u) {
      return Cplx(1, 0) / self->unit_value(u);
    });
  }

  // conjugate-dual: chi*(a) = chi(theta(a))^{-1} (field),
  // (chi1, chi2)* = (chi2^{-1}, chi1^{-1}) (split)
  MultCharE conj_dual() const {
    if (is_split()) return split_pair(*E_, c2_.inverse(), c1_.inverse());
    const MultCharE* self = this;
    Cplx wstar = Cplx(1, 0) / full_eval_unscaled(E_->uniformizer().theta());
    return from_table(*E_, depth_, wstar, [self](const EtaleElement& u) {
      return Cplx(1, 0) / self->unit_value(u.theta());
    });
  }

  // restriction to F^x (the chi_0 of the Godement sections)
  MultCharF restrict_to_F() const;

  // central-character value at -1, and at delta (the omega_tau bookkeeping)
  Cplx at_minus_one() const {
    return eval(E_->from_F(PAdicNumber::from_int(E_->F(), -1)));
  }
  // split convention: omega_tau(delta) = chi2(-1)
  Cplx at_delta() const {
    if (is_split()) return c2_.at_minus_one();
    return eval(E_->delta());
  }

  Cplx unit_value(const EtaleElement& u) const {
    if (depth_ == 0) return Cplx(1, 0);
    auto it = table_.find(key(u, depth_));
    if (it == table_.end()) throw Error("BadResidue", "unit residue missing from table");
    return it->second;
  }

private:
  // evaluated without minimizing anything; helper for conj_dual's w
  Cplx full_eval_unscaled(const EtaleElement& z) const { return eval(z); }

  static std::pair<uint64_t, uint64_t> key(const EtaleElement& u, int d) {
    const EtaleAlgebra& E = u.algebra();
    const PAdicField& F = E.F();
    int dx = E.kind() == EtaleKind::Ramified ? (d + 1) / 2 : d;
    int dy = E.kind() == EtaleKind::Ramified ? d / 2 : d;
    auto comp = [&](const PAdicNumber& c, int digits) -> uint64_t {
      if (digits <= 0 || c.is_zero() || c.valuation() >= digits) return 0;
      if (c.valuation() < 0) throw Error("BadResidue", "negative valuation in unit key");
      uint64_t v = c.unit_residue(digits - static_cast<int>(c.valuation()));
      return v * F.ppow(static_cast<int>(c.valuation())) % F.ppow(digits);
    };
    return {comp(u.x(), dx), comp(u.y(), dy)};
  }

  void minimize_depth() {
    while (depth_ >= 1) {
      bool constant = true;
      std::map<std::pair<uint64_t, uint64_t>, Cplx> coarse;
      for (const EtaleElement& u : etale_unit_residues(*E_, depth_)) {
        Cplx v = table_[key(u, depth_)];
        auto k = key(u, depth_ - 1);
        auto it = coarse.find(k);
        if (it == coarse.end())
          coarse[k] = v;
        else if (std::abs(it->second - v) > 1e-9) {
          constant = false;
          break;
        }
      }
      if (!constant) break;
      --depth_;
      std::map<std::pair<uint64_t, uint64_t>, Cplx> nt;
      if (depth_ > 0)
        for (const EtaleElement& u : etale_unit_residues(*E_, depth_))
          nt[key(u, depth_)] = coarse[key(u, depth_)];
      table_ = std::move(nt);
    }
  }

  const EtaleAlgebra* E_;
  // split components
  MultCharF c1_, c2_;
  // field data
  Cplx w_ = Cplx(1, 0);
  int depth_ = 0;
  std::map<std::pair<uint64_t, uint64_t>, Cplx> table_;
};

// ---- U(1) characters -------------------------------------------------------

// eta_1 on E^1, stored through its pullback eta on E^x with eta|_{F^x} = 1
class U1Char {
public:
  explicit U1Char(MultCharE eta) : eta_(std::move(eta)) {
    const EtaleAlgebra& E = eta_.algebra();
    if (E.is_split()) throw Error("BadAlgebra", "U1Char needs field E");
    const PAdicField& F = E.F();
    // triviality on F^x: on p, on -1 and on unit residues
    auto near_one = [](Cplx v) { return std::abs(v - Cplx(1, 0)) < 1e-9; };
    if (!near_one(eta_.eval(E.from_F(PAdicNumber::from_int(F, F.p())))))
      throw NotTrivialOnF("eta(p) != 1");
    int d = std::max(1, eta_.depth());
    for (uint64_t u = 1; u < F.ppow(std::min(d, 3)); ++u) {
      if (u % static_cast<uint64_t>(F.p()) == 0) continue;
      if (!near_one(eta_.eval(E.from_F(PAdicNumber::from_int(F, static_cast<int64_t>(u))))))
        throw NotTrivialOnF("eta not trivial on F-units");
    }
  }

  const MultCharE& eta() const { return eta_; }
  const EtaleAlgebra& algebra() const { return eta_.algebra(); }

  // eta_1(alpha) for alpha in E^1, through the Hilbert-90 section
  Cplx eval(const EtaleElement& alpha) const {
    return eta_.eval(hilbert90(eta_.algebra(), alpha));
  }

  Cplx at_minus_one() const { return eta_.eval(eta_.algebra().delta()); }

private:
  MultCharE eta_;
};

// ---- derived / auxiliary ---------------------------------------------------

inline int omega_EF(const EtaleAlgebra& E, const PAdicNumber& x) {
  return is_norm(E, x) ? 1 : -1;
}

inline MultCharE MultCharE::norm_pullback(const EtaleAlgebra& E, const MultCharF& chiF) {
  if (E.is_split()) return split_pair(E, chiF, chiF);
  EtaleElement pi = E.uniformizer();
  Cplx w = chiF.eval(pi.norm());
  int d = 2 * std::max(chiF.depth(), 1);
  return from_table(E, d, w, [&](const EtaleElement& u) { return chiF.eval(u.norm()); });
}

// ---- families for the verification grids -----------------------------------

// characters of F^x up to the given depth, unramified twists included
std::vector<MultCharF> f_char_family(const PAdicField& F, int max_depth, size_t max_count);

// characters of E^x (field case) up to the given depth: unramified twists,
// depth-1 residue characters and norm pullbacks
std::vector<MultCharE> e_char_family(const EtaleAlgebra& E, int max_depth, size_t max_count);

// characters of E^1 at level <= 2, built from the finite quotient group and
// returned through their pullbacks to E^x
std::vector<U1Char> u1_char_family(const EtaleAlgebra& E, int max_level, size_t max_count);

inline MultCharF MultCharE::restrict_to_F() const {
  const PAdicField& F = E_->F();
  if (is_split()) return c1_.product(c2_);
  // depth over F: at most the E-depth rescaled by e; probe and build a table
  int dF = std::min(4, std::max(depth_, 1));
  Cplx wF = eval(E_->from_F(PAdicNumber::from_int(F, F.p())));
  const MultCharE* self = this;
  uint64_t mod = F.ppow(dF);
  std::vector<Cplx> t(mod, Cplx(0, 0));
  for (uint64_t u = 1; u < mod; ++u) {
    if (u % static_cast<uint64_t>(F.p()) == 0) continue;
    t[u] = self->eval(E_->from_F(PAdicNumber::from_int(F, static_cast<int64_t>(u))));
  }
  return MultCharF::from_value_table(F, dF, wF, std::move(t));
}

}  // namespace plf
