#include "plf/etale.hpp"

#include <map>
#include <utility>

namespace plf {

std::pair<uint64_t, uint64_t> unit_residue_key(const EtaleElement& z, int m) {
  const EtaleAlgebra& E = z.algebra();
  const PAdicField& F = E.F();
  auto comp = [&](const PAdicNumber& c, int digits) -> uint64_t {
    if (digits <= 0) return 0;
    if (c.is_zero()) return 0;
    if (c.valuation() >= digits) return 0;
    if (c.valuation() < 0) throw Error("BadKey", "negative valuation in residue key");
    uint64_t u = c.unit_residue(digits - static_cast<int>(c.valuation()));
    return u * F.ppow(static_cast<int>(c.valuation())) % F.ppow(digits);
  };
  if (E.kind() == EtaleKind::Ramified)
    return {comp(z.x(), (m + 1) / 2), comp(z.y(), m / 2)};
  return {comp(z.x(), m), comp(z.y(), m)};
}

std::vector<EtaleElement> etale_residues(const EtaleAlgebra& E, int m) {
  const PAdicField& F = E.F();
  int dx = E.kind() == EtaleKind::Ramified ? (m + 1) / 2 : m;
  int dy = E.kind() == EtaleKind::Ramified ? m / 2 : m;
  std::vector<EtaleElement> out;
  uint64_t nx = F.ppow(dx), ny = F.ppow(dy);
  out.reserve(nx * ny);
  for (uint64_t a = 0; a < nx; ++a)
    for (uint64_t b = 0; b < ny; ++b)
      out.push_back(E.from_ints(static_cast<int64_t>(a), static_cast<int64_t>(b)));
  return out;
}

std::vector<EtaleElement> etale_unit_residues(const EtaleAlgebra& E, int m) {
  const PAdicField& F = E.F();
  std::vector<EtaleElement> out;
  if (E.kind() == EtaleKind::Unramified) {
    uint64_t n = F.ppow(m);
    for (uint64_t a = 0; a < n; ++a)
      for (uint64_t b = 0; b < n; ++b) {
        if (a % F.p() == 0 && b % F.p() == 0) continue;
        out.push_back(E.from_ints(static_cast<int64_t>(a), static_cast<int64_t>(b)));
      }
  } else if (E.kind() == EtaleKind::Ramified) {
    // unit <=> x is a unit of O_F
    uint64_t nx = F.ppow((m + 1) / 2), ny = F.ppow(m / 2);
    for (uint64_t a = 0; a < nx; ++a) {
      if (a % F.p() == 0) continue;
      for (uint64_t b = 0; b < ny; ++b)
        out.push_back(E.from_ints(static_cast<int64_t>(a), static_cast<int64_t>(b)));
    }
  } else {
    uint64_t n = F.ppow(m);
    for (uint64_t a = 0; a < n; ++a) {
      if (a % F.p() == 0) continue;
      for (uint64_t b = 0; b < n; ++b) {
        if (b % F.p() == 0) continue;
        out.push_back(E.from_ints(static_cast<int64_t>(a), static_cast<int64_t>(b)));
      }
    }
  }
  return out;
}

std::vector<EtaleElement> enumerate_E1_cosets_bruteforce(const EtaleAlgebra& E, int m) {
  if (!E.is_field()) throw Error("BadAlgebra", "E^1 enumeration needs a field");
  if (m < 1) throw LevelTooDeep("level must be >= 1");
  if (m > E.F().precision() - 2) throw LevelTooDeep("level exceeds precision window");
  std::map<std::pair<uint64_t, uint64_t>, EtaleElement> seen;
  auto push = [&](const EtaleElement& a) {
    EtaleElement alpha = a / a.theta();
    seen.emplace(unit_residue_key(alpha, m), alpha);
  };
  for (const EtaleElement& u : etale_unit_residues(E, m)) push(u);
  if (E.kind() == EtaleKind::Ramified) {
    // units alone miss the component of -1 = delta/theta(delta)
    for (const EtaleElement& u : etale_unit_residues(E, m)) push(E.delta() * u);
  }
  std::vector<EtaleElement> out;
  out.reserve(seen.size());
  for (auto& kv : seen) out.push_back(kv.second);
  return out;
}

std::vector<EtaleElement> enumerate_E1_cosets(const EtaleAlgebra& E, int m) {
  if (!E.is_field()) throw Error("BadAlgebra", "E^1 enumeration needs a field");
  if (m < 1) throw LevelTooDeep("level must be >= 1");
  if (m > E.F().precision() - 2) throw LevelTooDeep("level exceeds precision window");
  const PAdicField& F = E.F();

  // shallow part: brute force at level min(m, 2)
  int m0 = std::min(m, 2);
  std::vector<EtaleElement> shallow = enumerate_E1_cosets_bruteforce(E, m0);
  if (m == m0) return shallow;

  // 1-unit part: norm-one elements of 1 + p_E^{m0} modulo 1 + p_E^m are
  // exactly 1 + t + s*delta with t = -1 + sqrt(1 + s^2 Delta), s running over
  // the appropriate p-power range
  // s-range: w = t + s*delta must have v_E(w) >= m0 and s determines cosets mod
  // the level-m subgroup
  std::vector<EtaleElement> one_units;
  {
    // v_E(s*delta) >= m0  and distinct mod p_E^m
    int e = E.ramification();
    int vs_min, vs_cnt;
    if (e == 1) {  // v_E(s delta) = v(s)
      vs_min = m0;
      vs_cnt = m - m0;
    } else {  // v_E(s delta) = 2 v(s) + 1
      vs_min = (m0 + 1) / 2;  // smallest v(s) with 2v+1 >= m0... for m0=2: v>=1
      while (2 * vs_min + 1 < m0) ++vs_min;
      int vs_end = vs_min;
      while (2 * vs_end + 1 < m) ++vs_end;
      vs_cnt = vs_end - vs_min;
    }
    uint64_t range = F.ppow(vs_cnt);
    PAdicNumber one = PAdicNumber::from_int(F, 1);
    for (uint64_t sv = 0; sv < range; ++sv) {
      PAdicNumber s = PAdicNumber::from_int(F, static_cast<int64_t>(sv));
      s = s * PAdicNumber::from_unit(F, vs_min, 1);
      PAdicNumber disc = one + s * s * E.Delta();
      PAdicNumber t = sqrt_one_unit(disc) - one;
      one_units.push_back(E.one() + E.make(t, s));
    }
  }

  std::map<std::pair<uint64_t, uint64_t>, EtaleElement> seen;
  for (const EtaleElement& a : shallow)
    for (const EtaleElement& w : one_units) {
      EtaleElement z = a * w;
      seen.emplace(unit_residue_key(z, m), z);
    }
  std::vector<EtaleElement> out;
  out.reserve(seen.size());
  for (auto& kv : seen) out.push_back(kv.second);
  return out;
}

}  // namespace plf
