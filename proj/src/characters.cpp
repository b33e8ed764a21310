#include "plf/characters.hpp"

#include <map>

namespace plf {

std::vector<MultCharF> f_char_family(const PAdicField& F, int max_depth, size_t max_count) {
  std::vector<MultCharF> out;
  std::vector<Cplx> ws = {Cplx(1, 0), Cplx(-1, 0), Cplx(0, 1), root_of_unity(1, 8)};
  for (int d = 0; d <= max_depth && out.size() < max_count; ++d) {
    if (d == 0) {
      for (auto w : ws)
        if (out.size() < max_count) out.push_back(MultCharF::unramified(F, w));
      continue;
    }
    uint64_t ord = F.ppow(d) / static_cast<uint64_t>(F.p()) *
                   (static_cast<uint64_t>(F.p()) - 1);
    for (uint64_t k = 1; k < ord && out.size() < max_count; ++k) {
      MultCharF c = MultCharF::from_generator(F, d, static_cast<int64_t>(k),
                                              ws[k % ws.size()]);
      if (c.depth() != d) continue;  // already listed at a lower depth
      out.push_back(c);
    }
  }
  return out;
}

std::vector<MultCharE> e_char_family(const EtaleAlgebra& E, int max_depth, size_t max_count) {
  const PAdicField& F = E.F();
  std::vector<MultCharE> out;
  out.push_back(MultCharE::trivial(E));
  for (auto w : {Cplx(-1, 0), Cplx(0, 1)})
    if (out.size() < max_count) out.push_back(MultCharE::unramified(E, w));
  if (max_depth >= 1) {
    // depth-1 residue characters: (O_E/p_E)^x is cyclic
    auto units = etale_unit_residues(E, 1);
    // find a generator
    size_t n = units.size();
    auto key1 = [&](const EtaleElement& u) { return unit_residue_key(u, 1); };
    for (const EtaleElement& g : units) {
      std::map<std::pair<uint64_t, uint64_t>, size_t> dlog;
      EtaleElement x = E.one();
      bool gen = true;
      for (size_t j = 0; j < n; ++j) {
        if (!dlog.emplace(key1(x), j).second) {
          gen = false;
          break;
        }
        x = x * g;
      }
      if (!gen) continue;
      for (int64_t k : {1, 2, 3}) {
        if (out.size() >= max_count) break;
        MultCharE c = MultCharE::from_table(
            E, 1, Cplx(0, 1), [&](const EtaleElement& u) {
              return root_of_unity(k * static_cast<int64_t>(dlog.at(key1(u))),
                                   static_cast<int64_t>(n));
            });
        if (c.depth() == 1) out.push_back(c);
      }
      break;
    }
  }
  if (max_depth >= 2) {
    for (auto& chiF : f_char_family(F, 1, 3)) {
      if (out.size() >= max_count) break;
      MultCharE c = MultCharE::norm_pullback(E, chiF);
      out.push_back(c);
    }
  }
  return out;
}

std::vector<U1Char> u1_char_family(const EtaleAlgebra& E, int max_level, size_t max_count) {
  if (!E.is_field()) throw Error("BadAlgebra", "U(1) characters need field E");
  int level = std::min(max_level, 2);
  auto reps = enumerate_E1_cosets(E, level);
  size_t n = reps.size();
  auto key = [&](const EtaleElement& a) { return unit_residue_key(a, level); };
  // dlog table of the coset group (cyclic for level <= 2)
  std::map<std::pair<uint64_t, uint64_t>, size_t> dlog;
  bool found = false;
  for (const EtaleElement& g : reps) {
    dlog.clear();
    EtaleElement x = E.one();
    bool gen = true;
    for (size_t j = 0; j < n; ++j) {
      // reduce x to its canonical representative to keep keys exact
      if (!dlog.emplace(key(x), j).second) {
        gen = false;
        break;
      }
      x = x * g;
    }
    if (gen) {
      found = true;
      break;
    }
  }
  if (!found) throw Error("NonCyclic", "E^1 quotient is not cyclic at this level");

  std::vector<U1Char> out;
  for (size_t j = 0; j < n && out.size() < max_count; ++j) {
    // eta(u) := eta_1(iota(u)); the value on the uniformizer comes from
    // iota(pi_E) (trivial class unramified, the class of -1 ramified)
    EtaleElement piE = E.uniformizer();
    EtaleElement ipi = piE / piE.theta();
    Cplx w = root_of_unity(static_cast<int64_t>(j) *
                               static_cast<int64_t>(dlog.at(key(ipi))),
                           static_cast<int64_t>(n));
    MultCharE eta = MultCharE::from_table(
        E, level, w, [&](const EtaleElement& u) {
          EtaleElement im = u / u.theta();
          return root_of_unity(static_cast<int64_t>(j) *
                                   static_cast<int64_t>(dlog.at(key(im))),
                               static_cast<int64_t>(n));
        });
    out.emplace_back(std::move(eta));
  }
  return out;
}

}  // namespace plf
