#pragma once

// The structural-identity catalog: every displayed conjugation, block
// decomposition, character-invariance and measure statement of the
// multiplicativity arguments, checked exactly on random instances over
// Q(delta) (field semantics) and over paired rationals (split semantics).
// Entries are data-driven; the anchors echo the manifest verbatim.

#include "plf/exact_matrix.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plf {

struct CatalogParams {
  int n = 0, r = 0, k = 0;
  int rp = 0, rpp = 0;  // the (r', r'') splitting where applicable
  std::string str() const;
};

enum class Semantics { Field, Split };

struct CatalogEntry {
  std::string id;
  std::string section;  // base | mult1 | mult2-low | mult2-mid | mult2-high | stability
  std::string anchor;   // the identity, echoed verbatim in reports
  std::function<bool(const CatalogParams&)> applicable;
  std::function<bool(const CatalogParams&, Semantics, std::mt19937_64&)> trial;
  bool field_semantics = true;
  bool split_semantics = true;
};

const std::vector<CatalogEntry>& catalog_entries();

struct EntryReport {
  std::string id;
  std::string anchor;
  std::string section;
  std::string params;
  std::string semantics;
  int trials = 0;
  int failures = 0;
  bool vacuous = false;  // empty parameter space (degenerate blocks)
};

// run one section of the catalog over the given parameter tuples;
// deterministic seeding per (entry, params, semantics, trial index)
std::vector<EntryReport> verify_catalog(const std::string& section,
                                        const std::vector<CatalogParams>& params,
                                        int trials, uint64_t seed);

// exponent e with det(induced map on coordinates) = +- ratio^e; the map and
// the ratio come from the named conjugation case
struct JacobianCase {
  std::string id;
  std::string anchor;
  int expected;  // coefficient of the stated power
};

struct JacobianReport {
  std::string id;
  std::string anchor;
  std::string params;
  std::string semantics;
  int expected;
  int computed;
  bool pass;
};

std::vector<JacobianReport> verify_jacobians(const std::vector<CatalogParams>& params,
                                             uint64_t seed);

}  // namespace plf
