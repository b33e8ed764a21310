#pragma once

// Run configuration: a flat key-value text format with [section] tables.
// One file per run; the report embeds the parsed configuration so runs are
// reproducible from the report alone.

#include "plf/errors.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace plf {

struct CharacterSpec {
  std::string base = "F";           // "F" or "E"
  int depth = 0;
  std::string uniformizer_value;    // "root_of_unity:k/m" or "re,im"
  std::string generator_value;      // "root_of_unity:k/m"
};

struct MatrixTuple {
  int n = 0, r = 0, k = 0;
};

struct RunConfig {
  std::vector<int64_t> primes = {3, 5, 7};
  int precision = 0;  // 0: automatic (largest window up to 24 digits)
  int psi_conductor = 0;
  std::vector<std::string> etale_kinds = {"split", "unramified", "ramified"};
  int char_max_depth = 2;
  int count_f = 20;
  int count_u1 = 4;
  int count_e = 3;
  int phi_basis = 5;
  std::vector<std::string> suites = {"tate",          "lambda",        "intertwine",
                                     "ft-lemmas",     "minimal-field", "minimal-split",
                                     "matrix-catalog", "jacobians"};
  std::vector<MatrixTuple> matrix_tuples = {{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {3, 2, 1},
                                            {1, 2, 0}, {1, 3, 1}, {2, 4, 1}};
  std::vector<std::pair<int, int>> splittings = {{1, 1}, {1, 2}, {2, 1}};
  int matrix_trials = 100;
  int samples = 60;  // pointwise sample count for the transform lemmas
  int pairs_minimal = 10;
  double tol = 1e-9;
  uint64_t seed = 20260810;
  std::string report_path = "report.json";
  std::vector<CharacterSpec> extra_characters;
  std::string manifest_path;  // catalog manifest; empty = use the built-in table

  void validate() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// serialized echo for the report
std::map<std::string, std::string> config_echo(const RunConfig& c);

}  // namespace plf
