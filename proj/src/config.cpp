#include "plf/config.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace plf {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

int64_t to_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected an integer for " + what + ", got '" + s + "'");
  }
}

double to_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number for " + what + ", got '" + s + "'");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line, section;
  std::map<std::string, std::map<std::string, std::string>> table;
  std::vector<CharacterSpec> chars;
  CharacterSpec* current_char = nullptr;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      if (section == "character") {
        chars.emplace_back();
        current_char = &chars.back();
      } else {
        current_char = nullptr;
      }
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
    if (current_char) {
      if (key == "base")
        current_char->base = val;
      else if (key == "depth")
        current_char->depth = static_cast<int>(to_int(val, "character depth"));
      else if (key == "uniformizer_value")
        current_char->uniformizer_value = val;
      else if (key == "generator_value")
        current_char->generator_value = val;
      else
        throw ConfigError("unknown character key '" + key + "'");
      continue;
    }
    table[section][key] = val;
  }

  auto get = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    auto si = table.find(sec);
    if (si == table.end()) return std::nullopt;
    auto ki = si->second.find(key);
    if (ki == si->second.end()) return std::nullopt;
    return ki->second;
  };

  if (auto v = get("field", "p")) {
    c.primes.clear();
    for (auto& s : split_list(*v)) c.primes.push_back(to_int(s, "p"));
  }
  if (auto v = get("field", "precision")) c.precision = static_cast<int>(to_int(*v, "precision"));
  if (auto v = get("psi", "conductor_exponent"))
    c.psi_conductor = static_cast<int>(to_int(*v, "conductor_exponent"));
  if (auto v = get("etale", "kinds")) c.etale_kinds = split_list(*v);
  if (auto v = get("characters", "max_depth"))
    c.char_max_depth = static_cast<int>(to_int(*v, "max_depth"));
  if (auto v = get("characters", "count_f")) c.count_f = static_cast<int>(to_int(*v, "count_f"));
  if (auto v = get("characters", "count_e")) c.count_e = static_cast<int>(to_int(*v, "count_e"));
  if (auto v = get("characters", "count_u1"))
    c.count_u1 = static_cast<int>(to_int(*v, "count_u1"));
  if (auto v = get("schwartz", "basis")) c.phi_basis = static_cast<int>(to_int(*v, "basis"));
  if (auto v = get("suites", "run")) c.suites = split_list(*v);
  if (auto v = get("matrix", "tuples")) {
    c.matrix_tuples.clear();
    for (auto& tup : split_list(*v, ';')) {
      auto parts = split_list(tup, ' ');
      if (parts.size() != 3) throw ConfigError("matrix tuple needs three entries: " + tup);
      c.matrix_tuples.push_back({static_cast<int>(to_int(parts[0], "n")),
                                 static_cast<int>(to_int(parts[1], "r")),
                                 static_cast<int>(to_int(parts[2], "k"))});
    }
  }
  if (auto v = get("matrix", "splittings")) {
    c.splittings.clear();
    for (auto& tup : split_list(*v, ';')) {
      auto parts = split_list(tup, ' ');
      if (parts.size() != 2) throw ConfigError("splitting needs two entries: " + tup);
      c.splittings.push_back({static_cast<int>(to_int(parts[0], "r'")),
                              static_cast<int>(to_int(parts[1], "r''"))});
    }
  }
  if (auto v = get("matrix", "trials")) c.matrix_trials = static_cast<int>(to_int(*v, "trials"));
  if (auto v = get("matrix", "manifest")) c.manifest_path = *v;
  if (auto v = get("run", "samples")) c.samples = static_cast<int>(to_int(*v, "samples"));
  if (auto v = get("run", "pairs")) c.pairs_minimal = static_cast<int>(to_int(*v, "pairs"));
  if (auto v = get("run", "tol")) c.tol = to_double(*v, "tol");
  if (auto v = get("run", "seed")) c.seed = static_cast<uint64_t>(to_int(*v, "seed"));
  if (auto v = get("run", "report")) c.report_path = *v;
  c.extra_characters = std::move(chars);
  c.validate();
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void RunConfig::validate() const {
  if (primes.empty()) throw ConfigError("at least one prime is required");
  for (int64_t p : primes) {
    if (p < 3 || p % 2 == 0) throw ConfigError("NonOddPrime: p = " + std::to_string(p));
    bool prime = p >= 2;
    for (int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) prime = false;
    if (!prime) throw ConfigError("NonOddPrime: p = " + std::to_string(p));
  }
  if (precision != 0 && precision < 6) throw ConfigError("PrecisionTooSmall");
  if (tol < 1e-12 || tol > 1e-6) throw ConfigError("tol must lie in [1e-12, 1e-6]");
  static const std::set<std::string> known = {"tate",          "lambda",        "intertwine",
                                             "ft-lemmas",     "minimal-field", "minimal-split",
                                             "matrix-catalog", "jacobians"};
  for (auto& s : suites)
    if (!known.count(s)) throw ConfigError("unknown suite '" + s + "'");
  for (auto& k : etale_kinds)
    if (k != "split" && k != "unramified" && k != "ramified")
      throw ConfigError("unknown etale kind '" + k + "'");
  if (char_max_depth < 0 || char_max_depth > 4)
    throw ConfigError("character depths are supported up to 4");
}

std::map<std::string, std::string> config_echo(const RunConfig& c) {
  std::map<std::string, std::string> m;
  auto join = [](auto&& v, auto&& fmt) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ",";
      s += fmt(v[i]);
    }
    return s;
  };
  m["field.p"] = join(c.primes, [](int64_t p) { return std::to_string(p); });
  m["field.precision"] = std::to_string(c.precision);
  m["psi.conductor_exponent"] = std::to_string(c.psi_conductor);
  m["etale.kinds"] = join(c.etale_kinds, [](const std::string& s) { return s; });
  m["characters.max_depth"] = std::to_string(c.char_max_depth);
  m["characters.count_f"] = std::to_string(c.count_f);
  m["characters.count_e"] = std::to_string(c.count_e);
  m["characters.count_u1"] = std::to_string(c.count_u1);
  m["schwartz.basis"] = std::to_string(c.phi_basis);
  m["suites.run"] = join(c.suites, [](const std::string& s) { return s; });
  m["matrix.tuples"] = join(c.matrix_tuples, [](const MatrixTuple& t) {
    return std::to_string(t.n) + " " + std::to_string(t.r) + " " + std::to_string(t.k);
  });
  m["matrix.splittings"] = join(c.splittings, [](const std::pair<int, int>& t) {
    return std::to_string(t.first) + " " + std::to_string(t.second);
  });
  m["matrix.trials"] = std::to_string(c.matrix_trials);
  m["run.samples"] = std::to_string(c.samples);
  m["run.pairs"] = std::to_string(c.pairs_minimal);
  {
    char buf[32];
    snprintf(buf, sizeof buf, "%.3g", c.tol);
    m["run.tol"] = buf;
  }
  m["run.seed"] = std::to_string(c.seed);
  return m;
}

}  // namespace plf
