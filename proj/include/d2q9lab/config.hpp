#ifndef D2Q9LAB_CONFIG_HPP_
#define D2Q9LAB_CONFIG_HPP_

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "d2q9lab/errors.hpp"
#include "d2q9lab/experiments.hpp"

namespace d2q9lab {

/// Meshes above this size only run with the long-run flag.
inline constexpr int kDefaultMeshCap = 512;

/// A study plus output settings, as read from a configuration file.
struct RunConfig {
  StudyConfig study;
  std::vector<int> long_meshes;  ///< appended to study.meshes when long_run is set
  bool long_run = false;
  std::string output_dir = "out";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// The study actually executed: long meshes appended when requested.
inline StudyConfig effective_study(const RunConfig& rc) {
  StudyConfig s = rc.study;
  if (rc.long_run) s.meshes.insert(s.meshes.end(), rc.long_meshes.begin(), rc.long_meshes.end());
  return s;
}

namespace config_detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> parse_plain(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

/// Accepts "0.5", "1/18", "2pi", "pi".
inline std::optional<double> parse_number(std::string_view text) {
  std::string s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    auto num = parse_number(s.substr(0, slash));
    auto den = parse_number(s.substr(slash + 1));
    if (!num || !den || *den == 0.0) return std::nullopt;
    return *num / *den;
  }
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    const std::string head = trim(std::string_view(s).substr(0, s.size() - 2));
    if (head.empty()) return std::numbers::pi;
    auto c = parse_plain(head);
    if (!c) return std::nullopt;
    return *c * std::numbers::pi;
  }
  return parse_plain(s);
}

inline std::optional<int> parse_int(std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<std::vector<int>> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (trim(text).empty()) return out;
  for (const auto& tok : split(text, ',')) {
    auto v = parse_int(tok);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

inline std::optional<bool> parse_bool(std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  return std::nullopt;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

struct Entry {
  std::string value;
  int line;
};

inline const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"experiment", {"name", "meshes", "long_meshes", "long", "final_time", "lbm_steps"}},
      {"scaling", {"kind", "lambda", "kappa", "s_J"}},
      {"scheme", {"alpha", "beta", "s_e", "s_x", "s_q", "s_eps"}},
      {"domain", {"lo", "hi"}},
      {"initial", {"kind", "width", "kx", "ky"}},
      {"solvers", {"pairs", "fd_policy", "fd_steps", "fd_safety", "haway_policy", "haway_safety"}},
      {"output", {"dir"}},
  };
  return s;
}

}  // namespace config_detail

/// Parses the sectioned "key = value" format and validates the whole configuration.
/// Throws ConfigError listing every violation with its line number.
inline RunConfig parse_config(std::string_view text) {
  using namespace config_detail;
  std::vector<std::string> errors;
  std::map<std::string, Entry> entries;  // "section.key"
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        errors.push_back(where + "malformed section header '" + line + "'");
        continue;
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!schema().contains(section)) errors.push_back(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) {
      errors.push_back(where + "key '" + key + "' outside any section");
      continue;
    }
    auto sec = schema().find(section);
    if (sec == schema().end()) continue;  // already reported
    if (!sec->second.contains(key)) {
      errors.push_back(where + "unknown key '" + key + "' in [" + section + "]");
      continue;
    }
    const std::string full = section + "." + key;
    if (auto prev = entries.find(full); prev != entries.end()) {
      errors.push_back(where + "duplicate key '" + full + "' (first set on line " + std::to_string(prev->second.line) +
                       ")");
      continue;
    }
    entries[full] = {value, line_no};
  }

  RunConfig rc;
  StudyConfig& st = rc.study;
  auto at = [&](const std::string& key) { return "line " + std::to_string(entries.at(key).line) + ": " + key; };
  auto has = [&](const std::string& key) { return entries.contains(key); };
  auto require = [&](const std::string& key) {
    if (!has(key)) errors.push_back("missing required key '" + key + "'");
    return has(key);
  };
  auto number = [&](const std::string& key, double& dst) {
    if (!has(key)) return false;
    auto v = parse_number(entries.at(key).value);
    if (!v) {
      errors.push_back(at(key) + " is not a number: '" + entries.at(key).value + "'");
      return false;
    }
    dst = *v;
    return true;
  };
  auto int_list = [&](const std::string& key, std::vector<int>& dst) {
    if (!has(key)) return false;
    auto v = parse_int_list(entries.at(key).value);
    if (!v) {
      errors.push_back(at(key) + " is not a comma-separated integer list");
      return false;
    }
    dst = *v;
    return true;
  };
  auto in_range = [&](const std::string& key, double v, double lo, double hi, bool lo_open, bool hi_open) {
    const bool ok = (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    if (!ok)
      errors.push_back(at(key) + " = " + format_double(v) + " outside " + (lo_open ? "(" : "[") + format_double(lo) +
                       ", " + format_double(hi) + (hi_open ? ")" : "]"));
  };

  // [experiment]
  if (require("experiment.name")) st.name = entries.at("experiment.name").value;
  if (require("experiment.meshes") && int_list("experiment.meshes", st.meshes)) {
    if (st.meshes.empty()) errors.push_back(at("experiment.meshes") + " is empty");
    for (std::size_t i = 0; i < st.meshes.size(); ++i) {
      if (st.meshes[i] < 3) errors.push_back(at("experiment.meshes") + " has a mesh smaller than 3");
      if (i && st.meshes[i] <= st.meshes[i - 1]) errors.push_back(at("experiment.meshes") + " must be strictly increasing");
    }
  }
  if (int_list("experiment.long_meshes", rc.long_meshes)) {
    const int last = st.meshes.empty() ? 0 : st.meshes.back();
    for (std::size_t i = 0; i < rc.long_meshes.size(); ++i)
      if (rc.long_meshes[i] <= (i ? rc.long_meshes[i - 1] : last))
        errors.push_back(at("experiment.long_meshes") + " must continue the mesh sequence increasingly");
  }
  if (has("experiment.long")) {
    auto b = parse_bool(entries.at("experiment.long").value);
    if (!b) errors.push_back(at("experiment.long") + " must be true or false");
    else rc.long_run = *b;
  }
  const bool has_time = has("experiment.final_time"), has_steps = has("experiment.lbm_steps");
  if (has_time == has_steps) errors.push_back("exactly one of 'experiment.final_time' or 'experiment.lbm_steps' is required");
  double tf = 0.0;
  if (number("experiment.final_time", tf)) {
    st.final_time = tf;
    in_range("experiment.final_time", tf, 0.0, HUGE_VAL, true, true);
  }
  if (int_list("experiment.lbm_steps", st.lbm_steps)) {
    if (st.lbm_steps.size() != st.meshes.size())
      errors.push_back(at("experiment.lbm_steps") + " needs one entry per mesh");
    for (int s : st.lbm_steps)
      if (s < 1) errors.push_back(at("experiment.lbm_steps") + " entries must be positive");
    if (!rc.long_meshes.empty()) errors.push_back(at("experiment.lbm_steps") + " cannot be combined with long_meshes");
  }

  // [scaling]
  if (require("scaling.kind")) {
    auto k = parse_scaling_kind(entries.at("scaling.kind").value);
    if (!k) errors.push_back(at("scaling.kind") + " must be 'acoustic' or 'diffusive'");
    else st.scaling = *k;
  }
  if (require("scaling.lambda") && number("scaling.lambda", st.lambda))
    in_range("scaling.lambda", st.lambda, 0.0, HUGE_VAL, true, true);
  double tmp = 0.0;
  const bool has_kappa = has("scaling.kappa"), has_sj = has("scaling.s_J");
  if (has_kappa == has_sj) errors.push_back("exactly one of 'scaling.kappa' or 'scaling.s_J' is required");
  if (number("scaling.kappa", tmp)) {
    st.kappa = tmp;
    in_range("scaling.kappa", tmp, 0.0, HUGE_VAL, true, true);
  }
  if (number("scaling.s_J", tmp)) {
    st.s_j = tmp;
    in_range("scaling.s_J", tmp, 0.0, 2.0, true, true);
  }

  // [scheme]
  if (number("scheme.alpha", st.alpha)) in_range("scheme.alpha", st.alpha, -4.0, 2.0, true, true);
  number("scheme.beta", st.beta);
  for (auto [key, dst] : {std::pair{"scheme.s_e", &st.s_e}, std::pair{"scheme.s_x", &st.s_x},
                          std::pair{"scheme.s_q", &st.s_q}, std::pair{"scheme.s_eps", &st.s_eps}})
    if (number(key, *dst)) in_range(key, *dst, 0.0, 2.0, true, false);

  // [domain]
  number("domain.lo", st.domain_lo);
  number("domain.hi", st.domain_hi);
  if (!(st.domain_hi > st.domain_lo)) errors.push_back("domain: 'hi' must exceed 'lo'");

  // [initial]
  if (has("initial.kind")) {
    auto k = parse_initial_kind(entries.at("initial.kind").value);
    if (!k) errors.push_back(at("initial.kind") + " must be 'gaussian' or 'plane_wave'");
    else st.initial = *k;
  }
  if (number("initial.width", st.gaussian_width)) in_range("initial.width", st.gaussian_width, 0.0, HUGE_VAL, true, true);
  number("initial.kx", st.wave.kx);
  number("initial.ky", st.wave.ky);
  if (st.initial == InitialKind::PlaneWave) {
    if (!has("initial.kx") || !has("initial.ky")) errors.push_back("plane_wave initial condition needs 'kx' and 'ky'");
    else if (st.domain_hi > st.domain_lo) {
      try {
        PlaneWave(st.wave, st.domain_hi - st.domain_lo, st.domain_hi - st.domain_lo);
      } catch (const ParameterError& e) {
        errors.push_back(at("initial.kx") + ": " + e.what());
      }
    }
  }

  // [solvers]
  if (require("solvers.pairs")) {
    st.pairs.clear();
    for (const auto& tok : split(entries.at("solvers.pairs").value, ',')) {
      const auto parts = split(tok, ':');
      std::optional<SolverKind> a, b;
      if (parts.size() == 2) {
        a = parse_solver_kind(parts[0]);
        b = parse_solver_kind(parts[1]);
      }
      if (!a || !b) {
        errors.push_back(at("solvers.pairs") + " has malformed pair '" + tok + "' (expected solver:solver)");
        continue;
      }
      if ((*a == SolverKind::ExactWave || *b == SolverKind::ExactWave) && st.initial != InitialKind::PlaneWave)
        errors.push_back(at("solvers.pairs") + ": exact_wave needs a plane_wave initial condition");
      st.pairs.emplace_back(*a, *b);
    }
    if (st.pairs.empty()) errors.push_back(at("solvers.pairs") + " is empty");
  }
  if (has("solvers.fd_policy")) {
    auto p = parse_fd_policy(entries.at("solvers.fd_policy").value);
    if (!p) errors.push_back(at("solvers.fd_policy") + " must be match_lbm, stable or explicit");
    else st.fd_policy = *p;
  }
  int_list("solvers.fd_steps", st.fd_steps);
  if (st.fd_policy == FdStepPolicy::Explicit) {
    if (st.fd_steps.size() != st.meshes.size())
      errors.push_back("solvers.fd_steps needs one entry per mesh when fd_policy = explicit");
    if (!rc.long_meshes.empty()) errors.push_back("fd_policy = explicit cannot be combined with long_meshes");
  }
  for (int s : st.fd_steps)
    if (s < 1) errors.push_back(at("solvers.fd_steps") + " entries must be positive");
  if (number("solvers.fd_safety", st.fd_safety)) in_range("solvers.fd_safety", st.fd_safety, 0.0, 1.0, true, false);
  if (has("solvers.haway_policy")) {
    auto p = parse_haway_policy(entries.at("solvers.haway_policy").value);
    if (!p) errors.push_back(at("solvers.haway_policy") + " must be quarter_lbm or cfl");
    else st.haway_policy = *p;
  }
  if (number("solvers.haway_safety", st.haway_safety))
    in_range("solvers.haway_safety", st.haway_safety, 0.0, 1.0, true, false);

  // [output]
  if (has("output.dir")) rc.output_dir = entries.at("output.dir").value;

  // cross-checks needing a resolved plan
  if (errors.empty()) {
    const StudyConfig eff = effective_study(rc);
    for (int n : eff.meshes)
      if (n > kDefaultMeshCap && !rc.long_run)
        errors.push_back("mesh " + std::to_string(n) + " exceeds " + std::to_string(kDefaultMeshCap) +
                         " cells per side; enable the long-run flag");
    for (std::size_t i = 0; i < eff.meshes.size(); ++i) {
      try {
        plan_for_mesh(eff, i);
      } catch (const std::exception& e) {
        errors.push_back("mesh " + std::to_string(eff.meshes[i]) + ": " + e.what());
      }
    }
  }

  if (!errors.empty()) throw ConfigError(std::move(errors));
  return rc;
}

/// Writes every field so that parse_config(serialize_config(c)) == c.
inline std::string serialize_config(const RunConfig& rc) {
  using config_detail::format_double;
  using config_detail::format_list;
  const StudyConfig& st = rc.study;
  std::ostringstream o;
  o << "[experiment]\n";
  o << "name = " << st.name << "\n";
  o << "meshes = " << format_list(st.meshes) << "\n";
  if (!rc.long_meshes.empty()) o << "long_meshes = " << format_list(rc.long_meshes) << "\n";
  o << "long = " << (rc.long_run ? "true" : "false") << "\n";
  if (st.final_time) o << "final_time = " << format_double(*st.final_time) << "\n";
  if (!st.lbm_steps.empty()) o << "lbm_steps = " << format_list(st.lbm_steps) << "\n";
  o << "\n[scaling]\n";
  o << "kind = " << to_string(st.scaling) << "\n";
  o << "lambda = " << format_double(st.lambda) << "\n";
  if (st.kappa) o << "kappa = " << format_double(*st.kappa) << "\n";
  if (st.s_j) o << "s_J = " << format_double(*st.s_j) << "\n";
  o << "\n[scheme]\n";
  o << "alpha = " << format_double(st.alpha) << "\n";
  o << "beta = " << format_double(st.beta) << "\n";
  o << "s_e = " << format_double(st.s_e) << "\n";
  o << "s_x = " << format_double(st.s_x) << "\n";
  o << "s_q = " << format_double(st.s_q) << "\n";
  o << "s_eps = " << format_double(st.s_eps) << "\n";
  o << "\n[domain]\n";
  o << "lo = " << format_double(st.domain_lo) << "\n";
  o << "hi = " << format_double(st.domain_hi) << "\n";
  o << "\n[initial]\n";
  o << "kind = " << to_string(st.initial) << "\n";
  o << "width = " << format_double(st.gaussian_width) << "\n";
  o << "kx = " << format_double(st.wave.kx) << "\n";
  o << "ky = " << format_double(st.wave.ky) << "\n";
  o << "\n[solvers]\n";
  o << "pairs = ";
  for (std::size_t i = 0; i < st.pairs.size(); ++i)
    o << (i ? ", " : "") << to_string(st.pairs[i].first) << ":" << to_string(st.pairs[i].second);
  o << "\n";
  o << "fd_policy = " << to_string(st.fd_policy) << "\n";
  if (!st.fd_steps.empty()) o << "fd_steps = " << format_list(st.fd_steps) << "\n";
  o << "fd_safety = " << format_double(st.fd_safety) << "\n";
  o << "haway_policy = " << to_string(st.haway_policy) << "\n";
  o << "haway_safety = " << format_double(st.haway_safety) << "\n";
  o << "\n[output]\n";
  o << "dir = " << rc.output_dir << "\n";
  return o.str();
}

}  // namespace d2q9lab

#endif  // D2Q9LAB_CONFIG_HPP_
