#include "qsl/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace qsl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',' || c == ';') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
  if (pos != value.size())
    throw ConfigError(key + ": trailing characters in '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

TargetSpec parse_target(const std::string& value) {
  if (value == "ghz") return {TargetKind::Ghz, 1};
  if (value == "w") return {TargetKind::W, 1};
  if (value == "ame52") return {TargetKind::Ame52, 1};
  if (value.rfind("dicke:", 0) == 0) {
    TargetSpec t{TargetKind::Dicke, 0};
    t.dicke_k = static_cast<int>(parse_long("target", value.substr(6)));
    return t;
  }
  throw ConfigError("target: expected ghz | w | dicke:<k> | ame52, got '" +
                    value + "'");
}

InteractionGraph parse_graph(const std::string& value, int n_sites) {
  if (value == "complete") return InteractionGraph::complete(n_sites);
  if (value == "chain") return InteractionGraph::chain(n_sites);
  if (value.rfind("ring:", 0) == 0) {
    const int range = static_cast<int>(parse_long("graph", value.substr(5)));
    return InteractionGraph::ring(n_sites, range);
  }
  throw ConfigError("graph: expected complete | chain | ring:<range>, got '" +
                    value + "'");
}

/// "(2,4)(3,5)" with 1-based site labels.
std::vector<Edge> parse_swap_list(const std::string& value) {
  std::vector<Edge> swaps;
  std::size_t i = 0;
  while (i < value.size()) {
    if (value[i] != '(')
      throw ConfigError("symmetry: expected '(' in swap list '" + value + "'");
    const auto close = value.find(')', i);
    if (close == std::string::npos)
      throw ConfigError("symmetry: unbalanced parentheses in '" + value + "'");
    const std::string body = value.substr(i + 1, close - i - 1);
    const auto comma = body.find(',');
    if (comma == std::string::npos)
      throw ConfigError("symmetry: expected '(a,b)' pairs in '" + value + "'");
    const long a = parse_long("symmetry", trim(body.substr(0, comma)));
    const long b = parse_long("symmetry", trim(body.substr(comma + 1)));
    if (a < 1 || b < 1)
      throw ConfigError("symmetry: site labels are 1-based");
    swaps.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    i = close + 1;
  }
  if (swaps.empty())
    throw ConfigError("symmetry: empty swap list");
  return swaps;
}

SymmetryClass parse_symmetry(const std::string& value) {
  if (value == "full_permutation") return SymmetryClass::full_permutation();
  if (value == "unconstrained") return SymmetryClass::unconstrained();
  if (value == "three_body_diagonal") return SymmetryClass::three_body_diagonal();
  if (value.rfind("pair_swaps:", 0) == 0)
    return SymmetryClass::pair_swap_product(parse_swap_list(value.substr(11)));
  throw ConfigError(
      "symmetry: expected full_permutation | pair_swaps:(a,b)... | "
      "unconstrained | three_body_diagonal, got '" +
      value + "'");
}

std::vector<GridSegment> parse_segments(const std::string& value) {
  std::vector<GridSegment> segments;
  for (const auto& token : split_list(value)) {
    const auto c1 = token.find(':');
    const auto c2 = token.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ConfigError("time.segments: expected start:end:dt, got '" + token + "'");
    GridSegment seg{};
    seg.start = parse_double("time.segments", token.substr(0, c1));
    seg.end = parse_double("time.segments", token.substr(c1 + 1, c2 - c1 - 1));
    seg.dt = parse_double("time.segments", token.substr(c2 + 1));
    segments.push_back(seg);
  }
  if (segments.empty()) throw ConfigError("time.segments: empty grid");
  return segments;
}

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": duplicate key '" + key + "'");
    entries.emplace_back(key, value);
  }

  static const std::vector<std::string> known = {
      "target", "n_sites", "graph", "symmetry", "symmetric_couplings",
      "time.segments", "time.allow_wide_steps",
      "optimizer.restarts", "optimizer.seed", "optimizer.sample_box",
      "optimizer.step_tolerance", "optimizer.objective_tolerance",
      "optimizer.max_evaluations", "optimizer.method", "optimizer.warm_start",
      "optimizer.refine", "optimizer.refine_threshold",
      "optimizer.refine_min_dt", "optimizer.refine_max_halvings",
      "optimizer.threads", "report.epsilon", "report.threshold"};
  for (const auto& [key, value] : kv)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(origin + ": unknown key '" + key + "'");

  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto require = [&](const std::string& key) -> std::string {
    const auto v = get(key);
    if (!v) throw ConfigError(origin + ": missing required key '" + key + "'");
    return *v;
  };

  RunConfig rc;
  rc.entries = std::move(entries);
  OptimizeConfig& opt = rc.opt;

  opt.target = parse_target(require("target"));
  opt.n_sites = static_cast<int>(parse_long("n_sites", require("n_sites")));
  opt.graph = parse_graph(get("graph").value_or("complete"), opt.n_sites);
  opt.symmetry = parse_symmetry(get("symmetry").value_or("full_permutation"));
  if (auto v = get("symmetric_couplings"))
    opt.symmetric_couplings = parse_bool("symmetric_couplings", *v);
  opt.grid = parse_segments(require("time.segments"));
  if (auto v = get("time.allow_wide_steps"))
    opt.allow_wide_steps = parse_bool("time.allow_wide_steps", *v);
  if (auto v = get("optimizer.restarts"))
    opt.restarts = static_cast<int>(parse_long("optimizer.restarts", *v));
  if (auto v = get("optimizer.seed")) opt.seed = parse_seed("optimizer.seed", *v);
  if (auto v = get("optimizer.sample_box"))
    opt.sample_box = parse_double("optimizer.sample_box", *v);
  if (auto v = get("optimizer.step_tolerance"))
    opt.step_tolerance = parse_double("optimizer.step_tolerance", *v);
  if (auto v = get("optimizer.objective_tolerance"))
    opt.objective_tolerance = parse_double("optimizer.objective_tolerance", *v);
  if (auto v = get("optimizer.max_evaluations"))
    opt.max_evaluations = parse_long("optimizer.max_evaluations", *v);
  if (auto v = get("optimizer.method")) {
    if (*v == "nelder_mead") opt.method = LocalMethod::NelderMead;
    else if (*v == "quasi_newton") opt.method = LocalMethod::QuasiNewton;
    else throw ConfigError("optimizer.method: expected nelder_mead | quasi_newton");
  }
  if (auto v = get("optimizer.warm_start"))
    opt.warm_start = parse_bool("optimizer.warm_start", *v);
  if (auto v = get("optimizer.refine")) opt.refine = parse_bool("optimizer.refine", *v);
  if (auto v = get("optimizer.refine_threshold"))
    opt.refine_threshold = parse_double("optimizer.refine_threshold", *v);
  if (auto v = get("optimizer.refine_min_dt"))
    opt.refine_min_dt = parse_double("optimizer.refine_min_dt", *v);
  if (auto v = get("optimizer.refine_max_halvings"))
    opt.refine_max_halvings =
        static_cast<int>(parse_long("optimizer.refine_max_halvings", *v));
  if (auto v = get("optimizer.threads"))
    opt.threads = static_cast<int>(parse_long("optimizer.threads", *v));
  if (auto v = get("report.epsilon")) opt.epsilon = parse_double("report.epsilon", *v);
  if (auto v = get("report.threshold"))
    rc.threshold = parse_double("report.threshold", *v);
  if (!(rc.threshold > 0.0 && rc.threshold < 1.0))
    throw ConfigError("report.threshold must lie in (0, 1)");

  try {
    opt.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return rc;
}

RunConfig parse_run_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_run_config(in, path);
}

std::string describe_run_config_schema() {
  return
      "target = ghz | w | dicke:<k> | ame52        (required)\n"
      "n_sites = <int 2..7>                        (required)\n"
      "graph = complete | chain | ring:<range>     (default complete)\n"
      "symmetry = full_permutation | pair_swaps:(a,b)(c,d)... | unconstrained\n"
      "           | three_body_diagonal            (default full_permutation;\n"
      "                                             site labels 1-based)\n"
      "symmetric_couplings = true | false          (default false)\n"
      "time.segments = start:end:dt [start:end:dt ...]   (required)\n"
      "time.allow_wide_steps = true | false        (default false)\n"
      "optimizer.restarts = <int >= 1>             (default 200)\n"
      "optimizer.seed = <uint64>                   (default 0)\n"
      "optimizer.sample_box = <double > 0>         (default 1.0)\n"
      "optimizer.step_tolerance = <double > 0>     (default 1e-10)\n"
      "optimizer.objective_tolerance = <double>    (default 1e-12)\n"
      "optimizer.max_evaluations = <long>          (default 0 = auto)\n"
      "optimizer.method = nelder_mead | quasi_newton   (default nelder_mead)\n"
      "optimizer.warm_start = true | false         (default true)\n"
      "optimizer.refine = true | false             (default true)\n"
      "optimizer.refine_threshold = <double>       (default 0.05)\n"
      "optimizer.refine_min_dt = <double>          (default 1e-4)\n"
      "optimizer.refine_max_halvings = <int>       (default 3)\n"
      "optimizer.threads = <int, 0 = all cores>    (default 0)\n"
      "report.epsilon = <double > 0>               (default 1e-6)\n"
      "report.threshold = <double in (0,1)>        (default 0.99)\n";
}

}  // namespace qsl
