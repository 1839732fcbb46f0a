#include "scenet/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "scenet/errors.hpp"

namespace scenet {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + v);
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long l = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return l;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + v);
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ConfigError("bad unsigned value for '" + key + "': " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("bad boolean value for '" + key + "': " + v);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << fmt(v[i]);
  }
  return os.str();
}

}  // namespace

void RunConfig::validate() const {
  if (algorithm != "primal_dual" && algorithm != "rand_proj")
    throw ConfigError("unknown algorithm: " + algorithm);
  if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
  if (graph_kind != "ring_random" && graph_kind != "ring" && graph_kind != "complete" &&
      graph_kind != "file")
    throw ConfigError("unknown graph kind: " + graph_kind);
  if (graph_kind == "file" && topology_path.empty())
    throw ConfigError("graph kind 'file' needs a topology path");
  if (graph_kind != "file" && m < 1) throw ConfigError("node count must be >= 1");
  if (!(activation_prob > 0.0 && activation_prob <= 1.0))
    throw ConfigError("activation probability must lie in (0,1]");
  if (problem_kind != "halfspaces" && problem_kind != "ident")
    throw ConfigError("unknown problem kind: " + problem_kind);
  if (problem_kind == "halfspaces" && dim < 1) throw ConfigError("dimension must be >= 1");
  if (problem_kind == "ident") {
    if (u.empty() || u.size() != y.size())
      throw ConfigError("ident problem needs matching nonempty u and y");
    if (rho_uncertainty < 0.0) throw ConfigError("uncertainty radius must be nonnegative");
  }
  if (samples_per_node < 1) throw ConfigError("samples per node must be >= 1");
  if (box_half_width <= 0.0) throw ConfigError("box half-width must be positive");
  if (zeta0 <= 0.0) throw ConfigError("zeta0 must be positive");
  if (!(exponent > 0.5 && exponent <= 1.0))
    throw ConfigError("stepsize exponent must lie in (1/2, 1]");
  if (rho <= 0.0) throw ConfigError("penalty weight must be positive");
  if (!(beta > 0.0 && beta < 2.0)) throw ConfigError("beta must lie in (0,2)");
  if (algorithm == "primal_dual" && directed)
    throw ConfigError("primal_dual requires an undirected topology");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;

    if (full == "run.algorithm") cfg.algorithm = value;
    else if (full == "run.max_rounds") cfg.max_rounds = to_long(full, value);
    else if (full == "run.seed") cfg.seed = to_u64(full, value);
    else if (full == "run.consensus_tol") cfg.consensus_tol = to_double(full, value);
    else if (full == "run.feasibility_tol") cfg.feasibility_tol = to_double(full, value);
    else if (full == "graph.kind") cfg.graph_kind = value;
    else if (full == "graph.m") cfg.m = static_cast<int>(to_long(full, value));
    else if (full == "graph.directed") cfg.directed = to_bool(full, value);
    else if (full == "graph.extra_prob") cfg.extra_prob = to_double(full, value);
    else if (full == "graph.path") cfg.topology_path = value;
    else if (full == "graph.activation_prob") cfg.activation_prob = to_double(full, value);
    else if (full == "problem.kind") cfg.problem_kind = value;
    else if (full == "problem.dim") cfg.dim = static_cast<int>(to_long(full, value));
    else if (full == "problem.samples_per_node")
      cfg.samples_per_node = static_cast<int>(to_long(full, value));
    else if (full == "problem.offset_lo") cfg.offset_lo = to_double(full, value);
    else if (full == "problem.offset_hi") cfg.offset_hi = to_double(full, value);
    else if (full == "problem.box_half_width") cfg.box_half_width = to_double(full, value);
    else if (full == "problem.objective") cfg.objective = to_list(full, value);
    else if (full == "problem.u") cfg.u = to_list(full, value);
    else if (full == "problem.y") cfg.y = to_list(full, value);
    else if (full == "problem.rho_uncertainty") cfg.rho_uncertainty = to_double(full, value);
    else if (full == "schedule.zeta0") cfg.zeta0 = to_double(full, value);
    else if (full == "schedule.exponent") cfg.exponent = to_double(full, value);
    else if (full == "primal_dual.rho") cfg.rho = to_double(full, value);
    else if (full == "rand_proj.beta") cfg.beta = to_double(full, value);
    else throw ConfigError("unknown configuration key: " + full);
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n";
  os << "algorithm = " << c.algorithm << '\n';
  os << "max_rounds = " << c.max_rounds << '\n';
  os << "seed = " << c.seed << '\n';
  os << "consensus_tol = " << fmt(c.consensus_tol) << '\n';
  os << "feasibility_tol = " << fmt(c.feasibility_tol) << '\n';
  os << "\n[graph]\n";
  os << "kind = " << c.graph_kind << '\n';
  os << "m = " << c.m << '\n';
  os << "directed = " << (c.directed ? "true" : "false") << '\n';
  os << "extra_prob = " << fmt(c.extra_prob) << '\n';
  if (!c.topology_path.empty()) os << "path = " << c.topology_path << '\n';
  os << "activation_prob = " << fmt(c.activation_prob) << '\n';
  os << "\n[problem]\n";
  os << "kind = " << c.problem_kind << '\n';
  os << "dim = " << c.dim << '\n';
  os << "samples_per_node = " << c.samples_per_node << '\n';
  os << "offset_lo = " << fmt(c.offset_lo) << '\n';
  os << "offset_hi = " << fmt(c.offset_hi) << '\n';
  os << "box_half_width = " << fmt(c.box_half_width) << '\n';
  if (!c.objective.empty()) os << "objective = " << fmt_list(c.objective) << '\n';
  if (!c.u.empty()) os << "u = " << fmt_list(c.u) << '\n';
  if (!c.y.empty()) os << "y = " << fmt_list(c.y) << '\n';
  os << "rho_uncertainty = " << fmt(c.rho_uncertainty) << '\n';
  os << "\n[schedule]\n";
  os << "zeta0 = " << fmt(c.zeta0) << '\n';
  os << "exponent = " << fmt(c.exponent) << '\n';
  os << "\n[primal_dual]\n";
  os << "rho = " << fmt(c.rho) << '\n';
  os << "\n[rand_proj]\n";
  os << "beta = " << fmt(c.beta) << '\n';
  return os.str();
}

void save_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config file: " + path);
  out << serialize_config(config);
}

}  // namespace scenet
