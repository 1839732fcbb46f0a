#include "scenet/engine.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "scenet/errors.hpp"
#include "scenet/oracle.hpp"

namespace scenet {

namespace {

constexpr char kCheckpointMagic[8] = {'S', 'C', 'N', 'E', 'T', 'C', 'K', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

// stream ids for substream derivation
constexpr std::uint64_t kStreamScenario = 1000;
constexpr std::uint64_t kStreamPolyak = 2000;
constexpr std::uint64_t kStreamTimeVarying = 3000;
constexpr std::uint64_t kStreamTopology = 4000;

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void put_bytes(std::string& buf, const void* p, size_t len) {
  buf.append(static_cast<const char*>(p), len);
}

template <typename T>
void put(std::string& buf, T v) {
  put_bytes(buf, &v, sizeof(v));
}

void put_vec(std::string& buf, const Eigen::VectorXd& v) {
  put<std::int32_t>(buf, static_cast<std::int32_t>(v.size()));
  put_bytes(buf, v.data(), sizeof(double) * v.size());
}

void put_str(std::string& buf, const std::string& s) {
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(s.size()));
  buf.append(s);
}

struct Reader {
  const std::string& buf;
  size_t pos = 0;

  void take(void* p, size_t len) {
    if (pos + len > buf.size()) throw CheckpointError("checkpoint truncated");
    std::memcpy(p, buf.data() + pos, len);
    pos += len;
  }
  template <typename T>
  T get() {
    T v;
    take(&v, sizeof(v));
    return v;
  }
  Eigen::VectorXd get_vec() {
    const auto n = get<std::int32_t>();
    if (n < 0 || static_cast<size_t>(n) * sizeof(double) > buf.size() - pos)
      throw CheckpointError("checkpoint vector length corrupt");
    Eigen::VectorXd v(n);
    take(v.data(), sizeof(double) * n);
    return v;
  }
  std::string get_str() {
    const auto n = get<std::uint32_t>();
    if (n > buf.size() - pos) throw CheckpointError("checkpoint string length corrupt");
    std::string s = buf.substr(pos, n);
    pos += n;
    return s;
  }
};

std::string rng_to_string(const Rng& rng) {
  std::ostringstream os;
  os << rng;
  return os.str();
}

Rng rng_from_string(const std::string& s) {
  Rng rng;
  std::istringstream is(s);
  is >> rng;
  if (!is) throw CheckpointError("corrupt RNG stream state");
  return rng;
}

}  // namespace

std::vector<Inbox> exchange(const std::vector<Eigen::VectorXd>& states,
                            const Topology& topology) {
  topology.validate();
  if (static_cast<int>(states.size()) != topology.m)
    throw ParameterError("state count does not match topology");
  std::vector<Inbox> inboxes(topology.m);
  for (int j = 0; j < topology.m; ++j) {
    for (int i : topology.in_neighbors(j)) {
      inboxes[j].from.push_back(i);
      inboxes[j].payload.push_back(states[i]);
    }
  }
  return inboxes;
}

void write_trace(const std::vector<MetricsRecord>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trace file: " + path);
  out.precision(17);
  out << "k consensus_spread feasibility objective zeta_sum wall_time_ms\n";
  for (const auto& r : trace)
    out << r.k << ' ' << r.consensus_spread << ' ' << r.feasibility << ' ' << r.objective
        << ' ' << r.zeta_sum << ' ' << r.wall_ms << '\n';
}

Simulator::Simulator(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  primal_dual_ = (config_.algorithm == "primal_dual");
  build_topology();
  build_problem();

  const int m = base_topology_.m;
  const int n = static_cast<int>(c_.size());
  sets_.reserve(m);
  for (int j = 0; j < m; ++j) {
    Rng rng = make_stream(config_.seed, kStreamScenario + j);
    sets_.push_back(draw_scenarios(*family_, j, config_.samples_per_node, rng));
  }
  if (primal_dual_) {
    std::vector<int> counts(m, config_.samples_per_node);
    pd_states_ = pd_init(m, n, counts);
  } else {
    rp_thetas_.assign(m, Eigen::VectorXd::Zero(n));
    rp_streams_.reserve(m);
    for (int j = 0; j < m; ++j) rp_streams_.push_back(make_stream(config_.seed, kStreamPolyak + j));
  }
  tv_rng_ = make_stream(config_.seed, kStreamTimeVarying);
}

void Simulator::build_topology() {
  if (config_.graph_kind == "file") {
    base_topology_ = load_topology(config_.topology_path);
  } else if (config_.graph_kind == "complete") {
    base_topology_ = complete_graph(config_.m);
  } else if (config_.graph_kind == "ring") {
    base_topology_ = ring_graph(config_.m, config_.directed);
  } else {
    Rng rng = make_stream(config_.seed, kStreamTopology);
    base_topology_ = config_.directed
                         ? ring_random_directed(config_.m, config_.extra_prob, rng)
                         : ring_random_undirected(config_.m, config_.extra_prob, rng);
  }
  if (primal_dual_ && base_topology_.directed)
    throw ConfigError("primal_dual requires an undirected topology");
  if (!is_strongly_connected(base_topology_))
    throw ConnectivityError("topology is not strongly connected");
  A_ = build_weights(base_topology_);
  if (base_topology_.directed)
    pi_ = left_eigenvector(A_).pi;
  else
    pi_ = Eigen::VectorXd::Constant(base_topology_.m, 1.0 / base_topology_.m);
}

void Simulator::build_problem() {
  if (config_.problem_kind == "halfspaces") {
    family_ = std::make_shared<HalfspaceFamily>(config_.dim, config_.offset_lo,
                                                config_.offset_hi);
    domain_ = std::make_unique<DomainSet>(
        DomainSet::box_centered(config_.dim, config_.box_half_width));
    if (!config_.objective.empty()) {
      if (static_cast<int>(config_.objective.size()) != config_.dim)
        throw ConfigError("objective length does not match dimension");
      c_ = Eigen::Map<const Eigen::VectorXd>(config_.objective.data(), config_.dim);
    } else {
      c_ = Eigen::VectorXd::Constant(config_.dim, 1.0 / std::sqrt(double(config_.dim)));
    }
  } else {
    const int n = static_cast<int>(config_.u.size());
    Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(config_.u.data(), n);
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(config_.y.data(), n);
    family_ = std::make_shared<IdentFamily>(u, y, config_.rho_uncertainty);
    // (theta, t) box; t stays nonnegative
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n + 1, -config_.box_half_width);
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(n + 1, config_.box_half_width);
    lo[n] = 0.0;
    domain_ = std::make_unique<DomainSet>(DomainSet::box(lo, hi));
    c_ = Eigen::VectorXd::Zero(n + 1);
    c_[n] = 1.0;
  }
}

std::vector<Eigen::VectorXd> Simulator::thetas() const {
  if (primal_dual_) {
    std::vector<Eigen::VectorXd> out(pd_states_.size());
    for (size_t j = 0; j < pd_states_.size(); ++j) out[j] = pd_states_[j].theta;
    return out;
  }
  return rp_thetas_;
}

Eigen::VectorXd Simulator::consensus_mean() const {
  const auto th = thetas();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(c_.size());
  for (int j = 0; j < static_cast<int>(th.size()); ++j) mean += pi_[j] * th[j];
  return mean;
}

MetricsRecord Simulator::measure(double round_ms) {
  const auto th = thetas();
  const Eigen::VectorXd mean = consensus_mean();
  MetricsRecord rec;
  rec.k = round_ - 1;
  for (int j = 0; j < static_cast<int>(th.size()); ++j) {
    rec.consensus_spread = std::max(rec.consensus_spread, (th[j] - mean).norm());
    const Eigen::VectorXd g = g_eval(th[j], *domain_, *family_, sets_[j]);
    rec.feasibility = std::max(rec.feasibility, g.maxCoeff());
  }
  rec.objective = c_.dot(mean);
  rec.zeta_sum = zeta_sum_;
  wall_ms_ += round_ms;
  rec.wall_ms = wall_ms_;
  return rec;
}

MetricsRecord Simulator::step() {
  const auto t0 = std::chrono::steady_clock::now();
  Eigen::MatrixXd A = A_;
  Topology topo = base_topology_;
  if (config_.activation_prob < 1.0) {
    topo = sample_time_varying(base_topology_, config_.activation_prob, tv_rng_);
    A = build_weights(topo);
  }
  StepSchedule schedule{config_.zeta0, config_.exponent};
  if (primal_dual_) {
    PDConfig pd{config_.rho, schedule};
    const PDWave1 wave = pd_wave1(pd_states_, A, pd.rho);  // theta broadcast wave
    ++exchange_waves_;
    pd_apply(pd_states_, wave, laplacian(A), c_, *domain_, *family_, sets_, pd, round_);
    ++exchange_waves_;  // modified-multiplier broadcast wave
  } else {
    RPConfig rp;
    rp.beta = config_.beta;
    rp.schedule = schedule;
    rp.fallback_direction = Eigen::VectorXd::Unit(c_.size(), 0);
    rp_round(rp_thetas_, A, c_, *domain_, *family_, sets_, rp, round_, rp_streams_);
    ++exchange_waves_;
  }
  zeta_sum_ += schedule.at(round_);
  ++round_;
  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  MetricsRecord rec = measure(ms);
  trace_.push_back(rec);
  return rec;
}

bool Simulator::tolerance_met() const {
  if (trace_.empty()) return false;
  if (config_.consensus_tol <= 0.0 || config_.feasibility_tol <= 0.0) return false;
  const auto& r = trace_.back();
  return r.consensus_spread <= config_.consensus_tol &&
         r.feasibility <= config_.feasibility_tol;
}

bool Simulator::done() const {
  return round_ >= config_.max_rounds || tolerance_met();
}

Simulator::Result Simulator::run() {
  while (!done()) step();
  return Result{tolerance_met(), round_};
}

void Simulator::write_trace(const std::string& path) const {
  scenet::write_trace(trace_, path);
}

void Simulator::write_states(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write states file: " + path);
  out.precision(17);
  const auto th = thetas();
  out << "node";
  for (int i = 0; i < c_.size(); ++i) out << " theta" << i;
  out << '\n';
  for (int j = 0; j < static_cast<int>(th.size()); ++j) {
    out << j;
    for (int i = 0; i < th[j].size(); ++i) out << ' ' << th[j][i];
    out << '\n';
  }
}

void Simulator::save_checkpoint(const std::string& path) const {
  std::string body;
  put<std::uint8_t>(body, primal_dual_ ? 0 : 1);
  put<std::int64_t>(body, round_);
  put<std::int64_t>(body, exchange_waves_);
  put(body, zeta_sum_);
  put<std::int32_t>(body, base_topology_.m);
  put<std::int32_t>(body, static_cast<std::int32_t>(c_.size()));
  if (primal_dual_) {
    for (const auto& s : pd_states_) {
      put_vec(body, s.theta);
      put_vec(body, s.lambda);
      put_vec(body, s.gamma);
    }
  } else {
    for (const auto& t : rp_thetas_) put_vec(body, t);
    for (const auto& s : rp_streams_) put_str(body, rng_to_string(s));
  }
  put_str(body, rng_to_string(tv_rng_));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write checkpoint file: " + path);
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  const std::uint32_t version = kCheckpointVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  const std::uint64_t hash = fnv1a(body);
  out.write(reinterpret_cast<const char*>(&hash), sizeof(hash));
  const std::uint64_t len = body.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof(len));
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

void Simulator::load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint file: " + path);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0)
    throw CheckpointError("bad checkpoint magic");
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (!in || version != kCheckpointVersion)
    throw CheckpointError("unsupported checkpoint version");
  std::uint64_t hash = 0, len = 0;
  in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
  in.read(reinterpret_cast<char*>(&len), sizeof(len));
  if (!in) throw CheckpointError("checkpoint header truncated");
  std::string body(len, '\0');
  in.read(body.data(), static_cast<std::streamsize>(len));
  if (!in || static_cast<std::uint64_t>(in.gcount()) != len)
    throw CheckpointError("checkpoint body truncated");
  if (fnv1a(body) != hash) throw CheckpointError("checkpoint hash mismatch");

  Reader r{body};
  const auto alg = r.get<std::uint8_t>();
  if ((alg == 0) != primal_dual_)
    throw CheckpointError("checkpoint algorithm does not match configuration");
  const auto round = r.get<std::int64_t>();
  const auto waves = r.get<std::int64_t>();
  const auto zsum = r.get<double>();
  const auto m = r.get<std::int32_t>();
  const auto n = r.get<std::int32_t>();
  if (m != base_topology_.m || n != c_.size())
    throw CheckpointError("checkpoint dimensions do not match configuration");
  if (primal_dual_) {
    for (auto& s : pd_states_) {
      s.theta = r.get_vec();
      s.lambda = r.get_vec();
      s.gamma = r.get_vec();
    }
  } else {
    for (auto& t : rp_thetas_) t = r.get_vec();
    for (auto& s : rp_streams_) s = rng_from_string(r.get_str());
  }
  tv_rng_ = rng_from_string(r.get_str());
  round_ = round;
  exchange_waves_ = waves;
  zeta_sum_ = zsum;
  wall_ms_ = 0.0;
  trace_.clear();
}

std::vector<IdentRow> ident_experiment(const IdentParams& params) {
  if (params.rho_grid.empty()) throw ParameterError("rho grid must be nonempty");
  std::vector<IdentRow> rows;
  for (size_t r = 0; r < params.rho_grid.size(); ++r) {
    const double rho = params.rho_grid[r];
    if (rho < 0.0) throw ParameterError("uncertainty level must be nonnegative");

    RunConfig base;
    base.problem_kind = "ident";
    base.u = params.u;
    base.y = params.y;
    base.rho_uncertainty = rho;
    base.samples_per_node = params.samples_per_node;
    base.graph_kind = "ring_random";
    base.m = params.nodes;
    base.extra_prob = 0.05;
    base.box_half_width = 1e3;
    base.zeta0 = params.zeta0;
    base.exponent = params.exponent;
    base.rho = params.rho_penalty;
    base.beta = params.beta;
    base.consensus_tol = 0.0;  // run the full budget
    base.feasibility_tol = 0.0;
    base.seed = substream_seed(params.seed, 7000 + r);

    RunConfig pd_cfg = base;
    pd_cfg.algorithm = "primal_dual";
    pd_cfg.directed = false;
    pd_cfg.max_rounds = params.pd_rounds;

    RunConfig rp_cfg = base;
    rp_cfg.algorithm = "rand_proj";
    rp_cfg.directed = true;
    rp_cfg.max_rounds = params.rp_rounds;

    Simulator pd(pd_cfg);
    pd.run();
    Simulator rp(rp_cfg);
    rp.run();

    const auto& fam = dynamic_cast<const IdentFamily&>(pd.family());
    const int n = fam.order();
    const Eigen::VectorXd theta_ls = fam.least_squares_solution();
    // both runs draw identical scenario sets (same seed, same streams)
    const auto& sets = pd.scenario_sets();

    IdentRow row;
    row.rho = rho;
    row.r_ls = max_residual(fam, theta_ls, sets);
    row.r_sc_pd = max_residual(fam, pd.consensus_mean().head(n), sets);
    row.r_sc_rp = max_residual(fam, rp.consensus_mean().head(n), sets);
    rows.push_back(row);
  }
  return rows;
}

void write_ident_table(const std::vector<IdentRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write residual table: " + path);
  out.precision(17);
  out << "rho r_ls r_sc_pd r_sc_rp\n";
  for (const auto& r : rows)
    out << r.rho << ' ' << r.r_ls << ' ' << r.r_sc_pd << ' ' << r.r_sc_rp << '\n';
}

}  // namespace scenet
