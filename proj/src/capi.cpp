#include "scenet/scenet_c.h"

#include <string>

#include "scenet/engine.hpp"
#include "scenet/errors.hpp"
#include "scenet/scenario.hpp"

namespace {

thread_local std::string g_last_error;

scenet_status fail(scenet_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

template <typename Fn>
scenet_status guarded(Fn&& fn) {
  try {
    fn();
    return SCENET_OK;
  } catch (const scenet::ParameterError& e) {
    return fail(SCENET_ERR_INVALID_ARG, e.what());
  } catch (const scenet::ConfigError& e) {
    return fail(SCENET_ERR_CONFIG, e.what());
  } catch (const scenet::ConnectivityError& e) {
    return fail(SCENET_ERR_CONNECTIVITY, e.what());
  } catch (const scenet::CheckpointError& e) {
    return fail(SCENET_ERR_CHECKPOINT, e.what());
  } catch (const scenet::IoError& e) {
    return fail(SCENET_ERR_IO, e.what());
  } catch (const scenet::NumericError& e) {
    return fail(SCENET_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(SCENET_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SCENET_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

struct scenet_run {
  scenet::Simulator sim;
  scenet::Simulator::Result result{};
  bool executed = false;
};

extern "C" {

const char* scenet_status_name(scenet_status status) {
  switch (status) {
    case SCENET_OK: return "ok";
    case SCENET_ERR_INVALID_ARG: return "invalid-argument";
    case SCENET_ERR_CONFIG: return "config-error";
    case SCENET_ERR_CONNECTIVITY: return "connectivity-error";
    case SCENET_ERR_IO: return "io-error";
    case SCENET_ERR_NUMERIC: return "numeric-error";
    case SCENET_ERR_CHECKPOINT: return "checkpoint-error";
    case SCENET_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* scenet_last_error(void) { return g_last_error.c_str(); }

scenet_status scenet_complexity(double eps, double delta, int n, long long* closed_form,
                                long long* minimal_search, int* tail_holds_at_closed_form) {
  return guarded([&] {
    const scenet::SampleComplexityParams params{eps, delta, n};
    const long long closed = scenet::sample_complexity(params);
    if (closed_form) *closed_form = closed;
    if (minimal_search) *minimal_search = scenet::minimal_complexity_by_search(params);
    if (tail_holds_at_closed_form)
      *tail_holds_at_closed_form = scenet::binomial_tail_holds(closed, params) ? 1 : 0;
  });
}

scenet_status scenet_run_create(const char* config_path, scenet_run_t** out) {
  if (!config_path || !out) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = scenet::load_config(config_path);
    *out = new scenet_run{scenet::Simulator(std::move(cfg))};
  });
}

scenet_status scenet_run_execute(scenet_run_t* run) {
  if (!run) return fail(SCENET_ERR_INVALID_ARG, "null run handle");
  return guarded([&] {
    run->result = run->sim.run();
    run->executed = true;
  });
}

scenet_status scenet_run_rounds(const scenet_run_t* run, long long* out) {
  if (!run || !out) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  *out = run->sim.round();
  return SCENET_OK;
}

scenet_status scenet_run_tolerance_met(const scenet_run_t* run, int* out) {
  if (!run || !out) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  *out = run->sim.tolerance_met() ? 1 : 0;
  return SCENET_OK;
}

scenet_status scenet_run_final_metrics(const scenet_run_t* run, double out[4]) {
  if (!run || !out) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  if (run->sim.trace().empty())
    return fail(SCENET_ERR_INVALID_ARG, "run has not produced any rounds");
  const auto& r = run->sim.trace().back();
  out[0] = r.consensus_spread;
  out[1] = r.feasibility;
  out[2] = r.objective;
  out[3] = r.zeta_sum;
  return SCENET_OK;
}

scenet_status scenet_run_write_trace(const scenet_run_t* run, const char* path) {
  if (!run || !path) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  return guarded([&] { run->sim.write_trace(path); });
}

scenet_status scenet_run_write_states(const scenet_run_t* run, const char* path) {
  if (!run || !path) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  return guarded([&] { run->sim.write_states(path); });
}

scenet_status scenet_run_save_checkpoint(const scenet_run_t* run, const char* path) {
  if (!run || !path) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  return guarded([&] { run->sim.save_checkpoint(path); });
}

scenet_status scenet_run_load_checkpoint(scenet_run_t* run, const char* path) {
  if (!run || !path) return fail(SCENET_ERR_INVALID_ARG, "null argument");
  return guarded([&] { run->sim.load_checkpoint(path); });
}

void scenet_run_destroy(scenet_run_t* run) { delete run; }

scenet_status scenet_ident_table(const scenet_ident_params* params, double* rows) {
  if (!params || !rows || !params->u || !params->y || !params->rho_grid)
    return fail(SCENET_ERR_INVALID_ARG, "null argument");
  return guarded([&] {
    scenet::IdentParams p;
    p.u.assign(params->u, params->u + params->n);
    p.y.assign(params->y, params->y + params->n);
    p.nodes = params->nodes;
    p.samples_per_node = params->samples_per_node;
    p.seed = params->seed;
    p.rho_grid.assign(params->rho_grid, params->rho_grid + params->rho_count);
    p.pd_rounds = static_cast<long>(params->pd_rounds);
    p.rp_rounds = static_cast<long>(params->rp_rounds);
    const auto table = scenet::ident_experiment(p);
    for (size_t i = 0; i < table.size(); ++i) {
      rows[4 * i + 0] = table[i].rho;
      rows[4 * i + 1] = table[i].r_ls;
      rows[4 * i + 2] = table[i].r_sc_pd;
      rows[4 * i + 3] = table[i].r_sc_rp;
    }
  });
}

}  // extern "C"
