#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "cohnet/graph.hpp"

namespace cohnet {

/// Euler-Maruyama settings. Nonpositive fields are resolved from the system
/// spectrum at run time: time_step = 0.01 / lambda_max, burn_in_time =
/// 10 / lambda_min, sample_time = 200 / lambda_min, where lambda_min is the
/// slowest (for consensus: slowest nonzero) mode.
struct SimulationConfig {
  double time_step = 0.0;
  double burn_in_time = 0.0;
  double sample_time = 0.0;
  int trial_count = 8;
  std::uint64_t rng_seed = 0;
};

/// Monte Carlo estimate with spread across independent trials.
struct SimulationEstimate {
  double value = 0.0;
  double std_error = 0.0;
  Eigen::VectorXd node_variance;   // per-node steady-state variance estimate
  Eigen::VectorXd node_std_error;  // its trial spread
  // Effective settings after spectral defaulting, echoed for reporting.
  double time_step = 0.0;
  double burn_in_time = 0.0;
  double sample_time = 0.0;
  int trial_count = 0;
};

/// Estimates consensus coherence by integrating dx = -Lx dt + dW and
/// time-averaging the squared deviation from the network average after
/// burn-in. Throws DisconnectedGraphError on disconnected input and
/// InstabilityError when the step size violates dt < 2 / lambda_max or the
/// state diverges.
SimulationEstimate simulate_consensus_coherence(const Graph& g, const SimulationConfig& cfg = {});

/// Estimates stubborn-agent coherence by integrating dx = -Qx dt + dW,
/// Q = L + diag(d), and time-averaging the squared state.
SimulationEstimate simulate_stubborn_coherence(const Graph& g, const StubbornnessProfile& d,
                                               const SimulationConfig& cfg = {});

/// One CSV row "analytic,estimate,std_error,z" under a comment header that
/// echoes the effective configuration.
void write_simulation_csv(std::ostream& out, double analytic, const SimulationEstimate& est,
                          std::uint64_t seed);

}  // namespace cohnet
