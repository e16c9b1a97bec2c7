#include "cohnet/simulate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohnet/coherence.hpp"
#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDivergenceNorm = 1e9;

struct ResolvedConfig {
  double dt;
  long burn_steps;
  long sample_steps;
  int trials;
  std::uint64_t seed;
  double burn_in_time;
  double sample_time;
};

ResolvedConfig resolve(const SimulationConfig& cfg, double lambda_min, double lambda_max) {
  if (cfg.trial_count < 1) throw std::invalid_argument("trial_count must be >= 1");
  ResolvedConfig r;
  r.dt = cfg.time_step > 0.0 ? cfg.time_step : 0.01 / lambda_max;
  const double stability_bound = 2.0 / lambda_max;
  if (r.dt >= stability_bound) {
    throw InstabilityError("time step " + std::to_string(r.dt) +
                           " violates the stability bound 2/lambda_max = " +
                           std::to_string(stability_bound));
  }
  r.burn_in_time = cfg.burn_in_time > 0.0 ? cfg.burn_in_time : 10.0 / lambda_min;
  r.sample_time = cfg.sample_time > 0.0 ? cfg.sample_time : 200.0 / lambda_min;
  if (r.sample_time <= 0.0) throw std::invalid_argument("sample_time must be positive");
  r.burn_steps = static_cast<long>(std::ceil(r.burn_in_time / r.dt));
  r.sample_steps = static_cast<long>(std::ceil(r.sample_time / r.dt));
  r.trials = cfg.trial_count;
  r.seed = cfg.rng_seed;
  return r;
}

struct TrialResult {
  double mean_total = 0.0;
  Eigen::VectorXd mean_node;
};

// One Euler-Maruyama trajectory; accumulates the time average of the squared
// deviation statistic. When subtract_mean is set the statistic is taken
// around the instantaneous network average (consensus); otherwise around the
// origin (stubborn / leader frame).
TrialResult run_trial(const Eigen::MatrixXd& system, double dt, long burn_steps,
                      long sample_steps, bool subtract_mean, double stability_bound,
                      std::uint64_t seed) {
  const auto n = system.rows();
  const Eigen::MatrixXd stepper = Eigen::MatrixXd::Identity(n, n) - dt * system;
  const double noise_scale = std::sqrt(dt);

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd next(n);
  Eigen::VectorXd dev(n);

  TrialResult result;
  result.mean_node = Eigen::VectorXd::Zero(n);
  double acc_total = 0.0;

  for (long step = 0; step < burn_steps + sample_steps; ++step) {
    next.noalias() = stepper * x;
    for (Eigen::Index i = 0; i < n; ++i) next(i) += noise_scale * gauss(rng);
    x.swap(next);
    if ((step & 0x3ff) == 0 && (!x.allFinite() || x.norm() > kDivergenceNorm)) {
      throw InstabilityError(
          "state diverged during integration; time step " + std::to_string(dt) +
          " is too close to the stability bound 2/lambda_max = " + std::to_string(stability_bound));
    }
    if (step < burn_steps) continue;
    if (subtract_mean) {
      dev = x.array() - x.mean();
    } else {
      dev = x;
    }
    acc_total += dev.squaredNorm();
    result.mean_node.array() += dev.array().square();
  }
  result.mean_total = acc_total / static_cast<double>(sample_steps);
  result.mean_node /= static_cast<double>(sample_steps);
  return result;
}

SimulationEstimate aggregate(const Eigen::MatrixXd& system, const ResolvedConfig& cfg,
                             bool subtract_mean, double lambda_max) {
  const double stability_bound = 2.0 / lambda_max;
  std::vector<std::future<TrialResult>> futures;
  futures.reserve(static_cast<std::size_t>(cfg.trials));
  for (int t = 0; t < cfg.trials; ++t) {
    futures.push_back(std::async(std::launch::async, run_trial, std::cref(system), cfg.dt,
                                 cfg.burn_steps, cfg.sample_steps, subtract_mean, stability_bound,
                                 cfg.seed + static_cast<std::uint64_t>(t)));
  }

  // Welford combine in trial order, so the result is independent of
  // completion order.
  const auto n = system.rows();
  double mean = 0.0;
  double m2 = 0.0;
  Eigen::VectorXd node_mean = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd node_m2 = Eigen::VectorXd::Zero(n);
  for (int t = 0; t < cfg.trials; ++t) {
    const TrialResult trial = futures[static_cast<std::size_t>(t)].get();
    const double count = t + 1.0;
    const double delta = trial.mean_total - mean;
    mean += delta / count;
    m2 += delta * (trial.mean_total - mean);
    const Eigen::VectorXd node_delta = trial.mean_node - node_mean;
    node_mean += node_delta / count;
    node_m2.array() += node_delta.array() * (trial.mean_node - node_mean).array();
  }

  SimulationEstimate est;
  est.value = mean;
  est.node_variance = node_mean;
  if (cfg.trials > 1) {
    const double denom = static_cast<double>(cfg.trials) * (cfg.trials - 1.0);
    est.std_error = std::sqrt(m2 / denom);
    est.node_std_error = (node_m2 / denom).cwiseSqrt();
  } else {
    est.std_error = std::numeric_limits<double>::quiet_NaN();
    est.node_std_error = Eigen::VectorXd::Constant(n, est.std_error);
  }
  est.time_step = cfg.dt;
  est.burn_in_time = cfg.burn_in_time;
  est.sample_time = cfg.sample_time;
  est.trial_count = cfg.trials;
  return est;
}

}  // namespace

SimulationEstimate simulate_consensus_coherence(const Graph& g, const SimulationConfig& cfg) {
  const int n = g.node_count();
  if (n < 1) throw std::invalid_argument("graph has no nodes");
  if (n == 1) {
    // Single free node: the deviation from the average is identically zero.
    SimulationEstimate est;
    est.node_variance = Eigen::VectorXd::Zero(1);
    est.node_std_error = Eigen::VectorXd::Zero(1);
    est.trial_count = cfg.trial_count;
    return est;
  }
  const Eigen::MatrixXd lap = laplacian(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double lambda_max = ev(n - 1);
  const double tol = n * kEps * std::max(lambda_max, 0.0);
  int zeros = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i) <= tol) ++zeros;
  }
  if (zeros >= 2) {
    throw DisconnectedGraphError("graph is disconnected; consensus coherence is undefined");
  }
  const double lambda_min = ev(zeros);  // smallest nonzero eigenvalue
  return aggregate(lap, resolve(cfg, lambda_min, lambda_max), /*subtract_mean=*/true, lambda_max);
}

SimulationEstimate simulate_stubborn_coherence(const Graph& g, const StubbornnessProfile& d,
                                               const SimulationConfig& cfg) {
  check_stubborn_validity(g, d);
  const int n = g.node_count();
  Eigen::MatrixXd q = laplacian(g);
  for (int j = 0; j < n; ++j) q(j, j) += d.values[static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double lambda_max = ev(n - 1);
  const double tol = n * kEps * std::max(lambda_max, 0.0);
  if (ev(0) <= tol) {
    throw SingularSystemError("Q = L + diag(d) is numerically singular");
  }
  return aggregate(q, resolve(cfg, ev(0), lambda_max), /*subtract_mean=*/false, lambda_max);
}

void write_simulation_csv(std::ostream& out, double analytic, const SimulationEstimate& est,
                          std::uint64_t seed) {
  auto fmt = [](double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return std::string(buffer);
  };
  out << "# simulate: dt=" << fmt(est.time_step) << " burn-in=" << fmt(est.burn_in_time)
      << " sample-time=" << fmt(est.sample_time) << " trials=" << est.trial_count
      << " seed=" << seed << '\n';
  out << "analytic,estimate,std_error,z\n";
  out << fmt(analytic) << ',' << fmt(est.value) << ',' << fmt(est.std_error) << ','
      << fmt((est.value - analytic) / est.std_error) << '\n';
}

}  // namespace cohnet
