#include "cohnet/coherence.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <limits>
#include <stdexcept>
#include <string>

#include "cohnet/errors.hpp"

namespace cohnet {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(name) + " must be square");
  if (m.rows() == 0) throw std::invalid_argument(std::string(name) + " must be nonempty");
}

// Rank cutoff for Laplacian spectra: eigenvalues below n * eps * lambda_max
// are treated as zero.
double zero_tolerance(const Eigen::VectorXd& eigenvalues) {
  const double lambda_max = eigenvalues(eigenvalues.size() - 1);
  return static_cast<double>(eigenvalues.size()) * kEps * std::max(lambda_max, 0.0);
}

int count_zero_eigenvalues(const Eigen::VectorXd& eigenvalues) {
  const double tol = zero_tolerance(eigenvalues);
  int zeros = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) <= tol) ++zeros;
  }
  return zeros;
}

void require_connected_spectrum(const Eigen::VectorXd& eigenvalues) {
  const int zeros = count_zero_eigenvalues(eigenvalues);
  if (eigenvalues.size() > 1 && zeros >= 2) {
    throw DisconnectedGraphError("graph is disconnected (" + std::to_string(zeros) +
                                 " components); coherence is undefined");
  }
  if (zeros == 0) {
    throw std::invalid_argument("matrix has no zero eigenvalue; not a graph Laplacian");
  }
}

}  // namespace

double ResistanceMatrix::centrality(int v) const {
  if (v < 0 || v >= values.rows()) throw std::invalid_argument("node index out of range");
  return values.row(v).sum();  // diagonal entry is zero
}

double pseudo_inverse_trace(const Eigen::MatrixXd& lap) {
  require_square_symmetric(lap, "laplacian");
  if (lap.rows() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  require_connected_spectrum(ev);
  const double tol = zero_tolerance(ev);
  double trace = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol) trace += 1.0 / ev(i);
  }
  return trace;
}

double pseudo_inverse_trace_shifted(const Eigen::MatrixXd& lap) {
  require_square_symmetric(lap, "laplacian");
  const auto n = lap.rows();
  if (n == 1) return 0.0;
  const Eigen::MatrixXd shifted =
      lap + Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw DisconnectedGraphError("shifted Laplacian is not positive definite; graph disconnected");
  }
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  return inv.trace() - 1.0;
}

Eigen::MatrixXd laplacian_pseudo_inverse(const Eigen::MatrixXd& lap) {
  require_square_symmetric(lap, "laplacian");
  const auto n = lap.rows();
  if (n == 1) return Eigen::MatrixXd::Zero(1, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  require_connected_spectrum(ev);
  const double tol = zero_tolerance(ev);
  Eigen::VectorXd inv_ev = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ev(i) > tol) inv_ev(i) = 1.0 / ev(i);
  }
  return solver.eigenvectors() * inv_ev.asDiagonal() * solver.eigenvectors().transpose();
}

double coherence_consensus(const Graph& g) {
  if (g.node_count() < 1) throw std::invalid_argument("graph has no nodes");
  return 0.5 * pseudo_inverse_trace(laplacian(g));
}

ResistanceMatrix resistance_matrix(const Graph& g) {
  const Eigen::MatrixXd pinv = laplacian_pseudo_inverse(laplacian(g));
  const auto n = pinv.rows();
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    r(u, u) = 0.0;
    for (Eigen::Index v = u + 1; v < n; ++v) {
      r(u, v) = pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
      r(v, u) = r(u, v);
    }
  }
  return ResistanceMatrix{std::move(r)};
}

double total_effective_resistance(const Graph& g) {
  const ResistanceMatrix r = resistance_matrix(g);
  double total = 0.0;
  for (Eigen::Index u = 0; u < r.values.rows(); ++u) {
    for (Eigen::Index v = u + 1; v < r.values.cols(); ++v) total += r.values(u, v);
  }
  return total;
}

double resistance_centrality(const Graph& g, int v) {
  if (v < 0 || v >= g.node_count()) throw std::invalid_argument("node index out of range");
  return resistance_matrix(g).centrality(v);
}

int min_centrality_node(const Graph& g) {
  const ResistanceMatrix r = resistance_matrix(g);
  int best = 0;
  double best_value = r.centrality(0);
  for (int v = 1; v < g.node_count(); ++v) {
    const double c = r.centrality(v);
    // Slack keeps exact symmetry ties (equal up to rounding) on the lowest
    // index.
    if (c < best_value - 1e-9 * std::max(1.0, best_value)) {
      best = v;
      best_value = c;
    }
  }
  return best;
}

void check_stubborn_validity(const Graph& g, const StubbornnessProfile& d) {
  d.validate();
  if (d.size() != g.node_count()) {
    throw std::invalid_argument("stubbornness profile has " + std::to_string(d.size()) +
                                " entries for a graph with " + std::to_string(g.node_count()) +
                                " nodes");
  }
  const auto labels = component_labels(g);
  const int components = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<bool> has_positive(static_cast<std::size_t>(components), false);
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (d.values[j] > 0.0) has_positive[static_cast<std::size_t>(labels[j])] = true;
  }
  for (int c = 0; c < components; ++c) {
    if (!has_positive[static_cast<std::size_t>(c)]) {
      int witness = 0;
      for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[j] == c) {
          witness = static_cast<int>(j);
          break;
        }
      }
      throw SingularSystemError("component " + std::to_string(c) + " (containing node " +
                                std::to_string(witness) +
                                ") has no positive stubbornness; Q is singular");
    }
  }
}

double coherence_stubborn(const Graph& g, const StubbornnessProfile& d) {
  check_stubborn_validity(g, d);
  Eigen::MatrixXd q = laplacian(g);
  for (int j = 0; j < d.size(); ++j) q(j, j) += d.values[static_cast<std::size_t>(j)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double tol =
      static_cast<double>(ev.size()) * kEps * std::max(ev(ev.size() - 1), 0.0);
  if (ev(0) <= tol) {
    throw SingularSystemError("Q = L + diag(d) is numerically singular (lambda_min = " +
                              std::to_string(ev(0)) + ")");
  }
  double trace = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) trace += 1.0 / ev(i);
  return 0.5 * trace;
}

double grounded_laplacian_coherence(const Graph& g, const StubbornnessProfile& d) {
  check_stubborn_validity(g, d);
  const int n = g.node_count();
  // Weighted Laplacian of the leader-augmented graph: node n is the leader s,
  // joined to every node j by an edge of weight d_j.
  Eigen::MatrixXd augmented = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (const auto& [u, v] : g.edges()) {
    augmented(u, u) += 1.0;
    augmented(v, v) += 1.0;
    augmented(u, v) -= 1.0;
    augmented(v, u) -= 1.0;
  }
  for (int j = 0; j < n; ++j) {
    const double w = d.values[static_cast<std::size_t>(j)];
    if (w == 0.0) continue;
    augmented(j, j) += w;
    augmented(n, n) += w;
    augmented(j, n) -= w;
    augmented(n, j) -= w;
  }
  const Eigen::MatrixXd grounded = augmented.topLeftCorner(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(grounded);
  if (llt.info() != Eigen::Success) {
    throw SingularSystemError("grounded Laplacian is not positive definite");
  }
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  return 0.5 * inv.trace();
}

}  // namespace cohnet
