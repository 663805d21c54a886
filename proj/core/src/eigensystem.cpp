#include "qrm/eigensystem.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qrm/error.hpp"

namespace qrm {

ConvergenceOptions ConvergenceOptions::from_environment() {
  ConvergenceOptions opts;
  if (const char* env = std::getenv("QRM_MAX_FOCK"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 2) {
      throw std::invalid_argument(std::string("QRM_MAX_FOCK must be an integer >= 2, got '") +
                                  env + "'");
    }
    opts.max_fock = static_cast<int>(v);
  }
  return opts;
}

namespace {

void apply_sign_convention(Eigen::MatrixXd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index at = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&at);
    if (vectors(at, k) < 0.0) vectors.col(k) *= -1.0;
  }
}

// All eigenvalues when k >= dim.
Eigen::VectorXd band_eigenvalues(const ModelParams& p, int n_fock, int k) {
  Eigen::MatrixXd band = hamiltonian_band_normalized(p, n_fock);
  const lapack_int n = 2 * n_fock;
  const lapack_int kd = kHamiltonianBandwidth;
  const lapack_int iu = std::min<lapack_int>(k, n);
  Eigen::VectorXd w(n);
  double q_dummy = 0.0;
  double z_dummy = 0.0;
  std::vector<lapack_int> ifail(static_cast<std::size_t>(n));
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info =
      LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, band.data(), kd + 1, &q_dummy, 1,
                     0.0, 0.0, 1, iu, abstol, &found, w.data(), &z_dummy, 1, ifail.data());
  if (info != 0 || found != iu) {
    std::ostringstream os;
    os << "band eigensolver failed (info=" << info << ") for " << to_string(p)
       << " at n_fock=" << n_fock;
    throw ConvergenceError(os.str(), std::numeric_limits<double>::infinity());
  }
  return p.omega * w.head(iu);
}

double max_drift(const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine, int k) {
  return (coarse.head(k) - fine.head(k)).cwiseAbs().maxCoeff();
}

int count_converged(const Eigen::VectorXd& coarse, const Eigen::VectorXd& fine, double bound) {
  const Eigen::Index n = std::min(coarse.size(), fine.size());
  int count = 0;
  while (count < n && std::abs(coarse(count) - fine(count)) <= bound) ++count;
  return count;
}

struct Converged {
  int n_fock;              // the smaller truncation of the accepted pair
  Eigen::VectorXd fine;    // lowest k_levels at 2 * n_fock
};

// Doubling search shared by both routes. Works on the band route since that
// is a fraction of the cost of a dense solve.
Converged converge_truncation(const ModelParams& p, int k_levels, double tol,
                              const ConvergenceOptions& opts) {
  p.validate();
  if (k_levels < 1) throw std::invalid_argument("k_levels must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  int n = std::max({opts.floor_fock, 2, (k_levels + 1) / 2 + 1});
  const double bound = tol * p.omega;
  double residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd coarse = band_eigenvalues(p, n, k_levels);
  while (2 * n <= opts.max_fock) {
    Eigen::VectorXd fine = band_eigenvalues(p, 2 * n, k_levels);
    residual = max_drift(coarse, fine, k_levels);
    if (residual <= bound) return {n, std::move(fine)};
    n *= 2;
    coarse = std::move(fine);
  }
  std::ostringstream os;
  os << "truncation cap n_fock=" << opts.max_fock << " reached for " << to_string(p)
     << " (lowest " << k_levels << " levels, last drift " << residual << ")";
  throw ConvergenceError(os.str(), residual);
}

}  // namespace

EigenSystem diagonalize(const ModelParams& p, int n_fock) {
  const OperatorMatrix h = build_hamiltonian(p, TruncatedBasis(n_fock));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "dense eigensolver did not converge for " << to_string(p) << " at n_fock=" << n_fock;
    throw ConvergenceError(os.str(), std::numeric_limits<double>::infinity());
  }
  EigenSystem e;
  e.params = p;
  e.n_fock = n_fock;
  e.energies = solver.eigenvalues();
  e.vectors = solver.eigenvectors();
  apply_sign_convention(e.vectors);
  return e;
}

EigenSystem diagonalize_converged(const ModelParams& p, int k_levels, double tol,
                                  const ConvergenceOptions& opts) {
  const Converged c = converge_truncation(p, k_levels, tol, opts);
  const Eigen::VectorXd coarse = band_eigenvalues(p, c.n_fock, 2 * c.n_fock);
  EigenSystem e = diagonalize(p, 2 * c.n_fock);
  e.converged_levels = count_converged(coarse, e.energies, tol * p.omega);
  if (e.converged_levels < k_levels) {
    // The band and dense routes disagree beyond tolerance; should not happen.
    throw ConvergenceError("dense and band spectra disagree for " + to_string(p),
                           max_drift(coarse, e.energies, k_levels));
  }
  return e;
}

Eigen::VectorXd lowest_energies(const ModelParams& p, int n_fock, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > 2 * n_fock) throw std::invalid_argument("k exceeds the truncated dimension");
  return band_eigenvalues(p, n_fock, k);
}

LevelSet lowest_energies_converged(const ModelParams& p, int k_levels, double tol,
                                   const ConvergenceOptions& opts) {
  const Converged c = converge_truncation(p, k_levels, tol, opts);
  return {p, 2 * c.n_fock, c.fine};
}

std::vector<std::pair<int, int>> degenerate_blocks(const EigenSystem& e, int n_levels,
                                                   double window) {
  std::vector<std::pair<int, int>> blocks;
  const int n = std::min(n_levels, e.dim());
  const double bound = window * e.params.omega;
  int begin = 0;
  for (int k = 1; k <= n; ++k) {
    if (k == n || e.energies(k) - e.energies(k - 1) >= bound) {
      if (k - begin >= 2) blocks.emplace_back(begin, k);
      begin = k;
    }
  }
  return blocks;
}

}  // namespace qrm
