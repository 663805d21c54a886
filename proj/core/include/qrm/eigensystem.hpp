#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "qrm/model.hpp"

namespace qrm {

inline constexpr double kDefaultConvergenceTol = 1e-10;  // in units of omega
inline constexpr double kDegeneracyWindow = 1e-9;        // in units of omega
inline constexpr int kDefaultFockFloor = 32;
inline constexpr int kDefaultFockCap = 4096;

// Spectrum of the truncated Hamiltonian. Column k of `vectors` is the unit
// eigenvector for energies[k]; energies ascend. Each eigenvector is signed so
// that its largest-magnitude entry (lowest index on ties) is positive.
struct EigenSystem {
  ModelParams params;
  int n_fock = 0;
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  // Number of lowest levels that passed the truncation-convergence test.
  // Zero for a plain fixed-truncation diagonalization.
  int converged_levels = 0;

  int dim() const noexcept { return static_cast<int>(energies.size()); }
};

struct ConvergenceOptions {
  int floor_fock = kDefaultFockFloor;
  int max_fock = kDefaultFockCap;

  // Defaults, with max_fock taken from QRM_MAX_FOCK when that is set.
  static ConvergenceOptions from_environment();
};

// Full dense diagonalization at fixed truncation. Throws ConvergenceError if
// the QR sweep hits its iteration cap (30 sweeps per eigenvalue).
EigenSystem diagonalize(const ModelParams& p, int n_fock);

// Doubles n_fock from opts.floor_fock until the lowest k_levels energies move
// by at most tol*omega between n and 2n, then returns the 2n system.
// Throws ConvergenceError once 2n would exceed opts.max_fock.
EigenSystem diagonalize_converged(const ModelParams& p, int k_levels,
                                  double tol = kDefaultConvergenceTol,
                                  const ConvergenceOptions& opts = {});

// Eigenvalue-only route through the banded structure of H (LAPACK dsbevx).
// Returns the lowest k energies at fixed truncation.
Eigen::VectorXd lowest_energies(const ModelParams& p, int n_fock, int k);

struct LevelSet {
  ModelParams params;
  int n_fock = 0;
  Eigen::VectorXd energies;  // lowest k, ascending
};

// Same convergence rule as diagonalize_converged, eigenvalues only.
LevelSet lowest_energies_converged(const ModelParams& p, int k_levels,
                                   double tol = kDefaultConvergenceTol,
                                   const ConvergenceOptions& opts = {});

// Runs [begin, end) of consecutive levels among the lowest n_levels whose
// spacing is below window*omega. Only runs of length >= 2 are reported.
std::vector<std::pair<int, int>> degenerate_blocks(const EigenSystem& e, int n_levels,
                                                   double window = kDegeneracyWindow);

}  // namespace qrm
