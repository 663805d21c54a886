#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrm/eigensystem.hpp"
#include "qrm/model.hpp"

namespace qrm {

// Gap at or below this many omega counts as an exact crossing.
inline constexpr double kCrossingCertificationGap = 1e-8;

enum class SweptParam { G, Delta, Epsilon };

std::string_view to_string(SweptParam s);
SweptParam parse_swept_param(std::string_view name);

// Copy of `fixed` with the swept field set to `value`.
ModelParams with_value(const ModelParams& fixed, SweptParam swept, double value);

struct SweepOptions {
  double tol = kDefaultConvergenceTol;
  ConvergenceOptions convergence{};
  unsigned threads = 1;
};

// Row j holds the lowest K energies at grid[j] relative to the ground state,
// so column 0 is identically zero. Levels are tracked by energy order only.
struct LevelSweep {
  ModelParams fixed;
  SweptParam swept = SweptParam::G;
  std::vector<double> grid;
  Eigen::MatrixXd levels;
  int max_n_fock = 0;
};

LevelSweep sweep_levels(const ModelParams& fixed, SweptParam swept,
                        const std::vector<double>& grid, int k_levels,
                        const SweepOptions& opts = {});

// E_{k+1} - E_k at every grid point, with k the 1-based number of the lower
// level (k = 1 is the ground state), so k = 4 is the gap between the fourth
// and fifth levels.
std::vector<double> gap_curve(const ModelParams& fixed, SweptParam swept,
                              const std::vector<double>& grid, int k,
                              const SweepOptions& opts = {});

struct CrossingReport {
  int lower_level = 0;        // 1-based; the pair is (lower_level, lower_level + 1)
  double location = 0.0;      // refined value of the swept parameter
  double gap_at_star = 0.0;
  double relative_energy = 0.0;  // E_lower - E_1 at the refined location
  int n_fock = 0;
  bool certified = false;     // gap_at_star <= kCrossingCertificationGap * omega
};

struct RefineOptions {
  double resolution = 1e-12;  // bracket width at which golden section stops
  int samples = 64;           // interior samples used to locate the minimum
  double tol = kDefaultConvergenceTol;
  ConvergenceOptions convergence{};
};

// Golden-section minimisation of E_{k+1} - E_k (k 1-based) over the bracket.
// Throws MonotoneGapError when no interior sample lies below both ends.
CrossingReport refine_crossing(const ModelParams& fixed, SweptParam swept,
                               std::pair<double, double> bracket, int k,
                               const RefineOptions& opts = {});

// Lower level (1-based) of the adjacent pair among the lowest k_levels whose
// sampled gap inside the bracket gets smallest.
int find_crossing_pair(const ModelParams& fixed, SweptParam swept,
                       std::pair<double, double> bracket, int k_levels,
                       const RefineOptions& opts = {});

// n omega - g^2/omega +- epsilon/2 for n = 0..n_max, ascending. These sit
// omega/2 below the corresponding exact levels of H because H carries the
// zero-point term.
std::vector<double> baseline_energies(const ModelParams& p, int n_max);

}  // namespace qrm
