#pragma once

#include <utility>
#include <vector>

#include "qrm/eigensystem.hpp"

namespace qrm {

// Rectangular (delta/omega, g/omega) mesh: lo + i*step for i = 0..count-1,
// where count = round((hi - lo)/step) + 1.
struct GridSpec {
  std::pair<double, double> delta_range{0.1, 3.1};
  std::pair<double, double> g_range{0.1, 3.1};
  double step = 0.05;

  void validate() const;
  int delta_count() const;
  int g_count() const;
  double delta_at(int i) const;
  double g_at(int j) const;
};

struct GapScanResult {
  double epsilon_over_omega = 0.0;
  GridSpec grid;
  int k_levels = 10;
  double min_gap = 0.0;         // units of omega
  double argmin_delta = 0.0;    // delta/omega
  double argmin_g = 0.0;        // g/omega
  int argmin_k = 0;             // 1-based lower level of the minimal pair
  int max_n_fock = 0;
};

struct ScanOptions {
  unsigned threads = 1;  // 0 = hardware concurrency
  double tol = kDefaultConvergenceTol;
  ConvergenceOptions convergence{};
};

// Minimum of E_{k+1} - E_k, k = 1..k_levels-1, over the mesh at fixed
// epsilon/omega (omega = 1). Ties go to the lexicographically smallest
// (delta, g, k). Each mesh point is solved on its own, so the result does not
// depend on thread count or evaluation order.
GapScanResult min_gap_scan(double eps_over_omega, const GridSpec& grid, int k_levels,
                           const ScanOptions& opts = {});

// Adjacent-level gap minimum at a single point, for cross-checking a scan.
std::pair<double, int> min_adjacent_gap(double eps_over_omega, double delta_over_omega,
                                        double g_over_omega, int k_levels,
                                        const ScanOptions& opts = {});

std::vector<GapScanResult> epsilon_sweep(const std::vector<double>& eps_grid,
                                         const GridSpec& grid, int k_levels,
                                         const ScanOptions& opts = {});

}  // namespace qrm
