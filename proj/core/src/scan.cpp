#include "qrm/scan.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qrm/error.hpp"
#include "qrm/parallel.hpp"

namespace qrm {

namespace {

int count_for(std::pair<double, double> range, double step) {
  return static_cast<int>(std::llround((range.second - range.first) / step)) + 1;
}

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("scan step must be > 0");
  for (const auto& r : {delta_range, g_range}) {
    if (!std::isfinite(r.first) || !std::isfinite(r.second) || r.first > r.second) {
      throw std::invalid_argument("scan ranges must satisfy lo <= hi");
    }
  }
  if (delta_range.first < 0.0 || g_range.first < 0.0) {
    throw std::invalid_argument("scan ranges must be non-negative");
  }
}

int GridSpec::delta_count() const { return count_for(delta_range, step); }
int GridSpec::g_count() const { return count_for(g_range, step); }
double GridSpec::delta_at(int i) const { return delta_range.first + i * step; }
double GridSpec::g_at(int j) const { return g_range.first + j * step; }

std::pair<double, int> min_adjacent_gap(double eps_over_omega, double delta_over_omega,
                                        double g_over_omega, int k_levels,
                                        const ScanOptions& opts) {
  const ModelParams p{delta_over_omega, eps_over_omega, 1.0, g_over_omega};
  const LevelSet levels = lowest_energies_converged(p, k_levels, opts.tol, opts.convergence);
  double gap = std::numeric_limits<double>::infinity();
  int at = 0;
  for (int k = 0; k + 1 < k_levels; ++k) {
    const double d = levels.energies(k + 1) - levels.energies(k);
    if (d < gap) gap = d, at = k + 1;
  }
  return {gap, at};
}

namespace {

struct RowBest {
  double gap = std::numeric_limits<double>::infinity();
  int g_index = -1;
  int k = 0;
  int max_n_fock = 0;
};

}  // namespace

GapScanResult min_gap_scan(double eps_over_omega, const GridSpec& grid, int k_levels,
                           const ScanOptions& opts) {
  grid.validate();
  if (k_levels < 2) throw std::invalid_argument("min_gap_scan needs at least two levels");
  if (!std::isfinite(eps_over_omega)) throw std::invalid_argument("epsilon must be finite");
  const int nd = grid.delta_count();
  const int ng = grid.g_count();

  // One task per delta row; the ordered reduce below fixes the tie-break.
  std::vector<RowBest> rows(static_cast<std::size_t>(nd));
  parallel_for(rows.size(), opts.threads, [&](std::size_t i) {
    const double delta = grid.delta_at(static_cast<int>(i));
    RowBest best;
    for (int j = 0; j < ng; ++j) {
      const double g = grid.g_at(j);
      const ModelParams p{delta, eps_over_omega, 1.0, g};
      LevelSet levels;
      try {
        levels = lowest_energies_converged(p, k_levels, opts.tol, opts.convergence);
      } catch (const std::exception& e) {
        std::ostringstream where;
        where.precision(17);
        where << "epsilon=" << eps_over_omega << " delta=" << delta << " g=" << g;
        throw GridPointError(where.str(), e.what());
      }
      best.max_n_fock = std::max(best.max_n_fock, levels.n_fock);
      for (int k = 0; k + 1 < k_levels; ++k) {
        const double d = levels.energies(k + 1) - levels.energies(k);
        if (d < best.gap) best.gap = d, best.g_index = j, best.k = k + 1;
      }
    }
    rows[i] = best;
  });

  GapScanResult r;
  r.epsilon_over_omega = eps_over_omega;
  r.grid = grid;
  r.k_levels = k_levels;
  r.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nd; ++i) {
    const RowBest& b = rows[static_cast<std::size_t>(i)];
    r.max_n_fock = std::max(r.max_n_fock, b.max_n_fock);
    if (b.gap < r.min_gap) {
      r.min_gap = b.gap;
      r.argmin_delta = grid.delta_at(i);
      r.argmin_g = grid.g_at(b.g_index);
      r.argmin_k = b.k;
    }
  }
  return r;
}

std::vector<GapScanResult> epsilon_sweep(const std::vector<double>& eps_grid,
                                         const GridSpec& grid, int k_levels,
                                         const ScanOptions& opts) {
  if (eps_grid.empty()) throw std::invalid_argument("epsilon grid is empty");
  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > eps_grid[i - 1])) {
      throw std::invalid_argument("epsilon grid must be ascending");
    }
  }
  std::vector<GapScanResult> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) out.push_back(min_gap_scan(eps, grid, k_levels, opts));
  return out;
}

}  // namespace qrm
