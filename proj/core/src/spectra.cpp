#include "qrm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qrm/error.hpp"
#include "qrm/parallel.hpp"

namespace qrm {

std::string_view to_string(SweptParam s) {
  switch (s) {
    case SweptParam::G: return "g";
    case SweptParam::Delta: return "delta";
    case SweptParam::Epsilon: return "epsilon";
  }
  return "?";
}

SweptParam parse_swept_param(std::string_view name) {
  if (name == "g") return SweptParam::G;
  if (name == "delta") return SweptParam::Delta;
  if (name == "epsilon" || name == "eps") return SweptParam::Epsilon;
  throw std::invalid_argument("unknown swept parameter '" + std::string(name) + "'");
}

ModelParams with_value(const ModelParams& fixed, SweptParam swept, double value) {
  ModelParams p = fixed;
  switch (swept) {
    case SweptParam::G: p.g = value; break;
    case SweptParam::Delta: p.delta = value; break;
    case SweptParam::Epsilon: p.epsilon = value; break;
  }
  return p;
}

namespace {

void require_ascending(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep grid must be ascending");
  }
}

std::string point_label(SweptParam swept, double value) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(swept) << "=" << value;
  return os.str();
}

// Converged lowest levels at every grid point, in grid order.
std::vector<LevelSet> levels_on_grid(const ModelParams& fixed, SweptParam swept,
                                     const std::vector<double>& grid, int k_levels,
                                     const SweepOptions& opts) {
  require_ascending(grid);
  std::vector<LevelSet> out(grid.size());
  parallel_for(grid.size(), opts.threads, [&](std::size_t j) {
    try {
      out[j] = lowest_energies_converged(with_value(fixed, swept, grid[j]), k_levels, opts.tol,
                                         opts.convergence);
    } catch (const std::exception& e) {
      throw GridPointError(point_label(swept, grid[j]), e.what());
    }
  });
  return out;
}

}  // namespace

LevelSweep sweep_levels(const ModelParams& fixed, SweptParam swept,
                        const std::vector<double>& grid, int k_levels,
                        const SweepOptions& opts) {
  if (k_levels < 2) throw std::invalid_argument("sweep_levels needs at least two levels");
  const auto sets = levels_on_grid(fixed, swept, grid, k_levels, opts);
  LevelSweep sweep{fixed, swept, grid, Eigen::MatrixXd(grid.size(), k_levels), 0};
  for (std::size_t j = 0; j < sets.size(); ++j) {
    const Eigen::VectorXd& e = sets[j].energies;
    sweep.levels.row(static_cast<Eigen::Index>(j)) = (e.array() - e(0)).matrix().transpose();
    sweep.max_n_fock = std::max(sweep.max_n_fock, sets[j].n_fock);
  }
  return sweep;
}

std::vector<double> gap_curve(const ModelParams& fixed, SweptParam swept,
                              const std::vector<double>& grid, int k,
                              const SweepOptions& opts) {
  if (k < 1) throw std::invalid_argument("gap_curve: level number must be >= 1");
  const auto sets = levels_on_grid(fixed, swept, grid, k + 1, opts);
  std::vector<double> gaps(sets.size());
  std::transform(sets.begin(), sets.end(), gaps.begin(), [k](const LevelSet& s) {
    return s.energies(k) - s.energies(k - 1);
  });
  return gaps;
}

namespace {

// Truncation that converges the lowest k_levels at both ends and the middle
// of the bracket. Held fixed during refinement so the objective is smooth.
int bracket_truncation(const ModelParams& fixed, SweptParam swept,
                       std::pair<double, double> bracket, int k_levels,
                       const RefineOptions& opts) {
  const double mid = 0.5 * (bracket.first + bracket.second);
  int n_fock = 0;
  for (double x : {bracket.first, mid, bracket.second}) {
    n_fock = std::max(n_fock, lowest_energies_converged(with_value(fixed, swept, x), k_levels,
                                                        opts.tol, opts.convergence)
                                  .n_fock);
  }
  return n_fock;
}

void check_bracket(std::pair<double, double> bracket) {
  if (!std::isfinite(bracket.first) || !std::isfinite(bracket.second) ||
      !(bracket.first < bracket.second)) {
    throw std::invalid_argument("bracket must satisfy lo < hi");
  }
}

}  // namespace

CrossingReport refine_crossing(const ModelParams& fixed, SweptParam swept,
                               std::pair<double, double> bracket, int k,
                               const RefineOptions& opts) {
  check_bracket(bracket);
  if (k < 1) throw std::invalid_argument("refine_crossing: level number must be >= 1");
  if (opts.samples < 1) throw std::invalid_argument("refine_crossing: need interior samples");
  const int n_fock = bracket_truncation(fixed, swept, bracket, k + 1, opts);
  auto gap_at = [&](double x) {
    const Eigen::VectorXd e = lowest_energies(with_value(fixed, swept, x), n_fock, k + 1);
    return e(k) - e(k - 1);
  };

  const auto [lo, hi] = bracket;
  const int n = opts.samples + 2;
  std::vector<double> xs(n), gs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    gs[i] = gap_at(xs[i]);
  }
  const int best = static_cast<int>(std::min_element(gs.begin(), gs.end()) - gs.begin());
  if (best == 0 || best == n - 1) {
    std::ostringstream os;
    os << "gap between levels " << k << " and " << k + 1 << " is monotone over ["
       << lo << ", " << hi << "]";
    throw MonotoneGapError(os.str());
  }

  double a = xs[best - 1];
  double b = xs[best + 1];
  double best_x = xs[best];
  double best_gap = gs[best];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = gap_at(c);
  double gd = gap_at(d);
  while (b - a > opts.resolution) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = gap_at(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = gap_at(d);
    }
    if (gc < best_gap) best_gap = gc, best_x = c;
    if (gd < best_gap) best_gap = gd, best_x = d;
    if (d <= c) break;  // bracket collapsed to adjacent doubles
  }

  const ModelParams at = with_value(fixed, swept, best_x);
  const Eigen::VectorXd e = lowest_energies(at, n_fock, k + 1);
  CrossingReport r;
  r.lower_level = k;
  r.location = best_x;
  r.gap_at_star = e(k) - e(k - 1);
  r.relative_energy = e(k - 1) - e(0);
  r.n_fock = n_fock;
  r.certified = r.gap_at_star <= kCrossingCertificationGap * fixed.omega;
  return r;
}

int find_crossing_pair(const ModelParams& fixed, SweptParam swept,
                       std::pair<double, double> bracket, int k_levels,
                       const RefineOptions& opts) {
  check_bracket(bracket);
  if (k_levels < 2) throw std::invalid_argument("find_crossing_pair needs at least two levels");
  const int n_fock = bracket_truncation(fixed, swept, bracket, k_levels, opts);
  const auto [lo, hi] = bracket;
  const int n = opts.samples + 2;
  std::vector<double> min_gap(k_levels - 1, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    const double x = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
    const Eigen::VectorXd e = lowest_energies(with_value(fixed, swept, x), n_fock, k_levels);
    for (int k = 0; k + 1 < k_levels; ++k) min_gap[k] = std::min(min_gap[k], e(k + 1) - e(k));
  }
  return static_cast<int>(std::min_element(min_gap.begin(), min_gap.end()) - min_gap.begin()) + 1;
}

std::vector<double> baseline_energies(const ModelParams& p, int n_max) {
  p.validate();
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  std::vector<double> out;
  out.reserve(2 * static_cast<std::size_t>(n_max + 1));
  const double shift = p.g * p.g / p.omega;
  for (int n = 0; n <= n_max; ++n) {
    out.push_back(n * p.omega - shift - 0.5 * p.epsilon);
    out.push_back(n * p.omega - shift + 0.5 * p.epsilon);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qrm
