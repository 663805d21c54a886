#include "qrm/perturb.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qrm/error.hpp"

namespace qrm {

double laguerre(int k, int alpha, double x) {
  if (k < 0 || alpha < 0) throw std::invalid_argument("laguerre: k and alpha must be >= 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2 * j + 1 + alpha - x) * cur - (j + alpha) * prev) / (j + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double dtilde(const ModelParams& p, int m, int n) {
  p.validate();
  if (n < 0 || m < n) throw std::invalid_argument("dtilde requires m >= n >= 0");
  const double r = p.g / p.omega;
  double ratio = 1.0;  // sqrt((m-n)!/m!)
  for (int j = m - n + 1; j <= m; ++j) ratio /= std::sqrt(static_cast<double>(j));
  const double value = p.delta * std::exp(-2.0 * r * r) * std::pow(-2.0 * r, n) * ratio *
                       laguerre(m - n, n, 4.0 * r * r);
  return value + 0.0;  // no negative zero at g = 0
}

EffectivePair effective_splitting(const ModelParams& p, int m, int n) {
  EffectivePair e;
  e.m = m;
  e.n = n;
  e.dtilde = dtilde(p, m, n);
  e.detuning = p.epsilon - n * p.omega;
  e.splitting = std::hypot(e.detuning, e.dtilde);
  return e;
}

std::vector<double> predicted_crossings(const ModelParams& p, int m, int n) {
  p.validate();
  if (n < 0 || m <= n) throw std::invalid_argument("predicted_crossings requires m > n >= 0");
  if (std::abs(p.epsilon - n * p.omega) > 1e-12 * p.omega * std::max(1, n)) {
    throw std::invalid_argument("predicted_crossings requires epsilon == n omega");
  }
  const int k = m - n;
  // All zeros of L_k^n lie in (0, 4k + 2n + 2).
  const double x_lo = 1e-8;
  const double x_hi = 4.0 * k + 2.0 * n + 10.0;
  const int steps = 200 * static_cast<int>(std::ceil(std::log10(x_hi / x_lo)));
  const double ratio = std::pow(x_hi / x_lo, 1.0 / steps);

  std::vector<double> roots;
  double a = x_lo;
  double fa = laguerre(k, n, a);
  for (int s = 1; s <= steps; ++s) {
    const double b = s == steps ? x_hi : x_lo * std::pow(ratio, s);
    const double fb = laguerre(k, n, b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double lo = a, hi = b, flo = fa;
      while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = laguerre(k, n, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  if (static_cast<int>(roots.size()) != k) {
    std::ostringstream os;
    os << "found " << roots.size() << " roots of L_" << k << "^" << n << ", expected " << k;
    throw NumericalError(os.str());
  }
  for (double& x : roots) x = p.omega * std::sqrt(x) / 2.0;
  return roots;
}

int pair_lower_level(int m, int n) {
  if (n < 0 || m < n) throw std::invalid_argument("pair_lower_level requires m >= n >= 0");
  return 2 * m - n + 1;
}

double unperturbed_pair_energy(const ModelParams& p, int m) {
  return (m + 0.5) * p.omega - p.g * p.g / p.omega - 0.5 * p.epsilon;
}

int locate_pair(const Eigen::VectorXd& energies, const ModelParams& p, int m) {
  if (energies.size() < 2) throw std::invalid_argument("locate_pair needs two levels");
  const double target = unperturbed_pair_energy(p, m);
  int best = 0;
  double best_dist = std::abs(0.5 * (energies(0) + energies(1)) - target);
  for (int k = 1; k + 1 < energies.size(); ++k) {
    const double d = std::abs(0.5 * (energies(k) + energies(k + 1)) - target);
    if (d < best_dist) best = k, best_dist = d;
  }
  return best + 1;
}

std::vector<PairComparison> compare_with_exact(const ModelParams& fixed, int m, int n,
                                               const std::vector<double>& g_grid, double tol,
                                               const ConvergenceOptions& opts) {
  // Enough levels to see the pair plus two above it.
  const int k_levels = pair_lower_level(m, n) + 3;
  std::vector<PairComparison> out;
  out.reserve(g_grid.size());
  for (double g : g_grid) {
    ModelParams p = fixed;
    p.g = g;
    const LevelSet levels = lowest_energies_converged(p, k_levels, tol, opts);
    PairComparison c;
    c.value = g;
    c.lower_level = locate_pair(levels.energies, p, m);
    c.exact_gap = levels.energies(c.lower_level) - levels.energies(c.lower_level - 1);
    c.effective = effective_splitting(p, m, n);
    out.push_back(c);
  }
  return out;
}

}  // namespace qrm
