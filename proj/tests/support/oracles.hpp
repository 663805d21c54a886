#pragma once

// Test-only reference computations. None of these share code with the
// library routes they check.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Cyclic Jacobi rotations on a dense symmetric matrix; eigenvalues ascending.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, double tol = 1e-15) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * a.norm()) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd w = a.diagonal();
  std::sort(w.data(), w.data() + w.size());
  return w;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// L_k^alpha(x) = sum_i (-1)^i C(k+alpha, k-i) x^i / i!
inline double laguerre_series(int k, int alpha, double x) {
  long double sum = 0.0L;
  long double power_over_factorial = 1.0L;
  for (int i = 0; i <= k; ++i) {
    if (i > 0) power_over_factorial *= static_cast<long double>(x) / i;
    sum += (i % 2 ? -1.0L : 1.0L) * binomial(k + alpha, k - i) * power_over_factorial;
  }
  return static_cast<double>(sum);
}

// Closed form for the (m, n) = (2, 1) splitting at epsilon = omega:
// 2^{-1/2} Delta e^{-2g^2} (2g) |L_1^1((2g)^2)|, omega = 1.
inline double splitting_21(double delta, double g) {
  const double x = 4.0 * g * g;
  return std::abs(delta * std::exp(-2.0 * g * g) * 2.0 * g * (2.0 - x)) / std::sqrt(2.0);
}

// Reads the CSV overlap layout (header row and column of indices).
inline Eigen::MatrixXd read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  Eigen::MatrixXd m(rows.size(), rows.at(0).size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace oracle
