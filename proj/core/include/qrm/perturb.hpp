#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qrm/eigensystem.hpp"
#include "qrm/model.hpp"

namespace qrm {

// Generalised rotating-wave picture near epsilon = n omega: the displaced
// states |left> D(g/omega)|m> and |right> D(-g/omega)|m-n> form a two-level
// block split by the detuning epsilon - n omega and the coupling dtilde.

// Associated Laguerre polynomial L_k^alpha(x) by the three-term recurrence.
double laguerre(int k, int alpha, double x);

// Delta e^{-2g^2/w^2} (-2g/w)^n sqrt((m-n)!/m!) L_{m-n}^n(4g^2/w^2), m >= n.
double dtilde(const ModelParams& p, int m, int n);

struct EffectivePair {
  int m = 0;
  int n = 0;
  double dtilde = 0.0;
  double detuning = 0.0;   // epsilon - n omega
  double splitting = 0.0;  // sqrt(detuning^2 + dtilde^2)
};

EffectivePair effective_splitting(const ModelParams& p, int m, int n);

// Positive g at which dtilde(m, n) changes sign: the m - n roots of
// L_{m-n}^n(4g^2/omega^2). Requires epsilon == n omega and m > n.
std::vector<double> predicted_crossings(const ModelParams& p, int m, int n);

// 1-based number of the lower exact level of the (m, n) pair when
// epsilon = n omega: 2m - n states lie below the pair.
int pair_lower_level(int m, int n);

// Centre of the unperturbed pair, (m + 1/2) omega - g^2/omega - epsilon/2.
double unperturbed_pair_energy(const ModelParams& p, int m);

// 1-based lower level of the adjacent exact pair whose midpoint lies closest
// to unperturbed_pair_energy. energies must be ascending.
int locate_pair(const Eigen::VectorXd& energies, const ModelParams& p, int m);

struct PairComparison {
  double value = 0.0;       // swept g
  int lower_level = 0;      // located by energy proximity
  double exact_gap = 0.0;
  EffectivePair effective;
};

// Exact gap of the located pair next to the two-level prediction along a g grid.
std::vector<PairComparison> compare_with_exact(const ModelParams& fixed, int m, int n,
                                               const std::vector<double>& g_grid,
                                               double tol = kDefaultConvergenceTol,
                                               const ConvergenceOptions& opts = {});

}  // namespace qrm
