#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <utility>
#include <vector>

#include "qrm/eigensystem.hpp"
#include "qrm/model.hpp"

namespace qrm {

inline constexpr double kZeroThreshold = 1e-8;
inline constexpr double kMinScaleSeparation = 1e3;

// |<psi_n(p_row)|psi_m(p_col)>| for the lowest n_levels states of two
// eigenbases. Indices are 0-based in code and 1-based in exported tables.
struct OverlapMatrix {
  ModelParams params_row;
  ModelParams params_col;
  int n_levels = 0;
  Eigen::MatrixXd entries;

  // Rows/columns where a degenerate block forced the subspace overlap
  // (largest principal-angle cosine) in place of single-vector overlaps.
  std::vector<int> degenerate_rows;
  std::vector<int> degenerate_cols;

  // Filled by classify_zeros; zero_threshold == 0 means unclassified.
  double zero_threshold = 0.0;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> zero;
  double largest_ignored = 0.0;
  double smallest_retained = 0.0;

  bool classified() const noexcept { return zero_threshold > 0.0; }
  double separation() const noexcept;
  bool valid() const noexcept;  // classified with separation >= kMinScaleSeparation
};

// Requires identical truncations and >= n_levels converged levels on both.
OverlapMatrix overlap_matrix(const EigenSystem& rows, const EigenSystem& cols, int n_levels);

// Converged eigensystems for both parameter sets at a common truncation (the
// smaller one is re-diagonalized at the larger n_fock).
std::pair<EigenSystem, EigenSystem> matched_eigensystems(const ModelParams& p_row,
                                                         const ModelParams& p_col, int n_levels,
                                                         double tol = kDefaultConvergenceTol,
                                                         const ConvergenceOptions& opts = {});

// Entries below threshold become zeros. Invalid separation is recorded in the
// result (see OverlapMatrix::valid), not thrown.
OverlapMatrix classify_zeros(const OverlapMatrix& m, double threshold = kZeroThreshold);

struct ScaleCertificate {
  double threshold = 0.0;
  double largest_ignored = 0.0;
  double smallest_retained = 0.0;
  double separation = 0.0;
};

struct PartitionResult {
  bool found = false;
  bool trivial = false;  // every group is a single row/column pair
  ModelParams params_row;
  ModelParams params_col;
  std::vector<std::vector<int>> groups_row;  // ordered by smallest member
  std::vector<std::vector<int>> groups_col;  // groups_col[i] pairs with groups_row[i]
  std::vector<int> row_permutation;          // groups concatenated
  std::vector<int> col_permutation;
  ScaleCertificate certificate;
};

// Connected components of the bipartite graph whose edges are the nonzero
// entries. found == at least two components, each holding rows and columns.
// Throws ClassificationError without a valid classification and
// std::invalid_argument when either parameter point has g == 0.
PartitionResult find_partition(const OverlapMatrix& m);

// sum_i labels[i] * sum_{j in group i} v_j v_j^T using the groups that belong
// to e's parameter point.
OperatorMatrix synthesize_symmetry_operator(const PartitionResult& partition,
                                            const EigenSystem& e,
                                            const std::vector<double>& labels);

// Overlap table: header row and column of 1-based indices, one row per
// row state, `digits` significant digits, classified zeros written as 0.
void write_overlap_table(std::ostream& os, const OverlapMatrix& m, int digits = 6);

// Parses write_overlap_table output (lines starting with '#' are skipped).
Eigen::MatrixXd read_overlap_table(std::istream& is);

void write_partition(std::ostream& os, const PartitionResult& p);

}  // namespace qrm
