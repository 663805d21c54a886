#include "qrm/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qrm/error.hpp"
#include "qrm/format.hpp"

namespace qrm {

double OverlapMatrix::separation() const noexcept {
  return smallest_retained / std::max(largest_ignored, 1e-300);
}

bool OverlapMatrix::valid() const noexcept {
  // A classification that zeroes every entry has nothing to separate.
  return classified() && std::isfinite(smallest_retained) &&
         separation() >= kMinScaleSeparation;
}

namespace {

// Level ranges [begin, end) covering 0..n-1; degenerate runs are merged.
std::vector<std::pair<int, int>> level_blocks(const EigenSystem& e, int n) {
  std::vector<std::pair<int, int>> blocks;
  const auto runs = degenerate_blocks(e, n);
  int k = 0;
  for (const auto& [b, end] : runs) {
    for (; k < b; ++k) blocks.emplace_back(k, k + 1);
    blocks.emplace_back(b, end);
    k = end;
  }
  for (; k < n; ++k) blocks.emplace_back(k, k + 1);
  return blocks;
}

}  // namespace

OverlapMatrix overlap_matrix(const EigenSystem& rows, const EigenSystem& cols, int n_levels) {
  if (n_levels < 1) throw std::invalid_argument("overlap_matrix: n_levels must be >= 1");
  if (rows.n_fock != cols.n_fock) {
    throw std::invalid_argument("overlap_matrix: truncation mismatch (n_fock " +
                                std::to_string(rows.n_fock) + " vs " +
                                std::to_string(cols.n_fock) + ")");
  }
  if (rows.converged_levels < n_levels || cols.converged_levels < n_levels) {
    throw std::invalid_argument("overlap_matrix: fewer than " + std::to_string(n_levels) +
                                " converged levels");
  }
  const Eigen::MatrixXd vr = rows.vectors.leftCols(n_levels);
  const Eigen::MatrixXd vc = cols.vectors.leftCols(n_levels);

  OverlapMatrix m;
  m.params_row = rows.params;
  m.params_col = cols.params;
  m.n_levels = n_levels;
  m.entries = (vr.transpose() * vc).cwiseAbs();

  const auto row_blocks = level_blocks(rows, n_levels);
  const auto col_blocks = level_blocks(cols, n_levels);
  std::set<int> drows, dcols;
  for (const auto& [r0, r1] : row_blocks) {
    for (const auto& [c0, c1] : col_blocks) {
      if (r1 - r0 == 1 && c1 - c0 == 1) continue;
      const Eigen::MatrixXd block = vr.middleCols(r0, r1 - r0).transpose() *
                                    vc.middleCols(c0, c1 - c0);
      const double cosine = Eigen::JacobiSVD<Eigen::MatrixXd>(block).singularValues()(0);
      m.entries.block(r0, c0, r1 - r0, c1 - c0).setConstant(cosine);
      if (r1 - r0 > 1) for (int r = r0; r < r1; ++r) drows.insert(r);
      if (c1 - c0 > 1) for (int c = c0; c < c1; ++c) dcols.insert(c);
    }
  }
  m.degenerate_rows.assign(drows.begin(), drows.end());
  m.degenerate_cols.assign(dcols.begin(), dcols.end());
  return m;
}

std::pair<EigenSystem, EigenSystem> matched_eigensystems(const ModelParams& p_row,
                                                         const ModelParams& p_col, int n_levels,
                                                         double tol,
                                                         const ConvergenceOptions& opts) {
  EigenSystem a = diagonalize_converged(p_row, n_levels, tol, opts);
  EigenSystem b = diagonalize_converged(p_col, n_levels, tol, opts);
  // A larger truncation only improves the converged levels, so the count
  // established at the smaller one carries over.
  auto lift = [](EigenSystem& e, int n_fock) {
    const int converged = e.converged_levels;
    e = diagonalize(e.params, n_fock);
    e.converged_levels = converged;
  };
  if (a.n_fock < b.n_fock) lift(a, b.n_fock);
  if (b.n_fock < a.n_fock) lift(b, a.n_fock);
  return {std::move(a), std::move(b)};
}

OverlapMatrix classify_zeros(const OverlapMatrix& m, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("zero threshold must be positive");
  OverlapMatrix out = m;
  out.zero_threshold = threshold;
  out.zero = m.entries.array() < threshold;
  out.largest_ignored = 0.0;
  out.smallest_retained = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      const double v = m.entries(i, j);
      if (out.zero(i, j)) {
        out.largest_ignored = std::max(out.largest_ignored, v);
      } else {
        out.smallest_retained = std::min(out.smallest_retained, v);
      }
    }
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

PartitionResult find_partition(const OverlapMatrix& m) {
  if (!m.classified()) throw ClassificationError("overlap matrix has not been classified");
  if (!m.valid()) {
    std::ostringstream os;
    os << "no certified scale separation (largest ignored " << m.largest_ignored
       << ", smallest retained " << m.smallest_retained << ")";
    throw ClassificationError(os.str());
  }
  if (m.params_row.g == 0.0 || m.params_col.g == 0.0) {
    throw std::invalid_argument("partition search refuses g == 0 parameter points");
  }
  const int n_rows = static_cast<int>(m.entries.rows());
  const int n_cols = static_cast<int>(m.entries.cols());
  DisjointSets sets(n_rows + n_cols);  // rows first, then columns
  for (int i = 0; i < n_rows; ++i) {
    for (int j = 0; j < n_cols; ++j) {
      if (!m.zero(i, j)) sets.unite(i, n_rows + j);
    }
  }

  // Roots are the smallest node of each set; rows precede columns, so
  // ordering by root orders groups by their smallest row index.
  std::vector<int> roots;
  for (int x = 0; x < n_rows + n_cols; ++x) {
    if (sets.find(x) == x) roots.push_back(x);
  }
  PartitionResult r;
  r.params_row = m.params_row;
  r.params_col = m.params_col;
  r.certificate = {m.zero_threshold, m.largest_ignored, m.smallest_retained, m.separation()};
  r.groups_row.resize(roots.size());
  r.groups_col.resize(roots.size());
  auto slot = [&](int x) {
    return static_cast<std::size_t>(std::lower_bound(roots.begin(), roots.end(), sets.find(x)) -
                                    roots.begin());
  };
  for (int i = 0; i < n_rows; ++i) r.groups_row[slot(i)].push_back(i);
  for (int j = 0; j < n_cols; ++j) r.groups_col[slot(n_rows + j)].push_back(j);

  bool all_mixed = true;
  bool all_single = true;
  for (std::size_t g = 0; g < roots.size(); ++g) {
    all_mixed = all_mixed && !r.groups_row[g].empty() && !r.groups_col[g].empty();
    all_single = all_single && r.groups_row[g].size() == 1 && r.groups_col[g].size() == 1;
  }
  r.found = roots.size() >= 2 && all_mixed;
  r.trivial = r.found && all_single;
  for (std::size_t g = 0; g < roots.size(); ++g) {
    r.row_permutation.insert(r.row_permutation.end(), r.groups_row[g].begin(),
                             r.groups_row[g].end());
    r.col_permutation.insert(r.col_permutation.end(), r.groups_col[g].begin(),
                             r.groups_col[g].end());
  }
  return r;
}

OperatorMatrix synthesize_symmetry_operator(const PartitionResult& partition,
                                            const EigenSystem& e,
                                            const std::vector<double>& labels) {
  if (!partition.found) throw std::invalid_argument("no partition to build an operator from");
  const std::vector<std::vector<int>>* groups = nullptr;
  if (e.params == partition.params_row) {
    groups = &partition.groups_row;
  } else if (e.params == partition.params_col) {
    groups = &partition.groups_col;
  } else {
    throw std::invalid_argument("eigensystem does not belong to either side of the partition");
  }
  if (labels.size() != groups->size()) {
    throw std::invalid_argument("need one label per group (" + std::to_string(groups->size()) +
                                "), got " + std::to_string(labels.size()));
  }
  if (std::set<double>(labels.begin(), labels.end()).size() != labels.size()) {
    throw std::invalid_argument("group labels must be distinct");
  }
  OperatorMatrix s{"S", Eigen::MatrixXd::Zero(e.dim(), e.dim()), e.n_fock};
  for (std::size_t g = 0; g < groups->size(); ++g) {
    for (int j : (*groups)[g]) {
      if (j >= e.converged_levels) {
        throw std::invalid_argument("group member " + std::to_string(j + 1) +
                                    " is not a converged level");
      }
      s.entries.noalias() += labels[g] * e.vectors.col(j) * e.vectors.col(j).transpose();
    }
  }
  return s;
}

void write_overlap_table(std::ostream& os, const OverlapMatrix& m, int digits) {
  for (Eigen::Index j = 0; j < m.entries.cols(); ++j) os << ',' << j + 1;
  os << '\n';
  for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
    os << i + 1;
    for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
      os << ',';
      if (m.classified() && m.zero(i, j)) {
        os << '0';
      } else {
        os << format_real(m.entries(i, j), digits);
      }
    }
    os << '\n';
  }
}

Eigen::MatrixXd read_overlap_table(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    if (line.rfind("partition", 0) == 0) break;
    std::istringstream ls(line);
    std::string cell;
    std::getline(ls, cell, ',');  // row index
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("overlap table is ragged");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("overlap table has no rows");
  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
  }
  return out;
}

void write_partition(std::ostream& os, const PartitionResult& p) {
  auto list = [&os](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i] + 1;
    os << '\n';
  };
  if (!p.found) {
    os << "partition: NONE\n";
    return;
  }
  os << "partition: " << p.groups_row.size() << " groups" << (p.trivial ? " (trivial)" : "")
     << '\n';
  for (std::size_t g = 0; g < p.groups_row.size(); ++g) {
    os << "rows[" << g + 1 << "]: ";
    list(p.groups_row[g]);
    os << "cols[" << g + 1 << "]: ";
    list(p.groups_col[g]);
  }
  os << "row_order: ";
  list(p.row_permutation);
  os << "col_order: ";
  list(p.col_permutation);
}

}  // namespace qrm
