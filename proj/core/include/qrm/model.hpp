#pragma once

#include <Eigen/Dense>
#include <string>

namespace qrm {

// Parameters of
//   H = (delta/2) sz + (epsilon/2) sx + omega (a^dag a + 1/2) + g sx (a + a^dag)
// with hbar = 1.
struct ModelParams {
  double delta = 0.0;
  double epsilon = 0.0;
  double omega = 1.0;
  double g = 0.0;

  // Throws std::invalid_argument unless all fields are finite, omega > 0,
  // delta >= 0 and g >= 0.
  void validate() const;

  // Same instance in units of omega (omega == 1).
  ModelParams normalized() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

std::string to_string(const ModelParams& p);

enum class Spin : int { Up = 0, Down = 1 };

// Qubit (x) Fock space truncated to Fock states 0..n_fock-1.
// Flat index = 2*m + s with s = 0 for up, 1 for down, so H is banded with
// half-bandwidth 3.
class TruncatedBasis {
 public:
  explicit TruncatedBasis(int n_fock);

  int n_fock() const noexcept { return n_fock_; }
  int dim() const noexcept { return 2 * n_fock_; }

  static constexpr int index(Spin s, int m) noexcept {
    return 2 * m + static_cast<int>(s);
  }
  static constexpr int fock_of(int index) noexcept { return index / 2; }
  static constexpr Spin spin_of(int index) noexcept {
    return static_cast<Spin>(index % 2);
  }

 private:
  int n_fock_;
};

inline constexpr int kHamiltonianBandwidth = 3;

struct OperatorMatrix {
  std::string label;
  Eigen::MatrixXd entries;
  int n_fock = 0;

  int dim() const noexcept { return static_cast<int>(entries.rows()); }
};

OperatorMatrix build_hamiltonian(const ModelParams& p, const TruncatedBasis& basis);

// Diagonal exp[i pi ((1 + sz)/2 + a^dag a)]: +1 on |down, even m> and
// |up, odd m>, -1 otherwise.
OperatorMatrix build_parity(const TruncatedBasis& basis);

// max |(AB - BA)_ij| over i, j whose Fock index is below n_fock - 1, which
// masks the truncation edge.
double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);

// Upper band of H (LAPACK 'U' band storage, kd = kHamiltonianBandwidth,
// column-major with leading dimension kd + 1). Energies in units of omega.
Eigen::MatrixXd hamiltonian_band_normalized(const ModelParams& p, int n_fock);

}  // namespace qrm
