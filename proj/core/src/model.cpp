#include "qrm/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qrm {

void ModelParams::validate() const {
  if (!std::isfinite(delta) || !std::isfinite(epsilon) || !std::isfinite(omega) ||
      !std::isfinite(g)) {
    throw std::invalid_argument("model parameters must be finite: " + to_string(*this));
  }
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (delta < 0.0) throw std::invalid_argument("delta must be non-negative");
  if (g < 0.0) throw std::invalid_argument("g must be non-negative");
}

ModelParams ModelParams::normalized() const {
  return {delta / omega, epsilon / omega, 1.0, g / omega};
}

std::string to_string(const ModelParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(delta=" << p.delta << ", epsilon=" << p.epsilon << ", omega=" << p.omega
     << ", g=" << p.g << ")";
  return os.str();
}

TruncatedBasis::TruncatedBasis(int n_fock) : n_fock_(n_fock) {
  if (n_fock < 2) throw std::invalid_argument("n_fock must be at least 2");
}

namespace {

// Visits the upper triangle (i <= j) of H in units of omega.
template <class Visit>
void visit_upper(const ModelParams& unit, int n_fock, Visit&& visit) {
  for (int m = 0; m < n_fock; ++m) {
    const double ladder = m + 0.5;
    const int up = TruncatedBasis::index(Spin::Up, m);
    const int down = TruncatedBasis::index(Spin::Down, m);
    visit(up, up, ladder + 0.5 * unit.delta);
    visit(down, down, ladder - 0.5 * unit.delta);
    visit(up, down, 0.5 * unit.epsilon);
    if (m + 1 < n_fock) {
      // sx (a + a^dag) flips the qubit and moves one Fock quantum.
      const double c = unit.g * std::sqrt(static_cast<double>(m + 1));
      visit(up, TruncatedBasis::index(Spin::Down, m + 1), c);
      visit(down, TruncatedBasis::index(Spin::Up, m + 1), c);
    }
  }
}

}  // namespace

OperatorMatrix build_hamiltonian(const ModelParams& p, const TruncatedBasis& basis) {
  p.validate();
  const ModelParams unit = p.normalized();
  OperatorMatrix h{"H", Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), basis.n_fock()};
  visit_upper(unit, basis.n_fock(), [&](int i, int j, double v) {
    h.entries(i, j) = p.omega * v;
    h.entries(j, i) = p.omega * v;
  });
  return h;
}

Eigen::MatrixXd hamiltonian_band_normalized(const ModelParams& p, int n_fock) {
  p.validate();
  const TruncatedBasis basis(n_fock);
  constexpr int kd = kHamiltonianBandwidth;
  Eigen::MatrixXd band = Eigen::MatrixXd::Zero(kd + 1, basis.dim());
  visit_upper(p.normalized(), n_fock, [&](int i, int j, double v) {
    band(kd + i - j, j) = v;
  });
  return band;
}

OperatorMatrix build_parity(const TruncatedBasis& basis) {
  OperatorMatrix pi{"Pi", Eigen::MatrixXd::Zero(basis.dim(), basis.dim()), basis.n_fock()};
  for (int i = 0; i < basis.dim(); ++i) {
    const int up = TruncatedBasis::spin_of(i) == Spin::Up ? 1 : 0;
    pi.entries(i, i) = ((up + TruncatedBasis::fock_of(i)) % 2 == 0) ? 1.0 : -1.0;
  }
  return pi;
}

double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim() || a.entries.cols() != b.entries.cols()) {
    throw std::invalid_argument("commutator_norm: dimension mismatch");
  }
  const Eigen::MatrixXd c = a.entries * b.entries - b.entries * a.entries;
  const int n_fock = a.n_fock > 0 ? a.n_fock : a.dim() / 2;
  const int inner = 2 * (n_fock - 1);  // indices with Fock index < n_fock - 1
  if (inner <= 0) return 0.0;
  return c.topLeftCorner(inner, inner).cwiseAbs().maxCoeff();
}

}  // namespace qrm
