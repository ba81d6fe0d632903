#include "qctrl/system.hpp"

#include <ostream>
#include <sstream>

namespace qctrl {

std::vector<Matrix> HamiltonianSystem::generators() const {
  std::vector<Matrix> out;
  out.reserve(controls.size() + 1);
  const Complex i{0.0, 1.0};
  out.push_back(i * h0);
  for (const Matrix& h : controls) out.push_back(i * h);
  return out;
}

std::vector<Matrix> HamiltonianSystem::hamiltonians() const {
  std::vector<Matrix> out;
  out.reserve(controls.size() + 1);
  out.push_back(h0);
  out.insert(out.end(), controls.begin(), controls.end());
  return out;
}

void HamiltonianSystem::validate() const {
  tol.validate();
  require_square(h0, "h0");
  if (controls.empty()) throw ValidationError("system has no control Hamiltonians");
  auto check = [&](const Matrix& m, const std::string& name) {
    if (m.rows() != h0.rows() || m.cols() != h0.cols()) {
      std::ostringstream os;
      os << name << ": expected " << h0.rows() << "x" << h0.rows() << ", got " << m.rows() << "x"
         << m.cols();
      throw DimensionError(os.str());
    }
    if (!m.allFinite()) throw ValidationError(name + ": non-finite entries");
    if (!is_hermitian(m, tol.zero)) throw ValidationError(name + ": matrix is not Hermitian");
  };
  check(h0, "h0");
  for (std::size_t k = 0; k < controls.size(); ++k)
    check(controls[k], "controls[" + std::to_string(k) + "]");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != h0.rows()) {
    throw DimensionError("labels: expected " + std::to_string(h0.rows()) + " entries, got " +
                         std::to_string(labels.size()));
  }
}

bool operator==(const HamiltonianSystem& a, const HamiltonianSystem& b) {
  if (a.h0.rows() != b.h0.rows() || a.h0.cols() != b.h0.cols() || a.h0 != b.h0) return false;
  if (a.controls.size() != b.controls.size()) return false;
  for (std::size_t k = 0; k < a.controls.size(); ++k) {
    if (a.controls[k].rows() != b.controls[k].rows() ||
        a.controls[k].cols() != b.controls[k].cols() || a.controls[k] != b.controls[k])
      return false;
  }
  return a.labels == b.labels && a.tol.zero == b.tol.zero &&
         a.tol.degeneracy == b.tol.degeneracy;
}

HamiltonianSystem build_chain(std::span<const double> energies, std::span<const double> dipoles) {
  if (energies.empty() || dipoles.size() + 1 != energies.size()) {
    std::ostringstream os;
    os << "build_chain: expected one dipole fewer than energies, got " << energies.size()
       << " energies and " << dipoles.size() << " dipoles";
    throw DimensionError(os.str());
  }
  const auto n = static_cast<Eigen::Index>(energies.size());
  HamiltonianSystem sys;
  sys.h0 = Matrix::Zero(n, n);
  Matrix h1 = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) sys.h0(k, k) = energies[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    h1(k, k + 1) = dipoles[static_cast<std::size_t>(k)];
    h1(k + 1, k) = dipoles[static_cast<std::size_t>(k)];
  }
  sys.controls.push_back(std::move(h1));
  return sys;
}

HamiltonianSystem build_lambda(double e1, double e2, double d, std::ostream* warnings) {
  if (warnings != nullptr && !(e2 > e1)) {
    *warnings << "warning: lambda system built with E2 <= E1 (" << e2 << " <= " << e1
              << "); level ordering is inverted\n";
  }
  HamiltonianSystem sys;
  sys.h0 = Matrix::Zero(3, 3);
  sys.h0(0, 0) = e1;
  sys.h0(1, 1) = e2;
  sys.h0(2, 2) = e1;
  Matrix h1 = Matrix::Zero(3, 3);
  h1(0, 1) = h1(1, 0) = d;
  h1(1, 2) = h1(2, 1) = d;
  sys.controls.push_back(std::move(h1));
  return sys;
}

}  // namespace qctrl
