#include "qctrl/kinematics.hpp"

#include <cmath>
#include <sstream>

namespace qctrl {

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityMatrix validate_density(const Matrix& m, const Tolerances& tol) {
  tol.validate();
  require_square(m, "density matrix");
  if (!m.allFinite() || !is_hermitian(m, tol.zero))
    throw ValidationError("density matrix is not Hermitian");
  const Eigensystem es = hermitian_eigensystem(m, tol);
  if (es.values.front() < -tol.zero) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << es.values.front();
    throw ValidationError(os.str());
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol.zero) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace is " << trace << ", expected 1";
    throw ValidationError(os.str());
  }
  return DensityMatrix(0.5 * (m + m.adjoint()), es.values);
}

DensityMatrix pure_state(const Vector& psi, const Tolerances& tol) {
  const double norm = psi.norm();
  if (psi.size() == 0 || !(norm > 0.0)) throw ValidationError("pure_state: zero vector");
  const Vector unit = psi / norm;
  return validate_density(unit * unit.adjoint(), tol);
}

bool is_pure(const DensityMatrix& rho, const Tolerances& tol) {
  return rho.purity() > 1.0 - 10.0 * tol.zero;
}

bool kinematically_equivalent(const DensityMatrix& a, const DensityMatrix& b,
                              const Tolerances& tol) {
  if (a.dim() != b.dim()) throw DimensionError("kinematically_equivalent: dimension mismatch");
  for (std::size_t k = 0; k < a.spectrum().size(); ++k)
    if (std::abs(a.spectrum()[k] - b.spectrum()[k]) > tol.degeneracy) return false;
  return true;
}

}  // namespace qctrl
