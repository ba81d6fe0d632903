// kinematics.hpp: density matrices and kinematical (unitary) equivalence.

#pragma once

#include "qctrl/matrixcore.hpp"

namespace qctrl {

// Positive semidefinite, unit-trace Hermitian matrix. Only constructible
// through validate_density / pure_state.
class DensityMatrix {
 public:
  [[nodiscard]] const Matrix& matrix() const { return matrix_; }
  [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }
  [[nodiscard]] const std::vector<double>& spectrum() const { return spectrum_; }
  // Tr(ρ²)
  [[nodiscard]] double purity() const;

 private:
  friend DensityMatrix validate_density(const Matrix& m, const Tolerances& tol);
  DensityMatrix(Matrix m, std::vector<double> spectrum)
      : matrix_(std::move(m)), spectrum_(std::move(spectrum)) {}

  Matrix matrix_;
  std::vector<double> spectrum_;  // ascending
};

// Throws ValidationError naming the failed invariant: not Hermitian, negative
// eigenvalue, or trace different from 1.
DensityMatrix validate_density(const Matrix& m, const Tolerances& tol = {});

// |ψ⟩⟨ψ| for a nonzero vector (normalized first).
DensityMatrix pure_state(const Vector& psi, const Tolerances& tol = {});

// Rank one within tolerance: Tr(ρ²) > 1 − 10·zero.
bool is_pure(const DensityMatrix& rho, const Tolerances& tol = {});

// Same sorted spectrum elementwise within tol.degeneracy.
bool kinematically_equivalent(const DensityMatrix& a, const DensityMatrix& b,
                              const Tolerances& tol = {});

}  // namespace qctrl
