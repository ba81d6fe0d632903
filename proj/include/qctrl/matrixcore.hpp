// matrixcore.hpp: dense complex matrices, Hilbert–Schmidt geometry and the
// Hermitian eigensolver shared by the analysis modules.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qctrl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Error hierarchy. The CLI maps these onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but violates a mathematical precondition
// (non-Hermitian Hamiltonian, negative density eigenvalue, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Independent lines of evidence disagree; indicates a tolerance problem.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double zero = 1e-10;        // magnitudes below this are treated as zero
  double degeneracy = 1e-8;   // eigenvalues / gaps closer than this are equal

  // Throws ValidationError unless 0 < zero <= degeneracy.
  void validate() const;
};

void require_square(const Matrix& m, std::string_view what);
void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what);

Matrix commutator(const Matrix& a, const Matrix& b);

// Tr(a† b).
Complex hs_inner(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& m);

// ‖m − m†‖ <= tol · max(1, ‖m‖), Frobenius.
bool is_hermitian(const Matrix& m, double tol);
bool is_skew_hermitian(const Matrix& m, double tol);

struct Eigensystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns are the matching eigenvectors
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.
// Throws ValidationError when h is not Hermitian within tol.zero.
Eigensystem hermitian_eigensystem(const Matrix& h, const Tolerances& tol = {});

// Which inner product the projection coefficients come from. The Lie closure
// works over the reals (Re Tr(a†b)); general use is complex.
enum class Field { Complex, Real };

struct Projection {
  Matrix residual;
  double residual_norm = 0.0;
};

// candidate − Σ_k ⟨b_k, candidate⟩ b_k for an orthonormal basis.
Projection project_out(const Matrix& candidate, std::span<const Matrix> basis,
                       Field field = Field::Complex);

// Orthonormal columns spanning the numerical nullspace of `a`: right singular
// vectors whose singular value is <= relative_tol · σ_max. A zero matrix has
// the full space as nullspace.
Matrix nullspace(const Matrix& a, double relative_tol);

// Singular values in decreasing order.
Eigen::VectorXd singular_values(const Matrix& a);

// Column-major vec / unvec for N×N matrices.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, Eigen::Index n);

// Rotate the global phase of v so that its first component of (near) maximal
// modulus is real and positive.
Vector fix_phase(const Vector& v);

}  // namespace qctrl
