// system.hpp: the analysis input H = H0 + Σ f_m(t) H_m and its builders.

#pragma once

#include "qctrl/matrixcore.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qctrl {

struct HamiltonianSystem {
  Matrix h0;
  std::vector<Matrix> controls;
  std::vector<std::string> labels;  // optional basis-state names
  Tolerances tol;

  [[nodiscard]] Eigen::Index dim() const { return h0.rows(); }

  // i·H0, i·H1, ..., i·HM
  [[nodiscard]] std::vector<Matrix> generators() const;

  // H0 followed by the controls.
  [[nodiscard]] std::vector<Matrix> hamiltonians() const;

  // Throws DimensionError or ValidationError naming the offending matrix.
  void validate() const;

  friend bool operator==(const HamiltonianSystem& a, const HamiltonianSystem& b);
};

// H0 = diag(energies), H1 = Σ d_n (|n⟩⟨n+1| + |n+1⟩⟨n|).
HamiltonianSystem build_chain(std::span<const double> energies, std::span<const double> dipoles);

// Three-level λ-system: H0 = diag(e1, e2, e1), H1 couples |2⟩ to |1⟩ and |3⟩
// with strength d. Writes a warning when e2 <= e1.
HamiltonianSystem build_lambda(double e1, double e2, double d, std::ostream* warnings = nullptr);

}  // namespace qctrl
