// lieclosure.hpp: dynamical Lie algebra by iterated-commutator closure, and
// its identification against u(N), su(N), sp(N/2), sp(N/2)+u(1), so(N).

#pragma once

#include "qctrl/matrixcore.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qctrl {

// Real Lie algebra of skew-Hermitian N×N matrices, stored as a basis that is
// orthonormal under Re Tr(a†b).
struct LieAlgebraBasis {
  Eigen::Index dim_hilbert = 0;
  std::vector<Matrix> elements;

  [[nodiscard]] std::size_t dimension() const { return elements.size(); }
};

enum class AlgebraTag { U, SU, SP, SPxU1, SO, Other };

enum class FormSymmetry { Symmetric, Antisymmetric };

// J with Xᵀ J + J X = 0 for every X in the algebra.
struct InvariantForm {
  Matrix form;
  FormSymmetry symmetry = FormSymmetry::Symmetric;
  bool nondegenerate = false;
};

struct AlgebraClass {
  AlgebraTag tag = AlgebraTag::Other;
  Eigen::Index dim_hilbert = 0;
  std::size_t dimension = 0;
  bool has_identity_direction = false;
  std::optional<InvariantForm> invariant_form;

  // Same ladder applied to the traceless projection of the algebra. Differs
  // from `tag` when i·I is a direction of the algebra, e.g. sp(2)+u(1) has
  // traceless part sp(2).
  AlgebraTag traceless_tag = AlgebraTag::Other;
  std::size_t traceless_dimension = 0;

  // Dimension-and-form identification, not a certified isomorphism.
  bool heuristic = true;
  // The u(1) summand of SPxU1 is assumed to be the identity direction.
  bool identity_u1_assumed = false;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] std::string traceless_name() const;
};

std::string tag_name(AlgebraTag tag, Eigen::Index dim_hilbert);
// Inverse of tag_name; nullopt when the string is not a tag.
std::optional<AlgebraTag> parse_tag_name(const std::string& name);

// Throws ValidationError on an empty generator list or a generator that is
// not skew-Hermitian within tol.zero; DimensionError on mixed dimensions.
LieAlgebraBasis lie_closure(std::span<const Matrix> generators, const Tolerances& tol = {});

// Nullspace of J ↦ (Xᵀ J + J X)_X. Returns the antisymmetric or symmetric
// solution (nondegenerate ones preferred), nullopt when only J = 0 solves it.
std::optional<InvariantForm> find_invariant_bilinear_form(const LieAlgebraBasis& basis,
                                                          const Tolerances& tol = {});

// Restricted to one symmetry class.
std::optional<InvariantForm> find_invariant_form(const LieAlgebraBasis& basis,
                                                 FormSymmetry symmetry,
                                                 const Tolerances& tol = {});

bool contains_identity_direction(const LieAlgebraBasis& basis, const Tolerances& tol = {});

// Orthonormal basis of {X − Tr(X)/N · I : X ∈ L}; itself a Lie algebra.
LieAlgebraBasis traceless_part(const LieAlgebraBasis& basis, const Tolerances& tol = {});

AlgebraClass classify_algebra(const LieAlgebraBasis& basis, const Tolerances& tol = {});

}  // namespace qctrl
