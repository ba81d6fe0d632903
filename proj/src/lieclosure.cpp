#include "qctrl/lieclosure.hpp"

#include <cmath>
#include <sstream>

namespace qctrl {

namespace {

// Gram–Schmidt step over the reals with one re-orthogonalization pass.
// `candidate` is normalized first so acceptance is scale free.
bool append_if_independent(LieAlgebraBasis& basis, const Matrix& candidate,
                           const Tolerances& tol) {
  const double norm = candidate.norm();
  if (norm <= tol.zero) return false;
  Projection p = project_out(candidate / norm, basis.elements, Field::Real);
  p = project_out(p.residual, basis.elements, Field::Real);
  if (p.residual_norm <= tol.degeneracy) return false;
  Matrix skew = 0.5 * (p.residual - p.residual.adjoint());
  skew /= skew.norm();
  basis.elements.push_back(std::move(skew));
  return true;
}

Matrix identity_direction(Eigen::Index n) {
  return Complex{0.0, 1.0 / std::sqrt(static_cast<double>(n))} * Matrix::Identity(n, n);
}

bool all_traceless(const LieAlgebraBasis& basis, const Tolerances& tol) {
  for (const Matrix& x : basis.elements)
    if (std::abs(x.trace()) > tol.zero) return false;
  return true;
}

// Basis of symmetric (or antisymmetric) N×N matrices, unit Frobenius norm.
std::vector<Matrix> form_space(Eigen::Index n, FormSymmetry symmetry) {
  std::vector<Matrix> out;
  const double off = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (symmetry == FormSymmetry::Symmetric) {
      Matrix e = Matrix::Zero(n, n);
      e(i, i) = 1.0;
      out.push_back(std::move(e));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = off;
      e(j, i) = symmetry == FormSymmetry::Symmetric ? off : -off;
      out.push_back(std::move(e));
    }
  }
  return out;
}

Matrix normalize_form(const Matrix& j) {
  // Scale so the first (row-major) entry of maximal modulus becomes 1.
  const double biggest = j.cwiseAbs().maxCoeff();
  for (Eigen::Index r = 0; r < j.rows(); ++r)
    for (Eigen::Index c = 0; c < j.cols(); ++c)
      if (std::abs(j(r, c)) >= biggest * (1.0 - 1e-9)) return j / j(r, c);
  return j;
}

std::size_t symplectic_dimension(Eigen::Index n) {
  const auto half = static_cast<std::size_t>(n / 2);
  return half * (2 * half + 1);
}

std::size_t orthogonal_dimension(Eigen::Index n) {
  const auto m = static_cast<std::size_t>(n);
  return m * (m - 1) / 2;
}

struct LadderResult {
  AlgebraTag tag = AlgebraTag::Other;
  std::optional<InvariantForm> form;
};

// `traceless` is the traceless projection of `basis` (identical when the
// identity direction is absent).
LadderResult run_ladder(const LieAlgebraBasis& basis, const LieAlgebraBasis& traceless,
                        bool identity, const Tolerances& tol) {
  const Eigen::Index n = basis.dim_hilbert;
  const std::size_t d = basis.dimension();
  const auto full = static_cast<std::size_t>(n * n);

  if (d == full) return {AlgebraTag::U, std::nullopt};
  if (d == full - 1 && all_traceless(basis, tol)) return {AlgebraTag::SU, std::nullopt};

  if (n % 2 == 0) {
    const std::size_t sp = symplectic_dimension(n);
    if (d == sp && !identity) {
      auto form = find_invariant_form(basis, FormSymmetry::Antisymmetric, tol);
      if (form && form->nondegenerate) return {AlgebraTag::SP, form};
    }
    if (d == sp + 1 && identity && traceless.dimension() == sp) {
      auto form = find_invariant_form(traceless, FormSymmetry::Antisymmetric, tol);
      if (form && form->nondegenerate) return {AlgebraTag::SPxU1, form};
    }
  }
  if (d == orthogonal_dimension(n) && !identity) {
    auto form = find_invariant_form(basis, FormSymmetry::Symmetric, tol);
    if (form && form->nondegenerate) return {AlgebraTag::SO, form};
  }
  if (d == 0) return {AlgebraTag::Other, std::nullopt};
  return {AlgebraTag::Other, find_invariant_bilinear_form(identity ? traceless : basis, tol)};
}

}  // namespace

std::string tag_name(AlgebraTag tag, Eigen::Index dim_hilbert) {
  std::ostringstream os;
  switch (tag) {
    case AlgebraTag::U: os << "U(" << dim_hilbert << ")"; break;
    case AlgebraTag::SU: os << "SU(" << dim_hilbert << ")"; break;
    case AlgebraTag::SP: os << "SP(" << dim_hilbert / 2 << ")"; break;
    case AlgebraTag::SPxU1: os << "SP(" << dim_hilbert / 2 << ")+U(1)"; break;
    case AlgebraTag::SO: os << "SO(" << dim_hilbert << ")"; break;
    case AlgebraTag::Other: os << "OTHER"; break;
  }
  return os.str();
}

std::optional<AlgebraTag> parse_tag_name(const std::string& name) {
  if (name == "OTHER") return AlgebraTag::Other;
  if (name.ends_with(")+U(1)") && name.starts_with("SP(")) return AlgebraTag::SPxU1;
  if (name.starts_with("SU(")) return AlgebraTag::SU;
  if (name.starts_with("SP(")) return AlgebraTag::SP;
  if (name.starts_with("SO(")) return AlgebraTag::SO;
  if (name.starts_with("U(")) return AlgebraTag::U;
  return std::nullopt;
}

std::string AlgebraClass::name() const { return tag_name(tag, dim_hilbert); }
std::string AlgebraClass::traceless_name() const { return tag_name(traceless_tag, dim_hilbert); }

LieAlgebraBasis lie_closure(std::span<const Matrix> generators, const Tolerances& tol) {
  tol.validate();
  if (generators.empty()) throw ValidationError("lie_closure: empty generator list");
  require_square(generators.front(), "lie_closure");
  const Eigen::Index n = generators.front().rows();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    require_same_dim(generators.front(), generators[k], "lie_closure");
    if (!generators[k].allFinite() || !is_skew_hermitian(generators[k], tol.zero)) {
      std::ostringstream os;
      os << "lie_closure: generator " << k << " is not skew-Hermitian";
      throw ValidationError(os.str());
    }
  }

  LieAlgebraBasis basis{n, {}};
  const auto full = static_cast<std::size_t>(n * n);
  for (const Matrix& g : generators) {
    if (basis.dimension() == full) break;
    append_if_independent(basis, 0.5 * (g - g.adjoint()), tol);
  }
  // Breadth first: element k is bracketed with every earlier element once.
  for (std::size_t k = 1; k < basis.dimension() && basis.dimension() < full; ++k) {
    for (std::size_t j = 0; j < k && basis.dimension() < full; ++j) {
      append_if_independent(basis, commutator(basis.elements[j], basis.elements[k]), tol);
    }
  }
  return basis;
}

std::optional<InvariantForm> find_invariant_form(const LieAlgebraBasis& basis,
                                                 FormSymmetry symmetry,
                                                 const Tolerances& tol) {
  const Eigen::Index n = basis.dim_hilbert;
  if (n < 1 || basis.elements.empty()) return std::nullopt;
  const std::vector<Matrix> space = form_space(n, symmetry);
  if (space.empty()) return std::nullopt;

  const auto blocks = static_cast<Eigen::Index>(basis.dimension());
  Matrix map(blocks * n * n, static_cast<Eigen::Index>(space.size()));
  for (std::size_t c = 0; c < space.size(); ++c) {
    for (Eigen::Index b = 0; b < blocks; ++b) {
      const Matrix& x = basis.elements[static_cast<std::size_t>(b)];
      const Matrix image = x.transpose() * space[c] + space[c] * x;
      map.block(b * n * n, static_cast<Eigen::Index>(c), n * n, 1) = vectorize(image);
    }
  }

  const Matrix null = nullspace(map, tol.degeneracy);
  if (null.cols() == 0) return std::nullopt;

  // Generic combination of the null directions.
  Vector coeffs = Vector::Zero(static_cast<Eigen::Index>(space.size()));
  for (Eigen::Index k = 0; k < null.cols(); ++k)
    coeffs += null.col(k) / (1.0 + 0.6180339887498949 * static_cast<double>(k));
  Matrix j = Matrix::Zero(n, n);
  for (std::size_t c = 0; c < space.size(); ++c)
    j += coeffs(static_cast<Eigen::Index>(c)) * space[c];

  InvariantForm out;
  out.form = normalize_form(j);
  out.symmetry = symmetry;
  const Eigen::VectorXd sigma = singular_values(out.form);
  out.nondegenerate = sigma(sigma.size() - 1) > tol.degeneracy * sigma(0);
  return out;
}

std::optional<InvariantForm> find_invariant_bilinear_form(const LieAlgebraBasis& basis,
                                                          const Tolerances& tol) {
  auto anti = find_invariant_form(basis, FormSymmetry::Antisymmetric, tol);
  auto sym = find_invariant_form(basis, FormSymmetry::Symmetric, tol);
  if (anti && anti->nondegenerate) return anti;
  if (sym && sym->nondegenerate) return sym;
  return anti ? anti : sym;
}

bool contains_identity_direction(const LieAlgebraBasis& basis, const Tolerances& tol) {
  if (basis.dim_hilbert < 1) return false;
  const Projection p =
      project_out(identity_direction(basis.dim_hilbert), basis.elements, Field::Real);
  return p.residual_norm < tol.degeneracy;
}

LieAlgebraBasis traceless_part(const LieAlgebraBasis& basis, const Tolerances& tol) {
  const Eigen::Index n = basis.dim_hilbert;
  LieAlgebraBasis out{n, {}};
  if (n < 1) return out;
  const Matrix unit = identity_direction(n);
  const std::span<const Matrix> id_span(&unit, 1);
  for (const Matrix& x : basis.elements) {
    Matrix t = project_out(x, id_span, Field::Real).residual;
    Projection p = project_out(t, out.elements, Field::Real);
    p = project_out(p.residual, out.elements, Field::Real);
    if (p.residual_norm <= tol.degeneracy) continue;
    Matrix skew = 0.5 * (p.residual - p.residual.adjoint());
    skew /= skew.norm();
    out.elements.push_back(std::move(skew));
  }
  return out;
}

AlgebraClass classify_algebra(const LieAlgebraBasis& basis, const Tolerances& tol) {
  tol.validate();
  AlgebraClass out;
  out.dim_hilbert = basis.dim_hilbert;
  out.dimension = basis.dimension();
  out.has_identity_direction = contains_identity_direction(basis, tol);

  const LieAlgebraBasis traceless = traceless_part(basis, tol);
  out.traceless_dimension = traceless.dimension();

  LadderResult full = run_ladder(basis, traceless, out.has_identity_direction, tol);
  out.tag = full.tag;
  out.invariant_form = std::move(full.form);
  out.identity_u1_assumed = out.tag == AlgebraTag::SPxU1;

  if (!out.has_identity_direction) {
    out.traceless_tag = out.tag;
  } else {
    out.traceless_tag = run_ladder(traceless, traceless, false, tol).tag;
  }
  return out;
}

}  // namespace qctrl
