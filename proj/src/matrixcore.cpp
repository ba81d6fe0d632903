#include "qctrl/matrixcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qctrl {

void Tolerances::validate() const {
  if (!(zero > 0.0) || !(degeneracy > 0.0) || !std::isfinite(zero) ||
      !std::isfinite(degeneracy)) {
    throw ValidationError("tolerances must be finite and strictly positive");
  }
  if (zero > degeneracy) {
    std::ostringstream os;
    os << "zero tolerance " << zero << " exceeds degeneracy tolerance " << degeneracy;
    throw ValidationError(os.str());
  }
}

void require_square(const Matrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw DimensionError(os.str());
  }
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "hs_inner");
  // Tr(a†b) = Σ conj(a_ij) b_ij
  return a.conjugate().cwiseProduct(b).sum();
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_skew_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m + m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace

Eigensystem hermitian_eigensystem(const Matrix& h, const Tolerances& tol) {
  require_square(h, "hermitian_eigensystem");
  if (!h.allFinite()) throw ValidationError("hermitian_eigensystem: non-finite entries");
  if (!is_hermitian(h, tol.zero)) {
    throw ValidationError("hermitian_eigensystem: matrix is not Hermitian");
  }

  const Eigen::Index n = h.rows();
  Matrix a = 0.5 * (h + h.adjoint());
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  constexpr int kMaxSweeps = 100;
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kEps * scale) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag <= kEps * kEps * scale) continue;

        // Phase-rotate (p,q) to a real coupling, then a real Jacobi rotation.
        const Complex phase = g / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  Eigensystem out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values.push_back(a(src, src).real());
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

Projection project_out(const Matrix& candidate, std::span<const Matrix> basis, Field field) {
  Projection out{candidate, 0.0};
  for (const Matrix& b : basis) {
    require_same_dim(candidate, b, "project_out");
    Complex coeff = hs_inner(b, out.residual);
    if (field == Field::Real) coeff = coeff.real();
    out.residual -= coeff * b;
  }
  out.residual_norm = out.residual.norm();
  return out;
}

Eigen::VectorXd singular_values(const Matrix& a) {
  if (a.size() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

Matrix nullspace(const Matrix& a, double relative_tol) {
  const Eigen::Index cols = a.cols();
  if (a.rows() == 0 || a.norm() == 0.0) return Matrix::Identity(cols, cols);
  // Thin SVD only exposes min(rows, cols) right vectors; pad wide inputs.
  Matrix work = a;
  if (work.rows() < cols) {
    work.conservativeResize(cols, Eigen::NoChange);
    work.bottomRows(cols - a.rows()).setZero();
  }
  Eigen::BDCSVD<Matrix> svd(work, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = relative_tol * sigma(0);
  Eigen::Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) throw DimensionError("unvectorize: length is not n*n");
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

Vector fix_phase(const Vector& v) {
  if (v.size() == 0) return v;
  const double biggest = v.cwiseAbs().maxCoeff();
  if (biggest == 0.0) return v;
  Eigen::Index pivot = 0;
  while (std::abs(v(pivot)) < biggest * (1.0 - 1e-9)) ++pivot;
  const Complex phase = v(pivot) / std::abs(v(pivot));
  return v * std::conj(phase);
}

}  // namespace qctrl
