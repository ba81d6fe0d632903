#include "qctrl/random.hpp"

#include "qctrl/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qctrl {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (spare_) {
    const double out = *spare_;
    spare_.reset();
    return out;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = uniform(-1.0, 1.0);
    v = uniform(-1.0, 1.0);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

namespace {

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  return g;
}

Matrix exact_hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool strongly_regular_spectrum(const std::vector<double>& e, double sep) {
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    if (e[i + 1] - e[i] <= sep) return false;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) gaps.push_back(e[j] - e[i]);
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k)
    if (gaps[k + 1] - gaps[k] <= sep) return false;
  return true;
}

}  // namespace

Matrix random_hermitian(Eigen::Index n, Rng& rng) { return exact_hermitian_part(ginibre(n, n, rng)); }

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  const Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Vector random_unit_vector(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = rng.complex_normal();
  return v / v.norm();
}

Matrix random_density_matrix(Eigen::Index n, Rng& rng, Eigen::Index rank) {
  if (rank <= 0) rank = 1 + static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(n));
  const Matrix g = ginibre(n, rank, rng);
  const Matrix rho = exact_hermitian_part(g * g.adjoint());
  return rho / rho.trace().real();
}

HamiltonianSystem random_system(Eigen::Index n, int controls, std::uint64_t seed,
                                RandomOptions options, const Tolerances& tol) {
  if (n < 2) throw ValidationError("random_system: n must be at least 2");
  if (controls < 1) throw ValidationError("random_system: need at least one control");
  tol.validate();
  Rng rng(seed);

  HamiltonianSystem sys;
  sys.tol = tol;
  const bool diagonal_h0 = options.strongly_regular || options.connected;
  if (diagonal_h0) {
    std::vector<double> energies(static_cast<std::size_t>(n));
    do {
      for (double& e : energies) e = rng.uniform(-1.0, 1.0);
      std::sort(energies.begin(), energies.end());
    } while (options.strongly_regular && !strongly_regular_spectrum(energies, 10.0 * tol.degeneracy));
    sys.h0 = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) sys.h0(k, k) = energies[static_cast<std::size_t>(k)];
  } else {
    sys.h0 = random_hermitian(n, rng);
  }

  for (int c = 0; c < controls; ++c) {
    if (options.connected && c == 0) {
      Matrix h = Matrix::Zero(n, n);
      for (Eigen::Index k = 0; k < n; ++k) h(k, k) = rng.normal();
      UnionFind uf(static_cast<std::size_t>(n));
      auto couple = [&](Eigen::Index i, Eigen::Index j) {
        const double mag = rng.uniform(0.2, 1.0);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        h(i, j) = std::polar(mag, phase);
        h(j, i) = std::conj(h(i, j));
        uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      };
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (rng.uniform() < 0.5) couple(i, j);
      for (Eigen::Index v = 1; v < n; ++v) {
        if (uf.connected(0, static_cast<std::size_t>(v))) continue;
        std::vector<Eigen::Index> reachable;
        for (Eigen::Index u = 0; u < n; ++u)
          if (uf.connected(0, static_cast<std::size_t>(u))) reachable.push_back(u);
        couple(reachable[rng.next() % reachable.size()], v);
      }
      sys.controls.push_back(std::move(h));
    } else {
      sys.controls.push_back(random_hermitian(n, rng));
    }
  }

  if (options.rotate) {
    const Matrix v = random_unitary(n, rng);
    sys.h0 = exact_hermitian_part(v * sys.h0 * v.adjoint());
    for (Matrix& h : sys.controls) h = exact_hermitian_part(v * h * v.adjoint());
  }
  return sys;
}

}  // namespace qctrl
