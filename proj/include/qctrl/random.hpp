// random.hpp: reproducible pseudo-random matrices and systems.
//
// All draws come from a std::mt19937_64 stream; doubles are the top 53 bits
// scaled into [0, 1) and normals use the polar Box–Muller transform, so the
// same seed gives bit-identical output on every standard library.

#pragma once

#include "qctrl/matrixcore.hpp"
#include "qctrl/system.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

namespace qctrl {

inline constexpr std::string_view kRandomAlgorithm = "mt19937_64/top53/polar-box-muller/v1";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();                         // [0, 1)
  double uniform(double lo, double hi);     // [lo, hi)
  double normal();                          // N(0, 1)
  Complex complex_normal();                 // real and imaginary parts N(0, 1/2)

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

Matrix random_hermitian(Eigen::Index n, Rng& rng);
// Haar-distributed unitary.
Matrix random_unitary(Eigen::Index n, Rng& rng);
Vector random_unit_vector(Eigen::Index n, Rng& rng);
// G G† / Tr(G G†) with G of n × rank; rank 0 picks a random rank in [1, n].
Matrix random_density_matrix(Eigen::Index n, Rng& rng, Eigen::Index rank = 0);

struct RandomOptions {
  // H0 spectrum resampled until every level and every gap is separated by
  // more than 10·degeneracy.
  bool strongly_regular = false;
  // Single-control graph in the H0 eigenbasis is forced connected.
  bool connected = false;
  // Conjugate the whole system by a random unitary (H0 no longer diagonal).
  bool rotate = true;
};

HamiltonianSystem random_system(Eigen::Index n, int controls, std::uint64_t seed,
                                RandomOptions options = {}, const Tolerances& tol = {});

}  // namespace qctrl
