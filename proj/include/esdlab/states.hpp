// states.hpp — construction and validation of pure and mixed states:
// Bell state, Schmidt-form d x 2 states, X-states, seeded random states.

#pragma once

#include "esdlab/matlin.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace esdlab::states {

using matlin::Complex;
using matlin::Matrix;
using matlin::Vector;

struct Tolerances {
  double herm = 1e-10;
  double trace = 1e-10;
  double psd = 1e-9;
};

// Density matrix tagged with its tensor-factor dimensions.
struct DensityMatrix {
  std::vector<int> dims;
  Matrix mat;

  int total_dim() const;
};

struct PureState {
  std::vector<int> dims;
  Vector vec;

  int total_dim() const;
};

// Validating constructor. Throws std::invalid_argument when the matrix is not
// Hermitian, not unit trace, or not positive semidefinite within `tol`.
DensityMatrix make_density(std::vector<int> dims, Matrix mat,
                           const Tolerances& tol = {});

DensityMatrix to_density(const PureState& psi);

// (|00> + |11>)/sqrt(2) on two qubits.
PureState bell_phi_plus();

// sqrt(p)|00> + sqrt(1-p)|11> on a d x 2 system, 0 < p < 1, d >= 2.
PureState schmidt_pure(double p, int d);

// Two-qubit state supported on the diagonal and anti-diagonal only.
// `diag` is (rho00, rho01;01, rho10;10, rho11) and `anti` holds the upper
// anti-diagonal pair: anti[0] at (01,10), anti[1] at (00,11).
DensityMatrix x_state(const std::array<double, 4>& diag,
                      const std::array<Complex, 2>& anti);

// Haar-uniform pure state / mixture of Haar pure states; deterministic for a
// fixed seed.
PureState random_pure(std::vector<int> dims, std::uint64_t seed);
DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed);

Matrix partial_transpose(const DensityMatrix& rho, int cut);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

}  // namespace esdlab::states
