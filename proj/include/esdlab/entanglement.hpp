// entanglement.hpp — entanglement quantifiers and separability tests:
// Wootters concurrence, PPT / negativity, entanglement of formation, and the
// concurrence factorization residual for d x 2 systems.

#pragma once

#include "esdlab/channels.hpp"

namespace esdlab::entanglement {

using states::DensityMatrix;
using states::PureState;

// Wootters concurrence of a two-qubit state:
// C = max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) with l_i the
// descending eigenvalues of rho * (sy (x) sy) rho* (sy (x) sy).
double concurrence(const DensityMatrix& rho);

// Concurrence of a pure d x 2 state: twice the product of its two Schmidt
// coefficients.
double concurrence_pure_d2(const PureState& chi);

// Concurrence of a d x 2 state whose first factor is supported on a
// two-dimensional subspace (e.g. a channel applied to the qubit side of a
// Schmidt-rank-2 pure state): rotates the support onto the first two levels
// and applies the two-qubit formula.
double concurrence_qubit_support(const DensityMatrix& rho);

bool is_ppt(const DensityMatrix& rho, int cut, double tol = 1e-10);

// Sum of |negative eigenvalues| of the partial transpose.
double negativity(const DensityMatrix& rho, int cut);
double negativity_cut(const DensityMatrix& rho, std::span<const int> cut_set);

// E_F = h((1 + sqrt(1 - C^2))/2) with h the binary entropy in bits.
double eof_two_qubit(const DensityMatrix& rho);

// | C((I (x) v) chi) - C(chi) * C(choi(v)) | for a pure d x 2 input with the
// qubit channel acting on the qubit side.
double factorization_residual(const PureState& chi,
                              const channels::Superoperator& v);

}  // namespace esdlab::entanglement
