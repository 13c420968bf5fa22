// matlin.hpp — dense complex linear algebra kernel: Kronecker products,
// matrix exponential, eigenvalues, partial transpose and partial trace.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace esdlab::matlin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Default tolerances: double precision with roundoff headroom.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

Matrix kron(const Matrix& a, const Matrix& b);

// Matrix exponential by scaling-and-squaring with a Pade core.
// Throws std::invalid_argument on non-square input.
Matrix expm(const Matrix& a);

bool is_hermitian(const Matrix& a, double tol = kHermTol);

// Real spectrum of a Hermitian matrix, ascending.
// Throws std::invalid_argument if the input is not Hermitian within `tol`.
std::vector<double> herm_eigvals(const Matrix& h, double tol = kHermTol);

// Full complex spectrum of a general square matrix.
std::vector<Complex> eigvals_general(const Matrix& a);

// The functions below act on operators over a tensor-product space whose
// factor dimensions are `dims`. Composite indices are row-major: the first
// factor varies slowest.

// Transpose the designated tensor factor(s) only. Involutive.
Matrix partial_transpose(const Matrix& rho, std::span<const int> dims, int cut);
Matrix partial_transpose(const Matrix& rho, std::span<const int> dims,
                         std::span<const int> cuts);

// Trace out every factor not listed in `keep`; kept factors stay in their
// original relative order. `keep` must be nonempty and valid.
Matrix partial_trace(const Matrix& rho, std::span<const int> dims,
                     std::span<const int> keep);

}  // namespace esdlab::matlin
