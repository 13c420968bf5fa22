#include "esdlab/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace esdlab::states {

namespace {

// Seeded generator with a fixed normal-variate recipe so that identical seeds
// give identical states on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in (0, 1]
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

int product_dim(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  int d = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("subsystem dimensions must be >= 1");
    d *= x;
  }
  return d;
}

}  // namespace

int DensityMatrix::total_dim() const {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

int PureState::total_dim() const {
  int d = 1;
  for (int x : dims) d *= x;
  return d;
}

DensityMatrix make_density(std::vector<int> dims, Matrix mat,
                           const Tolerances& tol) {
  const int d = product_dim(dims);
  if (mat.rows() != d || mat.cols() != d)
    throw std::invalid_argument("make_density: matrix does not match dims");
  if (!matlin::is_hermitian(mat, tol.herm))
    throw std::invalid_argument("make_density: matrix is not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > tol.trace ||
      std::abs(mat.trace().imag()) > tol.trace)
    throw std::invalid_argument("make_density: trace is not 1");
  const auto ev = matlin::herm_eigvals(mat, tol.herm);
  if (ev.front() < -tol.psd)
    throw std::invalid_argument("make_density: matrix is not positive semidefinite");
  return DensityMatrix{std::move(dims), std::move(mat)};
}

DensityMatrix to_density(const PureState& psi) {
  if (std::abs(psi.vec.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("to_density: state vector is not normalized");
  return make_density(psi.dims, psi.vec * psi.vec.adjoint());
}

PureState bell_phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState{{2, 2}, std::move(v)};
}

PureState schmidt_pure(double p, int d) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("schmidt_pure: p must lie in (0, 1)");
  if (d < 2) throw std::invalid_argument("schmidt_pure: d must be >= 2");
  Vector v = Vector::Zero(2 * d);
  v(0) = std::sqrt(p);       // |0>_A |0>_B
  v(3) = std::sqrt(1.0 - p); // |1>_A |1>_B
  return PureState{{d, 2}, std::move(v)};
}

DensityMatrix x_state(const std::array<double, 4>& diag,
                      const std::array<Complex, 2>& anti) {
  double sum = 0.0;
  for (double v : diag) {
    if (v < 0.0) throw std::invalid_argument("x_state: negative diagonal entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("x_state: diagonal must sum to 1");
  if (std::abs(anti[0]) > std::sqrt(diag[1] * diag[2]) + 1e-12)
    throw std::invalid_argument("x_state: |anti[0]| exceeds sqrt(d2*d3), state not positive");
  if (std::abs(anti[1]) > std::sqrt(diag[0] * diag[3]) + 1e-12)
    throw std::invalid_argument("x_state: |anti[1]| exceeds sqrt(d1*d4), state not positive");

  Matrix m = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) m(i, i) = diag[i];
  m(1, 2) = anti[0];
  m(2, 1) = std::conj(anti[0]);
  m(0, 3) = anti[1];
  m(3, 0) = std::conj(anti[1]);
  return make_density({2, 2}, std::move(m));
}

PureState random_pure(std::vector<int> dims, std::uint64_t seed) {
  const int d = product_dim(dims);
  Rng rng(seed);
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return PureState{std::move(dims), std::move(v)};
}

DensityMatrix random_density(std::vector<int> dims, std::uint64_t seed) {
  const int d = product_dim(dims);
  Rng rng(seed);
  const int terms = d + 1;
  std::vector<double> weights(terms);
  double wsum = 0.0;
  for (double& w : weights) {
    w = rng.uniform();
    wsum += w;
  }
  Matrix m = Matrix::Zero(d, d);
  Vector v(d);
  for (int k = 0; k < terms; ++k) {
    for (int i = 0; i < d; ++i) v(i) = Complex(rng.normal(), rng.normal());
    v /= v.norm();
    m += (weights[k] / wsum) * (v * v.adjoint());
  }
  return make_density(std::move(dims), std::move(m));
}

Matrix partial_transpose(const DensityMatrix& rho, int cut) {
  return matlin::partial_transpose(rho.mat, rho.dims, cut);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  Matrix reduced = matlin::partial_trace(rho.mat, rho.dims, keep);
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  std::vector<int> kept_dims;
  for (int k : kept) kept_dims.push_back(rho.dims[k]);
  return make_density(std::move(kept_dims), std::move(reduced));
}

}  // namespace esdlab::states
