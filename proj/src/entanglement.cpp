#include "esdlab/entanglement.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esdlab::entanglement {

namespace {

using matlin::Complex;
using matlin::Matrix;

const Matrix& spin_flip_operator() {
  // sigma_y (x) sigma_y; real in the computational basis.
  static const Matrix f = [] {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
  }();
  return f;
}

void require_two_qubits(const DensityMatrix& rho, const char* who) {
  if (rho.dims != std::vector<int>{2, 2})
    throw std::invalid_argument(std::string(who) + ": expected a 2 x 2 system");
}

double binary_entropy_bits(double p) {
  double h = 0.0;
  if (p > 0.0 && p < 1.0)
    h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
  return h;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  // The spectrum of rho * rho_tilde defines C, but the plain non-Hermitian
  // eigensolve loses half the digits on the defective rank-deficient products
  // pure states produce. With rho = B B@ the nonzero spectrum equals that of
  // M M@ for M = B@ F conj(B), so sqrt(lambda_i) are the singular values of M
  // and come out at full precision.
  const Matrix& f = spin_flip_operator();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("concurrence: eigensolver failed");
  Matrix b(4, 4);
  for (int k = 0; k < 4; ++k)
    b.col(k) = es.eigenvectors().col(k) *
               std::sqrt(std::max(0.0, es.eigenvalues()(k)));
  const Matrix m = b.adjoint() * f * b.conjugate();
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();  // descending
  const double c = s(0) - s(1) - s(2) - s(3);
  return std::max(0.0, c);
}

double concurrence_pure_d2(const PureState& chi) {
  if (chi.dims.size() != 2 || chi.dims[1] != 2)
    throw std::invalid_argument("concurrence_pure_d2: expected a d x 2 system");
  if (std::abs(chi.vec.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("concurrence_pure_d2: state vector is not normalized");
  const int d = chi.dims[0];
  Matrix coeff(d, 2);
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < 2; ++a) coeff(i, a) = chi.vec(i * 2 + a);
  const Matrix rho_b = coeff.adjoint() * coeff;  // 2 x 2 qubit marginal
  const double det =
      (rho_b(0, 0) * rho_b(1, 1) - rho_b(0, 1) * rho_b(1, 0)).real();
  return 2.0 * std::sqrt(std::max(0.0, det));
}

double concurrence_qubit_support(const DensityMatrix& rho) {
  if (rho.dims.size() != 2 || rho.dims[1] != 2)
    throw std::invalid_argument("concurrence_qubit_support: expected a d x 2 system");
  const int d = rho.dims[0];
  if (d == 2) return concurrence(rho);

  // The first-factor marginal; its support carries the whole state.
  const Matrix rho_a = matlin::partial_trace(rho.mat, rho.dims, std::array{0});
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("concurrence_qubit_support: eigensolver failed");

  // Rotate the two largest-weight eigenvectors onto |0>, |1>.
  Matrix u(d, d);
  for (int k = 0; k < d; ++k) u.col(k) = es.eigenvectors().col(d - 1 - k);
  const Matrix rot = matlin::kron(u.adjoint(), Matrix::Identity(2, 2));
  const Matrix rotated = rot * rho.mat * rot.adjoint();

  Matrix block = rotated.topLeftCorner(4, 4);
  const double tr = block.trace().real();
  if (tr < 1.0 - 1e-9)
    throw std::runtime_error(
        "concurrence_qubit_support: first factor is not supported on two levels");
  block /= tr;
  return concurrence(states::make_density({2, 2}, std::move(block)));
}

bool is_ppt(const DensityMatrix& rho, int cut, double tol) {
  const Matrix pt = matlin::partial_transpose(rho.mat, rho.dims, cut);
  return matlin::herm_eigvals(pt).front() >= -tol;
}

double negativity(const DensityMatrix& rho, int cut) {
  const int single[1] = {cut};
  return negativity_cut(rho, std::span<const int>(single, 1));
}

double negativity_cut(const DensityMatrix& rho, std::span<const int> cut_set) {
  const Matrix pt = matlin::partial_transpose(rho.mat, rho.dims, cut_set);
  double neg = 0.0;
  for (double l : matlin::herm_eigvals(pt))
    if (l < 0.0) neg -= l;
  return neg;
}

double eof_two_qubit(const DensityMatrix& rho) {
  const double c = std::min(1.0, concurrence(rho));
  const double x = (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))) / 2.0;
  return binary_entropy_bits(x);
}

double factorization_residual(const PureState& chi,
                              const channels::Superoperator& v) {
  if (v.dim != 2)
    throw std::invalid_argument("factorization_residual: channel must act on a qubit");
  if (chi.dims.size() != 2 || chi.dims[1] != 2)
    throw std::invalid_argument("factorization_residual: expected a d x 2 input");

  const auto evolved = channels::apply_to_subsystem(v, states::to_density(chi), 1);
  const double left = (chi.dims[0] == 2) ? concurrence(evolved)
                                         : concurrence_qubit_support(evolved);
  const double right = concurrence_pure_d2(chi) * concurrence(channels::choi(v));
  return std::abs(left - right);
}

}  // namespace esdlab::entanglement
