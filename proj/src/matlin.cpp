#include "esdlab/matlin.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <stdexcept>

namespace esdlab::matlin {

namespace {

int checked_total_dim(std::span<const int> dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  int d = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("subsystem dimensions must be >= 1");
    d *= x;
  }
  return d;
}

// Composite index <-> per-factor digits, first factor slowest.
void to_digits(int idx, std::span<const int> dims, int* out) {
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    out[k] = idx % dims[k];
    idx /= dims[k];
  }
}

int from_digits(std::span<const int> dims, const int* digits) {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("expm: matrix must be square");
  return a.exp();
}

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<double> herm_eigvals(const Matrix& h, double tol) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("herm_eigvals: matrix must be square");
  if (!is_hermitian(h, tol))
    throw std::invalid_argument("herm_eigvals: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("herm_eigvals: eigensolver did not converge");
  const auto& ev = es.eigenvalues();  // ascending
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

std::vector<Complex> eigvals_general(const Matrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eigvals_general: matrix must be square");
  Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigvals_general: eigensolver did not converge");
  const auto& ev = es.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

Matrix partial_transpose(const Matrix& rho, std::span<const int> dims, int cut) {
  const int single[1] = {cut};
  return partial_transpose(rho, dims, std::span<const int>(single, 1));
}

Matrix partial_transpose(const Matrix& rho, std::span<const int> dims,
                         std::span<const int> cuts) {
  const int d = checked_total_dim(dims);
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("partial_transpose: matrix does not match dims");
  const int n = static_cast<int>(dims.size());
  for (int c : cuts)
    if (c < 0 || c >= n)
      throw std::invalid_argument("partial_transpose: invalid subsystem index");

  Matrix out(d, d);
  std::vector<int> di(n), dj(n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      to_digits(i, dims, di.data());
      to_digits(j, dims, dj.data());
      for (int c : cuts) std::swap(di[c], dj[c]);
      out(from_digits(dims, di.data()), from_digits(dims, dj.data())) = rho(i, j);
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& rho, std::span<const int> dims,
                     std::span<const int> keep) {
  const int d = checked_total_dim(dims);
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("partial_trace: matrix does not match dims");
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  const int n = static_cast<int>(dims.size());

  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (int k : kept)
    if (k < 0 || k >= n)
      throw std::invalid_argument("partial_trace: invalid subsystem index");

  std::vector<int> kept_dims;
  for (int k : kept) kept_dims.push_back(dims[k]);
  const int dk = checked_total_dim(kept_dims);

  std::vector<bool> is_kept(n, false);
  for (int k : kept) is_kept[k] = true;

  Matrix out = Matrix::Zero(dk, dk);
  std::vector<int> di(n), dj(n);
  std::vector<int> ki(kept.size()), kj(kept.size());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      to_digits(i, dims, di.data());
      to_digits(j, dims, dj.data());
      bool diagonal_on_traced = true;
      for (int k = 0; k < n; ++k) {
        if (!is_kept[k] && di[k] != dj[k]) {
          diagonal_on_traced = false;
          break;
        }
      }
      if (!diagonal_on_traced) continue;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        ki[k] = di[kept[k]];
        kj[k] = dj[kept[k]];
      }
      out(from_digits(kept_dims, ki.data()), from_digits(kept_dims, kj.data())) +=
          rho(i, j);
    }
  }
  return out;
}

}  // namespace esdlab::matlin
