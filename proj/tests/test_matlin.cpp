#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esdlab/channels.hpp"
#include "esdlab/matlin.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <array>

using namespace esdlab;
using matlin::Complex;
using matlin::Matrix;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(matlin::kron(i2, i2), Matrix::Identity(4, 4)) == 0.0);

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1;
  a(1, 1) = 2;
  b(0, 0) = 3;
  b(1, 1) = 4;
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 3;
  expect(1, 1) = 4;
  expect(2, 2) = 6;
  expect(3, 3) = 8;
  CHECK(max_abs_diff(matlin::kron(a, b), expect) == 0.0);
}

TEST_CASE("kron associativity and mixed product") {
  const Matrix a = oracles::random_matrix(2, 2, 11);
  const Matrix b = oracles::random_matrix(2, 2, 12);
  const Matrix c = oracles::random_matrix(2, 2, 13);
  const Matrix d = oracles::random_matrix(2, 2, 14);

  CHECK(max_abs_diff(matlin::kron(a, matlin::kron(b, c)),
                     matlin::kron(matlin::kron(a, b), c)) <= 1e-12);
  // (A (x) B)(C (x) D) = AC (x) BD
  CHECK(max_abs_diff(matlin::kron(a, b) * matlin::kron(c, d),
                     matlin::kron(Matrix(a * c), Matrix(b * d))) <= 1e-12);
}

TEST_CASE("expm trivial cases") {
  CHECK(max_abs_diff(matlin::expm(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)) <=
        1e-15);

  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = Complex(0.3, -0.2);
  d(1, 1) = Complex(-1.5, 0.4);
  const Matrix e = matlin::expm(d);
  CHECK(std::abs(e(0, 0) - std::exp(d(0, 0))) <= 1e-14);
  CHECK(std::abs(e(1, 1) - std::exp(d(1, 1))) <= 1e-14);
  CHECK(std::abs(e(0, 1)) == 0.0);

  CHECK_THROWS_AS(matlin::expm(Matrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("expm matches the extended-precision Taylor oracle") {
  const auto p = channels::BathParams::thermal(1.0, 1.0);
  const Matrix l = channels::lindblad_thermal(p).mat;
  const Matrix got = matlin::expm(Matrix(l * 0.3));
  const Matrix want = oracles::expm_taylor(Matrix(l * 0.3));
  CHECK(max_abs_diff(got, want) <= 1e-12);

  // larger norm input
  const Matrix big = oracles::random_hermitian(4, 21) * 20.0;
  CHECK(max_abs_diff(matlin::expm(big), oracles::expm_taylor(big)) <=
        1e-12 * std::exp(matlin::herm_eigvals(big).back()));
}

TEST_CASE("expm of commuting matrices factorizes") {
  Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
  a(0, 0) = 0.4;
  a(1, 1) = Complex(-0.3, 0.2);
  a(2, 2) = 1.1;
  b(0, 0) = Complex(0.0, -0.7);
  b(1, 1) = 0.9;
  b(2, 2) = -0.5;
  CHECK(max_abs_diff(matlin::expm(Matrix(a + b)),
                     Matrix(matlin::expm(a) * matlin::expm(b))) <= 1e-11);
}

TEST_CASE("herm_eigvals basics") {
  const auto id = matlin::herm_eigvals(Matrix::Identity(2, 2));
  CHECK(id == std::vector<double>{1.0, 1.0});

  Matrix sz = Matrix::Zero(2, 2);
  sz(0, 0) = 1;
  sz(1, 1) = -1;
  const auto zeig = matlin::herm_eigvals(sz);
  CHECK(zeig.front() == doctest::Approx(-1.0));
  CHECK(zeig.back() == doctest::Approx(1.0));

  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(matlin::herm_eigvals(nh), std::invalid_argument);
}

TEST_CASE("herm_eigvals matches the characteristic-polynomial oracle") {
  for (unsigned seed : {31u, 32u, 33u}) {
    const Matrix h = oracles::random_hermitian(4, seed);
    auto got = matlin::herm_eigvals(h);
    auto roots = oracles::poly_roots(oracles::char_poly(h));
    std::vector<double> want;
    for (auto r : roots) {
      CHECK(std::abs(r.imag()) <= 1e-9);
      want.push_back(r.real());
    }
    std::sort(want.begin(), want.end());
    for (std::size_t k = 0; k < got.size(); ++k)
      CHECK(got[k] == doctest::Approx(want[k]).epsilon(0).scale(0).epsilon(1e-9));
  }
}

TEST_CASE("herm_eigvals sum equals trace") {
  const Matrix h = oracles::random_hermitian(4, 77);
  double sum = 0;
  for (double v : matlin::herm_eigvals(h)) sum += v;
  CHECK(sum == doctest::Approx(h.trace().real()).epsilon(1e-10));
}

TEST_CASE("eigvals_general basics") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = Complex(0, 1);
  d(1, 1) = Complex(0, -1);
  auto ev = matlin::eigvals_general(d);
  std::sort(ev.begin(), ev.end(),
            [](Complex a, Complex b) { return a.imag() < b.imag(); });
  CHECK(std::abs(ev[0] - Complex(0, -1)) <= 1e-14);
  CHECK(std::abs(ev[1] - Complex(0, 1)) <= 1e-14);
}

TEST_CASE("eigvals_general spectrum of the Bell spin-flip product") {
  const auto bell = states::to_density(states::bell_phi_plus());
  // The Bell state is spin-flip invariant, so rho * rho_tilde = rho^2 = rho.
  Matrix f = Matrix::Zero(4, 4);
  f(0, 3) = -1;
  f(1, 2) = 1;
  f(2, 1) = 1;
  f(3, 0) = -1;
  const Matrix prod = bell.mat * (f * bell.mat.conjugate() * f);
  auto ev = matlin::eigvals_general(prod);
  std::vector<double> re;
  for (auto l : ev) {
    CHECK(std::abs(l.imag()) <= 1e-12);
    re.push_back(l.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(re[0]) <= 1e-12);
  CHECK(std::abs(re[1]) <= 1e-12);
  CHECK(std::abs(re[2]) <= 1e-12);
}

TEST_CASE("eigvals_general trace identity") {
  const Matrix a = oracles::random_matrix(4, 4, 55);
  Complex sum = 0;
  for (auto l : matlin::eigvals_general(a)) sum += l;
  CHECK(std::abs(sum - a.trace()) <= 1e-10);
}

TEST_CASE("partial_transpose acts on one factor only") {
  const Matrix ra0 = oracles::random_hermitian(2, 61);
  const Matrix rb0 = oracles::random_hermitian(2, 62);
  const Matrix rho = matlin::kron(ra0, rb0);
  const std::array dims{2, 2};
  CHECK(max_abs_diff(matlin::partial_transpose(rho, dims, 1),
                     matlin::kron(ra0, rb0.transpose())) <= 1e-14);

  // involution, elementwise exact
  const Matrix pt2 = matlin::partial_transpose(
      matlin::partial_transpose(rho, dims, 0), dims, 0);
  CHECK(max_abs_diff(pt2, rho) == 0.0);

  CHECK_THROWS_AS(matlin::partial_transpose(rho, dims, 2), std::invalid_argument);
}

TEST_CASE("partial transpose of the Bell state has eigenvalue -1/2") {
  const auto bell = states::to_density(states::bell_phi_plus());
  const auto ev =
      matlin::herm_eigvals(matlin::partial_transpose(bell.mat, bell.dims, 1));
  CHECK(ev.front() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial_transpose preserves trace and Hermiticity") {
  const auto rho = states::random_density({2, 2}, 909);
  const Matrix pt = matlin::partial_transpose(rho.mat, rho.dims, 0);
  CHECK(std::abs(pt.trace().real() - 1.0) <= 1e-12);
  CHECK(matlin::is_hermitian(pt, 1e-12));
}

TEST_CASE("partial_trace basics") {
  const Matrix ra0 = oracles::random_hermitian(2, 71);
  const Matrix rb0 = oracles::random_hermitian(2, 72);
  // normalize to unit traces so the product is a product state
  const Matrix ra = ra0 * ra0.adjoint() / (ra0 * ra0.adjoint()).trace();
  const Matrix rb = rb0 * rb0.adjoint() / (rb0 * rb0.adjoint()).trace();
  const Matrix rho = matlin::kron(ra, rb);
  const std::array dims{2, 2};
  CHECK(max_abs_diff(matlin::partial_trace(rho, dims, std::array{0}), ra) <= 1e-13);

  const auto bell = states::to_density(states::bell_phi_plus());
  CHECK(max_abs_diff(matlin::partial_trace(bell.mat, bell.dims, std::array{0}),
                     Matrix(Matrix::Identity(2, 2) / 2.0)) <= 1e-14);

  CHECK_THROWS_AS(matlin::partial_trace(rho, dims, std::span<const int>{}),
                  std::invalid_argument);
}

TEST_CASE("partial_trace preserves trace and positivity on random 3-qubit states") {
  const auto rho = states::random_density({2, 2, 2}, 31337);
  for (auto keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
    const Matrix red = matlin::partial_trace(rho.mat, rho.dims, keep);
    CHECK(std::abs(red.trace().real() - 1.0) <= 1e-12);
    CHECK(matlin::herm_eigvals(red).front() >= -1e-10);
  }
}
