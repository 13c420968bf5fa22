#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esdlab/entanglement.hpp"
#include "esdlab/states.hpp"

#include <cmath>

using namespace esdlab;
using matlin::Complex;
using matlin::Matrix;

TEST_CASE("bell_phi_plus") {
  const auto bell = states::bell_phi_plus();
  CHECK(bell.vec.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bell.vec(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(bell.vec(3).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(bell.vec(1)) == 0.0);
  CHECK(std::abs(bell.vec(2)) == 0.0);

  const auto rho = states::to_density(bell);
  for (int side : {0, 1}) {
    const std::array keep{side};
    const Matrix marg = matlin::partial_trace(rho.mat, rho.dims, keep);
    CHECK((marg - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK(entanglement::concurrence(rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schmidt_pure") {
  const auto half = states::schmidt_pure(0.5, 2);
  CHECK((half.vec - states::bell_phi_plus().vec).norm() <= 1e-15);

  const auto chi = states::schmidt_pure(0.3, 3);
  CHECK(chi.vec.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entanglement::concurrence_pure_d2(chi) ==
        doctest::Approx(2.0 * std::sqrt(0.3 * 0.7)).epsilon(1e-12));

  // qubit-side marginal spectrum {p, 1-p}
  const auto rho = states::to_density(chi);
  const std::array keep{1};
  const auto ev =
      matlin::herm_eigvals(matlin::partial_trace(rho.mat, rho.dims, keep));
  CHECK(ev.front() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(ev.back() == doctest::Approx(0.7).epsilon(1e-12));

  CHECK_THROWS_AS(states::schmidt_pure(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(states::schmidt_pure(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(states::schmidt_pure(0.5, 1), std::invalid_argument);
}

TEST_CASE("x_state") {
  const auto mixed = states::x_state({0.25, 0.25, 0.25, 0.25}, {0.0, 0.0});
  CHECK((mixed.mat - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() <= 1e-15);

  const auto bell = states::x_state({0.5, 0.0, 0.0, 0.5}, {0.0, 0.5});
  CHECK((bell.mat - states::to_density(states::bell_phi_plus()).mat)
            .cwiseAbs()
            .maxCoeff() <= 1e-15);

  // a generic valid X state passes the density-matrix invariants
  const auto x = states::x_state({0.4, 0.2, 0.3, 0.1},
                                 {Complex(0.1, 0.05), Complex(0.05, -0.1)});
  CHECK(std::abs(x.mat.trace().real() - 1.0) <= 1e-12);
  CHECK(matlin::herm_eigvals(x.mat).front() >= -1e-12);

  CHECK_THROWS_AS(states::x_state({0.5, 0.0, 0.0, 0.5}, {Complex(0.1, 0.0), 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(states::x_state({0.6, 0.0, 0.0, 0.5}, {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("random states are deterministic in the seed") {
  const auto a = states::random_pure({3, 2}, 42);
  const auto b = states::random_pure({3, 2}, 42);
  CHECK((a.vec - b.vec).norm() == 0.0);
  const auto c = states::random_pure({3, 2}, 43);
  CHECK((a.vec - c.vec).norm() > 1e-3);

  const auto ra = states::random_density({2, 2}, 7);
  const auto rb = states::random_density({2, 2}, 7);
  CHECK((ra.mat - rb.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("random states satisfy norm and trace invariants") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto psi = states::random_pure({2, 2}, seed);
    CHECK(std::abs(psi.vec.norm() - 1.0) <= 1e-12);
    const auto rho = states::random_density({2, 2}, seed);
    CHECK(std::abs(rho.mat.trace().real() - 1.0) <= 1e-12);
    CHECK(matlin::herm_eigvals(rho.mat).front() >= -1e-12);
  }
}

TEST_CASE("mean purity of random densities is sane") {
  double acc = 0.0;
  const int draws = 100;
  for (int k = 0; k < draws; ++k) {
    const auto rho = states::random_density({2, 2}, 1000 + k);
    acc += (rho.mat * rho.mat).trace().real();
  }
  const double mean = acc / draws;
  CHECK(mean > 0.0);
  CHECK(mean <= 1.0);
}

TEST_CASE("make_density rejects bad inputs") {
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  m(0, 1) = Complex(0.2, 0.1);  // not Hermitian
  CHECK_THROWS_AS(states::make_density({2, 2}, m), std::invalid_argument);

  CHECK_THROWS_AS(states::make_density({2, 2}, Matrix(Matrix::Identity(4, 4))),
                  std::invalid_argument);  // trace 4

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(states::make_density({2}, neg), std::invalid_argument);
}
