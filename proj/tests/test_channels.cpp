#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esdlab/channels.hpp"
#include "esdlab/entanglement.hpp"
#include "oracles.hpp"

#include <array>
#include <cmath>

using namespace esdlab;
using matlin::Complex;
using matlin::Matrix;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Row-major vectorization of a 2x2 matrix.
Eigen::Vector4cd vec2(const Matrix& r) {
  Eigen::Vector4cd v;
  v << r(0, 0), r(0, 1), r(1, 0), r(1, 1);
  return v;
}

// Right-hand side of the thermal master equation assembled directly from the
// ladder operators; independent of the superoperator construction.
Matrix thermal_rhs(const Matrix& rho, double gamma, double n) {
  Matrix sp = Matrix::Zero(2, 2), sm = Matrix::Zero(2, 2);
  sp(1, 0) = 1.0;  // |1><0|
  sm(0, 1) = 1.0;  // |0><1|
  const Matrix spm = sp * sm;
  const Matrix smp = sm * sp;
  return (n + 1.0) * gamma / 2.0 *
             (2.0 * sm * rho * sp - spm * rho - rho * spm) +
         n * gamma / 2.0 * (2.0 * sp * rho * sm - smp * rho - rho * smp);
}

const std::array<double, 7> kTimeGrid{0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};

}  // namespace

TEST_CASE("thermal generator matches the master equation right-hand side") {
  const double gamma = 1.0, n = 1.0;
  const auto l = channels::lindblad_thermal(channels::BathParams::thermal(gamma, n));
  for (int k = 0; k < 2; ++k) {
    for (int m = 0; m < 2; ++m) {
      Matrix basis = Matrix::Zero(2, 2);
      basis(k, m) = 1.0;
      const Eigen::Vector4cd got = l.mat * vec2(basis);
      const Eigen::Vector4cd want = vec2(thermal_rhs(basis, gamma, n));
      CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}

TEST_CASE("vacuum bath annihilates the ground-state projector") {
  const auto l = channels::lindblad_thermal(channels::BathParams::thermal(1.0, 0.0));
  Matrix ground = Matrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK((l.mat * vec2(ground)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("generator conserves total population") {
  const auto l = channels::lindblad_thermal(channels::BathParams::thermal(1.3, 0.7));
  for (int col = 0; col < 4; ++col)
    CHECK(std::abs(l.mat(0, col) + l.mat(3, col)) <= 1e-15);
}

TEST_CASE("propagator basics") {
  const auto l = channels::lindblad_thermal(channels::BathParams::thermal(1.0, 0.5));
  CHECK(max_abs_diff(channels::propagator(l, 0.0).mat, Matrix::Identity(4, 4)) <=
        1e-15);
  CHECK_THROWS_AS(channels::propagator(l, -0.1), std::invalid_argument);

  // semigroup: V(t1 + t2) = V(t2) V(t1)
  const Matrix lhs = channels::propagator(l, 0.9).mat;
  const Matrix rhs = channels::propagator(l, 0.7).mat * channels::propagator(l, 0.2).mat;
  CHECK(max_abs_diff(lhs, rhs) <= 1e-11);
}

TEST_CASE("propagators are trace preserving and completely positive") {
  std::vector<channels::Superoperator> generators;
  generators.push_back(channels::lindblad_thermal(channels::BathParams::thermal(1.0, 1.0)));
  generators.push_back(
      channels::lindblad_squeezed(channels::BathParams::squeezed(1.0, 0.2, 0.5, 0.3)));
  for (const auto& l : generators) {
    for (double t : kTimeGrid) {
      const auto v = channels::propagator(l, t);
      // applying to every matrix unit preserves its trace
      for (int k = 0; k < 2; ++k) {
        for (int m = 0; m < 2; ++m) {
          Matrix basis = Matrix::Zero(2, 2);
          basis(k, m) = 1.0;
          const Eigen::Vector4cd out = v.mat * vec2(basis);
          const Complex tr = out(0) + out(3);
          CHECK(std::abs(tr - basis.trace()) <= 1e-11);
        }
      }
      const auto c = channels::choi(v);  // make_density enforces PSD
      CHECK(matlin::herm_eigvals(c.mat).front() >= -1e-9);
    }
  }
}

TEST_CASE("closed-form thermal propagator equals the exponential over the grid") {
  for (double gamma : {0.5, 1.0, 2.0}) {
    for (double n : {0.0, 0.5, 1.0, 3.0}) {
      const auto p = channels::BathParams::thermal(gamma, n);
      const auto l = channels::lindblad_thermal(p);
      for (double t : kTimeGrid) {
        const Matrix closed = channels::thermal_v_closed(p, t).mat;
        const Matrix viaexp = channels::propagator(l, t).mat;
        CHECK(max_abs_diff(closed, viaexp) <= 1e-10);
      }
    }
  }
}

TEST_CASE("thermal closed form endpoints") {
  const auto p = channels::BathParams::thermal(1.0, 0.0);
  CHECK(max_abs_diff(channels::thermal_v_closed(p, 0.0).mat,
                     Matrix::Identity(4, 4)) <= 1e-15);

  // vacuum bath at large t maps everything to |0><0|
  const auto v = channels::thermal_v_closed(p, 60.0);
  const auto rho = states::random_density({2}, 5);
  const Eigen::Vector4cd out = v.mat * vec2(rho.mat);
  CHECK(std::abs(out(0) - 1.0) <= 1e-8);
  CHECK(std::abs(out(3)) <= 1e-8);
}

TEST_CASE("thermal fixed point has excited population N/(2N+1)") {
  for (double n : {0.5, 1.0, 3.0}) {
    const double gamma = 1.0;
    const auto p = channels::BathParams::thermal(gamma, n);
    const double t = 50.0 / (gamma * (2.0 * n + 1.0));
    const auto v = channels::thermal_v_closed(p, t);
    Matrix ground = Matrix::Zero(2, 2);
    ground(0, 0) = 1.0;
    const Eigen::Vector4cd out = v.mat * vec2(ground);
    CHECK(std::abs(out(3).real() - n / (2.0 * n + 1.0)) <= 1e-8);
  }
}

TEST_CASE("squeezed closed form degenerates to thermal at r = 0") {
  for (double nth : {0.0, 0.2, 1.0}) {
    const auto sq = channels::BathParams::squeezed(1.0, nth, 0.0);
    const auto th = channels::BathParams::thermal(1.0, nth);
    for (double t : kTimeGrid)
      CHECK(max_abs_diff(channels::squeezed_v_closed(sq, t).mat,
                         channels::thermal_v_closed(th, t).mat) <= 1e-12);
  }
}

TEST_CASE("squeezed closed form equals the exponential of the generator") {
  const auto p = channels::BathParams::squeezed(1.0, 0.2, 0.5);
  CHECK(max_abs_diff(channels::squeezed_v_closed(p, 0.0).mat,
                     Matrix::Identity(4, 4)) <= 1e-15);
  const auto l = channels::lindblad_squeezed(p);
  CHECK(max_abs_diff(channels::squeezed_v_closed(p, 0.4).mat,
                     channels::propagator(l, 0.4).mat) <= 1e-10);

  // grid sweep including a nonzero squeezing phase
  for (double r : {0.0, 0.3, 1.0}) {
    for (double phi : {0.0, 1.1}) {
      const auto q = channels::BathParams::squeezed(2.0, 0.4, r, phi);
      const auto lq = channels::lindblad_squeezed(q);
      for (double t : kTimeGrid)
        CHECK(max_abs_diff(channels::squeezed_v_closed(q, t).mat,
                           channels::propagator(lq, t).mat) <= 1e-10);
    }
  }
}

TEST_CASE("nonzero omega adds pure phases on the coherences") {
  const double omega = 1.7, t = 0.6;
  const auto p = channels::BathParams::squeezed(1.0, 0.3, 0.4, 0.2, omega);
  const Matrix withphase = channels::squeezed_v_closed(p, t).mat;
  const auto l = channels::lindblad_squeezed(p);
  Matrix phase = Matrix::Identity(4, 4);
  phase(1, 1) = std::exp(Complex(0, -omega * t));
  phase(2, 2) = std::exp(Complex(0, omega * t));
  CHECK(max_abs_diff(withphase, Matrix(phase * channels::propagator(l, t).mat)) <=
        1e-12);
}

TEST_CASE("QND map basics") {
  auto zero = [](double) { return 0.0; };
  CHECK(max_abs_diff(channels::qnd_v(0.0, zero, 3.0).mat, Matrix::Identity(4, 4)) <=
        1e-15);

  auto quad = [](double t) { return t * t; };
  const auto v = channels::qnd_v(0.9, quad, 1.0);
  const auto rho = states::random_density({2}, 99);
  const Eigen::Vector4cd out = v.mat * vec2(rho.mat);
  CHECK(std::abs(out(0) - rho.mat(0, 0)) == 0.0);  // populations frozen
  CHECK(std::abs(out(3) - rho.mat(1, 1)) == 0.0);
  CHECK(std::abs(out(1)) ==
        doctest::Approx(std::exp(-1.0) * std::abs(rho.mat(0, 1))).epsilon(1e-12));

  auto bad = [](double) { return -1.0; };
  CHECK_THROWS_AS(channels::qnd_v(0.0, bad, 1.0), std::invalid_argument);
}

TEST_CASE("choi of the identity channel is the maximally entangled state") {
  const auto c = channels::choi(channels::identity_superop(2));
  CHECK(max_abs_diff(c.mat, states::to_density(states::bell_phi_plus()).mat) <=
        1e-15);
}

TEST_CASE("choi of the vacuum thermal channel has concurrence exp(-gamma t/2)") {
  const auto p = channels::BathParams::thermal(1.0, 0.0);
  for (double t : {0.2, 0.7, 1.5, 3.0}) {
    const auto c = channels::choi(channels::thermal_v_closed(p, t));
    CHECK(entanglement::concurrence(c) ==
          doctest::Approx(std::exp(-t / 2.0)).epsilon(1e-11));
  }
}

TEST_CASE("choi of the QND map") {
  auto quad = [](double t) { return t * t; };
  const double t = 1.3;
  const auto c = channels::choi(channels::qnd_v(0.4, quad, t));
  CHECK(c.mat(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.mat(3, 3).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(c.mat(1, 1)) <= 1e-15);
  CHECK(std::abs(c.mat(2, 2)) <= 1e-15);
  CHECK(std::abs(c.mat(0, 3)) ==
        doctest::Approx(0.5 * std::exp(-t * t)).epsilon(1e-12));
}

TEST_CASE("apply_to_subsystem basics") {
  const auto rho = states::random_density({2, 2}, 12);
  const auto same =
      channels::apply_to_subsystem(channels::identity_superop(2), rho, 0);
  CHECK(max_abs_diff(same.mat, rho.mat) <= 1e-15);

  const auto p = channels::BathParams::thermal(1.0, 1.0);
  const auto v = channels::thermal_v_closed(p, 0.4);
  const auto bell = states::to_density(states::bell_phi_plus());
  CHECK(max_abs_diff(channels::apply_to_subsystem(v, bell, 1).mat,
                     channels::choi(v).mat) <= 1e-14);

  CHECK_THROWS_AS(channels::apply_to_subsystem(v, rho, 5), std::invalid_argument);
  const auto rho3 = states::random_density({3, 2}, 77);
  CHECK_THROWS_AS(channels::apply_to_subsystem(v, rho3, 0), std::invalid_argument);
}

TEST_CASE("sequential application equals the joint Kronecker superoperator") {
  const auto p = channels::BathParams::squeezed(1.0, 0.3, 0.4, 0.7);
  const auto v = channels::squeezed_v_closed(p, 0.5);
  const auto rho = states::random_density({2, 2, 2}, 2024);

  auto seq = rho;
  for (int q = 0; q < 3; ++q) seq = channels::apply_to_subsystem(v, seq, q);

  const Matrix joint = matlin::kron(matlin::kron(v.mat, v.mat), v.mat);
  // interleaved vectorization: per-qubit (row, col) digit pairs
  Eigen::VectorXcd vec(64);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      int idx = 0;
      for (int q = 0; q < 3; ++q) {
        const int a = (i >> (2 - q)) & 1;
        const int b = (j >> (2 - q)) & 1;
        idx = idx * 4 + (a * 2 + b);
      }
      vec(idx) = rho.mat(i, j);
    }
  }
  const Eigen::VectorXcd out = joint * vec;
  Matrix expect(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      int idx = 0;
      for (int q = 0; q < 3; ++q) {
        const int a = (i >> (2 - q)) & 1;
        const int b = (j >> (2 - q)) & 1;
        idx = idx * 4 + (a * 2 + b);
      }
      expect(i, j) = out(idx);
    }
  }
  CHECK(max_abs_diff(seq.mat, expect) <= 1e-13);
}

TEST_CASE("entanglement breaking detection") {
  CHECK(channels::is_entanglement_breaking(channels::depolarizing(2, 1.0)));
  CHECK_FALSE(channels::is_entanglement_breaking(channels::identity_superop(2)));

  const auto p = channels::BathParams::thermal(1.0, 1.0);
  CHECK(channels::is_entanglement_breaking(channels::thermal_v_closed(p, 5.0)));
  CHECK_FALSE(channels::is_entanglement_breaking(channels::thermal_v_closed(p, 0.1)));
}

TEST_CASE("bath parameter validation names the violated relation") {
  channels::BathParams p;
  p.gamma = 1.0;
  p.n_mean = 1.0;
  p.n_th = 0.2;
  p.r = 0.0;
  CHECK_THROWS_WITH_AS(p.validate(),
                       "BathParams: violated relation 2N+1 = cosh(2r)(2N_th+1)",
                       std::invalid_argument);
  CHECK_THROWS_AS(channels::BathParams::thermal(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(channels::BathParams::thermal(1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(channels::BathParams::squeezed(1.0, 0.5, -0.1),
                  std::invalid_argument);
}
