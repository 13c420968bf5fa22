// channels.hpp — Lindblad generators and propagators for local qubit baths
// (thermal, squeezed-thermal, QND dephasing), Choi states, and channel
// application to subsystems.
//
// Superoperators act on row-major vectorized density matrices: a d x d state
// rho flattens to index i*d + j for entry rho(i, j). For one qubit the
// component order is (rho00, rho01, rho10, rho11) with |0> the ground state
// and sigma_+ = |1><0|.

#pragma once

#include "esdlab/states.hpp"

#include <functional>

namespace esdlab::channels {

using matlin::Complex;
using matlin::Matrix;

// Physical bath parameters. The effective mean occupation N, the thermal
// photon number N_th and the squeezing magnitude r are tied together by
// 2N + 1 = cosh(2r)(2N_th + 1); construct through the factories to keep the
// relation exact.
struct BathParams {
  double gamma = 1.0;   // spontaneous decay rate (gamma0 in the squeezed model)
  double n_mean = 0.0;  // effective mean occupation N
  double n_th = 0.0;    // thermal photon number N_th
  double r = 0.0;       // squeezing magnitude
  double phi = 0.0;     // squeezing phase
  double omega = 0.0;   // free-rotation rate; puts e^{-i omega t} phases on coherences
  double big_phi = 0.0; // phase of the anomalous coherence coupling in the closed form

  static BathParams thermal(double gamma, double n_mean);
  static BathParams squeezed(double gamma0, double n_th, double r,
                             double phi = 0.0, double omega = 0.0);

  // a = sinh(2r)(2 N_th + 1); the anomalous coupling magnitude is a/2.
  double anomalous() const;

  // Throws std::invalid_argument naming the violated relation.
  void validate() const;
};

// d^2 x d^2 matrix acting on row-major vectorized d x d density matrices.
struct Superoperator {
  int dim = 2;  // subsystem dimension d
  Matrix mat;   // d^2 x d^2
};

Superoperator identity_superop(int d);

// rho -> (1 - w) rho + w tr(rho) I/d.
Superoperator depolarizing(int d, double w);

// Generator of the thermal master equation
//   drho/dt = (N+1)gamma/2 [2 s- rho s+ - s+s- rho - rho s+s-]
//           +     N gamma/2 [2 s+ rho s- - s-s+ rho - rho s-s+]
// (no Hamiltonian part).
Superoperator lindblad_thermal(const BathParams& p);

// Squeezed-bath generator: thermal terms with gamma0, N plus the anomalous
// couplings -gamma0 M s+ rho s+ - gamma0 M* s- rho s- where
// M = -(1/2) sinh(2r) e^{i phi} (2 N_th + 1).
Superoperator lindblad_squeezed(const BathParams& p);

// exp(L t). Throws std::invalid_argument for t < 0.
Superoperator propagator(const Superoperator& l, double t);

// Closed-form thermal propagator, equal to propagator(lindblad_thermal(p), t).
// Diagonal weights (1+x^2)/2 +- x*cot(theta) and transition weights
// y1 = 2x cot(theta) N, y2 = 2x cot(theta)(1+N), with
// cot(theta) = (1-x^2)/(2x(1+2N)) and x = exp(-gamma(1+2N)t/2).
Superoperator thermal_v_closed(const BathParams& p, double t);

// Closed-form squeezed propagator. At omega = 0 it equals
// propagator(lindblad_squeezed(p), t) with the coherence block
//   y = x cosh(gamma0 a t / 2),  z = x sinh(gamma0 a t / 2) e^{i big_phi};
// for omega != 0 the coherences additionally rotate by e^{-+ i omega t}.
// At r = 0 it degenerates to thermal_v_closed with gamma = gamma0, N = N_th.
Superoperator squeezed_v_closed(const BathParams& p, double t);

// QND dephasing map: populations frozen, coherences damped by e^{-g(t)} and
// rotated by e^{-+ i omega t}. The exponent g absorbs every constant scale.
// Throws std::invalid_argument when g(t) < 0.
Superoperator qnd_v(double omega, const std::function<double(double)>& g, double t);

// Trace-1 Choi state (I (x) V)(|phi+><phi+|) on d (x) d.
states::DensityMatrix choi(const Superoperator& v);

// Apply the channel to tensor factor `which` of `rho`.
states::DensityMatrix apply_to_subsystem(const Superoperator& v,
                                         const states::DensityMatrix& rho,
                                         int which);

// A qubit channel is entanglement breaking iff its Choi state is PPT.
bool is_entanglement_breaking(const Superoperator& v, double tol = 1e-10);

}  // namespace esdlab::channels
