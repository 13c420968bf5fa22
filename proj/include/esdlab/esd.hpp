// esd.hpp — entanglement-sudden-death detection and timing: separability
// transition of the Choi state, closed-form transition-time estimates,
// squeezed-bath separability conditions, n-qubit and d x d certificates.

#pragma once

#include "esdlab/entanglement.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace esdlab::esd {

enum class Family { thermal, squeezed, qnd };

// A bath family together with its parameters; v_at(t) builds the closed-form
// propagator.
struct ChannelSpec {
  Family family = Family::thermal;
  channels::BathParams bath{};
  double qnd_omega = 0.0;
  std::function<double(double)> qnd_g;  // dephasing exponent, time -> g >= 0

  static ChannelSpec thermal(double gamma, double n_mean);
  static ChannelSpec squeezed(double gamma0, double n_th, double r,
                              double phi = 0.0, double omega = 0.0);
  static ChannelSpec qnd(double omega, std::function<double(double)> g);
  static ChannelSpec qnd_power(double omega, double scale, double power);

  channels::Superoperator v_at(double t) const;
};

// Choi-state diagnostics at one instant, evaluated from the closed-form
// X-structure in extended precision so that signs stay meaningful even when
// the least partial-transpose eigenvalue is far below double roundoff.
struct ChoiPoint {
  double min_pt_eigenvalue = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
  bool npt = false;  // sign of the least PT eigenvalue, exact in extended precision
};
ChoiPoint choi_point(const ChannelSpec& spec, double t);

struct LabeledTime {
  double value = 0.0;
  std::string label;
};

// Result of a separability-transition search on choi(V(t)).
struct EsdReport {
  bool found = false;  // false: no transition within the horizon ("never")
  double transition_time = 0.0;
  double horizon = 0.0;
  double bracket_low = 0.0;   // NPT side
  double bracket_high = 0.0;  // PPT side (= transition_time)
  double min_pt_low = 0.0;
  double min_pt_high = 0.0;
  double min_pt_at_horizon = 0.0;
  int iterations = 0;
  std::vector<LabeledTime> closed_forms;
};

// Scan a geometric time grid for the first sign change of the least PT
// eigenvalue of choi(V(t)), verify the crossing is unique on the grid, then
// bisect the bracketing interval down to `precision`.
EsdReport choi_ppt_time(const ChannelSpec& spec, double horizon, double precision,
                        int scan_points = 64);

// Closed-form estimate solving sinh(gamma(1+2N)t) = 2 sqrt(N(N+1))/(1+2N).
// Empty for N = 0 (no solution).
std::optional<double> thermal_sinh_time(const channels::BathParams& p);

// Exact thermal transition time: root of the partial-transpose block
// determinant beta*mu - y^2, i.e. sqrt(N(N+1))(1-x^2) = x(2N+1). Empty for N = 0.
std::optional<double> thermal_block_time(const channels::BathParams& p);

// Left-hand sides of the squeezed-bath separability conditions at time t.
// c1a, c1b are the partial-transpose block determinants alpha*nu - |z|^2 and
// beta*mu - y^2 (separability of the Choi state iff both >= 0); c2, c3 are the
// companion sinh/cosh forms, reported for comparison only.
struct SqueezedConditions {
  double c1a = 0.0;
  double c1b = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};
SqueezedConditions squeezed_conditions(const channels::BathParams& p, double t);

// ESD time as a function of the squeezing magnitude at fixed N_th.
std::vector<std::pair<double, EsdReport>> squeezing_effect(
    const channels::BathParams& base, std::span<const double> r_values,
    double horizon, double precision = 1e-9);

// n-qubit certificate: once the single-qubit channel is entanglement breaking
// (time t* from choi_ppt_time), applying it to every qubit leaves any n-qubit
// state fully separable. Spot-checked on GHZ, W and five random pure states:
// every bipartition negativity at t* under the n-fold channel, plus a
// tightness probe — the one-sided channel on qubit 0 of GHZ at 0.9 t* must
// still leave an NPT cut.
struct NQubitCertificate {
  EsdReport report;
  bool channel_breaking_at_transition = false;
  struct StateCheck {
    std::string state;
    double max_cut_negativity = 0.0;
  };
  std::vector<StateCheck> checks;
  double one_sided_min_pt_before = 0.0;  // most negative cut eigenvalue at 0.9 t*
};
NQubitCertificate nqubit_esd_certificate(int n, const ChannelSpec& spec,
                                         double horizon, double precision,
                                         std::uint64_t seed = 20240901);

// Sufficiency certificate for ESD under a d-level channel. For d = 2 PPT of
// the Choi state is conclusive. For d > 2, `breaking` is returned only when
// the Choi state is PPT and lies inside the separable Frobenius ball around
// the maximally mixed state (radius 1/sqrt(D(D-1)), D = d^2); a PPT Choi
// outside the ball is `inconclusive`.
enum class EsdSufficiency { breaking, not_breaking, inconclusive };
EsdSufficiency esd_sufficient_general(const channels::Superoperator& v,
                                      double tol = 1e-10);

}  // namespace esdlab::esd
