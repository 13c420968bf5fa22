#include "esdlab.h"

#include "esdlab/esd.hpp"

#include <exception>
#include <string>

struct esdlab_channel {
  esdlab::esd::ChannelSpec spec;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
esdlab_status guarded(F&& body) {
  try {
    body();
    return ESDLAB_OK;
  } catch (const std::invalid_argument& e) {
    t_last_error = e.what();
    return ESDLAB_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return ESDLAB_ERR_NUMERICAL;
  } catch (...) {
    t_last_error = "unknown error";
    return ESDLAB_ERR_INTERNAL;
  }
}

esdlab_status invalid(const char* msg) {
  t_last_error = msg;
  return ESDLAB_ERR_INVALID_ARGUMENT;
}

void fill_report(const esdlab::esd::EsdReport& rep, esdlab_esd_report* out) {
  *out = esdlab_esd_report{};
  out->found = rep.found ? 1 : 0;
  out->transition_time = rep.transition_time;
  out->bracket_low = rep.bracket_low;
  out->bracket_high = rep.bracket_high;
  out->min_pt_low = rep.min_pt_low;
  out->min_pt_high = rep.min_pt_high;
  out->min_pt_at_horizon = rep.min_pt_at_horizon;
  out->iterations = rep.iterations;
  out->horizon = rep.horizon;
  for (const auto& cf : rep.closed_forms) {
    if (cf.label == "sinh-threshold") {
      out->has_sinh_form = 1;
      out->sinh_form_time = cf.value;
    } else if (cf.label == "pt-block-root") {
      out->has_block_form = 1;
      out->block_form_time = cf.value;
    }
  }
}

}  // namespace

extern "C" {

const char* esdlab_version(void) { return "0.1.0"; }

const char* esdlab_last_error(void) { return t_last_error.c_str(); }

esdlab_status esdlab_channel_thermal(double gamma, double n_mean,
                                     esdlab_channel** out) {
  if (!out) return invalid("esdlab_channel_thermal: out is NULL");
  return guarded([&] {
    *out = new esdlab_channel{esdlab::esd::ChannelSpec::thermal(gamma, n_mean)};
  });
}

esdlab_status esdlab_channel_squeezed(double gamma0, double n_th, double r,
                                      double phi, double omega,
                                      esdlab_channel** out) {
  if (!out) return invalid("esdlab_channel_squeezed: out is NULL");
  return guarded([&] {
    *out = new esdlab_channel{
        esdlab::esd::ChannelSpec::squeezed(gamma0, n_th, r, phi, omega)};
  });
}

esdlab_status esdlab_channel_qnd(double omega, double g_scale, double g_power,
                                 esdlab_channel** out) {
  if (!out) return invalid("esdlab_channel_qnd: out is NULL");
  return guarded([&] {
    *out = new esdlab_channel{
        esdlab::esd::ChannelSpec::qnd_power(omega, g_scale, g_power)};
  });
}

void esdlab_channel_free(esdlab_channel* ch) { delete ch; }

esdlab_status esdlab_channel_n_mean(const esdlab_channel* ch, double* out) {
  if (!ch || !out) return invalid("esdlab_channel_n_mean: NULL argument");
  *out = (ch->spec.family == esdlab::esd::Family::qnd) ? 0.0 : ch->spec.bath.n_mean;
  return ESDLAB_OK;
}

esdlab_status esdlab_choi_dynamics(const esdlab_channel* ch, double t,
                                   esdlab_choi_point* out) {
  if (!ch || !out) return invalid("esdlab_choi_dynamics: NULL argument");
  return guarded([&] {
    const auto p = esdlab::esd::choi_point(ch->spec, t);
    out->t = t;
    out->min_pt_eigenvalue = p.min_pt_eigenvalue;
    out->negativity = p.negativity;
    out->concurrence = p.concurrence;
    out->npt = p.npt ? 1 : 0;
  });
}

esdlab_status esdlab_esd_time(const esdlab_channel* ch, double horizon,
                              double precision, esdlab_esd_report* out) {
  if (!ch || !out) return invalid("esdlab_esd_time: NULL argument");
  return guarded([&] {
    fill_report(esdlab::esd::choi_ppt_time(ch->spec, horizon, precision), out);
  });
}

esdlab_status esdlab_channel_is_breaking(const esdlab_channel* ch, double t,
                                         double tol, int* out) {
  if (!ch || !out) return invalid("esdlab_channel_is_breaking: NULL argument");
  return guarded([&] {
    *out = esdlab::channels::is_entanglement_breaking(ch->spec.v_at(t), tol) ? 1 : 0;
  });
}

esdlab_status esdlab_squeezed_conditions(const esdlab_channel* ch, double t,
                                         double out[4]) {
  if (!ch || !out) return invalid("esdlab_squeezed_conditions: NULL argument");
  if (ch->spec.family == esdlab::esd::Family::qnd)
    return invalid("esdlab_squeezed_conditions: QND channels have no bath conditions");
  return guarded([&] {
    const auto c = esdlab::esd::squeezed_conditions(ch->spec.bath, t);
    out[0] = c.c1a;
    out[1] = c.c1b;
    out[2] = c.c2;
    out[3] = c.c3;
  });
}

esdlab_status esdlab_factorization_residuals(const esdlab_channel* ch, double t,
                                             int dim_a, int samples,
                                             uint64_t seed, double* residuals,
                                             double* max_residual) {
  if (!ch || !residuals)
    return invalid("esdlab_factorization_residuals: NULL argument");
  if (dim_a < 2) return invalid("esdlab_factorization_residuals: dim_a must be >= 2");
  if (samples < 1)
    return invalid("esdlab_factorization_residuals: samples must be >= 1");
  return guarded([&] {
    const auto v = ch->spec.v_at(t);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      const auto chi = esdlab::states::random_pure({dim_a, 2}, seed + k);
      residuals[k] = esdlab::entanglement::factorization_residual(chi, v);
      worst = std::max(worst, residuals[k]);
    }
    if (max_residual) *max_residual = worst;
  });
}

esdlab_status esdlab_nqubit_certificate(const esdlab_channel* ch, int n_qubits,
                                        double horizon, double precision,
                                        uint64_t seed, esdlab_esd_report* report,
                                        double* max_negativity_per_state,
                                        double* ghz_one_sided_min_pt,
                                        int* channel_breaking) {
  if (!ch || !report || !max_negativity_per_state || !ghz_one_sided_min_pt ||
      !channel_breaking)
    return invalid("esdlab_nqubit_certificate: NULL argument");
  return guarded([&] {
    const auto cert = esdlab::esd::nqubit_esd_certificate(n_qubits, ch->spec,
                                                          horizon, precision, seed);
    fill_report(cert.report, report);
    for (int k = 0; k < ESDLAB_NQUBIT_STATES; ++k)
      max_negativity_per_state[k] =
          (k < static_cast<int>(cert.checks.size()))
              ? cert.checks[k].max_cut_negativity
              : 0.0;
    *ghz_one_sided_min_pt = cert.one_sided_min_pt_before;
    *channel_breaking = cert.channel_breaking_at_transition ? 1 : 0;
  });
}

}  // extern "C"
