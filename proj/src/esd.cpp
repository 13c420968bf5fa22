#include "esdlab/esd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esdlab::esd {

namespace {

// Trace-1 Choi cells of a one-qubit channel in X form. Diagonal order
// (00, 01, 10, 11); `outer` and `inner` are the corner magnitudes at
// (00,11) and (01,10).
struct XCells {
  long double d00 = 0, d01 = 0, d10 = 0, d11 = 0;
  long double outer = 0, inner = 0;
};

XCells bath_cells(const channels::BathParams& p, long double t, bool squeezed) {
  const long double n = p.n_mean;
  const long double g = p.gamma;
  const long double a = squeezed ? (sinhl(2.0L * p.r) * (2.0L * p.n_th + 1.0L)) : 0.0L;
  const long double x2 = expl(-g * (2.0L * n + 1.0L) * t);
  const long double x = sqrtl(x2);
  const long double denom = 2.0L * n + 1.0L;
  XCells c;
  c.d00 = (n * (1.0L + x2) + 1.0L) / denom / 2.0L;  // nu / 2
  c.d01 = n * (1.0L - x2) / denom / 2.0L;           // beta / 2
  c.d10 = (n + 1.0L) * (1.0L - x2) / denom / 2.0L;  // mu / 2
  c.d11 = (n * (1.0L + x2) + x2) / denom / 2.0L;    // alpha / 2
  c.outer = x * coshl(g * a * t / 2.0L) / 2.0L;     // |y| / 2
  c.inner = x * sinhl(g * a * t / 2.0L) / 2.0L;     // |z| / 2
  return c;
}

XCells qnd_cells(const ChannelSpec& spec, long double t) {
  const double g = spec.qnd_g(static_cast<double>(t));
  if (g < 0.0 || std::isnan(g))
    throw std::invalid_argument("choi_point: QND exponent g(t) must be >= 0");
  XCells c;
  c.d00 = 0.5L;
  c.d11 = 0.5L;
  c.outer = 0.5L * expl(-static_cast<long double>(g));
  return c;
}

XCells cells_at(const ChannelSpec& spec, long double t) {
  switch (spec.family) {
    case Family::thermal:
      return bath_cells(spec.bath, t, false);
    case Family::squeezed:
      return bath_cells(spec.bath, t, true);
    case Family::qnd:
      return qnd_cells(spec, t);
  }
  throw std::logic_error("cells_at: unknown family");
}

// Least eigenvalue of the Hermitian block [[p, w], [w, q]] with p, q >= 0.
// The determinant form avoids the cancellation in (s - disc)/2 when the
// eigenvalue is tiny against s; when the determinant itself underflows the
// direct form is exact (one of the products is then zero at working precision).
long double block_min_eig(long double p, long double q, long double w) {
  const long double s = p + q;
  const long double disc = hypotl(p - q, 2.0L * w);
  const long double det = p * q - w * w;
  if (det != 0.0L) return 2.0L * det / (s + disc);
  return (s - disc) / 2.0L;
}

struct PtSummary {
  long double lo1 = 0, lo2 = 0;
};

PtSummary pt_summary(const XCells& c) {
  // After partial transposition the corners trade places: the (00,11) block
  // picks up the inner corner and the (01,10) block the outer one.
  PtSummary s;
  s.lo1 = block_min_eig(c.d00, c.d11, c.inner);
  s.lo2 = block_min_eig(c.d01, c.d10, c.outer);
  return s;
}

}  // namespace

ChannelSpec ChannelSpec::thermal(double gamma, double n_mean) {
  ChannelSpec s;
  s.family = Family::thermal;
  s.bath = channels::BathParams::thermal(gamma, n_mean);
  return s;
}

ChannelSpec ChannelSpec::squeezed(double gamma0, double n_th, double r, double phi,
                                  double omega) {
  ChannelSpec s;
  s.family = Family::squeezed;
  s.bath = channels::BathParams::squeezed(gamma0, n_th, r, phi, omega);
  return s;
}

ChannelSpec ChannelSpec::qnd(double omega, std::function<double(double)> g) {
  if (!g) throw std::invalid_argument("ChannelSpec::qnd: missing exponent function");
  ChannelSpec s;
  s.family = Family::qnd;
  s.qnd_omega = omega;
  s.qnd_g = std::move(g);
  return s;
}

ChannelSpec ChannelSpec::qnd_power(double omega, double scale, double power) {
  if (scale < 0.0)
    throw std::invalid_argument("ChannelSpec::qnd_power: scale must be >= 0");
  return qnd(omega, [scale, power](double t) { return scale * std::pow(t, power); });
}

channels::Superoperator ChannelSpec::v_at(double t) const {
  switch (family) {
    case Family::thermal:
      return channels::thermal_v_closed(bath, t);
    case Family::squeezed:
      return channels::squeezed_v_closed(bath, t);
    case Family::qnd:
      return channels::qnd_v(qnd_omega, qnd_g, t);
  }
  throw std::logic_error("ChannelSpec::v_at: unknown family");
}

ChoiPoint choi_point(const ChannelSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("choi_point: t must be >= 0");
  const XCells c = cells_at(spec, t);
  const PtSummary s = pt_summary(c);
  ChoiPoint out;
  out.min_pt_eigenvalue = static_cast<double>(std::min(s.lo1, s.lo2));
  out.negativity = static_cast<double>(std::max(0.0L, -s.lo1) + std::max(0.0L, -s.lo2));
  const long double cand1 = c.outer - sqrtl(c.d01 * c.d10);
  const long double cand2 = c.inner - sqrtl(c.d00 * c.d11);
  out.concurrence =
      static_cast<double>(2.0L * std::max({0.0L, cand1, cand2}));
  out.npt = (s.lo1 < 0.0L) || (s.lo2 < 0.0L);
  return out;
}

EsdReport choi_ppt_time(const ChannelSpec& spec, double horizon, double precision,
                        int scan_points) {
  if (!(horizon > 0.0)) throw std::invalid_argument("choi_ppt_time: horizon must be > 0");
  if (!(precision > 0.0))
    throw std::invalid_argument("choi_ppt_time: precision must be > 0");
  if (scan_points < 2)
    throw std::invalid_argument("choi_ppt_time: need at least 2 scan points");

  EsdReport rep;
  rep.horizon = horizon;

  // Geometric grid spanning four decades up to the horizon.
  std::vector<double> grid(scan_points);
  const double t0 = horizon * 1e-4;
  const double ratio = std::pow(horizon / t0, 1.0 / (scan_points - 1));
  for (int k = 0; k < scan_points; ++k) grid[k] = t0 * std::pow(ratio, k);
  grid.back() = horizon;

  std::vector<bool> npt(scan_points);
  for (int k = 0; k < scan_points; ++k) npt[k] = choi_point(spec, grid[k]).npt;
  rep.min_pt_at_horizon = choi_point(spec, horizon).min_pt_eigenvalue;

  int first_ppt = -1;
  for (int k = 0; k < scan_points; ++k) {
    if (!npt[k]) {
      first_ppt = k;
      break;
    }
  }
  if (first_ppt < 0) {
    rep.found = false;
    return rep;
  }
  for (int k = first_ppt + 1; k < scan_points; ++k)
    if (npt[k])
      throw std::runtime_error(
          "choi_ppt_time: multiple separability transitions on the scan grid");

  // The Choi state at t = 0 is |phi+><phi+|, always NPT.
  double t_low = (first_ppt == 0) ? 0.0 : grid[first_ppt - 1];
  double t_high = grid[first_ppt];
  int iters = 0;
  while (t_high - t_low > precision && iters < 200) {
    const double mid = 0.5 * (t_low + t_high);
    if (choi_point(spec, mid).npt)
      t_low = mid;
    else
      t_high = mid;
    ++iters;
  }

  rep.found = true;
  rep.transition_time = t_high;
  rep.bracket_low = t_low;
  rep.bracket_high = t_high;
  rep.min_pt_low = choi_point(spec, t_low).min_pt_eigenvalue;
  rep.min_pt_high = choi_point(spec, t_high).min_pt_eigenvalue;
  rep.iterations = iters;

  if (spec.family == Family::thermal) {
    if (auto t = thermal_sinh_time(spec.bath))
      rep.closed_forms.push_back({*t, "sinh-threshold"});
    if (auto t = thermal_block_time(spec.bath))
      rep.closed_forms.push_back({*t, "pt-block-root"});
  }
  return rep;
}

std::optional<double> thermal_sinh_time(const channels::BathParams& p) {
  p.validate();
  const double n = p.n_mean;
  if (n <= 0.0) return std::nullopt;
  const double rate = p.gamma * (1.0 + 2.0 * n);
  return std::asinh(2.0 * std::sqrt(n * (n + 1.0)) / (1.0 + 2.0 * n)) / rate;
}

std::optional<double> thermal_block_time(const channels::BathParams& p) {
  p.validate();
  const double n = p.n_mean;
  if (n <= 0.0) return std::nullopt;
  const double rate = p.gamma * (1.0 + 2.0 * n);
  return 2.0 * std::asinh((1.0 + 2.0 * n) / (2.0 * std::sqrt(n * (n + 1.0)))) / rate;
}

SqueezedConditions squeezed_conditions(const channels::BathParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("squeezed_conditions: t must be >= 0");
  p.validate();
  const long double n = p.n_mean;
  const long double g = p.gamma;
  const long double a = sinhl(2.0L * p.r) * (2.0L * p.n_th + 1.0L);
  const long double denom = 2.0L * n + 1.0L;
  const long double x2 = expl(-g * denom * t);
  const long double x = sqrtl(x2);

  const long double alpha = (n * (1.0L + x2) + x2) / denom;
  const long double beta = n * (1.0L - x2) / denom;
  const long double mu = (n + 1.0L) * (1.0L - x2) / denom;
  const long double nu = (n * (1.0L + x2) + 1.0L) / denom;
  const long double y = x * coshl(g * a * t / 2.0L);
  const long double zmag = x * sinhl(g * a * t / 2.0L);

  const long double ch = coshl(g * denom * t / 2.0L);
  const long double sh = sinhl(g * denom * t / 2.0L);
  const long double cha = coshl(g * a * t / 2.0L);
  const long double sha = sinhl(g * a * t / 2.0L);

  SqueezedConditions out;
  out.c1a = static_cast<double>(alpha * nu - zmag * zmag);
  out.c1b = static_cast<double>(beta * mu - y * y);
  out.c2 = static_cast<double>(n * (n + 1.0L) / denom * 4.0L * ch * ch - sha * sha);
  out.c3 = static_cast<double>(n * (n + 1.0L) / denom * 4.0L * sh * sh - cha * cha);
  return out;
}

std::vector<std::pair<double, EsdReport>> squeezing_effect(
    const channels::BathParams& base, std::span<const double> r_values,
    double horizon, double precision) {
  std::vector<std::pair<double, EsdReport>> out;
  out.reserve(r_values.size());
  for (double r : r_values) {
    if (r < 0.0) throw std::invalid_argument("squeezing_effect: r must be >= 0");
    const auto spec =
        ChannelSpec::squeezed(base.gamma, base.n_th, r, base.phi, base.omega);
    out.emplace_back(r, choi_ppt_time(spec, horizon, precision));
  }
  return out;
}

namespace {

states::PureState ghz_state(int n) {
  const int d = 1 << n;
  matlin::Vector v = matlin::Vector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return states::PureState{std::vector<int>(n, 2), std::move(v)};
}

states::PureState w_state(int n) {
  const int d = 1 << n;
  matlin::Vector v = matlin::Vector::Zero(d);
  for (int k = 0; k < n; ++k) v(1 << (n - 1 - k)) = 1.0 / std::sqrt(double(n));
  return states::PureState{std::vector<int>(n, 2), std::move(v)};
}

// Every bipartition of {0..n-1}: proper nonempty subsets containing qubit 0.
std::vector<std::vector<int>> bipartitions(int n) {
  std::vector<std::vector<int>> cuts;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (!(mask & 1)) continue;
    std::vector<int> cut;
    for (int q = 0; q < n; ++q)
      if (mask & (1 << q)) cut.push_back(q);
    cuts.push_back(std::move(cut));
  }
  return cuts;
}

states::DensityMatrix evolve_all(const channels::Superoperator& v,
                                 const states::PureState& psi) {
  states::DensityMatrix rho = states::to_density(psi);
  for (std::size_t q = 0; q < psi.dims.size(); ++q)
    rho = channels::apply_to_subsystem(v, rho, static_cast<int>(q));
  return rho;
}

}  // namespace

NQubitCertificate nqubit_esd_certificate(int n, const ChannelSpec& spec,
                                         double horizon, double precision,
                                         std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("nqubit_esd_certificate: n must be >= 2");

  NQubitCertificate cert;
  cert.report = choi_ppt_time(spec, horizon, precision);
  if (!cert.report.found) return cert;

  const double tstar = cert.report.transition_time;
  const auto v = spec.v_at(tstar);
  cert.channel_breaking_at_transition = channels::is_entanglement_breaking(v);

  std::vector<std::pair<std::string, states::PureState>> inputs;
  inputs.emplace_back("ghz", ghz_state(n));
  inputs.emplace_back("w", w_state(n));
  for (int k = 0; k < 5; ++k)
    inputs.emplace_back("random" + std::to_string(k + 1),
                        states::random_pure(std::vector<int>(n, 2), seed + k));

  const auto cuts = bipartitions(n);
  for (const auto& [name, psi] : inputs) {
    const auto rho = evolve_all(v, psi);
    double worst = 0.0;
    for (const auto& cut : cuts)
      worst = std::max(worst, entanglement::negativity_cut(rho, cut));
    cert.checks.push_back({name, worst});
  }

  // Tightness probe: below t* the channel is not entanglement breaking, so the
  // one-sided action on GHZ must leave the noisy-qubit cut NPT.
  const auto v_before = spec.v_at(0.9 * tstar);
  auto rho_one = channels::apply_to_subsystem(v_before, states::to_density(ghz_state(n)), 0);
  double most_negative = 0.0;
  for (const auto& cut : cuts) {
    const auto pt = matlin::partial_transpose(rho_one.mat, rho_one.dims, cut);
    most_negative = std::min(most_negative, matlin::herm_eigvals(pt).front());
  }
  cert.one_sided_min_pt_before = most_negative;
  return cert;
}

EsdSufficiency esd_sufficient_general(const channels::Superoperator& v, double tol) {
  const auto c = channels::choi(v);
  const auto pt_eigs =
      matlin::herm_eigvals(matlin::partial_transpose(c.mat, c.dims, 1));
  const bool ppt = pt_eigs.front() >= -tol;
  if (v.dim == 2) return ppt ? EsdSufficiency::breaking : EsdSufficiency::not_breaking;
  if (!ppt) return EsdSufficiency::not_breaking;

  // Separable Frobenius ball around the maximally mixed state.
  const int big_d = v.dim * v.dim;
  const matlin::Matrix centered =
      c.mat - matlin::Matrix::Identity(big_d, big_d) / double(big_d);
  const double radius = 1.0 / std::sqrt(double(big_d) * (big_d - 1.0));
  if (centered.norm() <= radius) return EsdSufficiency::breaking;
  return EsdSufficiency::inconclusive;
}

}  // namespace esdlab::esd
