#include "esdlab/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace esdlab::channels {

BathParams BathParams::thermal(double gamma, double n_mean) {
  BathParams p;
  p.gamma = gamma;
  p.n_mean = n_mean;
  p.n_th = n_mean;  // r = 0 forces N = N_th
  p.validate();
  return p;
}

BathParams BathParams::squeezed(double gamma0, double n_th, double r, double phi,
                                double omega) {
  BathParams p;
  p.gamma = gamma0;
  p.n_th = n_th;
  p.r = r;
  p.phi = phi;
  p.omega = omega;
  p.n_mean = 0.5 * (std::cosh(2.0 * r) * (2.0 * n_th + 1.0) - 1.0);
  // The anomalous coupling M = -(a/2) e^{i phi} makes the closed form carry
  // the phase -phi on its coherence coupling.
  p.big_phi = -phi;
  p.validate();
  return p;
}

double BathParams::anomalous() const {
  return std::sinh(2.0 * r) * (2.0 * n_th + 1.0);
}

void BathParams::validate() const {
  if (!(gamma > 0.0))
    throw std::invalid_argument("BathParams: gamma must be > 0");
  if (n_mean < 0.0)
    throw std::invalid_argument("BathParams: n_mean must be >= 0");
  if (n_th < 0.0)
    throw std::invalid_argument("BathParams: n_th must be >= 0");
  if (r < 0.0)
    throw std::invalid_argument("BathParams: r must be >= 0");
  const double lhs = 2.0 * n_mean + 1.0;
  const double rhs = std::cosh(2.0 * r) * (2.0 * n_th + 1.0);
  if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs)))
    throw std::invalid_argument(
        "BathParams: violated relation 2N+1 = cosh(2r)(2N_th+1)");
}

Superoperator identity_superop(int d) {
  if (d < 2) throw std::invalid_argument("identity_superop: d must be >= 2");
  return Superoperator{d, Matrix::Identity(d * d, d * d)};
}

Superoperator depolarizing(int d, double w) {
  if (d < 2) throw std::invalid_argument("depolarizing: d must be >= 2");
  if (w < 0.0 || w > 1.0)
    throw std::invalid_argument("depolarizing: weight must lie in [0, 1]");
  Matrix m = (1.0 - w) * Matrix::Identity(d * d, d * d);
  for (int a = 0; a < d; ++a)
    for (int k = 0; k < d; ++k) m(a * d + a, k * d + k) += w / d;
  return Superoperator{d, std::move(m)};
}

Superoperator lindblad_thermal(const BathParams& p) {
  p.validate();
  const double g = p.gamma;
  const double n = p.n_mean;
  Matrix l = Matrix::Zero(4, 4);
  l(0, 0) = -g * n;
  l(0, 3) = g * (n + 1.0);
  l(1, 1) = -g * (2.0 * n + 1.0) / 2.0;
  l(2, 2) = -g * (2.0 * n + 1.0) / 2.0;
  l(3, 0) = g * n;
  l(3, 3) = -g * (n + 1.0);
  return Superoperator{2, std::move(l)};
}

Superoperator lindblad_squeezed(const BathParams& p) {
  Superoperator sop = lindblad_thermal(p);
  const double g = p.gamma;
  const Complex m =
      -0.5 * std::sinh(2.0 * p.r) * (2.0 * p.n_th + 1.0) * std::exp(Complex(0.0, p.phi));
  sop.mat(1, 2) = -g * std::conj(m);
  sop.mat(2, 1) = -g * m;
  return sop;
}

Superoperator propagator(const Superoperator& l, double t) {
  if (t < 0.0) throw std::invalid_argument("propagator: t must be >= 0");
  return Superoperator{l.dim, matlin::expm(l.mat * t)};
}

Superoperator thermal_v_closed(const BathParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("thermal_v_closed: t must be >= 0");
  p.validate();
  const double n = p.n_mean;
  const double x2 = std::exp(-p.gamma * (2.0 * n + 1.0) * t);
  const double x = std::sqrt(x2);
  const double xcot = (1.0 - x2) / (2.0 * (2.0 * n + 1.0));  // x * cot(theta)
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = (1.0 + x2) / 2.0 + xcot;
  v(0, 3) = 2.0 * xcot * (1.0 + n);  // y2
  v(1, 1) = x;
  v(2, 2) = x;
  v(3, 0) = 2.0 * xcot * n;  // y1
  v(3, 3) = (1.0 + x2) / 2.0 - xcot;
  return Superoperator{2, std::move(v)};
}

Superoperator squeezed_v_closed(const BathParams& p, double t) {
  if (t < 0.0) throw std::invalid_argument("squeezed_v_closed: t must be >= 0");
  p.validate();
  const double n = p.n_mean;
  const double a = p.anomalous();
  const double g = p.gamma;
  const double x2 = std::exp(-g * (2.0 * n + 1.0) * t);
  const double x = std::sqrt(x2);
  const double denom = 2.0 * n + 1.0;
  const double alpha = (n * (1.0 + x2) + x2) / denom;
  const double beta = n * (1.0 - x2) / denom;
  const double mu = (n + 1.0) * (1.0 - x2) / denom;
  const double nu = (n * (1.0 + x2) + 1.0) / denom;
  const double y = x * std::cosh(g * a * t / 2.0);
  const Complex z =
      x * std::sinh(g * a * t / 2.0) * std::exp(Complex(0.0, p.big_phi));
  const Complex ep = std::exp(Complex(0.0, -p.omega * t));

  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = nu;
  v(0, 3) = mu;
  v(1, 1) = y * ep;
  v(1, 2) = z * ep;
  v(2, 1) = std::conj(z) * std::conj(ep);
  v(2, 2) = y * std::conj(ep);
  v(3, 0) = beta;
  v(3, 3) = alpha;
  return Superoperator{2, std::move(v)};
}

Superoperator qnd_v(double omega, const std::function<double(double)>& g, double t) {
  if (t < 0.0) throw std::invalid_argument("qnd_v: t must be >= 0");
  const double gt = g(t);
  if (gt < 0.0 || std::isnan(gt))
    throw std::invalid_argument("qnd_v: exponent g(t) must be >= 0");
  const double damp = std::exp(-gt);
  Matrix v = Matrix::Zero(4, 4);
  v(0, 0) = 1.0;
  v(1, 1) = damp * std::exp(Complex(0.0, -omega * t));
  v(2, 2) = damp * std::exp(Complex(0.0, omega * t));
  v(3, 3) = 1.0;
  return Superoperator{2, std::move(v)};
}

states::DensityMatrix choi(const Superoperator& v) {
  const int d = v.dim;
  Matrix c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a)
      for (int j = 0; j < d; ++j)
        for (int b = 0; b < d; ++b)
          c(i * d + a, j * d + b) = v.mat(a * d + b, i * d + j) / double(d);
  return states::make_density({d, d}, std::move(c));
}

states::DensityMatrix apply_to_subsystem(const Superoperator& v,
                                         const states::DensityMatrix& rho,
                                         int which) {
  const int n = static_cast<int>(rho.dims.size());
  if (which < 0 || which >= n)
    throw std::invalid_argument("apply_to_subsystem: invalid subsystem index");
  const int m = rho.dims[which];
  if (m != v.dim)
    throw std::invalid_argument("apply_to_subsystem: subsystem dimension mismatch");
  const int d = rho.total_dim();

  // stride of the target factor in the composite index
  int stride = 1;
  for (int k = which + 1; k < n; ++k) stride *= rho.dims[k];

  Matrix out = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int a = (i / stride) % m;
    const int ibase = i - a * stride;
    for (int j = 0; j < d; ++j) {
      const int b = (j / stride) % m;
      const int jbase = j - b * stride;
      Complex acc = 0.0;
      for (int ap = 0; ap < m; ++ap)
        for (int bp = 0; bp < m; ++bp)
          acc += v.mat(a * m + b, ap * m + bp) *
                 rho.mat(ibase + ap * stride, jbase + bp * stride);
      out(i, j) = acc;
    }
  }
  return states::make_density(rho.dims, std::move(out));
}

bool is_entanglement_breaking(const Superoperator& v, double tol) {
  if (v.dim != 2)
    throw std::invalid_argument("is_entanglement_breaking: qubit channels only");
  const auto c = choi(v);
  const Matrix pt = matlin::partial_transpose(c.mat, c.dims, 1);
  const auto ev = matlin::herm_eigvals(pt);
  return ev.front() >= -tol;
}

}  // namespace esdlab::channels
