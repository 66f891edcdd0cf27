#include <algorithm>
#include <cmath>

#include "qes/osp22.hpp"
#include "qes/spectra.hpp"

namespace qes::spectra {

using sym::MultiPoly;
using sym::NumericValues;

PReconstruction reconstruct_p(const PhysicalContext& ctx, const SpectralPoint& point) {
  const auto& a = point.Qcoeffs;
  if (a.empty()) throw std::invalid_argument("reconstruct_p: Q coefficients missing");
  const std::size_t deg_q = a.size() - 1;

  // (L + x^2) Q - x Q'
  std::vector<double> dividend(deg_q + 3, 0.0);
  for (std::size_t i = 0; i <= deg_q; ++i) {
    dividend[i] += (ctx.L - static_cast<double>(i)) * a[i];
    dividend[i + 2] += a[i];
  }

  // Synthetic division by (x + x0), highest power first.
  const double root = -point.x0;
  std::vector<double> quotient(deg_q + 2, 0.0);
  double carry = 0.0;
  for (std::size_t i = dividend.size(); i-- > 1;) {
    carry = dividend[i] + carry * root;
    quotient[i - 1] = carry;
  }
  const double remainder = dividend[0] + carry * root;

  double max_coeff = 0.0;
  for (double d : dividend) max_coeff = std::max(max_coeff, std::abs(d));

  const double denom = (point.E + ctx.m) * point.lB;
  PReconstruction out;
  out.p.reserve(quotient.size());
  for (double qv : quotient) out.p.push_back(qv / denom);
  out.divis_rem = max_coeff > 0.0 ? std::abs(remainder) / max_coeff : 0.0;
  return out;
}

PrimedParams primed_params(const PhysicalContext& ctx, const SpectralPoint& point) {
  const double em = (point.E - ctx.m) * point.lB;
  if (em == 0.0 || !std::isfinite(em)) throw std::domain_error("primed_params: E = m is degenerate");
  PrimedParams p;
  p.x0p = ctx.zalpha / em;
  p.cp = -ctx.Gamma / p.x0p;
  p.bp = point.b0 + p.cp;
  return p;
}

std::array<double, 3> compatibility_check(const PhysicalContext& ctx, const SpectralPoint& point) {
  const double eps_res =
      std::abs(point.epsilonp - (ctx.n + 1.0)) / (ctx.n + 1.0);
  const double lhs = point.bp - point.cp;
  const double rhs = point.b - point.c + point.x0;
  const double bc_scale = std::abs(point.bp) + std::abs(point.cp) + std::abs(point.b) + std::abs(point.c) +
                          std::abs(point.x0);
  const double bc_res = bc_scale > 0.0 ? std::abs(lhs - rhs) / bc_scale : 0.0;
  const double product = ctx.zalpha * ctx.zalpha / (ctx.Gamma + ctx.n + 1.0);
  const double x_res = relative_difference(point.x0 * point.x0p, product);
  return {eps_res, bc_res, x_res};
}

namespace {

double poly_value(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

double poly_abs_value(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * std::abs(x) + std::abs(c[i]);
  return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

/// Max over xs of |T y(x)| / (elementwise magnitude bound), where T is the
/// symbolic multiplied-through master operator evaluated at `values`.
double operator_residual(const sym::DiffOp& t, NumericValues values, NumericValues magnitudes,
                         const std::vector<double>& y, const std::vector<double>& xs) {
  std::vector<std::vector<double>> derivs{y};
  for (int k = 1; k <= t.order(); ++k) derivs.push_back(derivative(derivs.back()));

  double worst = 0.0;
  for (double x : xs) {
    values[0] = x;
    magnitudes[0] = x;
    double value = 0.0;
    double scale = 0.0;
    for (const auto& [k, coeff] : t.summands()) {
      const auto& dk = derivs[k];
      value += coeff.evaluate(values) * poly_value(dk, x);
      scale += coeff.magnitude(magnitudes) * poly_abs_value(dk, x);
    }
    worst = std::max(worst, scale > 0.0 ? std::abs(value) / scale : 0.0);
  }
  return worst;
}

}  // namespace

OdeResiduals ode_residuals(const PhysicalContext& ctx, const SpectralPoint& point,
                           const std::vector<double>& sample_xs) {
  if (sample_xs.empty()) throw std::invalid_argument("ode_residuals: empty sample set");
  for (double x : sample_xs) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("ode_residuals: samples must be positive");
  }
  const sym::DiffOp t = osp::build_tq_from_d6(osp::TqParams::symbolic()).at(1, 0);
  const double l_over_x0 = std::abs(ctx.L / point.x0);

  OdeResiduals out;
  out.ode_Q = operator_residual(
      t, {0.0, static_cast<double>(ctx.n), ctx.beta, point.x0, point.b, point.c},
      {0.0, static_cast<double>(ctx.n), ctx.beta, point.x0, std::abs(point.b0) + l_over_x0,
       std::abs(point.x0) + l_over_x0},
      point.Qcoeffs, sample_xs);
  out.ode_P = operator_residual(
      t, {0.0, ctx.n + 1.0, ctx.beta, point.x0p, point.bp, point.cp},
      {0.0, ctx.n + 1.0, ctx.beta, point.x0p, std::abs(point.b0) + std::abs(point.cp), std::abs(point.cp)},
      point.Pcoeffs, sample_xs);
  return out;
}

SpectralPoint populate_point(const PhysicalContext& ctx, double x0) {
  const EnergyPoint ep = energy_from_x0(ctx, x0);
  const QesParams q = qes_params(ctx, x0, ep.E, ep.lB);

  SpectralPoint p;
  p.x0 = x0;
  p.t = ep.t;
  p.E = ep.E;
  p.lB = ep.lB;
  p.eB = ep.eB;
  p.b0 = q.b0;
  p.b = q.b;
  p.c = q.c;
  p.epsilon = ctx.n;
  p.epsilonp = ctx.n + 1;
  p.branch = ep.E > ctx.m ? Branch::particle : Branch::antiparticle;

  const KernelSystem sys = build_kernel_system(ctx, x0, q);
  const CoefficientSolution sol = solve_coefficients(sys);
  p.Qcoeffs = sol.q;
  p.residuals.kernel_r0 = std::abs(sol.r0);
  p.residuals.kernel_r1 = std::abs(sol.r1);
  p.residuals.sigma_min = relative_sigma_min(sys);

  const PReconstruction rec = reconstruct_p(ctx, p);
  p.Pcoeffs = rec.p;
  p.residuals.divis_rem = rec.divis_rem;

  const PrimedParams pp = primed_params(ctx, p);
  p.x0p = pp.x0p;
  p.bp = pp.bp;
  p.cp = pp.cp;

  const OdeResiduals ode = ode_residuals(ctx, p, kDefaultOdeSamples);
  p.residuals.ode_Q = ode.ode_Q;
  p.residuals.ode_P = ode.ode_P;
  return p;
}

}  // namespace qes::spectra
