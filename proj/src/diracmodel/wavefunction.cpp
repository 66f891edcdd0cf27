#include "qes/diracmodel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qes::dirac {

namespace {

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) v = v * x + static_cast<double>(i) * c[i];
  return v;
}

double sum_abs(std::initializer_list<double> terms) {
  double s = 0.0;
  for (double t : terms) s += std::abs(t);
  return s;
}

double sum(std::initializer_list<double> terms) {
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

}  // namespace

std::pair<double, double> assemble_fg(const PhysicalContext& ctx, const SpectralPoint& point, double r) {
  const SpinorJet j = spinor_jet(ctx, point, r);
  return {j.F, j.G};
}

SpinorJet spinor_jet(const PhysicalContext& ctx, const SpectralPoint& point, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  const double x = r / point.lB;
  const double envelope = std::pow(x, ctx.gamma) * std::exp(-0.25 * x * x);
  const double q = horner(point.Qcoeffs, x);
  const double p = horner(point.Pcoeffs, x);
  // d/dx [x^γ e^{-x²/4}] = (γ/x − x/2) · envelope
  const double log_slope = ctx.gamma / x - 0.5 * x;

  SpinorJet out;
  out.F = envelope * q;
  out.G = envelope * p;
  out.dF = envelope * (log_slope * q + horner_derivative(point.Qcoeffs, x)) / point.lB;
  out.dG = envelope * (log_slope * p + horner_derivative(point.Pcoeffs, x)) / point.lB;
  return out;
}

DiracCheck dirac_residual(const PhysicalContext& ctx, const SpectralPoint& point, const std::vector<double>& r_grid) {
  const double j = ctx.l + 0.5;
  DiracCheck out;
  for (double r : r_grid) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radial grid must be positive and finite");
    const SpinorJet s = spinor_jet(ctx, point, r);

    const double centrifugal = j / r;
    const double magnetic = 0.5 * point.eB * r;
    const double coulomb = ctx.zalpha / r;
    const double upper = sum({s.dF, -centrifugal * s.F, -magnetic * s.F, (point.E + ctx.m) * s.G, coulomb * s.G});
    const double upper_mag =
        sum_abs({s.dF, centrifugal * s.F, magnetic * s.F, (point.E + ctx.m) * s.G, coulomb * s.G});
    const double lower = sum({s.dG, centrifugal * s.G, magnetic * s.G, -(point.E - ctx.m) * s.F, -coulomb * s.F});
    const double lower_mag =
        sum_abs({s.dG, centrifugal * s.G, magnetic * s.G, (point.E - ctx.m) * s.F, coulomb * s.F});

    if (!std::isfinite(upper) || !std::isfinite(lower) || !std::isfinite(upper_mag) || !std::isfinite(lower_mag)) {
      std::ostringstream msg;
      msg << "non-finite Dirac residual at r = " << r;
      throw std::runtime_error(msg.str());
    }
    out.dirac_max = std::max(out.dirac_max, upper_mag > 0.0 ? std::abs(upper) / upper_mag : 0.0);
    out.dirac_max = std::max(out.dirac_max, lower_mag > 0.0 ? std::abs(lower) / lower_mag : 0.0);

    // Central differences with h = 1e-6 r, compared on the natural scale |f'| + |f|/r.
    const double h = 1e-6 * r;
    const auto [f_hi, g_hi] = assemble_fg(ctx, point, r + h);
    const auto [f_lo, g_lo] = assemble_fg(ctx, point, r - h);
    const double fd_f = (f_hi - f_lo) / (2.0 * h);
    const double fd_g = (g_hi - g_lo) / (2.0 * h);
    const double scale_f = std::abs(s.dF) + std::abs(s.F) / r;
    const double scale_g = std::abs(s.dG) + std::abs(s.G) / r;
    if (scale_f > 0.0) out.fd_max = std::max(out.fd_max, std::abs(fd_f - s.dF) / scale_f);
    if (scale_g > 0.0) out.fd_max = std::max(out.fd_max, std::abs(fd_g - s.dG) / scale_g);
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw std::invalid_argument("invalid logarithmic grid");
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> default_grid(const SpectralPoint& point) { return log_grid(0.1 * point.lB, 10.0 * point.lB, 64); }

std::vector<WavefunctionSample> sample_table(const PhysicalContext& ctx, const SpectralPoint& point, double r_max,
                                             std::size_t count) {
  if (!(r_max > 0.0) || !std::isfinite(r_max) || count < 2) {
    throw std::invalid_argument("sample_table: need r_max > 0 and at least two samples");
  }
  std::vector<WavefunctionSample> rows;
  rows.reserve(count);
  for (double r : log_grid(r_max / 1000.0, r_max, count)) {
    const auto [f, g] = assemble_fg(ctx, point, r);
    rows.push_back({r, r / point.lB, f, g});
  }
  return rows;
}

void attach_dirac_residual(const PhysicalContext& ctx, SpectralPoint& point) {
  point.residuals.dirac_max = dirac_residual(ctx, point, default_grid(point)).dirac_max;
}

}  // namespace qes::dirac
