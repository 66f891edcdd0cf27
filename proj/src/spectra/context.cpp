#include <cmath>
#include <limits>
#include <sstream>

#include "qes/spectra.hpp"

namespace qes::spectra {

PhysicalContext derive_context(double m, double zalpha, int l, int n) {
  if (!std::isfinite(m) || m <= 0.0) throw std::invalid_argument("mass must be positive and finite");
  if (!std::isfinite(zalpha) || zalpha <= 0.0) throw std::invalid_argument("zalpha must be positive and finite");
  if (n < 0) throw std::invalid_argument("QES degree n must be non-negative");

  const double j = l + 0.5;
  if (zalpha >= std::abs(j)) {
    std::ostringstream msg;
    msg << "zalpha = " << zalpha << " >= |l + 1/2| = " << std::abs(j)
        << ": the small-r power law is complex and the wavefunction oscillates";
    throw PhysicsError(msg.str());
  }

  PhysicalContext ctx;
  ctx.m = m;
  ctx.zalpha = zalpha;
  ctx.l = l;
  ctx.n = n;
  ctx.gamma = std::sqrt(j * j - zalpha * zalpha);
  ctx.beta = ctx.gamma + 0.5;
  ctx.L = j - ctx.gamma;
  ctx.Gamma = j + ctx.gamma;
  return ctx;
}

EnergyPoint energy_from_x0(const PhysicalContext& ctx, double x0) {
  if (x0 == 0.0 || !std::isfinite(x0)) throw PoleError("energy_from_x0: x0 must be finite and nonzero");
  EnergyPoint p;
  p.t = (ctx.n + ctx.Gamma + 1.0) * x0 * x0 / (ctx.zalpha * ctx.zalpha);
  if (std::abs(1.0 - p.t) < 1e-12) {
    throw PoleError("energy_from_x0: t = 1, no finite energy at this x0");
  }
  p.E = ctx.m * (1.0 + p.t) / (1.0 - p.t);
  p.lB = ctx.zalpha / ((p.E + ctx.m) * x0);
  p.eB = 1.0 / (p.lB * p.lB);
  p.physical = p.lB > 0.0;
  return p;
}

QesParams qes_params(const PhysicalContext& ctx, double x0, double E, double lB) {
  QesParams q;
  q.b0 = 2.0 * E * ctx.zalpha * lB;
  q.b = q.b0 + ctx.L / x0;
  q.c = x0 + ctx.L / x0;
  return q;
}

QesParams qes_params_from_x0(const PhysicalContext& ctx, double x0) {
  // b0 = 2 E Zα lB with E, lB eliminated: Zα²(1+t)/x0.
  QesParams q;
  q.b0 = ctx.zalpha * ctx.zalpha / x0 + (ctx.n + ctx.Gamma + 1.0) * x0;
  q.b = q.b0 + ctx.L / x0;
  q.c = x0 + ctx.L / x0;
  return q;
}

double relative_difference(double a, double b) {
  const double denom = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / denom;
}

std::string to_string(Branch b) { return b == Branch::particle ? "particle" : "antiparticle"; }

Branch branch_from_string(const std::string& s) {
  if (s == "particle") return Branch::particle;
  if (s == "antiparticle") return Branch::antiparticle;
  throw std::invalid_argument("unknown branch '" + s + "'");
}

}  // namespace qes::spectra
