#include <algorithm>
#include <cmath>
#include <thread>

#include "qes/spectra.hpp"

namespace qes::spectra {

namespace {

double r1_at(const PhysicalContext& ctx, double x0) { return solve_coefficients(kernel_rows(ctx, x0)).r1; }

/// Scan nodes: grid points outside the exclusion zone plus the t = 1 poles,
/// sorted and unique.
std::vector<double> scan_nodes(const PhysicalContext& ctx, const ScanConfig& scan) {
  std::vector<double> nodes;
  nodes.reserve(scan.grid_points + 2);
  const double step = (scan.x0_max - scan.x0_min) / static_cast<double>(scan.grid_points - 1);
  for (std::size_t i = 0; i < scan.grid_points; ++i) {
    const double x = i + 1 == scan.grid_points ? scan.x0_max : scan.x0_min + step * static_cast<double>(i);
    if (std::abs(x) >= scan.exclusion) nodes.push_back(x);
  }
  const double k = ctx.n + ctx.Gamma + 1.0;
  if (k > 0.0) {
    const double pole = ctx.zalpha / std::sqrt(k);
    for (double p : {-pole, pole}) {
      if (p > scan.x0_min && p < scan.x0_max && std::abs(p) >= scan.exclusion) nodes.push_back(p);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<double> evaluate_nodes(const PhysicalContext& ctx, const std::vector<double>& nodes, unsigned workers) {
  std::vector<double> values(nodes.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) values[i] = r1_at(ctx, nodes[i]);
  };
  workers = std::max(1u, workers);
  if (workers == 1 || nodes.size() < 2 * workers) {
    work(0, nodes.size());
    return values;
  }
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (nodes.size() + workers - 1) / workers;
    for (std::size_t begin = 0; begin < nodes.size(); begin += chunk) {
      threads.emplace_back(work, begin, std::min(nodes.size(), begin + chunk));
    }
  }
  return values;
}

double bisect(const PhysicalContext& ctx, double lo, double hi, double flo, double tol) {
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = r1_at(ctx, mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double fl = std::abs(r1_at(ctx, lo));
  const double fh = std::abs(r1_at(ctx, hi));
  return fl <= fh ? lo : hi;
}

}  // namespace

ScanResult find_spectral_points(const PhysicalContext& ctx, const ScanConfig& scan) {
  if (!std::isfinite(scan.x0_min) || !std::isfinite(scan.x0_max) || scan.x0_min >= scan.x0_max ||
      scan.grid_points < 2) {
    throw std::invalid_argument("find_spectral_points: empty scan range");
  }
  if (!(scan.tol_accept > 0.0) || !(scan.tol_refine > 0.0)) {
    throw std::invalid_argument("find_spectral_points: tolerances must be positive");
  }

  const std::vector<double> nodes = scan_nodes(ctx, scan);
  if (nodes.size() < 2) throw std::invalid_argument("find_spectral_points: empty scan range");

  ScanResult result;
  ScanDiagnostics& diag = result.diagnostics;
  diag.grid_evaluations = nodes.size();
  const std::vector<double> values = evaluate_nodes(ctx, nodes, scan.workers);

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    if (std::signbit(a) != std::signbit(b)) continue;  // never straddle x0 = 0
    const double fa = values[i];
    const double fb = values[i + 1];
    if (!std::isfinite(fa) || !std::isfinite(fb)) {
      ++diag.skipped_cells;
      continue;
    }
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (fb != 0.0 && std::signbit(fa) != std::signbit(fb)) {
      ++diag.sign_changes;
      roots.push_back(bisect(ctx, a, b, fa, scan.tol_refine));
    }
  }
  if (!nodes.empty() && values.back() == 0.0) roots.push_back(nodes.back());

  for (double x0 : roots) {
    try {
      const EnergyPoint ep = energy_from_x0(ctx, x0);
      const KernelSystem sys = build_kernel_system(ctx, x0, qes_params(ctx, x0, ep.E, ep.lB));
      const CoefficientSolution sol = solve_coefficients(sys);
      const double sigma = relative_sigma_min(sys);
      if (!std::isfinite(sol.r0) || !std::isfinite(sigma)) {
        ++diag.skipped_cells;
        continue;
      }
      if (std::abs(sol.r0) >= scan.tol_accept || sigma >= scan.tol_accept) {
        diag.near_misses.push_back(x0);
        continue;
      }
      if (!ep.physical) {
        ++diag.rejected_unphysical;
        continue;
      }
      SpectralPoint p = populate_point(ctx, x0);
      if (!result.points.empty() && std::abs(result.points.back().x0 - x0) < 1e-8) {
        if (p.residuals.kernel_r1 < result.points.back().residuals.kernel_r1) result.points.back() = std::move(p);
        continue;
      }
      result.points.push_back(std::move(p));
    } catch (const PoleError&) {
      ++diag.skipped_cells;
    }
  }
  return result;
}

}  // namespace qes::spectra
