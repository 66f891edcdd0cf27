#pragma once

#include <utility>
#include <vector>

#include "qes/spectra.hpp"

namespace qes::dirac {

using spectra::PhysicalContext;
using spectra::SpectralPoint;

struct WavefunctionSample {
  double r = 0.0;
  double x = 0.0;
  double F = 0.0;
  double G = 0.0;
};

/// F = x^γ e^{-x²/4} Q(x), G = x^γ e^{-x²/4} P(x) with x = r/lB.
/// The constant lB^γ relating r^γ to x^γ is dropped: the overall
/// normalization is arbitrary. Throws std::invalid_argument for r <= 0.
std::pair<double, double> assemble_fg(const PhysicalContext& ctx, const SpectralPoint& point, double r);

/// Values and analytic r-derivatives of F and G.
struct SpinorJet {
  double F = 0.0;
  double G = 0.0;
  double dF = 0.0;
  double dG = 0.0;
};

SpinorJet spinor_jet(const PhysicalContext& ctx, const SpectralPoint& point, double r);

struct DiracCheck {
  double dirac_max = 0.0;    ///< max normalized residual of the two radial equations
  double fd_max = 0.0;       ///< max analytic vs central-difference derivative mismatch
};

/// Evaluates
///   F' − ((l+½)/r + eB r/2) F + (E + m + Zα/r) G
///   G' + ((l+½)/r + eB r/2) G − (E − m + Zα/r) F
/// on the grid, each normalized by the sum of absolute values of its terms
/// (0 when that sum is 0). Throws std::runtime_error on non-finite values.
DiracCheck dirac_residual(const PhysicalContext& ctx, const SpectralPoint& point, const std::vector<double>& r_grid);

/// `count` log-spaced radii on [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// 64 log-spaced radii over [0.1 lB, 10 lB].
std::vector<double> default_grid(const SpectralPoint& point);

/// Log-spaced samples on [r_max/1000, r_max].
std::vector<WavefunctionSample> sample_table(const PhysicalContext& ctx, const SpectralPoint& point, double r_max,
                                             std::size_t count);

/// Fills residuals.dirac_max on the default grid.
void attach_dirac_residual(const PhysicalContext& ctx, SpectralPoint& point);

}  // namespace qes::dirac
