#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qes::spectra {

/// Rejected physical input (e.g. Zα ≥ |l+½|, where the small-r behaviour oscillates).
class PhysicsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// x0 at which no finite energy exists (t = 1) or x0 = 0.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Fixed problem data and derived constants.
struct PhysicalContext {
  double m = 1.0;
  double zalpha = 0.0;
  int l = 0;
  int n = 0;
  double gamma = 0.0;  ///< sqrt((l+1/2)^2 - zalpha^2)
  double beta = 0.0;   ///< gamma + 1/2
  double L = 0.0;      ///< l + 1/2 - gamma
  double Gamma = 0.0;  ///< l + 1/2 + gamma
};

PhysicalContext derive_context(double m, double zalpha, int l, int n);

struct EnergyPoint {
  double t = 0.0;  ///< (E-m)/(E+m)
  double E = 0.0;
  double lB = 0.0;
  double eB = 0.0;
  bool physical = false;  ///< lB > 0
};

/// Eliminates E between ε = n and the definition of x0.
EnergyPoint energy_from_x0(const PhysicalContext& ctx, double x0);

struct QesParams {
  double b0 = 0.0;
  double b = 0.0;
  double c = 0.0;
};

QesParams qes_params(const PhysicalContext& ctx, double x0, double E, double lB);

/// b0, b, c as functions of x0 alone, valid on the ε = n surface.
QesParams qes_params_from_x0(const PhysicalContext& ctx, double x0);

/// (n+2)×(n+1) banded system acting on Q's coefficients a_0..a_n.
/// `scale(j,k)` bounds the magnitude of the elementary contributions to
/// `rows(j,k)` (b and c expanded as b0 + L/x0 and x0 + L/x0); residuals are
/// normalized against it.
struct KernelSystem {
  Eigen::MatrixXd rows;
  Eigen::MatrixXd scale;
};

/// Closed-form banded rows only; this is the form used inside the scan.
KernelSystem kernel_rows(const PhysicalContext& ctx, double x0);
KernelSystem kernel_rows(const PhysicalContext& ctx, double x0, const QesParams& q);

/// Rows obtained by applying the symbolic master operator to x^k and
/// evaluating the x^j coefficients.
Eigen::MatrixXd kernel_rows_engine(const PhysicalContext& ctx, double x0);
Eigen::MatrixXd kernel_rows_engine(const PhysicalContext& ctx, double x0, const QesParams& q);

/// Both constructions, cross-checked to 1e-12 relative. Throws
/// std::logic_error when they disagree. Also asserts that the would-be row
/// n+2 vanishes symbolically.
KernelSystem build_kernel_system(const PhysicalContext& ctx, double x0);
KernelSystem build_kernel_system(const PhysicalContext& ctx, double x0, const QesParams& q);

struct CoefficientSolution {
  std::vector<double> q;  ///< a_0..a_n, monic
  double r0 = 0.0;        ///< signed normalized residual of row 0
  double r1 = 0.0;        ///< signed normalized residual of row 1
};

CoefficientSolution solve_coefficients(const KernelSystem& sys);

/// Smallest singular value of the rows, relative to the Frobenius norm of
/// the elementary-term scale matrix.
double relative_sigma_min(const KernelSystem& sys);

enum class Branch { particle, antiparticle };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

struct Residuals {
  double kernel_r0 = 0.0;
  double kernel_r1 = 0.0;
  double sigma_min = 0.0;
  double divis_rem = 0.0;
  double ode_Q = 0.0;
  double ode_P = 0.0;
  double dirac_max = 0.0;
};

struct SpectralPoint {
  double x0 = 0.0;
  double t = 0.0;
  double E = 0.0;
  double lB = 0.0;
  double eB = 0.0;
  double b0 = 0.0;
  double b = 0.0;
  double c = 0.0;
  double x0p = 0.0;
  double bp = 0.0;
  double cp = 0.0;
  int epsilon = 0;
  int epsilonp = 1;
  std::vector<double> Qcoeffs;
  std::vector<double> Pcoeffs;
  Residuals residuals;
  Branch branch = Branch::particle;
};

struct ScanConfig {
  double x0_min = -5.0;
  double x0_max = 5.0;
  std::size_t grid_points = 20001;
  double tol_accept = 1e-8;
  double tol_refine = 1e-13;
  double exclusion = 1e-3;  ///< |x0| below this is never scanned
  unsigned workers = 1;
};

struct ScanDiagnostics {
  std::size_t grid_evaluations = 0;
  std::size_t skipped_cells = 0;  ///< non-finite values or pole hits
  std::size_t sign_changes = 0;
  std::size_t rejected_unphysical = 0;  ///< lB <= 0
  /// Refined roots of r1 where r0 or sigma_min failed the tolerance.
  std::vector<double> near_misses;
};

struct ScanResult {
  std::vector<SpectralPoint> points;
  ScanDiagnostics diagnostics;
};

ScanResult find_spectral_points(const PhysicalContext& ctx, const ScanConfig& scan);

struct PReconstruction {
  std::vector<double> p;
  double divis_rem = 0.0;
};

/// P(x) = [(L+x^2)Q - xQ'] / ((E+m) lB (x+x0)) by synthetic division.
PReconstruction reconstruct_p(const PhysicalContext& ctx, const SpectralPoint& point);

struct PrimedParams {
  double x0p = 0.0;
  double bp = 0.0;
  double cp = 0.0;
};

PrimedParams primed_params(const PhysicalContext& ctx, const SpectralPoint& point);

/// |ε'−(n+1)|, |b'−c'−(b−c)−x0| and |x0 x0' − zalpha²/(Γ+n+1)|, relative.
std::array<double, 3> compatibility_check(const PhysicalContext& ctx, const SpectralPoint& point);

struct OdeResiduals {
  double ode_Q = 0.0;
  double ode_P = 0.0;
};

/// Multiplied-through master operators on Q and on P (primed parameters, n+1),
/// max relative residual over the sample points.
OdeResiduals ode_residuals(const PhysicalContext& ctx, const SpectralPoint& point,
                           const std::vector<double>& sample_xs);

inline const std::vector<double> kDefaultOdeSamples{0.5, 1.0, 2.0};

/// Fills everything but dirac_max from x0 and the context.
SpectralPoint populate_point(const PhysicalContext& ctx, double x0);

/// Relative-agreement helper used by identity checks: |a-b| / max(|a|,|b|,tiny).
double relative_difference(double a, double b);

}  // namespace qes::spectra
