#include <cmath>
#include <random>

#include "doctest.h"
#include "qes/osp22.hpp"
#include "qes/spectra.hpp"

using namespace qes::spectra;
using doctest::Approx;

namespace {

// Closed-form n = 0 solution, derived independently of the solver: rows
// j = 0, 1 reduce to b = 0 and c = 0, so x0^2 = -L, E = -L m / (2 (Zα)^2 + L)
// and lB follows from x0 = Zα / ((E + m) lB).
struct ClosedFormN0 {
  double x0, E, lB, eB, b0;
};

ClosedFormN0 closed_form_n0(double m, double zalpha, int l) {
  const double j = l + 0.5;
  const double gamma = std::sqrt(j * j - zalpha * zalpha);
  const double L = j - gamma;
  ClosedFormN0 o{};
  o.x0 = -std::sqrt(-L);
  o.E = -L * m / (2.0 * zalpha * zalpha + L);
  o.lB = zalpha / ((o.E + m) * o.x0);
  o.eB = 1.0 / (o.lB * o.lB);
  o.b0 = 2.0 * o.E * zalpha * o.lB;
  return o;
}

// Unmultiplied companion equation
//   P'' + (2β/x − x − 1/(x+x0'))P' + (ε' + b'/x − c'/(x+x0'))P
// for P(x) = p0 + p1 x, relative to the largest term.
double unmultiplied_p_residual(double beta, double eps, double x0p, double bp, double cp, double p0, double p1,
                               double x) {
  const double p = p0 + p1 * x;
  const double dp = p1;
  const double terms[] = {2.0 * beta / x * dp, -x * dp, -dp / (x + x0p), eps * p, bp / x * p, -cp / (x + x0p) * p};
  double sum = 0.0;
  double mag = 0.0;
  for (double t : terms) {
    sum += t;
    mag = std::max(mag, std::abs(t));
  }
  return std::abs(sum) / mag;
}

const PhysicalContext kCtx0 = derive_context(1.0, 0.3, -1, 0);

}  // namespace

TEST_CASE("derive_context") {
  CHECK(kCtx0.gamma == Approx(0.4).epsilon(1e-15));
  CHECK(kCtx0.beta == Approx(0.9).epsilon(1e-15));
  CHECK(kCtx0.L == Approx(-0.9).epsilon(1e-15));
  CHECK(kCtx0.Gamma == Approx(-0.1).epsilon(1e-14));
  CHECK_THROWS_AS(derive_context(1.0, 0.6, 0, 0), PhysicsError);
  CHECK_THROWS_AS(derive_context(1.0, 0.5, -1, 0), PhysicsError);
  CHECK_THROWS_AS(derive_context(1.0, -0.1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(derive_context(1.0, 0.1, 0, -1), std::invalid_argument);

  // Exact replay of L·Γ = (l+1/2)^2 − γ^2 with the stored γ.
  using qes::sym::Rational;
  for (int l : {-3, -1, 0, 2}) {
    const PhysicalContext ctx = derive_context(1.0, 0.3, l, 1);
    const Rational j(2 * l + 1, 2);
    const Rational g = Rational::from_double(ctx.gamma);
    CHECK((j - g) * (j + g) == j * j - g * g);
    CHECK(ctx.L * ctx.Gamma == Approx(0.09).epsilon(1e-12));
    CHECK(ctx.gamma * ctx.gamma + 0.09 == Approx((l + 0.5) * (l + 0.5)).epsilon(1e-14));
  }
}

TEST_CASE("energy_from_x0") {
  const EnergyPoint at_root = energy_from_x0(kCtx0, -std::sqrt(0.9));
  CHECK(at_root.t == Approx(9.0).epsilon(1e-14));
  CHECK(at_root.E == Approx(-1.25).epsilon(1e-14));
  CHECK(at_root.lB == Approx(std::sqrt(1.6)).epsilon(1e-14));
  CHECK(at_root.eB == Approx(0.625).epsilon(1e-14));
  CHECK(at_root.physical);

  const EnergyPoint off = energy_from_x0(kCtx0, -0.5);
  CHECK(off.t == Approx(2.5).epsilon(1e-14));
  CHECK(off.E == Approx(-7.0 / 3.0).epsilon(1e-14));
  CHECK(off.lB == Approx(0.45).epsilon(1e-14));

  CHECK_THROWS_AS(energy_from_x0(kCtx0, std::sqrt(0.1)), PoleError);
  CHECK_THROWS_AS(energy_from_x0(kCtx0, 0.0), PoleError);
  CHECK_FALSE(energy_from_x0(kCtx0, std::sqrt(0.9)).physical);
}

TEST_CASE("qes_params") {
  const double x0 = -std::sqrt(0.9);
  const EnergyPoint ep = energy_from_x0(kCtx0, x0);
  const QesParams q = qes_params(kCtx0, x0, ep.E, ep.lB);
  CHECK(q.b0 == Approx(-std::sqrt(0.9)).epsilon(1e-14));
  CHECK(std::abs(q.b) < 1e-14);
  CHECK(std::abs(q.c) < 1e-14);

  const EnergyPoint off = energy_from_x0(kCtx0, -0.5);
  const QesParams q2 = qes_params(kCtx0, -0.5, off.E, off.lB);
  CHECK(q2.b0 == Approx(-0.63).epsilon(1e-13));
  CHECK(q2.b == Approx(1.17).epsilon(1e-13));
  CHECK(q2.c == Approx(1.3).epsilon(1e-13));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xs(-4.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const PhysicalContext ctx = derive_context(1.0, 0.3, -1 + (i % 4), i % 5);
    const double x0 = xs(rng);
    if (std::abs(x0) < 1e-3) continue;
    try {
      const EnergyPoint e = energy_from_x0(ctx, x0);
      const QesParams a = qes_params(ctx, x0, e.E, e.lB);
      const QesParams b = qes_params_from_x0(ctx, x0);
      CHECK(std::abs(a.b - a.c - a.b0 + x0) <= 1e-12 * (std::abs(a.b0) + std::abs(x0) + std::abs(a.c)));
      CHECK(relative_difference(a.b0, b.b0) < 1e-11);
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("kernel system rows") {
  const double x0 = -std::sqrt(0.9);
  const KernelSystem at_root = build_kernel_system(kCtx0, x0);
  REQUIRE(at_root.rows.rows() == 2);
  REQUIRE(at_root.rows.cols() == 1);
  CHECK(std::abs(at_root.rows(0, 0)) < 1e-14);
  CHECK(std::abs(at_root.rows(1, 0)) < 1e-14);

  const KernelSystem off = build_kernel_system(kCtx0, -0.5);
  CHECK(off.rows(0, 0) == Approx(-0.585).epsilon(1e-13));
  CHECK(off.rows(1, 0) == Approx(-0.13).epsilon(1e-12));

  for (int n = 0; n <= 4; ++n) {
    const PhysicalContext ctx = derive_context(1.0, 0.3, -1, n);
    const KernelSystem sys = kernel_rows(ctx, 0.77);
    const QesParams q = qes_params_from_x0(ctx, 0.77);
    CHECK(sys.rows(n + 1, n) == Approx(q.b - q.c).epsilon(1e-14));
    if (n >= 1) CHECK(sys.rows(n + 1, n - 1) == 1.0);
    // banded: row j only touches columns j-2..j+1
    for (int j = 0; j <= n + 1; ++j) {
      for (int k = 0; k <= n; ++k) {
        if (k < j - 2 || k > j + 1) CHECK(sys.rows(j, k) == 0.0);
      }
    }
  }
}

TEST_CASE("dual kernel construction agrees on randomized inputs") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  std::uniform_real_distribution<double> za(0.05, 0.45);
  for (int i = 0; i < 60; ++i) {
    const int n = i % 7;
    const int l = -2 + (i % 5);
    const PhysicalContext ctx = derive_context(1.0, za(rng), l, n);
    const double x0 = xs(rng);
    if (std::abs(x0) < 1e-3) continue;
    const KernelSystem closed = kernel_rows(ctx, x0);
    const Eigen::MatrixXd engine = kernel_rows_engine(ctx, x0);
    for (Eigen::Index j = 0; j < engine.rows(); ++j) {
      for (Eigen::Index k = 0; k < engine.cols(); ++k) {
        CHECK(std::abs(closed.rows(j, k) - engine(j, k)) <= 1e-12 * std::max(1.0, closed.scale(j, k)));
      }
    }
    CHECK_NOTHROW(build_kernel_system(ctx, x0));
  }
}

TEST_CASE("solve_coefficients") {
  SUBCASE("n = 0") {
    const CoefficientSolution s = solve_coefficients(build_kernel_system(kCtx0, -std::sqrt(0.9)));
    REQUIRE(s.q.size() == 1);
    CHECK(s.q[0] == 1.0);
    CHECK(std::abs(s.r0) < 1e-15);
    CHECK(std::abs(s.r1) < 1e-15);
    const CoefficientSolution off = solve_coefficients(build_kernel_system(kCtx0, -0.5));
    CHECK(std::abs(off.r1) > 1e-2);
  }
  SUBCASE("n = 1: a0 = -(b - c), confirmed by applying T to x + a0") {
    using qes::sym::MultiPoly;
    using qes::sym::Rational;
    const PhysicalContext ctx = derive_context(1.0, 0.3, -1, 1);
    const double x0 = 0.6180339887;
    const QesParams q = qes_params_from_x0(ctx, x0);
    const CoefficientSolution s = solve_coefficients(kernel_rows(ctx, x0));
    CHECK(s.q[1] == 1.0);
    CHECK(s.q[0] == -(q.b - q.c));

    qes::osp::TqParams p{MultiPoly(1), MultiPoly(Rational::from_double(ctx.beta)),
                         MultiPoly(Rational::from_double(x0)), MultiPoly(Rational::from_double(q.b)),
                         MultiPoly(Rational::from_double(q.c))};
    const MultiPoly image = qes::osp::build_tq_from_d6(p).at(1, 0).apply(
        MultiPoly::x_power(1) + MultiPoly(Rational::from_double(s.q[0])));
    CHECK(image.coeff_x(3).is_zero());
    CHECK(std::abs(image.coeff_x(2).constant_value().to_double()) < 1e-15);
  }
}

TEST_CASE("oracle spectral point for n = 0") {
  const ClosedFormN0 oracle = closed_form_n0(1.0, 0.3, -1);
  CHECK(oracle.x0 == Approx(-0.9486832981).epsilon(1e-10));
  CHECK(oracle.E == Approx(-1.25).epsilon(1e-14));

  const ScanResult r = find_spectral_points(kCtx0, ScanConfig{});
  REQUIRE(r.points.size() == 1);
  const SpectralPoint& p = r.points.front();
  CHECK(std::abs(p.x0 - oracle.x0) < 1e-9);
  CHECK(std::abs(p.E - oracle.E) < 1e-10);
  CHECK(std::abs(p.eB - oracle.eB) < 1e-10);
  CHECK(p.branch == Branch::antiparticle);
  CHECK(p.Qcoeffs == std::vector<double>{1.0});

  // P = (x^2 − 0.9) / ((E+m) lB (x + x0)) = −√10 x − 3
  REQUIRE(p.Pcoeffs.size() == 2);
  CHECK(std::abs(p.Pcoeffs[0] + 3.0) / 3.0 < 1e-9);
  CHECK(std::abs(p.Pcoeffs[1] + std::sqrt(10.0)) / std::sqrt(10.0) < 1e-9);
  CHECK(p.residuals.divis_rem < 1e-12);

  CHECK(p.x0p == Approx(-0.10540926).epsilon(1e-7));
  CHECK(p.cp == Approx(-0.9486833).epsilon(1e-7));
  CHECK(p.bp == Approx(-1.8973666).epsilon(1e-7));

  // independent confirmation through the unmultiplied companion equation
  const double x0p = 0.3 / ((oracle.E - 1.0) * oracle.lB);
  const double cp = 0.1 / x0p;  // −Γ/x0' with Γ = −0.1
  const double bp = oracle.b0 + cp;
  for (double x : {0.5, 1.0, 2.0}) {
    CHECK(unmultiplied_p_residual(0.9, 1.0, x0p, bp, cp, -3.0, -std::sqrt(10.0), x) < 1e-12);
  }
}

TEST_CASE("no n = 0 point when L > 0") {
  const PhysicalContext ctx = derive_context(1.0, 0.3, 0, 0);
  CHECK(ctx.L > 0.0);
  CHECK(find_spectral_points(ctx, ScanConfig{}).points.empty());
}

TEST_CASE("reconstruct_p") {
  SpectralPoint p = populate_point(kCtx0, -std::sqrt(0.9));
  const PReconstruction base = reconstruct_p(kCtx0, p);
  CHECK(base.p[0] == Approx(-3.0).epsilon(1e-12));
  CHECK(base.p[1] == Approx(-std::sqrt(10.0)).epsilon(1e-12));
  CHECK(base.divis_rem < 1e-15);

  p.Qcoeffs = {-2.5};
  const PReconstruction scaled = reconstruct_p(kCtx0, p);
  CHECK(scaled.p[0] == Approx(-2.5 * base.p[0]).epsilon(1e-14));
  CHECK(scaled.p[1] == Approx(-2.5 * base.p[1]).epsilon(1e-14));
}

TEST_CASE("primed parameters and compatibility") {
  const SpectralPoint p = populate_point(kCtx0, -std::sqrt(0.9));
  CHECK(p.bp - p.cp == Approx(p.b0).epsilon(1e-15));
  CHECK(p.x0 * p.x0p == Approx(0.1).epsilon(1e-12));
  for (double r : compatibility_check(kCtx0, p)) CHECK(r < 1e-12);

  // identities hold off-solution too
  const SpectralPoint off = populate_point(kCtx0, -std::sqrt(0.9) + 1e-3);
  for (double r : compatibility_check(kCtx0, off)) CHECK(r < 1e-12);

  SpectralPoint corrupted = p;
  corrupted.bp *= 1.001;
  const auto res = compatibility_check(kCtx0, corrupted);
  CHECK(res[1] > 1e-5);
  CHECK(res[0] < 1e-12);
}

TEST_CASE("ode residuals") {
  SpectralPoint p = populate_point(kCtx0, -std::sqrt(0.9));
  const OdeResiduals r = ode_residuals(kCtx0, p, {0.5, 1.0, 2.0});
  CHECK(r.ode_Q < 1e-15);
  CHECK(r.ode_P < 1e-12);

  SpectralPoint scaled = p;
  for (double& v : scaled.Qcoeffs) v *= 7.0;
  for (double& v : scaled.Pcoeffs) v *= 7.0;
  const OdeResiduals rs = ode_residuals(kCtx0, scaled, {0.5, 1.0, 2.0});
  CHECK(rs.ode_Q == Approx(r.ode_Q).epsilon(1e-6));
  CHECK(rs.ode_P == Approx(r.ode_P).epsilon(1e-6));

  const SpectralPoint generic = populate_point(kCtx0, -0.5);
  CHECK(ode_residuals(kCtx0, generic, {0.5, 1.0, 2.0}).ode_Q > 1e-2);

  CHECK_THROWS_AS(ode_residuals(kCtx0, p, {}), std::invalid_argument);
  CHECK_THROWS_AS(ode_residuals(kCtx0, p, {-1.0}), std::invalid_argument);
}

TEST_CASE("accepted points for n = 1..3 pass the residual suite") {
  for (int n = 1; n <= 3; ++n) {
    const PhysicalContext ctx = derive_context(1.0, 0.3, -1, n);
    const ScanResult r = find_spectral_points(ctx, ScanConfig{});
    CHECK_FALSE(r.points.empty());
    for (const SpectralPoint& p : r.points) {
      CHECK(p.lB > 0.0);
      CHECK(std::abs(p.E) > 1.0);
      CHECK(p.Qcoeffs.size() == static_cast<std::size_t>(n) + 1);
      CHECK(p.Pcoeffs.size() == static_cast<std::size_t>(n) + 2);
      CHECK(p.Pcoeffs.back() != 0.0);
      CHECK(p.residuals.kernel_r0 < 1e-8);
      CHECK(p.residuals.kernel_r1 < 1e-8);
      CHECK(p.residuals.sigma_min < 1e-8);
      CHECK(p.residuals.divis_rem < 1e-8);
      CHECK(p.residuals.ode_Q < 1e-8);
      CHECK(p.residuals.ode_P < 1e-8);
      CHECK(std::abs(p.Qcoeffs[n - 1] + (p.b - p.c)) <= 1e-10 * std::max(1.0, std::abs(p.b - p.c)));
      CHECK(relative_difference(p.x0 * p.lB * (p.E + 1.0), 0.3) < 1e-12);
      for (double v : compatibility_check(ctx, p)) CHECK(v < 1e-12);
    }
    for (std::size_t i = 1; i < r.points.size(); ++i) CHECK(r.points[i - 1].x0 < r.points[i].x0);
  }
}

TEST_CASE("monic normalization invariance") {
  const PhysicalContext ctx = derive_context(1.0, 0.3, -1, 2);
  const ScanResult r = find_spectral_points(ctx, ScanConfig{});
  REQUIRE_FALSE(r.points.empty());
  const double lambda = -3.75;

  // At a root the residuals stay at round-off level under rescaling.
  SpectralPoint root = r.points.front();
  for (double& v : root.Qcoeffs) v *= lambda;
  const PReconstruction root_p = reconstruct_p(ctx, root);
  root.Pcoeffs = root_p.p;
  CHECK(root_p.divis_rem < 1e-13);
  const OdeResiduals root_res = ode_residuals(ctx, root, kDefaultOdeSamples);
  CHECK(root_res.ode_Q < 1e-13);
  CHECK(root_res.ode_P < 1e-13);

  // Off a root the (order-one) relative residuals are unchanged and P scales.
  SpectralPoint p = populate_point(ctx, -0.7);
  const OdeResiduals base = ode_residuals(ctx, p, kDefaultOdeSamples);
  const PReconstruction base_p = reconstruct_p(ctx, p);
  CHECK(base.ode_Q > 1e-3);
  for (double& v : p.Qcoeffs) v *= lambda;
  const PReconstruction scaled_p = reconstruct_p(ctx, p);
  for (std::size_t i = 0; i < base_p.p.size(); ++i) {
    CHECK(scaled_p.p[i] == Approx(lambda * base_p.p[i]).epsilon(1e-13));
  }
  CHECK(scaled_p.divis_rem == Approx(base_p.divis_rem).epsilon(1e-12));
  p.Pcoeffs = scaled_p.p;
  const OdeResiduals scaled = ode_residuals(ctx, p, kDefaultOdeSamples);
  CHECK(scaled.ode_Q == Approx(base.ode_Q).epsilon(1e-12));
  CHECK(scaled.ode_P == Approx(base.ode_P).epsilon(1e-12));
  const EnergyPoint e = energy_from_x0(ctx, -0.7);
  CHECK(p.E == e.E);
  CHECK(p.eB == e.eB);
}

TEST_CASE("scan partitioning does not change results") {
  const PhysicalContext ctx = derive_context(1.0, 0.3, -1, 2);
  ScanConfig one;
  ScanConfig many;
  many.workers = 5;
  const ScanResult a = find_spectral_points(ctx, one);
  const ScanResult b = find_spectral_points(ctx, many);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].x0 == b.points[i].x0);
    CHECK(a.points[i].E == b.points[i].E);
    CHECK(a.points[i].Qcoeffs == b.points[i].Qcoeffs);
    CHECK(a.points[i].Pcoeffs == b.points[i].Pcoeffs);
  }
}

TEST_CASE("scan configuration errors") {
  ScanConfig bad;
  bad.x0_min = 1.0;
  bad.x0_max = 1.0;
  CHECK_THROWS_AS(find_spectral_points(kCtx0, bad), std::invalid_argument);
  ScanConfig inside;
  inside.x0_min = -1e-4;
  inside.x0_max = 1e-4;
  CHECK_THROWS_AS(find_spectral_points(kCtx0, inside), std::invalid_argument);
  ScanConfig few;
  few.grid_points = 1;
  CHECK_THROWS_AS(find_spectral_points(kCtx0, few), std::invalid_argument);
}

TEST_CASE("both signs of x0 are scanned") {
  const PhysicalContext ctx = derive_context(1.0, 0.3, -1, 2);
  const ScanResult r = find_spectral_points(ctx, ScanConfig{});
  bool negative = false;
  bool positive = false;
  for (const auto& p : r.points) {
    negative |= p.x0 < 0.0;
    positive |= p.x0 > 0.0;
  }
  CHECK(negative);
  CHECK(positive);
  CHECK(r.diagnostics.rejected_unphysical == r.points.size());
}
