#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "qes/osp22.hpp"
#include "qes/spectra.hpp"

namespace qes::spectra {

using sym::MultiPoly;
using sym::Var;

KernelSystem kernel_rows(const PhysicalContext& ctx, double x0, const QesParams& q) {
  const int n = ctx.n;
  const double beta = ctx.beta;
  const double l_over_x0 = std::abs(ctx.L / x0);
  KernelSystem sys{Eigen::MatrixXd::Zero(n + 2, n + 1), Eigen::MatrixXd::Zero(n + 2, n + 1)};

  for (int j = 0; j <= n + 1; ++j) {
    if (j + 1 <= n) {
      const double v = x0 * (j + 1) * (j + 2.0 * beta);
      sys.rows(j, j + 1) = v;
      sys.scale(j, j + 1) = std::abs(v);
    }
    if (j <= n) {
      const double diag = j * (j - 2.0 + 2.0 * beta);
      sys.rows(j, j) = diag + q.b * x0;
      sys.scale(j, j) = std::abs(diag) + std::abs(q.b0 * x0) + std::abs(ctx.L);
    }
    if (j - 1 >= 0 && j - 1 <= n) {
      const double lin = (n - j + 1) * x0;
      sys.rows(j, j - 1) = lin + q.b - q.c;
      sys.scale(j, j - 1) = std::abs(lin) + std::abs(q.b0) + std::abs(x0) + 2.0 * l_over_x0;
    }
    if (j - 2 >= 0 && j - 2 <= n) {
      sys.rows(j, j - 2) = n - j + 2;
      sys.scale(j, j - 2) = std::abs(n - j + 2.0);
    }
  }
  return sys;
}

KernelSystem kernel_rows(const PhysicalContext& ctx, double x0) {
  return kernel_rows(ctx, x0, qes_params_from_x0(ctx, x0));
}

namespace {

/// Polynomials T·x^k for k = 0..n with n fixed and β, x0, b, c symbolic.
std::vector<MultiPoly> engine_images(int n) {
  osp::TqParams p = osp::TqParams::symbolic();
  p.n = MultiPoly(n);
  const sym::DiffOp t = osp::build_tq_from_d6(p).at(1, 0);

  std::vector<MultiPoly> images;
  images.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    images.push_back(t.apply(MultiPoly::x_power(static_cast<unsigned>(k))));
  }
  if (!images.back().coeff_x(static_cast<unsigned>(n) + 2).is_zero()) {
    throw std::logic_error("leading x^(n+2) coefficient of T x^n does not cancel");
  }
  for (const auto& image : images) {
    if (image.degree(Var::x) > n + 1) throw std::logic_error("T maps a degree-n polynomial beyond degree n+1");
  }
  return images;
}

}  // namespace

Eigen::MatrixXd kernel_rows_engine(const PhysicalContext& ctx, double x0, const QesParams& q) {
  const int n = ctx.n;
  const std::vector<MultiPoly> images = engine_images(n);
  const sym::NumericValues values{0.0, static_cast<double>(n), ctx.beta, x0, q.b, q.c};

  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(n + 2, n + 1);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n + 1; ++j) {
      rows(j, k) = images[static_cast<std::size_t>(k)].coeff_x(static_cast<unsigned>(j)).evaluate(values);
    }
  }
  return rows;
}

Eigen::MatrixXd kernel_rows_engine(const PhysicalContext& ctx, double x0) {
  return kernel_rows_engine(ctx, x0, qes_params_from_x0(ctx, x0));
}

KernelSystem build_kernel_system(const PhysicalContext& ctx, double x0, const QesParams& q) {
  KernelSystem sys = kernel_rows(ctx, x0, q);
  const Eigen::MatrixXd engine = kernel_rows_engine(ctx, x0, q);
  for (Eigen::Index j = 0; j < sys.rows.rows(); ++j) {
    for (Eigen::Index k = 0; k < sys.rows.cols(); ++k) {
      const double a = sys.rows(j, k);
      const double b = engine(j, k);
      const double ref = std::max({std::abs(a), std::abs(b), sys.scale(j, k)});
      if (std::abs(a - b) > 1e-12 * ref) {
        throw std::logic_error("kernel system constructions disagree at row " + std::to_string(j) + ", column " +
                               std::to_string(k));
      }
    }
  }
  return sys;
}

KernelSystem build_kernel_system(const PhysicalContext& ctx, double x0) {
  return build_kernel_system(ctx, x0, qes_params_from_x0(ctx, x0));
}

namespace {

double normalized_row_residual(const KernelSystem& sys, Eigen::Index j, const std::vector<double>& a) {
  double value = 0.0;
  double scale = 0.0;
  for (Eigen::Index k = 0; k < sys.rows.cols(); ++k) {
    value += sys.rows(j, k) * a[static_cast<std::size_t>(k)];
    scale += sys.scale(j, k) * std::abs(a[static_cast<std::size_t>(k)]);
  }
  return scale > 0.0 ? value / scale : 0.0;
}

}  // namespace

CoefficientSolution solve_coefficients(const KernelSystem& sys) {
  const auto cols = sys.rows.cols();
  const int n = static_cast<int>(cols) - 1;
  CoefficientSolution out;
  out.q.assign(static_cast<std::size_t>(n) + 1, 0.0);
  out.q[static_cast<std::size_t>(n)] = 1.0;

  // Row j fixes a_{j-2}; its pivot n-j+2 is at least 1.
  for (int j = n + 1; j >= 2; --j) {
    double s = 0.0;
    for (int k = j - 1; k <= std::min(j + 1, n); ++k) s += sys.rows(j, k) * out.q[static_cast<std::size_t>(k)];
    out.q[static_cast<std::size_t>(j - 2)] = -s / sys.rows(j, j - 2);
  }
  out.r0 = normalized_row_residual(sys, 0, out.q);
  out.r1 = normalized_row_residual(sys, 1, out.q);
  return out;
}

double relative_sigma_min(const KernelSystem& sys) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys.rows);
  const double norm = sys.scale.norm();
  const auto& s = svd.singularValues();
  return norm > 0.0 ? s(s.size() - 1) / norm : 0.0;
}

}  // namespace qes::spectra
