#pragma once

#include "balance_lab/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace balance_lab {

/// Least-squares fit y = k x + b with Pearson correlation r.
/// k is empty when x has zero variance (b is then mean(y)); r is empty when
/// either axis has zero variance.
struct RegressionResult {
  std::optional<double> k;
  double b = 0.0;
  std::optional<double> r;
  std::size_t n_points = 0;
};

template <typename DerivedX, typename DerivedY>
RegressionResult linear_regression(const Eigen::MatrixBase<DerivedX>& xs,
                                   const Eigen::MatrixBase<DerivedY>& ys) {
  static_assert(DerivedX::IsVectorAtCompileTime && DerivedY::IsVectorAtCompileTime,
                "linear_regression expects vectors");
  if (xs.size() != ys.size()) throw InvalidArgument("regression inputs differ in length");
  if (xs.size() < 2) throw InvalidArgument("regression needs at least two points");

  const auto x = xs.template cast<double>().eval();
  const auto y = ys.template cast<double>().eval();
  const bool x_constant = (x.array() == x(0)).all();
  const bool y_constant = (y.array() == y(0)).all();

  RegressionResult out;
  out.n_points = static_cast<std::size_t>(x.size());
  const double mx = x.mean();
  const double my = y.mean();
  if (x_constant) {
    out.b = my;
    return out;
  }
  const auto dx = (x.array() - mx).eval();
  const auto dy = (y.array() - my).eval();
  const double sxx = dx.square().sum();
  const double sxy = (dx * dy).sum();
  const double syy = dy.square().sum();
  out.k = y_constant ? 0.0 : sxy / sxx;
  out.b = my - *out.k * mx;
  if (!y_constant) out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return out;
}

inline RegressionResult linear_regression(std::span<const double> xs, std::span<const double> ys) {
  using Map = Eigen::Map<const Eigen::VectorXd>;
  return linear_regression(Map(xs.data(), static_cast<Eigen::Index>(xs.size())),
                           Map(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

}  // namespace balance_lab
