#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "spartan/distributions.hpp"
#include "spartan/linalg.hpp"
#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"

namespace spartan {

enum class BandwidthKind { scott, theorem1, fixed };

struct BandwidthRule {
  BandwidthKind kind = BandwidthKind::scott;
  SymMatrix fixed_h;

  static BandwidthRule scott() { return {BandwidthKind::scott, {}}; }
  static BandwidthRule theorem1() { return {BandwidthKind::theorem1, {}}; }
  static BandwidthRule fixed(SymMatrix h) { return {BandwidthKind::fixed, std::move(h)}; }
};

// Bandwidth matrix for a size-r subsample estimator:
//   scott:    r^{-1/(d+4)} * Sigma^{1/2}
//   theorem1: r^{-2/(d+6)} * Sigma^{1/2}
//   fixed:    H verbatim (must be positive definite)
inline SymMatrix bandwidth(const BandwidthRule& rule, std::size_t r, std::size_t d,
                           const SymMatrix& sigma_hat) {
  if (r < 2) throw UsageError("bandwidth: r >= 2 required");
  if (rule.kind == BandwidthKind::fixed) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(rule.fixed_h));
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw NumericError("bandwidth: fixed H is not positive definite");
    return rule.fixed_h;
  }
  if (sigma_hat.dim() != d) throw UsageError("bandwidth: sigma dimension mismatch");
  const double dd = static_cast<double>(d);
  const double factor = rule.kind == BandwidthKind::scott
                            ? std::pow(static_cast<double>(r), -1.0 / (dd + 4.0))
                            : std::pow(static_cast<double>(r), -2.0 / (dd + 6.0));
  SymMatrix root = sym_psd_sqrt(sigma_hat);
  SymMatrix h(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) h.set(i, j, factor * root(i, j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(h));
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NumericError("bandwidth: covariance is rank-deficient beyond ridge repair");
  return h;
}

// Gaussian-kernel density estimator with a full bandwidth matrix H:
//   p(z) = 1/(r |H|) * sum_i K(H^{-1} (z - x_i)),  K standard multivariate normal.
class KdeModel {
 public:
  KdeModel(Matrix points, SymMatrix h) : points_(std::move(points)), h_(std::move(h)) {
    points_.validate("kde points");
    if (h_.dim() != points_.cols()) throw UsageError("KdeModel: H dimension mismatch");
    const Eigen::MatrixXd hm = detail::to_eigen(h_);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(hm);
    const double det = lu.determinant();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hm);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw NumericError("KdeModel: H is not positive definite");
    h_inv_ = lu.solve(Eigen::MatrixXd::Identity(h_.dim(), h_.dim()));
    log_det_h_ = std::log(det);
    const double dd = static_cast<double>(points_.cols());
    log_prefactor_ = -0.5 * dd * std::log(2.0 * std::numbers::pi) - log_det_h_ -
                     std::log(static_cast<double>(points_.rows()));
  }

  std::size_t r() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  const SymMatrix& h() const { return h_; }
  const Eigen::MatrixXd& h_inv() const { return h_inv_; }
  double log_det_h() const { return log_det_h_; }

  double eval_one(std::span<const double> z) const {
    if (z.size() != points_.cols()) throw UsageError("kde_eval: dimension mismatch");
    const std::size_t d = points_.cols();
    std::vector<double> w(d);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < points_.rows(); ++i) {
      for (std::size_t a = 0; a < d; ++a) {
        double s = 0.0;
        for (std::size_t b = 0; b < d; ++b)
          s += h_inv_(a, b) * (z[b] - points_(i, b));
        w[a] = s;
      }
      double quad = 0.0;
      for (std::size_t a = 0; a < d; ++a) quad += w[a] * w[a];
      acc += std::exp(-0.5 * quad);
    }
    return static_cast<double>(acc) * std::exp(log_prefactor_);
  }

  std::vector<double> eval(const Matrix& queries) const {
    if (queries.cols() != points_.cols())
      throw UsageError("kde_eval: dimension mismatch");
    std::vector<double> out(queries.rows());
    for (std::size_t i = 0; i < queries.rows(); ++i) out[i] = eval_one(queries.row(i));
    return out;
  }

 private:
  Matrix points_;
  SymMatrix h_;
  Eigen::MatrixXd h_inv_;
  double log_det_h_ = 0.0;
  double log_prefactor_ = 0.0;
};

// 1 - mean sqrt(p_hat / p_ref). Zero when the estimates agree; may be negative
// when the reference is itself an estimate.
inline double hellinger_score(std::span<const double> p_hat,
                              std::span<const double> p_ref) {
  if (p_hat.size() != p_ref.size()) throw UsageError("hellinger_score: length mismatch");
  if (p_hat.empty()) throw UsageError("hellinger_score: empty input");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < p_hat.size(); ++i) {
    if (!(p_ref[i] > 0.0))
      throw DataError("hellinger_score: nonpositive reference density");
    acc += std::sqrt(p_hat[i] / p_ref[i]);
  }
  return 1.0 - static_cast<double>(acc) / static_cast<double>(p_hat.size());
}

}  // namespace spartan
