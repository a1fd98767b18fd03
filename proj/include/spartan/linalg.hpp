#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "spartan/matrix.hpp"

namespace spartan {

namespace detail {

inline Eigen::MatrixXd to_eigen(const SymMatrix& s) {
  Eigen::MatrixXd m(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) m(i, j) = s(i, j);
  return m;
}

inline SymMatrix from_eigen_sym(const Eigen::MatrixXd& m) {
  SymMatrix s(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

}  // namespace detail

// Unbiased (n-1 divisor) sample covariance of the rows.
inline SymMatrix empirical_covariance(const Matrix& sample) {
  sample.validate();
  const std::size_t n = sample.rows(), d = sample.cols();
  if (n < 2) throw UsageError("empirical_covariance: insufficient rows for covariance");
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += sample(i, j);
  for (double& m : mean) m /= static_cast<double>(n);
  SymMatrix cov(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += (sample(i, a) - mean[a]) * (sample(i, b) - mean[b]);
      cov.set(a, b, s / static_cast<double>(n - 1));
    }
  }
  return cov;
}

inline constexpr double kAutoRidge = -1.0;

// Symmetric PSD square root via eigen-decomposition. Negative eigenvalues are
// clamped to zero. With ridge = kAutoRidge a ridge of 1e-10 * trace/d is added
// only when the smallest eigenvalue falls below that threshold.
inline SymMatrix sym_psd_sqrt(const SymMatrix& s, double ridge = kAutoRidge) {
  const std::size_t d = s.dim();
  if (d == 0) throw UsageError("sym_psd_sqrt: empty matrix");
  for (double v : s.values())
    if (!std::isfinite(v)) throw DataError("sym_psd_sqrt: non-finite entry");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(s));
  if (es.info() != Eigen::Success) throw NumericError("sym_psd_sqrt: eigen-solver failed");
  Eigen::VectorXd lambda = es.eigenvalues();
  if (ridge == kAutoRidge) {
    const double threshold = 1e-10 * s.trace() / static_cast<double>(d);
    ridge = (lambda.minCoeff() < threshold) ? std::max(threshold, 0.0) : 0.0;
  } else if (ridge < 0.0) {
    throw UsageError("sym_psd_sqrt: negative ridge");
  }
  Eigen::VectorXd root(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double v = lambda(i) + ridge;
    root(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  const Eigen::MatrixXd r =
      es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  return detail::from_eigen_sym(r);
}

}  // namespace spartan
