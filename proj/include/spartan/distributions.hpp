#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "spartan/linalg.hpp"
#include "spartan/matrix.hpp"
#include "spartan/rng.hpp"

namespace spartan {

enum class ComponentKind { gaussian, student_t };

struct MixtureComponent {
  double weight = 1.0;
  std::vector<double> mean;
  SymMatrix scale;  // scale matrix, not covariance, for student_t
  ComponentKind kind = ComponentKind::gaussian;
  double dof = 0.0;  // student_t only
};

// Finite mixture of Gaussian / multivariate-t components.
struct DistributionSpec {
  std::vector<MixtureComponent> components;

  std::size_t dim() const { return components.empty() ? 0 : components[0].mean.size(); }

  void validate() const {
    if (components.empty()) throw UsageError("DistributionSpec: no components");
    const std::size_t d = dim();
    double wsum = 0.0;
    for (const auto& c : components) {
      if (c.mean.size() != d || c.scale.dim() != d)
        throw UsageError("DistributionSpec: inconsistent component dimensions");
      if (!(c.weight > 0.0) || c.weight > 1.0)
        throw UsageError("DistributionSpec: weight outside (0,1]");
      if (c.kind == ComponentKind::student_t && !(c.dof > 0.0))
        throw UsageError("DistributionSpec: non-positive t dof");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(detail::to_eigen(c.scale));
      if (es.eigenvalues().minCoeff() < -1e-10)
        throw UsageError("DistributionSpec: scale matrix is not PSD");
      wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
      throw UsageError("DistributionSpec: weights do not sum to 1");
  }
};

namespace detail {

inline SymMatrix ar_correlation(std::size_t d, double rho) {
  SymMatrix s(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      s.set(i, j, std::pow(rho, static_cast<double>(i - j)));
  return s;
}

}  // namespace detail

// N(0, Sigma) with Sigma_ij = 0.5^|i-j|.
inline DistributionSpec make_d1(std::size_t d) {
  if (d == 0) throw UsageError("make_d1: dimension must be positive");
  DistributionSpec spec;
  spec.components.push_back(
      {1.0, std::vector<double>(d, 0.0), detail::ar_correlation(d, 0.5),
       ComponentKind::gaussian, 0.0});
  return spec;
}

// N(1,Sigma)/4 + N(-1,Sigma)/4 + N(0,Sigma)/2 with Sigma_ij = 0.8^|i-j|.
inline DistributionSpec make_d2(std::size_t d) {
  if (d == 0) throw UsageError("make_d2: dimension must be positive");
  const SymMatrix sigma = detail::ar_correlation(d, 0.8);
  DistributionSpec spec;
  spec.components.push_back(
      {0.25, std::vector<double>(d, 1.0), sigma, ComponentKind::gaussian, 0.0});
  spec.components.push_back(
      {0.25, std::vector<double>(d, -1.0), sigma, ComponentKind::gaussian, 0.0});
  spec.components.push_back(
      {0.5, std::vector<double>(d, 0.0), sigma, ComponentKind::gaussian, 0.0});
  return spec;
}

// Equal-weight t mixture with dof 8, 10, 12 and Sigma_ij = 0.8^|i-j|.
inline DistributionSpec make_d3(std::size_t d) {
  if (d == 0) throw UsageError("make_d3: dimension must be positive");
  const SymMatrix sigma = detail::ar_correlation(d, 0.8);
  DistributionSpec spec;
  for (double dof : {8.0, 10.0, 12.0})
    spec.components.push_back({1.0 / 3.0, std::vector<double>(d, 0.0), sigma,
                               ComponentKind::student_t, dof});
  return spec;
}

// i.i.d. draws from the mixture. When component_out is non-null it receives
// the component index of each draw.
inline Matrix sample(const DistributionSpec& spec, std::size_t n, RngStream& rng,
                     std::vector<int>* component_out = nullptr) {
  spec.validate();
  if (n == 0) throw UsageError("sample: n must be positive");
  const std::size_t d = spec.dim();
  const std::size_t k = spec.components.size();

  std::vector<SymMatrix> roots;
  roots.reserve(k);
  for (const auto& c : spec.components) roots.push_back(sym_psd_sqrt(c.scale, 0.0));

  std::vector<double> cumweight(k);
  double acc = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    acc += spec.components[c].weight;
    cumweight[c] = acc;
  }
  cumweight.back() = 1.0;

  Matrix out(n, d);
  if (component_out) component_out->assign(n, 0);
  std::vector<double> z(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    std::size_t c = 0;
    while (c + 1 < k && u >= cumweight[c]) ++c;
    if (component_out) (*component_out)[i] = static_cast<int>(c);
    const auto& comp = spec.components[c];
    for (std::size_t j = 0; j < d; ++j) z[j] = rng.normal();
    double t_factor = 1.0;
    if (comp.kind == ComponentKind::student_t)
      t_factor = std::sqrt(comp.dof / rng.chi_squared(comp.dof));
    for (std::size_t j = 0; j < d; ++j) {
      double v = 0.0;
      for (std::size_t l = 0; l < d; ++l) v += roots[c](j, l) * z[l];
      out(i, j) = comp.mean[j] + t_factor * v;
    }
  }
  return out;
}

namespace detail {

struct ComponentDensity {
  Eigen::MatrixXd inv;
  double log_norm;  // log of the density prefactor
  double dof;       // 0 for gaussian
};

inline ComponentDensity prepare_density(const MixtureComponent& c) {
  const auto d = static_cast<double>(c.mean.size());
  const Eigen::MatrixXd sigma = to_eigen(c.scale);
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericError("density: singular scale matrix");
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < sigma.rows(); ++i)
    log_det += 2.0 * std::log(llt.matrixL()(i, i));
  ComponentDensity out;
  out.inv = llt.solve(Eigen::MatrixXd::Identity(sigma.rows(), sigma.cols()));
  out.dof = c.kind == ComponentKind::student_t ? c.dof : 0.0;
  if (c.kind == ComponentKind::gaussian) {
    out.log_norm = -0.5 * (d * std::log(2.0 * std::numbers::pi) + log_det);
  } else {
    const double nu = c.dof;
    out.log_norm = std::lgamma(0.5 * (nu + d)) - std::lgamma(0.5 * nu) -
                   0.5 * d * std::log(nu * std::numbers::pi) - 0.5 * log_det;
  }
  return out;
}

}  // namespace detail

// Exact mixture density at each row of `points`.
inline std::vector<double> density(const DistributionSpec& spec, const Matrix& points) {
  spec.validate();
  const std::size_t d = spec.dim();
  if (points.cols() != d) throw UsageError("density: dimension mismatch");

  std::vector<detail::ComponentDensity> prep;
  prep.reserve(spec.components.size());
  for (const auto& c : spec.components) prep.push_back(detail::prepare_density(c));

  std::vector<double> out(points.rows());
  Eigen::VectorXd diff(d);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    double p = 0.0;
    for (std::size_t c = 0; c < spec.components.size(); ++c) {
      const auto& comp = spec.components[c];
      for (std::size_t j = 0; j < d; ++j) diff(j) = points(i, j) - comp.mean[j];
      const double quad = diff.dot(prep[c].inv * diff);
      double log_f;
      if (comp.kind == ComponentKind::gaussian) {
        log_f = prep[c].log_norm - 0.5 * quad;
      } else {
        const double nu = comp.dof;
        log_f = prep[c].log_norm -
                0.5 * (nu + static_cast<double>(d)) * std::log1p(quad / nu);
      }
      p += comp.weight * std::exp(log_f);
    }
    out[i] = p;
  }
  return out;
}

}  // namespace spartan
