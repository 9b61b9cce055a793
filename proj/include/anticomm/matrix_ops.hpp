#pragma once

#include "anticomm/ensembles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <vector>

namespace anticomm {

struct EigenSpectrum {
  Vector<double> values;  // ascending
  Index dimension = 0;
};

struct NormalizedMoment {
  int order = 0;
  double value = 0.0;
  double exponent = 0.0;  // total power of N in the denominator
};

enum class TracePath { automatic, direct, spectral };

template <typename Derived>
void symmetrize(Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j) {
      const Scalar avg = (m(i, j) + m(j, i)) / Scalar(2);
      m(i, j) = avg;
      m(j, i) = avg;
    }
}

// AB + BA, followed by exact symmetrization.
template <typename DA, typename DB>
Matrix<typename DA::Scalar> anticommutator(const Eigen::MatrixBase<DA>& a,
                                           const Eigen::MatrixBase<DB>& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          ErrorCode::invalid_dimension, "anticommutator: operands must be square of equal size");
  Matrix<typename DA::Scalar> c(a.rows(), a.cols());
  c.noalias() = a * b;
  c.noalias() += b * a;
  symmetrize(c);
  return c;
}

// Sum of the l-fold products over all l! orderings of the inputs.
template <typename Scalar>
Matrix<Scalar> ell_anticommutator(const std::vector<Matrix<Scalar>>& factors) {
  require(!factors.empty(), ErrorCode::invalid_input, "ell_anticommutator: empty factor list");
  const Index n = factors.front().rows();
  for (const auto& f : factors)
    require(f.rows() == n && f.cols() == n, ErrorCode::invalid_dimension,
            "ell_anticommutator: factors must be square of equal size");

  std::vector<std::size_t> order(factors.size());
  std::iota(order.begin(), order.end(), 0);
  Matrix<Scalar> sum = Matrix<Scalar>::Zero(n, n);
  Matrix<Scalar> product(n, n), scratch(n, n);
  do {
    product = factors[order[0]];
    for (std::size_t t = 1; t < order.size(); ++t) {
      scratch.noalias() = product * factors[order[t]];
      product.swap(scratch);
    }
    sum += product;
  } while (std::next_permutation(order.begin(), order.end()));
  symmetrize(sum);
  return sum;
}

template <typename Derived>
EigenSpectrum eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_dimension, "eigenvalues: matrix must be square");
  require(m.allFinite(), ErrorCode::invalid_input, "eigenvalues: non-finite entries");
  const Matrix<double> md = m.template cast<double>();
  Eigen::SelfAdjointEigenSolver<Matrix<double>> solver(md, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::numerical_failure,
          "eigenvalues: symmetric eigensolver did not converge");
  return {solver.eigenvalues(), m.rows()};
}

// Sum of (lambda / N^p)^m over the spectrum, divided by N.
double spectral_moment(const EigenSpectrum& spectrum, int m, double p = 1.0);

template <typename Derived>
NormalizedMoment trace_power_moment(const Eigen::MatrixBase<Derived>& m, int order,
                                    TracePath path = TracePath::automatic) {
  require(order >= 1, ErrorCode::invalid_input, "trace_power_moment: order must be >= 1");
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::invalid_dimension,
          "trace_power_moment: matrix must be square and nonempty");
  if (path == TracePath::automatic) path = order <= 12 ? TracePath::direct : TracePath::spectral;
  const double n = static_cast<double>(m.rows());
  NormalizedMoment out{order, 0.0, order + 1.0};
  if (path == TracePath::direct) {
    require(order <= 12, ErrorCode::budget_exceeded, "direct trace path limited to order <= 12");
    // Scale by 1/N first so the powers stay O(N).
    const Matrix<double> scaled = m.template cast<double>() / n;
    Matrix<double> power = scaled, scratch(m.rows(), m.cols());
    for (int t = 1; t < order; ++t) {
      scratch.noalias() = power * scaled;
      power.swap(scratch);
    }
    out.value = power.trace() / n;
  } else {
    out.value = spectral_moment(eigenvalues(m), order, 1.0);
  }
  return out;
}

}  // namespace anticomm
