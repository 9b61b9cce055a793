#pragma once

#include "anticomm/error.hpp"
#include "anticomm/rng.hpp"

#include <Eigen/Dense>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace anticomm {

using Index = Eigen::Index;

template <typename Scalar = double>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class EnsembleKind { goe, pte, bce, checkerboard, hollow_goe };

const char* to_string(EnsembleKind kind);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::goe;
  Index n = 0;
  Index k = 1;
  double weight = 1.0;
  EntryDistribution distribution = EntryDistribution::standard_normal;

  // Throws invalid-dimension when the (kind, n, k) combination is not constructible.
  void validate() const;
};

namespace detail {

inline void require_divides(Index k, Index n, const char* what) {
  require(k >= 1 && n % k == 0, ErrorCode::invalid_dimension,
          std::string(what) + ": k must divide N (N=" + std::to_string(n) +
              ", k=" + std::to_string(k) + ")");
}

inline Index positive_mod(Index a, Index m) { return ((a % m) + m) % m; }

}  // namespace detail

// Off-diagonal entries drawn from `dist` and mirrored; diagonal scaled by sqrt(2).
template <typename Scalar = double>
Matrix<Scalar> sample_goe(Index n, RngSeed seed,
                          EntryDistribution dist = EntryDistribution::standard_normal) {
  require(n >= 1, ErrorCode::invalid_dimension, "GOE requires N >= 1");
  RandomStream rng(seed);
  Matrix<Scalar> m(n, n);
  const double diag_scale = std::sqrt(2.0);
  for (Index i = 0; i < n; ++i) {
    m(i, i) = static_cast<Scalar>(diag_scale * rng.draw(dist));
    for (Index j = i + 1; j < n; ++j) {
      const auto v = static_cast<Scalar>(rng.draw(dist));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> sample_pte(Index n, RngSeed seed,
                          EntryDistribution dist = EntryDistribution::standard_normal) {
  require(n >= 2 && n % 2 == 0, ErrorCode::invalid_dimension, "PTE requires even N >= 2");
  RandomStream rng(seed);
  const Index half = n / 2;
  Vector<Scalar> b(half);
  for (Index i = 0; i < half; ++i) b(i) = static_cast<Scalar>(rng.draw(dist));
  Matrix<Scalar> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index d = i > j ? i - j : j - i;
      m(i, j) = d <= half - 1 ? b(d) : b(n - 1 - d);
    }
  }
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> sample_bce(Index n, Index k, RngSeed seed,
                          EntryDistribution dist = EntryDistribution::standard_normal) {
  detail::require_divides(k, n, "BCE");
  RandomStream rng(seed);
  const Index p = n / k;
  std::vector<Matrix<Scalar>> blocks(static_cast<std::size_t>(p), Matrix<Scalar>(k, k));
  auto draw_symmetric = [&](Matrix<Scalar>& blk) {
    for (Index r = 0; r < k; ++r)
      for (Index c = r; c < k; ++c) blk(r, c) = blk(c, r) = static_cast<Scalar>(rng.draw(dist));
  };
  draw_symmetric(blocks[0]);
  for (Index i = 1; 2 * i < p; ++i) {
    auto& blk = blocks[static_cast<std::size_t>(i)];
    for (Index r = 0; r < k; ++r)
      for (Index c = 0; c < k; ++c) blk(r, c) = static_cast<Scalar>(rng.draw(dist));
    blocks[static_cast<std::size_t>(p - i)] = blk.transpose();
  }
  if (p % 2 == 0 && p > 1) draw_symmetric(blocks[static_cast<std::size_t>(p / 2)]);

  Matrix<Scalar> m(n, n);
  for (Index r = 0; r < p; ++r)
    for (Index c = 0; c < p; ++c)
      m.block(r * k, c * k, k, k) = blocks[static_cast<std::size_t>(detail::positive_mod(c - r, p))];
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> sample_checkerboard(Index n, Index k, double w, RngSeed seed,
                                   EntryDistribution dist = EntryDistribution::standard_normal) {
  detail::require_divides(k, n, "checkerboard");
  RandomStream rng(seed);
  Matrix<Scalar> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Scalar v = (j - i) % k == 0 ? static_cast<Scalar>(w) : static_cast<Scalar>(rng.draw(dist));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> sample_hollow_goe(Index k, RngSeed seed,
                                 EntryDistribution dist = EntryDistribution::standard_normal) {
  require(k >= 1, ErrorCode::invalid_dimension, "hollow GOE requires k >= 1");
  RandomStream rng(seed);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(k, k);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) m(i, j) = m(j, i) = static_cast<Scalar>(rng.draw(dist));
  return m;
}

template <typename Scalar = double>
Matrix<Scalar> mean_matrix(Index n, Index k) {
  detail::require_divides(k, n, "mean matrix");
  Matrix<Scalar> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = (detail::positive_mod(i - j, k) == 0) ? Scalar(1) : Scalar(0);
  return m;
}

// Returns (mean part, perturbation part) with mean + perturbation == m exactly.
template <typename Derived>
std::pair<Matrix<typename Derived::Scalar>, Matrix<typename Derived::Scalar>> perturbation_split(
    const Eigen::MatrixBase<Derived>& m, Index k) {
  using Scalar = typename Derived::Scalar;
  require(m.rows() == m.cols(), ErrorCode::invalid_dimension, "perturbation_split needs a square matrix");
  Matrix<Scalar> mean = mean_matrix<Scalar>(m.rows(), k);
  Matrix<Scalar> rest = m - mean;
  return {std::move(mean), std::move(rest)};
}

template <typename Scalar = double>
Matrix<Scalar> sample(const EnsembleSpec& spec, RngSeed seed) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::goe: return sample_goe<Scalar>(spec.n, seed, spec.distribution);
    case EnsembleKind::pte: return sample_pte<Scalar>(spec.n, seed, spec.distribution);
    case EnsembleKind::bce: return sample_bce<Scalar>(spec.n, spec.k, seed, spec.distribution);
    case EnsembleKind::checkerboard:
      return sample_checkerboard<Scalar>(spec.n, spec.k, spec.weight, seed, spec.distribution);
    case EnsembleKind::hollow_goe: return sample_hollow_goe<Scalar>(spec.n, seed, spec.distribution);
  }
  throw Error(ErrorCode::invalid_input, "unknown ensemble kind");
}

template <typename Derived>
bool is_exactly_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

// CSV dump: header `# symmetric N=<N> kind=<kind>`, one row per line, 17 significant digits.
void write_matrix_csv(std::ostream& out, const Matrix<double>& m, const std::string& kind);

}  // namespace anticomm
