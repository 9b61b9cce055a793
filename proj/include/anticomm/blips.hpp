#pragma once

#include "anticomm/ensembles.hpp"
#include "anticomm/exact.hpp"
#include "anticomm/matrix_ops.hpp"
#include "anticomm/rng.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace anticomm {

// max(2, ceil(log log N)).
int default_weight_order(Index n);

// x^(2n) (2 - x)^(2n), expanded as sum_alpha c_alpha x^alpha over alpha in [2n, 4n].
struct WeightPolynomial {
  int order = 0;
  std::vector<BigInt> coeffs;  // coeffs[alpha - 2n]

  const BigInt& coefficient(int alpha) const;
  BigInt coefficient_sum() const;
  double operator()(double x) const;
};

WeightPolynomial weight_f(int n);

// Normalized polynomial localizing one intermediary regime of {k-checker, j-checker}.
// Zeros of order 2n at 0 and +-ratio(), of order 10n at far_zero(); value 1 at 1.
class IntermediaryWeight {
 public:
  IntermediaryWeight(int n, int s, int k, int j, Index dim);

  double operator()(double x) const;
  int order() const { return n_; }
  int side() const { return s_; }
  double scale() const { return scale_; }  // w_s: the regime sits near +-w_s N^(3/2)
  double ratio() const { return ratio_; }
  double far_zero() const { return far_zero_; }

 private:
  int n_, s_;
  double scale_, ratio_, far_zero_;
};

IntermediaryWeight weight_g(int n, int s, int k, int j, Index dim);

// Scales (1/k) sqrt(1 - 1/j), (1/j) sqrt(1 - 1/k) and 2/(kj).
struct CheckerScales {
  double w1, w2, w3;
};
CheckerScales checker_scales(int k, int j);

enum class BlipRegime { goe_checker_blip, largest_blip, intermediary_1, intermediary_2 };

const char* to_string(BlipRegime r);
BlipRegime parse_blip_regime(const std::string& tag);

using RegimeCounts = std::map<std::string, double>;

struct BlipPoint {
  double location = 0.0;
  double weight = 0.0;
};

struct BlipMoment {
  int m = 0;
  double value = 0.0;
};

struct BlipReport {
  BlipRegime regime = BlipRegime::goe_checker_blip;
  Index n = 0;
  int k = 0;
  std::optional<int> j;
  int weight_order = 0;
  std::size_t trials = 1;
  std::vector<BlipPoint> points;  // eigenvalues carrying nonzero weight
  std::vector<BlipMoment> moments;
  RegimeCounts counts;

  double moment(int m) const;
};

BlipReport blip_measure_goe_checker(const EigenSpectrum& eigs, int k, int n_weight, const std::vector<int>& orders);
BlipReport blip_measure_largest(const EigenSpectrum& eigs, int k, int j, int n_weight, const std::vector<int>& orders);
BlipReport blip_measure_intermediary(const EigenSpectrum& eigs, int s, int k, int j, int n_weight,
                                     const std::vector<int>& orders);

// Regime thresholds as geometric means of adjacent scales. The bulk scale is the edge of the
// limiting bulk support, 3.33 sqrt(1-1/k) N (times sqrt(1-1/j) with a second modulus).
struct RegimeThresholds {
  std::vector<double> cuts;        // ascending, on |lambda|
  std::vector<std::string> names;  // cuts.size() + 1 magnitude bands
};

RegimeThresholds regime_thresholds(Index n, int k, std::optional<int> j = std::nullopt);
RegimeCounts regime_classify(const EigenSpectrum& eigs, int k, std::optional<int> j = std::nullopt,
                             double threshold_scale = 1.0);

// E[Tr C^m] for a k x k hollow GOE matrix C.
BigInt hollow_goe_moment_exact(int k, int m);
// Sample mean and standard error of Tr C^m for m = 0..m_max from one set of draws.
std::vector<std::pair<double, double>> hollow_goe_moments_monte_carlo(int k, int m_max, std::size_t trials,
                                                                      std::uint64_t seed);

Rational theory_blip_moment_goe_checker(int m, int k);
Rational theory_largest_blip_moment(int m, int k, int j);

// Spectral checks of the mean/perturbation split. `checker` is a weight-1 k-checkerboard
// sample; `other` is GOE when j is empty, otherwise a weight-1 j-checkerboard sample.
struct WeylReport {
  double mean_mean_top = 0.0;   // largest eigenvalue of {mean(A), mean(B)} (j given)
  double expected_top = 0.0;    // 2 N^2 / (jk)
  Index mean_mean_rank = 0;
  double mean_other_norm = 0.0;   // ||{mean(A), B}|| (GOE case)
  double mean_other_bound = 0.0;  // 4 N^(3/2) / k
  Index mean_other_rank = 0;
  double perturbation_norm = 0.0;  // norm of everything but the leading component
  double max_eigen_shift = 0.0;    // max_i |lambda_i(full) - lambda_i(leading)|
  bool sandwich_holds = false;     // shift <= perturbation norm (Weyl)
};

WeylReport weyl_decomposition_check(const Matrix<double>& checker, const Matrix<double>& other, int k,
                                    std::optional<int> j = std::nullopt);

void write_blip_report_json(std::ostream& out, const BlipReport& r);

}  // namespace anticomm
