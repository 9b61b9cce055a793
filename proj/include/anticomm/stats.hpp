#pragma once

#include "anticomm/blips.hpp"
#include "anticomm/pairs.hpp"
#include "anticomm/spectra.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace anticomm {

struct ExperimentPlan {
  PairSpec pair;
  std::vector<Index> dims;
  std::size_t trials = 1;
  std::optional<double> delta;  // when set, trials at N are ceil(N^delta)
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t first_trial = 0;  // offset into the trial stream, for disjoint replicates

  std::size_t trials_for(Index n) const;
  void validate() const;
};

struct ExperimentResult {
  std::vector<Index> dims;
  std::vector<std::vector<EigenSpectrum>> spectra;  // [dim index][trial], in trial order
};

// Runs jobs 0..count-1 on up to `threads` workers. Each job must write only its own output slot.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job);

ExperimentResult run_trials(const ExperimentPlan& plan);

BlipReport blip_measure(const EigenSpectrum& eigs, const PairSpec& pair, BlipRegime regime, int n_weight,
                        const std::vector<int>& orders);

// Mean of per-trial blip measures over the trials of `spectra`.
BlipReport average_blip_reports(const std::vector<BlipReport>& reports);

// One averaged measure per N over the first g(N) = ceil(N^delta) samples (delta defaults to 1/2).
std::vector<BlipReport> averaged_blip_measure(const ExperimentPlan& plan, BlipRegime regime, int n_weight,
                                              const std::vector<int>& orders);

struct ConvergenceRow {
  Index n = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;
  double central4 = 0.0;
};

struct ConvergenceReport {
  std::string pair;
  int m = 0;
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;  // least-squares slope of log central4 against log N
};

ConvergenceRow summarize_samples(Index n, std::vector<double> samples);
double log_log_slope(const std::vector<ConvergenceRow>& rows);

// Spread of the bulk moment M_m over trials, per N; needs at least 3 distinct N.
ConvergenceReport moment_variance_scan(const PairSpec& pair, int m, const std::vector<Index>& dims,
                                       std::size_t trials, std::uint64_t seed, unsigned threads = 1);

// Spread of a single-trial weighted blip moment, per N.
std::vector<ConvergenceRow> blip_moment_spread(const PairSpec& pair, BlipRegime regime, int m,
                                               const std::vector<Index>& dims, std::size_t trials,
                                               std::uint64_t seed, unsigned threads = 1,
                                               std::optional<int> n_weight = std::nullopt);

void write_convergence_json(std::ostream& out, const ConvergenceReport& r);

}  // namespace anticomm
