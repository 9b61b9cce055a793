#include "anticomm/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace anticomm {

std::size_t ExperimentPlan::trials_for(Index n) const {
  if (delta) return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), *delta) - 1e-12));
  return trials;
}

void ExperimentPlan::validate() const {
  require(!dims.empty(), ErrorCode::invalid_input, "experiment needs at least one N");
  if (delta) require(*delta > 0.0, ErrorCode::invalid_input, "delta must be positive");
  else require(trials >= 1, ErrorCode::invalid_input, "trials must be >= 1");
  for (Index n : dims) pair.validate(n);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult run_trials(const ExperimentPlan& plan) {
  plan.validate();
  ExperimentResult out{plan.dims, {}};
  for (std::size_t d = 0; d < plan.dims.size(); ++d) {
    const Index n = plan.dims[d];
    std::vector<EigenSpectrum> spectra(plan.trials_for(n));
    parallel_for(spectra.size(), plan.threads, [&](std::size_t t) {
      spectra[t] = eigenvalues(sample_pair(plan.pair, n, plan.seed, d, plan.first_trial + t));
    });
    out.spectra.push_back(std::move(spectra));
  }
  return out;
}

BlipReport blip_measure(const EigenSpectrum& eigs, const PairSpec& pair, BlipRegime regime, int n_weight,
                        const std::vector<int>& orders) {
  if (regime == BlipRegime::goe_checker_blip) {
    require(pair.kind == PairKind::goe_checker, ErrorCode::invalid_input, "blip regime needs a goe-checker pair");
    return blip_measure_goe_checker(eigs, pair.k, n_weight, orders);
  }
  require(pair.kind == PairKind::checker_checker, ErrorCode::invalid_input,
          "largest and intermediary regimes need a checker-checker pair");
  if (regime == BlipRegime::largest_blip) return blip_measure_largest(eigs, pair.k, pair.j, n_weight, orders);
  return blip_measure_intermediary(eigs, regime == BlipRegime::intermediary_1 ? 1 : 2, pair.k, pair.j, n_weight,
                                   orders);
}

BlipReport average_blip_reports(const std::vector<BlipReport>& reports) {
  require(!reports.empty(), ErrorCode::invalid_input, "nothing to average");
  BlipReport out = reports.front();
  const double g = static_cast<double>(reports.size());
  out.trials = reports.size();
  out.points.clear();
  for (auto& m : out.moments) m.value = 0.0;
  for (auto& [name, c] : out.counts) c = 0.0;
  for (const auto& r : reports) {
    for (const auto& p : r.points) out.points.push_back({p.location, p.weight / g});
    for (std::size_t i = 0; i < out.moments.size(); ++i) out.moments[i].value += r.moments[i].value / g;
    for (const auto& [name, c] : r.counts) out.counts[name] += c / g;
  }
  return out;
}

std::vector<BlipReport> averaged_blip_measure(const ExperimentPlan& plan, BlipRegime regime, int n_weight,
                                              const std::vector<int>& orders) {
  ExperimentPlan p = plan;
  if (!p.delta) p.delta = 0.5;
  const auto result = run_trials(p);
  std::vector<BlipReport> out;
  for (const auto& spectra : result.spectra) {
    std::vector<BlipReport> per_trial;
    for (const auto& s : spectra) per_trial.push_back(blip_measure(s, p.pair, regime, n_weight, orders));
    out.push_back(average_blip_reports(per_trial));
  }
  return out;
}

ConvergenceRow summarize_samples(Index n, std::vector<double> samples) {
  require(samples.size() >= 2, ErrorCode::invalid_input, "spread needs at least 2 samples");
  std::sort(samples.begin(), samples.end());
  const double count = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double mean = sum / count;
  double s2 = 0.0, s4 = 0.0;
  for (double v : samples) {
    const double d = (v - mean) * (v - mean);
    s2 += d;
    s4 += d * d;
  }
  return {n, samples.size(), mean, s2 / (count - 1.0), s4 / count};
}

double log_log_slope(const std::vector<ConvergenceRow>& rows) {
  std::set<Index> distinct;
  for (const auto& r : rows) distinct.insert(r.n);
  require(distinct.size() >= 3, ErrorCode::invalid_input, "slope fit needs at least 3 distinct N");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    require(r.central4 > 0.0, ErrorCode::numerical_failure, "fourth central moment must be positive for a log fit");
    const double x = std::log(static_cast<double>(r.n)), y = std::log(r.central4);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(rows.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ConvergenceReport moment_variance_scan(const PairSpec& pair, int m, const std::vector<Index>& dims,
                                       std::size_t trials, std::uint64_t seed, unsigned threads) {
  require(m >= 1, ErrorCode::invalid_input, "moment order must be >= 1");
  std::set<Index> distinct(dims.begin(), dims.end());
  require(distinct.size() >= 3, ErrorCode::invalid_input, "variance scan needs at least 3 distinct N");
  ExperimentPlan plan{pair, dims, trials, std::nullopt, seed, threads, 0};
  const auto result = run_trials(plan);
  ConvergenceReport report{pair.tag(), m, {}, 0.0};
  for (std::size_t d = 0; d < dims.size(); ++d) {
    std::vector<double> samples;
    for (const auto& s : result.spectra[d]) samples.push_back(spectral_moment(s, m, pair.bulk_exponent()));
    report.rows.push_back(summarize_samples(dims[d], std::move(samples)));
  }
  report.slope = log_log_slope(report.rows);
  return report;
}

std::vector<ConvergenceRow> blip_moment_spread(const PairSpec& pair, BlipRegime regime, int m,
                                               const std::vector<Index>& dims, std::size_t trials,
                                               std::uint64_t seed, unsigned threads, std::optional<int> n_weight) {
  ExperimentPlan plan{pair, dims, trials, std::nullopt, seed, threads, 0};
  const auto result = run_trials(plan);
  std::vector<ConvergenceRow> rows;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    const int order = n_weight.value_or(default_weight_order(dims[d]));
    std::vector<double> samples;
    for (const auto& s : result.spectra[d]) samples.push_back(blip_measure(s, pair, regime, order, {m}).moment(m));
    rows.push_back(summarize_samples(dims[d], std::move(samples)));
  }
  return rows;
}

void write_convergence_json(std::ostream& out, const ConvergenceReport& r) {
  nlohmann::json j;
  j["pair"] = r.pair;
  j["m"] = r.m;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : r.rows)
    j["rows"].push_back({{"N", row.n}, {"trials", row.trials}, {"mean", row.mean}, {"var", row.variance},
                         {"central4", row.central4}});
  j["slope"] = r.slope;
  out << j.dump(2) << '\n';
}

}  // namespace anticomm
