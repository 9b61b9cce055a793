#include "anticomm/spectra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

namespace anticomm {

double Histogram::area() const {
  double a = 0.0;
  for (std::size_t b = 0; b < densities.size(); ++b) a += densities[b] * (edges[b + 1] - edges[b]);
  return a;
}

Histogram empirical_histogram(const std::vector<EigenSpectrum>& spectra, double p, int bins,
                              std::optional<Range> range) {
  require(!spectra.empty(), ErrorCode::invalid_input, "histogram: no spectra");
  require(bins >= 1, ErrorCode::invalid_input, "histogram: bins must be >= 1");

  std::vector<double> values;
  for (const auto& s : spectra) {
    const double scale = std::pow(static_cast<double>(s.dimension), p);
    for (Index i = 0; i < s.values.size(); ++i) values.push_back(s.values(i) / scale);
  }
  require(!values.empty(), ErrorCode::invalid_input, "histogram: spectra are empty");

  Range r = range ? *range : Range{*std::min_element(values.begin(), values.end()),
                                   *std::max_element(values.begin(), values.end())};
  require(std::isfinite(r.first) && std::isfinite(r.second) && r.first < r.second,
          ErrorCode::invalid_input, "histogram: degenerate range");

  Histogram h;
  h.p = p;
  h.trials = spectra.size();
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  const double width = (r.second - r.first) / bins;
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = r.first + b * width;
  h.edges.back() = r.second;

  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  std::size_t inside = 0;
  for (double v : values) {
    if (v < r.first || v > r.second) continue;
    auto b = static_cast<std::size_t>((v - r.first) / width);
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
    ++inside;
  }
  require(inside > 0, ErrorCode::invalid_input, "histogram: no values inside the range");
  h.clipped_mass = static_cast<double>(values.size() - inside) / static_cast<double>(values.size());
  h.densities.resize(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b)
    h.densities[b] = static_cast<double>(counts[b]) /
                     (static_cast<double>(inside) * (h.edges[b + 1] - h.edges[b]));
  return h;
}

double l1_distance(const Histogram& h, const std::function<double(double)>& density,
                   int samples_per_bin) {
  double total = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double lo = h.edges[b], w = h.edges[b + 1] - lo;
    for (int s = 0; s < samples_per_bin; ++s) {
      const double x = lo + (s + 0.5) * w / samples_per_bin;
      total += std::abs(h.densities[b] - density(x)) * w / samples_per_bin;
    }
  }
  return total;
}

double binned_l1_distance(const Histogram& h, const std::function<double(double, double)>& bin_mass) {
  double total = 0.0;
  for (std::size_t b = 0; b < h.bins(); ++b) {
    const double lo = h.edges[b], hi = h.edges[b + 1];
    total += std::abs(h.densities[b] * (hi - lo) - bin_mass(lo, hi));
  }
  return total;
}

const MomentRow& MomentReport::at(int m) const {
  for (const auto& row : moments)
    if (row.m == m) return row;
  throw Error(ErrorCode::invalid_input, "moment report has no order " + std::to_string(m));
}

std::pair<double, double> mean_and_std_error(std::vector<double> values) {
  if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

MomentAccumulator::MomentAccumulator(std::vector<int> orders, double p)
    : orders_(std::move(orders)), p_(p), records_(orders_.size()) {
  require(!orders_.empty(), ErrorCode::invalid_input, "moment orders must be nonempty");
}

void MomentAccumulator::add(const EigenSpectrum& spectrum) {
  std::vector<double> v;
  v.reserve(orders_.size());
  for (int m : orders_) v.push_back(spectral_moment(spectrum, m, p_));
  add_values(v);
}

void MomentAccumulator::add_values(const std::vector<double>& per_order_values) {
  require(per_order_values.size() == orders_.size(), ErrorCode::invalid_input,
          "moment record has the wrong number of orders");
  for (std::size_t i = 0; i < orders_.size(); ++i) records_[i].push_back(per_order_values[i]);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  require(other.orders_ == orders_ && other.p_ == p_, ErrorCode::invalid_input,
          "cannot merge moment accumulators with different orders");
  for (std::size_t i = 0; i < orders_.size(); ++i)
    records_[i].insert(records_[i].end(), other.records_[i].begin(), other.records_[i].end());
}

MomentReport MomentAccumulator::report(const std::string& pair, Index n) const {
  MomentReport r{pair, n, trials(), {}};
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto [mean, se] = mean_and_std_error(records_[i]);
    r.moments.push_back({orders_[i], mean, se});
  }
  return r;
}

MomentReport empirical_moments(const std::vector<EigenSpectrum>& spectra, const std::vector<int>& orders,
                               Index n, double p, const std::string& pair) {
  MomentAccumulator acc(orders, p);
  for (const auto& s : spectra) acc.add(s);
  return acc.report(pair, n);
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < h.bins(); ++b)
    out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.densities[b] << '\n';
  out.precision(old_precision);
}

void write_moment_report_json(std::ostream& out, const MomentReport& r) {
  nlohmann::json j;
  j["pair"] = r.pair;
  j["N"] = r.n;
  j["trials"] = r.trials;
  j["moments"] = nlohmann::json::array();
  for (const auto& row : r.moments) j["moments"].push_back({{"m", row.m}, {"mean", row.mean}, {"stderr", row.std_error}});
  out << j.dump(2) << '\n';
}

}  // namespace anticomm
