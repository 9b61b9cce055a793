#pragma once

#include "anticomm/matrix_ops.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace anticomm {

struct Histogram {
  std::vector<double> edges;      // bins + 1 strictly increasing edges
  std::vector<double> densities;  // unit area over the in-range values
  double p = 1.0;                 // eigenvalues divided by N^p before binning
  std::size_t trials = 0;
  double clipped_mass = 0.0;      // fraction of pooled values outside the range

  std::size_t bins() const { return densities.size(); }
  double area() const;
};

using Range = std::pair<double, double>;

inline constexpr int default_bins = 80;

Histogram empirical_histogram(const std::vector<EigenSpectrum>& spectra, double p = 1.0,
                              int bins = default_bins, std::optional<Range> range = std::nullopt);

// Approximates the integral of |histogram - density| over the histogram range.
double l1_distance(const Histogram& h, const std::function<double(double)>& density,
                   int samples_per_bin = 16);

// Sum over bins of |histogram mass - bin_mass(lo, hi)|.
double binned_l1_distance(const Histogram& h, const std::function<double(double, double)>& bin_mass);

struct MomentRow {
  int m = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct MomentReport {
  std::string pair;
  Index n = 0;
  std::size_t trials = 0;
  std::vector<MomentRow> moments;

  const MomentRow& at(int m) const;
};

// Per-trial moment records; merge concatenates, reports sort before summing so the
// result does not depend on trial order or on how trials were split across workers.
class MomentAccumulator {
 public:
  MomentAccumulator(std::vector<int> orders, double p = 1.0);

  void add(const EigenSpectrum& spectrum);
  void add_values(const std::vector<double>& per_order_values);
  void merge(const MomentAccumulator& other);
  MomentReport report(const std::string& pair, Index n) const;

  const std::vector<int>& orders() const { return orders_; }
  std::size_t trials() const { return records_.empty() ? 0 : records_.front().size(); }

 private:
  std::vector<int> orders_;
  double p_;
  std::vector<std::vector<double>> records_;  // records_[order index][trial]
};

MomentReport empirical_moments(const std::vector<EigenSpectrum>& spectra, const std::vector<int>& orders,
                               Index n, double p = 1.0, const std::string& pair = "");

// Mean and standard error of a sample, summed in sorted order.
std::pair<double, double> mean_and_std_error(std::vector<double> values);

void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_moment_report_json(std::ostream& out, const MomentReport& r);

}  // namespace anticomm
