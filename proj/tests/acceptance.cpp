// Acceptance checks: one PASS/FAIL line per criterion, tolerances fixed below.
// Usage: acceptance [--only N]

#include "anticomm/blips.hpp"
#include "anticomm/combinatorics.hpp"
#include "anticomm/densities.hpp"
#include "anticomm/pairs.hpp"
#include "anticomm/spectra.hpp"
#include "anticomm/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

using namespace anticomm;

namespace {

// Pinned tolerances.
constexpr double mc_relative_band = 0.05;
constexpr double odd_moment_bound = 0.05;
constexpr double mass_tolerance = 1e-4;
constexpr double low_moment_relative = 0.01;
constexpr double sixth_moment_relative = 0.03;
constexpr double mgf_tolerance = 1e-3;
constexpr double l1_bound = 0.08;
constexpr double blip_count_fraction = 0.95;
constexpr double blip_first_moment_band = 0.02;
constexpr double blip_second_moment_relative = 0.5;
constexpr double largest_mass_lo = 0.9, largest_mass_hi = 1.1;
constexpr double largest_first_moment_relative = 0.25;
constexpr double weyl_relative = 1e-9;
constexpr double slope_lo = -3.0, slope_hi = -1.2;
constexpr double blip_variance_growth = 1.5;

constexpr std::uint64_t seed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

const std::vector<EigenSpectrum>& spectra(const std::string& tag, Index n, std::size_t trials) {
  static std::map<std::string, std::vector<EigenSpectrum>> cache;
  const std::string key = tag + "/" + std::to_string(n) + "/" + std::to_string(trials);
  auto it = cache.find(key);
  if (it == cache.end()) {
    ExperimentPlan plan{parse_pair(tag), {n}, trials, std::nullopt, seed, workers(), 0};
    it = cache.emplace(key, std::move(run_trials(plan).spectra.front())).first;
  }
  return it->second;
}

bool within_relative(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome goe_goe_oracles() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, "", {}};
  std::string values;
  for (int m = 1; m <= 5; ++m) {
    const BigInt e = moment_goe_goe(m, GoeGoeMethod::enumeration);
    const bool agree = e == moment_goe_goe(m, GoeGoeMethod::recurrence) &&
                       e == moment_goe_goe(m, GoeGoeMethod::explicit_formula) &&
                       e == moment_goe_goe(m, GoeGoeMethod::series);
    o.pass = o.pass && agree;
    values += (m > 1 ? "," : "") + e.str();
  }
  o.pass = o.pass && moment_goe_goe(1, GoeGoeMethod::recurrence) == 2 && moment_goe_goe(2, GoeGoeMethod::recurrence) == 10 &&
           moment_goe_goe(3, GoeGoeMethod::recurrence) == 66;
  const double t = seconds_since(start);
  o.pass = o.pass && t < 30.0;
  o.detail = "M_2m for m=1..5 = " + values + fmt(" (%.2fs)", t);
  return o;
}

Outcome pte_pte_oracles() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, "", {}};
  std::string values;
  for (int m = 1; m <= 4; ++m) {
    const BigInt e = moment_pte_pte(m, PteMethod::enumeration);
    o.pass = o.pass && e == moment_pte_pte(m, PteMethod::closed_form);
    values += (m > 1 ? "," : "") + e.str();
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 60.0;
  o.detail = "enumeration = closed form: " + values + fmt(" (%.2fs)", t);
  return o;
}

Outcome goe_pte_oracles() {
  Outcome o{true, "", {}};
  std::string values;
  for (int m = 1; m <= 3; ++m) {
    const BigInt e = moment_goe_pte(m, GoePteMethod::enumeration);
    o.pass = o.pass && e == moment_goe_pte(m, GoePteMethod::recurrence);
    values += (m > 1 ? "," : "") + e.str();
  }
  o.pass = o.pass && moment_goe_pte(1, GoePteMethod::recurrence) == 2 && moment_goe_pte(2, GoePteMethod::recurrence) == 12 &&
           moment_goe_pte(3, GoePteMethod::recurrence) == 104;
  bool bracketed = true;
  for (int m = 1; m <= 6; ++m) {
    const auto [lo, hi] = moment_bounds_goe_pte(m);
    const BigInt s = moment_goe_pte(m, GoePteMethod::recurrence);
    bracketed = bracketed && lo <= s && s <= hi;
  }
  const auto pde = check_sigma_pde(3, 3);
  o.pass = o.pass && bracketed && pde.max_abs_residual == 0;
  o.detail = "sigma_{m,0} = " + values + ", bounds hold m<=6: " + (bracketed ? "yes" : "no") +
             ", PDE residual (3,3) = " + to_fraction(pde.max_abs_residual);
  return o;
}

Outcome genus_golden_values() {
  const Rational a = moment_goe_bce(2).at(2);
  const Rational b = moment_goe_bce(3).at(2);
  const Rational c = moment_bce_bce(2).at(2);
  bool reductions = true;
  for (int m = 1; m <= 3; ++m) {
    reductions = reductions && moment_bce_bce(m).at_one() == moment_pte_pte(m, PteMethod::closed_form);
    reductions = reductions && moment_goe_bce(m).at_one() == moment_goe_pte(m, GoePteMethod::recurrence);
  }
  Outcome o;
  o.pass = a == Rational(21, 2) && b == Rational(151, 2) && c == Rational(10 * 16 + 86 * 4 + 48, 16) && reductions;
  o.detail = "goe-bce(2)|k=2 = " + to_fraction(a) + ", goe-bce(3)|k=2 = " + to_fraction(b) + ", bce-bce(2)|k=2 = " +
             to_fraction(c) + ", k=1 reductions: " + (reductions ? "exact" : "broken");
  return o;
}

Outcome normalized_table() {
  const std::vector<std::vector<Rational>> expected{
      {Rational(5, 2), Rational(1, 2)}, {Rational(33, 4), Rational(19, 4)}, {Rational(249, 8), 34, Rational(27, 8)}};
  Outcome o{true, "", {}};
  for (int m = 2; m <= 4; ++m) {
    const auto raw = moment_goe_bce(m);
    std::vector<Rational> normalized;
    for (const auto& c : raw.coeffs) normalized.push_back(normalized_from_raw(Rational(c), 2, m));
    const bool match = normalized == expected[static_cast<std::size_t>(m - 2)];
    o.pass = o.pass && match;
    std::string row;
    for (std::size_t g = 0; g < normalized.size(); ++g)
      row += (g ? " + " : "") + to_fraction(normalized[g]) + (g ? "*k^-" + std::to_string(2 * g) : "");
    o.detail += (m > 2 ? "; " : "") + fmt("m=%d: ", m) + row;
  }
  return o;
}

Outcome monte_carlo_moments() {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{true, "", {}};
  const std::vector<std::pair<std::string, std::pair<double, double>>> targets{{"goe-goe", {2.0, 10.0}},
                                                                              {"pte-pte", {4.0, 144.0}}};
  for (const auto& [tag, even] : targets) {
    const auto r = empirical_moments(spectra(tag, 1000, 100), {1, 2, 3, 4}, 1000, 1.0, tag);
    const bool ok = within_relative(r.at(2).mean, even.first, mc_relative_band) &&
                    within_relative(r.at(4).mean, even.second, mc_relative_band) &&
                    std::abs(r.at(1).mean) < odd_moment_bound && std::abs(r.at(3).mean) < odd_moment_bound;
    o.pass = o.pass && ok;
    o.detail += (o.detail.empty() ? "" : "; ") +
                fmt("%s M1=%.4f M2=%.4f M3=%.4f M4=%.3f", tag.c_str(), r.at(1).mean, r.at(2).mean, r.at(3).mean,
                    r.at(4).mean);
    o.notes.push_back(fmt("%s stderr M2=%.4f M4=%.4f", tag.c_str(), r.at(2).std_error, r.at(4).std_error));
  }
  const double t = seconds_since(start);
  o.pass = o.pass && t < 600.0;
  o.detail += fmt(" (%.0fs)", t);
  return o;
}

Outcome density_checks() {
  Outcome o{true, "", {}};
  const double edge = goe_goe_support_edge();
  const double mass = integrate_density(density_goe_goe, -edge, edge, 0);
  const double m2 = integrate_density(density_goe_goe, -edge, edge, 2);
  const double m4 = integrate_density(density_goe_goe, -edge, edge, 4);
  const double m6 = integrate_density(density_goe_goe, -edge, edge, 6);
  const bool goe_ok = std::abs(mass - 1.0) <= mass_tolerance && within_relative(m2, 2.0, low_moment_relative) &&
                      within_relative(m4, 10.0, low_moment_relative) && within_relative(m6, 66.0, sixth_moment_relative);

  auto pte = [](double x) { return x == 0.0 ? 0.0 : density_pte_pte(x); };
  double mgf_err = 0.0;
  for (double z : {-0.3, -0.2, -0.1, 0.1, 0.2, 0.3})
    mgf_err = std::max(mgf_err, std::abs(integrate_exponential(pte, z) - mgf_pte_pte(z)));

  const auto h_goe = empirical_histogram(spectra("goe-goe", 1000, 100), 1.0, default_bins, Range{-3.4, 3.4});
  const auto h_pte = empirical_histogram(spectra("pte-pte", 1000, 100), 1.0, default_bins, Range{-20.0, 20.0});
  const double l1_goe =
      binned_l1_distance(h_goe, [](double lo, double hi) { return integrate_density(density_goe_goe, lo, hi); });
  const double l1_pte = binned_l1_distance(h_pte, [&](double lo, double hi) { return integrate_density(pte, lo, hi); });

  o.pass = goe_ok && mgf_err <= mgf_tolerance && l1_goe < l1_bound && l1_pte < l1_bound;
  o.detail = fmt("mass=%.6f moments=%.4f,%.4f,%.3f mgf max err=%.2e L1 goe-goe=%.4f pte-pte=%.4f", mass, m2, m4, m6,
                 mgf_err, l1_goe, l1_pte);
  o.notes.push_back(fmt("clipped mass goe-goe=%.4f pte-pte=%.4f", h_goe.clipped_mass, h_pte.clipped_mass));
  o.notes.push_back(fmt("pointwise L1 goe-goe=%.4f pte-pte=%.4f", l1_distance(h_goe, density_goe_goe),
                        l1_distance(h_pte, pte)));
  return o;
}

struct BlipSummary {
  double m0 = 0, m1 = 0, m2 = 0, m1_se = 0;
};

BlipSummary summarize_blips(const std::vector<EigenSpectrum>& runs, const PairSpec& pair, BlipRegime regime, int order) {
  std::vector<double> v0, v1, v2;
  for (const auto& s : runs) {
    const auto r = blip_measure(s, pair, regime, order, {0, 1, 2});
    v0.push_back(r.moment(0));
    v1.push_back(r.moment(1));
    v2.push_back(r.moment(2));
  }
  BlipSummary b;
  b.m0 = mean_and_std_error(v0).first;
  std::tie(b.m1, b.m1_se) = mean_and_std_error(v1);
  b.m2 = mean_and_std_error(v2).first;
  return b;
}

Outcome goe_checker_blips() {
  const Index n = 1500;
  const int k = 5;
  const auto pair = parse_pair("goe-checker:5");
  const auto& runs = spectra(pair.tag(), n, 100);
  std::size_t exact = 0;
  for (const auto& s : runs) {
    const auto c = regime_classify(s, k);
    exact += c.at("pos_blip") == k && c.at("neg_blip") == k;
  }
  const double fraction = static_cast<double>(exact) / static_cast<double>(runs.size());
  const int order = default_weight_order(n);
  const auto b = summarize_blips(runs, pair, BlipRegime::goe_checker_blip, order);
  const double theory2 = to_double(theory_blip_moment_goe_checker(2, k));
  Outcome o;
  o.pass = fraction >= blip_count_fraction && std::abs(b.m1) <= blip_first_moment_band &&
           within_relative(b.m2, theory2, blip_second_moment_relative);
  o.detail = fmt("2k blips in %.0f%% of trials; n=%d: m0=%.4f m1=%.4f (+-%.4f) m2=%.4f vs %.4f", 100 * fraction, order,
                 b.m0, b.m1, b.m1_se, b.m2, theory2);
  for (int alt : {3, 4}) {
    const auto d = summarize_blips(runs, pair, BlipRegime::goe_checker_blip, alt);
    o.notes.push_back(fmt("weight order n=%d: m0=%.4f m1=%.4f (+-%.4f) m2=%.4f", alt, d.m0, d.m1, d.m1_se, d.m2));
  }
  return o;
}

Outcome largest_blip() {
  const Index n = 1500;
  const auto pair = parse_pair("checker-checker:3,5");
  const auto& runs = spectra(pair.tag(), n, 100);
  const double dn = static_cast<double>(n);
  const double cut = std::sqrt(std::pow(dn, 1.5) * 2.0 * dn * dn / 15.0);
  std::size_t single = 0;
  for (const auto& s : runs) single += (s.values.array() > cut).count() == 1;
  const int order = default_weight_order(n);
  const auto b = summarize_blips(runs, pair, BlipRegime::largest_blip, order);
  const double theory1 = to_double(theory_largest_blip_moment(1, 3, 5));

  const Index small = 150;
  const auto a = sample_checkerboard(small, 3, 1.0, derive_seed(seed, 0, 0, 0));
  const auto c = sample_checkerboard(small, 5, 1.0, derive_seed(seed, 0, 0, 1));
  const auto w = weyl_decomposition_check(a, c, 3, 5);
  const bool weyl_ok = std::abs(w.mean_mean_top - 3000.0) <= weyl_relative * 3000.0 && w.mean_mean_rank == 1 && w.sandwich_holds;

  Outcome o;
  o.pass = single == runs.size() && b.m0 >= largest_mass_lo && b.m0 <= largest_mass_hi &&
           within_relative(b.m1, theory1, largest_first_moment_relative) && weyl_ok;
  o.detail = fmt("one largest eigenvalue in %zu/%zu trials; n=%d: m0=%.4f m1=%.4f vs %.4f; N=150 top=%.9f rank=%ld", single,
                 runs.size(), order, b.m0, b.m1, theory1, w.mean_mean_top, static_cast<long>(w.mean_mean_rank));
  for (int alt : {3, 4}) {
    const auto d = summarize_blips(runs, pair, BlipRegime::largest_blip, alt);
    o.notes.push_back(fmt("weight order n=%d: m0=%.4f m1=%.4f (+-%.4f)", alt, d.m0, d.m1, d.m1_se));
  }
  return o;
}

Outcome convergence() {
  const auto scan = moment_variance_scan(parse_pair("goe-goe"), 2, {64, 128, 256, 512}, 200, seed, workers());
  const auto pair = parse_pair("goe-checker:4");
  const auto spread = blip_moment_spread(pair, BlipRegime::goe_checker_blip, 2, {512, 1024}, 100, seed, workers());
  const double growth = spread[1].variance / spread[0].variance;
  Outcome o;
  o.pass = scan.slope >= slope_lo && scan.slope <= slope_hi && growth <= blip_variance_growth;
  o.detail = fmt("bulk M2 fourth-central-moment slope=%.3f; goe-checker:4 blip m=2 var N=512:%.3e N=1024:%.3e ratio=%.3f",
                 scan.slope, spread[0].variance, spread[1].variance, growth);
  for (const auto& row : scan.rows)
    o.notes.push_back(fmt("N=%ld var=%.3e central4=%.3e", static_cast<long>(row.n), row.variance, row.central4));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--only N]\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "goe-goe oracle agreement", goe_goe_oracles},
      {2, "pte-pte enumeration vs closed form", pte_pte_oracles},
      {3, "goe-pte sigma table, bounds and generating function", goe_pte_oracles},
      {4, "genus expansion golden values", genus_golden_values},
      {5, "normalized goe-bce rows", normalized_table},
      {6, "monte carlo moments at N=1000", monte_carlo_moments},
      {7, "limiting densities", density_checks},
      {8, "goe-checker blips", goe_checker_blips},
      {9, "checker-checker largest blip", largest_blip},
      {10, "convergence diagnostics", convergence},
  };

  int failures = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    std::printf("[%s] criterion %d: %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    for (const auto& note : o.notes) std::printf("       %s\n", note.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
