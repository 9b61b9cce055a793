// Command-line front end. Every subcommand writes CSV or JSON to --out (atomically) or stdout.

#include "anticomm/blips.hpp"
#include "anticomm/combinatorics.hpp"
#include "anticomm/densities.hpp"
#include "anticomm/ensembles.hpp"
#include "anticomm/pairs.hpp"
#include "anticomm/spectra.hpp"
#include "anticomm/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using namespace anticomm;
using Json = nlohmann::json;

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(f), ErrorCode::invalid_input, "cannot open '" + tmp + "' for writing");
    write(f);
    f.flush();
    require(static_cast<bool>(f), ErrorCode::invalid_input, "write to '" + tmp + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::invalid_input, "cannot move output into '" + path + "': " + ec.message());
  }
}

void emit_json(const std::string& path, const Json& j) {
  emit(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

std::string format_number(double v) {
  std::ostringstream s;
  s.precision(15);
  s << v;
  return s.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto parts = split(s, ',');
  require(parts.size() == 2, ErrorCode::invalid_input, "range must be lo,hi");
  try {
    return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_input, "range must be two numbers lo,hi");
  }
}

std::string base_pair(const std::string& tag) { return tag.substr(0, tag.find(':')); }

struct Common {
  std::uint64_t seed = 20240101;
  unsigned threads = 1;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->capture_default_str();
  cmd->add_option("--out", c.out, "Output path (default stdout)");
}

ExperimentPlan make_plan(const std::string& pair, Index n, std::size_t trials, const Common& c,
                         const std::string& dist) {
  require(trials >= 1, ErrorCode::invalid_input, "--trials must be >= 1");
  PairSpec p = parse_pair(pair);
  p.distribution = parse_distribution(dist);
  return ExperimentPlan{p, {n}, trials, std::nullopt, c.seed, c.threads, 0};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra and limiting moments of anticommutators of random matrices"};
  app.require_subcommand(1);

  // sample
  Common sample_c;
  std::string sample_kind = "goe", sample_dist = "standard-normal";
  Index sample_n = 4, sample_k = 1;
  double sample_w = 1.0;
  auto* sample_cmd = app.add_subcommand("sample", "Dump one ensemble sample as CSV");
  add_common(sample_cmd, sample_c);
  sample_cmd->add_option("--ensemble", sample_kind, "goe | pte | bce | checker | hollow")->capture_default_str();
  sample_cmd->add_option("--n", sample_n, "Dimension")->capture_default_str();
  sample_cmd->add_option("--k", sample_k, "Block size or modulus")->capture_default_str();
  sample_cmd->add_option("--w", sample_w, "Checkerboard weight")->capture_default_str();
  sample_cmd->add_option("--dist", sample_dist, "standard-normal | rademacher | uniform-scaled")->capture_default_str();

  // spectrum
  Common spec_c;
  std::string spec_pair = "goe-goe", spec_dist = "standard-normal", spec_range, spec_summary;
  Index spec_n = 200;
  std::size_t spec_trials = 10;
  int spec_bins = default_bins;
  double spec_p = 1.0;
  auto* spec_cmd = app.add_subcommand("spectrum", "Histogram of the normalized pooled spectrum");
  add_common(spec_cmd, spec_c);
  spec_cmd->add_option("--pair", spec_pair, "Pair tag, e.g. goe-goe, goe-bce:3, checker-checker:3,5")->capture_default_str();
  spec_cmd->add_option("--n", spec_n, "Dimension")->capture_default_str();
  spec_cmd->add_option("--trials", spec_trials, "Independent samples")->capture_default_str();
  spec_cmd->add_option("--bins", spec_bins, "Histogram bins")->capture_default_str();
  spec_cmd->add_option("--norm-exp", spec_p, "Eigenvalues are divided by N^p")->capture_default_str();
  spec_cmd->add_option("--range", spec_range, "lo,hi (default: data range)");
  spec_cmd->add_option("--dist", spec_dist, "Entry distribution")->capture_default_str();
  spec_cmd->add_option("--summary", spec_summary, "Write a JSON summary here");

  // moments
  Common mom_c;
  std::string mom_pair = "goe-goe", mom_method = "recurrence", mom_dist = "standard-normal";
  int mom_m = 1;
  Index mom_n = 200;
  std::size_t mom_trials = 10;
  auto* mom_cmd = app.add_subcommand("moments", "Limiting or empirical moments");
  add_common(mom_cmd, mom_c);
  mom_cmd->add_option("--pair", mom_pair, "Pair tag")->capture_default_str();
  mom_cmd->add_option("--m", mom_m, "Order: the 2m-th moment for exact methods, M_m for mc")->capture_default_str();
  mom_cmd->add_option("--method", mom_method,
                      "enumeration | recurrence | explicit | series | closed-form | mc")->capture_default_str();
  mom_cmd->add_option("--n", mom_n, "Dimension (mc)")->capture_default_str();
  mom_cmd->add_option("--trials", mom_trials, "Samples (mc)")->capture_default_str();
  mom_cmd->add_option("--dist", mom_dist, "Entry distribution (mc)")->capture_default_str();

  // genus
  Common genus_c;
  std::string genus_pair = "goe-bce";
  int genus_m = 1;
  std::string genus_k = "1";
  auto* genus_cmd = app.add_subcommand("genus", "Genus expansion in k for the BCE pairs");
  add_common(genus_cmd, genus_c);
  genus_cmd->add_option("--pair", genus_pair, "goe-bce | bce-bce")->capture_default_str();
  genus_cmd->add_option("--m", genus_m, "The 2m-th moment")->capture_default_str();
  genus_cmd->add_option("--k", genus_k, "Block size at which to evaluate (integer or p/q)")->capture_default_str();

  // density
  Common dens_c;
  std::string dens_which = "goe-goe", dens_grid;
  int dens_order = 10;
  auto* dens_cmd = app.add_subcommand("density", "Limiting densities and generating series");
  add_common(dens_cmd, dens_c);
  dens_cmd->add_option("--which", dens_which, "goe-goe | pte-pte | schroeder-series")->capture_default_str();
  dens_cmd->add_option("--grid", dens_grid, "lo,hi,points (default fits the support)");
  dens_cmd->add_option("--order", dens_order, "Series order (schroeder-series)")->capture_default_str();

  // blip
  Common blip_c;
  std::string blip_pair = "goe-checker:5", blip_regime = "blip", blip_m = "0,1,2", blip_dist = "standard-normal";
  Index blip_n = 300;
  std::size_t blip_trials = 10;
  int blip_order = 0;
  double blip_delta = 0.0;
  auto* blip_cmd = app.add_subcommand("blip", "Weighted blip spectral measure averaged over trials");
  add_common(blip_cmd, blip_c);
  blip_cmd->add_option("--pair", blip_pair, "goe-checker:k | checker-checker:k,j")->capture_default_str();
  blip_cmd->add_option("--regime", blip_regime, "blip | largest | intermediary-1 | intermediary-2")->capture_default_str();
  blip_cmd->add_option("--n", blip_n, "Dimension")->capture_default_str();
  blip_cmd->add_option("--trials", blip_trials, "Samples (ignored with --delta)")->capture_default_str();
  blip_cmd->add_option("--m", blip_m, "Comma-separated orders")->capture_default_str();
  blip_cmd->add_option("--weight-order", blip_order, "Weight order n (default max(2, ceil(log log N)))");
  blip_cmd->add_option("--delta", blip_delta, "Average over ceil(N^delta) samples");
  blip_cmd->add_option("--dist", blip_dist, "Entry distribution")->capture_default_str();

  // regimes
  Common reg_c;
  std::string reg_pair = "goe-checker:5", reg_dist = "standard-normal";
  Index reg_n = 300;
  std::size_t reg_trials = 10;
  double reg_scale = 1.0;
  auto* reg_cmd = app.add_subcommand("regimes", "Eigenvalue counts per spectral regime");
  add_common(reg_cmd, reg_c);
  reg_cmd->add_option("--pair", reg_pair, "goe-checker:k | checker-checker:k,j | any pair")->capture_default_str();
  reg_cmd->add_option("--n", reg_n, "Dimension")->capture_default_str();
  reg_cmd->add_option("--trials", reg_trials, "Samples")->capture_default_str();
  reg_cmd->add_option("--threshold-scale", reg_scale, "Multiply all thresholds")->capture_default_str();
  reg_cmd->add_option("--dist", reg_dist, "Entry distribution")->capture_default_str();

  // convergence
  Common conv_c;
  std::string conv_pair = "goe-goe", conv_dims = "64,128,256,512";
  int conv_m = 2;
  std::size_t conv_trials = 200;
  auto* conv_cmd = app.add_subcommand("convergence", "Variance and fourth central moment of M_m across N");
  add_common(conv_cmd, conv_c);
  conv_cmd->add_option("--pair", conv_pair, "Pair tag")->capture_default_str();
  conv_cmd->add_option("--m", conv_m, "Moment order")->capture_default_str();
  conv_cmd->add_option("--dims", conv_dims, "Comma-separated N values")->capture_default_str();
  conv_cmd->add_option("--trials", conv_trials, "Samples per N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*sample_cmd) {
      static const std::map<std::string, EnsembleKind> kinds{{"goe", EnsembleKind::goe},
                                                             {"pte", EnsembleKind::pte},
                                                             {"bce", EnsembleKind::bce},
                                                             {"checker", EnsembleKind::checkerboard},
                                                             {"hollow", EnsembleKind::hollow_goe}};
      const auto it = kinds.find(sample_kind);
      require(it != kinds.end(), ErrorCode::invalid_input, "unknown ensemble '" + sample_kind + "'");
      EnsembleSpec s{it->second, sample_n, sample_k, sample_w, parse_distribution(sample_dist)};
      const auto m = sample<double>(s, derive_seed(sample_c.seed, 0, 0, 0));
      emit(sample_c.out, [&](std::ostream& o) { write_matrix_csv(o, m, to_string(s.kind)); });
    } else if (*spec_cmd) {
      const auto plan = make_plan(spec_pair, spec_n, spec_trials, spec_c, spec_dist);
      const auto result = run_trials(plan);
      std::optional<Range> range;
      if (!spec_range.empty()) range = parse_range(spec_range);
      const auto h = empirical_histogram(result.spectra[0], spec_p, spec_bins, range);
      emit(spec_c.out, [&](std::ostream& o) { write_histogram_csv(o, h); });
      if (!spec_summary.empty()) {
        const auto moments = empirical_moments(result.spectra[0], {1, 2, 3, 4}, spec_n, spec_p, plan.pair.tag());
        Json j{{"pair", plan.pair.tag()}, {"N", spec_n}, {"trials", spec_trials}, {"bins", spec_bins},
               {"norm_exp", spec_p}, {"range", {h.edges.front(), h.edges.back()}}, {"clipped_mass", h.clipped_mass},
               {"moments", Json::array()}};
        for (const auto& r : moments.moments) j["moments"].push_back({{"m", r.m}, {"mean", r.mean}, {"stderr", r.std_error}});
        emit_json(spec_summary, j);
      }
    } else if (*mom_cmd) {
      if (mom_method == "mc") {
        const auto plan = make_plan(mom_pair, mom_n, mom_trials, mom_c, mom_dist);
        const auto result = run_trials(plan);
        const auto r = empirical_moments(result.spectra[0], {mom_m}, mom_n, plan.pair.bulk_exponent(), plan.pair.tag());
        emit(mom_c.out, [&](std::ostream& o) { write_moment_report_json(o, r); });
      } else {
        const PairSpec pair = parse_pair(mom_pair);
        Json j{{"pair", pair.tag()}, {"m", mom_m}, {"method", mom_method}};
        auto bad_method = [&] { throw Error(ErrorCode::invalid_input, "method '" + mom_method + "' not available for " + pair.tag()); };
        switch (pair.kind) {
          case PairKind::goe_goe: {
            static const std::map<std::string, GoeGoeMethod> methods{{"enumeration", GoeGoeMethod::enumeration},
                                                                     {"recurrence", GoeGoeMethod::recurrence},
                                                                     {"explicit", GoeGoeMethod::explicit_formula},
                                                                     {"series", GoeGoeMethod::series}};
            const auto it = methods.find(mom_method);
            if (it == methods.end()) bad_method();
            j["value"] = moment_goe_goe(mom_m, it->second).str();
            break;
          }
          case PairKind::pte_pte:
            if (mom_method != "closed-form" && mom_method != "enumeration") bad_method();
            j["value"] = moment_pte_pte(mom_m, mom_method == "enumeration" ? PteMethod::enumeration : PteMethod::closed_form).str();
            break;
          case PairKind::goe_pte:
            if (mom_method != "recurrence" && mom_method != "enumeration") bad_method();
            j["value"] = moment_goe_pte(mom_m, mom_method == "enumeration" ? GoePteMethod::enumeration : GoePteMethod::recurrence).str();
            break;
          case PairKind::goe_bce:
          case PairKind::bce_bce: {
            if (mom_method != "enumeration") bad_method();
            const auto l = pair.kind == PairKind::goe_bce ? moment_goe_bce(mom_m) : moment_bce_bce(mom_m);
            j["laurent"] = Json::array();
            for (const auto& c : l.coeffs) j["laurent"].push_back(c.str());
            j["value"] = to_fraction(l.at(Rational(pair.k)));
            break;
          }
          case PairKind::goe_checker:
            if (mom_method != "recurrence") bad_method();
            j["value"] = to_fraction(bulk_moment_checker(mom_m, pair.k));
            break;
          case PairKind::checker_checker:
            if (mom_method != "recurrence") bad_method();
            j["value"] = to_fraction(bulk_moment_checker(mom_m, pair.k, pair.j));
            break;
          case PairKind::ell_goe:
            if (mom_method == "recurrence") j["value"] = moment_ell_anticommutator(mom_m, pair.ell).str();
            else if (mom_method == "enumeration") j["value"] = count_ell_noncrossing(mom_m, pair.ell).str();
            else bad_method();
            break;
        }
        if (mom_c.out.empty()) std::cout << j["value"].get<std::string>() << '\n';
        else emit_json(mom_c.out, j);
      }
    } else if (*genus_cmd) {
      const std::string which = base_pair(genus_pair);
      require(which == "goe-bce" || which == "bce-bce", ErrorCode::invalid_input, "genus supports goe-bce and bce-bce");
      const auto l = which == "goe-bce" ? moment_goe_bce(genus_m) : moment_bce_bce(genus_m);
      Rational k;
      try {
        k = Rational(genus_k.c_str());
      } catch (const std::exception&) {
        throw Error(ErrorCode::invalid_input, "--k must be an integer or p/q");
      }
      const Rational value = l.at(k);
      if (genus_c.out.empty()) {
        std::cout << l.symbolic() << '\n' << format_number(to_double(value)) << '\n';
      } else {
        Json j{{"pair", which}, {"m", genus_m}, {"method", "enumeration"}, {"laurent", Json::array()},
               {"symbolic", l.symbolic()}, {"k", genus_k}, {"value", to_fraction(value)}};
        for (const auto& c : l.coeffs) j["laurent"].push_back(c.str());
        emit_json(genus_c.out, j);
      }
    } else if (*dens_cmd) {
      if (dens_which == "schroeder-series") {
        const auto s = schroeder_series(dens_order);
        emit(dens_c.out, [&](std::ostream& o) { write_series_json(o, s); });
      } else {
        std::function<double(double)> mu;
        double lo, hi;
        int points = 400;
        if (dens_which == "goe-goe") {
          mu = density_goe_goe;
          hi = goe_goe_support_edge();
          lo = -hi;
        } else if (dens_which == "pte-pte") {
          mu = density_pte_pte;
          lo = -20.0;
          hi = 20.0;
        } else {
          throw Error(ErrorCode::invalid_input, "unknown density '" + dens_which + "'");
        }
        if (!dens_grid.empty()) {
          const auto parts = split(dens_grid, ',');
          require(parts.size() == 3, ErrorCode::invalid_input, "--grid must be lo,hi,points");
          try {
            lo = std::stod(parts[0]);
            hi = std::stod(parts[1]);
            points = std::stoi(parts[2]);
          } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_input, "--grid must be lo,hi,points");
          }
        }
        const auto c = density_curve(mu, lo, hi, points);
        emit(dens_c.out, [&](std::ostream& o) { write_density_csv(o, c); });
      }
    } else if (*blip_cmd) {
      auto plan = make_plan(blip_pair, blip_n, blip_trials, blip_c, blip_dist);
      if (blip_delta > 0.0) plan.delta = blip_delta;
      const BlipRegime regime = parse_blip_regime(blip_regime);
      std::vector<int> orders;
      for (const auto& s : split(blip_m, ',')) {
        try {
          orders.push_back(std::stoi(s));
        } catch (const std::exception&) {
          throw Error(ErrorCode::invalid_input, "--m must be a comma-separated list of integers");
        }
      }
      const int order = blip_order > 0 ? blip_order : default_weight_order(blip_n);
      const auto result = run_trials(plan);
      std::vector<BlipReport> per_trial;
      for (const auto& s : result.spectra[0]) per_trial.push_back(blip_measure(s, plan.pair, regime, order, orders));
      const auto avg = average_blip_reports(per_trial);
      emit(blip_c.out, [&](std::ostream& o) { write_blip_report_json(o, avg); });
    } else if (*reg_cmd) {
      const auto plan = make_plan(reg_pair, reg_n, reg_trials, reg_c, reg_dist);
      require(plan.pair.kind == PairKind::goe_checker || plan.pair.kind == PairKind::checker_checker,
              ErrorCode::invalid_input, "regimes needs goe-checker:k or checker-checker:k,j");
      const std::optional<int> j =
          plan.pair.kind == PairKind::checker_checker ? std::optional<int>(plan.pair.j) : std::nullopt;
      const auto result = run_trials(plan);
      const auto t = regime_thresholds(reg_n, plan.pair.k, j);
      RegimeCounts mean;
      std::vector<Json> per_trial;
      for (const auto& s : result.spectra[0]) {
        const auto c = regime_classify(s, plan.pair.k, j, reg_scale);
        Json row = Json::object();
        for (const auto& [name, v] : c) {
          mean[name] += v / static_cast<double>(reg_trials);
          row[name] = v;
        }
        per_trial.push_back(row);
      }
      Json js{{"pair", plan.pair.tag()}, {"N", reg_n}, {"trials", reg_trials}, {"threshold_scale", reg_scale},
              {"thresholds", Json::array()}, {"mean_counts", Json::object()}, {"per_trial", per_trial}};
      for (std::size_t i = 0; i < t.cuts.size(); ++i)
        js["thresholds"].push_back({{"between", {t.names[i], t.names[i + 1]}}, {"value", reg_scale * t.cuts[i]}});
      for (const auto& [name, v] : mean) js["mean_counts"][name] = v;
      emit_json(reg_c.out, js);
    } else if (*conv_cmd) {
      require(conv_trials >= 2, ErrorCode::invalid_input, "--trials must be >= 2");
      std::vector<Index> dims;
      for (const auto& s : split(conv_dims, ',')) {
        try {
          dims.push_back(std::stol(s));
        } catch (const std::exception&) {
          throw Error(ErrorCode::invalid_input, "--dims must be a comma-separated list of integers");
        }
      }
      const auto r = moment_variance_scan(parse_pair(conv_pair), conv_m, dims, conv_trials, conv_c.seed, conv_c.threads);
      emit(conv_c.out, [&](std::ostream& o) { write_convergence_json(o, r); });
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::numerical_failure ? exit_numerical : exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_numerical;
  }
  return 0;
}
