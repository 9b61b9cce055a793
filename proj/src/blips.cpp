#include "anticomm/blips.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace anticomm {

namespace {

constexpr double goe_goe_edge = 3.3301906767855614;  // sqrt((11 + 5 sqrt 5) / 2)

void require_coprime(int k, int j) {
  require(k >= 2 && j >= 2 && std::gcd(k, j) == 1, ErrorCode::invalid_input, "need k, j >= 2 with gcd(k, j) = 1");
}

std::vector<BlipMoment> weighted_moments(const std::vector<BlipPoint>& points, const std::vector<int>& orders,
                                         double prefactor) {
  std::vector<BlipMoment> out;
  for (int m : orders) {
    require(m >= 0, ErrorCode::invalid_input, "blip moment order must be >= 0");
    double s = 0.0;
    for (const auto& p : points) s += p.weight * std::pow(p.location, m);
    out.push_back({m, prefactor * s});
  }
  return out;
}

template <typename Weight, typename Location>
BlipReport build_report(const EigenSpectrum& eigs, BlipRegime regime, int k, std::optional<int> j, int n_weight,
                        const std::vector<int>& orders, double prefactor, Weight weight, Location location) {
  BlipReport r;
  r.regime = regime;
  r.n = eigs.dimension;
  r.k = k;
  r.j = j;
  r.weight_order = n_weight;
  for (Index i = 0; i < eigs.values.size(); ++i) {
    const double lambda = eigs.values(i);
    const double w = weight(lambda);
    if (w != 0.0) r.points.push_back({location(lambda), w});
  }
  r.moments = weighted_moments(r.points, orders, prefactor);
  r.counts = regime_classify(eigs, k, j);
  return r;
}

void require_weight_order(int n_weight) {
  require(n_weight >= 1, ErrorCode::invalid_input, "weight order n must be >= 1");
}

double spectral_norm(const Matrix<double>& m) {
  const auto e = eigenvalues(m);
  return std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
}

Index numerical_rank(const EigenSpectrum& e) {
  double top = 0.0;
  for (Index i = 0; i < e.values.size(); ++i) top = std::max(top, std::abs(e.values(i)));
  const double tol = 1e-9 * std::max(top, 1.0) * static_cast<double>(e.dimension);
  Index r = 0;
  for (Index i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values(i)) > tol) ++r;
  return r;
}

}  // namespace

int default_weight_order(Index n) {
  require(n >= 3, ErrorCode::invalid_dimension, "log log N needs N >= 3");
  const double ll = std::log(std::log(static_cast<double>(n)));
  return std::max(2, static_cast<int>(std::ceil(ll)));
}

const BigInt& WeightPolynomial::coefficient(int alpha) const {
  require(alpha >= 2 * order && alpha <= 4 * order, ErrorCode::invalid_input, "alpha outside [2n, 4n]");
  return coeffs[static_cast<std::size_t>(alpha - 2 * order)];
}

BigInt WeightPolynomial::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

double WeightPolynomial::operator()(double x) const { return std::pow(x * (2.0 - x), 2 * order); }

WeightPolynomial weight_f(int n) {
  require_weight_order(n);
  WeightPolynomial w{n, {}};
  for (int alpha = 2 * n; alpha <= 4 * n; ++alpha) {
    const int t = alpha - 2 * n;
    BigInt c = binomial(2 * n, t) * pow_int(BigInt(2), static_cast<unsigned>(4 * n - alpha));
    w.coeffs.push_back(t % 2 == 0 ? c : BigInt(-c));
  }
  return w;
}

CheckerScales checker_scales(int k, int j) {
  require_coprime(k, j);
  return {std::sqrt(1.0 - 1.0 / j) / k, std::sqrt(1.0 - 1.0 / k) / j, 2.0 / (k * j)};
}

IntermediaryWeight::IntermediaryWeight(int n, int s, int k, int j, Index dim) : n_(n), s_(s) {
  require_weight_order(n);
  require(s == 1 || s == 2, ErrorCode::invalid_input, "intermediary side s must be 1 or 2");
  require(dim >= 1, ErrorCode::invalid_dimension, "N must be >= 1");
  const auto w = checker_scales(k, j);
  scale_ = s == 1 ? w.w1 : w.w2;
  ratio_ = (s == 1 ? w.w2 : w.w1) / scale_;
  far_zero_ = w.w3 * std::sqrt(static_cast<double>(dim)) / scale_;
}

double IntermediaryWeight::operator()(double x) const {
  const double r2 = ratio_ * ratio_;
  return std::pow(x, 2 * n_) * std::pow((x * x - r2) / (1.0 - r2), 2 * n_) *
         std::pow((x - far_zero_) / (1.0 - far_zero_), 10 * n_);
}

IntermediaryWeight weight_g(int n, int s, int k, int j, Index dim) { return IntermediaryWeight(n, s, k, j, dim); }

const char* to_string(BlipRegime r) {
  switch (r) {
    case BlipRegime::goe_checker_blip: return "goe-checker-blip";
    case BlipRegime::largest_blip: return "largest-blip";
    case BlipRegime::intermediary_1: return "intermediary-1";
    case BlipRegime::intermediary_2: return "intermediary-2";
  }
  return "unknown";
}

BlipRegime parse_blip_regime(const std::string& tag) {
  if (tag == "goe-checker-blip" || tag == "blip") return BlipRegime::goe_checker_blip;
  if (tag == "largest-blip" || tag == "largest") return BlipRegime::largest_blip;
  if (tag == "intermediary-1") return BlipRegime::intermediary_1;
  if (tag == "intermediary-2") return BlipRegime::intermediary_2;
  throw Error(ErrorCode::invalid_input, "unknown blip regime '" + tag + "'");
}

double BlipReport::moment(int m) const {
  for (const auto& row : moments)
    if (row.m == m) return row.value;
  throw Error(ErrorCode::invalid_input, "blip report has no order " + std::to_string(m));
}

BlipReport blip_measure_goe_checker(const EigenSpectrum& eigs, int k, int n_weight, const std::vector<int>& orders) {
  require(k >= 2, ErrorCode::invalid_input, "checkerboard modulus k must be >= 2");
  const auto f = weight_f(n_weight);
  const double n = static_cast<double>(eigs.dimension);
  const double n3 = n * n * n;
  return build_report(
      eigs, BlipRegime::goe_checker_blip, k, std::nullopt, n_weight, orders, 1.0 / (2.0 * k),
      [&](double l) { return f(k * k * l * l / n3); },
      [&](double l) { return (l * l - n3 / (k * k)) / std::pow(n, 2.5); });
}

BlipReport blip_measure_largest(const EigenSpectrum& eigs, int k, int j, int n_weight, const std::vector<int>& orders) {
  require_coprime(k, j);
  const auto f = weight_f(n_weight);
  const double n = static_cast<double>(eigs.dimension);
  const double top = 2.0 * n * n / (j * k);
  return build_report(
      eigs, BlipRegime::largest_blip, k, j, n_weight, orders, 1.0, [&](double l) { return f(l / top); },
      [&](double l) { return (l - top) / n; });
}

BlipReport blip_measure_intermediary(const EigenSpectrum& eigs, int s, int k, int j, int n_weight,
                                     const std::vector<int>& orders) {
  const IntermediaryWeight g(n_weight, s, k, j, eigs.dimension);
  const double n = static_cast<double>(eigs.dimension);
  const double centre = g.scale() * std::pow(n, 1.5);
  const int family = s == 1 ? k - 1 : j - 1;
  return build_report(
      eigs, s == 1 ? BlipRegime::intermediary_1 : BlipRegime::intermediary_2, k, j, n_weight, orders,
      1.0 / (2.0 * family), [&](double l) { return g(std::abs(l) / centre); },
      [&](double l) { return (l * l - centre * centre) / std::pow(n, 2.5); });
}

RegimeThresholds regime_thresholds(Index n, int k, std::optional<int> j) {
  require(n >= 1, ErrorCode::invalid_dimension, "N must be >= 1");
  const double dn = static_cast<double>(n);
  const double n32 = std::pow(dn, 1.5);
  if (!j) {
    require(k >= 2, ErrorCode::invalid_input, "checkerboard modulus k must be >= 2");
    const double bulk = goe_goe_edge * std::sqrt(1.0 - 1.0 / k) * dn;
    return {{std::sqrt(bulk * n32 / k)}, {"bulk", "blip"}};
  }
  const auto w = checker_scales(k, *j);
  const double bulk = goe_goe_edge * std::sqrt((1.0 - 1.0 / k) * (1.0 - 1.0 / *j)) * dn;
  std::vector<std::pair<double, std::string>> scales{
      {bulk, "bulk"}, {w.w1 * n32, "intermediary_1"}, {w.w2 * n32, "intermediary_2"}, {w.w3 * dn * dn, "largest"}};
  std::sort(scales.begin(), scales.end());
  RegimeThresholds t;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    t.names.push_back(scales[i].second);
    if (i + 1 < scales.size()) t.cuts.push_back(std::sqrt(scales[i].first * scales[i + 1].first));
  }
  return t;
}

RegimeCounts regime_classify(const EigenSpectrum& eigs, int k, std::optional<int> j, double threshold_scale) {
  require(threshold_scale > 0.0, ErrorCode::invalid_input, "threshold scale must be positive");
  const auto t = regime_thresholds(eigs.dimension, k, j);
  auto key = [](const std::string& band, bool positive) {
    if (band == "bulk") return band;
    if (band == "largest") return positive ? band : "neg_" + band;
    return (positive ? "pos_" : "neg_") + band;
  };
  RegimeCounts counts;
  for (const auto& band : t.names) {
    counts[key(band, true)] = 0;
    counts[key(band, false)] = 0;
  }
  for (Index i = 0; i < eigs.values.size(); ++i) {
    const double l = eigs.values(i);
    std::size_t band = 0;
    while (band < t.cuts.size() && std::abs(l) >= threshold_scale * t.cuts[band]) ++band;
    counts[key(t.names[band], l > 0)] += 1;
  }
  return counts;
}

BigInt hollow_goe_moment_exact(int k, int m) {
  require(k >= 1 && m >= 0, ErrorCode::invalid_input, "need k >= 1 and m >= 0");
  if (m == 0) return BigInt(k);
  if (m % 2 == 1 || k == 1) return BigInt(0);
  require(std::pow(static_cast<double>(k), m) <= 1e7, ErrorCode::budget_exceeded, "exact hollow moment needs k^m <= 1e7");

  const auto uk = static_cast<std::size_t>(k);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::vector<int> count(uk * uk, 0);
  std::vector<std::size_t> touched;
  BigInt total = 0;
  while (true) {
    bool diagonal = false;
    touched.clear();
    for (int t = 0; t < m; ++t) {
      const int a = idx[static_cast<std::size_t>(t)], b = idx[static_cast<std::size_t>((t + 1) % m)];
      if (a == b) {
        diagonal = true;
        break;
      }
      const std::size_t id = static_cast<std::size_t>(std::min(a, b)) * uk + static_cast<std::size_t>(std::max(a, b));
      if (count[id]++ == 0) touched.push_back(id);
    }
    if (!diagonal) {
      BigInt term = 1;
      for (auto id : touched) {
        if (count[id] % 2 == 1) {
          term = 0;
          break;
        }
        term *= double_factorial(count[id] - 1);
      }
      total += term;
    }
    for (auto id : touched) count[id] = 0;

    int t = m - 1;
    while (t >= 0 && ++idx[static_cast<std::size_t>(t)] == k) idx[static_cast<std::size_t>(t--)] = 0;
    if (t < 0) break;
  }
  return total;
}

std::vector<std::pair<double, double>> hollow_goe_moments_monte_carlo(int k, int m_max, std::size_t trials,
                                                                      std::uint64_t seed) {
  require(trials >= 1, ErrorCode::invalid_input, "Monte Carlo needs trials >= 1");
  require(k >= 1 && m_max >= 0, ErrorCode::invalid_input, "need k >= 1 and m_max >= 0");
  const auto orders = static_cast<std::size_t>(m_max + 1);
  std::vector<std::vector<double>> samples(orders, std::vector<double>(trials));
  Matrix<double> power(k, k), scratch(k, k);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto c = sample_hollow_goe(k, derive_seed(seed, 0, t, 0));
    power.setIdentity();
    for (std::size_t m = 0; m < orders; ++m) {
      samples[m][t] = power.trace();
      scratch.noalias() = power * c;
      power.swap(scratch);
    }
  }
  std::vector<std::pair<double, double>> out;
  for (auto& v : samples) {
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(trials);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    out.emplace_back(mean, trials > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0);
  }
  return out;
}

Rational theory_blip_moment_goe_checker(int m, int k) {
  require(m >= 0 && k >= 1, ErrorCode::invalid_input, "need m >= 0 and k >= 1");
  return Rational(1, k) * pow_rational(Rational(2, k * k), m) * Rational(hollow_goe_moment_exact(k, m));
}

Rational theory_largest_blip_moment(int m, int k, int j) {
  require(m >= 0, ErrorCode::invalid_input, "moment order must be >= 0");
  require_coprime(k, j);
  const Rational ka = Rational(k * k) * Rational(k - 1, k);  // (k sqrt(1 - 1/k))^2
  const Rational jb = Rational(j * j) * Rational(j - 1, j);
  const Rational lead = Rational(factorial(m)) * pow_rational(Rational(2, j * k), m);
  Rational total = 0;
  for (int m1a = 0; m1a <= m; m1a += 2)
    for (int m1b = 0; m1a + m1b <= m; m1b += 2)
      for (int m2a = 0; m1a + m1b + m2a <= m; ++m2a) {
        const int m2b = m - m1a - m1b - m2a;
        const Rational two_power = pow_rational(Rational(2), (m1a + m1b) / 2 - 2 * (m2a + m2b));
        const Rational ratio = Rational(double_factorial(m1a) * double_factorial(m1b)) /
                               Rational(factorial(m1a) * factorial(m1b) * factorial(m2a) * factorial(m2b));
        total += lead * two_power * ratio * pow_rational(ka, m1a / 2 + m2a) * pow_rational(jb, m1b / 2 + m2b);
      }
  return total;
}

WeylReport weyl_decomposition_check(const Matrix<double>& checker, const Matrix<double>& other, int k,
                                    std::optional<int> j) {
  const Index n = checker.rows();
  require(other.rows() == n && checker.cols() == n && other.cols() == n, ErrorCode::invalid_dimension,
          "Weyl check needs square matrices of equal size");
  auto require_checker = [n](const Matrix<double>& m, int modulus) {
    require(modulus >= 2 && n % modulus == 0, ErrorCode::invalid_dimension, "modulus must divide N");
    for (Index r = 0; r < n; ++r)
      for (Index c = r % modulus; c < n; c += modulus)
        require(m(r, c) == 1.0, ErrorCode::invalid_input, "decomposition needs a weight-1 checkerboard sample");
  };
  require_checker(checker, k);

  WeylReport out;
  const auto [a_mean, a_rest] = perturbation_split(checker, k);
  Matrix<double> leading, rest;
  if (!j) {
    leading = anticommutator(a_mean, other);
    rest = anticommutator(a_rest, other);
    const auto e = eigenvalues(leading);
    out.mean_other_norm = std::max(std::abs(e.values(0)), std::abs(e.values(n - 1)));
    out.mean_other_bound = 4.0 * std::pow(static_cast<double>(n), 1.5) / k;
    out.mean_other_rank = numerical_rank(e);
  } else {
    require_coprime(k, *j);
    require_checker(other, *j);
    const auto [b_mean, b_rest] = perturbation_split(other, *j);
    leading = anticommutator(a_mean, b_mean);
    rest = anticommutator(a_mean, b_rest) + anticommutator(a_rest, b_mean) + anticommutator(a_rest, b_rest);
    const auto e = eigenvalues(leading);
    out.mean_mean_top = e.values(n - 1);
    out.expected_top = 2.0 * static_cast<double>(n) * static_cast<double>(n) / (*j * k);
    out.mean_mean_rank = numerical_rank(e);
  }
  out.perturbation_norm = spectral_norm(rest);
  const auto full = eigenvalues(Matrix<double>(leading + rest));
  const auto lead_e = eigenvalues(leading);
  out.max_eigen_shift = (full.values - lead_e.values).cwiseAbs().maxCoeff();
  out.sandwich_holds = out.max_eigen_shift <= out.perturbation_norm * (1.0 + 1e-9) + 1e-9;
  return out;
}

void write_blip_report_json(std::ostream& out, const BlipReport& r) {
  nlohmann::json js;
  js["regime"] = to_string(r.regime);
  js["N"] = r.n;
  js["k"] = r.k;
  js["j"] = r.j ? nlohmann::json(*r.j) : nlohmann::json(nullptr);
  js["n"] = r.weight_order;
  js["trials"] = r.trials;
  js["moments"] = nlohmann::json::array();
  for (const auto& m : r.moments) js["moments"].push_back({{"m", m.m}, {"value", m.value}});
  js["counts"] = nlohmann::json::object();
  for (const auto& [name, c] : r.counts) js["counts"][name] = c;
  out << js.dump(2) << '\n';
}

}  // namespace anticomm
