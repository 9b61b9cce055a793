#include "anticomm/densities.hpp"

#include "anticomm/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <json.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace anticomm {

namespace {

constexpr double small_offset = 1e-6;

// x^power * value, with an exact 0 when the density has underflowed in a far tail.
double weighted(double x, int power, double value) {
  if (value == 0.0 || power == 0) return value;
  return std::pow(x, power) * value;
}

// Integral of g over (0, b), b possibly infinite.
double integrate_half_line(const std::function<double(double)>& g, double b) {
  if (b <= 0.0) return 0.0;
  if (std::isinf(b)) {
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate(g);
  }
  boost::math::quadrature::tanh_sinh<double> q;
  return q.integrate(g, 0.0, b);
}

}  // namespace

double goe_goe_support_edge() { return std::sqrt((11.0 + 5.0 * std::sqrt(5.0)) / 2.0); }

double density_goe_goe(double x) {
  require(std::isfinite(x), ErrorCode::invalid_input, "density argument must be finite");
  double a = std::abs(x);
  if (a >= goe_goe_support_edge()) return 0.0;
  if (a < small_offset) a = small_offset;
  const double x2 = a * a;
  const double inner = std::max(0.0, x2 * (1.0 + 11.0 * x2 - x2 * x2) / 27.0);
  const double h = std::cbrt((18.0 * x2 + 1.0) / 27.0 + std::sqrt(inner));
  const double value = -(std::sqrt(3.0) / (2.0 * std::numbers::pi * a)) * ((3.0 * x2 + 1.0) / (9.0 * h) - h);
  return std::max(0.0, value);
}

double density_pte_pte(double x) {
  require(std::isfinite(x), ErrorCode::invalid_input, "density argument must be finite");
  require(x != 0.0, ErrorCode::singular_point, "the {PTE,PTE} density is singular at 0");
  const double a = std::abs(x);
  if (a > 1400.0) return 0.0;  // below the smallest double
  // chi-square(1) density convolved with its reflection, after substituting y = u^2.
  boost::math::quadrature::exp_sinh<double> q;
  const double tail = q.integrate([a](double u) { return std::exp(-u * u) / std::sqrt(u * u + a); });
  return std::exp(-a / 2.0) * 2.0 * tail / (2.0 * std::numbers::pi);
}

double density_pte_pte_bessel(double x) {
  require(x != 0.0, ErrorCode::singular_point, "the {PTE,PTE} density is singular at 0");
  return std::cyl_bessel_k(0.0, std::abs(x) / 2.0) / (2.0 * std::numbers::pi);
}

DensityCurve density_curve(const std::function<double(double)>& mu, double lo, double hi, int points) {
  require(points >= 1 && lo < hi, ErrorCode::invalid_input, "density grid needs points >= 1 and lo < hi");
  DensityCurve c;
  c.support_lo = lo;
  c.support_hi = hi;
  const double step = (hi - lo) / points;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (i + 0.5) * step;
    c.x.push_back(x);
    c.density.push_back(mu(x));
  }
  return c;
}

double integrate_density(const std::function<double(double)>& mu, double lo, double hi, int power) {
  require(lo < hi, ErrorCode::invalid_input, "integration bounds must satisfy lo < hi");
  require(power >= 0, ErrorCode::invalid_input, "moment power must be >= 0");
  if (lo >= 0.0) {
    const double from_zero = integrate_half_line([&](double t) { return weighted(t, power, mu(t)); }, hi);
    const double below = lo > 0.0 ? integrate_density(mu, 0.0, lo, power) : 0.0;
    return from_zero - below;
  }
  if (hi <= 0.0) {
    auto mirrored = [&](double t) { return mu(-t); };
    const double v = integrate_density(mirrored, -hi, -lo, power);
    return power % 2 == 0 ? v : -v;
  }
  return integrate_density(mu, lo, 0.0, power) + integrate_density(mu, 0.0, hi, power);
}

double integrate_exponential(const std::function<double(double)>& mu, double z) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate([&](double t) {
    const double up = mu(t), down = mu(-t);
    return (up == 0.0 ? 0.0 : std::exp(z * t) * up) + (down == 0.0 ? 0.0 : std::exp(-z * t) * down);
  });
}

double mgf_pte_pte(double z) {
  require(std::abs(z) < 0.5, ErrorCode::out_of_domain, "the {PTE,PTE} MGF requires |z| < 1/2");
  return 1.0 / std::sqrt(1.0 - 4.0 * z * z);
}

double mgf_pte_pte_series(double z, int terms) {
  require(terms >= 1, ErrorCode::invalid_input, "series needs at least one term");
  double term = 1.0, sum = 0.0;
  for (int m = 0; m < terms; ++m) {
    sum += term;
    term *= 2.0 * (2.0 * m + 1.0) / (m + 1.0) * z * z;
  }
  return sum;
}

PowerSeries schroeder_series(int order) { return PowerSeries{schroeder_coefficients(order)}; }

PdeResidual check_sigma_pde(const SigmaTable& table, int n_max, int s_max) {
  require(n_max >= 0 && s_max >= 0, ErrorCode::invalid_input, "PDE truncation must be >= 0");
  require(table.n_max() >= n_max && table.n_max() + table.s_max() - n_max >= s_max + 1, ErrorCode::invalid_input,
          "sigma table too shallow for the requested PDE truncation");

  auto coeff = [&](int n, int s) { return Rational(table.at(n, s)) / Rational(factorial(s)); };

  // (1 - 2w)^(-1/2) by the generalized binomial series.
  std::vector<Rational> root(static_cast<std::size_t>(s_max + 1));
  root[0] = 1;
  for (int s = 1; s <= s_max; ++s) {
    Rational c = 1;
    for (int t = 0; t < s; ++t) c *= Rational(-1, 2) - Rational(t);
    root[static_cast<std::size_t>(s)] = c / Rational(factorial(s)) * pow_rational(Rational(-2), s);
  }

  PdeResidual r{n_max, s_max, Rational(0), 0};
  for (int n = 0; n <= n_max; ++n)
    for (int s = 0; s <= s_max; ++s) {
      Rational rhs = n == 0 ? root[static_cast<std::size_t>(s)] : Rational(0);
      for (int p = 0; p + 1 <= n; ++p) {
        const int q = n - 1 - p;
        rhs += coeff(p, 1) * coeff(q, s) + coeff(p, 0) * Rational(s + 1) * coeff(q, s + 1);
      }
      Rational diff = coeff(n, s) - rhs;
      if (diff < 0) diff = -diff;
      if (diff > r.max_abs_residual) r.max_abs_residual = diff;
      ++r.coefficients_checked;
    }
  return r;
}

PdeResidual check_sigma_pde(int n_max, int s_max) {
  require(n_max >= 0 && s_max >= 0, ErrorCode::invalid_input, "PDE truncation must be >= 0");
  return check_sigma_pde(sigma_table(n_max, s_max + 1), n_max, s_max);
}

void write_density_csv(std::ostream& out, const DensityCurve& curve) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "x,density\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i) out << curve.x[i] << ',' << curve.density[i] << '\n';
  out.precision(old_precision);
}

void write_series_json(std::ostream& out, const PowerSeries& series) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : series.coeffs) j.push_back(c.str());
  out << j.dump() << '\n';
}

}  // namespace anticomm
