#pragma once

#include "anticomm/combinatorics.hpp"
#include "anticomm/exact.hpp"

#include <functional>
#include <ostream>
#include <utility>
#include <vector>

namespace anticomm {

// Right endpoint of the {GOE,GOE} limiting support, sqrt((11 + 5 sqrt 5) / 2).
double goe_goe_support_edge();

double density_goe_goe(double x);
// Throws singular-point at x = 0.
double density_pte_pte(double x);
// Closed form K0(|x|/2) / (2 pi) of the same density, used as an oracle.
double density_pte_pte_bessel(double x);

struct DensityCurve {
  std::vector<double> x;
  std::vector<double> density;
  double support_lo = 0.0, support_hi = 0.0;
};

DensityCurve density_curve(const std::function<double(double)>& mu, double lo, double hi, int points);

// Integral of x^power * mu(x) over [lo, hi], splitting at 0 to absorb an endpoint singularity.
double integrate_density(const std::function<double(double)>& mu, double lo, double hi, int power = 0);
// Integral over the whole line of exp(z x) * mu(x) for a density with exponential tails.
double integrate_exponential(const std::function<double(double)>& mu, double z);

double mgf_pte_pte(double z);
// Partial sum of  sum_m 4^m ((2m-1)!!)^2 z^(2m) / (2m)!  over m < terms.
double mgf_pte_pte_series(double z, int terms);

struct PowerSeries {
  std::vector<BigInt> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

PowerSeries schroeder_series(int order);

struct PdeResidual {
  int n_max = 0, s_max = 0;
  Rational max_abs_residual;
  std::size_t coefficients_checked = 0;
};

// Checks F = (1-2w)^(-1/2) + z (dF/dw(z,0) F + F(z,0) dF/dw) coefficientwise for
// F(z,w) = sum sigma_{n,s} z^n w^s / s!, with n <= n_max and s <= s_max.
PdeResidual check_sigma_pde(int n_max, int s_max);
PdeResidual check_sigma_pde(const SigmaTable& table, int n_max, int s_max);

void write_density_csv(std::ostream& out, const DensityCurve& curve);
void write_series_json(std::ostream& out, const PowerSeries& series);

}  // namespace anticomm
