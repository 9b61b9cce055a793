#include "anticomm/matrix_ops.hpp"

#include <cmath>

namespace anticomm {

double spectral_moment(const EigenSpectrum& spectrum, int m, double p) {
  require(spectrum.dimension > 0, ErrorCode::invalid_input, "spectral_moment: empty spectrum");
  const double n = static_cast<double>(spectrum.dimension);
  const double scale = std::pow(n, p);
  double sum = 0.0;
  for (Index i = 0; i < spectrum.values.size(); ++i) sum += std::pow(spectrum.values(i) / scale, m);
  return sum / n;
}

}  // namespace anticomm
