#include "anticomm/ensembles.hpp"

#include <iomanip>
#include <limits>

namespace anticomm {

const char* to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::goe: return "GOE";
    case EnsembleKind::pte: return "PTE";
    case EnsembleKind::bce: return "BCE";
    case EnsembleKind::checkerboard: return "Checkerboard";
    case EnsembleKind::hollow_goe: return "HollowGOE";
  }
  return "unknown";
}

void EnsembleSpec::validate() const {
  require(n >= 1, ErrorCode::invalid_dimension, "N must be positive");
  switch (kind) {
    case EnsembleKind::pte:
      require(n % 2 == 0, ErrorCode::invalid_dimension, "PTE requires even N");
      break;
    case EnsembleKind::bce:
    case EnsembleKind::checkerboard:
      detail::require_divides(k, n, to_string(kind));
      break;
    default:
      break;
  }
}

void write_matrix_csv(std::ostream& out, const Matrix<double>& m, const std::string& kind) {
  out << "# symmetric N=" << m.rows() << " kind=" << kind << '\n';
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace anticomm
