#include "anticomm/pairs.hpp"

#include "anticomm/matrix_ops.hpp"

#include <charconv>
#include <numeric>

namespace anticomm {

namespace {

int parse_positive(std::string_view text, const std::string& tag) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  require(ec == std::errc() && ptr == text.data() + text.size() && v >= 1, ErrorCode::invalid_input,
          "bad parameter in pair tag '" + tag + "'");
  return v;
}

}  // namespace

std::string PairSpec::tag() const {
  switch (kind) {
    case PairKind::goe_goe: return "goe-goe";
    case PairKind::pte_pte: return "pte-pte";
    case PairKind::goe_pte: return "goe-pte";
    case PairKind::goe_bce: return "goe-bce:" + std::to_string(k);
    case PairKind::bce_bce: return "bce-bce:" + std::to_string(k);
    case PairKind::goe_checker: return "goe-checker:" + std::to_string(k);
    case PairKind::checker_checker: return "checker-checker:" + std::to_string(k) + "," + std::to_string(j);
    case PairKind::ell_goe: return "anti-l:" + std::to_string(ell);
  }
  return "unknown";
}

EnsembleSpec PairSpec::factor(int slot, Index n) const {
  require(slot >= 0 && slot < factor_count(), ErrorCode::invalid_input, "factor slot out of range");
  EnsembleSpec s;
  s.n = n;
  s.distribution = distribution;
  auto set = [&](EnsembleKind kind_, Index k_) {
    s.kind = kind_;
    s.k = k_;
  };
  switch (kind) {
    case PairKind::goe_goe:
    case PairKind::ell_goe: set(EnsembleKind::goe, 1); break;
    case PairKind::pte_pte: set(EnsembleKind::pte, 1); break;
    case PairKind::goe_pte: set(slot == 0 ? EnsembleKind::goe : EnsembleKind::pte, 1); break;
    case PairKind::goe_bce: slot == 0 ? set(EnsembleKind::goe, 1) : set(EnsembleKind::bce, k); break;
    case PairKind::bce_bce: set(EnsembleKind::bce, k); break;
    case PairKind::goe_checker: slot == 0 ? set(EnsembleKind::goe, 1) : set(EnsembleKind::checkerboard, k); break;
    case PairKind::checker_checker: set(EnsembleKind::checkerboard, slot == 0 ? k : j); break;
  }
  return s;
}

void PairSpec::validate(Index n) const {
  if (kind == PairKind::checker_checker)
    require(k >= 2 && j >= 2 && std::gcd(k, j) == 1, ErrorCode::invalid_input,
            "checker-checker needs k, j >= 2 with gcd(k, j) = 1");
  if (kind == PairKind::goe_checker) require(k >= 2, ErrorCode::invalid_input, "goe-checker needs k >= 2");
  if (kind == PairKind::ell_goe) require(ell >= 1 && ell <= 6, ErrorCode::invalid_input, "anti-l needs 1 <= l <= 6");
  for (int s = 0; s < factor_count(); ++s) factor(s, n).validate();
}

PairSpec parse_pair(const std::string& tag) {
  const auto colon = tag.find(':');
  const std::string head = tag.substr(0, colon);
  const std::string_view args = colon == std::string::npos ? std::string_view() : std::string_view(tag).substr(colon + 1);
  auto no_args = [&] { require(colon == std::string::npos, ErrorCode::invalid_input, "pair '" + head + "' takes no parameter"); };
  auto one_arg = [&] {
    require(colon != std::string::npos, ErrorCode::invalid_input, "pair '" + head + "' needs a parameter");
    return parse_positive(args, tag);
  };

  PairSpec p;
  if (head == "goe-goe") {
    no_args();
    p.kind = PairKind::goe_goe;
  } else if (head == "pte-pte") {
    no_args();
    p.kind = PairKind::pte_pte;
  } else if (head == "goe-pte") {
    no_args();
    p.kind = PairKind::goe_pte;
  } else if (head == "goe-bce") {
    p.kind = PairKind::goe_bce;
    p.k = one_arg();
  } else if (head == "bce-bce") {
    p.kind = PairKind::bce_bce;
    p.k = one_arg();
  } else if (head == "goe-checker") {
    p.kind = PairKind::goe_checker;
    p.k = one_arg();
  } else if (head == "checker-checker") {
    require(colon != std::string::npos, ErrorCode::invalid_input, "checker-checker needs k,j");
    const auto comma = args.find(',');
    require(comma != std::string_view::npos, ErrorCode::invalid_input, "checker-checker needs k,j");
    p.kind = PairKind::checker_checker;
    p.k = parse_positive(args.substr(0, comma), tag);
    p.j = parse_positive(args.substr(comma + 1), tag);
  } else if (head == "anti-l") {
    p.kind = PairKind::ell_goe;
    p.ell = one_arg();
  } else {
    throw Error(ErrorCode::invalid_input, "unknown pair '" + tag + "'");
  }
  return p;
}

std::vector<Matrix<double>> sample_factors(const PairSpec& pair, Index n, std::uint64_t base, std::uint64_t n_index,
                                           std::uint64_t trial) {
  pair.validate(n);
  std::vector<Matrix<double>> out;
  for (int s = 0; s < pair.factor_count(); ++s)
    out.push_back(sample<double>(pair.factor(s, n), derive_seed(base, n_index, trial, static_cast<std::uint64_t>(s))));
  return out;
}

Matrix<double> sample_pair(const PairSpec& pair, Index n, std::uint64_t base, std::uint64_t n_index,
                           std::uint64_t trial) {
  const auto f = sample_factors(pair, n, base, n_index, trial);
  if (pair.kind == PairKind::ell_goe) return ell_anticommutator(f);
  return anticommutator(f[0], f[1]);
}

}  // namespace anticomm
