#pragma once

#include "anticomm/ensembles.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anticomm {

enum class PairKind { goe_goe, pte_pte, goe_pte, goe_bce, bce_bce, goe_checker, checker_checker, ell_goe };

// Which anticommutator to sample, parsed from tags such as "goe-bce:3", "checker-checker:3,5"
// or "anti-l:3" (sum over all orderings of three independent GOE factors).
struct PairSpec {
  PairKind kind = PairKind::goe_goe;
  int k = 1;
  int j = 1;
  int ell = 2;
  EntryDistribution distribution = EntryDistribution::standard_normal;

  std::string tag() const;
  int factor_count() const { return kind == PairKind::ell_goe ? ell : 2; }
  EnsembleSpec factor(int slot, Index n) const;
  void validate(Index n) const;
  // Power of N at which the bulk spectrum is O(1): 1 for pairs, ell/2 for anti-l.
  double bulk_exponent() const { return kind == PairKind::ell_goe ? ell / 2.0 : 1.0; }
};

PairSpec parse_pair(const std::string& tag);

// Factors for one trial; slot s draws from stream derive_seed(base, n_index, trial, s).
std::vector<Matrix<double>> sample_factors(const PairSpec& pair, Index n, std::uint64_t base, std::uint64_t n_index,
                                           std::uint64_t trial);
Matrix<double> sample_pair(const PairSpec& pair, Index n, std::uint64_t base, std::uint64_t n_index,
                           std::uint64_t trial);

}  // namespace anticomm
