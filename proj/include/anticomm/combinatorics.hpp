#pragma once

#include "anticomm/error.hpp"
#include "anticomm/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace anticomm {

enum class Letter : std::uint8_t { a, b };

// Word of length 2n whose slot pairs (2s, 2s+1) read "ab" or "ba" (0-based positions).
using Configuration = std::vector<Letter>;

std::vector<Configuration> enumerate_configurations(int n);
std::string to_string(const Configuration& c);
Configuration parse_configuration(std::string_view letters);

using Arc = std::pair<int, int>;  // 0-based positions, first < second

class Pairing {
 public:
  explicit Pairing(std::vector<int> partner);
  static Pairing from_arcs(int size, const std::vector<Arc>& arcs);

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& partners() const { return partner_; }
  std::vector<Arc> arcs() const;

 private:
  std::vector<int> partner_;
};

bool is_noncrossing(const Pairing& p);

// Number of cycles of gamma o pi, gamma the cyclic shift i -> i+1 on [size].
int cycle_count(const Pairing& p);

// Groups b-positions into faces of the non-crossing a-arc diagram, ordered by first element.
std::vector<std::vector<int>> layers(const Configuration& c, const std::vector<Arc>& a_arcs);

enum class MatchRule {
  noncrossing,  // all arcs mutually non-crossing
  layered,      // a-arcs non-crossing, b-arcs never cross an a-arc
  free,         // any letter-respecting pairing
};

BigInt count_pairings(const Configuration& c, MatchRule rule);
std::vector<Pairing> list_pairings(const Configuration& c, MatchRule rule);

struct LaurentMoment {
  std::vector<BigInt> coeffs;  // coeffs[g] multiplies k^(-2g)

  BigInt at_one() const;
  Rational at(const Rational& k) const;
  std::string symbolic() const;  // e.g. "10 + 2*k^-2"
};

// Raw moment from a variance-normalized one and back: raw = normalized * second^m.
Rational raw_from_normalized(const Rational& normalized, const Rational& second, int m);
Rational normalized_from_raw(const Rational& raw, const Rational& second, int m);

enum class GoeGoeMethod { enumeration, recurrence, explicit_formula, series };
enum class PteMethod { closed_form, enumeration };
enum class GoePteMethod { recurrence, enumeration };

struct GoeGoeTables {
  std::vector<BigInt> f, g;
};
GoeGoeTables goe_goe_recurrence(int m_max);

std::vector<BigInt> schroeder_coefficients(int order);

BigInt moment_goe_goe(int m, GoeGoeMethod method);
BigInt moment_pte_pte(int m, PteMethod method);
BigInt moment_goe_pte(int m, GoePteMethod method);

class SigmaTable {
 public:
  SigmaTable(int n_max, int s_max);

  int n_max() const { return n_max_; }
  int s_max() const { return s_max_; }
  const BigInt& at(int n, int s) const;

 private:
  int n_max_, s_max_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[n] holds s = 0 .. s_max + n_max - n
};

SigmaTable sigma_table(int n_max, int s_max);
std::pair<BigInt, BigInt> moment_bounds_goe_pte(int m);

LaurentMoment moment_goe_bce(int m);
LaurentMoment moment_bce_bce(int m);

// Recurrence for the l-fold anticommutator of independent GOE matrices, as stated.
BigInt moment_ell_anticommutator(int m, int ell);
// Direct count of non-crossing letter-respecting pairings over all words built from 2m
// permutations of ell letters; independent of the recurrence.
BigInt count_ell_noncrossing(int m, int ell);

Rational bulk_moment_checker(int m, int k, std::optional<int> j = std::nullopt);

}  // namespace anticomm
