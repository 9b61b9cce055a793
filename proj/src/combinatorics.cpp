#include "anticomm/combinatorics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

namespace anticomm {

namespace {

constexpr int max_enumeration_pairs = 16;

template <typename Visit>
class PairingSearch {
 public:
  PairingSearch(const Configuration& c, MatchRule rule, Visit& visit)
      : letters_(c), rule_(rule), visit_(visit), partner_(c.size(), -1) {}

  void run() { recurse(0); }

 private:
  void recurse(int from) {
    const int n = static_cast<int>(letters_.size());
    int i = from;
    while (i < n && partner_[static_cast<std::size_t>(i)] != -1) ++i;
    if (i == n) {
      visit_(partner_);
      return;
    }
    for (int j = i + 1; j < n; ++j) {
      if (partner_[static_cast<std::size_t>(j)] != -1 || letter(j) != letter(i)) continue;
      if (!admissible(i, j)) continue;
      partner_[static_cast<std::size_t>(i)] = j;
      partner_[static_cast<std::size_t>(j)] = i;
      recurse(i + 1);
      partner_[static_cast<std::size_t>(i)] = -1;
      partner_[static_cast<std::size_t>(j)] = -1;
    }
  }

  // i is the leftmost unmatched slot, so every existing arc starts left of i and crosses
  // (i, j) exactly when it ends strictly between i and j.
  bool admissible(int i, int j) const {
    if (rule_ == MatchRule::free) return true;
    const bool strict = rule_ == MatchRule::noncrossing || letter(i) == Letter::a;
    int free_a = 0, free_b = 0;
    for (int t = i + 1; t < j; ++t) {
      if (partner_[static_cast<std::size_t>(t)] != -1) {
        if (strict || letter(t) == Letter::a) return false;
      } else if (letter(t) == Letter::a) {
        ++free_a;
      } else {
        ++free_b;
      }
    }
    if (free_a % 2 != 0) return false;
    if (strict && free_b % 2 != 0) return false;
    return true;
  }

  Letter letter(int i) const { return letters_[static_cast<std::size_t>(i)]; }

  const Configuration& letters_;
  MatchRule rule_;
  Visit& visit_;
  std::vector<int> partner_;
};

template <typename Visit>
void for_each_pairing(const Configuration& c, MatchRule rule, Visit&& visit) {
  PairingSearch<std::remove_reference_t<Visit>> search(c, rule, visit);
  search.run();
}

int cycles_of(const std::vector<int>& partner) {
  const int n = static_cast<int>(partner.size());
  std::vector<char> seen(partner.size(), 0);
  int cycles = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    ++cycles;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = (partner[static_cast<std::size_t>(x)] + 1) % n)
      seen[static_cast<std::size_t>(x)] = 1;
  }
  return cycles;
}

void require_enumeration_budget(int m, int m_max, const char* what) {
  require(m >= 1, ErrorCode::invalid_input, std::string(what) + ": m must be >= 1");
  require(m <= m_max, ErrorCode::budget_exceeded,
          std::string(what) + ": enumeration limited to m <= " + std::to_string(m_max));
}

BigInt sum_over_configurations(int m, MatchRule rule) {
  BigInt total = 0;
  for (const auto& c : enumerate_configurations(2 * m)) total += count_pairings(c, rule);
  return total;
}

LaurentMoment genus_expansion(int m, MatchRule rule) {
  const int top = 2 * m + 1;
  std::vector<std::uint64_t> by_genus(static_cast<std::size_t>(m + 1), 0);
  bool parity_ok = true;
  for (const auto& c : enumerate_configurations(2 * m)) {
    for_each_pairing(c, rule, [&](const std::vector<int>& partner) {
      const int deficit = top - cycles_of(partner);
      if (deficit < 0 || deficit % 2 != 0 || deficit / 2 > m) {
        parity_ok = false;
        return;
      }
      ++by_genus[static_cast<std::size_t>(deficit / 2)];
    });
  }
  require(parity_ok, ErrorCode::numerical_failure, "genus expansion produced an odd cycle deficit");
  while (by_genus.size() > 1 && by_genus.back() == 0) by_genus.pop_back();
  LaurentMoment out;
  for (auto v : by_genus) out.coeffs.emplace_back(v);
  return out;
}

}  // namespace

std::vector<Configuration> enumerate_configurations(int n) {
  require(n >= 1, ErrorCode::invalid_input, "configurations need n >= 1");
  require(n <= max_enumeration_pairs, ErrorCode::budget_exceeded,
          "configuration enumeration limited to n <= 16");
  std::vector<Configuration> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Configuration c;
    c.reserve(static_cast<std::size_t>(2 * n));
    for (int s = 0; s < n; ++s) {
      const bool flipped = (mask >> (n - 1 - s)) & 1u;
      c.push_back(flipped ? Letter::b : Letter::a);
      c.push_back(flipped ? Letter::a : Letter::b);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_string(const Configuration& c) {
  std::string s;
  for (Letter l : c) s.push_back(l == Letter::a ? 'a' : 'b');
  return s;
}

Configuration parse_configuration(std::string_view letters) {
  Configuration c;
  for (char ch : letters) {
    require(ch == 'a' || ch == 'b', ErrorCode::invalid_input, "configuration letters must be a or b");
    c.push_back(ch == 'a' ? Letter::a : Letter::b);
  }
  return c;
}

Pairing::Pairing(std::vector<int> partner) : partner_(std::move(partner)) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    const int p = partner_[static_cast<std::size_t>(i)];
    require(p >= 0 && p < n && p != i && partner_[static_cast<std::size_t>(p)] == i,
            ErrorCode::invalid_input, "partner table is not a fixed-point-free involution");
  }
}

Pairing Pairing::from_arcs(int size, const std::vector<Arc>& arcs) {
  std::vector<int> partner(static_cast<std::size_t>(size), -1);
  for (auto [p, q] : arcs) {
    require(p >= 0 && q >= 0 && p < size && q < size && p != q, ErrorCode::invalid_input, "arc out of range");
    require(partner[static_cast<std::size_t>(p)] == -1 && partner[static_cast<std::size_t>(q)] == -1,
            ErrorCode::invalid_input, "position used by two arcs");
    partner[static_cast<std::size_t>(p)] = q;
    partner[static_cast<std::size_t>(q)] = p;
  }
  return Pairing(std::move(partner));
}

std::vector<Arc> Pairing::arcs() const {
  std::vector<Arc> out;
  for (int i = 0; i < size(); ++i)
    if (partner(i) > i) out.emplace_back(i, partner(i));
  return out;
}

bool is_noncrossing(const Pairing& p) {
  const auto arcs = p.arcs();
  for (std::size_t x = 0; x < arcs.size(); ++x)
    for (std::size_t y = x + 1; y < arcs.size(); ++y) {
      const auto [i, k] = arcs[x];
      const auto [j, l] = arcs[y];
      if ((i < j && j < k && k < l) || (j < i && i < l && l < k)) return false;
    }
  return true;
}

int cycle_count(const Pairing& p) { return cycles_of(p.partners()); }

std::vector<std::vector<int>> layers(const Configuration& c, const std::vector<Arc>& a_arcs) {
  const int n = static_cast<int>(c.size());
  std::vector<int> owner(c.size(), -1);
  for (std::size_t t = 0; t < a_arcs.size(); ++t) {
    auto [p, q] = a_arcs[t];
    require(p >= 0 && q > p && q < n, ErrorCode::invalid_input, "a-arc endpoints out of order or range");
    require(c[static_cast<std::size_t>(p)] == Letter::a && c[static_cast<std::size_t>(q)] == Letter::a,
            ErrorCode::invalid_input, "a-arc must join two a positions");
    require(owner[static_cast<std::size_t>(p)] == -1 && owner[static_cast<std::size_t>(q)] == -1,
            ErrorCode::invalid_input, "a position used by two arcs");
    owner[static_cast<std::size_t>(p)] = owner[static_cast<std::size_t>(q)] = static_cast<int>(t);
  }
  for (int i = 0; i < n; ++i)
    require(c[static_cast<std::size_t>(i)] == Letter::b || owner[static_cast<std::size_t>(i)] != -1,
            ErrorCode::invalid_input, "a-arcs must cover every a position");
  for (std::size_t x = 0; x < a_arcs.size(); ++x)
    for (std::size_t y = x + 1; y < a_arcs.size(); ++y) {
      const auto [i, k] = a_arcs[x];
      const auto [j, l] = a_arcs[y];
      require(!((i < j && j < k && k < l) || (j < i && i < l && l < k)), ErrorCode::invalid_input,
              "a-arcs cross; layers are undefined");
    }

  // Two b positions share a face exactly when they lie inside the same set of arcs.
  std::map<std::vector<bool>, std::size_t> face_of;
  std::vector<std::vector<int>> out;
  for (int pos = 0; pos < n; ++pos) {
    if (c[static_cast<std::size_t>(pos)] != Letter::b) continue;
    std::vector<bool> inside(a_arcs.size());
    for (std::size_t t = 0; t < a_arcs.size(); ++t) inside[t] = a_arcs[t].first < pos && pos < a_arcs[t].second;
    auto [it, inserted] = face_of.try_emplace(inside, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(pos);
  }
  return out;
}

BigInt count_pairings(const Configuration& c, MatchRule rule) {
  std::uint64_t count = 0;
  for_each_pairing(c, rule, [&](const std::vector<int>&) { ++count; });
  return BigInt(count);
}

std::vector<Pairing> list_pairings(const Configuration& c, MatchRule rule) {
  std::vector<Pairing> out;
  for_each_pairing(c, rule, [&](const std::vector<int>& partner) { out.emplace_back(partner); });
  return out;
}

BigInt LaurentMoment::at_one() const {
  BigInt s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

Rational LaurentMoment::at(const Rational& k) const {
  require(k != 0, ErrorCode::invalid_input, "Laurent moment evaluated at k = 0");
  const Rational inv_sq = 1 / (k * k);
  Rational power = 1, total = 0;
  for (const auto& c : coeffs) {
    total += Rational(c) * power;
    power *= inv_sq;
  }
  return total;
}

std::string LaurentMoment::symbolic() const {
  std::string s;
  for (std::size_t g = 0; g < coeffs.size(); ++g) {
    if (coeffs[g] == 0) continue;
    if (!s.empty()) s += " + ";
    s += coeffs[g].str();
    if (g > 0) s += "*k^-" + std::to_string(2 * g);
  }
  return s.empty() ? "0" : s;
}

Rational raw_from_normalized(const Rational& normalized, const Rational& second, int m) {
  return normalized * pow_rational(second, m);
}

Rational normalized_from_raw(const Rational& raw, const Rational& second, int m) {
  require(second != 0, ErrorCode::invalid_input, "second moment must be nonzero");
  return raw / pow_rational(second, m);
}

GoeGoeTables goe_goe_recurrence(int m_max) {
  require(m_max >= 0, ErrorCode::invalid_input, "recurrence depth must be >= 0");
  const auto size = static_cast<std::size_t>(std::max(m_max, 1) + 1);
  GoeGoeTables t{std::vector<BigInt>(size, 0), std::vector<BigInt>(size, 0)};
  t.f[0] = 1;
  t.f[1] = 1;
  t.g[1] = 1;
  for (int m = 2; m <= m_max; ++m) {
    BigInt g = 2 * t.f[static_cast<std::size_t>(m - 1)];
    for (int x1 = 0; x1 <= m - 2; ++x1)
      for (int x2 = 0; x1 + x2 <= m - 2; ++x2)
        g += (x1 > 0 ? 2 : 1) * (x2 > 0 ? 2 : 1) * t.f[static_cast<std::size_t>(x1)] *
             t.f[static_cast<std::size_t>(x2)] * t.g[static_cast<std::size_t>(m - 1 - x1 - x2)];
    t.g[static_cast<std::size_t>(m)] = g;
    BigInt f = g;
    for (int j = 1; j <= m - 1; ++j)
      f += 2 * t.g[static_cast<std::size_t>(j)] * t.f[static_cast<std::size_t>(m - j)];
    t.f[static_cast<std::size_t>(m)] = f;
  }
  return t;
}

std::vector<BigInt> schroeder_coefficients(int order) {
  require(order >= 0 && order <= 30, ErrorCode::invalid_input, "series order must lie in [0, 30]");
  const auto size = static_cast<std::size_t>(order + 1);
  std::vector<BigInt> f(size, 0), sq(size, 0), cube(size, 0);
  f[0] = 1;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(order); ++n) {
    const std::size_t d = n - 1;
    for (std::size_t i = 0; i <= d; ++i) sq[d] += f[i] * f[d - i];
    for (std::size_t i = 0; i <= d; ++i) cube[d] += sq[i] * f[d - i];
    f[n] = sq[d] + cube[d];
  }
  return f;
}

BigInt moment_goe_goe(int m, GoeGoeMethod method) {
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  switch (method) {
    case GoeGoeMethod::enumeration:
      require_enumeration_budget(m, 5, "GOE-GOE enumeration");
      return sum_over_configurations(m, MatchRule::noncrossing);
    case GoeGoeMethod::recurrence:
      return 2 * goe_goe_recurrence(m).f[static_cast<std::size_t>(m)];
    case GoeGoeMethod::explicit_formula: {
      BigInt s = 0;
      for (int k = 1; k <= m; ++k) s += pow_int(BigInt(2), static_cast<unsigned>(k)) * binomial(2 * m, k - 1) * binomial(m, k);
      require(s % m == 0, ErrorCode::numerical_failure, "explicit formula is not an integer");
      return s / m;
    }
    case GoeGoeMethod::series:
      return schroeder_coefficients(m)[static_cast<std::size_t>(m)];
  }
  throw Error(ErrorCode::invalid_input, "unknown GOE-GOE method");
}

BigInt moment_pte_pte(int m, PteMethod method) {
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  if (method == PteMethod::enumeration) {
    require_enumeration_budget(m, 4, "PTE-PTE enumeration");
    return sum_over_configurations(m, MatchRule::free);
  }
  const BigInt df = double_factorial(2 * m - 1);
  return pow_int(BigInt(2), static_cast<unsigned>(2 * m)) * df * df;
}

SigmaTable::SigmaTable(int n_max, int s_max) : n_max_(n_max), s_max_(s_max) {
  require(n_max >= 0 && s_max >= 0, ErrorCode::invalid_input, "sigma table bounds must be >= 0");
  const int width = s_max + n_max;
  rows_.resize(static_cast<std::size_t>(n_max + 1));
  rows_[0].resize(static_cast<std::size_t>(width + 1));
  for (int s = 0; s <= width; ++s) rows_[0][static_cast<std::size_t>(s)] = double_factorial(2 * s - 1);
  for (int n = 1; n <= n_max; ++n) {
    auto& row = rows_[static_cast<std::size_t>(n)];
    row.resize(static_cast<std::size_t>(width - n + 1));
    for (int s = 0; s <= width - n; ++s) {
      BigInt v = 0;
      for (int k = 1; k <= n; ++k) {
        const auto& lower = rows_[static_cast<std::size_t>(k - 1)];
        const auto& rest = rows_[static_cast<std::size_t>(n - k)];
        v += lower[1] * rest[static_cast<std::size_t>(s)] + lower[0] * rest[static_cast<std::size_t>(s + 1)];
      }
      row[static_cast<std::size_t>(s)] = v;
    }
  }
}

const BigInt& SigmaTable::at(int n, int s) const {
  require(n >= 0 && n <= n_max_ && s >= 0 && s <= s_max_ + n_max_ - n, ErrorCode::invalid_input,
          "sigma index outside the table");
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(s)];
}

SigmaTable sigma_table(int n_max, int s_max) { return SigmaTable(n_max, s_max); }

BigInt moment_goe_pte(int m, GoePteMethod method) {
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  if (method == GoePteMethod::enumeration) {
    require_enumeration_budget(m, 4, "GOE-PTE enumeration");
    return sum_over_configurations(m, MatchRule::layered);
  }
  return sigma_table(m, 0).at(m, 0);
}

std::pair<BigInt, BigInt> moment_bounds_goe_pte(int m) {
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  BigInt lower = 0;
  for (int i = 0; i <= m; ++i) lower += binomial(m, i) * double_factorial(2 * i - 1);
  const BigInt catalan = binomial(2 * m, m) / (m + 1);
  const BigInt upper = pow_int(BigInt(4), static_cast<unsigned>(m)) * double_factorial(2 * m - 1) * catalan;
  return {lower, upper};
}

LaurentMoment moment_goe_bce(int m) {
  require_enumeration_budget(m, 4, "GOE-BCE genus expansion");
  return genus_expansion(m, MatchRule::layered);
}

LaurentMoment moment_bce_bce(int m) {
  require_enumeration_budget(m, 4, "BCE-BCE genus expansion");
  return genus_expansion(m, MatchRule::free);
}

BigInt moment_ell_anticommutator(int m, int ell) {
  require(ell >= 2, ErrorCode::invalid_input, "ell must be >= 2");
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  const auto L = static_cast<std::size_t>(ell);
  const BigInt lf = factorial(ell);
  // f[k][x] for k = 0..ell, x = 0..m.
  std::vector<std::vector<BigInt>> f(L + 1, std::vector<BigInt>(static_cast<std::size_t>(m + 1), 0));
  auto F = [&](int k, int x) -> BigInt& { return f[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)]; };
  F(0, 0) = 1;
  for (int k = 0; k <= ell; ++k) F(k, 1) = 1;
  for (int x = 2; x <= m; ++x) {
    F(ell, x) = lf * F(0, x - 1);

    BigInt s = 0;
    for (int x1 = 0; x1 < x - 1; ++x1)
      for (int x2 = 0; x1 + x2 < x - 1; ++x2)
        s += factorial(ell - 1) * (x1 > 0 ? lf : BigInt(1)) * (x2 > 0 ? lf : BigInt(1)) * F(0, x1) * F(0, x2) *
             F(1, x - x1 - x2 - 1);
    F(ell - 1, x) = F(ell, x) + s;

    for (int k = ell - 2; k >= 1; --k) {
      BigInt t = 0;
      for (int x1 = 1; x1 <= x; ++x1)
        for (int x2 = 1; x1 + x2 <= x; ++x2)
          t += factorial(ell - k) * factorial(k - 1) * F(k + 1, x1) * F(k + 1, x2) * F(ell - k - 1, x - x1 - x2 + 1);
      F(k, x) = F(k + 1, x) + t;
    }

    BigInt u = 0;
    for (int j = 1; j <= x - 1; ++j) u += F(1, j) * F(0, x - j);
    F(0, x) = F(1, x) + lf * u;
  }
  return lf * F(0, m);
}

BigInt count_ell_noncrossing(int m, int ell) {
  require(ell >= 1 && m >= 1, ErrorCode::invalid_input, "ell and m must be >= 1");
  std::vector<int> perm(static_cast<std::size_t>(ell));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  const int blocks = 2 * m;
  double words = 1;
  for (int b = 0; b < blocks; ++b) words *= static_cast<double>(perms.size());
  require(words <= 2e6, ErrorCode::budget_exceeded, "too many words for the l-anticommutator count");

  const int len = blocks * ell;
  std::vector<int> word(static_cast<std::size_t>(len));
  std::vector<std::size_t> choice(static_cast<std::size_t>(blocks), 0);
  // nc[i][j]: non-crossing letter-respecting pairings of word[i..j-1].
  std::vector<std::vector<BigInt>> nc(static_cast<std::size_t>(len + 1), std::vector<BigInt>(static_cast<std::size_t>(len + 1)));
  BigInt total = 0;
  while (true) {
    for (int b = 0; b < blocks; ++b)
      for (int t = 0; t < ell; ++t)
        word[static_cast<std::size_t>(b * ell + t)] = perms[choice[static_cast<std::size_t>(b)]][static_cast<std::size_t>(t)];
    for (int i = len; i >= 0; --i) {
      nc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      for (int j = i + 1; j <= len; ++j) {
        BigInt v = 0;
        if ((j - i) % 2 == 0)
          for (int t = i + 1; t < j; t += 2)
            if (word[static_cast<std::size_t>(t)] == word[static_cast<std::size_t>(i)])
              v += nc[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(t)] *
                   nc[static_cast<std::size_t>(t + 1)][static_cast<std::size_t>(j)];
        nc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      }
    }
    total += nc[0][static_cast<std::size_t>(len)];
    int b = blocks - 1;
    while (b >= 0 && ++choice[static_cast<std::size_t>(b)] == perms.size()) choice[static_cast<std::size_t>(b--)] = 0;
    if (b < 0) break;
  }
  return total;
}

Rational bulk_moment_checker(int m, int k, std::optional<int> j) {
  require(m >= 1, ErrorCode::invalid_input, "moment order m must be >= 1");
  require(k >= 2, ErrorCode::invalid_input, "checkerboard modulus k must be >= 2");
  Rational factor = pow_rational(Rational(k - 1, k), m);
  if (j) {
    require(*j >= 2 && std::gcd(k, *j) == 1, ErrorCode::invalid_input, "need j >= 2 and gcd(k, j) = 1");
    factor *= pow_rational(Rational(*j - 1, *j), m);
  }
  return 2 * factor * Rational(goe_goe_recurrence(m).f[static_cast<std::size_t>(m)]);
}

}  // namespace anticomm
