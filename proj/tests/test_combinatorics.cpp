#include "anticomm/combinatorics.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace anticomm;

namespace {

const std::vector<Pairing>& all_pairings(int size) {
  static std::map<int, std::vector<Pairing>> cache;
  auto it = cache.find(size);
  if (it == cache.end())
    it = cache.emplace(size, list_pairings(Configuration(static_cast<std::size_t>(size), Letter::a), MatchRule::free))
             .first;
  return it->second;
}

std::vector<int> positions(std::initializer_list<int> p) { return p; }

}  // namespace

TEST_SUITE("combinatorics") {
  TEST_CASE("configurations") {
    const auto one = enumerate_configurations(1);
    REQUIRE(one.size() == 2);
    CHECK(to_string(one[0]) == "ab");
    CHECK(to_string(one[1]) == "ba");

    std::vector<std::string> two;
    for (const auto& c : enumerate_configurations(2)) two.push_back(to_string(c));
    CHECK(two == std::vector<std::string>{"abab", "abba", "baab", "baba"});

    const auto five = enumerate_configurations(5);
    CHECK(five.size() == 32);
    for (const auto& c : five) {
      CHECK(std::count(c.begin(), c.end(), Letter::a) == 5);
      for (std::size_t s = 0; s < c.size(); s += 2) CHECK(c[s] != c[s + 1]);
    }
    CHECK_THROWS_AS(enumerate_configurations(17), Error);
    CHECK_THROWS_AS(enumerate_configurations(0), Error);
    CHECK(to_string(parse_configuration("abba")) == "abba");
    CHECK_THROWS_AS(parse_configuration("abc"), Error);
  }

  TEST_CASE("pairing validation") {
    CHECK_THROWS_AS(Pairing({1, 0, 2}), Error);
    CHECK_THROWS_AS(Pairing({1, 2, 0}), Error);
    CHECK_THROWS_AS(Pairing::from_arcs(4, {{0, 1}, {1, 2}}), Error);
    const auto p = Pairing::from_arcs(4, {{0, 3}, {1, 2}});
    CHECK(p.partner(0) == 3);
    CHECK(p.partner(p.partner(1)) == 1);
    CHECK(p.arcs() == std::vector<Arc>{{0, 3}, {1, 2}});
  }

  TEST_CASE("crossings and cycle counts") {
    const auto nested = Pairing::from_arcs(8, {{0, 7}, {1, 6}, {2, 5}, {3, 4}});
    CHECK(is_noncrossing(nested));
    CHECK(cycle_count(nested) == 5);
    const auto crossed = Pairing::from_arcs(8, {{0, 2}, {1, 3}, {4, 6}, {5, 7}});
    CHECK_FALSE(is_noncrossing(crossed));
    CHECK(is_noncrossing(Pairing::from_arcs(4, {{0, 3}, {1, 2}})));
    CHECK(cycle_count(Pairing::from_arcs(4, {{0, 2}, {1, 3}})) == 1);
  }

  TEST_CASE("cycle count characterises non-crossing pairings for m up to 6") {
    const std::vector<long> catalan{1, 1, 2, 5, 14, 42, 132};
    for (int m = 1; m <= 6; ++m) {
      const auto& pairings = all_pairings(2 * m);
      CHECK(pairings.size() == static_cast<std::size_t>(double_factorial(2 * m - 1)));
      long noncrossing = 0;
      bool ok = true;
      for (const auto& p : pairings) {
        const int c = cycle_count(p);
        if (is_noncrossing(p)) {
          ++noncrossing;
          ok = ok && c == m + 1;
        } else {
          ok = ok && c <= m - 1 && (c - (m + 1)) % 2 == 0;
        }
      }
      CHECK(ok);
      CHECK(noncrossing == catalan[static_cast<std::size_t>(m)]);
      CHECK(count_pairings(Configuration(static_cast<std::size_t>(2 * m), Letter::a), MatchRule::noncrossing) ==
            catalan[static_cast<std::size_t>(m)]);
    }
  }

  TEST_CASE("layers") {
    const auto abab = layers(parse_configuration("abab"), {{0, 2}});
    CHECK(abab == std::vector<std::vector<int>>{positions({1}), positions({3})});
    CHECK(layers(parse_configuration("abba"), {{0, 3}}) == std::vector<std::vector<int>>{positions({1, 2})});
    CHECK(layers(parse_configuration("abbaabba"), {{0, 7}, {3, 4}}) ==
          std::vector<std::vector<int>>{positions({1, 2, 5, 6})});
    CHECK_THROWS_AS(layers(parse_configuration("aabbaa"), {{0, 4}, {1, 5}}), Error);
    CHECK_THROWS_AS(layers(parse_configuration("abab"), {{0, 1}}), Error);
  }

  TEST_CASE("goe-goe oracles agree") {
    const std::vector<long> expected{2, 10, 66, 498, 4066};
    for (int m = 1; m <= 5; ++m) {
      const BigInt e = moment_goe_goe(m, GoeGoeMethod::enumeration);
      CHECK(e == moment_goe_goe(m, GoeGoeMethod::recurrence));
      CHECK(e == moment_goe_goe(m, GoeGoeMethod::explicit_formula));
      CHECK(e == moment_goe_goe(m, GoeGoeMethod::series));
      CHECK(e == expected[static_cast<std::size_t>(m - 1)]);
    }
    const auto t = goe_goe_recurrence(2);
    CHECK(t.f[2] == 5);
    CHECK(t.g[2] == 3);
    const auto r = schroeder_coefficients(4);
    CHECK(r == std::vector<BigInt>{1, 2, 10, 66, 498});
    CHECK_THROWS_AS(moment_goe_goe(6, GoeGoeMethod::enumeration), Error);
    CHECK(moment_goe_goe(12, GoeGoeMethod::recurrence) == moment_goe_goe(12, GoeGoeMethod::explicit_formula));
  }

  TEST_CASE("pte-pte") {
    CHECK(moment_pte_pte(1, PteMethod::closed_form) == 4);
    CHECK(moment_pte_pte(2, PteMethod::closed_form) == 144);
    CHECK(moment_pte_pte(2, PteMethod::enumeration) == 144);
    for (int m = 1; m <= 4; ++m)
      CHECK(moment_pte_pte(m, PteMethod::enumeration) == moment_pte_pte(m, PteMethod::closed_form));
    CHECK_THROWS_AS(moment_pte_pte(5, PteMethod::enumeration), Error);
  }

  TEST_CASE("goe-pte and sigma table") {
    CHECK(moment_goe_pte(1, GoePteMethod::recurrence) == 2);
    CHECK(moment_goe_pte(2, GoePteMethod::recurrence) == 12);
    CHECK(moment_goe_pte(3, GoePteMethod::recurrence) == 104);
    for (int m = 1; m <= 4; ++m)
      CHECK(moment_goe_pte(m, GoePteMethod::enumeration) == moment_goe_pte(m, GoePteMethod::recurrence));

    const auto table = sigma_table(4, 4);
    CHECK(table.at(0, 0) == 1);
    for (int s = 1; s <= 8; ++s) CHECK(table.at(0, s) == double_factorial(2 * s - 1));
    CHECK(table.at(1, 1) == 4);
    CHECK_THROWS_AS(table.at(5, 0), Error);
  }

  TEST_CASE("goe-pte bounds") {
    CHECK(moment_bounds_goe_pte(1) == std::pair<BigInt, BigInt>{2, 4});
    CHECK(moment_bounds_goe_pte(2) == std::pair<BigInt, BigInt>{6, 96});
    BigInt prev_lo = 0, prev_hi = 0;
    for (int m = 1; m <= 6; ++m) {
      const auto [lo, hi] = moment_bounds_goe_pte(m);
      const BigInt sigma = moment_goe_pte(m, GoePteMethod::recurrence);
      CHECK(lo <= sigma);
      CHECK(sigma <= hi);
      CHECK(lo > prev_lo);
      CHECK(hi > prev_hi);
      prev_lo = lo;
      prev_hi = hi;
    }
  }

  TEST_CASE("genus expansions") {
    const auto g2 = moment_goe_bce(2);
    CHECK(g2.coeffs == std::vector<BigInt>{10, 2});
    CHECK(g2.symbolic() == "10 + 2*k^-2");
    CHECK(g2.at(2) == Rational(21, 2));
    CHECK(moment_bce_bce(1).coeffs == std::vector<BigInt>{2, 2});
    CHECK(moment_bce_bce(2).at_one() == 144);

    for (int m = 1; m <= 4; ++m) {
      const auto goe_bce = moment_goe_bce(m);
      CHECK(goe_bce.coeffs.front() == moment_goe_goe(m, GoeGoeMethod::recurrence));
      CHECK(goe_bce.at_one() == moment_goe_pte(m, GoePteMethod::recurrence));
      for (const auto& c : goe_bce.coeffs) CHECK(c >= 0);
    }
    for (int m = 1; m <= 3; ++m) {
      const auto bce_bce = moment_bce_bce(m);
      CHECK(bce_bce.at_one() == moment_pte_pte(m, PteMethod::closed_form));
      for (const auto& c : bce_bce.coeffs) CHECK(c >= 0);
    }
    CHECK(moment_goe_bce(3).coeffs == std::vector<BigInt>{66, 38});
    CHECK(moment_bce_bce(3).coeffs == std::vector<BigInt>{66, 1890, 9084, 3360});
    CHECK_THROWS_AS(moment_goe_bce(5), Error);
    CHECK_THROWS_AS(LaurentMoment{{1}}.at(0), Error);
  }

  TEST_CASE("normalization conversion") {
    CHECK(raw_from_normalized(Rational(21, 8), 2, 2) == Rational(21, 2));
    CHECK(normalized_from_raw(Rational(21, 2), 2, 2) == Rational(21, 8));
    const Rational k = 3;
    const Rational second = moment_bce_bce(1).at(k);
    CHECK(second == Rational(20, 9));
    const Rational raw = moment_bce_bce(2).at(k);
    CHECK(raw_from_normalized(normalized_from_raw(raw, second, 2), second, 2) == raw);
    CHECK_THROWS_AS(normalized_from_raw(1, 0, 2), Error);
  }

  TEST_CASE("normalized goe-bce table rows as exact identities in k") {
    for (int k = 1; k <= 12; ++k) {
      const Rational inv2 = Rational(1, k * k);
      CHECK(normalized_from_raw(moment_goe_bce(2).at(k), 2, 2) == Rational(5, 2) + inv2 / 2);
      CHECK(normalized_from_raw(moment_goe_bce(3).at(k), 2, 3) == Rational(33, 4) + Rational(19, 4) * inv2);
      CHECK(normalized_from_raw(moment_goe_bce(4).at(k), 2, 4) ==
            Rational(249, 8) + 34 * inv2 + Rational(27, 8) * inv2 * inv2);
    }
  }

  TEST_CASE("ell-anticommutator") {
    for (int m = 1; m <= 6; ++m) CHECK(moment_ell_anticommutator(m, 2) == moment_goe_goe(m, GoeGoeMethod::recurrence));
    CHECK(moment_ell_anticommutator(1, 2) == 2);
    CHECK(moment_ell_anticommutator(1, 3) == 6);
    for (int m = 1; m <= 3; ++m) CHECK(count_ell_noncrossing(m, 2) == moment_goe_goe(m, GoeGoeMethod::recurrence));
    CHECK(count_ell_noncrossing(1, 3) == 6);
    CHECK(count_ell_noncrossing(2, 3) == 96);
    CHECK_THROWS_AS(moment_ell_anticommutator(1, 1), Error);
  }

  TEST_CASE("checkerboard bulk moments") {
    CHECK(bulk_moment_checker(1, 2) == 1);
    CHECK(bulk_moment_checker(2, 2) == Rational(5, 2));
    CHECK(bulk_moment_checker(1, 2, 3) == Rational(2, 3));
    CHECK_THROWS_AS(bulk_moment_checker(1, 1), Error);
    CHECK_THROWS_AS(bulk_moment_checker(1, 2, 4), Error);
  }
}
