#include <catch2/catch_amalgamated.hpp>

#include "fqcount/bounds.hpp"
#include "fqcount/serialize.hpp"
#include "fqcount/varieties.hpp"

using namespace fqcount;

TEST_CASE("schwarz_zippel_bound") {
  CHECK(schwarz_zippel_bound(2, 2, 3).value == 6);
  for (uint32_t m : {1, 2, 4}) CHECK(schwarz_zippel_bound(1, m, 5).value == ipow(BigInt(5), m - 1));
  auto vac = schwarz_zippel_bound(3, 1, 2);  // d = q+1 > q
  CHECK_FALSE(vac.hypothesis_ok);
  CHECK(schwarz_zippel_bound(2, 2, 2).hypothesis_ok);
}

TEST_CASE("serre_bound") {
  CHECK(serre_bound(2, 2, 2).value == 5);
  CHECK(serre_bound(3, 2, 2).value == 7);  // d = q+1 gives p_2
  CHECK(serre_bound(1, 4, 3).value == p_count(3, 3));
  CHECK(serre_bound(1, 4, 3).value == 40);
  CHECK_FALSE(serre_bound(4, 2, 2).hypothesis_ok);
}

TEST_CASE("delta") {
  CHECK(delta(-1) == 0);
  CHECK(delta(0) == 1);
  CHECK(delta(1) == 3);
  CHECK(delta(3) == 10);
  CHECK_THROWS_AS(delta(-2), Error);
}

TEST_CASE("tb_bound") {
  SECTION("reduces to Serre at r = 1") {
    for (uint32_t d = 1; d <= 5; ++d)
      for (uint32_t m = 1; m <= 5; ++m)
        for (uint64_t q : {2, 3, 4, 5}) CHECK(tb_bound(d, m, 1, q).value == serre_bound(d, m, q).value);
  }
  SECTION("the counterexample value T_5 = 2(1+q)") {
    for (uint64_t q : {2, 3, 4, 5, 7}) CHECK(tb_bound(2, 3, 5, q).value == BigInt(2) * (1 + q));
  }
  SECTION("quadrics at small r: p_{m-1} + q^{m-r}") {
    for (uint32_t m = 2; m <= 5; ++m)
      for (uint32_t r = 1; r <= m; ++r)
        for (uint64_t q : {2, 3}) {
          BigInt expected = p_count(static_cast<int64_t>(m) - 1, q) + ipow(BigInt(q), m - r);
          CHECK(tb_bound(2, m, r, q).value == expected);
        }
  }
  SECTION("d = 1 gives p_{m-r}, confirmed by exhaustive search at small scale") {
    auto F2 = field_create(2, 1);
    for (uint32_t m = 2; m <= 3; ++m)
      for (uint32_t r = 1; r <= m + 1; ++r) {
        CHECK(tb_bound(1, m, r, 2).value == p_count(static_cast<int64_t>(m) - r, 2));
        CHECK(BigInt(search_max_points(1, m, r, F2, SearchMode::exhaustive).count) ==
              tb_bound(1, m, r, 2).value);
      }
  }
  SECTION("hypothesis flag is d < q-1") {
    CHECK(tb_bound(2, 3, 5, 5).hypothesis_ok);
    CHECK_FALSE(tb_bound(2, 3, 5, 3).hypothesis_ok);
    CHECK_FALSE(tb_bound(2, 3, 5, 2).hypothesis_ok);
  }
  CHECK_THROWS_AS(tb_bound(2, 2, 7, 3), Error);  // r > C(4,2) = 6
}

TEST_CASE("zanella_quadric_bound") {
  for (uint64_t q : {2, 3, 4, 5}) CHECK(zanella_quadric_bound(3, 5, q).value == BigInt(1) + 2 * q);
  for (uint32_t m = 2; m <= 5; ++m)
    for (uint32_t r = 1; r <= m + 1; ++r)
      for (uint64_t q : {2, 3}) {
        BigInt expected = p_count(static_cast<int64_t>(m) - 1, q) + floor_pow(q, static_cast<int64_t>(m) - r);
        CHECK(zanella_quadric_bound(m, r, q).value == expected);
      }
  for (uint32_t m = 2; m <= 5; ++m)
    CHECK(zanella_quadric_bound(m, static_cast<uint64_t>(delta(m)), 3).value == 0);
  CHECK_THROWS_AS(zanella_quadric_bound(3, 0, 2), Error);
  CHECK_THROWS_AS(zanella_quadric_bound(3, 11, 2), Error);  // delta_3 = 10
}

TEST_CASE("tb_zanella_census") {
  SECTION("m = 2: the TBC holds for quadrics in the plane") {
    for (uint64_t q : {2, 3, 5}) CHECK(census_failing_rows(tb_zanella_census(2, q)) == 0);
  }
  SECTION("m = 3: exactly one failing rank, r = 5, gap 1") {
    auto rows = tb_zanella_census(3, 2);
    CHECK(census_failing_rows(rows) == 1);
    CHECK(rows[4].r == 5);
    CHECK(rows[4].gap == 1);
    CHECK(rows[4].k == 1);
    CHECK(rows[4].i == 1);
  }
  SECTION("failing count equals C(m-1,2) on the census grid") {
    for (uint32_t m = 3; m <= 8; ++m)
      for (uint64_t q : {2, 3, 4})
        CHECK(BigInt(census_failing_rows(tb_zanella_census(m, q))) == binomial(m - 1, 2));
  }
  SECTION("equality pattern: gap vanishes exactly off the Cor-3.4 range") {
    for (uint32_t m = 2; m <= 6; ++m) {
      for (uint64_t q : {2, 3}) {
        for (const auto& row : tb_zanella_census(m, q)) {
          bool in_range = row.k >= 0 && row.k < static_cast<int64_t>(m) - 1 && row.i >= 1 && row.i <= row.k;
          CHECK((row.gap > 0) == in_range);
        }
      }
    }
  }
}

TEST_CASE("couvreur bounds") {
  CHECK(couvreur_bound(3, 2, {{2, 1}, {1, 1}}).value == 10);
  SECTION("single component agrees with the equidimensional form") {
    for (uint32_t m = 2; m <= 4; ++m)
      for (int64_t n = 0; n < m; ++n)
        for (uint64_t deg : {1, 2, 5})
          CHECK(couvreur_bound(m, 3, {{n, deg}}).value == couvreur_equidim_bound(m, 3, n, deg).value);
  }
  CHECK(couvreur_equidim_bound(3, 2, 1, 4).value == 12);
  CHECK(couvreur_equidim_bound(4, 3, 3, 1).value == p_count(3, 3));  // deg 1: p_n
  // n = m-1 reduces to Serre
  for (uint32_t d = 1; d <= 4; ++d)
    for (uint64_t q : {2, 3})
      CHECK(couvreur_equidim_bound(3, q, 2, d).value == serre_bound(d, 3, q).value);
  CHECK_THROWS_AS(couvreur_bound(3, 2, {{3, 1}}), Error);  // n_i >= m
  CHECK_THROWS_AS(couvreur_equidim_bound(3, 2, 3, 1), Error);
  CHECK_THROWS_AS(couvreur_bound(3, 2, {}), Error);
}

TEST_CASE("ci_compare") {
  SECTION("r = 1 collapses both to Serre") {
    for (uint32_t d : {2, 3})
      for (uint64_t q : {3, 7}) {
        CiComparison cmp = ci_compare(d, 4, 1, q);
        CHECK(cmp.tb.value == serre_bound(d, 4, q).value);
        CHECK(cmp.couvreur.value == serre_bound(d, 4, q).value);
        CHECK(cmp.couvreur_vs_tb == Comparison::equal);
      }
  }
  SECTION("specific values") {
    CiComparison cmp = ci_compare(2, 3, 2, 3);
    CHECK(cmp.tb.value == 16);
    CHECK(cmp.couvreur.value == 16);
    CHECK(cmp.couvreur_vs_tb == Comparison::equal);

    CiComparison cmp2 = ci_compare(2, 4, 2, 7);
    CHECK(cmp2.tb.hypothesis_ok);  // 4 <= 8
    CHECK(cmp2.couvreur.value <= cmp2.tb.value);
  }
  CHECK_THROWS_AS(ci_compare(1, 3, 2, 3), Error);  // d must exceed 1
  CHECK_THROWS_AS(ci_compare(2, 3, 4, 3), Error);  // r > m
}

TEST_CASE("tb_lower_bound_ci") {
  CHECK(tb_lower_bound_ci(2, 3, 2, 2) == 9);
  CHECK(tb_lower_bound_ci(2, 2, 1, 3) == 7);
  for (uint32_t d : {2, 3})
    for (uint32_t m = 2; m <= 5; ++m)
      for (uint32_t r = 1; r <= m; ++r)
        for (uint64_t q : {2, 3, 4, 5, 8})
          CHECK(tb_lower_bound_ci(d, m, r, q) <= ci_compare(d, m, r, q).tb.value);
}

TEST_CASE("bounds are monotone in q where the closed forms make it evident") {
  std::vector<uint64_t> qs = {2, 3, 4, 5, 7, 8, 9, 11};
  for (size_t i = 1; i < qs.size(); ++i) {
    for (uint32_t d = 1; d <= 4; ++d) {
      for (uint32_t m = 1; m <= 4; ++m) {
        CHECK(schwarz_zippel_bound(d, m, qs[i - 1]).value <= schwarz_zippel_bound(d, m, qs[i]).value);
        CHECK(serre_bound(d, m, qs[i - 1]).value <= serre_bound(d, m, qs[i]).value);
        for (uint64_t r = 1; r <= std::min<uint64_t>(6, static_cast<uint64_t>(delta(m))); ++r) {
          if (d != 2) continue;
          CHECK(tb_bound(2, m, r, qs[i - 1]).value <= tb_bound(2, m, r, qs[i]).value);
        }
      }
    }
  }
}

TEST_CASE("bound results serialize with the stable schema") {
  BoundResult b = tb_bound(2, 3, 5, 2);
  Json j = to_json(b);
  CHECK(j["name"] == "tb");
  CHECK(j["value"] == 6);
  CHECK(j["hypothesis_ok"] == false);
  CHECK(j["params"]["d"] == 2);
  CHECK(j["params"]["r"] == 5);

  auto rows = tb_zanella_census(3, 2);
  std::string csv = census_csv(rows);
  CHECK(csv.rfind("r,k,i,T_r,Z_r,gap\n", 0) == 0);
  CHECK(csv.find("5,1,1,6,5,1") != std::string::npos);
}
