#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fqcount/projgeom.hpp"

using namespace fqcount;

TEST_CASE("p_count") {
  CHECK(p_count(-3, 5) == 0);
  CHECK(p_count(0, 7) == 1);
  CHECK(p_count(2, 3) == 13);
  CHECK(p_count(3, 2) == 15);
}

TEST_CASE("projective enumeration") {
  auto F2 = field_create(2, 1);
  auto pts = enumerate_projective(1, F2);
  REQUIRE(pts.size() == 3);
  CHECK(to_string(pts[0], F2) == "1:0");
  CHECK(to_string(pts[1], F2) == "1:1");
  CHECK(to_string(pts[2], F2) == "0:1");

  auto F3 = field_create(3, 1);
  CHECK(enumerate_projective(2, F3).size() == 13);
  CHECK(enumerate_projective(3, F2).size() == 15);

  for (uint64_t q : {2, 3, 4}) {
    auto F = field_from_q(q);
    for (uint32_t m = 1; m <= 3; ++m) {
      auto ps = enumerate_projective(m, F);
      CHECK(BigInt(ps.size()) == p_count(m, q));
      auto sorted = ps;
      std::sort(sorted.begin(), sorted.end());
      CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      for (const auto& P : ps) {
        size_t lead = 0;
        while (P.coords[lead].v == 0) ++lead;
        CHECK(P.coords[lead] == F.one());
      }
    }
  }
  CHECK_THROWS_AS(enumerate_projective(0, F2), Error);
}

TEST_CASE("affine enumeration") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);
  CHECK(enumerate_affine(2, F2).size() == 4);
  CHECK(enumerate_affine(3, F3).size() == 27);
  auto line = enumerate_affine(1, F3);
  REQUIRE(line.size() == 3);
  CHECK(line[0][0] == F3.embed(0));
  CHECK(line[1][0] == F3.embed(1));
  CHECK(line[2][0] == F3.embed(2));
}

TEST_CASE("hyperplane enumeration and incidence") {
  auto F2 = field_create(2, 1);
  CHECK(enumerate_hyperplanes(1, F2).size() == 3);
  CHECK(enumerate_hyperplanes(2, F2).size() == 7);
  for (uint64_t q : {2, 3}) {
    auto F = field_from_q(q);
    for (uint32_t m = 1; m <= 3; ++m)
      CHECK(BigInt(enumerate_hyperplanes(m, F).size()) == p_count(m, q));
  }

  // every hyperplane meets P^m in exactly p_{m-1} points
  auto F3 = field_create(3, 1);
  auto pts = enumerate_projective(2, F3);
  for (const auto& H : enumerate_hyperplanes(2, F3)) {
    uint64_t c = 0;
    for (const auto& P : pts)
      if (incident(P, H, F3)) ++c;
    CHECK(BigInt(c) == p_count(1, 3));
  }
}

TEST_CASE("max_hyperplane_section") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);

  SECTION("empty set") {
    auto sm = max_hyperplane_section({}, 2, F2);
    CHECK(sm.a == 0);
    CHECK(sm.witness == enumerate_hyperplanes(2, F2).front());
  }
  SECTION("single point") {
    auto pts = enumerate_projective(2, F2);
    auto sm = max_hyperplane_section({pts[3]}, 2, F2);
    CHECK(sm.a == 1);
  }
  SECTION("a full hyperplane in P^2(F_3)") {
    auto H0 = enumerate_hyperplanes(2, F3)[5];
    std::vector<ProjPoint> X;
    for (const auto& P : enumerate_projective(2, F3))
      if (incident(P, H0, F3)) X.push_back(P);
    REQUIRE(X.size() == 4);
    auto sm = max_hyperplane_section(X, 2, F3);
    CHECK(sm.a == 4);  // p_1
  }
  SECTION("duplicates collapse") {
    auto pts = enumerate_projective(2, F2);
    auto one = max_hyperplane_section({pts[0]}, 2, F2);
    auto dup = max_hyperplane_section({pts[0], pts[0]}, 2, F2);
    CHECK(one.a == dup.a);
  }
}

TEST_CASE("zanella and homma set bounds") {
  CHECK(zanella_set_bound(0, 7) == 1);
  CHECK(zanella_set_bound(4, 3) == 13);  // hyperplane case saturates at p_2
  CHECK(zanella_set_bound(3, 2) == 7);

  CHECK(homma_set_bound(1, 2, 2) == 1);
  CHECK(homma_set_bound(3, 2, 2) == 7);   // a = p_1 at q = 2
  CHECK(homma_set_bound(4, 3, 3) == 10);
  CHECK_THROWS_AS(homma_set_bound(0, 2, 2), Error);
  CHECK_THROWS_AS(homma_set_bound(4, 2, 2), Error);  // a > p_1 = 3
  CHECK_THROWS_AS(homma_set_bound(2, 1, 2), Error);  // m < 2
}

TEST_CASE("homma dominates the zanella set bound") {
  for (uint64_t q : {2, 3, 4}) {
    for (uint32_t m : {2, 3, 4}) {
      uint64_t pm1 = static_cast<uint64_t>(p_count(static_cast<int64_t>(m) - 1, q));
      for (uint64_t a = 1; a <= pm1; ++a) CHECK(homma_set_bound(a, m, q) <= zanella_set_bound(a, q));
    }
  }
}

TEST_CASE("zanella lemma and the incidence double count on random subsets") {
  std::mt19937_64 rng(2024);
  struct Grid {
    uint32_t m;
    uint64_t q;
  };
  for (Grid g : {Grid{2, 2}, Grid{2, 3}, Grid{3, 2}}) {
    auto F = field_from_q(g.q);
    auto points = enumerate_projective(g.m, F);
    auto hyps = enumerate_hyperplanes(g.m, F);
    BigInt pm1 = p_count(static_cast<int64_t>(g.m) - 1, g.q);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<ProjPoint> X;
      for (const auto& P : points)
        if (rng() & 1) X.push_back(P);
      auto sm = max_hyperplane_section(X, g.m, F);
      CHECK(BigInt(X.size()) <= zanella_set_bound(sm.a, g.q));
      BigInt incidences = 0;
      for (const auto& H : hyps)
        for (const auto& P : X)
          if (incident(P, H, F)) ++incidences;
      CHECK(incidences == BigInt(X.size()) * pm1);
    }
  }
}
