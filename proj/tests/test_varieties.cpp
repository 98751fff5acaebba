#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fqcount/varieties.hpp"

using namespace fqcount;

namespace {

HomogPoly monomial(uint32_t m, Exps e, const FieldSpec& F) {
  HomogPoly f = make_homog(m, exps_degree(e), F);
  homog_add_term(f, e, F.one(), F);
  return f;
}

// Test-local oracle: max |V(F)| over ALL nonzero degree-d forms, by direct
// evaluation of every coefficient vector. Independent of the subspace-stream
// search path.
uint64_t brute_force_max_single(uint32_t d, uint32_t m, const FieldSpec& F) {
  auto lam = enumerate_lambda(d, m);
  auto pts = enumerate_projective(m, F);
  uint64_t nforms = 1;
  for (size_t i = 0; i < lam.size(); ++i) nforms *= F.q;
  uint64_t best = 0;
  for (uint64_t code = 1; code < nforms; ++code) {
    HomogPoly f = make_homog(m, d, F);
    uint64_t rest = code;
    for (const auto& e : lam) {
      uint32_t c = static_cast<uint32_t>(rest % F.q);
      rest /= F.q;
      if (c != 0) f.terms.emplace(e, FieldElement{c});
    }
    uint64_t z = 0;
    for (const auto& P : pts)
      if (evaluate(f, P, F).v == 0) ++z;
    best = std::max(best, z);
  }
  return best;
}

}  // namespace

TEST_CASE("count_projective_zeros") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);

  for (uint32_t m : {1, 2, 3}) {
    Exps e(m + 1, 0);
    e[0] = 1;
    CHECK(BigInt(count_projective_zeros({monomial(m, e, F3)}, m, F3)) ==
          p_count(static_cast<int64_t>(m) - 1, 3));
  }

  // the full set of degree-2 monomials has no common projective zero
  for (uint32_t m : {2, 3}) {
    auto fam = construct_dropped_monomial_family(m, 0, F2);
    CHECK(count_projective_zeros(fam, m, F2) == 0);
  }

  CHECK_THROWS_AS(count_projective_zeros({}, 2, F2), Error);
}

TEST_CASE("count_affine_zeros") {
  auto F3 = field_create(3, 1);
  for (uint32_t m : {1, 2, 3}) {
    Poly f = make_poly(m, F3);
    Exps e(m, 0);
    e[0] = 1;
    poly_add_term(f, e, F3.one(), F3);
    CHECK(BigInt(count_affine_zeros(f, m, F3)) == ipow(BigInt(3), m - 1));
  }
  Poly one = make_poly(2, F3);
  poly_add_term(one, {0, 0}, F3.one(), F3);
  CHECK(count_affine_zeros(one, 2, F3) == 0);
  CHECK_THROWS_AS(count_affine_zeros(make_poly(2, F3), 2, F3), Error);  // zero polynomial
}

TEST_CASE("construct_g_affine") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);

  Poly g1 = construct_g_affine(1, 2, F3);
  CHECK(g1.terms.size() == 1);  // first enumerated element is 0, so g_1 = y_0
  CHECK(count_affine_zeros(g1, 2, F3) == 9 / 3);

  CHECK(count_affine_zeros(construct_g_affine(2, 2, F2), 2, F2) == 4);
  CHECK(count_affine_zeros(construct_g_affine(2, 2, F3), 2, F3) == 6);
  CHECK_THROWS_AS(construct_g_affine(3, 2, F2), Error);  // d > q

  auto F4 = field_create(2, 2);
  for (uint32_t d = 1; d <= 4; ++d)
    CHECK(BigInt(count_affine_zeros(construct_g_affine(d, 2, F4), 2, F4)) == BigInt(d) * 4);
}

TEST_CASE("construct_G_projective") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);

  CHECK(BigInt(count_projective_zeros({construct_G_projective(1, 3, F3)}, 3, F3)) == p_count(2, 3));
  CHECK(count_projective_zeros({construct_G_projective(2, 2, F3)}, 2, F3) == 7);
  CHECK(count_projective_zeros({construct_G_projective(3, 2, F2)}, 2, F2) == 7);  // d = q+1 fills P^2
  CHECK_THROWS_AS(construct_G_projective(4, 2, F2), Error);  // d > q+1

  for (uint64_t q : {2, 3, 4}) {
    auto F = field_from_q(q);
    for (uint32_t m : {1, 2, 3}) {
      for (uint32_t d = 1; d <= q + 1; ++d) {
        BigInt expected = BigInt(d) * ipow(BigInt(q), m - 1) + p_count(static_cast<int64_t>(m) - 2, q);
        CHECK(BigInt(count_projective_zeros({construct_G_projective(d, m, F)}, m, F)) == expected);
      }
    }
  }
}

TEST_CASE("construct_quadric_family") {
  auto F2 = field_create(2, 1);
  auto fam = construct_quadric_family(3, 2, F2);
  REQUIRE(fam.size() == 2);
  CHECK(count_projective_zeros(fam, 3, F2) == 9);  // p_2 + q

  for (uint32_t m : {2, 3}) {
    auto full = construct_quadric_family(m, m + 1, F2);
    CHECK(BigInt(count_projective_zeros(full, m, F2)) == p_count(static_cast<int64_t>(m) - 1, 2));
    CHECK(is_independent(full, F2));
  }

  CHECK(count_projective_zeros(construct_quadric_family(1, 1, F2), 1, F2) == 2);
  CHECK_THROWS_AS(construct_quadric_family(2, 4, F2), Error);  // r > m+1
}

TEST_CASE("construct_dropped_monomial_family") {
  auto F3 = field_create(3, 1);
  auto F2 = field_create(2, 1);
  CHECK(count_projective_zeros(construct_dropped_monomial_family(2, 0, F3), 2, F3) == 0);
  CHECK(count_projective_zeros(construct_dropped_monomial_family(2, 3, F3), 2, F3) == 4);  // q+1
  CHECK(count_projective_zeros(construct_dropped_monomial_family(3, 4, F2), 3, F2) == 4);  // q+2
  for (uint32_t s = 0; s <= 4; ++s) {
    auto fam = construct_dropped_monomial_family(3, s, F2);
    CHECK(fam.size() == 10 - s);
    CHECK(is_independent(fam, F2));
  }
  CHECK_THROWS_AS(construct_dropped_monomial_family(1, 0, F2), Error);
  CHECK_THROWS_AS(construct_dropped_monomial_family(2, 5, F2), Error);
}

TEST_CASE("exhaustive search equals brute force over all forms") {
  auto F2 = field_create(2, 1);
  auto F3 = field_create(3, 1);
  struct Row {
    uint32_t d, m;
    const FieldSpec* F;
  };
  for (Row row : {Row{2, 2, &F2}, Row{1, 2, &F2}, Row{2, 2, &F3}, Row{1, 3, &F2}}) {
    CountReport rep = search_max_points(row.d, row.m, 1, *row.F, SearchMode::exhaustive);
    CHECK(rep.count == brute_force_max_single(row.d, row.m, *row.F));
    CHECK(count_projective_zeros(rep.witness, row.m, *row.F) == rep.count);
  }
  // frozen value: 63 nonzero quadrics in 3 variables over F_2, max is 5
  CHECK(search_max_points(2, 2, 1, F2, SearchMode::exhaustive).count == 5);
}

TEST_CASE("search respects linear-section geometry") {
  auto F3 = field_create(3, 1);
  // r independent linear forms cut out a codimension-r linear subspace
  CHECK(BigInt(search_max_points(1, 3, 2, F3, SearchMode::exhaustive).count) == p_count(1, 3));
  CHECK(BigInt(search_max_points(1, 2, 1, F3, SearchMode::exhaustive).count) == p_count(1, 3));
}

TEST_CASE("exhaustive search dominates every paper construction") {
  auto F2 = field_create(2, 1);
  for (uint32_t r = 1; r <= 3; ++r) {
    uint64_t searched = search_max_points(2, 2, r, F2, SearchMode::exhaustive).count;
    for (const auto& fam : seed_families(2, 2, r, F2))
      CHECK(searched >= count_projective_zeros(fam, 2, F2));
  }
}

TEST_CASE("randomized search at the counterexample point") {
  auto F2 = field_create(2, 1);
  CountReport rep = search_max_points(2, 3, 5, F2, SearchMode::randomized, 500, 42);
  CHECK(rep.count <= 5);  // Zanella bound Z_5 = 1 + 2q = 5
  CHECK(rep.count >= 4);  // seeded constructions reach at least 4
  CHECK(count_projective_zeros(rep.witness, 3, F2) == rep.count);
  CHECK(is_independent(rep.witness, F2));

  // same seed, same result
  CountReport rep2 = search_max_points(2, 3, 5, F2, SearchMode::randomized, 500, 42);
  CHECK(rep.count == rep2.count);
  CHECK(rep.witness == rep2.witness);

  CHECK_THROWS_AS(search_max_points(2, 3, 5, F2, SearchMode::randomized, 0), Error);  // bad budget
}

TEST_CASE("span invariance of zero counts") {
  auto F3 = field_create(3, 1);
  std::mt19937_64 rng(17);
  auto fam = construct_quadric_family(3, 2, F3);
  uint64_t base = count_projective_zeros(fam, 3, F3);
  for (int trial = 0; trial < 10; ++trial) {
    // random invertible 2x2 change of basis
    uint32_t a, b, c, d;
    do {
      a = rng() % 3, b = rng() % 3, c = rng() % 3, d = rng() % 3;
    } while ((a * d + 2 * b * c) % 3 == 0);  // det = ad - bc != 0
    auto lin = [&](uint32_t u, uint32_t v) {
      HomogPoly f = make_homog(3, 2, F3);
      for (const auto& [e, coeff] : fam[0].terms) detail::add_term(f.terms, e, F3.mul(coeff, FieldElement{u}), F3);
      for (const auto& [e, coeff] : fam[1].terms) detail::add_term(f.terms, e, F3.mul(coeff, FieldElement{v}), F3);
      return f;
    };
    std::vector<HomogPoly> changed = {lin(a, b), lin(c, d)};
    REQUIRE(is_independent(changed, F3));
    CHECK(count_projective_zeros(changed, 3, F3) == base);
  }
}

TEST_CASE("pruned scan equals unpruned scan") {
  auto F2 = field_create(2, 1);
  auto points = enumerate_projective(2, F2);
  auto monos = enumerate_lambda(2, 2);
  auto table = evaluation_table(monos, points, F2);
  auto pruned = detail::exhaustive_scan(static_cast<uint32_t>(monos.size()), 2, F2, table,
                                        static_cast<uint32_t>(points.size()), 1, true);
  auto plain = detail::exhaustive_scan(static_cast<uint32_t>(monos.size()), 2, F2, table,
                                       static_cast<uint32_t>(points.size()), 1, false);
  CHECK(pruned.count == plain.count);
  CHECK(pruned.index == plain.index);
  CHECK(pruned.rows == plain.rows);
}

TEST_CASE("threaded search matches the sequential result") {
  auto F2 = field_create(2, 1);
  CountReport seq = search_max_points(2, 3, 3, F2, SearchMode::exhaustive, 0, kDefaultSeed, 1);
  CountReport par = search_max_points(2, 3, 3, F2, SearchMode::exhaustive, 0, kDefaultSeed, 4);
  CHECK(seq.count == par.count);
  CHECK(seq.witness == par.witness);
}

TEST_CASE("random forms respect the Serre and Schwartz-Zippel bounds") {
  std::mt19937_64 rng(23);
  for (uint64_t q : {2, 3}) {
    auto F = field_from_q(q);
    for (uint32_t m : {2, 3}) {
      auto pts = enumerate_projective(m, F);
      for (uint32_t d = 1; d <= q + 1; ++d) {
        auto lam = enumerate_lambda(d, m);
        for (int trial = 0; trial < 40; ++trial) {
          HomogPoly f = make_homog(m, d, F);
          for (const auto& e : lam) {
            uint32_t c = static_cast<uint32_t>(rng() % q);
            if (c) f.terms.emplace(e, FieldElement{c});
          }
          if (f.is_zero()) continue;
          uint64_t z = count_projective_zeros({f}, m, F);
          CHECK(BigInt(z) <= BigInt(d) * ipow(BigInt(q), m - 1) + p_count(static_cast<int64_t>(m) - 2, q));
        }
      }
      // affine bound for d <= q
      for (uint32_t d = 1; d <= q; ++d) {
        for (int trial = 0; trial < 20; ++trial) {
          Poly f = make_poly(m, F);
          for (uint32_t dd = 1; dd <= d; ++dd) {
            for (const auto& e : enumerate_lambda(dd, m - 1)) {
              uint32_t c = static_cast<uint32_t>(rng() % q);
              if (c) poly_add_term(f, e, FieldElement{c}, F);
            }
          }
          uint32_t c0 = static_cast<uint32_t>(rng() % q);
          if (c0) poly_add_term(f, Exps(m, 0), FieldElement{c0}, F);
          if (f.is_zero() || f.degree() == 0) continue;
          uint64_t z = count_affine_zeros(f, m, F);
          CHECK(BigInt(z) <= BigInt(f.degree()) * ipow(BigInt(q), m - 1));
        }
      }
    }
  }
}
