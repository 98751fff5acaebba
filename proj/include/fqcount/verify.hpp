#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fqcount/bounds.hpp"
#include "fqcount/codes.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/poly.hpp"
#include "fqcount/projgeom.hpp"
#include "fqcount/varieties.hpp"

namespace fqcount {

enum class Suite { fast, full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = true;
  std::string detail;  // expected-vs-observed diff on failure
  double ms = 0.0;
};

namespace verify_detail {

class Check {
 public:
  explicit Check(std::string name) : name_(std::move(name)) {}

  // Records a single comparison; keeps the first failure's diff.
  template <typename A, typename B>
  void expect_eq(const A& expected, const B& observed, const std::string& what) {
    ++total_;
    if (!(BigInt(expected) == BigInt(observed))) record_fail(what, BigInt(expected).str(), BigInt(observed).str());
  }

  void expect(bool cond, const std::string& what) {
    ++total_;
    if (!cond) record_fail(what, "true", "false");
  }

  CheckResult finish(int id, double ms) {
    CheckResult r;
    r.id = id;
    r.name = name_;
    r.pass = failures_ == 0;
    r.ms = ms;
    if (r.pass) {
      r.detail = std::to_string(total_) + " comparisons";
    } else {
      r.detail = first_failure_ + " (" + std::to_string(failures_) + "/" + std::to_string(total_) + " failed)";
    }
    return r;
  }

 private:
  void record_fail(const std::string& what, const std::string& expected, const std::string& observed) {
    ++failures_;
    if (first_failure_.empty())
      first_failure_ = what + ": expected " + expected + ", observed " + observed;
  }

  std::string name_;
  uint64_t total_ = 0;
  uint64_t failures_ = 0;
  std::string first_failure_;
};

inline std::string triple(uint64_t q, uint32_t m, uint32_t d) {
  return "(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ",d=" + std::to_string(d) + ")";
}

}  // namespace verify_detail

// 1. Exhaustive Serre maximum: max |V(F)| over all nonzero degree-d forms
//    equals d q^{m-1} + p_{m-2} on the test grid.
inline verify_detail::Check check_serre_max(uint32_t threads) {
  verify_detail::Check c("serre-maximum-exhaustive");
  struct Row {
    uint64_t q;
    uint32_t m, d;
  };
  for (Row row : {Row{2, 2, 2}, Row{2, 2, 3}, Row{2, 3, 2}, Row{3, 2, 2}, Row{3, 2, 3}, Row{3, 2, 4}}) {
    FieldSpec F = field_from_q(row.q);
    CountReport rep = search_max_points(row.d, row.m, 1, F, SearchMode::exhaustive, 0, kDefaultSeed, threads);
    c.expect_eq(serre_bound(row.d, row.m, row.q).value, rep.count,
                "max|V(F)| " + verify_detail::triple(row.q, row.m, row.d));
  }
  return c;
}

// 2. The extremal families attain the affine and projective bounds exactly.
inline verify_detail::Check check_extremal_constructions() {
  verify_detail::Check c("extremal-constructions");
  for (uint64_t q : {2, 3, 4}) {
    FieldSpec F = field_from_q(q);
    for (uint32_t m : {1, 2, 3}) {
      for (uint32_t d = 1; d <= q + 1; ++d) {
        BigInt expected = BigInt(d) * ipow(BigInt(q), m - 1) + p_count(static_cast<int64_t>(m) - 2, q);
        uint64_t got = count_projective_zeros({construct_G_projective(d, m, F)}, m, F);
        c.expect_eq(expected, got, "|V(G_d)| " + verify_detail::triple(q, m, d));
      }
      for (uint32_t d = 1; d <= q; ++d) {
        BigInt expected = BigInt(d) * ipow(BigInt(q), m - 1);
        uint64_t got = count_affine_zeros(construct_g_affine(d, m, F), m, F);
        c.expect_eq(expected, got, "|Z(g_d)| " + verify_detail::triple(q, m, d));
      }
    }
  }
  return c;
}

// 3. Quadric attainment for small r: |V(Q_1..Q_r)| = p_{m-1} + floor(q^{m-r})
//    and the TB and Zanella formulas both hit that value.
inline verify_detail::Check check_quadric_attainment() {
  verify_detail::Check c("quadric-family-attainment");
  for (uint32_t m : {2, 3, 4}) {
    for (uint64_t q : {2, 3, 4}) {
      FieldSpec F = field_from_q(q);
      for (uint32_t r = 1; r <= m + 1; ++r) {
        BigInt expected = p_count(static_cast<int64_t>(m) - 1, q) + floor_pow(q, static_cast<int64_t>(m) - r);
        uint64_t got = count_projective_zeros(construct_quadric_family(m, r, F), m, F);
        std::string at = "(m=" + std::to_string(m) + ",r=" + std::to_string(r) + ",q=" + std::to_string(q) + ")";
        c.expect_eq(expected, got, "|V(Q_1..Q_r)| " + at);
        c.expect_eq(expected, tb_bound(2, m, r, q).value, "T_r " + at);
        c.expect_eq(expected, zanella_quadric_bound(m, r, q).value, "Z_r " + at);
      }
    }
  }
  return c;
}

// 4. Dropped-monomial tail: counts 0, 1, 2, q+1, q+2 for s = 0..4, matching
//    both formulas at r = delta_m - s.
inline verify_detail::Check check_dropped_monomials() {
  verify_detail::Check c("dropped-monomial-tail");
  for (uint32_t m : {2, 3}) {
    for (uint64_t q : {2, 3}) {
      FieldSpec F = field_from_q(q);
      for (uint32_t s = 0; s <= 4; ++s) {
        uint64_t expected = (s == 0) ? 0 : (s == 1) ? 1 : (s == 2) ? 2 : (s == 3) ? q + 1 : q + 2;
        auto fam = construct_dropped_monomial_family(m, s, F);
        std::string at = "(m=" + std::to_string(m) + ",q=" + std::to_string(q) + ",s=" + std::to_string(s) + ")";
        c.expect_eq(expected, count_projective_zeros(fam, m, F), "|V| " + at);
        uint64_t r = static_cast<uint64_t>(delta(m)) - s;
        c.expect_eq(expected, tb_bound(2, m, r, q).value, "T_r " + at);
        c.expect_eq(expected, zanella_quadric_bound(m, r, q).value, "Z_r " + at);
      }
    }
  }
  return c;
}

// 5. Counterexample census: the r = 5 gap in P^3 and the Cor-3.4 failing-row
//    count and gap closed form for m = 3..8.
inline verify_detail::Check check_census() {
  verify_detail::Check c("tb-vs-zanella-census");
  for (uint64_t q : {2, 3, 4, 5}) {
    c.expect_eq(BigInt(2) * (1 + q), tb_bound(2, 3, 5, q).value, "T_5 (q=" + std::to_string(q) + ")");
    c.expect_eq(BigInt(1) + 2 * q, zanella_quadric_bound(3, 5, q).value, "Z_5 (q=" + std::to_string(q) + ")");
    c.expect_eq(BigInt(1), tb_bound(2, 3, 5, q).value - zanella_quadric_bound(3, 5, q).value,
                "T_5 - Z_5 (q=" + std::to_string(q) + ")");
  }
  for (uint32_t m = 3; m <= 8; ++m) {
    BigInt quota = binomial(m - 1, 2);
    for (uint64_t q : {2, 3, 4}) {
      auto rows = tb_zanella_census(m, q);
      std::string at = "(m=" + std::to_string(m) + ",q=" + std::to_string(q) + ")";
      c.expect(BigInt(census_failing_rows(rows)) >= quota, "failing rows >= C(m-1,2) " + at);
      for (const auto& row : rows) {
        if (row.gap <= 0) continue;
        bool in_cor34 = row.k >= 0 && row.k < static_cast<int64_t>(m) - 1 && row.i >= 1 && row.i <= row.k;
        c.expect(in_cor34, "failing row r=" + std::to_string(row.r) + " lies in the Cor-3.4 range " + at);
        BigInt closed = p_count(row.k - row.i, q) - p_count(2 * row.k - static_cast<int64_t>(m) - row.i + 1, q);
        c.expect_eq(closed, row.gap, "gap closed form r=" + std::to_string(row.r) + " " + at);
      }
    }
  }
  return c;
}

// 6. Soundness at the counterexample point: randomized search over 5-tuples
//    of independent quadrics in P^3(F_2) stays within the Zanella bound and
//    reaches the seeded constructions. The full suite adds the exhaustive
//    sweep of all ~1.09e8 subspaces.
inline verify_detail::Check check_counterexample_search(uint64_t seed) {
  verify_detail::Check c("zanella-soundness-randomized");
  FieldSpec F = field_create(2, 1);
  CountReport rep = search_max_points(2, 3, 5, F, SearchMode::randomized, 10000, seed);
  c.expect(rep.count <= 5, "randomized best <= Z_5 = 5");
  c.expect(rep.count >= 4, "randomized best >= best seeded construction");
  c.expect_eq(rep.count, count_projective_zeros(rep.witness, 3, F), "witness reproduces the reported count");
  return c;
}

inline verify_detail::Check check_counterexample_exhaustive(uint32_t threads) {
  verify_detail::Check c("zanella-soundness-exhaustive");
  FieldSpec F = field_create(2, 1);
  CountReport rep = search_max_points(2, 3, 5, F, SearchMode::exhaustive, 0, kDefaultSeed, threads);
  c.expect(rep.count <= 5, "exhaustive max over all [10,5]_2 subspaces <= 5, observed " + std::to_string(rep.count));
  return c;
}

// 7. PRM weight hierarchy for q=3, m=2, d=2 along all three routes.
inline verify_detail::Check check_prm_hierarchy(uint32_t threads) {
  verify_detail::Check c("prm-weight-hierarchy");
  FieldSpec F = field_create(3, 1);
  LinearCode C = prm_code(2, 2, F);
  const uint64_t expected[6] = {6, 8, 9, 11, 12, 13};
  PartialWeights closed = prm_quadric_closed_forms(2, 3);
  for (uint32_t r = 1; r <= 6; ++r) {
    uint64_t by_search = higher_weight(C, r);
    std::string at = " (r=" + std::to_string(r) + ")";
    c.expect_eq(expected[r - 1], by_search, "subspace-search weight" + at);
    c.expect_eq(expected[r - 1], closed.by_r.at(r), "closed-form weight" + at);
    c.expect_eq(expected[r - 1], higher_weight_geometric(2, 2, r, F, threads), "geometric weight" + at);
  }
  return c;
}

// 8. Zanella's lemma and the incidence identity on random subsets.
inline verify_detail::Check check_zanella_lemma(uint64_t seed) {
  verify_detail::Check c("zanella-lemma-property");
  std::mt19937_64 rng(seed);
  struct Grid {
    uint32_t m;
    uint64_t q;
  };
  for (Grid g : {Grid{2, 2}, Grid{2, 3}, Grid{3, 2}}) {
    FieldSpec F = field_from_q(g.q);
    auto points = enumerate_projective(g.m, F);
    auto hyps = enumerate_hyperplanes(g.m, F);
    BigInt pm1 = p_count(static_cast<int64_t>(g.m) - 1, g.q);
    auto run = [&](const std::vector<ProjPoint>& X, const std::string& what) {
      SectionMax sm = max_hyperplane_section(X, g.m, F);
      c.expect(BigInt(X.size()) <= zanella_set_bound(sm.a, g.q), what + ": |X| <= aq+1");
      BigInt incidences = 0;
      for (const auto& H : hyps) {
        for (const auto& P : X)
          if (incident(P, H, F)) ++incidences;
      }
      c.expect_eq(BigInt(X.size()) * pm1, incidences, what + ": incidence identity");
    };
    std::string at = "(m=" + std::to_string(g.m) + ",q=" + std::to_string(g.q) + ")";
    for (uint32_t trial = 0; trial < 1000; ++trial) {
      std::vector<ProjPoint> X;
      for (const auto& P : points)
        if (rng() & 1) X.push_back(P);
      run(X, at);
    }
    for (const auto& P : points) run({P}, at + " singleton");
    run(points, at + " full space");
  }
  return c;
}

// 9. Complete-intersection comparison: C_r(d) <= T_r(d) under d^r <= q+1, and
//    the non-equidimensional Couvreur value on the Q-family component data
//    against the exact count.
inline verify_detail::Check check_ci_comparison() {
  verify_detail::Check c("ci-bound-comparison");
  for (uint32_t d : {2, 3}) {
    for (uint32_t m = 2; m <= 6; ++m) {
      for (uint32_t r = 2; r <= m; ++r) {
        BigInt degree = ipow(BigInt(d), r);
        // three smallest prime powers q with d^r <= q+1
        int found = 0;
        for (uint64_t q = 2; found < 3 && q <= 4096; ++q) {
          if (!prime_power_decompose(q)) continue;
          if (degree > BigInt(q) + 1) continue;
          ++found;
          CiComparison cmp = ci_compare(d, m, r, q);
          std::string at = "(d=" + std::to_string(d) + ",m=" + std::to_string(m) + ",r=" + std::to_string(r) +
                           ",q=" + std::to_string(q) + ")";
          c.expect(cmp.couvreur.value <= cmp.tb.value, "C_r(d) <= T_r(d) " + at);
          c.expect(tb_lower_bound_ci(d, m, r, q) <= cmp.tb.value, "Eq-(11) lower bound <= T_r(d) " + at);
        }
      }
    }
  }
  for (uint32_t m = 2; m <= 6; ++m) {
    for (uint64_t q : {2, 3, 4}) {
      for (uint32_t r = 2; r <= m; ++r) {
        BoundResult cb = couvreur_bound(m, q, {{static_cast<int64_t>(m) - 1, 1}, {static_cast<int64_t>(m) - r, 1}});
        BigInt series = 0;  // sum_{j=m-2r+1}^{m-r} q^j, negative exponents dropped
        for (int64_t j = std::max<int64_t>(0, static_cast<int64_t>(m) - 2 * r + 1);
             j <= static_cast<int64_t>(m) - r; ++j)
          series += ipow(BigInt(q), static_cast<uint64_t>(j));
        BigInt pm1 = p_count(static_cast<int64_t>(m) - 1, q);
        BigInt exact = pm1 + floor_pow(q, static_cast<int64_t>(m) - r);
        std::string at = "(m=" + std::to_string(m) + ",r=" + std::to_string(r) + ",q=" + std::to_string(q) + ")";
        c.expect_eq(pm1 + series, cb.value, "Couvreur on Q-family components " + at);
        if (r < m)
          c.expect(cb.value > exact, "Couvreur strictly above the exact count " + at);
        else
          c.expect_eq(exact, cb.value, "Couvreur meets the exact count at r=m " + at);
      }
    }
  }
  return c;
}

// 10. Substrate: field axioms, subspace counts against Gaussian binomials,
//     and the Plotkin inequality on the PRM grid.
inline verify_detail::Check check_substrate() {
  verify_detail::Check c("field-and-linear-algebra-substrate");
  for (uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
    FieldSpec F = field_from_q(q);
    auto elems = enumerate_elements(F);
    bool ok = true;
    for (auto a : elems) {
      for (auto b : elems) {
        if (F.add(a, b) != F.add(b, a) || F.mul(a, b) != F.mul(b, a)) ok = false;
        for (auto z : elems) {
          if (F.add(F.add(a, b), z) != F.add(a, F.add(b, z))) ok = false;
          if (F.mul(F.mul(a, b), z) != F.mul(a, F.mul(b, z))) ok = false;
          if (F.mul(a, F.add(b, z)) != F.add(F.mul(a, b), F.mul(a, z))) ok = false;
        }
      }
      if (a.v != 0 && F.mul(a, F.inv(a)) != F.one()) ok = false;
    }
    c.expect(ok, "field axioms hold exhaustively in F_" + std::to_string(q));
  }
  for (uint64_t q : {2, 3}) {
    FieldSpec F = field_from_q(q);
    for (uint32_t k = 1; k <= 6; ++k) {
      for (uint32_t r = 1; r <= k; ++r) {
        SubspaceStream stream(k, r, F);
        uint64_t n = 0;
        while (stream.next()) ++n;
        c.expect_eq(gaussian_binomial(k, r, q), n,
                    "subspace count [" + std::to_string(k) + "," + std::to_string(r) + "]_" + std::to_string(q));
      }
    }
  }
  struct Grid {
    uint32_t d, m;
    uint64_t q;
  };
  for (Grid g : {Grid{1, 2, 2}, Grid{1, 2, 3}, Grid{1, 2, 4}, Grid{1, 3, 2}, Grid{2, 2, 2}, Grid{2, 2, 3},
                 Grid{2, 2, 4}, Grid{2, 3, 2}, Grid{2, 3, 3}}) {
    FieldSpec F = field_from_q(g.q);
    PlotkinReport rep = plotkin_check(prm_code(g.d, g.m, F));
    std::string at = verify_detail::triple(g.q, g.m, g.d);
    c.expect(rep.plotkin_holds, "Plotkin inequality " + at);
    c.expect(rep.section_chain_holds, "n <= aq+1 chain " + at);
  }
  return c;
}

inline std::vector<CheckResult> run_acceptance(Suite suite, uint64_t seed = kDefaultSeed,
                                               uint32_t threads = 1) {
  std::vector<CheckResult> out;
  int id = 0;
  auto run = [&](auto&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    verify_detail::Check c = fn();
    auto t1 = std::chrono::steady_clock::now();
    out.push_back(c.finish(++id, std::chrono::duration<double, std::milli>(t1 - t0).count()));
  };
  run([&] { return check_serre_max(threads); });
  run([&] { return check_extremal_constructions(); });
  run([&] { return check_quadric_attainment(); });
  run([&] { return check_dropped_monomials(); });
  run([&] { return check_census(); });
  run([&] { return check_counterexample_search(seed); });
  run([&] { return check_prm_hierarchy(threads); });
  run([&] { return check_zanella_lemma(seed); });
  run([&] { return check_ci_comparison(); });
  run([&] { return check_substrate(); });
  if (suite == Suite::full) {
    run([&] { return check_counterexample_exhaustive(threads); });
  }
  return out;
}

inline std::string format_check_line(const CheckResult& r) {
  std::ostringstream os;
  os << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << " ("
     << static_cast<uint64_t>(r.ms) << " ms)";
  return os.str();
}

}  // namespace fqcount
