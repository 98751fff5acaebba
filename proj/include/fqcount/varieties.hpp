#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <queue>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/intmath.hpp"
#include "fqcount/poly.hpp"
#include "fqcount/projgeom.hpp"

namespace fqcount {

// Default seed for randomized search; fixed so runs are reproducible unless
// a seed is given explicitly.
inline constexpr uint64_t kDefaultSeed = 1729;

enum class SearchMode { exhaustive, randomized };

inline const char* to_string(SearchMode m) {
  return m == SearchMode::exhaustive ? "exhaustive" : "randomized";
}

struct CountReport {
  uint64_t count = 0;
  uint32_t d = 0, m = 0, r = 0;
  uint64_t q = 0;
  SearchMode method = SearchMode::exhaustive;
  std::vector<HomogPoly> witness;  // family attaining the reported maximum
  double elapsed_ms = 0.0;
  uint64_t seed = 0;    // randomized mode only
  uint64_t budget = 0;  // randomized mode only
};

// Exact |{P in P^m : F_i(P) = 0 for all i}| by full enumeration. Members may
// have different degrees but must all live in m+1 variables over F.
inline uint64_t count_projective_zeros(const std::vector<HomogPoly>& family, uint32_t m,
                                       const FieldSpec& F) {
  if (family.empty()) fail(Errc::empty_input, "no polynomials");
  for (const auto& f : family) {
    if (f.m != m) fail(Errc::arity_mismatch, "family member has wrong ambient dimension");
    if (f.field_tag != F.tag()) fail(Errc::field_mismatch, "family member from a different field");
  }
  uint64_t count = 0;
  for (const auto& P : enumerate_projective(m, F)) {
    bool zero = true;
    for (const auto& f : family) {
      if (evaluate(f, P, F).v != 0) {
        zero = false;
        break;
      }
    }
    if (zero) ++count;
  }
  return count;
}

inline uint64_t count_affine_zeros(const Poly& f, uint32_t m, const FieldSpec& F) {
  if (f.is_zero()) fail(Errc::zero_polynomial, "affine count of the zero polynomial");
  if (f.nvars != m) fail(Errc::arity_mismatch, "polynomial has wrong variable count");
  uint64_t count = 0;
  for (const auto& t : enumerate_affine(m, F)) {
    if (evaluate(f, std::span<const FieldElement>(t), F).v == 0) ++count;
  }
  return count;
}

// g_d(y_0, ..., y_{m-1}) = (y_0 - a_1) ... (y_0 - a_d) with a_1, ..., a_d the
// first d elements of the field enumeration; attains the affine bound d q^{m-1}.
inline Poly construct_g_affine(uint32_t d, uint32_t m, const FieldSpec& F) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  if (d < 1) fail(Errc::out_of_range, "d must be >= 1");
  if (d > F.q) fail(Errc::degree_exceeds_q, "construct_g_affine requires d <= q");
  Poly out = make_poly(m, F);
  Exps y0(m, 0);
  y0[0] = 1;
  Exps cst(m, 0);
  poly_add_term(out, cst, F.one(), F);  // start from 1, multiply linear factors in
  for (uint32_t i = 0; i < d; ++i) {
    Poly factor = make_poly(m, F);
    poly_add_term(factor, y0, F.one(), F);
    poly_add_term(factor, cst, F.neg(FieldElement{i}), F);
    out = poly_mul(out, factor, F);
  }
  return out;
}

// G_d(x_0, ..., x_m) = (x_1 - a_1 x_0) ... (x_1 - a_d x_0) for d <= q, and
// G_{q+1} = x_0 G_q; has exactly d q^{m-1} + p_{m-2} projective zeros.
inline HomogPoly construct_G_projective(uint32_t d, uint32_t m, const FieldSpec& F) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  if (d < 1) fail(Errc::out_of_range, "d must be >= 1");
  if (d > F.q + 1) fail(Errc::degree_exceeds_q_plus_1, "construct_G_projective requires d <= q+1");
  Poly out = make_poly(m + 1, F);
  Exps x0(m + 1, 0), x1(m + 1, 0);
  x0[0] = 1;
  x1[1] = 1;
  Exps cst(m + 1, 0);
  poly_add_term(out, cst, F.one(), F);
  uint32_t linear_factors = std::min(d, F.q);
  for (uint32_t i = 0; i < linear_factors; ++i) {
    Poly factor = make_poly(m + 1, F);
    poly_add_term(factor, x1, F.one(), F);
    poly_add_term(factor, x0, F.neg(FieldElement{i}), F);
    out = poly_mul(out, factor, F);
  }
  if (d == F.q + 1) {
    Poly factor = make_poly(m + 1, F);
    poly_add_term(factor, x0, F.one(), F);
    out = poly_mul(out, factor, F);
  }
  return to_homogeneous(out, m, d, F);
}

// Q_i = x_0 x_i for i = 1..min(r, m), plus Q_{m+1} = x_0^2 when r = m+1.
inline std::vector<HomogPoly> construct_quadric_family(uint32_t m, uint32_t r, const FieldSpec& F) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  if (r < 1 || r > m + 1) fail(Errc::out_of_range, "quadric family requires 1 <= r <= m+1");
  std::vector<HomogPoly> out;
  out.reserve(r);
  for (uint32_t i = 1; i <= std::min(r, m); ++i) {
    HomogPoly f = make_homog(m, 2, F);
    Exps e(m + 1, 0);
    e[0] = 1;
    e[i] = 1;
    homog_add_term(f, e, F.one(), F);
    out.push_back(std::move(f));
  }
  if (r == m + 1) {
    HomogPoly f = make_homog(m, 2, F);
    Exps e(m + 1, 0);
    e[0] = 2;
    homog_add_term(f, e, F.one(), F);
    out.push_back(std::move(f));
  }
  return out;
}

// All degree-2 monomials minus the first s of x_m^2, x_{m-1}^2, x_{m-1}x_m,
// x_{m-2}^2; sizes delta_m - s, zero counts 0, 1, 2, q+1, q+2 for s = 0..4.
inline std::vector<HomogPoly> construct_dropped_monomial_family(uint32_t m, uint32_t s,
                                                                const FieldSpec& F) {
  if (m < 2) fail(Errc::out_of_range, "dropped-monomial family requires m >= 2");
  if (s > 4) fail(Errc::out_of_range, "s must be in 0..4");
  std::vector<Exps> dropped;
  auto sq = [&](uint32_t i) {
    Exps e(m + 1, 0);
    e[i] = 2;
    return e;
  };
  auto prod = [&](uint32_t i, uint32_t j) {
    Exps e(m + 1, 0);
    e[i] = 1;
    e[j] = 1;
    return e;
  };
  dropped.push_back(sq(m));
  dropped.push_back(sq(m - 1));
  dropped.push_back(prod(m - 1, m));
  dropped.push_back(sq(m - 2));
  dropped.resize(s);

  std::vector<HomogPoly> out;
  for (const Exps& e : enumerate_lambda(2, m)) {
    if (std::find(dropped.begin(), dropped.end(), e) != dropped.end()) continue;
    HomogPoly f = make_homog(m, 2, F);
    homog_add_term(f, e, F.one(), F);
    out.push_back(std::move(f));
  }
  return out;
}

namespace detail {

// Counts common zeros of the r x nmono coefficient matrix against the
// evaluation table, aborting once the count can no longer exceed `prune_at`.
// prune_at = 0 never triggers, so it doubles as the no-pruning mode. Entries
// of `rows` are packed field values.
inline uint32_t count_common_zeros(const uint32_t* rows, uint32_t r, uint32_t nmono,
                                   const std::vector<uint32_t>& table, uint32_t npts,
                                   const FieldSpec& F, uint32_t prune_at) {
  uint32_t count = 0;
  const bool prime_field = (F.k == 1);
  for (uint32_t j = 0; j < npts; ++j) {
    if (prune_at > 0 && count + (npts - j) <= prune_at) return count;  // cannot beat prune_at
    const uint32_t* pt = table.data() + size_t{j} * nmono;
    bool zero = true;
    if (prime_field) {
      for (uint32_t i = 0; i < r && zero; ++i) {
        const uint32_t* row = rows + size_t{i} * nmono;
        uint64_t acc = 0;
        for (uint32_t c = 0; c < nmono; ++c) acc += uint64_t{row[c]} * pt[c];
        zero = (acc % F.q) == 0;
      }
    } else {
      for (uint32_t i = 0; i < r && zero; ++i) {
        const uint32_t* row = rows + size_t{i} * nmono;
        FieldElement acc = F.zero();
        for (uint32_t c = 0; c < nmono; ++c)
          acc = F.add(acc, F.mul(FieldElement{row[c]}, FieldElement{pt[c]}));
        zero = acc.v == 0;
      }
    }
    if (zero) ++count;
  }
  return count;
}

struct SearchBest {
  uint32_t count = 0;
  uint64_t index = UINT64_MAX;  // canonical subspace index; ties keep the earliest
  std::vector<uint32_t> rows;
  bool valid = false;

  void offer(uint32_t c, uint64_t idx, const uint32_t* mat, size_t len) {
    if (!valid || c > count || (c == count && idx < index)) {
      valid = true;
      count = c;
      index = idx;
      rows.assign(mat, mat + len);
    }
  }
};

struct SearchChunk {
  uint64_t start_index = 0;
  uint32_t n = 0;
  std::vector<uint32_t> data;  // n matrices of r*nmono packed values
};

// Exhaustive scan over the canonical subspace stream, optionally partitioned
// into chunks processed by worker threads. The result is schedule-independent:
// each chunk reports its own maximum with the earliest attaining index, and
// the merge picks the largest count with the smallest index.
inline SearchBest exhaustive_scan(uint32_t nmono, uint32_t r, const FieldSpec& F,
                                  const std::vector<uint32_t>& table, uint32_t npts,
                                  uint32_t threads, bool prune) {
  SubspaceStream stream(nmono, r, F);
  const size_t mat_len = size_t{r} * nmono;

  if (threads <= 1) {
    SearchBest best;
    while (const SubspaceBasis* b = stream.next()) {
      uint32_t limit = (prune && best.valid) ? best.count : 0;
      uint32_t c = count_common_zeros(b->a.data(), r, nmono, table, npts, F, limit);
      if (!best.valid || c > best.count) best.offer(c, stream.index(), b->a.data(), mat_len);
    }
    return best;
  }

  constexpr uint32_t kChunk = 4096;
  std::mutex mu;
  std::condition_variable cv_put, cv_get;
  std::queue<SearchChunk> queue;
  bool done = false;
  const size_t max_queue = 2 * threads + 2;

  std::vector<SearchBest> results(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (uint32_t t = 0; t < threads; ++t) {
    workers.emplace_back([&, t]() {
      SearchBest local;
      for (;;) {
        SearchChunk chunk;
        {
          std::unique_lock<std::mutex> lk(mu);
          cv_get.wait(lk, [&] { return done || !queue.empty(); });
          if (queue.empty()) break;
          chunk = std::move(queue.front());
          queue.pop();
          cv_put.notify_one();
        }
        for (uint32_t i = 0; i < chunk.n; ++i) {
          const uint32_t* mat = chunk.data.data() + size_t{i} * mat_len;
          uint32_t limit = (prune && local.valid) ? local.count : 0;
          uint32_t c = count_common_zeros(mat, r, nmono, table, npts, F, limit);
          if (!local.valid || c > local.count) local.offer(c, chunk.start_index + i, mat, mat_len);
        }
      }
      results[t] = std::move(local);
    });
  }

  SearchChunk chunk;
  chunk.data.reserve(size_t{kChunk} * mat_len);
  auto flush = [&](uint64_t start) {
    std::unique_lock<std::mutex> lk(mu);
    cv_put.wait(lk, [&] { return queue.size() < max_queue; });
    queue.push(std::move(chunk));
    cv_get.notify_one();
    chunk = SearchChunk{};
    chunk.data.reserve(size_t{kChunk} * mat_len);
    chunk.start_index = start;
  };
  while (const SubspaceBasis* b = stream.next()) {
    if (chunk.n == 0) chunk.start_index = stream.index();
    chunk.data.insert(chunk.data.end(), b->a.begin(), b->a.end());
    ++chunk.n;
    if (chunk.n == kChunk) flush(stream.index() + 1);
  }
  {
    std::unique_lock<std::mutex> lk(mu);
    if (chunk.n > 0) queue.push(std::move(chunk));
    done = true;
  }
  cv_get.notify_all();
  for (auto& w : workers) w.join();

  SearchBest best;
  for (auto& loc : results) {
    if (!loc.valid) continue;
    best.offer(loc.count, loc.index, loc.rows.data(), loc.rows.size());
  }
  return best;
}

}  // namespace detail

// Paper constructions applicable to (d, m, r), used both as search seeds and
// as lower-bound witnesses. Families larger than r are truncated to their
// first r members (prefixes of an independent family stay independent).
inline std::vector<std::vector<HomogPoly>> seed_families(uint32_t d, uint32_t m, uint32_t r,
                                                         const FieldSpec& F) {
  std::vector<std::vector<HomogPoly>> seeds;
  if (d == 1 && r <= m + 1) {
    std::vector<HomogPoly> coords;
    for (uint32_t i = 0; i < r; ++i) {
      HomogPoly f = make_homog(m, 1, F);
      Exps e(m + 1, 0);
      e[i] = 1;
      homog_add_term(f, e, F.one(), F);
      coords.push_back(std::move(f));
    }
    seeds.push_back(std::move(coords));
  }
  if (r == 1 && d <= F.q + 1) {
    seeds.push_back({construct_G_projective(d, m, F)});
  }
  if (d == 2) {
    if (r <= m + 1) seeds.push_back(construct_quadric_family(m, r, F));
    if (m >= 2) {
      for (uint32_t s = 0; s <= 4; ++s) {
        auto fam = construct_dropped_monomial_family(m, s, F);
        if (fam.size() < r) continue;
        fam.resize(r);
        seeds.push_back(std::move(fam));
      }
    }
  }
  return seeds;
}

// Maximum number of common zeros over r-dimensional spaces of degree-d forms.
//
// exhaustive: exact maximum over every r-dimensional subspace of the
// coefficient space, one canonical basis per subspace (the zero count depends
// only on the span). randomized: best over `budget` uniformly random
// independent families plus the applicable paper constructions as seeds.
inline CountReport search_max_points(uint32_t d, uint32_t m, uint32_t r, const FieldSpec& F,
                                     SearchMode mode, uint64_t budget = 0,
                                     uint64_t seed = kDefaultSeed, uint32_t threads = 1) {
  auto t0 = std::chrono::steady_clock::now();
  if (m < 1 || d < 1) fail(Errc::out_of_range, "search requires d >= 1 and m >= 1");
  uint64_t nmono = to_u64(lambda_size(d, m), "monomial count");
  if (nmono > kMonomialCap) fail(Errc::too_large, "Lambda(d,m) exceeds the monomial cap");
  if (r < 1 || r > nmono) fail(Errc::out_of_range, "r must satisfy 1 <= r <= C(m+d,m)");

  auto points = enumerate_projective(m, F);
  auto monomials = enumerate_lambda(d, m);
  auto table = evaluation_table(monomials, points, F);
  const uint32_t npts = static_cast<uint32_t>(points.size());
  const uint32_t nm = static_cast<uint32_t>(nmono);

  CountReport report;
  report.d = d;
  report.m = m;
  report.r = r;
  report.q = F.q;
  report.method = mode;

  if (mode == SearchMode::exhaustive) {
    detail::SearchBest best =
        detail::exhaustive_scan(nm, r, F, table, npts, threads == 0 ? 1 : threads, true);
    report.count = best.count;
    for (uint32_t i = 0; i < r; ++i) {
      std::vector<FieldElement> coeffs(nm);
      for (uint32_t c = 0; c < nm; ++c) coeffs[c] = FieldElement{best.rows[size_t{i} * nm + c]};
      report.witness.push_back(from_coeff_vector(coeffs, d, m, F));
    }
  } else {
    if (budget < 1) fail(Errc::bad_budget, "randomized search requires budget >= 1");
    report.seed = seed;
    report.budget = budget;

    uint64_t best_count = 0;
    std::vector<std::vector<FieldElement>> best_rows;
    bool have_best = false;
    std::vector<uint32_t> packed(size_t{r} * nm);
    auto consider = [&](const std::vector<std::vector<FieldElement>>& fam_rows) {
      for (uint32_t i = 0; i < r; ++i)
        for (uint32_t c = 0; c < nm; ++c) packed[size_t{i} * nm + c] = fam_rows[i][c].v;
      uint64_t c = detail::count_common_zeros(packed.data(), r, nm, table, npts, F, 0);
      if (!have_best || c > best_count) {
        have_best = true;
        best_count = c;
        best_rows = fam_rows;
      }
    };
    for (const auto& fam : seed_families(d, m, r, F)) {
      std::vector<std::vector<FieldElement>> fam_rows;
      fam_rows.reserve(r);
      for (const auto& f : fam) fam_rows.push_back(to_coeff_vector(f));
      consider(fam_rows);
    }

    // mt19937_64 with plain modulo draws: the fixed, documented PRNG contract
    // behind --seed.
    std::mt19937_64 rng(seed);
    std::vector<std::vector<FieldElement>> rows(r, std::vector<FieldElement>(nm));
    for (uint64_t trial = 0; trial < budget; ++trial) {
      uint64_t attempts = 0;
      for (;;) {
        for (auto& row : rows)
          for (auto& c : row) c = FieldElement{static_cast<uint32_t>(rng() % F.q)};
        if (rank_of(rows, F) == r) break;
        if (++attempts > 10000) fail(Errc::internal, "rejection sampling failed to find an independent family");
      }
      consider(rows);
    }
    report.count = best_count;
    for (const auto& row : best_rows) report.witness.push_back(from_coeff_vector(row, d, m, F));
  }

  auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

}  // namespace fqcount
