#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/intmath.hpp"
#include "fqcount/poly.hpp"
#include "fqcount/projgeom.hpp"
#include "fqcount/varieties.hpp"

namespace fqcount {

// A q-ary linear [n, k] code given by a full-rank generator matrix; rows are
// basis codewords. For PRM codes, columns follow the projgeom point order.
struct LinearCode {
  FieldSpec field;
  uint64_t n = 0;
  uint64_t k = 0;
  std::vector<std::vector<FieldElement>> gen;
  std::string label;
};

enum class WeightMethod { subspace_search, geometric, closed_form };

inline const char* to_string(WeightMethod m) {
  switch (m) {
    case WeightMethod::subspace_search: return "subspace_search";
    case WeightMethod::geometric: return "geometric";
    case WeightMethod::closed_form: return "closed_form";
  }
  return "unknown";
}

struct WeightHierarchy {
  std::string label;
  WeightMethod method = WeightMethod::subspace_search;
  std::vector<uint64_t> weights;  // d_1 <= ... (strictly increasing for linear codes)
};

// Values of d_r at the indices a closed form determines.
struct PartialWeights {
  std::string label;
  std::map<uint64_t, uint64_t> by_r;
};

// The projective Reed-Muller code PRM_q(d, m): evaluations of the
// descending-lex monomial basis of degree d at the normalized points of
// P^m(F_q). Rows of the raw evaluation matrix are reduced to a row basis
// when dependent (which happens only for d >= q).
inline LinearCode prm_code(uint32_t d, uint32_t m, const FieldSpec& F) {
  auto points = enumerate_projective(m, F);
  auto monomials = enumerate_lambda(d, m);
  auto table = evaluation_table(monomials, points, F);
  const size_t n = points.size();

  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(monomials.size());
  for (size_t i = 0; i < monomials.size(); ++i) {
    std::vector<FieldElement> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = FieldElement{table[j * monomials.size() + i]};
    rows.push_back(std::move(row));
  }

  // Greedy row basis: keep each monomial row that grows the rank, so the
  // generator rows remain actual monomial evaluations. A pivot-indexed
  // echelon shadow makes each membership test O(rank * n).
  std::vector<std::vector<FieldElement>> basis;
  std::map<size_t, std::vector<FieldElement>> echelon;  // pivot column -> normalized row
  for (auto& row : rows) {
    std::vector<FieldElement> red = row;
    bool independent = false;
    for (size_t c = 0; c < n; ++c) {
      if (red[c].v == 0) continue;
      auto it = echelon.find(c);
      if (it == echelon.end()) {
        FieldElement s = F.inv(red[c]);
        for (auto& x : red) x = F.mul(x, s);
        echelon.emplace(c, std::move(red));
        independent = true;
        break;
      }
      FieldElement f = red[c];
      for (size_t j = c; j < n; ++j) red[j] = F.sub(red[j], F.mul(f, it->second[j]));
    }
    if (independent) basis.push_back(std::move(row));
  }

  if (d < F.q && basis.size() != monomials.size())
    fail(Errc::internal, "PRM rank below C(m+d, m) although d < q");

  LinearCode C;
  C.field = F;
  C.n = n;
  C.k = basis.size();
  C.gen = std::move(basis);
  C.label = "PRM(q=" + std::to_string(F.q) + ",d=" + std::to_string(d) + ",m=" + std::to_string(m) + ")";
  return C;
}

// Support weight of the span of the given codewords: the number of positions
// where some generator (equivalently, some element of the span) is nonzero.
inline uint64_t support_weight(const std::vector<std::vector<FieldElement>>& generators) {
  if (generators.empty()) return 0;
  size_t n = generators[0].size();
  for (const auto& g : generators)
    if (g.size() != n) fail(Errc::length_mismatch, "codewords have different lengths");
  uint64_t w = 0;
  for (size_t j = 0; j < n; ++j) {
    for (const auto& g : generators) {
      if (g[j].v != 0) {
        ++w;
        break;
      }
    }
  }
  return w;
}

namespace detail {

// Support weight of the subcode spanned by M * gen, scanning columns and
// giving up once the weight reaches `stop_at` (the current minimum cannot be
// improved past it). stop_at = 0 disables early exit.
inline uint64_t subcode_support_weight(const SubspaceBasis& M, const LinearCode& C,
                                       uint64_t stop_at) {
  const FieldSpec& F = C.field;
  const uint32_t r = M.rows;
  const uint32_t k = M.cols;
  uint64_t w = 0;
  for (uint64_t j = 0; j < C.n; ++j) {
    bool nonzero = false;
    for (uint32_t i = 0; i < r && !nonzero; ++i) {
      FieldElement acc = F.zero();
      for (uint32_t t = 0; t < k; ++t) {
        if (M.at(i, t) == 0 || C.gen[t][j].v == 0) continue;
        acc = F.add(acc, F.mul(FieldElement{M.at(i, t)}, C.gen[t][j]));
      }
      nonzero = acc.v != 0;
    }
    if (nonzero) {
      ++w;
      if (stop_at > 0 && w >= stop_at) return w;
    }
  }
  return w;
}

}  // namespace detail

// r-th generalized Hamming weight: the exact minimum support weight over all
// r-dimensional subcodes, via canonical subspace enumeration of the message
// space mapped through the generator matrix.
inline uint64_t higher_weight(const LinearCode& C, uint32_t r) {
  if (r < 1 || r > C.k) fail(Errc::out_of_range, "higher_weight requires 1 <= r <= k");
  SubspaceStream stream(static_cast<uint32_t>(C.k), r, C.field);
  uint64_t best = UINT64_MAX;
  while (const SubspaceBasis* M = stream.next()) {
    uint64_t w = detail::subcode_support_weight(*M, C, best == UINT64_MAX ? 0 : best);
    if (w < best) best = w;
  }
  return best;
}

// The geometric route to the same quantity: d_r = p_m - max |V(F_1..F_r)|,
// valid for d < q; refuses other inputs.
inline uint64_t higher_weight_geometric(uint32_t d, uint32_t m, uint32_t r, const FieldSpec& F,
                                        uint32_t threads = 1) {
  if (d >= F.q) fail(Errc::hypothesis_violated, "geometric identity requires d < q");
  CountReport rep = search_max_points(d, m, r, F, SearchMode::exhaustive, 0, kDefaultSeed, threads);
  uint64_t pm = to_u64(p_count(m, F.q), "p_m");
  return pm - rep.count;
}

// Closed forms for PRM_q(2, m), q > 2: d_r = q^m - floor(q^{m-r}) for
// r = 1..m+1, and the last five weights d_{delta_m - s} = p_m - s for
// s = 0, 1, 2 and p_m - (q + s - 2) for s = 3, 4.
inline PartialWeights prm_quadric_closed_forms(uint32_t m, uint64_t q) {
  if (m < 2) fail(Errc::out_of_range, "prm_quadric_closed_forms requires m >= 2");
  if (q <= 2) fail(Errc::hypothesis_violated, "closed forms require q > 2 (d = 2 < q)");
  PartialWeights out;
  out.label = "PRM(q=" + std::to_string(q) + ",d=2,m=" + std::to_string(m) + ")";
  uint64_t dm = static_cast<uint64_t>(delta(m));
  BigInt qm = ipow(BigInt(q), m);
  for (uint32_t r = 1; r <= m + 1; ++r) {
    BigInt v = qm - floor_pow(q, static_cast<int64_t>(m) - r);
    out.by_r[r] = to_u64(v, "weight");
  }
  BigInt pm = p_count(m, q);
  for (uint32_t s = 0; s <= 4; ++s) {
    uint64_t r = dm - s;
    BigInt v = (s <= 2) ? pm - s : pm - (BigInt(q) + s - 2);
    uint64_t w = to_u64(v, "weight");
    auto it = out.by_r.find(r);
    if (it != out.by_r.end() && it->second != w)
      fail(Errc::internal, "closed forms disagree at overlapping index");
    out.by_r[r] = w;
  }
  return out;
}

struct PlotkinReport {
  uint64_t n = 0;
  uint64_t k = 0;
  uint64_t d1 = 0;
  uint64_t a = 0;           // n - d1, the largest hyperplane section of the point system
  bool plotkin_holds = false;
  bool plotkin_tight = false;
  bool section_chain_holds = false;  // n <= a q + 1
};

// Verifies d1 <= n q^k (q-1) / ((q^k - 1) q) exactly (cross-multiplied in
// integers) together with the derived chain n <= a q + 1, a = n - d1.
inline PlotkinReport plotkin_check(const LinearCode& C) {
  for (uint64_t j = 0; j < C.n; ++j) {
    bool all_zero = true;
    for (uint64_t i = 0; i < C.k && all_zero; ++i) all_zero = C.gen[i][j].v == 0;
    if (all_zero) fail(Errc::degenerate, "code has an identically-zero position");
  }
  PlotkinReport rep;
  rep.n = C.n;
  rep.k = C.k;
  rep.d1 = higher_weight(C, 1);
  rep.a = C.n - rep.d1;
  uint64_t q = C.field.q;
  BigInt qk = ipow(BigInt(q), C.k);
  BigInt lhs = BigInt(rep.d1) * (qk - 1) * q;
  BigInt rhs = BigInt(C.n) * qk * (q - 1);
  rep.plotkin_holds = lhs <= rhs;
  rep.plotkin_tight = lhs == rhs;
  rep.section_chain_holds = BigInt(C.n) <= BigInt(rep.a) * q + 1;
  return rep;
}

}  // namespace fqcount
