#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/intmath.hpp"
#include "fqcount/poly.hpp"
#include "fqcount/projgeom.hpp"

namespace fqcount {

enum class BoundName {
  schwarz_zippel,
  serre,
  tb,
  zanella_quadric,
  couvreur_general,
  couvreur_equidim,
  tb_ci,
  couvreur_ci,
  homma,
  zanella_set,
};

inline const char* to_string(BoundName n) {
  switch (n) {
    case BoundName::schwarz_zippel: return "schwarz_zippel";
    case BoundName::serre: return "serre";
    case BoundName::tb: return "tb";
    case BoundName::zanella_quadric: return "zanella_quadric";
    case BoundName::couvreur_general: return "couvreur_general";
    case BoundName::couvreur_equidim: return "couvreur_equidim";
    case BoundName::tb_ci: return "tb_ci";
    case BoundName::couvreur_ci: return "couvreur_ci";
    case BoundName::homma: return "homma";
    case BoundName::zanella_set: return "zanella_set";
  }
  return "unknown";
}

// Every bound formula is a total function of its parameters; hypothesis_ok
// records whether the inputs satisfy the hypothesis under which the value is
// actually an upper bound. The value is never suppressed.
struct BoundResult {
  BoundName name = BoundName::serre;
  BigInt value = 0;
  bool hypothesis_ok = true;
  std::string note;  // human-readable reason when hypothesis_ok is false
  std::vector<std::pair<std::string, BigInt>> params;
};

// |Z(f)| <= d q^{m-1} for affine hypersurfaces of degree d (interesting only
// for d <= q).
inline BoundResult schwarz_zippel_bound(uint32_t d, uint32_t m, uint64_t q) {
  if (d < 1 || m < 1) fail(Errc::out_of_range, "schwarz_zippel_bound requires d >= 1 and m >= 1");
  BoundResult r;
  r.name = BoundName::schwarz_zippel;
  r.value = BigInt(d) * ipow(BigInt(q), m - 1);
  r.hypothesis_ok = d <= q;
  if (!r.hypothesis_ok) r.note = "d > q: bound exceeds |A^m| and is vacuous";
  r.params = {{"d", d}, {"m", m}, {"q", q}};
  return r;
}

// |V(F)| <= d q^{m-1} + p_{m-2} for projective hypersurfaces of degree
// d <= q+1.
inline BoundResult serre_bound(uint32_t d, uint32_t m, uint64_t q) {
  if (d < 1 || m < 1) fail(Errc::out_of_range, "serre_bound requires d >= 1 and m >= 1");
  BoundResult r;
  r.name = BoundName::serre;
  r.value = BigInt(d) * ipow(BigInt(q), m - 1) + p_count(static_cast<int64_t>(m) - 2, q);
  r.hypothesis_ok = d <= q + 1;
  if (!r.hypothesis_ok) r.note = "d > q+1: bound exceeds |P^m| and is vacuous";
  r.params = {{"d", d}, {"m", m}, {"q", q}};
  return r;
}

// delta_j = C(j+2, 2), the number of degree-2 monomials in j+1 variables;
// delta_{-1} = 0.
inline int64_t delta(int64_t j) {
  if (j < -1) fail(Errc::out_of_range, "delta requires j >= -1");
  return (j + 2) * (j + 1) / 2;
}

// Tsfasman-Boguslavsky bound for r independent degree-d forms:
// p_{m-2j} + sum_{i=j}^m nu_i (p_{m-i} - p_{m-i-j}), nu the r-th element of
// Lambda(d, m) and j the position of its first nonzero entry.
inline BoundResult tb_bound(uint32_t d, uint32_t m, uint64_t r, uint64_t q) {
  Exps nu = lambda_element(d, m, r);  // validates 1 <= r <= C(m+d, m)
  uint32_t j = 0;
  for (uint32_t i = 0; i <= m; ++i) {
    if (nu[i] != 0) {
      j = i + 1;  // 1-based position
      break;
    }
  }
  BoundResult out;
  out.name = BoundName::tb;
  int64_t mm = m, jj = j;
  BigInt v = p_count(mm - 2 * jj, q);
  for (uint32_t i = j; i <= m; ++i)
    v += BigInt(nu[i - 1]) * (p_count(mm - i, q) - p_count(mm - i - jj, q));
  out.value = v;
  out.hypothesis_ok = q >= 2 && d < q - 1;
  if (!out.hypothesis_ok) out.note = "stated for d < q-1";
  out.params = {{"d", d}, {"m", m}, {"r", r}, {"q", q}};
  return out;
}

// The (k, i) decomposition of r: the unique k with -1 <= k < m and
// delta_m - delta_{k+1} < r <= delta_m - delta_k, and i = r - (delta_m -
// delta_{k+1}), so 1 <= i <= k+2.
inline std::pair<int64_t, int64_t> zanella_block(uint32_t m, uint64_t r) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  int64_t dm = delta(m);
  if (r < 1 || static_cast<int64_t>(r) > dm)
    fail(Errc::out_of_range, "zanella bound requires 1 <= r <= delta_m");
  for (int64_t k = m - 1; k >= -1; --k) {
    if (dm - delta(k + 1) < static_cast<int64_t>(r) && static_cast<int64_t>(r) <= dm - delta(k)) {
      return {k, static_cast<int64_t>(r) - (dm - delta(k + 1))};
    }
  }
  fail(Errc::internal, "no Zanella block found");
}

// Zanella's bound for intersections of r independent quadrics in P^m:
// p_k + floor(q^{eps-1}) with eps = delta_m - delta_k - r.
inline BoundResult zanella_quadric_bound(uint32_t m, uint64_t r, uint64_t q) {
  auto [k, i] = zanella_block(m, r);
  int64_t eps = delta(m) - delta(k) - static_cast<int64_t>(r);
  BoundResult out;
  out.name = BoundName::zanella_quadric;
  out.value = p_count(k, q) + floor_pow(q, eps - 1);
  out.params = {{"m", m}, {"r", r}, {"q", q}, {"k", k}, {"eps", eps}};
  return out;
}

// One row of the quadric census: the TB and Zanella values at (m, r, q), the
// gap, and the block decomposition r = delta_m - delta_{k+1} + i.
struct GapRow {
  uint64_t r = 0;
  int64_t k = 0;
  int64_t i = 0;
  BigInt tb = 0;
  BigInt zanella = 0;
  BigInt gap = 0;
};

// Full census over r = 1..delta_m of the degree-2 TB bound against the
// Zanella bound. For rows with 0 <= k < m-1 and 1 <= i <= k the gap is
// recomputed from the closed form p_{k-i} - p_{2k-m-i+1} and both routes are
// required to agree.
inline std::vector<GapRow> tb_zanella_census(uint32_t m, uint64_t q) {
  if (m < 2) fail(Errc::out_of_range, "census requires m >= 2");
  int64_t dm = delta(m);
  std::vector<GapRow> rows;
  rows.reserve(static_cast<size_t>(dm));
  for (int64_t r = 1; r <= dm; ++r) {
    GapRow row;
    row.r = static_cast<uint64_t>(r);
    auto [k, i] = zanella_block(m, row.r);
    row.k = k;
    row.i = i;
    row.tb = tb_bound(2, m, row.r, q).value;
    row.zanella = zanella_quadric_bound(m, row.r, q).value;
    row.gap = row.tb - row.zanella;
    if (k >= 0 && k < static_cast<int64_t>(m) - 1 && i >= 1 && i <= k) {
      BigInt closed = p_count(k - i, q) - p_count(2 * k - static_cast<int64_t>(m) - i + 1, q);
      if (closed != row.gap) fail(Errc::internal, "census gap disagrees with its closed form");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline uint64_t census_failing_rows(const std::vector<GapRow>& rows) {
  uint64_t n = 0;
  for (const auto& row : rows)
    if (row.gap > 0) ++n;
  return n;
}

// Couvreur's bound from irreducible-component data (dim_i, deg_i):
// p_{2n-m} + sum_i deg_i (p_{n_i} - p_{2 n_i - m}), n = max dim_i. Component
// dimensions and degrees are supplied as input, not computed.
inline BoundResult couvreur_bound(uint32_t m, uint64_t q,
                                  const std::vector<std::pair<int64_t, uint64_t>>& components) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  if (components.empty()) fail(Errc::empty_input, "no components");
  int64_t n = components[0].first;
  for (const auto& [ni, di] : components) {
    if (ni < 0) fail(Errc::out_of_range, "component dimension must be >= 0");
    if (ni >= static_cast<int64_t>(m)) fail(Errc::dimension_too_large, "component dimension must be < m");
    if (di < 1) fail(Errc::out_of_range, "component degree must be >= 1");
    n = std::max(n, ni);
  }
  BoundResult out;
  out.name = BoundName::couvreur_general;
  BigInt v = p_count(2 * n - static_cast<int64_t>(m), q);
  for (const auto& [ni, di] : components)
    v += BigInt(di) * (p_count(ni, q) - p_count(2 * ni - static_cast<int64_t>(m), q));
  out.value = v;
  out.params = {{"m", m}, {"q", q}, {"t", components.size()}, {"n", n}};
  return out;
}

// Equidimensional case: deg p_n - (deg - 1) p_{2n - m}.
inline BoundResult couvreur_equidim_bound(uint32_t m, uint64_t q, int64_t n, uint64_t deg) {
  if (m < 1) fail(Errc::out_of_range, "m must be >= 1");
  if (n < 0) fail(Errc::out_of_range, "dimension must be >= 0");
  if (n >= static_cast<int64_t>(m)) fail(Errc::dimension_too_large, "dimension must be < m");
  if (deg < 1) fail(Errc::out_of_range, "degree must be >= 1");
  BoundResult out;
  out.name = BoundName::couvreur_equidim;
  out.value = BigInt(deg) * p_count(n, q) - BigInt(deg - 1) * p_count(2 * n - static_cast<int64_t>(m), q);
  out.params = {{"m", m}, {"q", q}, {"n", n}, {"deg", deg}};
  return out;
}

enum class Comparison { less, equal, greater };

inline const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::less: return "less";
    case Comparison::equal: return "equal";
    case Comparison::greater: return "greater";
  }
  return "unknown";
}

struct CiComparison {
  BoundResult tb;        // T_r(d) = (d-1) q^{m-1} + q^{m-r} + p_{m-2}
  BoundResult couvreur;  // C_r(d) = d^r (p_{m-r} - p_{m-2r}) + p_{m-2r}
  Comparison couvreur_vs_tb = Comparison::equal;  // how C compares to T
};

// Closed forms of the TB and Couvreur bounds for a complete intersection of
// r degree-d hypersurfaces, with the hypothesis flag d^r <= q+1.
inline CiComparison ci_compare(uint32_t d, uint32_t m, uint32_t r, uint64_t q) {
  if (m < 1 || r < 1 || r > m) fail(Errc::out_of_range, "ci_compare requires 1 <= r <= m");
  if (d < 2) fail(Errc::out_of_range, "ci_compare requires d > 1");
  int64_t mm = m;
  BigInt degree = ipow(BigInt(d), r);  // delta = d^r
  bool hyp = degree <= BigInt(q) + 1;

  CiComparison out;
  out.tb.name = BoundName::tb_ci;
  out.tb.value = BigInt(d - 1) * ipow(BigInt(q), m - 1) + ipow(BigInt(q), m - r) +
                 p_count(mm - 2, q);
  out.tb.hypothesis_ok = hyp;
  out.tb.params = {{"d", d}, {"m", m}, {"r", r}, {"q", q}};

  out.couvreur.name = BoundName::couvreur_ci;
  out.couvreur.value =
      degree * (p_count(mm - r, q) - p_count(mm - 2 * r, q)) + p_count(mm - 2 * r, q);
  out.couvreur.hypothesis_ok = hyp;
  out.couvreur.params = {{"d", d}, {"m", m}, {"r", r}, {"q", q}};

  if (!hyp) {
    out.tb.note = "stated for d^r <= q+1";
    out.couvreur.note = out.tb.note;
  }
  if (out.couvreur.value < out.tb.value)
    out.couvreur_vs_tb = Comparison::less;
  else if (out.couvreur.value > out.tb.value)
    out.couvreur_vs_tb = Comparison::greater;
  else
    out.couvreur_vs_tb = Comparison::equal;
  return out;
}

// Lower bound (q^m + q^{m-r+1} - q^{m-r} - 1) / (q - 1) <= T_r(d); the
// division is exact and asserted.
inline BigInt tb_lower_bound_ci(uint32_t d, uint32_t m, uint32_t r, uint64_t q) {
  if (d < 2) fail(Errc::out_of_range, "tb_lower_bound_ci requires d >= 2");
  if (m < 1 || r < 1 || r > m) fail(Errc::out_of_range, "tb_lower_bound_ci requires 1 <= r <= m");
  BigInt num = ipow(BigInt(q), m) + ipow(BigInt(q), m - r + 1) - ipow(BigInt(q), m - r) - 1;
  BigInt den = BigInt(q) - 1;
  if (num % den != 0) fail(Errc::internal, "tb_lower_bound_ci division not exact");
  return num / den;
}

// BoundResult wrappers for the two set-theoretic bounds in projgeom.
inline BoundResult homma_bound(uint64_t a, uint32_t m, uint64_t q) {
  BoundResult out;
  out.name = BoundName::homma;
  out.value = homma_set_bound(a, m, q);
  out.params = {{"a", a}, {"m", m}, {"q", q}};
  return out;
}

inline BoundResult zanella_set_bound_result(uint64_t a, uint64_t q) {
  BoundResult out;
  out.name = BoundName::zanella_set;
  out.value = zanella_set_bound(a, q);
  out.params = {{"a", a}, {"q", q}};
  return out;
}

}  // namespace fqcount
