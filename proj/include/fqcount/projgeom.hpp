#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/intmath.hpp"

namespace fqcount {

inline constexpr uint64_t kEnumerationCap = uint64_t{1} << 24;

// p_j = |P^j(F_q)| = q^j + ... + q + 1 for j >= 0, and 0 for j < 0.
inline BigInt p_count(int64_t j, uint64_t q) {
  if (q < 2) fail(Errc::out_of_range, "q must be >= 2");
  if (j < 0) return 0;
  BigInt r = 1;
  BigInt t = 1;
  for (int64_t i = 0; i < j; ++i) {
    t *= q;
    r += t;
  }
  return r;
}

// A point of P^m(F_q) in normalized homogeneous coordinates: not all zero,
// first nonzero coordinate equal to 1.
struct ProjPoint {
  std::vector<FieldElement> coords;

  bool operator==(const ProjPoint&) const = default;
  auto operator<=>(const ProjPoint&) const = default;
};

// A hyperplane {P : sum coeffs_i P_i = 0}, normalized like a point of the
// dual space.
struct Hyperplane {
  std::vector<FieldElement> coeffs;

  bool operator==(const Hyperplane&) const = default;
  auto operator<=>(const Hyperplane&) const = default;
};

inline ProjPoint normalize_point(std::vector<FieldElement> coords, const FieldSpec& F) {
  size_t lead = coords.size();
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].v != 0) {
      lead = i;
      break;
    }
  }
  if (lead == coords.size()) fail(Errc::out_of_range, "all-zero coordinates are not a projective point");
  FieldElement s = F.inv(coords[lead]);
  for (auto& c : coords) c = F.mul(c, s);
  coords[lead] = F.one();  // exact by construction; keep it explicit
  return ProjPoint{std::move(coords)};
}

inline std::string to_string(const ProjPoint& P, const FieldSpec& F) {
  std::string s;
  for (size_t i = 0; i < P.coords.size(); ++i) {
    if (i) s += ':';
    s += F.to_string(P.coords[i]);
  }
  return s;
}

namespace detail {

inline void check_ambient_dim(uint32_t m) {
  if (m < 1) fail(Errc::out_of_range, "ambient dimension m must be >= 1");
}

// Deterministic listing of normalized representatives: leading 1 in
// position 0 first, trailing coordinates in lexicographic (element
// enumeration) order, then leading position 1, and so on.
inline std::vector<ProjPoint> projective_points(uint32_t m, const FieldSpec& F) {
  check_ambient_dim(m);
  BigInt total = p_count(m, F.q);
  if (total > kEnumerationCap) fail(Errc::too_large, "P^m(F_q) exceeds the enumeration cap");
  std::vector<ProjPoint> out;
  out.reserve(static_cast<size_t>(total));
  std::vector<FieldElement> coords(m + 1);
  for (uint32_t lead = 0; lead <= m; ++lead) {
    uint32_t tail = m - lead;
    for (auto& c : coords) c = FieldElement{0};
    coords[lead] = F.one();
    uint64_t combos = 1;
    for (uint32_t i = 0; i < tail; ++i) combos *= F.q;
    for (uint64_t n = 0; n < combos; ++n) {
      uint64_t rest = n;
      for (uint32_t i = tail; i-- > 0;) {
        coords[lead + 1 + i] = FieldElement{static_cast<uint32_t>(rest % F.q)};
        rest /= F.q;
      }
      out.push_back(ProjPoint{coords});
    }
  }
  return out;
}

}  // namespace detail

inline std::vector<ProjPoint> enumerate_projective(uint32_t m, const FieldSpec& F) {
  return detail::projective_points(m, F);
}

// All q^m coordinate tuples of A^m(F_q), lexicographic in element order.
inline std::vector<std::vector<FieldElement>> enumerate_affine(uint32_t m, const FieldSpec& F) {
  detail::check_ambient_dim(m);
  BigInt total = ipow(BigInt(F.q), m);
  if (total > kEnumerationCap) fail(Errc::too_large, "A^m(F_q) exceeds the enumeration cap");
  uint64_t count = static_cast<uint64_t>(total);
  std::vector<std::vector<FieldElement>> out;
  out.reserve(count);
  std::vector<FieldElement> tuple(m);
  for (uint64_t n = 0; n < count; ++n) {
    uint64_t rest = n;
    for (uint32_t i = m; i-- > 0;) {
      tuple[i] = FieldElement{static_cast<uint32_t>(rest % F.q)};
      rest /= F.q;
    }
    out.push_back(tuple);
  }
  return out;
}

inline std::vector<Hyperplane> enumerate_hyperplanes(uint32_t m, const FieldSpec& F) {
  auto pts = detail::projective_points(m, F);
  std::vector<Hyperplane> out;
  out.reserve(pts.size());
  for (auto& P : pts) out.push_back(Hyperplane{std::move(P.coords)});
  return out;
}

inline bool incident(const ProjPoint& P, const Hyperplane& H, const FieldSpec& F) {
  if (P.coords.size() != H.coeffs.size()) fail(Errc::arity_mismatch, "point/hyperplane dimension mismatch");
  FieldElement acc = F.zero();
  for (size_t i = 0; i < P.coords.size(); ++i) acc = F.add(acc, F.mul(P.coords[i], H.coeffs[i]));
  return acc.v == 0;
}

struct SectionMax {
  uint64_t a = 0;          // largest hyperplane section size
  Hyperplane witness;      // first hyperplane attaining it, in enumeration order
};

// Exact maximum hyperplane section of a point set X in P^m(F_q), brute force
// over all p_m hyperplanes. Duplicate points in X are collapsed.
inline SectionMax max_hyperplane_section(const std::vector<ProjPoint>& X, uint32_t m, const FieldSpec& F) {
  detail::check_ambient_dim(m);
  std::vector<ProjPoint> pts(X);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (const auto& P : pts)
    if (P.coords.size() != m + 1) fail(Errc::arity_mismatch, "point has wrong number of coordinates");

  auto hyps = enumerate_hyperplanes(m, F);
  SectionMax best;
  best.witness = hyps.front();
  for (const auto& H : hyps) {
    uint64_t c = 0;
    for (const auto& P : pts)
      if (incident(P, H, F)) ++c;
    if (c > best.a) {
      best.a = c;
      best.witness = H;
    }
  }
  return best;
}

// |X| <= a q + 1 for a = max hyperplane section (Zanella's lemma bound).
inline BigInt zanella_set_bound(uint64_t a, uint64_t q) {
  return BigInt(a) * q + 1;
}

// (a-1) q + 1 + floor((a-1) / p_{m-2}), valid for 1 <= a <= p_{m-1}, m >= 2.
inline BigInt homma_set_bound(uint64_t a, uint32_t m, uint64_t q) {
  if (m < 2) fail(Errc::out_of_range, "homma_set_bound requires m >= 2");
  if (a < 1) fail(Errc::out_of_range, "homma_set_bound requires a >= 1");
  if (BigInt(a) > p_count(static_cast<int64_t>(m) - 1, q))
    fail(Errc::out_of_range, "homma_set_bound requires a <= p_{m-1}");
  BigInt floor_term = BigInt(a - 1) / p_count(static_cast<int64_t>(m) - 2, q);
  return BigInt(a - 1) * q + 1 + floor_term;
}

}  // namespace fqcount
