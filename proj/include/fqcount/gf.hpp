#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/intmath.hpp"

namespace fqcount {

// An element of F_q, q = p^k, stored as the lexicographic rank of its
// coefficient vector (c_0, ..., c_{k-1}) over the basis 1, x, ..., x^{k-1}:
//   v = c_0 * p^{k-1} + c_1 * p^{k-2} + ... + c_{k-1}.
// For a prime field (k = 1) the value is just the residue. Elements carry no
// back-reference to their field; every operation takes the FieldSpec.
struct FieldElement {
  uint32_t v = 0;

  bool operator==(const FieldElement&) const = default;
  auto operator<=>(const FieldElement&) const = default;
};

inline constexpr uint64_t kFieldSizeCap = uint64_t{1} << 20;  // max supported q = p^k
inline constexpr uint64_t kPrimeCap = uint64_t{1} << 16;      // max supported characteristic

class FieldSpec {
 public:
  uint32_t p = 0;
  uint32_t k = 0;
  uint32_t q = 0;
  // Coefficients of the monic irreducible modulus, lowest degree first
  // (modulus[i] multiplies x^i, modulus[k] == 1). Empty iff k == 1.
  std::vector<uint32_t> modulus;

  // Two specs denote the same field iff (p, k) agree: the modulus is a
  // deterministic function of (p, k).
  uint64_t tag() const { return (static_cast<uint64_t>(p) << 8) | k; }
  bool same_field(const FieldSpec& o) const { return p == o.p && k == o.k; }

  FieldElement zero() const { return {}; }
  FieldElement one() const { return FieldElement{pow_p_[k - 1]}; }

  // Embeds an integer as a multiple of 1 (the prime subfield).
  FieldElement embed(int64_t n) const {
    int64_t r = n % static_cast<int64_t>(p);
    if (r < 0) r += p;
    return FieldElement{static_cast<uint32_t>(r) * pow_p_[k - 1]};
  }

  uint32_t coeff(FieldElement a, uint32_t i) const {  // coefficient of x^i
    assert(i < k);
    return (a.v / pow_p_[k - 1 - i]) % p;
  }

  FieldElement from_coeffs(const std::vector<uint32_t>& c) const {
    assert(c.size() == k);
    uint32_t v = 0;
    for (uint32_t i = 0; i < k; ++i) {
      assert(c[i] < p);
      v += c[i] * pow_p_[k - 1 - i];
    }
    return FieldElement{v};
  }

  FieldElement add(FieldElement a, FieldElement b) const {
    assert(a.v < q && b.v < q);
    if (k == 1) {
      uint32_t s = a.v + b.v;
      return FieldElement{s >= q ? s - q : s};
    }
    if (p == 2) return FieldElement{a.v ^ b.v};
    uint32_t v = 0;
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t s = coeff(a, i) + coeff(b, i);
      if (s >= p) s -= p;
      v += s * pow_p_[k - 1 - i];
    }
    return FieldElement{v};
  }

  FieldElement neg(FieldElement a) const {
    assert(a.v < q);
    if (k == 1) return FieldElement{a.v == 0 ? 0 : q - a.v};
    if (p == 2) return a;
    uint32_t v = 0;
    for (uint32_t i = 0; i < k; ++i) {
      uint32_t c = coeff(a, i);
      v += (c == 0 ? 0 : p - c) * pow_p_[k - 1 - i];
    }
    return FieldElement{v};
  }

  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

  FieldElement mul(FieldElement a, FieldElement b) const {
    assert(a.v < q && b.v < q);
    if (k == 1) {
      return FieldElement{static_cast<uint32_t>((uint64_t{a.v} * b.v) % q)};
    }
    // Schoolbook product of the coefficient polynomials, then reduction by
    // the monic modulus. Buffers are uint64 so the per-coefficient sums can
    // be reduced mod p once at the end.
    uint64_t prod[2 * kMaxDegree - 1] = {};
    for (uint32_t i = 0; i < k; ++i) {
      uint64_t ai = coeff(a, i);
      if (ai == 0) continue;
      for (uint32_t j = 0; j < k; ++j) prod[i + j] += ai * coeff(b, j);
    }
    for (uint32_t deg = 2 * k - 2; deg >= k; --deg) {
      uint64_t t = prod[deg] % p;
      if (t != 0) {
        for (uint32_t j = 0; j < k; ++j) prod[deg - k + j] += t * (p - modulus[j]);
      }
      prod[deg] = 0;
      if (deg == k) break;
    }
    uint32_t v = 0;
    for (uint32_t i = 0; i < k; ++i) {
      v += static_cast<uint32_t>(prod[i] % p) * pow_p_[k - 1 - i];
    }
    return FieldElement{v};
  }

  FieldElement pow(FieldElement a, uint64_t e) const {
    FieldElement r = one();
    FieldElement base = a;
    while (e != 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  FieldElement inv(FieldElement a) const {
    if (a.v == 0) fail(Errc::division_by_zero, "inverse of 0 in F_" + std::to_string(q));
    return pow(a, q - 2);
  }

  // Element text form: a decimal residue for k = 1, a bracketed coefficient
  // list (lowest degree first) for k > 1, e.g. "[1,1]" = 1 + x.
  std::string to_string(FieldElement a) const {
    if (k == 1) return std::to_string(a.v);
    std::string s = "[";
    for (uint32_t i = 0; i < k; ++i) {
      if (i) s += ',';
      s += std::to_string(coeff(a, i));
    }
    s += ']';
    return s;
  }

  FieldElement parse_element(std::string_view text) const {
    if (k == 1) {
      if (text.empty()) fail(Errc::parse_error, "empty field element");
      uint64_t r = 0;
      for (char ch : text) {
        if (ch < '0' || ch > '9') fail(Errc::parse_error, "bad residue '" + std::string(text) + "'");
        r = r * 10 + static_cast<uint64_t>(ch - '0');
        if (r >= kFieldSizeCap) fail(Errc::parse_error, "residue out of range");
      }
      if (r >= q) fail(Errc::parse_error, "residue " + std::to_string(r) + " not reduced mod " + std::to_string(q));
      return FieldElement{static_cast<uint32_t>(r)};
    }
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
      fail(Errc::parse_error, "expected bracketed coefficients, got '" + std::string(text) + "'");
    std::vector<uint32_t> c;
    uint64_t cur = 0;
    bool have_digit = false;
    for (char ch : text.substr(1, text.size() - 2)) {
      if (ch >= '0' && ch <= '9') {
        cur = cur * 10 + static_cast<uint64_t>(ch - '0');
        if (cur >= kPrimeCap) fail(Errc::parse_error, "coefficient out of range");
        have_digit = true;
      } else if (ch == ',') {
        if (!have_digit) fail(Errc::parse_error, "missing coefficient");
        c.push_back(static_cast<uint32_t>(cur));
        cur = 0;
        have_digit = false;
      } else {
        fail(Errc::parse_error, std::string("unexpected character '") + ch + "' in field element");
      }
    }
    if (!have_digit) fail(Errc::parse_error, "missing coefficient");
    c.push_back(static_cast<uint32_t>(cur));
    if (c.size() != k)
      fail(Errc::parse_error, "expected " + std::to_string(k) + " coefficients, got " + std::to_string(c.size()));
    for (uint32_t ci : c)
      if (ci >= p) fail(Errc::parse_error, "coefficient " + std::to_string(ci) + " not reduced mod " + std::to_string(p));
    return from_coeffs(c);
  }

  static constexpr uint32_t kMaxDegree = 24;

  friend FieldSpec field_create(uint64_t p, uint32_t k);

 private:
  std::vector<uint32_t> pow_p_;  // p^0 .. p^k
};

namespace detail {

// Dense polynomials over F_p, lowest degree first, for the modulus search.
inline uint32_t poly_degree(const std::vector<uint32_t>& f) {
  for (size_t i = f.size(); i-- > 0;)
    if (f[i] != 0) return static_cast<uint32_t>(i);
  return 0;
}

inline bool poly_divides(const std::vector<uint32_t>& g, std::vector<uint32_t> f, uint32_t p) {
  // g monic; returns true iff g | f over F_p.
  uint32_t dg = poly_degree(g);
  for (size_t i = f.size(); i-- > 0;) {
    if (i < dg) break;
    uint32_t c = f[i];
    if (c == 0) continue;
    // subtract c * x^{i-dg} * g, killing the degree-i coefficient
    for (uint32_t j = 0; j <= dg; ++j) {
      f[i - dg + j] = static_cast<uint32_t>((f[i - dg + j] + uint64_t{c} * (p - g[j])) % p);
    }
  }
  for (uint32_t i = 0; i < dg; ++i)
    if (f[i] != 0) return false;
  return true;
}

}  // namespace detail

// Creates F_q, q = p^k. For k > 1 the modulus is the lexicographically
// smallest monic irreducible of degree k over F_p, comparing coefficient
// vectors lowest degree first — deterministic across runs and machines.
inline FieldSpec field_create(uint64_t p, uint32_t k) {
  if (p > kPrimeCap || !is_prime_u64(p)) fail(Errc::not_prime, std::to_string(p) + " is not a supported prime");
  if (k < 1) fail(Errc::out_of_range, "k must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kFieldSizeCap) fail(Errc::too_large, "p^k exceeds the supported field size cap");
  }

  FieldSpec F;
  F.p = static_cast<uint32_t>(p);
  F.k = k;
  F.q = static_cast<uint32_t>(q);
  F.pow_p_.resize(k + 1);
  F.pow_p_[0] = 1;
  for (uint32_t i = 1; i <= k; ++i) F.pow_p_[i] = F.pow_p_[i - 1] * F.p;

  if (k == 1) return F;

  // Candidate lower parts (c_0, ..., c_{k-1}) in lexicographic order; the
  // candidate polynomial is x^k + sum c_i x^i. Irreducibility is checked by
  // trial division against every monic polynomial of degree 1..k/2.
  std::vector<uint32_t> cand(k + 1, 0);
  cand[k] = 1;
  std::vector<uint32_t> divisor;
  for (uint64_t n = 0; n < q; ++n) {
    for (uint32_t i = 0; i < k; ++i) {
      cand[i] = static_cast<uint32_t>((n / F.pow_p_[k - 1 - i]) % p);
    }
    bool irreducible = true;
    for (uint32_t dd = 1; irreducible && 2 * dd <= k; ++dd) {
      uint64_t count = F.pow_p_[dd];  // monic polys of degree dd
      for (uint64_t gidx = 0; gidx < count; ++gidx) {
        divisor.assign(dd + 1, 0);
        divisor[dd] = 1;
        uint64_t g = gidx;
        for (uint32_t i = 0; i < dd; ++i) {
          divisor[i] = static_cast<uint32_t>(g % p);
          g /= p;
        }
        if (detail::poly_divides(divisor, cand, F.p)) {
          irreducible = false;
          break;
        }
      }
    }
    if (irreducible) {
      F.modulus = cand;
      return F;
    }
  }
  fail(Errc::internal, "no irreducible modulus found");  // unreachable
}

inline FieldSpec field_from_q(uint64_t q) {
  auto pk = prime_power_decompose(q);
  if (!pk) fail(Errc::not_prime_power, std::to_string(q) + " is not a prime power");
  return field_create(pk->first, pk->second);
}

// All q elements in lexicographic order of coefficient vectors; 0 is first.
inline std::vector<FieldElement> enumerate_elements(const FieldSpec& F) {
  std::vector<FieldElement> out;
  out.reserve(F.q);
  for (uint32_t v = 0; v < F.q; ++v) out.push_back(FieldElement{v});
  return out;
}

}  // namespace fqcount
