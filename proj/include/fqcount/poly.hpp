#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fqcount/errors.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/intmath.hpp"
#include "fqcount/projgeom.hpp"

namespace fqcount {

inline constexpr uint64_t kMonomialCap = uint64_t{1} << 20;   // max |Lambda(d,m)|
inline constexpr uint64_t kSubspaceCap = uint64_t{1} << 27;   // max subspaces enumerated

// Exponent vector of a monomial in m+1 variables x_0..x_m; entry i is the
// exponent of x_i. The paper-style 1-based position i corresponds to
// exps[i-1] throughout.
using Exps = std::vector<uint32_t>;

inline uint32_t exps_degree(const Exps& e) {
  return std::accumulate(e.begin(), e.end(), uint32_t{0});
}

// Strict weak order placing lexicographically larger exponent vectors first,
// so sorted ranges and term maps run in descending lexicographic order.
struct LexDescending {
  bool operator()(const Exps& a, const Exps& b) const {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

using TermMap = std::map<Exps, FieldElement, LexDescending>;

// ---------------------------------------------------------------------------
// Lambda(d, m): degree-d exponent vectors in descending lexicographic order.
// ---------------------------------------------------------------------------

inline BigInt lambda_size(uint32_t d, uint32_t m) { return binomial(m + d, m); }

inline std::vector<Exps> enumerate_lambda(uint32_t d, uint32_t m) {
  if (d < 1 || m < 1) fail(Errc::out_of_range, "enumerate_lambda requires d >= 1 and m >= 1");
  BigInt total = lambda_size(d, m);
  if (total > kMonomialCap) fail(Errc::too_large, "Lambda(d,m) exceeds the monomial cap");
  std::vector<Exps> out;
  out.reserve(static_cast<size_t>(total));
  Exps cur(m + 1, 0);
  cur[0] = d;
  out.push_back(cur);
  while (cur[m] != d) {
    // descending-lex successor: decrement the rightmost nonzero entry left of
    // the end, move everything to its right into the next slot
    uint32_t i = m;
    while (i > 0 && cur[i - 1] == 0) --i;
    --i;  // rightmost index < m with cur[i] > 0
    uint32_t moved = 1;
    for (uint32_t j = i + 1; j <= m; ++j) {
      moved += cur[j];
      cur[j] = 0;
    }
    cur[i] -= 1;
    cur[i + 1] = moved;
    out.push_back(cur);
  }
  return out;
}

// r-th element (1-indexed) of Lambda(d, m), by combinatorial unranking.
inline Exps lambda_element(uint32_t d, uint32_t m, uint64_t r) {
  if (d < 1 || m < 1) fail(Errc::out_of_range, "lambda_element requires d >= 1 and m >= 1");
  if (r < 1 || BigInt(r) > lambda_size(d, m))
    fail(Errc::out_of_range, "rank " + std::to_string(r) + " outside Lambda(d,m)");
  BigInt rest = BigInt(r) - 1;
  Exps out(m + 1, 0);
  uint32_t rem = d;
  for (uint32_t pos = 0; pos < m; ++pos) {
    uint32_t slots = m - pos;  // positions after pos
    for (uint32_t t = rem + 1; t-- > 0;) {
      BigInt block = binomial(rem - t + slots - 1, slots - 1);
      if (rest < block) {
        out[pos] = t;
        rem -= t;
        break;
      }
      rest -= block;
    }
  }
  out[m] = rem;
  return out;
}

// 1-based rank of an exponent vector within Lambda(d, m).
inline uint64_t lambda_rank(const Exps& e, uint32_t d, uint32_t m) {
  if (e.size() != m + 1 || exps_degree(e) != d) fail(Errc::out_of_range, "exponent vector not in Lambda(d,m)");
  BigInt rank = 0;
  uint32_t rem = d;
  for (uint32_t pos = 0; pos < m; ++pos) {
    uint32_t slots = m - pos;
    for (uint32_t t = rem; t > e[pos]; --t) rank += binomial(rem - t + slots - 1, slots - 1);
    rem -= e[pos];
  }
  return to_u64(rank + 1, "lambda rank");
}

// ---------------------------------------------------------------------------
// Polynomials: a general sparse multivariate type and a homogeneous wrapper.
// ---------------------------------------------------------------------------

// Sparse polynomial in nvars variables over a fixed field (identified by its
// tag). Terms store nonzero coefficients only.
struct Poly {
  uint32_t nvars = 0;
  uint64_t field_tag = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }

  uint32_t degree() const {  // total degree; 0 for the zero polynomial
    uint32_t d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, exps_degree(e));
    return d;
  }

  bool operator==(const Poly&) const = default;
};

// Homogeneous polynomial of degree d in m+1 variables. The zero polynomial is
// representable (empty terms) and keeps its degree tag.
struct HomogPoly {
  uint32_t m = 0;
  uint32_t d = 0;
  uint64_t field_tag = 0;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }

  Poly as_poly() const { return Poly{m + 1, field_tag, terms}; }

  bool operator==(const HomogPoly&) const = default;
};

namespace detail {

inline void add_term(TermMap& terms, const Exps& e, FieldElement c, const FieldSpec& F) {
  auto it = terms.find(e);
  if (it == terms.end()) {
    if (c.v != 0) terms.emplace(e, c);
    return;
  }
  it->second = F.add(it->second, c);
  if (it->second.v == 0) terms.erase(it);
}

inline FieldElement eval_terms(const TermMap& terms, std::span<const FieldElement> point,
                               const FieldSpec& F) {
  FieldElement acc = F.zero();
  for (const auto& [e, c] : terms) {
    FieldElement t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      t = F.mul(t, F.pow(point[i], e[i]));
    }
    acc = F.add(acc, t);
  }
  return acc;
}

}  // namespace detail

inline Poly make_poly(uint32_t nvars, const FieldSpec& F) { return Poly{nvars, F.tag(), {}}; }

inline void poly_add_term(Poly& f, const Exps& e, FieldElement c, const FieldSpec& F) {
  if (e.size() != f.nvars) fail(Errc::arity_mismatch, "term has wrong variable count");
  detail::add_term(f.terms, e, c, F);
}

inline HomogPoly make_homog(uint32_t m, uint32_t d, const FieldSpec& F) {
  return HomogPoly{m, d, F.tag(), {}};
}

inline void homog_add_term(HomogPoly& f, const Exps& e, FieldElement c, const FieldSpec& F) {
  if (e.size() != f.m + 1) fail(Errc::arity_mismatch, "term has wrong variable count");
  if (exps_degree(e) != f.d) fail(Errc::non_homogeneous, "term degree differs from polynomial degree");
  detail::add_term(f.terms, e, c, F);
}

// Validates that a general polynomial is homogeneous of a single degree and
// rewraps it. Degree of the zero polynomial must be supplied by the caller.
inline HomogPoly to_homogeneous(const Poly& f, uint32_t m, uint32_t d_if_zero, const FieldSpec& F) {
  if (f.nvars != m + 1) fail(Errc::arity_mismatch, "expected a polynomial in m+1 variables");
  if (f.terms.empty()) return HomogPoly{m, d_if_zero, F.tag(), {}};
  uint32_t d = exps_degree(f.terms.begin()->first);
  std::vector<size_t> offending;
  size_t idx = 0;
  for (const auto& [e, c] : f.terms) {
    ++idx;
    if (exps_degree(e) != d) offending.push_back(idx);
  }
  if (!offending.empty()) {
    std::string msg = "non-homogeneous terms at indices";
    for (size_t i : offending) msg += " " + std::to_string(i);
    fail(Errc::non_homogeneous, msg);
  }
  return HomogPoly{m, d, F.tag(), f.terms};
}

inline FieldElement evaluate(const Poly& f, std::span<const FieldElement> point, const FieldSpec& F) {
  if (f.field_tag != F.tag()) fail(Errc::field_mismatch, "polynomial belongs to a different field");
  if (point.size() != f.nvars) fail(Errc::arity_mismatch, "point arity does not match polynomial");
  return detail::eval_terms(f.terms, point, F);
}

inline FieldElement evaluate(const HomogPoly& f, std::span<const FieldElement> coords, const FieldSpec& F) {
  if (f.field_tag != F.tag()) fail(Errc::field_mismatch, "polynomial belongs to a different field");
  if (coords.size() != f.m + 1) fail(Errc::arity_mismatch, "coordinate arity does not match polynomial");
  return detail::eval_terms(f.terms, coords, F);
}

inline FieldElement evaluate(const HomogPoly& f, const ProjPoint& P, const FieldSpec& F) {
  return evaluate(f, std::span<const FieldElement>(P.coords), F);
}

inline Poly poly_mul(const Poly& a, const Poly& b, const FieldSpec& F) {
  if (a.nvars != b.nvars) fail(Errc::arity_mismatch, "factor variable counts differ");
  if (a.field_tag != F.tag() || b.field_tag != F.tag()) fail(Errc::field_mismatch, "mixed fields in product");
  Poly out = make_poly(a.nvars, F);
  Exps e(a.nvars);
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      for (uint32_t i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
      detail::add_term(out.terms, e, F.mul(ca, cb), F);
    }
  }
  return out;
}

inline Poly poly_scale(const Poly& a, FieldElement s, const FieldSpec& F) {
  Poly out = make_poly(a.nvars, F);
  for (const auto& [e, c] : a.terms) detail::add_term(out.terms, e, F.mul(c, s), F);
  return out;
}

// ---------------------------------------------------------------------------
// Text form: terms joined by '+', each "c*x0^a0*x1^a1*..." with unit
// coefficients and zero exponents omitted, e.g. "x0*x1 + 2*x2^2".
// ---------------------------------------------------------------------------

inline std::string term_to_string(const Exps& e, FieldElement c, const FieldSpec& F) {
  std::string s;
  bool unit = (c == F.one());
  bool constant = exps_degree(e) == 0;
  if (!unit || constant) s += F.to_string(c);
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

inline std::string to_string(const Poly& f, const FieldSpec& F) {
  if (f.terms.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : f.terms) {
    if (!s.empty()) s += " + ";
    s += term_to_string(e, c, F);
  }
  return s;
}

inline std::string to_string(const HomogPoly& f, const FieldSpec& F) { return to_string(f.as_poly(), F); }

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Parses the polynomial text form over m+1 variables x0..xm. Splits on '+'
// at the top level ('+' cannot occur inside a bracketed coefficient).
inline Poly parse_poly(std::string_view text, uint32_t nvars, const FieldSpec& F) {
  Poly out = make_poly(nvars, F);
  text = detail::strip(text);
  if (text.empty()) fail(Errc::parse_error, "empty polynomial");
  size_t start = 0;
  size_t term_index = 0;
  auto take_term = [&](std::string_view term) {
    ++term_index;
    term = detail::strip(term);
    if (term.empty()) fail(Errc::parse_error, "empty term at index " + std::to_string(term_index));
    Exps e(nvars, 0);
    FieldElement coeff = F.one();
    bool seen_var = false;
    size_t pos = 0;
    size_t factor_index = 0;
    while (pos < term.size()) {
      size_t next = term.find('*', pos);
      std::string_view factor = detail::strip(term.substr(pos, next == std::string_view::npos ? next : next - pos));
      pos = (next == std::string_view::npos) ? term.size() : next + 1;
      ++factor_index;
      if (factor.empty()) fail(Errc::parse_error, "empty factor in term " + std::to_string(term_index));
      if (factor.front() == 'x') {
        size_t caret = factor.find('^');
        std::string_view idx_part = factor.substr(1, caret == std::string_view::npos ? caret : caret - 1);
        uint64_t var = 0;
        if (idx_part.empty()) fail(Errc::parse_error, "missing variable index in term " + std::to_string(term_index));
        for (char ch : idx_part) {
          if (ch < '0' || ch > '9')
            fail(Errc::parse_error, "bad variable '" + std::string(factor) + "' in term " + std::to_string(term_index));
          var = var * 10 + static_cast<uint64_t>(ch - '0');
        }
        if (var >= nvars)
          fail(Errc::parse_error, "variable x" + std::to_string(var) + " out of range (term " +
                                      std::to_string(term_index) + ")");
        uint64_t exp = 1;
        if (caret != std::string_view::npos) {
          std::string_view exp_part = factor.substr(caret + 1);
          if (exp_part.empty()) fail(Errc::parse_error, "missing exponent in term " + std::to_string(term_index));
          exp = 0;
          for (char ch : exp_part) {
            if (ch < '0' || ch > '9')
              fail(Errc::parse_error, "bad exponent in term " + std::to_string(term_index));
            exp = exp * 10 + static_cast<uint64_t>(ch - '0');
            if (exp > 1'000'000) fail(Errc::parse_error, "exponent too large in term " + std::to_string(term_index));
          }
        }
        e[var] += static_cast<uint32_t>(exp);
        seen_var = true;
      } else {
        if (factor_index != 1 || seen_var)
          fail(Errc::parse_error, "coefficient must come first in term " + std::to_string(term_index));
        coeff = F.parse_element(factor);
      }
    }
    poly_add_term(out, e, coeff, F);
  };
  for (size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      take_term(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Parses and validates a homogeneous polynomial of any single degree.
inline HomogPoly parse_homog_poly(std::string_view text, uint32_t m, const FieldSpec& F) {
  Poly f = parse_poly(text, m + 1, F);
  if (f.is_zero()) fail(Errc::zero_polynomial, "polynomial is zero");
  return to_homogeneous(f, m, 0, F);
}

// ---------------------------------------------------------------------------
// Coefficient vectors and linear algebra over F_q.
// ---------------------------------------------------------------------------

// Coefficient vector of a homogeneous polynomial with respect to the full
// descending-lex listing of Lambda(d, m); length C(m+d, m).
inline std::vector<FieldElement> to_coeff_vector(const HomogPoly& f) {
  uint64_t n = to_u64(lambda_size(f.d, f.m), "coefficient vector length");
  std::vector<FieldElement> out(n, FieldElement{0});
  for (const auto& [e, c] : f.terms) out[lambda_rank(e, f.d, f.m) - 1] = c;
  return out;
}

inline HomogPoly from_coeff_vector(std::span<const FieldElement> coeffs, uint32_t d, uint32_t m,
                                   const FieldSpec& F) {
  auto basis = enumerate_lambda(d, m);
  if (coeffs.size() != basis.size()) fail(Errc::length_mismatch, "coefficient vector has wrong length");
  HomogPoly out = make_homog(m, d, F);
  for (size_t i = 0; i < basis.size(); ++i)
    if (coeffs[i].v != 0) out.terms.emplace(basis[i], coeffs[i]);
  return out;
}

// In-place Gaussian elimination; returns the rank. Rows end up in row echelon
// form (not fully reduced unless requested).
inline uint32_t row_reduce(std::vector<std::vector<FieldElement>>& rows, const FieldSpec& F,
                           bool fully_reduce = false) {
  if (rows.empty()) return 0;
  size_t ncols = rows[0].size();
  uint32_t rank = 0;
  for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    size_t pivot = rows.size();
    for (size_t i = rank; i < rows.size(); ++i) {
      if (rows[i][col].v != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    FieldElement s = F.inv(rows[rank][col]);
    for (size_t j = col; j < ncols; ++j) rows[rank][j] = F.mul(rows[rank][j], s);
    size_t lo = fully_reduce ? 0 : rank + 1;
    for (size_t i = lo; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].v == 0) continue;
      FieldElement f = rows[i][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
    }
    ++rank;
  }
  return rank;
}

inline uint32_t rank_of(std::vector<std::vector<FieldElement>> rows, const FieldSpec& F) {
  return row_reduce(rows, F);
}

// True iff the family is linearly independent over F_q. All members must
// share degree, ambient dimension, and field.
inline bool is_independent(const std::vector<HomogPoly>& family, const FieldSpec& F) {
  if (family.empty()) fail(Errc::empty_input, "empty family");
  for (const auto& f : family) {
    if (f.d != family[0].d || f.m != family[0].m) fail(Errc::mixed_degrees, "family members disagree on (d, m)");
    if (f.field_tag != F.tag()) fail(Errc::field_mismatch, "family member from a different field");
  }
  std::vector<std::vector<FieldElement>> rows;
  rows.reserve(family.size());
  for (const auto& f : family) rows.push_back(to_coeff_vector(f));
  return row_reduce(rows, F) == family.size();
}

// Number of r-dimensional subspaces of F_q^k.
inline BigInt gaussian_binomial(uint32_t k, uint32_t r, uint64_t q) {
  if (r > k) fail(Errc::out_of_range, "gaussian_binomial requires r <= k");
  BigInt num = 1, den = 1;
  for (uint32_t i = 0; i < r; ++i) {
    num *= ipow(BigInt(q), k - i) - 1;
    den *= ipow(BigInt(q), r - i) - 1;
  }
  BigInt rem = num % den;
  if (rem != 0) fail(Errc::internal, "gaussian binomial division not exact");
  return num / den;
}

// Row-major r x k matrix of packed field element values.
struct SubspaceBasis {
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<uint32_t> a;  // packed FieldElement values

  uint32_t at(uint32_t i, uint32_t j) const { return a[size_t{i} * cols + j]; }
};

// Streams exactly one canonical reduced-row-echelon basis per r-dimensional
// subspace of F_q^k. Order: pivot-column profiles in ascending lexicographic
// order, then the free entries as an odometer in element order (row-major,
// last free position fastest). The yielded matrix is owned by the stream and
// is valid until the next call.
class SubspaceStream {
 public:
  SubspaceStream(uint32_t k, uint32_t r, const FieldSpec& F) : F_(&F), k_(k), r_(r) {
    if (r < 1 || r > k) fail(Errc::out_of_range, "subspace dimension r must satisfy 1 <= r <= k");
    total_ = gaussian_binomial(k, r, F.q);
    if (total_ > kSubspaceCap) fail(Errc::too_large, "subspace count exceeds the enumeration cap");
    mat_.rows = r;
    mat_.cols = k;
    mat_.a.assign(size_t{r} * k, 0);
    pivots_.resize(r);
  }

  BigInt total() const { return total_; }

  // 0-based index of the most recently yielded subspace.
  uint64_t index() const { return index_; }

  const SubspaceBasis* next() {
    if (!started_) {
      started_ = true;
      for (uint32_t i = 0; i < r_; ++i) pivots_[i] = i;
      load_profile();
      index_ = 0;
      return &mat_;
    }
    // advance the free-entry odometer
    for (size_t fi = free_.size(); fi-- > 0;) {
      auto [row, col] = free_[fi];
      uint32_t v = mat_.a[size_t{row} * k_ + col] + 1;
      if (v < F_->q) {
        mat_.a[size_t{row} * k_ + col] = v;
        ++index_;
        return &mat_;
      }
      mat_.a[size_t{row} * k_ + col] = 0;
    }
    // next pivot profile
    uint32_t i = r_;
    while (i-- > 0) {
      if (pivots_[i] < k_ - r_ + i) {
        ++pivots_[i];
        for (uint32_t j = i + 1; j < r_; ++j) pivots_[j] = pivots_[i] + (j - i);
        load_profile();
        ++index_;
        return &mat_;
      }
    }
    return nullptr;
  }

 private:
  void load_profile() {
    std::fill(mat_.a.begin(), mat_.a.end(), 0);
    uint32_t one = F_->one().v;
    for (uint32_t i = 0; i < r_; ++i) mat_.a[size_t{i} * k_ + pivots_[i]] = one;
    free_.clear();
    for (uint32_t i = 0; i < r_; ++i) {
      for (uint32_t j = pivots_[i] + 1; j < k_; ++j) {
        if (std::find(pivots_.begin() + i + 1, pivots_.end(), j) != pivots_.end()) continue;
        free_.emplace_back(i, j);
      }
    }
  }

  const FieldSpec* F_;
  uint32_t k_, r_;
  BigInt total_;
  SubspaceBasis mat_;
  std::vector<uint32_t> pivots_;
  std::vector<std::pair<uint32_t, uint32_t>> free_;
  bool started_ = false;
  uint64_t index_ = 0;
};

// Convenience: materializes all subspace bases (small inputs only).
inline std::vector<SubspaceBasis> enumerate_subspaces(uint32_t k, uint32_t r, const FieldSpec& F) {
  SubspaceStream stream(k, r, F);
  std::vector<SubspaceBasis> out;
  while (const SubspaceBasis* b = stream.next()) out.push_back(*b);
  return out;
}

// Evaluation table E[pt][mono] of packed monomial values at each point.
inline std::vector<uint32_t> evaluation_table(const std::vector<Exps>& monomials,
                                              const std::vector<ProjPoint>& points,
                                              const FieldSpec& F) {
  std::vector<uint32_t> table(points.size() * monomials.size());
  for (size_t j = 0; j < points.size(); ++j) {
    for (size_t i = 0; i < monomials.size(); ++i) {
      const Exps& e = monomials[i];
      FieldElement t = F.one();
      for (size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        t = F.mul(t, F.pow(points[j].coords[v], e[v]));
      }
      table[j * monomials.size() + i] = t.v;
    }
  }
  return table;
}

}  // namespace fqcount
