#pragma once

#include <stdexcept>
#include <string>

namespace fqcount {

enum class Errc {
  not_prime,
  not_prime_power,
  too_large,
  division_by_zero,
  field_mismatch,
  out_of_range,
  arity_mismatch,
  mixed_degrees,
  non_homogeneous,
  zero_polynomial,
  degree_exceeds_q,
  degree_exceeds_q_plus_1,
  bad_budget,
  dimension_too_large,
  hypothesis_violated,
  degenerate,
  length_mismatch,
  empty_input,
  parse_error,
  internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::not_prime: return "not_prime";
    case Errc::not_prime_power: return "not_prime_power";
    case Errc::too_large: return "too_large";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::field_mismatch: return "field_mismatch";
    case Errc::out_of_range: return "out_of_range";
    case Errc::arity_mismatch: return "arity_mismatch";
    case Errc::mixed_degrees: return "mixed_degrees";
    case Errc::non_homogeneous: return "non_homogeneous";
    case Errc::zero_polynomial: return "zero_polynomial";
    case Errc::degree_exceeds_q: return "degree_exceeds_q";
    case Errc::degree_exceeds_q_plus_1: return "degree_exceeds_q_plus_1";
    case Errc::bad_budget: return "bad_budget";
    case Errc::dimension_too_large: return "dimension_too_large";
    case Errc::hypothesis_violated: return "hypothesis_violated";
    case Errc::degenerate: return "degenerate";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::empty_input: return "empty_input";
    case Errc::parse_error: return "parse_error";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace fqcount
