#pragma once

#include <stdexcept>
#include <string>

namespace ch {

/// Failure categories surfaced by the library. `invalid_kind` and
/// `shape_mismatch` indicate caller errors (bad parameters); the rest
/// indicate numerical or hypothesis failures inside a pipeline.
enum class errc {
  invalid_kind,
  inconsistent_table,
  shape_mismatch,
  nonpositive_norm,
  outside_domain,
  sampling_failure,
  domain_violation,
  pole,
  hypothesis_violation,
  grid,
  ill_conditioned,
  near_boundary,
  off_boundary,
  z_dependence,
  quadrature_failure,
  unsupported,
};

const char* to_string(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

  /// True for errors caused by malformed inputs rather than by the
  /// computation itself (maps to CLI usage errors).
  bool is_usage() const {
    return code_ == errc::invalid_kind || code_ == errc::shape_mismatch;
  }

 private:
  errc code_;
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::invalid_kind: return "invalid-kind";
    case errc::inconsistent_table: return "internal-consistency";
    case errc::shape_mismatch: return "shape";
    case errc::nonpositive_norm: return "nonpositive-norm";
    case errc::outside_domain: return "outside-domain";
    case errc::sampling_failure: return "sampling-failure";
    case errc::domain_violation: return "domain-violation";
    case errc::pole: return "pole";
    case errc::hypothesis_violation: return "hypothesis-violation";
    case errc::grid: return "grid";
    case errc::ill_conditioned: return "ill-conditioning";
    case errc::near_boundary: return "near-boundary";
    case errc::off_boundary: return "boundary";
    case errc::z_dependence: return "z-dependence";
    case errc::quadrature_failure: return "quadrature-failure";
    case errc::unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace ch
