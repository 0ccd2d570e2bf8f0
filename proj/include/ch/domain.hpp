// Classical bounded symmetric domains of types I-IV: classification
// invariants, generic norms, membership tests and interior samplers.
//
// Matrix coordinates are flattened row-major: the full p x q block for
// type I, the upper triangle (diagonal included) for symmetric type II,
// the strict upper triangle for skew-symmetric type III; type IV uses a
// plain vector in C^n.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ch/quadrature.hpp"
#include "ch/types.hpp"

namespace ch {

enum class DomainType { type_i, type_ii, type_iii, type_iv };

struct DomainKind {
  DomainType type;
  int p = 0;  // rows for type I; n for types II-IV
  int q = 0;  // columns for type I, unused otherwise

  static DomainKind type_I(int p, int q) { return {DomainType::type_i, p, q}; }
  static DomainKind type_II(int n) { return {DomainType::type_ii, n, 0}; }
  static DomainKind type_III(int n) { return {DomainType::type_iii, n, 0}; }
  static DomainKind type_IV(int n) { return {DomainType::type_iv, n, 0}; }
};

/// A domain together with its classification data: rank r, multiplicities
/// (a, b), genus and complex dimension. The two integer identities
///   genus = 2 + a(r-1) + b,   dim = r + a r(r-1)/2 + r b
/// hold exactly for every constructible spec.
struct DomainSpec {
  DomainKind kind;
  int rank = 0;
  int mult_a = 0;
  int mult_b = 0;
  int genus = 0;
  int dim = 0;
};

/// Builds the spec from the classical table and cross-checks the invariant
/// identities against the direct (type-specific) genus/dimension formulas.
DomainSpec make_domain(DomainKind kind);

/// Parses "typeI:p,q", "typeII:n", "typeIII:n", "typeIV:n" (ASCII, lowercase
/// prefix "type", roman numeral as written).
DomainKind parse_kind(std::string_view text);
std::string to_string(const DomainKind& kind);

/// Reassembles the matrix Z from flattened coordinates (types I-III).
ComplexMatrix base_matrix(const DomainSpec& spec, const ComplexVector& z);

/// Generic norm N(z) normalized to N(0) = 1; positive on the interior,
/// in (0, 1], and vanishing on the boundary.
Real generic_norm(const DomainSpec& spec, const ComplexVector& z);

/// Interior membership: I - Z Z* positive definite for types I-III, the
/// standard pair |sum z_j^2| < 1 and 2 <z,z> < 1 + |sum z_j^2|^2 for type IV.
bool contains(const DomainSpec& spec, const ComplexVector& z);

/// Rejection sampling from the coordinate bounding box [-1,1]^{2 dim}.
/// Weights estimate Lebesgue measure: each equals box volume / trials.
SampleSet sample_interior(const DomainSpec& spec, int count, std::uint64_t seed);

}  // namespace ch
