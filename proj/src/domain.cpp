#include "ch/domain.hpp"

#include <cmath>
#include <random>

#include "ch/errors.hpp"

namespace ch {

namespace {

struct Table {
  int rank, mult_a, mult_b;
  int genus_direct, dim_direct;
};

Table classification(const DomainKind& kind) {
  switch (kind.type) {
    case DomainType::type_i: {
      const int p = kind.p, q = kind.q;
      return {p, 2, q - p, p + q, p * q};
    }
    case DomainType::type_ii: {
      const int n = kind.p;
      return {n, 1, 0, n + 1, n * (n + 1) / 2};
    }
    case DomainType::type_iii: {
      const int n = kind.p;
      return {n / 2, 4, (n % 2 == 0) ? 0 : 2, 2 * (n - 1), n * (n - 1) / 2};
    }
    case DomainType::type_iv: {
      const int n = kind.p;
      return {2, n - 2, 0, n, n};
    }
  }
  throw Error(errc::invalid_kind, "unknown domain type");
}

void check_bounds(const DomainKind& kind) {
  switch (kind.type) {
    case DomainType::type_i:
      if (kind.p < 1 || kind.q < kind.p)
        throw Error(errc::invalid_kind, "typeI requires 1 <= p <= q");
      return;
    case DomainType::type_ii:
      if (kind.p < 2) throw Error(errc::invalid_kind, "typeII requires n >= 2");
      return;
    case DomainType::type_iii:
      if (kind.p < 4) throw Error(errc::invalid_kind, "typeIII requires n >= 4");
      return;
    case DomainType::type_iv:
      if (kind.p < 3) throw Error(errc::invalid_kind, "typeIV requires n >= 3");
      return;
  }
  throw Error(errc::invalid_kind, "unknown domain type");
}

}  // namespace

DomainSpec make_domain(DomainKind kind) {
  check_bounds(kind);
  const Table t = classification(kind);
  DomainSpec spec;
  spec.kind = kind;
  spec.rank = t.rank;
  spec.mult_a = t.mult_a;
  spec.mult_b = t.mult_b;
  spec.genus = 2 + t.mult_a * (t.rank - 1) + t.mult_b;
  spec.dim = t.rank + t.mult_a * t.rank * (t.rank - 1) / 2 + t.rank * t.mult_b;
  if (spec.genus != t.genus_direct || spec.dim != t.dim_direct) {
    throw Error(errc::inconsistent_table,
                "identity cross-check failed for " + to_string(kind));
  }
  return spec;
}

DomainKind parse_kind(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw Error(errc::invalid_kind, "expected '<type>:<params>' in '" + std::string(text) + "'");
  const std::string_view name = text.substr(0, colon);
  const std::string params(text.substr(colon + 1));
  auto parse_int = [&](const std::string& s) {
    std::size_t pos = 0;
    int value = 0;
    try {
      value = std::stoi(s, &pos);
    } catch (const std::exception&) {
      throw Error(errc::invalid_kind, "bad integer '" + s + "'");
    }
    if (pos != s.size()) throw Error(errc::invalid_kind, "bad integer '" + s + "'");
    return value;
  };
  if (name == "typeI") {
    const auto comma = params.find(',');
    if (comma == std::string::npos)
      throw Error(errc::invalid_kind, "typeI needs 'p,q'");
    return DomainKind::type_I(parse_int(params.substr(0, comma)),
                              parse_int(params.substr(comma + 1)));
  }
  if (name == "typeII") return DomainKind::type_II(parse_int(params));
  if (name == "typeIII") return DomainKind::type_III(parse_int(params));
  if (name == "typeIV") return DomainKind::type_IV(parse_int(params));
  throw Error(errc::invalid_kind, "unknown domain kind '" + std::string(name) + "'");
}

std::string to_string(const DomainKind& kind) {
  switch (kind.type) {
    case DomainType::type_i:
      return "typeI:" + std::to_string(kind.p) + "," + std::to_string(kind.q);
    case DomainType::type_ii: return "typeII:" + std::to_string(kind.p);
    case DomainType::type_iii: return "typeIII:" + std::to_string(kind.p);
    case DomainType::type_iv: return "typeIV:" + std::to_string(kind.p);
  }
  return "?";
}

ComplexMatrix base_matrix(const DomainSpec& spec, const ComplexVector& z) {
  if (z.size() != spec.dim)
    throw Error(errc::shape_mismatch,
                "expected " + std::to_string(spec.dim) + " coordinates, got " +
                    std::to_string(z.size()));
  switch (spec.kind.type) {
    case DomainType::type_i: {
      const int p = spec.kind.p, q = spec.kind.q;
      ComplexMatrix Z(p, q);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) Z(i, j) = z(i * q + j);
      return Z;
    }
    case DomainType::type_ii: {
      const int n = spec.kind.p;
      ComplexMatrix Z(n, n);
      int idx = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Z(i, j) = z(idx);
          Z(j, i) = z(idx);
          ++idx;
        }
      return Z;
    }
    case DomainType::type_iii: {
      const int n = spec.kind.p;
      ComplexMatrix Z = ComplexMatrix::Zero(n, n);
      int idx = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Z(i, j) = z(idx);
          Z(j, i) = -z(idx);
          ++idx;
        }
      return Z;
    }
    case DomainType::type_iv:
      throw Error(errc::shape_mismatch, "typeIV has no matrix realization");
  }
  throw Error(errc::invalid_kind, "unknown domain type");
}

namespace {

// Hermitian I - Z Z* for the matrix types.
ComplexMatrix defect_matrix(const DomainSpec& spec, const ComplexVector& z) {
  const ComplexMatrix Z = base_matrix(spec, z);
  const int p = static_cast<int>(Z.rows());
  return ComplexMatrix::Identity(p, p) - Z * Z.adjoint();
}

}  // namespace

Real generic_norm(const DomainSpec& spec, const ComplexVector& z) {
  if (z.size() != spec.dim)
    throw Error(errc::shape_mismatch, "coordinate count mismatch");
  if (spec.kind.type == DomainType::type_iv) {
    const Real h = z.squaredNorm();
    Complex s = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) s += z(j) * z(j);
    const Real value = 1.0 - 2.0 * h + std::norm(s);
    if (value <= 0.0)
      throw Error(errc::nonpositive_norm, "point outside the closed domain");
    return value;
  }
  const Complex det = defect_matrix(spec, z).determinant();
  const Real value = det.real();
  if (value <= 0.0)
    throw Error(errc::nonpositive_norm, "point outside the closed domain");
  return spec.kind.type == DomainType::type_iii ? std::sqrt(value) : value;
}

bool contains(const DomainSpec& spec, const ComplexVector& z) {
  if (z.size() != spec.dim)
    throw Error(errc::shape_mismatch, "coordinate count mismatch");
  if (spec.kind.type == DomainType::type_iv) {
    const Real h = z.squaredNorm();
    Complex s = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) s += z(j) * z(j);
    const Real abs_s = std::abs(s);
    return abs_s < 1.0 && 2.0 * h < 1.0 + abs_s * abs_s;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(defect_matrix(spec, z),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() > 0.0;
}

SampleSet sample_interior(const DomainSpec& spec, int count, std::uint64_t seed) {
  SampleSet set;
  set.seed = seed;
  set.points.reserve(count);
  std::mt19937_64 rng(seed);

  const int d = spec.dim;
  const Real box_volume = std::pow(4.0, d);  // [-1,1]^2 per complex coordinate
  const long long max_trials =
      std::max<long long>(static_cast<long long>(count) * 1000000LL, 1000000LL);

  long long trials = 0;
  ComplexVector z(d);
  while (static_cast<int>(set.points.size()) < count) {
    if (trials >= max_trials)
      throw Error(errc::sampling_failure,
                  "acceptance ratio below 1e-6 for " + to_string(spec.kind));
    ++trials;
    for (int j = 0; j < d; ++j) {
      const Real re = 2.0 * uniform01(rng()) - 1.0;
      const Real im = 2.0 * uniform01(rng()) - 1.0;
      z(j) = Complex(re, im);
    }
    if (contains(spec, z)) set.points.push_back(z);
  }

  const Real weight = box_volume / static_cast<Real>(trials);
  set.weights.assign(count, weight);
  const Real p = static_cast<Real>(count) / static_cast<Real>(trials);
  set.variance_hint = box_volume * std::sqrt(p * (1.0 - p) / static_cast<Real>(trials));
  return set;
}

}  // namespace ch
