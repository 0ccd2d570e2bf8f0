#include "ch/quadrature.hpp"

#include <cmath>

#include "ch/domain.hpp"

namespace ch {

std::pair<Vector, Vector> gauss_legendre(int n) {
  if (n < 1) throw Error(errc::grid, "need at least one node");
  // Golub-Welsch: eigenvalues of the Jacobi matrix for Legendre polynomials.
  Matrix jacobi = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const Real beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  Vector nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    const Real x = solver.eigenvalues()(i);          // node on [-1, 1]
    const Real w = 2.0 * solver.eigenvectors()(0, i) * solver.eigenvectors()(0, i);
    nodes(i) = 0.5 * (x + 1.0);                      // map to [0, 1]
    weights(i) = 0.5 * w;
  }
  return {nodes, weights};
}

SampleSet radial_rule(const DomainSpec& spec, int degree) {
  const bool rank_one = spec.rank == 1;
  if (!rank_one)
    throw Error(errc::unsupported,
                "radial rule needs a rank-1 base; use Monte Carlo instead");
  const int n = std::max(1, (degree + 2) / 2);
  auto [nodes, weights] = gauss_legendre(n);
  SampleSet set;
  set.kind = SampleSet::Kind::radial;
  set.points.reserve(n);
  set.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    ComplexVector t(1);
    t(0) = nodes(i);
    set.points.push_back(t);
    set.weights.push_back(weights(i));
  }
  return set;
}

}  // namespace ch
