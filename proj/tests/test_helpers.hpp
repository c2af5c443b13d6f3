#pragma once

#include <random>

#include "gateforge/pauli.hpp"
#include "gateforge/qmatrix.hpp"

namespace gateforge::testing {

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline QMatrix random_complex_matrix(std::mt19937_64& rng, int dim, double span = 1.0) {
  std::vector<cplx> a(static_cast<size_t>(dim) * dim);
  for (cplx& z : a) z = cplx(uniform(rng, -span, span), uniform(rng, -span, span));
  return QMatrix(dim, std::move(a));
}

inline QMatrix random_hermitian(std::mt19937_64& rng, int dim, double span = 1.0) {
  const QMatrix m = random_complex_matrix(rng, dim, span);
  return 0.5 * (m + m.adjoint());
}

// Random unitary through the exponential of a random Hermitian generator.
inline QMatrix random_unitary(std::mt19937_64& rng, int dim) {
  return matrix_exp_evolution(random_hermitian(rng, dim, 2.0), 1.0, 1.0);
}

// Closed-form oracle: exp(-i theta (n . sigma)) = cos(theta) I - i sin(theta)
// (n . sigma) for a unit axis n. Independent of the eigendecomposition path.
inline QMatrix two_level_exp_oracle(double theta, double nx, double ny, double nz) {
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  nx /= len;
  ny /= len;
  nz /= len;
  const QMatrix axis = nx * pauli_matrix('X') + ny * pauli_matrix('Y') + nz * pauli_matrix('Z');
  return std::cos(theta) * QMatrix::identity(2) + cplx(0.0, -std::sin(theta)) * axis;
}

// Generic 2x2 unitary from one mixing angle framed by diagonal phase
// matrices: diag(e^{i p1}, e^{i p2}) R(theta) diag(e^{i q1}, e^{i q2}).
inline QMatrix random_unitary_2x2(std::mt19937_64& rng) {
  const double theta = uniform(rng, 0.0, kPi / 2.0);
  const double c = std::cos(theta), s = std::sin(theta);
  const QMatrix rot(2, {c, s, -s, c});
  QMatrix d1 = QMatrix::zero(2), d2 = QMatrix::zero(2);
  d1(0, 0) = std::exp(cplx(0.0, uniform(rng, -kPi, kPi)));
  d1(1, 1) = std::exp(cplx(0.0, uniform(rng, -kPi, kPi)));
  d2(0, 0) = std::exp(cplx(0.0, uniform(rng, -kPi, kPi)));
  d2(1, 1) = std::exp(cplx(0.0, uniform(rng, -kPi, kPi)));
  return d1 * rot * d2;
}

// Places two 2x2 unitary blocks into the extended-NOT zero pattern: the
// upper block couples rows {1,3} to columns {3,4}, the lower block rows
// {2,4} to columns {1,2} (1-based).
inline QMatrix assemble_not_shape(const QMatrix& upper, const QMatrix& lower) {
  QMatrix u = QMatrix::zero(4);
  const int upper_rows[2] = {0, 2}, upper_cols[2] = {2, 3};
  const int lower_rows[2] = {1, 3}, lower_cols[2] = {0, 1};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      u(upper_rows[i], upper_cols[j]) = upper(i, j);
      u(lower_rows[i], lower_cols[j]) = lower(i, j);
    }
  return u;
}

// Brute-force phase-distance oracle: scan the phase over a fine grid.
inline double phase_distance_oracle(const QMatrix& a, const QMatrix& b, int grid = 2000000) {
  double best = 1e300;
  for (int k = 0; k < grid; ++k) {
    const double phi = 2.0 * kPi * k / grid;
    const cplx f = std::exp(cplx(0.0, phi));
    double d = 0.0;
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j)
        d = std::max(d, std::abs(f * a(i, j) - b(i, j)));
    best = std::min(best, d);
  }
  return best;
}

}  // namespace gateforge::testing
