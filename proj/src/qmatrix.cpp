#include "gateforge/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace gateforge {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4)
    throw DimensionError("QMatrix: dimension must be 2 or 4, got " +
                         std::to_string(dim));
}

void check_finite(const std::vector<cplx>& a) {
  for (const cplx& z : a) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("QMatrix: non-finite entry");
  }
}

}  // namespace

QMatrix::QMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
  check_dim(dim_);
  if (a_.size() != static_cast<size_t>(dim_) * dim_)
    throw DimensionError("QMatrix: entry count does not match dimension");
  check_finite(a_);
}

QMatrix::QMatrix(int dim, std::initializer_list<cplx> entries)
    : QMatrix(dim, std::vector<cplx>(entries)) {}

QMatrix QMatrix::zero(int dim) {
  check_dim(dim);
  return QMatrix(dim, std::vector<cplx>(static_cast<size_t>(dim) * dim, cplx{}));
}

QMatrix QMatrix::identity(int dim) {
  QMatrix m = zero(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix r = zero(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

cplx QMatrix::trace() const {
  cplx t{};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix product: dimension mismatch");
  QMatrix r = QMatrix::zero(a.dim_);
  for (int i = 0; i < a.dim_; ++i)
    for (int k = 0; k < a.dim_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (int j = 0; j < a.dim_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix sum: dimension mismatch");
  QMatrix r = a;
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += b.a_[k];
  return r;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("matrix difference: dimension mismatch");
  QMatrix r = a;
  for (size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= b.a_[k];
  return r;
}

QMatrix operator*(const cplx& s, const QMatrix& a) {
  QMatrix r = a;
  for (cplx& z : r.a_) z *= s;
  return r;
}

QMatrix operator*(double s, const QMatrix& a) { return cplx(s, 0.0) * a; }

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

bool is_hermitian(const QMatrix& m, double tol) {
  return max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const QMatrix& m, double tol) {
  return max_abs_diff(m.adjoint() * m, QMatrix::identity(m.dim())) <= tol;
}

StateVector::StateVector(int d, std::vector<cplx> amps)
    : dim(d), amplitudes(std::move(amps)) {
  if (dim != 2 && dim != 4)
    throw DimensionError("StateVector: dimension must be 2 or 4");
  if (amplitudes.size() != static_cast<size_t>(dim))
    throw DimensionError("StateVector: amplitude count does not match dimension");
  for (const cplx& z : amplitudes)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("StateVector: non-finite amplitude");
}

StateVector StateVector::basis_state(int dim, int index) {
  std::vector<cplx> a(dim, cplx{});
  a.at(index) = 1.0;
  return StateVector(dim, std::move(a));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& z : amplitudes) s += std::norm(z);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) <= tol;
}

StateVector apply(const QMatrix& u, const StateVector& v) {
  if (u.dim() != v.dim) throw DimensionError("apply: dimension mismatch");
  std::vector<cplx> out(v.dim, cplx{});
  for (int i = 0; i < v.dim; ++i)
    for (int j = 0; j < v.dim; ++j) out[i] += u(i, j) * v.amplitudes[j];
  return StateVector(v.dim, std::move(out));
}

QMatrix tensor_product(const QMatrix& input_factor, const QMatrix& output_factor) {
  if (input_factor.dim() != 2 || output_factor.dim() != 2)
    throw DimensionError("tensor_product: both factors must have dimension 2");
  QMatrix r = QMatrix::zero(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          r(i * 2 + k, j * 2 + l) = input_factor(i, j) * output_factor(k, l);
  return r;
}

QMatrix bracket(const QMatrix& a, const QMatrix& b, BracketKind kind) {
  if (a.dim() != b.dim()) throw DimensionError("bracket: dimension mismatch");
  return kind == BracketKind::commutator ? a * b - b * a : a * b + b * a;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver for small Hermitian matrices (dimension-generic; the
// degenerate-cluster pass below needs sizes other than 2 and 4).
// ---------------------------------------------------------------------------

namespace {

struct Dense {
  int n = 0;
  std::vector<cplx> a;  // row-major

  cplx& at(int i, int j) { return a[i * n + j]; }
  const cplx& at(int i, int j) const { return a[i * n + j]; }

  static Dense ident(int n) {
    Dense d;
    d.n = n;
    d.a.assign(static_cast<size_t>(n) * n, cplx{});
    for (int i = 0; i < n; ++i) d.at(i, i) = 1.0;
    return d;
  }
};

double off_diag_max(const Dense& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (i != j) s = std::max(s, std::abs(m.at(i, j)));
  return s;
}

// One plane rotation annihilating entry (p, q) of the Hermitian matrix A.
// Updates A <- R^dag A R and V <- V R in place.
void jacobi_rotate(Dense& A, Dense& V, int p, int q) {
  const cplx z = A.at(p, q);
  const double az = std::abs(z);
  if (az == 0.0) return;
  const cplx phase = z / az;
  const double app = A.at(p, p).real();
  const double aqq = A.at(q, q).real();
  const double tau = (app - aqq) / (2.0 * az);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(tau * tau + 1.0))
                                : 1.0 / (tau - std::sqrt(tau * tau + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  // columns p and q of A and V pick up the rotation
  for (int i = 0; i < A.n; ++i) {
    const cplx aip = A.at(i, p), aiq = A.at(i, q);
    A.at(i, p) = c * aip + s * std::conj(phase) * aiq;
    A.at(i, q) = -s * phase * aip + c * aiq;
    const cplx vip = V.at(i, p), viq = V.at(i, q);
    V.at(i, p) = c * vip + s * std::conj(phase) * viq;
    V.at(i, q) = -s * phase * vip + c * viq;
  }
  // rows p and q of A (left action of R^dag)
  for (int j = 0; j < A.n; ++j) {
    const cplx apj = A.at(p, j), aqj = A.at(q, j);
    A.at(p, j) = c * apj + s * phase * aqj;
    A.at(q, j) = -s * std::conj(phase) * apj + c * aqj;
  }
  A.at(p, q) = 0.0;
  A.at(q, p) = 0.0;
  A.at(p, p) = cplx(A.at(p, p).real(), 0.0);
  A.at(q, q) = cplx(A.at(q, q).real(), 0.0);
}

// Cyclic Jacobi sweeps; returns the eigenvector matrix in V and the
// eigenvalues on the diagonal of A.
void jacobi_hermitian(Dense& A, Dense& V) {
  const int n = A.n;
  V = Dense::ident(n);
  double scale = 0.0;
  for (const cplx& z : A.a) scale = std::max(scale, std::abs(z));
  const double stop = 1e-15 * std::max(1.0, scale);
  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diag_max(A) <= stop) return;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(A.at(p, q)) > stop) jacobi_rotate(A, V, p, q);
  }
  if (off_diag_max(A) > 1e-12 * std::max(1.0, scale))
    throw ConvergenceError("Jacobi iteration did not converge");
}

Dense to_dense(const QMatrix& m) {
  Dense d;
  d.n = m.dim();
  d.a = m.entries();
  return d;
}

}  // namespace

QMatrix matrix_exp_evolution(const QMatrix& h, double duration, double hbar) {
  if (!is_hermitian(h, 1e-12))
    throw HermiticityError("matrix_exp_evolution: Hamiltonian is not Hermitian");
  if (!(duration > 0.0)) throw std::invalid_argument("matrix_exp_evolution: duration must be positive");
  if (!(hbar > 0.0)) throw std::invalid_argument("matrix_exp_evolution: hbar must be positive");

  Dense A = to_dense(h);
  Dense V;
  jacobi_hermitian(A, V);
  const int n = h.dim();
  // U = V diag(exp(-i E_k duration / hbar)) V^dag
  QMatrix u = QMatrix::zero(n);
  for (int k = 0; k < n; ++k) {
    const double ek = A.at(k, k).real();
    const cplx f = std::exp(cplx(0.0, -ek * duration / hbar));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        u(i, j) += f * V.at(i, k) * std::conj(V.at(j, k));
  }
  return u;
}

namespace {

// Analytic eigensystem of the single-phase antidiagonal 2x2 family.
EigResult eig_analytic_simple(const QMatrix& m) {
  if (m.dim() != 2) throw ShapeError("analytic_simple hint needs dimension 2");
  const double tol = 1e-10;
  if (std::abs(m(0, 0)) > tol || std::abs(m(1, 1)) > tol ||
      std::abs(std::abs(m(0, 1)) - 1.0) > tol || std::abs(std::abs(m(1, 0)) - 1.0) > tol)
    throw ShapeError("analytic_simple hint: matrix is not a phase antidiagonal");
  const double alpha = std::arg(m(1, 0));
  const double beta = std::arg(m(0, 1));
  const cplx u1 = std::exp(cplx(0.0, (alpha + beta) / 2.0));
  const double r = 1.0 / std::sqrt(2.0);
  const cplx ea = std::exp(cplx(0.0, alpha / 2.0));
  const cplx eb = std::exp(cplx(0.0, beta / 2.0));
  QMatrix t(2, {r * eb, r * eb, r * ea, -r * ea});
  return {{u1, -u1}, t};
}

// Analytic eigensystem of the four-phase diagonal/antidiagonal hybrid family.
EigResult eig_analytic_restricted(const QMatrix& m) {
  if (m.dim() != 4) throw ShapeError("analytic_restricted hint needs dimension 4");
  const double tol = 1e-10;
  static const int nonzero[4][2] = {{0, 3}, {1, 1}, {2, 2}, {3, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool keep = (j == nonzero[i][1]);
      if (!keep && std::abs(m(i, j)) > tol)
        throw ShapeError("analytic_restricted hint: unexpected nonzero entry");
      if (keep && std::abs(std::abs(m(i, j)) - 1.0) > tol)
        throw ShapeError("analytic_restricted hint: entry is not a unit phase");
    }
  const double beta = std::arg(m(0, 3));
  const double rho = std::arg(m(1, 1));
  const double delta = std::arg(m(2, 2));
  const double alpha = std::arg(m(3, 0));
  const cplx u1 = std::exp(cplx(0.0, (alpha + beta) / 2.0));
  const double r = 1.0 / std::sqrt(2.0);
  const cplx ea = std::exp(cplx(0.0, alpha / 2.0));
  const cplx eb = std::exp(cplx(0.0, beta / 2.0));
  QMatrix t = QMatrix::zero(4);
  t(0, 0) = r * eb;
  t(0, 1) = r * eb;
  t(3, 0) = r * ea;
  t(3, 1) = -r * ea;
  t(1, 2) = 1.0;
  t(2, 3) = 1.0;
  return {{u1, -u1, std::exp(cplx(0.0, rho)), std::exp(cplx(0.0, delta))}, t};
}

EigResult eig_numeric(const QMatrix& m) {
  const int n = m.dim();
  const QMatrix mdag = m.adjoint();
  const QMatrix herm = 0.5 * (m + mdag);
  const QMatrix skew = cplx(0.0, -0.5) * (m - mdag);  // (M - M^dag)/(2i), Hermitian

  Dense A = to_dense(herm);
  Dense V;
  jacobi_hermitian(A, V);

  // sort columns by the Hermitian-part eigenvalue for a deterministic order
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return A.at(i, i).real() < A.at(j, j).real();
  });
  Dense Vs = Dense::ident(n);
  std::vector<double> ev(n);
  for (int k = 0; k < n; ++k) {
    ev[k] = A.at(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) Vs.at(i, k) = V.at(i, order[k]);
  }

  // resolve degenerate subspaces of the Hermitian part against the skew part
  const double cluster_tol = 1e-8 * std::max(1.0, m.max_abs());
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && ev[end] - ev[end - 1] <= cluster_tol) ++end;
    const int len = end - start;
    if (len > 1) {
      // restriction of the skew part to the cluster columns
      Dense B;
      B.n = len;
      B.a.assign(static_cast<size_t>(len) * len, cplx{});
      const Dense S = to_dense(skew);
      for (int r = 0; r < len; ++r)
        for (int c = 0; c < len; ++c) {
          cplx acc{};
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              acc += std::conj(Vs.at(i, start + r)) * S.at(i, j) * Vs.at(j, start + c);
          B.at(r, c) = acc;
        }
      Dense W;
      jacobi_hermitian(B, W);
      std::vector<int> sub(len);
      std::iota(sub.begin(), sub.end(), 0);
      std::stable_sort(sub.begin(), sub.end(), [&](int i, int j) {
        return B.at(i, i).real() < B.at(j, j).real();
      });
      std::vector<cplx> block(static_cast<size_t>(n) * len);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < len; ++c) {
          cplx acc{};
          for (int r = 0; r < len; ++r) acc += Vs.at(i, start + r) * W.at(r, sub[c]);
          block[i * len + c] = acc;
        }
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < len; ++c) Vs.at(i, start + c) = block[i * len + c];
    }
    start = end;
  }

  QMatrix t = QMatrix::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = Vs.at(i, j);
  t = canonicalize_columns(t);

  // eigenvalues read off the diagonal of T^dag M T
  const QMatrix d = t.adjoint() * m * t;
  std::vector<cplx> values(n);
  for (int k = 0; k < n; ++k) values[k] = d(k, k);
  return {values, t};
}

}  // namespace

EigResult eig_normal(const QMatrix& m, EigHint hint) {
  if (hint == EigHint::analytic_simple) return eig_analytic_simple(m);
  if (hint == EigHint::analytic_restricted) return eig_analytic_restricted(m);
  if (!is_unitary(m, 1e-10) && !is_hermitian(m, 1e-10))
    throw UnitarityError("eig_normal: matrix is neither unitary nor Hermitian");
  return eig_numeric(m);
}

QMatrix canonicalize_columns(const QMatrix& m) {
  QMatrix r = m;
  for (int j = 0; j < m.dim(); ++j) {
    int anchor = 0;
    double best = -1.0;
    for (int i = 0; i < m.dim(); ++i) {
      const double a = std::abs(r(i, j));
      if (a > best + 1e-14) {
        best = a;
        anchor = i;
      }
    }
    if (best <= 0.0) continue;
    const cplx phase = r(anchor, j) / std::abs(r(anchor, j));
    for (int i = 0; i < m.dim(); ++i) r(i, j) *= std::conj(phase);
  }
  return r;
}

namespace {

double shifted_distance(const QMatrix& a, const QMatrix& b, double phi) {
  const cplx f = std::exp(cplx(0.0, phi));
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(f * a(i, j) - b(i, j)));
  return m;
}

}  // namespace

double phase_distance(const QMatrix& a, const QMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("phase_distance: dimension mismatch");
  if (!is_unitary(a, 1e-10) || !is_unitary(b, 1e-10))
    throw UnitarityError("phase_distance: both arguments must be unitary");
  const cplx overlap = (a.adjoint() * b).trace();
  if (std::abs(overlap) > 1e-12) return shifted_distance(a, b, std::arg(overlap));

  // trace-aligned phase undefined: coarse scan, then golden-section refinement
  const int grid = 4096;
  double best_phi = 0.0, best = shifted_distance(a, b, 0.0);
  for (int k = 1; k < grid; ++k) {
    const double phi = 2.0 * kPi * k / grid;
    const double d = shifted_distance(a, b, phi);
    if (d < best) {
      best = d;
      best_phi = phi;
    }
  }
  double lo = best_phi - 2.0 * kPi / grid;
  double hi = best_phi + 2.0 * kPi / grid;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = shifted_distance(a, b, x1), f2 = shifted_distance(a, b, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = shifted_distance(a, b, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = shifted_distance(a, b, x2);
    }
  }
  return std::min({best, f1, f2});
}

}  // namespace gateforge
