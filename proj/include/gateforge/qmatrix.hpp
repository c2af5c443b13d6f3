#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "gateforge/errors.hpp"

namespace gateforge {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Dense complex square matrix of dimension 2 or 4, the carrier for unitaries,
// Hamiltonians and eigenvector matrices. Row-major storage; entries must be
// finite. All operations below are pure and never mutate their inputs.
class QMatrix {
 public:
  QMatrix() : dim_(2), a_(4, cplx{}) {}
  QMatrix(int dim, std::vector<cplx> entries);
  QMatrix(int dim, std::initializer_list<cplx> entries);

  static QMatrix zero(int dim);
  static QMatrix identity(int dim);

  int dim() const { return dim_; }
  const cplx& operator()(int i, int j) const { return a_[i * dim_ + j]; }
  cplx& operator()(int i, int j) { return a_[i * dim_ + j]; }
  const std::vector<cplx>& entries() const { return a_; }

  QMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const cplx& s, const QMatrix& a);
  friend QMatrix operator*(double s, const QMatrix& a);

 private:
  int dim_;
  std::vector<cplx> a_;
};

// max |A_ij - B_ij|
double max_abs_diff(const QMatrix& a, const QMatrix& b);
bool is_hermitian(const QMatrix& m, double tol = 1e-12);
bool is_unitary(const QMatrix& m, double tol = 1e-10);

// Two-spin state in the basis |uu>, |ud>, |du>, |dd>; the first arrow is the
// Input spin, the second the Output spin.
struct StateVector {
  int dim = 2;
  std::vector<cplx> amplitudes;

  StateVector(int d, std::vector<cplx> amps);
  static StateVector basis_state(int dim, int index);
  double norm() const;
  bool is_normalized(double tol = 1e-10) const;
};

StateVector apply(const QMatrix& u, const StateVector& v);

// Direct product with the Input spin as the left factor:
// (A (x) B)[(i*2+k),(j*2+l)] = A[i,j] * B[k,l].
QMatrix tensor_product(const QMatrix& input_factor, const QMatrix& output_factor);

enum class BracketKind { commutator, anticommutator };

QMatrix bracket(const QMatrix& a, const QMatrix& b, BracketKind kind);

// exp(-i H duration / hbar) through the Hermitian eigendecomposition of H.
QMatrix matrix_exp_evolution(const QMatrix& h, double duration, double hbar);

enum class EigHint { analytic_simple, analytic_restricted, numeric };

struct EigResult {
  std::vector<cplx> eigenvalues;
  QMatrix eigenvectors;  // unitary, columns paired with eigenvalues
};

// Diagonalizes a normal (unitary or Hermitian) matrix. The analytic hints are
// valid only for matrices with the single-phase antidiagonal shape (dim 2) or
// the four-phase diagonal/antidiagonal hybrid shape (dim 4) and reproduce the
// closed-form eigensystems of those families.
EigResult eig_normal(const QMatrix& m, EigHint hint = EigHint::numeric);

// Multiplies each column by a unit phase so that its largest-magnitude entry
// (first such entry on ties) becomes real positive.
QMatrix canonicalize_columns(const QMatrix& m);

// min over real phi of max|e^{i phi} A - B|; zero iff A and B agree up to a
// global phase. Uses the trace-aligned phase, with a grid + golden-section
// fallback when tr(A^dag B) vanishes.
double phase_distance(const QMatrix& a, const QMatrix& b);

}  // namespace gateforge
