#pragma once

#include "gateforge/qmatrix.hpp"

namespace gateforge {

// Wraps an angle into the canonical interval (-pi, pi].
double canonical_angle(double x);

// Phases of the single-qubit NOT: |1> -> e^{i alpha}|0>, |0> -> e^{i beta}|1>.
struct SimpleNotParams {
  double alpha = 0.0;
  double beta = 0.0;

  SimpleNotParams(double alpha_, double beta_);
};

// Eight-parameter family covering every unitary of the extended-NOT block
// shape. Omega and Upsilon are mixing angles restricted to [0, pi/2]; the six
// phases are stored canonically in (-pi, pi].
struct ExtendedGeneralParams {
  double chi = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double rho = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  double Omega = 0.0;
  double Upsilon = 0.0;

  ExtendedGeneralParams(double chi_, double beta_, double alpha_, double rho_,
                        double eta_, double delta_, double Omega_, double Upsilon_);
};

// Four-phase restriction: one phase factor per column, the analytically
// tractable slice of the general family (Omega = Upsilon = 0).
struct ExtendedRestrictedParams {
  double alpha = 0.0;
  double beta = 0.0;
  double rho = 0.0;
  double delta = 0.0;

  ExtendedRestrictedParams(double alpha_, double beta_, double rho_, double delta_);
};

// [[0, e^{i beta}], [e^{i alpha}, 0]]
QMatrix build_simple_not(const SimpleNotParams& p);

QMatrix build_extended_general(const ExtendedGeneralParams& p);

// Nonzeros at (1,4)=e^{i beta}, (2,2)=e^{i rho}, (3,3)=e^{i delta},
// (4,1)=e^{i alpha} (1-based).
QMatrix build_extended_restricted(const ExtendedRestrictedParams& p);

// True iff U maps Input-up states into the Output-down block and vice versa:
// entries (1,1),(1,2),(2,3),(2,4),(3,1),(3,2),(4,3),(4,4) all below tol.
bool is_not_shape(const QMatrix& u, double tol);

// Inverse of build_extended_general. Requires a unitary of NOT shape; phases
// attached to vanishing moduli follow a fixed zero convention so round trips
// are well defined. Residual above 1e-9 raises FitError.
ExtendedGeneralParams fit_extended_general(const QMatrix& u);

}  // namespace gateforge
