#pragma once

#include <utility>
#include <vector>

#include "gateforge/qmatrix.hpp"
#include "gateforge/synthesis.hpp"

namespace gateforge {

enum class ProtocolShape { rectangular, raised_cosine, const_plus_cosine, sampled };

// Scalar time dependence f(t) multiplying an interaction Hamiltonian over the
// gate window [start, start + duration]. A normalized protocol integrates to
// the window duration.
struct Protocol {
  ProtocolShape shape = ProtocolShape::rectangular;
  double start = 0.0;
  double duration = 1.0;
  double scale = 1.0;
  // const_plus_cosine: f = scale * (a + b cos(omega (t - start) + phase))
  double a = 0.0;
  double b = 0.0;
  double omega = 0.0;
  double phase = 0.0;
  // sampled: strictly increasing (time, value) grid spanning the window,
  // evaluated by linear interpolation
  std::vector<std::pair<double, double>> samples;
  bool normalized = false;

  static Protocol make_rectangular(double start, double duration, double scale = 1.0);
  // f = scale * (1 - cos(2 pi (t - start) / duration))
  static Protocol make_raised_cosine(double start, double duration, double scale = 1.0);
  static Protocol make_const_plus_cosine(double start, double duration, double a,
                                         double b, double omega, double phase = 0.0,
                                         double scale = 1.0);
  static Protocol make_sampled(double start, double duration,
                               std::vector<std::pair<double, double>> samples,
                               double scale = 1.0);

  double value(double t) const;
};

// Exact integral over the window for the closed-form shapes, composite
// Simpson for sampled grids.
double protocol_integral(const Protocol& p);

// Rescales so the integral equals the window duration. A (near) zero integral
// cannot be rescaled: purely oscillatory protocols are rejected.
Protocol normalize_protocol(const Protocol& p);

// Interaction with per-term protocols, H(t) = sum_k f_k(t) H_k. All terms
// share one dimension and one window.
struct TimedHamiltonian {
  std::vector<std::pair<QMatrix, Protocol>> terms;
};

// Ordered product over uniform sub-intervals of exp(-i sum_k f_k(t_j) H_k dt
// / hbar), midpoint-sampled, latest time leftmost.
QMatrix evolve_time_ordered(const TimedHamiltonian& th, const TimeBase& t, long steps);

// exp(-i sum_k (integral of f_k) H_k / hbar); valid when the Hamiltonian
// commutes with itself at different times (see commutation_audit).
QMatrix evolve_unordered(const TimedHamiltonian& th, const TimeBase& t);

struct PairAudit {
  int first = 0;
  int second = 0;
  double commutator_norm = 0.0;
  double anticommutator_norm = 0.0;
  bool commute = false;
  bool anticommute = false;
};

struct AuditReport {
  std::vector<PairAudit> pairs;
  // every pairwise commutator vanishes, so H(t) commutes with itself at
  // different times for any scalar protocols
  bool ordering_free = true;
  double tolerance = 1e-12;
};

AuditReport commutation_audit(const TimedHamiltonian& th);

}  // namespace gateforge
