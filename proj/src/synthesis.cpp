#include "gateforge/synthesis.hpp"

#include <cmath>
#include <sstream>

namespace gateforge {

TimeBase::TimeBase(double delta_t_, double hbar_) : delta_t(delta_t_), hbar(hbar_) {
  if (!(delta_t > 0.0) || !std::isfinite(delta_t))
    throw std::invalid_argument("TimeBase: delta_t must be positive");
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw std::invalid_argument("TimeBase: hbar must be positive");
}

double EnergySpectrum::splitting() const {
  return std::abs(levels.at(0) - levels.at(1));
}

EnergySpectrum energies_simple(const SimpleNotParams& p, const BranchChoice& b,
                               const TimeBase& t) {
  const double unit = t.hbar / t.delta_t;
  const double avg = -0.5 * unit * (p.alpha + p.beta);
  EnergySpectrum s;
  s.levels = {avg + 2.0 * kPi * unit * b.N1, avg + 2.0 * kPi * unit * (b.N2 + 0.5)};
  return s;
}

EnergySpectrum energies_extended(const ExtendedRestrictedParams& p,
                                 const BranchChoice& b, const TimeBase& t) {
  const double unit = t.hbar / t.delta_t;
  EnergySpectrum s = energies_simple(SimpleNotParams(p.alpha, p.beta), b, t);
  s.levels.push_back(unit * (-p.rho + 2.0 * kPi * b.N3));
  s.levels.push_back(unit * (-p.delta + 2.0 * kPi * b.N4));
  return s;
}

namespace {

QMatrix hermitize(const QMatrix& m) { return 0.5 * (m + m.adjoint()); }

// H = T diag(E) T^dag for a unitary T and real levels.
QMatrix assemble_hamiltonian(const QMatrix& t, const std::vector<double>& levels) {
  const int n = t.dim();
  QMatrix h = QMatrix::zero(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) += levels[k] * t(i, k) * std::conj(t(j, k));
  return hermitize(h);
}

HamiltonianResult finish(QMatrix h, EnergySpectrum spectrum, const TimeBase& t,
                         bool drop_identity) {
  HamiltonianResult r;
  r.decomposition = pauli_decompose(h);
  if (drop_identity) {
    const PauliLabel one = r.decomposition.identity_label();
    r.dropped_identity_coefficient = r.decomposition.coefficient(one);
    r.decomposition.terms.erase(one);
    h = h - r.dropped_identity_coefficient * QMatrix::identity(h.dim());
    for (double& e : spectrum.levels) e -= r.dropped_identity_coefficient;
    r.expected_global_phase =
        canonical_angle(-r.dropped_identity_coefficient * t.delta_t / t.hbar);
  }
  r.H = std::move(h);
  r.spectrum = std::move(spectrum);
  return r;
}

}  // namespace

HamiltonianResult synthesize_simple(const SimpleNotParams& p, const BranchChoice& b,
                                    const TimeBase& t, const SynthesisOptions& opts) {
  const BranchChoice branch = opts.minimize_splitting ? choose_branch_min_splitting(b) : b;
  const EnergySpectrum spectrum = energies_simple(p, branch, t);
  const QMatrix vectors = eig_normal(build_simple_not(p), EigHint::analytic_simple).eigenvectors;
  return finish(assemble_hamiltonian(vectors, spectrum.levels), spectrum, t,
                opts.drop_identity);
}

HamiltonianResult synthesize_extended(const ExtendedRestrictedParams& p,
                                      const BranchChoice& b, const TimeBase& t,
                                      const SynthesisOptions& opts) {
  const BranchChoice branch = opts.minimize_splitting ? choose_branch_min_splitting(b) : b;
  EnergySpectrum spectrum = energies_extended(p, branch, t);
  if (opts.require_no_linear) {
    const double k3 = p.rho - 2.0 * kPi * branch.N3;
    const double k4 = p.delta - 2.0 * kPi * branch.N4;
    if (std::abs(k3 - k4) > 1e-10) {
      std::ostringstream msg;
      msg << "require_no_linear: E3 != E4 for rho=" << p.rho << ", delta=" << p.delta
          << ", N3=" << branch.N3 << ", N4=" << branch.N4
          << "; alignment needs rho == delta with N3 == N4";
      throw LinearTermError(msg.str());
    }
    spectrum.levels[3] = spectrum.levels[2];  // aligned within tolerance
  }
  const QMatrix vectors =
      eig_normal(build_extended_restricted(p), EigHint::analytic_restricted).eigenvectors;
  return finish(assemble_hamiltonian(vectors, spectrum.levels), spectrum, t,
                opts.drop_identity);
}

HamiltonianResult synthesize_canonical_extended(double ising, int N, double gamma,
                                                const TimeBase& t) {
  if (!std::isfinite(ising)) throw std::invalid_argument("ising coupling must be finite");
  if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
  const double x = kPi * t.hbar / t.delta_t * (N - 0.5);
  const QMatrix xx = label_matrix(PauliLabel("XX"));
  const QMatrix yy = label_matrix(PauliLabel("YY"));
  const QMatrix xy = label_matrix(PauliLabel("XY"));
  const QMatrix yx = label_matrix(PauliLabel("YX"));
  QMatrix h = (-ising) * label_matrix(PauliLabel("ZZ")) +
              (0.5 * x) * (std::cos(gamma) * (xx - yy) + std::sin(gamma) * (xy + yx));
  HamiltonianResult r;
  r.H = hermitize(h);
  r.decomposition = pauli_decompose(r.H);
  r.spectrum.levels = {-ising + x, -ising - x, ising, ising};
  return r;
}

BranchChoice choose_branch_min_splitting(const BranchChoice& base) {
  BranchChoice b = base;
  b.N1 = base.N2;  // N = 0, preferred over N = 1
  return b;
}

VerificationReport verify_gate(const HamiltonianResult& r, const QMatrix& target,
                               const TimeBase& t, bool up_to_phase, double tolerance) {
  if (r.H.dim() != target.dim())
    throw DimensionError("verify_gate: dimension mismatch");
  VerificationReport report;
  report.up_to_phase = up_to_phase;
  report.tolerance = tolerance;
  report.evolution = matrix_exp_evolution(r.H, t.delta_t, t.hbar);
  report.exact_distance = max_abs_diff(report.evolution, target);
  report.phase_dist = phase_distance(report.evolution, target);
  const cplx overlap = (report.evolution.adjoint() * target).trace();
  report.realized_phase = std::abs(overlap) > 1e-12 ? std::arg(overlap) : 0.0;
  report.pass = (up_to_phase ? report.phase_dist : report.exact_distance) <= tolerance;

  if (target.dim() == 4) {
    report.behavioral_checked = true;
    for (int in = 0; in < 4; ++in) {
      const StateVector out = apply(report.evolution, StateVector::basis_state(4, in));
      // Input up (components 1,2) must land with components 1,3 zero;
      // Input down (components 3,4) with components 2,4 zero
      const int z0 = in < 2 ? 0 : 1;
      const int z1 = in < 2 ? 2 : 3;
      if (std::abs(out.amplitudes[z0]) > tolerance ||
          std::abs(out.amplitudes[z1]) > tolerance)
        report.behavioral_pass = false;
    }
  }
  return report;
}

}  // namespace gateforge
