#include "gateforge/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gateforge {

namespace {

void check_window(double start, double duration) {
  if (!std::isfinite(start)) throw std::invalid_argument("protocol start must be finite");
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw std::invalid_argument("protocol duration must be positive");
}

void check_samples(const Protocol& p) {
  if (p.samples.size() < 3)
    throw GridError("sampled protocol needs at least 3 grid points");
  for (size_t i = 1; i < p.samples.size(); ++i)
    if (!(p.samples[i].first > p.samples[i - 1].first))
      throw GridError("sampled protocol grid must be strictly increasing");
  const double eps = 1e-9 * p.duration;
  if (p.samples.front().first > p.start + eps ||
      p.samples.back().first < p.start + p.duration - eps)
    throw GridError("sampled protocol grid does not cover the window");
}

}  // namespace

Protocol Protocol::make_rectangular(double start, double duration, double scale) {
  check_window(start, duration);
  Protocol p;
  p.shape = ProtocolShape::rectangular;
  p.start = start;
  p.duration = duration;
  p.scale = scale;
  return p;
}

Protocol Protocol::make_raised_cosine(double start, double duration, double scale) {
  Protocol p = make_rectangular(start, duration, scale);
  p.shape = ProtocolShape::raised_cosine;
  return p;
}

Protocol Protocol::make_const_plus_cosine(double start, double duration, double a,
                                          double b, double omega, double phase,
                                          double scale) {
  Protocol p = make_rectangular(start, duration, scale);
  p.shape = ProtocolShape::const_plus_cosine;
  p.a = a;
  p.b = b;
  p.omega = omega;
  p.phase = phase;
  return p;
}

Protocol Protocol::make_sampled(double start, double duration,
                                std::vector<std::pair<double, double>> samples,
                                double scale) {
  Protocol p = make_rectangular(start, duration, scale);
  p.shape = ProtocolShape::sampled;
  p.samples = std::move(samples);
  check_samples(p);
  return p;
}

double Protocol::value(double t) const {
  switch (shape) {
    case ProtocolShape::rectangular:
      return scale;
    case ProtocolShape::raised_cosine:
      return scale * (1.0 - std::cos(2.0 * kPi * (t - start) / duration));
    case ProtocolShape::const_plus_cosine:
      return scale * (a + b * std::cos(omega * (t - start) + phase));
    case ProtocolShape::sampled: {
      check_samples(*this);
      if (t <= samples.front().first) return scale * samples.front().second;
      if (t >= samples.back().first) return scale * samples.back().second;
      auto hi = std::upper_bound(
          samples.begin(), samples.end(), t,
          [](double x, const std::pair<double, double>& s) { return x < s.first; });
      auto lo = hi - 1;
      const double w = (t - lo->first) / (hi->first - lo->first);
      return scale * ((1.0 - w) * lo->second + w * hi->second);
    }
  }
  return 0.0;
}

double protocol_integral(const Protocol& p) {
  switch (p.shape) {
    case ProtocolShape::rectangular:
      return p.scale * p.duration;
    case ProtocolShape::raised_cosine:
      // the cosine spans one full period and integrates to zero
      return p.scale * p.duration;
    case ProtocolShape::const_plus_cosine: {
      if (p.omega == 0.0)
        return p.scale * (p.a + p.b * std::cos(p.phase)) * p.duration;
      const double osc =
          (std::sin(p.omega * p.duration + p.phase) - std::sin(p.phase)) / p.omega;
      return p.scale * (p.a * p.duration + p.b * osc);
    }
    case ProtocolShape::sampled: {
      check_samples(p);
      // composite Simpson over pairs of intervals (exact on quadratics even
      // for uneven spacing), trapezoid for a trailing odd interval
      double total = 0.0;
      size_t i = 0;
      const size_t n = p.samples.size();
      for (; i + 2 < n; i += 2) {
        const auto& [t0, f0] = p.samples[i];
        const auto& [t1, f1] = p.samples[i + 1];
        const auto& [t2, f2] = p.samples[i + 2];
        const double h0 = t1 - t0, h1 = t2 - t1, h = t2 - t0;
        total += h / 6.0 *
                 ((2.0 - h1 / h0) * f0 + h * h / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2);
      }
      if (i + 1 < n) {
        const auto& [t0, f0] = p.samples[i];
        const auto& [t1, f1] = p.samples[i + 1];
        total += 0.5 * (t1 - t0) * (f0 + f1);
      }
      return p.scale * total;
    }
  }
  return 0.0;
}

Protocol normalize_protocol(const Protocol& p) {
  const double integral = protocol_integral(p);
  if (std::abs(integral) < 1e-12 * p.duration)
    throw PurelyOscillatoryError(
        "protocol integrates to (near) zero over the window and cannot be "
        "normalized; it must have a constant or other non-oscillatory part");
  Protocol q = p;
  q.scale = p.scale * (p.duration / integral);
  q.normalized = true;
  return q;
}

namespace {

QMatrix hermitize(const QMatrix& m) { return 0.5 * (m + m.adjoint()); }

void check_terms(const TimedHamiltonian& th) {
  if (th.terms.empty())
    throw std::invalid_argument("TimedHamiltonian: at least one term required");
  const int dim = th.terms.front().first.dim();
  const double start = th.terms.front().second.start;
  const double duration = th.terms.front().second.duration;
  for (const auto& [h, p] : th.terms) {
    if (h.dim() != dim)
      throw DimensionError("TimedHamiltonian: terms must share one dimension");
    if (!is_hermitian(h, 1e-12))
      throw HermiticityError("TimedHamiltonian: term is not Hermitian");
    if (std::abs(p.start - start) > 1e-12 || std::abs(p.duration - duration) > 1e-12)
      throw std::invalid_argument("TimedHamiltonian: protocols must share one window");
  }
}

}  // namespace

QMatrix evolve_time_ordered(const TimedHamiltonian& th, const TimeBase& t, long steps) {
  check_terms(th);
  if (steps < 1) throw std::invalid_argument("evolve_time_ordered: steps must be >= 1");
  const double start = th.terms.front().second.start;
  const double duration = th.terms.front().second.duration;
  if (std::abs(duration - t.delta_t) > 1e-12 * std::max(1.0, t.delta_t))
    throw std::invalid_argument(
        "evolve_time_ordered: protocol window does not match delta_t");
  const int dim = th.terms.front().first.dim();
  const double dt = duration / static_cast<double>(steps);
  QMatrix u = QMatrix::identity(dim);
  for (long j = 0; j < steps; ++j) {
    const double tj = start + (static_cast<double>(j) + 0.5) * dt;
    QMatrix heff = QMatrix::zero(dim);
    for (const auto& [h, p] : th.terms) heff = heff + p.value(tj) * h;
    u = matrix_exp_evolution(hermitize(heff), dt, t.hbar) * u;
  }
  return u;
}

QMatrix evolve_unordered(const TimedHamiltonian& th, const TimeBase& t) {
  check_terms(th);
  const int dim = th.terms.front().first.dim();
  QMatrix total = QMatrix::zero(dim);
  for (const auto& [h, p] : th.terms) total = total + protocol_integral(p) * h;
  if (total.max_abs() == 0.0) return QMatrix::identity(dim);
  // exp(-i (sum_k I_k H_k) / hbar): fold the accumulated integral into a unit
  // duration
  return matrix_exp_evolution(hermitize(total), 1.0, t.hbar);
}

AuditReport commutation_audit(const TimedHamiltonian& th) {
  check_terms(th);
  AuditReport report;
  const int n = static_cast<int>(th.terms.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PairAudit pa;
      pa.first = i;
      pa.second = j;
      pa.commutator_norm =
          bracket(th.terms[i].first, th.terms[j].first, BracketKind::commutator).max_abs();
      pa.anticommutator_norm =
          bracket(th.terms[i].first, th.terms[j].first, BracketKind::anticommutator)
              .max_abs();
      pa.commute = pa.commutator_norm <= report.tolerance;
      pa.anticommute = pa.anticommutator_norm <= report.tolerance;
      if (!pa.commute) report.ordering_free = false;
      report.pairs.push_back(pa);
    }
  return report;
}

}  // namespace gateforge
