#include "weakrev/reversal.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace weakrev {

namespace {

void require_reversible(const MeasurementSet& set, std::size_t r, double threshold) {
  if (!is_reversible(set, r, threshold)) {
    throw NonReversibleError("outcome " + std::to_string(r) + " has smallest singular value " +
                             std::to_string(set[r].min_singular_value()) + ", not reversible");
  }
}

}  // namespace

bool is_reversible(const MeasurementSet& set, std::size_t r, double threshold) {
  return set.at(r).min_singular_value() > threshold;
}

ReversalKit reversing_operator(const MeasurementSet& set, std::size_t r, double threshold) {
  require_reversible(set, r, threshold);
  const auto& s = set[r].svd();
  const double eta = s.min_value();
  const RealVector ratio = s.values.cwiseInverse() * eta;
  // R†R = Σ (eta/λ_i)² |v_i⟩⟨v_i|, so its positive completion is diagonal in the same basis.
  const RealVector completion = (1.0 - ratio.array().square()).max(0.0).sqrt().matrix();

  ReversalKit kit;
  kit.outcome = r;
  kit.eta = eta;
  kit.reversing_operator = s.right * ratio.asDiagonal() * s.left.adjoint();
  kit.complement_operator = s.left * completion.asDiagonal() * s.left.adjoint();
  return kit;
}

double reversal_probability(const MeasurementSet& set, std::size_t r, const PureState& psi, double threshold) {
  require_reversible(set, r, threshold);
  const double p = outcome_probability(set, r, psi);
  if (p <= 1e-12) throw ZeroProbabilityError("outcome " + std::to_string(r) + " cannot occur for this input");
  const double lmin = set[r].min_singular_value();
  return lmin * lmin / p;
}

double reversibility(const MeasurementSet& set) {
  double total = 0.0;
  for (const auto& op : set) total += op.min_singular_value() * op.min_singular_value();
  return total;
}

double disturbance(const MeasurementSet& set) { return 1.0 - reversibility(set); }

ComplexMatrix erasing_operator(const MeasurementSet& set, std::size_t r, double threshold) {
  require_reversible(set, r, threshold);
  const auto& s = set[r].svd();
  const RealVector ratio = s.values.cwiseInverse() * s.min_value();
  return s.left * ratio.asDiagonal() * s.left.adjoint();
}

EraseResult apply_erasure(const MeasurementSet& set, std::size_t r, const PureState& psi, double threshold) {
  const ComplexMatrix e = erasing_operator(set, r, threshold);
  const PureState post = post_measurement_state(set, r, psi);
  const ComplexVector out = e * post.amplitudes();
  return {out.squaredNorm(), PureState::normalized(out)};
}

ReversalSimulation simulate_measure_and_reverse(const MeasurementSet& set, const PureState& psi,
                                                std::size_t trials, RandomSource& rng, double threshold) {
  std::vector<std::optional<ReversalKit>> kits(set.size());
  for (std::size_t r = 0; r < set.size(); ++r) {
    if (is_reversible(set, r, threshold)) kits[r] = reversing_operator(set, r, threshold);
  }

  ReversalSimulation sim;
  sim.success = monte_carlo(trials, rng, [&](RandomSource& stream) {
    const SampledOutcome first = sample_outcome(set, psi, stream);
    const auto& kit = kits[first.outcome];
    if (!kit) return 0.0;
    const ComplexVector undone = kit->reversing_operator * first.state.amplitudes();
    const double p_success = undone.squaredNorm();
    if (!(stream.uniform() < p_success)) return 0.0;
    const double deficit = 1.0 - fidelity(PureState::normalized(undone), psi);
    sim.max_fidelity_deficit = std::max(sim.max_fidelity_deficit, deficit);
    ++sim.successes;
    return 1.0;
  });
  return sim;
}

}  // namespace weakrev
