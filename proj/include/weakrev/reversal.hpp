#pragma once

#include "weakrev/measurement.hpp"
#include "weakrev/monte_carlo.hpp"

namespace weakrev {

/// Outcomes whose smallest singular value is at or below this are treated as
/// non-reversible.
inline constexpr double kReversibleThreshold = 1e-8;

/// Optimal reversing operator for one outcome together with the positive
/// operator completing it to a two-outcome measurement.
struct ReversalKit {
  std::size_t outcome = 0;
  ComplexMatrix reversing_operator;   // R with R·A_r = eta·1
  ComplexMatrix complement_operator;  // √(1 − R†R)
  double eta = 0.0;                   // λ_min of A_r, chosen real positive
};

struct EraseResult {
  double erase_probability = 0.0;
  PureState residual_state;
};

struct ReversalSimulation {
  MonteCarloEstimate success;
  std::size_t successes = 0;
  /// Largest 1 − |⟨ψ|ψ_recovered⟩|² over successful trials.
  double max_fidelity_deficit = 0.0;
};

bool is_reversible(const MeasurementSet& set, std::size_t r, double threshold = kReversibleThreshold);

/// R = λ_min Σ_i λ_i⁻¹ |w_i⟩⟨v_i|. Throws NonReversibleError.
ReversalKit reversing_operator(const MeasurementSet& set, std::size_t r, double threshold = kReversibleThreshold);

/// λ_min² / p(r,ψ), the success probability of the optimal reversal after outcome r.
double reversal_probability(const MeasurementSet& set, std::size_t r, const PureState& psi,
                            double threshold = kReversibleThreshold);

/// P_rev = Σ_r (λ_min^r)².
double reversibility(const MeasurementSet& set);

/// 1 − P_rev.
double disturbance(const MeasurementSet& set);

/// E = Σ_i (λ_min/λ_i)|v_i⟩⟨v_i|. It acts on the post-measurement state, so it
/// is diagonal in the output (left) singular basis of A_r.
ComplexMatrix erasing_operator(const MeasurementSet& set, std::size_t r, double threshold = kReversibleThreshold);

/// Applies E to the post-measurement state of outcome r. The residual state is
/// Σ|v_i⟩⟨w_i| applied to ψ, exactly (no phase ambiguity).
EraseResult apply_erasure(const MeasurementSet& set, std::size_t r, const PureState& psi,
                          double threshold = kReversibleThreshold);

/// Measure, then attempt the two-outcome reversal {R, √(1−R†R)} for the
/// observed outcome. Success means the R branch fired.
ReversalSimulation simulate_measure_and_reverse(const MeasurementSet& set, const PureState& psi,
                                                std::size_t trials, RandomSource& rng,
                                                double threshold = kReversibleThreshold);

}  // namespace weakrev
