#pragma once

#include <vector>

#include "weakrev/measurement.hpp"
#include "weakrev/monte_carlo.hpp"

namespace weakrev {

/// One guess |ψ̃_r⟩ per outcome.
struct GuessStrategy {
  std::vector<PureState> guesses;
};

/// Coefficients of the U⊗U twirl: ∫ (U†⊗U†) O (U⊗U) dU = α₁·1⊗1 + α₂·S.
struct TwirlCoefficients {
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  ComplexMatrix reconstruct(Index d) const;
};

/// Right singular vector |w_0^r⟩ of the largest singular value; throws
/// DegenerateOperatorError for a zero operator.
PureState optimal_guess(const MeasurementSet& set, std::size_t r);

/// Optimal guesses for every outcome. Zero operators get |0⟩, which does not
/// affect the fidelity since they never fire.
GuessStrategy optimal_strategy(const MeasurementSet& set);

/// G_max = (d + Σ_r (λ_0^r)²) / (d(d+1)).
double information_gain(const MeasurementSet& set);

/// Σ_r p(r,ψ)|⟨ψ̃_r|ψ⟩|² for one input.
double estimation_fidelity(const MeasurementSet& set, const GuessStrategy& strategy, const PureState& psi);

/// Haar average of estimation_fidelity over pure inputs.
MonteCarloEstimate estimation_fidelity_mc(const MeasurementSet& set, const GuessStrategy& strategy,
                                          std::size_t samples, RandomSource& rng);

/// S(|i⟩⊗|j⟩) = |j⟩⊗|i⟩ on C^d ⊗ C^d; basis index of |i⟩⊗|j⟩ is i·d + j.
ComplexMatrix swap_operator(Index d);

TwirlCoefficients twirl_exact(const ComplexMatrix& o, Index d);

/// Sample average of (U†⊗U†) O (U⊗U) over Haar U.
ComplexMatrix twirl_mc(const ComplexMatrix& o, Index d, std::size_t samples, RandomSource& rng);

}  // namespace weakrev
