#pragma once

#include <vector>

#include "weakrev/measurement.hpp"

namespace weakrev {

/// A measurement realized as a unitary on system ⊗ ancilla followed by a
/// projective readout of the ancilla.
///
/// The composite basis index of |s⟩⊗|r⟩ is s·N + r. The unitary maps
/// |ψ⟩⊗|0⟩ to Σ_r A_r|ψ⟩⊗|r⟩.
struct DilatedMeasurement {
  Index system_dim = 0;
  Index ancilla_dim = 0;
  ComplexMatrix dilation_unitary;
  /// 1 ⊗ |r⟩⟨r| on the composite space.
  std::vector<ComplexMatrix> ancilla_projectors;

  std::size_t outcomes() const { return ancilla_projectors.size(); }

  /// U(|ψ⟩⊗|0⟩).
  ComplexVector evolve(const PureState& psi) const;
  /// ⟨r|_anc U(|ψ⟩⊗|0⟩), an unnormalized system vector.
  ComplexVector conditional_state(std::size_t r, const PureState& psi) const;
  double outcome_probability(std::size_t r, const PureState& psi) const;
  /// Kraus operator read back out of the unitary: (⟨r| U |0⟩)_{system}.
  ComplexMatrix kraus(std::size_t r) const;
};

/// Outcome-by-outcome evidence of whether the measurement extracts information.
///
/// Three routes are evaluated: cross terms between the images of basis-state
/// pairs (computational, and the ± and ±i combinations of each pair), the
/// spread of outcome probabilities over basis and Haar-random inputs, and the
/// Kraus-level test A_r†A_r ∝ 1. The Kraus test is authoritative.
struct InformationReport {
  std::vector<double> per_outcome_orthogonality_residual;
  std::vector<double> probability_spread;
  std::vector<double> kraus_residual;
  bool orthogonality_free = false;
  bool spread_free = false;
  bool kraus_free = false;
  bool information_free = false;

  bool routes_agree() const { return orthogonality_free == spread_free && spread_free == kraus_free; }
};

inline constexpr double kInformationFreeTol = tol::kEquality;

DilatedMeasurement dilate(const MeasurementSet& set);

InformationReport information_report(const DilatedMeasurement& dilated, std::size_t samples, RandomSource& rng);

/// Recovers the input from the post-readout system state of outcome r using
/// the unitary Σ_j |j⟩⟨φ_j|, where φ_j are the normalized conditional images
/// of the basis inputs. Throws InformationWasExtractedError unless every
/// outcome is information-free, and ZeroProbabilityError for a dead outcome.
PureState deterministic_retrieval(const DilatedMeasurement& dilated, std::size_t r, const PureState& residual);

}  // namespace weakrev
