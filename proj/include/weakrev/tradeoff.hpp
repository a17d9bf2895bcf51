#pragma once

#include <vector>

#include "weakrev/measurement.hpp"

namespace weakrev {

/// Information gain against reversibility for one measurement set.
///
/// lhs = d(d+1)·G_max + (d−1)·P_rev and slack = 2d − lhs. The bound
/// lhs ≤ 2d holds for every complete set, with equality exactly when each
/// A_r†A_r = a_r|w_0⟩⟨w_0| + b_r·1 (always the case for qubits).
struct TradeoffReport {
  Index dimension = 0;
  std::size_t n_outcomes = 0;
  double info_gain = 0.0;
  double reversibility = 0.0;
  double lhs = 0.0;
  double slack = 0.0;
  /// Σ_r [(λ_0^r)² + (d−1)(λ_min^r)²], bounded by d.
  double singular_value_inequality_lhs = 0.0;
  bool saturated = false;

  /// Bound and singular-value inequality both hold within tol::kEquality.
  /// False signals a software defect.
  bool consistent() const;
};

inline constexpr double kSaturationTol = tol::kEquality;

TradeoffReport tradeoff_report(const MeasurementSet& set);

/// |6·G_max + P_rev − 4|; throws DimensionError unless d = 2.
double qubit_identity_residual(const MeasurementSet& set);

/// True iff every ‖A_r†A_r − b_r·1 − a_r|w_0^r⟩⟨w_0^r|‖_F < tol with
/// b_r = (λ_min^r)² and a_r = (λ_0^r)² − b_r.
bool is_saturating(const MeasurementSet& set, double tol = kSaturationTol);

/// Reports for `count` random_measurement_set draws, in draw order.
std::vector<TradeoffReport> ensemble_scan(Index d, std::size_t n_outcomes, std::size_t count, RandomSource& rng);

struct ScanAggregate {
  std::size_t count = 0;
  double min_slack = 0.0;
  double max_abs_slack = 0.0;
  /// max |6G + P − 4| over qubit draws; zero when d ≠ 2.
  double max_abs_residual_d2 = 0.0;
  double eq16_max = 0.0;
};

ScanAggregate summarize(const std::vector<TradeoffReport>& reports);

}  // namespace weakrev
