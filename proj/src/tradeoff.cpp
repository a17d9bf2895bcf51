#include "weakrev/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakrev/infogain.hpp"
#include "weakrev/reversal.hpp"

namespace weakrev {

bool TradeoffReport::consistent() const {
  return slack >= -tol::kEquality &&
         singular_value_inequality_lhs <= static_cast<double>(dimension) + tol::kEquality;
}

TradeoffReport tradeoff_report(const MeasurementSet& set) {
  const double d = static_cast<double>(set.dimension());
  TradeoffReport rep;
  rep.dimension = set.dimension();
  rep.n_outcomes = set.size();
  rep.info_gain = information_gain(set);
  rep.reversibility = reversibility(set);
  rep.lhs = d * (d + 1.0) * rep.info_gain + (d - 1.0) * rep.reversibility;
  rep.slack = 2.0 * d - rep.lhs;
  for (const auto& op : set) {
    const double top = op.max_singular_value();
    const double bottom = op.min_singular_value();
    rep.singular_value_inequality_lhs += top * top + (d - 1.0) * bottom * bottom;
  }
  rep.saturated = rep.slack < kSaturationTol;
  return rep;
}

double qubit_identity_residual(const MeasurementSet& set) {
  if (set.dimension() != 2) throw DimensionError("qubit_identity_residual requires a qubit measurement set");
  return std::abs(6.0 * information_gain(set) + reversibility(set) - 4.0);
}

bool is_saturating(const MeasurementSet& set, double tol) {
  const Index d = set.dimension();
  for (const auto& op : set) {
    const auto& s = op.svd();
    const double b = s.min_value() * s.min_value();
    const double a = s.max_value() * s.max_value() - b;
    const ComplexVector w0 = s.right.col(0);
    const ComplexMatrix model = b * ComplexMatrix::Identity(d, d) + a * (w0 * w0.adjoint());
    if (!((op.effect() - model).norm() < tol)) return false;
  }
  return true;
}

std::vector<TradeoffReport> ensemble_scan(Index d, std::size_t n_outcomes, std::size_t count, RandomSource& rng) {
  std::vector<TradeoffReport> reports;
  reports.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    reports.push_back(tradeoff_report(random_measurement_set(d, n_outcomes, rng)));
  }
  return reports;
}

ScanAggregate summarize(const std::vector<TradeoffReport>& reports) {
  ScanAggregate agg;
  agg.count = reports.size();
  if (reports.empty()) return agg;
  agg.min_slack = std::numeric_limits<double>::infinity();
  agg.eq16_max = -std::numeric_limits<double>::infinity();
  for (const auto& r : reports) {
    agg.min_slack = std::min(agg.min_slack, r.slack);
    agg.max_abs_slack = std::max(agg.max_abs_slack, std::abs(r.slack));
    agg.eq16_max = std::max(agg.eq16_max, r.singular_value_inequality_lhs);
    if (r.dimension == 2) {
      // lhs = 6G + P for qubits
      agg.max_abs_residual_d2 = std::max(agg.max_abs_residual_d2, std::abs(r.lhs - 4.0));
    }
  }
  return agg;
}

}  // namespace weakrev
