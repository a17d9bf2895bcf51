#include "weakrev/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace weakrev {

namespace {

constexpr double kZeroProbability = 1e-12;

void check_outcome(const MeasurementSet& set, std::size_t r) {
  if (r >= set.size()) {
    throw IndexError("outcome index " + std::to_string(r) + " out of range for " + std::to_string(set.size()) +
                     " outcomes");
  }
}

}  // namespace

MeasurementOperator::MeasurementOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw DimensionError("measurement operator must be a non-empty square matrix");
  }
  if (!matrix_.allFinite()) throw DomainError("measurement operator has non-finite entries");
  svd_ = weakrev::svd(matrix_);
}

ComplexMatrix MeasurementOperator::diagonal_part() const {
  return svd_.left * svd_.values.asDiagonal() * svd_.left.adjoint();
}

ComplexMatrix MeasurementOperator::isometric_part() const { return svd_.left * svd_.right.adjoint(); }

double completeness_residual(std::span<const ComplexMatrix> matrices, Index d) {
  ComplexMatrix sum = -ComplexMatrix::Identity(d, d);
  for (const auto& m : matrices) sum.noalias() += m.adjoint() * m;
  return sum.norm();
}

MeasurementSet::MeasurementSet(Index d, std::vector<ComplexMatrix> matrices, double completeness_tol)
    : dimension_(d) {
  if (d <= 0) throw DimensionError("measurement set dimension must be positive");
  if (matrices.empty()) throw DimensionError("measurement set needs at least one operator");
  for (const auto& m : matrices) {
    if (m.rows() != d || m.cols() != d) {
      throw DimensionError("operator of size " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                           " in a set of dimension " + std::to_string(d));
    }
  }
  completeness_residual_ = weakrev::completeness_residual(matrices, d);
  if (!(completeness_residual_ < completeness_tol)) throw CompletenessError(completeness_residual_);

  operators_.reserve(matrices.size());
  for (auto& m : matrices) operators_.emplace_back(std::move(m));

  const double sum_rule = std::abs(singular_value_sum() - static_cast<double>(d));
  // |tr(Σ A†A − 1)| ≤ √d·‖Σ A†A − 1‖_F
  const double sum_rule_tol = std::max(tol::kSumRule, std::sqrt(static_cast<double>(d)) * completeness_tol);
  if (!(sum_rule < sum_rule_tol)) throw CompletenessError(sum_rule);
}

const MeasurementOperator& MeasurementSet::at(std::size_t r) const {
  check_outcome(*this, r);
  return operators_[r];
}

double MeasurementSet::singular_value_sum() const {
  double total = 0.0;
  for (const auto& op : operators_) total += op.svd().values.squaredNorm();
  return total;
}

MeasurementSet MeasurementSet::transformed(const ComplexMatrix& left, const ComplexMatrix& right) const {
  std::vector<ComplexMatrix> out;
  out.reserve(size());
  for (const auto& op : operators_) out.push_back(left * op.matrix() * right);
  return MeasurementSet(dimension_, std::move(out));
}

double outcome_probability(const MeasurementSet& set, std::size_t r, const PureState& psi) {
  check_outcome(set, r);
  if (psi.dimension() != set.dimension()) throw DimensionError("state dimension does not match measurement set");
  return (set[r].matrix() * psi.amplitudes()).squaredNorm();
}

double outcome_probability(const MeasurementSet& set, std::size_t r, const DensityMatrix& rho) {
  check_outcome(set, r);
  if (rho.dimension() != set.dimension()) throw DimensionError("state dimension does not match measurement set");
  return (rho.matrix() * set[r].effect()).trace().real();
}

PureState post_measurement_state(const MeasurementSet& set, std::size_t r, const PureState& psi) {
  const double p = outcome_probability(set, r, psi);
  if (p <= kZeroProbability) {
    throw ZeroProbabilityError("outcome " + std::to_string(r) + " has probability " + std::to_string(p));
  }
  return PureState::normalized(set[r].matrix() * psi.amplitudes());
}

SampledOutcome sample_outcome(const MeasurementSet& set, const PureState& psi, RandomSource& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t chosen = set.size();
  std::size_t last_possible = 0;
  for (std::size_t r = 0; r < set.size(); ++r) {
    const double p = outcome_probability(set, r, psi);
    if (p > kZeroProbability) last_possible = r;
    cumulative += p;
    if (chosen == set.size() && u < cumulative && p > kZeroProbability) chosen = r;
  }
  // round-off can leave u just above the accumulated total
  if (chosen == set.size()) chosen = last_possible;
  return {chosen, post_measurement_state(set, chosen, psi)};
}

MeasurementSet random_measurement_set(Index d, std::size_t n_outcomes, RandomSource& rng) {
  if (d <= 0 || n_outcomes == 0) throw DimensionError("random_measurement_set: sizes must be positive");
  const Index n = static_cast<Index>(n_outcomes);
  const ComplexMatrix u = haar_unitary(n * d, rng);
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(n_outcomes);
  for (Index r = 0; r < n; ++r) blocks.push_back(u.block(r * d, 0, d, d));
  return MeasurementSet(d, std::move(blocks));
}

MeasurementSet example_von_neumann(Index d) {
  if (d <= 0) throw DimensionError("example_von_neumann: dimension must be positive");
  std::vector<ComplexMatrix> projectors;
  for (Index i = 0; i < d; ++i) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(i, i) = 1.0;
    projectors.push_back(std::move(p));
  }
  return MeasurementSet(d, std::move(projectors));
}

MeasurementSet example_weak_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("example_weak_eta: eta must lie in [0, 1]");
  if (eta == 0.0) return MeasurementSet(2, {ComplexMatrix::Identity(2, 2)});
  ComplexMatrix detect = ComplexMatrix::Zero(2, 2);
  detect(1, 1) = std::sqrt(eta);
  ComplexMatrix partial = ComplexMatrix::Zero(2, 2);
  partial(0, 0) = 1.0;
  partial(1, 1) = std::sqrt(1.0 - eta);
  return MeasurementSet(2, {detect, partial});
}

MeasurementSet saturating_measurement_set(Index d, double a) {
  if (d <= 0) throw DimensionError("saturating_measurement_set: dimension must be positive");
  if (!(a >= 0.0 && a <= 1.0)) throw DomainError("saturating_measurement_set: a must lie in [0, 1]");
  const double b = (1.0 - a) / static_cast<double>(d);
  std::vector<ComplexMatrix> ops;
  for (Index r = 0; r < d; ++r) {
    ComplexMatrix m = ComplexMatrix::Identity(d, d) * std::sqrt(b);
    m(r, r) = std::sqrt(a + b);
    ops.push_back(std::move(m));
  }
  return MeasurementSet(d, std::move(ops));
}

MeasurementSet unitary_measurement(const ComplexMatrix& u) { return MeasurementSet(u.rows(), {u}); }

}  // namespace weakrev
