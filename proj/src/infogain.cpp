#include "weakrev/infogain.hpp"

#include <string>

namespace weakrev {

namespace {

void check_two_copy(const ComplexMatrix& o, Index d) {
  if (d <= 0) throw DimensionError("twirl: dimension must be positive");
  if (o.rows() != d * d || o.cols() != d * d) {
    throw DimensionError("twirl: operator must be " + std::to_string(d * d) + "x" + std::to_string(d * d));
  }
}

}  // namespace

ComplexMatrix TwirlCoefficients::reconstruct(Index d) const {
  return alpha1 * ComplexMatrix::Identity(d * d, d * d) + alpha2 * swap_operator(d);
}

PureState optimal_guess(const MeasurementSet& set, std::size_t r) {
  const auto& op = set.at(r);
  if (op.is_zero()) throw DegenerateOperatorError("outcome " + std::to_string(r) + " is a zero operator");
  return PureState::normalized(op.svd().right.col(0));
}

GuessStrategy optimal_strategy(const MeasurementSet& set) {
  GuessStrategy s;
  s.guesses.reserve(set.size());
  for (std::size_t r = 0; r < set.size(); ++r) {
    s.guesses.push_back(set[r].is_zero() ? PureState::basis(set.dimension(), 0) : optimal_guess(set, r));
  }
  return s;
}

double information_gain(const MeasurementSet& set) {
  const double d = static_cast<double>(set.dimension());
  double top = 0.0;
  for (const auto& op : set) top += op.max_singular_value() * op.max_singular_value();
  return (d + top) / (d * (d + 1.0));
}

double estimation_fidelity(const MeasurementSet& set, const GuessStrategy& strategy, const PureState& psi) {
  if (strategy.guesses.size() != set.size()) throw DimensionError("strategy needs one guess per outcome");
  double total = 0.0;
  for (std::size_t r = 0; r < set.size(); ++r) {
    total += outcome_probability(set, r, psi) * fidelity(strategy.guesses[r], psi);
  }
  return total;
}

MonteCarloEstimate estimation_fidelity_mc(const MeasurementSet& set, const GuessStrategy& strategy,
                                          std::size_t samples, RandomSource& rng) {
  if (strategy.guesses.size() != set.size()) throw DimensionError("strategy needs one guess per outcome");
  for (const auto& g : strategy.guesses) {
    if (g.dimension() != set.dimension()) throw DimensionError("guess dimension does not match measurement set");
  }
  return monte_carlo(samples, rng, [&](RandomSource& stream) {
    return estimation_fidelity(set, strategy, random_pure_state(set.dimension(), stream));
  });
}

ComplexMatrix swap_operator(Index d) {
  if (d <= 0) throw DimensionError("swap_operator: dimension must be positive");
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  }
  return s;
}

TwirlCoefficients twirl_exact(const ComplexMatrix& o, Index d) {
  check_two_copy(o, d);
  const double dd = static_cast<double>(d);
  const double tr_o = o.trace().real();
  const double tr_os = (o * swap_operator(d)).trace().real();
  if (d == 1) {
    // 1⊗1 and S coincide; put everything on the identity.
    return {tr_o, 0.0};
  }
  const double denom = dd * dd * (dd * dd - 1.0);
  return {(dd * dd * tr_o - dd * tr_os) / denom, (dd * dd * tr_os - dd * tr_o) / denom};
}

ComplexMatrix twirl_mc(const ComplexMatrix& o, Index d, std::size_t samples, RandomSource& rng) {
  check_two_copy(o, d);
  if (samples == 0) throw DomainError("twirl_mc: samples must be positive");
  const RandomSource keyed(rng.seed(), rng.next_u64());
  const std::size_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  ComplexMatrix total = ComplexMatrix::Zero(d * d, d * d);
  ComplexMatrix block_sum(d * d, d * d);
  for (std::size_t b = 0; b < blocks; ++b) {
    RandomSource stream = keyed.derive(b);
    const std::size_t count = std::min(kMonteCarloBlock, samples - b * kMonteCarloBlock);
    block_sum.setZero();
    for (std::size_t i = 0; i < count; ++i) {
      const ComplexMatrix u = haar_unitary(d, stream);
      const ComplexMatrix uu = kron(u, u);
      block_sum.noalias() += uu.adjoint() * o * uu;
    }
    total += block_sum;
  }
  return total / static_cast<double>(samples);
}

}  // namespace weakrev
