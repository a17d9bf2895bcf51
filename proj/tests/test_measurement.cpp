#include <doctest.h>

#include <cmath>

#include "weakrev/measurement.hpp"

using namespace weakrev;

namespace {

constexpr double kEta = 0.36;

PureState plus_state() { return PureState::normalized(ComplexVector::Ones(2)); }

// Σλ² via Eigen directly, independent of the library's SVD post-processing.
double singular_value_sum_oracle(const MeasurementSet& set) {
  double total = 0.0;
  for (const auto& op : set) {
    Eigen::JacobiSVD<ComplexMatrix> s(op.matrix());
    total += s.singularValues().squaredNorm();
  }
  return total;
}

}  // namespace

TEST_SUITE("measurement") {
  TEST_CASE("construction and completeness validation") {
    const auto vn = example_von_neumann(2);
    CHECK(vn.size() == 2);
    CHECK(vn.dimension() == 2);

    const auto id = new_measurement_set(3, {ComplexMatrix::Identity(3, 3)});
    CHECK(id.size() == 1);

    ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    try {
      (void)new_measurement_set(2, {p0});
      FAIL("expected CompletenessError");
    } catch (const CompletenessError& e) {
      CHECK(std::abs(e.residual() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(new_measurement_set(2, {ComplexMatrix::Identity(3, 3)}), DimensionError);
    CHECK_THROWS_AS(new_measurement_set(2, {}), DimensionError);
  }

  TEST_CASE("outcome_probability on the worked examples") {
    const auto vn = example_von_neumann(2);
    CHECK(std::abs(outcome_probability(vn, 0, plus_state()) - 0.5) < 1e-12);

    const auto weak = example_weak_eta(kEta);
    CHECK(std::abs(outcome_probability(weak, 0, PureState::basis(2, 1)) - kEta) < 1e-12);
    CHECK_THROWS_AS(outcome_probability(weak, 2, plus_state()), IndexError);
  }

  TEST_CASE("outcome_probability for mixed inputs") {
    const auto weak = example_weak_eta(kEta);
    // tr(ρ A†A) with A†A = diag(1, 1-η)
    CHECK(std::abs(outcome_probability(weak, 1, DensityMatrix::maximally_mixed(2)) - 0.5 * (1.0 + (1.0 - kEta))) <
          1e-12);
    CHECK(std::abs(outcome_probability(weak, 1, DensityMatrix::from_pure(PureState::basis(2, 1))) - (1.0 - kEta)) <
          1e-12);

    RandomSource rng(1);
    for (int i = 0; i < 100; ++i) {
      const auto set = random_measurement_set(3, 3, rng);
      const auto psi = random_pure_state(3, rng);
      const auto rho = DensityMatrix::from_pure(psi);
      for (std::size_t r = 0; r < set.size(); ++r) {
        REQUIRE(std::abs(outcome_probability(set, r, psi) - outcome_probability(set, r, rho)) < 1e-10);
      }
    }
  }

  TEST_CASE("post_measurement_state") {
    const auto vn = example_von_neumann(2);
    const auto collapsed = post_measurement_state(vn, 0, plus_state());
    CHECK(fidelity(collapsed, PureState::basis(2, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(post_measurement_state(vn, 0, PureState::basis(2, 1)), ZeroProbabilityError);

    const auto weak = example_weak_eta(kEta);
    const auto post = post_measurement_state(weak, 1, plus_state());
    ComplexVector expected(2);
    expected << 1.0, std::sqrt(1.0 - kEta);
    expected /= std::sqrt(2.0 - kEta);
    CHECK((post.amplitudes() - expected).norm() < 1e-12);
  }

  TEST_CASE("sample_outcome frequencies and determinism") {
    const auto vn = example_von_neumann(2);
    RandomSource rng(4);
    for (int i = 0; i < 100; ++i) CHECK(sample_outcome(vn, PureState::basis(2, 0), rng).outcome == 0);

    const auto weak = example_weak_eta(kEta);
    const std::size_t n = 100000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += sample_outcome(weak, plus_state(), rng).outcome == 0;
    const double p = kEta / 2.0;
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(hits) / static_cast<double>(n) - p) < 4.0 * sigma);

    RandomSource a(77), b(77);
    for (int i = 0; i < 200; ++i) {
      REQUIRE(sample_outcome(weak, plus_state(), a).outcome == sample_outcome(weak, plus_state(), b).outcome);
    }
  }

  TEST_CASE("random_measurement_set") {
    RandomSource rng(6);
    const auto single = random_measurement_set(2, 1, rng);
    CHECK(std::abs(single[0].svd().values(0) - 1.0) < 1e-10);
    CHECK(std::abs(single[0].svd().values(1) - 1.0) < 1e-10);

    CHECK(random_measurement_set(3, 4, rng).completeness_residual() < 1e-10);

    for (int i = 0; i < 1000; ++i) {
      const auto set = random_measurement_set(2, 3, rng);
      REQUIRE(std::abs(singular_value_sum_oracle(set) - 2.0) < 1e-8);
    }
    CHECK_THROWS_AS(random_measurement_set(2, 0, rng), DimensionError);
    CHECK_THROWS_AS(random_measurement_set(0, 2, rng), DimensionError);
  }

  TEST_CASE("example factories") {
    const auto vn3 = example_von_neumann(3);
    for (const auto& op : vn3) {
      CHECK(std::abs(op.svd().values(0) - 1.0) < 1e-14);
      CHECK(std::abs(op.svd().values(1)) < 1e-14);
      CHECK(std::abs(op.svd().values(2)) < 1e-14);
    }
    CHECK(example_von_neumann(5).completeness_residual() == 0.0);

    const auto zero = example_weak_eta(0.0);
    CHECK(zero.size() == 1);
    CHECK((zero[0].matrix() - ComplexMatrix::Identity(2, 2)).norm() == 0.0);

    const auto full = example_weak_eta(1.0);
    CHECK(full.size() == 2);
    CHECK(std::abs(outcome_probability(full, 0, PureState::basis(2, 1)) - 1.0) < 1e-14);
    CHECK(std::abs(outcome_probability(full, 1, PureState::basis(2, 0)) - 1.0) < 1e-14);

    const auto weak = example_weak_eta(kEta);
    Eigen::JacobiSVD<ComplexMatrix> oracle(weak[1].matrix());
    CHECK(std::abs(weak[1].svd().values(0) - oracle.singularValues()(0)) < 1e-14);
    CHECK(std::abs(weak[1].svd().values(1) - 0.8) < 1e-14);

    CHECK_THROWS_AS(example_weak_eta(-0.1), DomainError);
    CHECK_THROWS_AS(example_weak_eta(1.5), DomainError);
  }

  TEST_CASE("saturating_measurement_set") {
    const auto flat = saturating_measurement_set(3, 0.0);
    for (const auto& op : flat) {
      CHECK((op.matrix() - ComplexMatrix::Identity(3, 3) / std::sqrt(3.0)).norm() < 1e-14);
    }
    const auto sharp = saturating_measurement_set(2, 1.0);
    for (std::size_t r = 0; r < 2; ++r) {
      CHECK((sharp[r].matrix() - example_von_neumann(2)[r].matrix()).norm() < 1e-14);
    }
    for (Index d = 2; d <= 5; ++d) {
      const double a = 0.3;
      const double b = (1.0 - a) / static_cast<double>(d);
      const auto set = saturating_measurement_set(d, a);
      CHECK(set.completeness_residual() < 1e-12);
      for (Index r = 0; r < d; ++r) {
        ComplexMatrix expected = b * ComplexMatrix::Identity(d, d);
        expected(r, r) += a;
        CHECK((set[static_cast<std::size_t>(r)].effect() - expected).norm() < 1e-12);
      }
    }
    CHECK_THROWS_AS(saturating_measurement_set(3, 1.2), DomainError);
  }

  TEST_CASE("property: normalization and infimum bound") {
    RandomSource rng(21);
    for (int i = 0; i < 1000; ++i) {
      const Index d = 2 + i % 4;
      const auto set = random_measurement_set(d, 1 + static_cast<std::size_t>(i % 5), rng);
      const auto psi = random_pure_state(d, rng);
      const auto rho = random_density_matrix(d, rng);
      double total = 0.0;
      for (std::size_t r = 0; r < set.size(); ++r) {
        const double p = outcome_probability(set, r, psi);
        const double lmin = set[r].min_singular_value();
        total += p;
        REQUIRE(p >= lmin * lmin - 1e-10);
        REQUIRE(outcome_probability(set, r, rho) >= lmin * lmin - 1e-10);
      }
      REQUIRE(std::abs(total - 1.0) < 1e-10);
      REQUIRE(std::abs(set.singular_value_sum() - static_cast<double>(d)) < 1e-8);
    }
  }

  TEST_CASE("infimum is attained at the smallest right singular vector") {
    RandomSource rng(2);
    const auto set = random_measurement_set(3, 2, rng);
    for (std::size_t r = 0; r < set.size(); ++r) {
      const auto& s = set[r].svd();
      const auto w_min = PureState::normalized(s.right.col(2));
      CHECK(std::abs(outcome_probability(set, r, w_min) - s.min_value() * s.min_value()) < 1e-12);
    }
  }
}
