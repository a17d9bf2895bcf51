#include <doctest.h>

#include <cmath>

#include "weakrev/reversal.hpp"

using namespace weakrev;

namespace {

PureState plus_state() { return PureState::normalized(ComplexVector::Ones(2)); }

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double max_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void check_kit_invariants(const MeasurementSet& set, const ReversalKit& kit) {
  const Index d = set.dimension();
  const ComplexMatrix& r = kit.reversing_operator;
  const ComplexMatrix& c = kit.complement_operator;
  REQUIRE(max_eigenvalue(r.adjoint() * r) <= 1.0 + 1e-10);
  REQUIRE((r * set[kit.outcome].matrix() - kit.eta * ComplexMatrix::Identity(d, d)).norm() < 1e-9);
  REQUIRE((r.adjoint() * r + c.adjoint() * c - ComplexMatrix::Identity(d, d)).norm() < 1e-9);
  REQUIRE(kit.eta <= set[kit.outcome].min_singular_value() + 1e-12);
}

}  // namespace

TEST_SUITE("reversal") {
  TEST_CASE("reversing_operator on the worked examples") {
    const double eta = 0.36;
    const auto weak = example_weak_eta(eta);
    const auto kit = reversing_operator(weak, 1);
    CHECK((kit.reversing_operator - diag2(std::sqrt(1.0 - eta), 1.0)).norm() < 1e-12);
    CHECK(std::abs(kit.eta - 0.8) < 1e-12);
    // completion mirrors B_2 = √η|0⟩⟨0|
    CHECK((kit.complement_operator - diag2(std::sqrt(eta), 0.0)).norm() < 1e-12);
    check_kit_invariants(weak, kit);

    CHECK_THROWS_AS(reversing_operator(example_von_neumann(2), 0), NonReversibleError);
    CHECK_THROWS_AS(reversing_operator(weak, 0), NonReversibleError);
  }

  TEST_CASE("reversing a unitary gives its adjoint") {
    RandomSource rng(1);
    const ComplexMatrix u = haar_unitary(3, rng);
    const auto kit = reversing_operator(unitary_measurement(u), 0);
    CHECK(std::abs(kit.eta - 1.0) < 1e-12);
    CHECK((kit.reversing_operator - u.adjoint()).norm() < 1e-10);
  }

  TEST_CASE("reversal_probability") {
    const double eta = 0.5;
    const auto weak = example_weak_eta(eta);
    const double p = 1.0 - eta / 2.0;  // ⟨+|diag(1, 1-η)|+⟩
    CHECK(std::abs(reversal_probability(weak, 1, plus_state()) - (1.0 - eta) / p) < 1e-12);
    CHECK(std::abs(reversal_probability(weak, 1, plus_state()) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(reversal_probability(weak, 1, PureState::basis(2, 1)) - 1.0) < 1e-12);

    RandomSource rng(2);
    const auto unitary = unitary_measurement(haar_unitary(2, rng));
    CHECK(std::abs(reversal_probability(unitary, 0, random_pure_state(2, rng)) - 1.0) < 1e-10);
    CHECK_THROWS_AS(reversal_probability(example_von_neumann(2), 0, plus_state()), NonReversibleError);
  }

  TEST_CASE("reversibility and disturbance") {
    CHECK(std::abs(reversibility(example_von_neumann(2))) < 1e-14);
    CHECK(std::abs(disturbance(example_von_neumann(2)) - 1.0) < 1e-14);
    CHECK(std::abs(reversibility(unitary_measurement(ComplexMatrix::Identity(3, 3))) - 1.0) < 1e-14);
    CHECK(std::abs(disturbance(unitary_measurement(ComplexMatrix::Identity(3, 3)))) < 1e-14);
    CHECK(std::abs(reversibility(example_weak_eta(0.36)) - 0.64) < 1e-14);
    CHECK(std::abs(disturbance(example_weak_eta(0.36)) - 0.36) < 1e-14);
  }

  TEST_CASE("erasing_operator") {
    const double eta = 0.36;
    CHECK((erasing_operator(example_weak_eta(eta), 1) - diag2(std::sqrt(1.0 - eta), 1.0)).norm() < 1e-12);

    RandomSource rng(3);
    const auto unitary = unitary_measurement(haar_unitary(3, rng));
    CHECK((erasing_operator(unitary, 0) - ComplexMatrix::Identity(3, 3)).norm() < 1e-10);

    const double a = 0.5, b = 0.5 / 3.0;
    const auto sat = saturating_measurement_set(3, a);
    for (std::size_t r = 0; r < sat.size(); ++r) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(erasing_operator(sat, r));
      const RealVector ev = es.eigenvalues();
      CHECK(std::abs(ev(0) - std::sqrt(b / (a + b))) < 1e-12);
      CHECK(std::abs(ev(1) - 1.0) < 1e-12);
      CHECK(std::abs(ev(2) - 1.0) < 1e-12);
    }
  }

  TEST_CASE("apply_erasure") {
    const double eta = 0.5;
    const auto weak = example_weak_eta(eta);
    const auto res = apply_erasure(weak, 1, plus_state());
    CHECK(std::abs(res.erase_probability - 2.0 / 3.0) < 1e-12);
    CHECK(fidelity(res.residual_state, plus_state()) > 1.0 - 1e-12);
    CHECK(std::abs(apply_erasure(weak, 1, PureState::basis(2, 1)).erase_probability - 1.0) < 1e-12);

    RandomSource rng(4);
    const ComplexMatrix u = haar_unitary(2, rng);
    const auto psi = random_pure_state(2, rng);
    const auto ures = apply_erasure(unitary_measurement(u), 0, psi);
    CHECK(std::abs(ures.erase_probability - 1.0) < 1e-12);
    CHECK(fidelity(ures.residual_state, PureState::normalized(u * psi.amplitudes())) > 1.0 - 1e-12);
  }

  TEST_CASE("simulate_measure_and_reverse") {
    RandomSource rng(5);
    const auto vn = example_von_neumann(2);
    const auto none = simulate_measure_and_reverse(vn, plus_state(), 1000, rng);
    CHECK(none.success.mean == 0.0);
    CHECK(none.successes == 0);

    const auto weak = example_weak_eta(0.3);
    for (const auto& psi : {PureState::basis(2, 0), PureState::basis(2, 1), plus_state()}) {
      const auto sim = simulate_measure_and_reverse(weak, psi, 100000, rng);
      CHECK(std::abs(sim.success.mean - 0.7) < 4.0 * sim.success.std_error);
      CHECK(sim.max_fidelity_deficit < 1e-9);
    }

    RandomSource a(9), b(9);
    CHECK(simulate_measure_and_reverse(weak, plus_state(), 5000, a).successes ==
          simulate_measure_and_reverse(weak, plus_state(), 5000, b).successes);
  }

  TEST_CASE("property: operator-level undo on random sets") {
    RandomSource rng(6);
    for (int i = 0; i < 500; ++i) {
      const Index d = 2 + i % 3;
      const auto set = random_measurement_set(d, 2 + static_cast<std::size_t>(i % 4), rng);
      for (std::size_t r = 0; r < set.size(); ++r) {
        if (!is_reversible(set, r)) continue;
        const auto kit = reversing_operator(set, r);
        check_kit_invariants(set, kit);
        const ComplexMatrix composite = kit.reversing_operator * set[r].matrix();
        for (int k = 0; k < 10; ++k) {
          const auto psi = random_pure_state(d, rng);
          const ComplexVector out = composite * psi.amplitudes();
          REQUIRE(std::abs(std::abs(psi.amplitudes().dot(out)) / out.norm() - 1.0) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("property: state independence of the undo rate") {
    RandomSource rng(7);
    const auto set = random_measurement_set(3, 3, rng);
    const double expected = reversibility(set);
    for (int k = 0; k < 3; ++k) {
      const auto sim = simulate_measure_and_reverse(set, random_pure_state(3, rng), 50000, rng);
      CHECK(std::abs(sim.success.mean - expected) < 4.0 * sim.success.std_error);
    }
  }

  TEST_CASE("property: erasure leaves a fixed unitary image of the input") {
    RandomSource rng(8);
    const auto set = random_measurement_set(3, 2, rng);
    const ComplexMatrix recover = set[0].isometric_part().adjoint();
    for (int k = 0; k < 100; ++k) {
      const auto psi = random_pure_state(3, rng);
      const auto res = apply_erasure(set, 0, psi);
      const double lmin = set[0].min_singular_value();
      REQUIRE(std::abs(res.erase_probability - lmin * lmin / outcome_probability(set, 0, psi)) < 1e-10);
      REQUIRE(fidelity(PureState::normalized(recover * res.residual_state.amplitudes()), psi) > 1.0 - 1e-9);
    }
  }

  TEST_CASE("property: the composite R·A carries no information") {
    RandomSource rng(10);
    const auto set = random_measurement_set(2, 3, rng);
    const auto kit = reversing_operator(set, 1);
    const ComplexMatrix composite = kit.reversing_operator * set[1].matrix();
    const double first = (composite * random_pure_state(2, rng).amplitudes()).squaredNorm();
    for (int k = 0; k < 50; ++k) {
      REQUIRE(std::abs((composite * random_pure_state(2, rng).amplitudes()).squaredNorm() - first) < 1e-10);
    }
  }
}
