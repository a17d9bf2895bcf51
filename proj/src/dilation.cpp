#include "weakrev/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace weakrev {

namespace {

constexpr double kAcceptResidual = 1e-6;

void check_outcome(const DilatedMeasurement& dm, std::size_t r) {
  if (r >= dm.outcomes()) throw IndexError("outcome index " + std::to_string(r) + " out of range");
}

// Conditional system vectors of the basis inputs |j⟩, one column per j.
ComplexMatrix basis_images(const DilatedMeasurement& dm, std::size_t r) { return dm.kraus(r); }

double kraus_proportionality_residual(const ComplexMatrix& a) {
  const ComplexMatrix m = a.adjoint() * a;
  const double mean = m.trace().real() / static_cast<double>(m.rows());
  return (m - mean * ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

}  // namespace

ComplexVector DilatedMeasurement::evolve(const PureState& psi) const {
  if (psi.dimension() != system_dim) throw DimensionError("state dimension does not match dilated system");
  ComplexVector out = ComplexVector::Zero(system_dim * ancilla_dim);
  for (Index j = 0; j < system_dim; ++j) out += psi(j) * dilation_unitary.col(j * ancilla_dim);
  return out;
}

ComplexVector DilatedMeasurement::conditional_state(std::size_t r, const PureState& psi) const {
  check_outcome(*this, r);
  const ComplexVector full = evolve(psi);
  ComplexVector out(system_dim);
  for (Index s = 0; s < system_dim; ++s) out(s) = full(s * ancilla_dim + static_cast<Index>(r));
  return out;
}

double DilatedMeasurement::outcome_probability(std::size_t r, const PureState& psi) const {
  check_outcome(*this, r);
  const ComplexVector full = evolve(psi);
  return (ancilla_projectors[r] * full).squaredNorm();
}

ComplexMatrix DilatedMeasurement::kraus(std::size_t r) const {
  check_outcome(*this, r);
  ComplexMatrix a(system_dim, system_dim);
  for (Index s = 0; s < system_dim; ++s) {
    for (Index j = 0; j < system_dim; ++j) {
      a(s, j) = dilation_unitary(s * ancilla_dim + static_cast<Index>(r), j * ancilla_dim);
    }
  }
  return a;
}

DilatedMeasurement dilate(const MeasurementSet& set) {
  const Index d = set.dimension();
  const Index n = static_cast<Index>(set.size());
  const Index dim = d * n;

  DilatedMeasurement dm;
  dm.system_dim = d;
  dm.ancilla_dim = n;
  dm.dilation_unitary = ComplexMatrix::Zero(dim, dim);

  std::vector<bool> filled(static_cast<std::size_t>(dim), false);
  std::vector<ComplexVector> columns;
  for (Index j = 0; j < d; ++j) {
    ComplexVector col = ComplexVector::Zero(dim);
    for (Index r = 0; r < n; ++r) {
      const auto& a = set[static_cast<std::size_t>(r)].matrix();
      for (Index s = 0; s < d; ++s) col(s * n + r) = a(s, j);
    }
    dm.dilation_unitary.col(j * n) = col;
    filled[static_cast<std::size_t>(j * n)] = true;
    columns.push_back(std::move(col));
  }

  // Complete to a unitary: Gram-Schmidt over canonical basis vectors in index order.
  Index next_slot = 0;
  for (Index k = 0; k < dim && static_cast<Index>(columns.size()) < dim; ++k) {
    ComplexVector cand = ComplexVector::Unit(dim, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : columns) cand -= q * q.dot(cand);
    }
    const double norm = cand.norm();
    if (norm < kAcceptResidual) continue;
    cand /= norm;
    while (filled[static_cast<std::size_t>(next_slot)]) ++next_slot;
    dm.dilation_unitary.col(next_slot) = cand;
    filled[static_cast<std::size_t>(next_slot)] = true;
    columns.push_back(std::move(cand));
  }

  for (Index r = 0; r < n; ++r) {
    ComplexMatrix anc = ComplexMatrix::Zero(n, n);
    anc(r, r) = 1.0;
    dm.ancilla_projectors.push_back(kron<double>(ComplexMatrix::Identity(d, d), anc));
  }
  return dm;
}

InformationReport information_report(const DilatedMeasurement& dilated, std::size_t samples, RandomSource& rng) {
  const Index d = dilated.system_dim;
  const std::size_t n = dilated.outcomes();
  InformationReport rep;
  rep.per_outcome_orthogonality_residual.assign(n, 0.0);
  rep.probability_spread.assign(n, 0.0);
  rep.kraus_residual.assign(n, 0.0);

  const double inv_sqrt2 = M_SQRT1_2;
  const std::complex<double> i_unit(0.0, 1.0);
  for (std::size_t r = 0; r < n; ++r) {
    const ComplexMatrix images = basis_images(dilated, r);
    double worst = 0.0;
    for (Index j = 0; j < d; ++j) {
      for (Index k = j + 1; k < d; ++k) {
        const ComplexVector x = images.col(j);
        const ComplexVector y = images.col(k);
        worst = std::max(worst, std::abs(x.dot(y)));
        const ComplexVector plus = (x + y) * inv_sqrt2;
        const ComplexVector minus = (x - y) * inv_sqrt2;
        worst = std::max(worst, std::abs(plus.dot(minus)));
        const ComplexVector iplus = (x + i_unit * y) * inv_sqrt2;
        const ComplexVector iminus = (x - i_unit * y) * inv_sqrt2;
        worst = std::max(worst, std::abs(iplus.dot(iminus)));
      }
    }
    rep.per_outcome_orthogonality_residual[r] = worst;
    rep.kraus_residual[r] = kraus_proportionality_residual(dilated.kraus(r));
  }

  std::vector<double> lo(n, 2.0);
  std::vector<double> hi(n, -1.0);
  auto record = [&](const PureState& psi) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = dilated.outcome_probability(r, psi);
      lo[r] = std::min(lo[r], p);
      hi[r] = std::max(hi[r], p);
    }
  };
  for (Index j = 0; j < d; ++j) record(PureState::basis(d, j));
  for (std::size_t s = 0; s < samples; ++s) record(random_pure_state(d, rng));
  for (std::size_t r = 0; r < n; ++r) rep.probability_spread[r] = hi[r] - lo[r];

  auto all_below = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x < kInformationFreeTol; });
  };
  rep.orthogonality_free = all_below(rep.per_outcome_orthogonality_residual);
  rep.spread_free = all_below(rep.probability_spread);
  rep.kraus_free = all_below(rep.kraus_residual);
  rep.information_free = rep.kraus_free;
  return rep;
}

PureState deterministic_retrieval(const DilatedMeasurement& dilated, std::size_t r, const PureState& residual) {
  check_outcome(dilated, r);
  if (residual.dimension() != dilated.system_dim) throw DimensionError("residual state dimension mismatch");
  for (std::size_t k = 0; k < dilated.outcomes(); ++k) {
    if (!(kraus_proportionality_residual(dilated.kraus(k)) < kInformationFreeTol)) {
      throw InformationWasExtractedError("outcome " + std::to_string(k) +
                                         " has input-dependent statistics; retrieval is not deterministic");
    }
  }
  const ComplexMatrix images = basis_images(dilated, r);
  const double p = images.col(0).squaredNorm();
  if (p <= 1e-12) throw ZeroProbabilityError("outcome " + std::to_string(r) + " never occurs");
  // Information-free images are orthogonal with equal norms √p.
  const ComplexMatrix phi = images / std::sqrt(p);
  return PureState::normalized(phi.adjoint() * residual.amplitudes());
}

}  // namespace weakrev
