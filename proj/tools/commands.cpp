#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>

#include "weakrev/dilation.hpp"
#include "weakrev/infogain.hpp"
#include "weakrev/io.hpp"
#include "weakrev/tradeoff.hpp"

namespace weakrev::cli {

using io::json;

const char* const kOutputSchemaHelp = R"(Outputs (JSON keys / CSV columns are stable):
  analyze           dimension, n_outcomes, info_gain, reversibility, lhs, slack,
                    singular_value_inequality_lhs, saturated, structurally_saturating,
                    completeness_residual, outcomes[{index, singular_values, reversible}]
  random-scan       reports[{dimension, n_outcomes, info_gain, reversibility, lhs, slack,
                    singular_value_inequality_lhs, saturated}],
                    aggregate{count, min_slack, max_abs_slack, max_abs_residual_d2, eq16_max}
                    CSV: index,dimension,n_outcomes,info_gain,reversibility,lhs,slack,
                    singular_value_inequality_lhs,saturated
  sweep-eta         CSV: eta,info_gain,reversibility,lhs,slack,mc_info_gain,mc_std_error
  schur-check       dimension, samples, identity_distance, swap_distance, random_distance,
                    expected_statistical_error, random_threshold, alpha1, alpha2
  simulate-reverse  trials, successes, rate, std_error, closed_form, z_score, max_fidelity_deficit
  dilate-check      dimension, n_outcomes, unitarity_residual, probability_residual,
                    information_free, orthogonality_free, spread_free, kraus_free,
                    retrieval_fidelity_deficit
Outcome indices are 0-based. Exit codes: 0 success, 2 input/config error,
3 internal consistency alarm (the bound check or a statistical check failed).)";

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

long long require_positive(const std::optional<long long>& value, const char* flag) {
  if (!value) throw ConfigError(std::string("missing required flag ") + flag);
  if (*value < 1) throw ConfigError(std::string(flag) + " must be at least 1");
  return *value;
}

long long positive_or(const std::optional<long long>& value, long long fallback, const char* flag) {
  if (!value) return fallback;
  return require_positive(value, flag);
}

std::string number(double x) { return fmt::format("{:.17g}", x); }

MeasurementSet load_set(const RunConfig& config) {
  if (config.input_path && config.example) throw ConfigError("use either --in or --example, not both");
  if (config.input_path) return io::read_measurement_set(*config.input_path, config.tol_completeness);
  if (config.example) return example_from_selector(*config.example);
  throw ConfigError("an input measurement set is required (--in PATH or --example NAME)");
}

// Sends primary output to --out when given, otherwise to `out`.
void emit(const RunConfig& config, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) throw ConfigError("cannot write " + *config.output_path);
    body(file);
  } else {
    body(out);
  }
}

void emit_json(const RunConfig& config, std::ostream& out, const json& doc) {
  emit(config, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

// Flat key,value CSV for commands without a natural table.
void emit_key_values(const RunConfig& config, std::ostream& out, const json& doc) {
  emit(config, out, [&](std::ostream& os) {
    os << "key,value\n";
    for (const auto& [key, value] : doc.items()) {
      if (value.is_number_float()) {
        os << key << ',' << number(value.get<double>()) << '\n';
      } else {
        os << key << ',' << value.dump() << '\n';
      }
    }
  });
}

Format format_or(const RunConfig& config, Format fallback) { return config.format.value_or(fallback); }

PureState input_state(const std::string& name, Index d, std::uint64_t seed) {
  if (name == "uniform") return PureState::normalized(ComplexVector::Ones(d));
  if (name == "random") {
    RandomSource rng(seed, 0x57a7e);
    return random_pure_state(d, rng);
  }
  if (name.rfind("basis:", 0) == 0) {
    long long k = -1;
    try {
      k = std::stoll(name.substr(6));
    } catch (const std::logic_error&) {
    }
    if (k < 0 || k >= d) throw ConfigError("basis index out of range: " + name);
    return PureState::basis(d, static_cast<Index>(k));
  }
  throw ConfigError("unknown --state " + name + " (expected uniform, random or basis:K)");
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "analyze") return Command::analyze;
  if (name == "random-scan") return Command::random_scan;
  if (name == "sweep-eta") return Command::sweep_eta;
  if (name == "schur-check") return Command::schur_check;
  if (name == "simulate-reverse") return Command::simulate_reverse;
  if (name == "dilate-check") return Command::dilate_check;
  return std::nullopt;
}

MeasurementSet example_from_selector(const std::string& selector) {
  const auto colon = selector.find(':');
  const std::string name = selector.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : selector.substr(colon + 1);
  try {
    if (name == "von-neumann") return example_von_neumann(arg.empty() ? 2 : std::stoll(arg));
    if (name == "identity") {
      const Index d = arg.empty() ? 2 : std::stoll(arg);
      if (d < 1) throw ConfigError("identity dimension must be positive");
      return unitary_measurement(ComplexMatrix::Identity(d, d));
    }
    if (name == "weak-eta") {
      if (arg.empty()) throw ConfigError("weak-eta needs a value, e.g. weak-eta:0.36");
      return example_weak_eta(std::stod(arg));
    }
  } catch (const std::logic_error&) {
    throw ConfigError("malformed --example argument: " + selector);
  }
  throw ConfigError("unknown --example " + selector + " (expected von-neumann:D, weak-eta:VALUE or identity:D)");
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream&) {
  const MeasurementSet set = load_set(config);
  const TradeoffReport rep = tradeoff_report(set);

  json doc = io::to_json(rep);
  doc["structurally_saturating"] = is_saturating(set);
  doc["completeness_residual"] = set.completeness_residual();
  json outcomes = json::array();
  for (std::size_t r = 0; r < set.size(); ++r) {
    const auto& values = set[r].svd().values;
    outcomes.push_back({{"index", r},
                        {"singular_values", std::vector<double>(values.data(), values.data() + values.size())},
                        {"reversible", is_reversible(set, r, config.tol_reversible)}});
  }
  doc["outcomes"] = std::move(outcomes);

  if (format_or(config, Format::json) == Format::csv) {
    emit(config, out, [&](std::ostream& os) {
      os << "dimension,n_outcomes,info_gain,reversibility,lhs,slack,singular_value_inequality_lhs,saturated\n";
      fmt::print(os, "{},{},{},{},{},{},{},{}\n", rep.dimension, rep.n_outcomes, number(rep.info_gain),
                 number(rep.reversibility), number(rep.lhs), number(rep.slack),
                 number(rep.singular_value_inequality_lhs), rep.saturated);
    });
  } else {
    emit_json(config, out, doc);
  }
  return rep.consistent() ? kExitOk : kExitAlarm;
}

int cmd_random_scan(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Index d = require_positive(config.dimension, "--dim");
  const auto n = static_cast<std::size_t>(require_positive(config.outcomes, "--outcomes"));
  const auto count = static_cast<std::size_t>(require_positive(config.count, "--count"));

  RandomSource rng(config.seed);
  const auto reports = ensemble_scan(d, n, count, rng);
  const ScanAggregate agg = summarize(reports);

  if (format_or(config, Format::json) == Format::csv) {
    emit(config, out, [&](std::ostream& os) {
      os << "index,dimension,n_outcomes,info_gain,reversibility,lhs,slack,singular_value_inequality_lhs,saturated\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        fmt::print(os, "{},{},{},{},{},{},{},{},{}\n", i, r.dimension, r.n_outcomes, number(r.info_gain),
                   number(r.reversibility), number(r.lhs), number(r.slack),
                   number(r.singular_value_inequality_lhs), r.saturated);
      }
    });
  } else {
    json list = json::array();
    for (const auto& r : reports) list.push_back(io::to_json(r));
    emit_json(config, out, {{"reports", std::move(list)}, {"aggregate", io::to_json(agg)}});
  }

  bool ok = agg.min_slack > -tol::kEquality && agg.eq16_max <= static_cast<double>(d) + tol::kEquality;
  if (d == 2) ok = ok && agg.max_abs_residual_d2 < tol::kEquality;
  return ok ? kExitOk : kExitAlarm;
}

int cmd_sweep_eta(const RunConfig& config, std::ostream& out, std::ostream&) {
  const long long steps = positive_or(config.eta_steps, 11, "--steps");
  if (steps < 2) throw ConfigError("--steps must be at least 2");
  const auto samples = static_cast<std::size_t>(positive_or(config.samples, 20000, "--samples"));

  struct Row {
    double eta, info_gain, reversibility, lhs, slack, mc_mean, mc_se;
  };
  std::vector<Row> rows;
  bool ok = true;
  for (long long i = 0; i < steps; ++i) {
    const double eta = static_cast<double>(i) / static_cast<double>(steps - 1);
    const MeasurementSet set = example_weak_eta(eta);
    const TradeoffReport rep = tradeoff_report(set);
    RandomSource rng(config.seed, static_cast<std::uint64_t>(i));
    const MonteCarloEstimate mc = estimation_fidelity_mc(set, optimal_strategy(set), samples, rng);
    rows.push_back({eta, rep.info_gain, rep.reversibility, rep.lhs, rep.slack, mc.mean, mc.std_error});
    ok = ok && rep.consistent();
  }

  if (format_or(config, Format::csv) == Format::csv) {
    emit(config, out, [&](std::ostream& os) {
      os << "eta,info_gain,reversibility,lhs,slack,mc_info_gain,mc_std_error\n";
      for (const auto& r : rows) {
        fmt::print(os, "{},{},{},{},{},{},{}\n", number(r.eta), number(r.info_gain), number(r.reversibility),
                   number(r.lhs), number(r.slack), number(r.mc_mean), number(r.mc_se));
      }
    });
  } else {
    json list = json::array();
    for (const auto& r : rows) {
      list.push_back({{"eta", r.eta},
                      {"info_gain", r.info_gain},
                      {"reversibility", r.reversibility},
                      {"lhs", r.lhs},
                      {"slack", r.slack},
                      {"mc_info_gain", r.mc_mean},
                      {"mc_std_error", r.mc_se}});
    }
    emit_json(config, out, {{"rows", std::move(list)}});
  }
  return ok ? kExitOk : kExitAlarm;
}

int cmd_schur_check(const RunConfig& config, std::ostream& out, std::ostream&) {
  const Index d = positive_or(config.dimension, 2, "--dim");
  const auto samples = static_cast<std::size_t>(positive_or(config.samples, 100000, "--samples"));

  RandomSource rng(config.seed);
  const Index dd = d * d;
  const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
  const ComplexMatrix swap = swap_operator(d);
  const double id_dist = (twirl_mc(id, d, samples, rng) - twirl_exact(id, d).reconstruct(d)).norm();
  const double swap_dist = (twirl_mc(swap, d, samples, rng) - twirl_exact(swap, d).reconstruct(d)).norm();

  RandomSource op_rng(config.seed, 0x0b5);
  const ComplexMatrix g = ginibre<double>(dd, dd, op_rng);
  const ComplexMatrix o = 0.5 * (g + g.adjoint());
  const TwirlCoefficients coeffs = twirl_exact(o, d);
  const ComplexMatrix exact = coeffs.reconstruct(d);
  const double random_dist = (twirl_mc(o, d, samples, rng) - exact).norm();
  // Conjugation preserves ‖·‖_F, so E‖X − E X‖² = ‖O‖² − ‖twirl(O)‖².
  const double expected =
      std::sqrt(std::max(0.0, o.squaredNorm() - exact.squaredNorm()) / static_cast<double>(samples));
  const double threshold = 5.0 * expected;

  const json doc = {{"dimension", d},
                    {"samples", samples},
                    {"identity_distance", id_dist},
                    {"swap_distance", swap_dist},
                    {"random_distance", random_dist},
                    {"expected_statistical_error", expected},
                    {"random_threshold", threshold},
                    {"alpha1", coeffs.alpha1},
                    {"alpha2", coeffs.alpha2}};
  if (format_or(config, Format::json) == Format::csv) {
    emit_key_values(config, out, doc);
  } else {
    emit_json(config, out, doc);
  }
  const bool ok = id_dist < 1e-10 && swap_dist < 1e-10 && random_dist < threshold;
  return ok ? kExitOk : kExitAlarm;
}

int cmd_simulate_reverse(const RunConfig& config, std::ostream& out, std::ostream&) {
  const MeasurementSet set = load_set(config);
  const auto trials = static_cast<std::size_t>(positive_or(config.trials, 100000, "--trials"));
  const PureState psi = input_state(config.state, set.dimension(), config.seed);

  RandomSource rng(config.seed);
  const ReversalSimulation sim = simulate_measure_and_reverse(set, psi, trials, rng, config.tol_reversible);

  double closed_form = 0.0;
  for (std::size_t r = 0; r < set.size(); ++r) {
    if (is_reversible(set, r, config.tol_reversible)) {
      closed_form += set[r].min_singular_value() * set[r].min_singular_value();
    }
  }
  double se = sim.success.std_error;
  if (se == 0.0) se = std::sqrt(closed_form * (1.0 - closed_form) / static_cast<double>(trials));
  const double diff = sim.success.mean - closed_form;
  double z = 0.0;
  if (se > 0.0) {
    z = diff / se;
  } else if (std::abs(diff) > 1e-12) {
    z = std::numeric_limits<double>::infinity();
  }

  const json doc = {{"trials", trials},
                    {"successes", sim.successes},
                    {"rate", sim.success.mean},
                    {"std_error", sim.success.std_error},
                    {"closed_form", closed_form},
                    {"z_score", z},
                    {"max_fidelity_deficit", sim.max_fidelity_deficit}};
  if (format_or(config, Format::json) == Format::csv) {
    emit_key_values(config, out, doc);
  } else {
    emit_json(config, out, doc);
  }
  const bool ok = std::abs(z) <= 4.0 && sim.max_fidelity_deficit < tol::kEquality;
  return ok ? kExitOk : kExitAlarm;
}

int cmd_dilate_check(const RunConfig& config, std::ostream& out, std::ostream&) {
  const MeasurementSet set = load_set(config);
  const auto samples = static_cast<std::size_t>(positive_or(config.samples, 200, "--samples"));
  const Index d = set.dimension();

  const DilatedMeasurement dm = dilate(set);
  RandomSource rng(config.seed);
  const InformationReport info = information_report(dm, samples, rng);

  double prob_residual = 0.0;
  double retrieval_deficit = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const PureState psi = random_pure_state(d, rng);
    for (std::size_t r = 0; r < set.size(); ++r) {
      const double p = outcome_probability(set, r, psi);
      prob_residual = std::max(prob_residual, std::abs(dm.outcome_probability(r, psi) - p));
      if (info.information_free && p > 1e-12) {
        const PureState residual = PureState::normalized(dm.conditional_state(r, psi));
        retrieval_deficit =
            std::max(retrieval_deficit, 1.0 - fidelity(deterministic_retrieval(dm, r, residual), psi));
      }
    }
  }
  const double unitarity = unitarity_residual(dm.dilation_unitary);

  json doc = {{"dimension", d},
              {"n_outcomes", set.size()},
              {"unitarity_residual", unitarity},
              {"probability_residual", prob_residual},
              {"information_free", info.information_free},
              {"orthogonality_free", info.orthogonality_free},
              {"spread_free", info.spread_free},
              {"kraus_free", info.kraus_free}};
  doc["retrieval_fidelity_deficit"] = info.information_free ? json(retrieval_deficit) : json(nullptr);
  if (format_or(config, Format::json) == Format::csv) {
    emit_key_values(config, out, doc);
  } else {
    emit_json(config, out, doc);
  }
  bool ok = unitarity < tol::kEquality && prob_residual < tol::kEquality && info.routes_agree();
  if (info.information_free) ok = ok && retrieval_deficit < tol::kEquality;
  return ok ? kExitOk : kExitAlarm;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::analyze:
        return cmd_analyze(config, out, err);
      case Command::random_scan:
        return cmd_random_scan(config, out, err);
      case Command::sweep_eta:
        return cmd_sweep_eta(config, out, err);
      case Command::schur_check:
        return cmd_schur_check(config, out, err);
      case Command::simulate_reverse:
        return cmd_simulate_reverse(config, out, err);
      case Command::dilate_check:
        return cmd_dilate_check(config, out, err);
    }
  } catch (const CompletenessError& e) {
    err << json{{"error", e.what()}, {"completeness_residual", e.residual()}}.dump() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << json{{"error", e.what()}}.dump() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace weakrev::cli
