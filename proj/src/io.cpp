#include "weakrev/io.hpp"

#include <fstream>

namespace weakrev::io {

json to_json(const MeasurementSet& set) {
  json ops = json::array();
  for (const auto& op : set) {
    const auto& m = op.matrix();
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  return {{"dimension", set.dimension()}, {"operators", std::move(ops)}};
}

MeasurementSet measurement_set_from_json(const json& doc, double completeness_tol) {
  if (!doc.is_object()) throw ParseError("measurement set document must be a JSON object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer()) {
    throw ParseError("measurement set document needs an integer \"dimension\"");
  }
  const auto d = doc["dimension"].get<Index>();
  if (d <= 0) throw ParseError("\"dimension\" must be positive");
  if (!doc.contains("operators") || !doc["operators"].is_array()) {
    throw ParseError("measurement set document needs an \"operators\" array");
  }

  std::vector<ComplexMatrix> matrices;
  for (const auto& op : doc["operators"]) {
    if (!op.is_array() || static_cast<Index>(op.size()) != d) {
      throw ParseError("each operator must be an array of " + std::to_string(d) + " rows");
    }
    ComplexMatrix m(d, d);
    for (Index i = 0; i < d; ++i) {
      const auto& row = op[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Index>(row.size()) != d) {
        throw ParseError("each operator row must hold " + std::to_string(d) + " entries");
      }
      for (Index j = 0; j < d; ++j) {
        const auto& z = row[static_cast<std::size_t>(j)];
        if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
          throw ParseError("matrix entries must be [re, im] number pairs");
        }
        m(i, j) = {z[0].get<double>(), z[1].get<double>()};
      }
    }
    matrices.push_back(std::move(m));
  }
  return MeasurementSet(d, std::move(matrices), completeness_tol);
}

MeasurementSet read_measurement_set(const std::string& path, double completeness_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return measurement_set_from_json(doc, completeness_tol);
}

void write_measurement_set(const MeasurementSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << to_json(set).dump(2) << '\n';
}

json to_json(const TradeoffReport& report) {
  return {{"dimension", report.dimension},
          {"n_outcomes", report.n_outcomes},
          {"info_gain", report.info_gain},
          {"reversibility", report.reversibility},
          {"lhs", report.lhs},
          {"slack", report.slack},
          {"singular_value_inequality_lhs", report.singular_value_inequality_lhs},
          {"saturated", report.saturated}};
}

json to_json(const ScanAggregate& aggregate) {
  return {{"count", aggregate.count},
          {"min_slack", aggregate.min_slack},
          {"max_abs_slack", aggregate.max_abs_slack},
          {"max_abs_residual_d2", aggregate.max_abs_residual_d2},
          {"eq16_max", aggregate.eq16_max}};
}

}  // namespace weakrev::io
