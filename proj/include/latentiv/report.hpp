#pragma once

#include "latentiv/benchmark.hpp"
#include "latentiv/core.hpp"
#include "latentiv/inference.hpp"
#include "latentiv/instruments.hpp"
#include "latentiv/pcurve.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace latentiv {

/// Shortest round-trip decimal form ("inf", "-inf", "nan" for non-finite).
std::string format_real(double v);

nlohmann::ordered_json to_json(const Config& cfg);
nlohmann::ordered_json to_json(const CiResult& r);
nlohmann::ordered_json to_json(const Verdict& v);
nlohmann::ordered_json to_json(const EnsembleVerdict& v);
nlohmann::ordered_json to_json(const InstrumentSet& s);
nlohmann::ordered_json to_json(const BenchmarkReport& report);

/// Per-pair rows: id, verdict, p_difference, correct, weight.
void write_benchmark_csv(std::ostream& out, const BenchmarkReport& report);

/// Columns: scenario, setting, n, replicate, test, p_value.
void write_pcurve_csv(std::ostream& out, const std::vector<PCurveRow>& rows);

}  // namespace latentiv
