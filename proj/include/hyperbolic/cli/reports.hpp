#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "hyperbolic/interlace.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/scaling.hpp"

namespace hyperbolic::cli {

nlohmann::json to_json(const RootSpectrum& s);
nlohmann::json to_json(const SupportSet& s);
nlohmann::json to_json(const SaturationReport& r);
nlohmann::json to_json(const AfReport& r);
nlohmann::json to_json(const ScalingReport& r);
nlohmann::json to_json(const CapacityResult& r);
nlohmann::json to_json(const EdmondsRadoReport& r);  // witness printed 1-based
nlohmann::json to_json(const PairReport& r);
nlohmann::json to_json(const MajorizationReport& r);
nlohmann::json to_json(const CorollaryReport& r);
nlohmann::json to_json(const LineConvexityReport& r);
nlohmann::json to_json(const Composition& c);

enum class OutputFormat { json, text };

// JSON: dump(2). Text: one "key: value" line per top-level field, arrays
// space-separated, nested objects flattened with dotted keys.
void write_report(std::ostream& out, const nlohmann::json& report, OutputFormat format);

}  // namespace hyperbolic::cli
