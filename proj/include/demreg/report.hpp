#pragma once

#include <json.hpp>

#include "demreg/constellation.hpp"
#include "demreg/error_metrics.hpp"

namespace demreg {

/// JSON projections of module results. Values are copied verbatim from the
/// structs — reports never recompute anything. nlohmann::json objects keep
/// keys sorted, which makes every dump byte-deterministic.
nlohmann::json to_json(const ErrorReport& report);
nlohmann::json to_json(const Correspondence& correspondence);

} // namespace demreg
