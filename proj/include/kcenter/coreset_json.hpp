#ifndef KCENTER_CORESET_JSON_HPP
#define KCENTER_CORESET_JSON_HPP

#include <string>

#include <json.hpp>

#include "kcenter/coreset.hpp"

namespace kcenter {

/// {"source_n": n, "entries": [{"index": i, "weight": w}, ...], "meta": {...}}
nlohmann::json coreset_to_json(const WeightedCoreset& cs);
WeightedCoreset coreset_from_json(const nlohmann::json& j);

std::string dump_coreset(const WeightedCoreset& cs);
WeightedCoreset parse_coreset(const std::string& text);

}  // namespace kcenter

#endif  // KCENTER_CORESET_JSON_HPP
