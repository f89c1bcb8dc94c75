#pragma once

// One JSON object per line for search records and single conversions.

#include <string>

#include "json.hpp"

#include "pegg/search.hpp"

namespace pegg {

nlohmann::json to_json(const OriginalEquation& eq);
nlohmann::json to_json(const ResultantEquation& res, const PeggReport& rep);
nlohmann::json to_json(const SearchRecord& rec);

/// Inverse of to_json(SearchRecord). The resultant is re-derived from the
/// stored fields and checked exactly; throws std::runtime_error on mismatch.
SearchRecord record_from_json(const nlohmann::json& j);

std::string to_json_line(const SearchRecord& rec);

}  // namespace pegg
