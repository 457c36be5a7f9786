#pragma once

#include "fusionlab/certificate.hpp"
#include "fusionlab/engine.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fusionlab::codec {

using nlohmann::json;

inline constexpr int kFormat = 1;

json to_json(const ClopenSet& set);
json to_json(const BoxProduct& box);
json to_json(const BinaryCertificate& cert);
json to_json(const CantorCertificate& cert);
json to_json(const DenseResult& dense, const std::vector<PointSpec>& points);
json to_json(const MeasureLedger& ledger);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// "(k,j)"; throws std::invalid_argument.
Coord parse_coord(std::string_view text);

} // namespace fusionlab::codec
