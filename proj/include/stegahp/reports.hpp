#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stegahp/ahp.hpp"
#include "stegahp/chi2.hpp"
#include "stegahp/detector.hpp"
#include "stegahp/stego_lab.hpp"

namespace stegahp {

using Json = nlohmann::ordered_json;

Json to_json(const BoundingBox& box);
BoundingBox box_from_json(const Json& j);

Json to_json(const AhpParams& params);
Json to_json(const DensityReport& report);
Json to_json(const Localization& localization);
Json to_json(const TruthMetrics& metrics);
Json to_json(const Chi2Report& report);

/// Binary mask as one list of [start, length] runs of ones per row.
Json encode_row_runs(std::span<const std::uint8_t> mask, int width, int height);
std::vector<std::uint8_t> decode_row_runs(const Json& rows, int width, int height);

/// Ground-truth record: dimensions, region, change rate, payload (length and
/// bits as a '0'/'1' string) and both masks run-length encoded per row.
Json to_json(const EmbedRecord& record);
EmbedRecord embed_record_from_json(const Json& j);

/// "fraction,p_value" lines with a header row.
std::string chi2_csv(const Chi2Report& report);

}  // namespace stegahp
