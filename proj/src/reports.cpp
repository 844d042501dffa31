#include "stegahp/reports.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace stegahp {

Json to_json(const BoundingBox& box) {
    return Json{{"top", box.top}, {"left", box.left}, {"bottom", box.bottom}, {"right", box.right}};
}

BoundingBox box_from_json(const Json& j) {
    return {j.at("top").get<int>(), j.at("left").get<int>(), j.at("bottom").get<int>(), j.at("right").get<int>()};
}

Json to_json(const AhpParams& params) { return Json{{"n", params.n}, {"k", params.k}}; }

Json to_json(const DensityReport& report) {
    return Json{{"inside_density", report.inside_density},
                {"outside_density", report.outside_density},
                {"global_density", report.global_density},
                {"contrast", report.contrast},
                {"positives_total", report.positives_total}};
}

Json to_json(const Localization& localization) {
    return Json{{"insert_found", localization.insert_found},
                {"bounding_box", to_json(localization.box)},
                {"threshold", localization.threshold},
                {"densities", to_json(localization.report)}};
}

Json to_json(const TruthMetrics& m) {
    return Json{{"true_positives", m.true_positives},
                {"false_positives", m.false_positives},
                {"false_negatives", m.false_negatives},
                {"precision", m.precision},
                {"recall", m.recall},
                {"f1", m.f1},
                {"edge_errors",
                 Json{{"top", m.edge_errors[0]}, {"left", m.edge_errors[1]}, {"bottom", m.edge_errors[2]}, {"right", m.edge_errors[3]}}},
                {"edge_error_max", m.edge_error_max},
                {"localization", to_json(m.localization)}};
}

Json to_json(const Chi2Report& report) {
    return Json{{"detected", report.detected},
                {"sample_fractions", report.sample_fractions},
                {"p_values", report.p_values},
                {"statistics", report.statistics},
                {"pairs_used", report.pairs_used}};
}

Json encode_row_runs(std::span<const std::uint8_t> mask, int width, int height) {
    if (mask.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("encode_row_runs: mask size does not match dimensions");
    Json rows = Json::array();
    for (int r = 0; r < height; ++r) {
        Json runs = Json::array();
        int c = 0;
        while (c < width) {
            const auto at = [&](int col) { return mask[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(col)]; };
            if (at(c) == 0) {
                ++c;
                continue;
            }
            const int start = c;
            while (c < width && at(c) != 0) ++c;
            runs.push_back(Json::array({start, c - start}));
        }
        rows.push_back(std::move(runs));
    }
    return rows;
}

std::vector<std::uint8_t> decode_row_runs(const Json& rows, int width, int height) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != height)
        throw std::invalid_argument("decode_row_runs: expected one entry per row");
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (int r = 0; r < height; ++r) {
        for (const Json& run : rows[static_cast<std::size_t>(r)]) {
            const int start = run.at(0).get<int>();
            const int length = run.at(1).get<int>();
            if (start < 0 || length < 0 || start + length > width)
                throw std::invalid_argument("decode_row_runs: run outside the row");
            for (int c = start; c < start + length; ++c)
                mask[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) + static_cast<std::size_t>(c)] = 1;
        }
    }
    return mask;
}

Json to_json(const EmbedRecord& record) {
    std::string payload;
    payload.reserve(record.payload_bits.size());
    for (const std::uint8_t bit : record.payload_bits) payload.push_back(bit != 0 ? '1' : '0');

    return Json{{"width", record.width},
                {"height", record.height},
                {"region", to_json(record.region)},
                {"change_rate", record.change_rate},
                {"payload_length", record.payload_bits.size()},
                {"payload_bits", payload},
                {"written_mask", encode_row_runs(record.written_mask, record.width, record.height)},
                {"flipped_mask", encode_row_runs(record.flipped_mask, record.width, record.height)}};
}

EmbedRecord embed_record_from_json(const Json& j) {
    EmbedRecord record;
    record.width = j.at("width").get<int>();
    record.height = j.at("height").get<int>();
    record.region = box_from_json(j.at("region"));
    record.change_rate = j.at("change_rate").get<double>();
    const auto payload = j.at("payload_bits").get<std::string>();
    record.payload_bits.reserve(payload.size());
    for (const char ch : payload) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("payload_bits must contain only '0' and '1'");
        record.payload_bits.push_back(ch == '1' ? 1 : 0);
    }
    record.written_mask = decode_row_runs(j.at("written_mask"), record.width, record.height);
    record.flipped_mask = decode_row_runs(j.at("flipped_mask"), record.width, record.height);
    return record;
}

std::string chi2_csv(const Chi2Report& report) {
    std::ostringstream out;
    out << "fraction,p_value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < report.p_values.size(); ++i)
        out << report.sample_fractions[i] << ',' << report.p_values[i] << '\n';
    return out.str();
}

}  // namespace stegahp
