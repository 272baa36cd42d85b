#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "common.hpp"

namespace mz {

// Per-run record of an experiment. Reports with the same config and seed are
// byte-identical, so wall time stays out of the serialized artifact and only
// shows up on the console.
struct ExperimentReport {
    std::string id;
    nlohmann::ordered_json config;  // fully resolved echo
    std::vector<nlohmann::ordered_json> records;
    nlohmann::ordered_json summary;
    bool passed = false;
    double wall_seconds = 0.0;

    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["experiment"] = id;
        j["config"] = config;
        j["records"] = records;
        j["summary"] = summary;
        j["passed"] = passed;
        return j;
    }

    std::string summary_csv() const {
        std::string out;
        for (std::size_t i = 0; i < csv_header.size(); ++i) {
            if (i) out += ",";
            out += csv_header[i];
        }
        out += "\n";
        for (const auto& row : csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ",";
                out += row[i];
            }
            out += "\n";
        }
        return out;
    }

    std::string verdict_line() const {
        std::string line = id + ": " + (passed ? "PASS" : "FAIL");
        if (summary.contains("headline")) line += " — " + summary["headline"].get<std::string>();
        return line;
    }
};

// Fixed-format float for CSV cells.
std::string csv_num(double v);

}  // namespace mz
