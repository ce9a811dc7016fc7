#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bootlab/estimators.hpp"

namespace bootlab {

enum class RecordFormat { Csv, Json };

RecordFormat parse_format(std::string_view text);

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader =
    "experiment,theta,ell,a,n,L,rule,mode,boundary,trials,successes,estimate,stderr,seed";

std::string to_csv(const std::vector<EstimateRecord>& records);
std::string to_json(const std::vector<EstimateRecord>& records);
std::string render_records(const std::vector<EstimateRecord>& records, RecordFormat format);

std::vector<EstimateRecord> parse_csv(std::string_view text);
std::vector<EstimateRecord> parse_json(std::string_view text);

// Writes through a temporary file in the same directory and renames it into
// place. Throws IoError.
void write_records(const std::vector<EstimateRecord>& records, const std::filesystem::path& path,
                   RecordFormat format);

}  // namespace bootlab
