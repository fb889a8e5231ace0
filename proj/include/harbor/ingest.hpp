#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "harbor/core.hpp"

namespace harbor {

using FieldMap = std::map<std::string, std::string>;

inline constexpr std::array<const char*, 12> kAisColumns = {
    "Timestamp", "MMSI", "Latitude", "Longitude", "SOG", "COG",
    "Heading", "ROT", "Draught", "Ship Type", "Ship Length", "Ship Width"};

inline constexpr std::array<const char*, 9> kIotColumns = {
    "Timestamp", "Equipment Index", "Device Identify", "Latitude", "Longitude",
    "Altitude", "Velocity", "Direction", "Work Type"};

/// Builds a normalized record from named raw fields (column names as in
/// kAisColumns). Heading 511 and ROT -128 become empty optionals.
/// Throws MissingField, OutOfRange(field) or UnparsableTimestamp.
AisRecord validate_ais_record(const FieldMap& raw);
FieldMap to_field_map(const AisRecord& rec);

IotRecord validate_iot_record(const FieldMap& raw);
FieldMap to_field_map(const IotRecord& rec);

enum class ParseMode { Strict, Lenient };

struct RowIssue {
    std::size_t line = 0;
    ErrorCode cause = ErrorCode::RowError;
    std::string message;
};

template <typename Record>
struct ParseResult {
    std::vector<Record> records;
    std::vector<RowIssue> issues;  // only populated in lenient mode
};

/// Strict mode throws Error(RowError) naming the line and the cause on the
/// first bad row; lenient mode skips bad rows and collects them.
ParseResult<AisRecord> parse_ais_csv(std::istream& in, ParseMode mode = ParseMode::Strict);
ParseResult<IotRecord> parse_iot_csv(std::istream& in, ParseMode mode = ParseMode::Strict);
ParseResult<AisRecord> parse_ais_csv(const std::filesystem::path& path, ParseMode mode = ParseMode::Strict);
ParseResult<IotRecord> parse_iot_csv(const std::filesystem::path& path, ParseMode mode = ParseMode::Strict);

void write_ais_csv(std::ostream& out, std::span<const AisRecord> records);
void write_iot_csv(std::ostream& out, std::span<const IotRecord> records);

}  // namespace harbor
