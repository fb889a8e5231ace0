#include "harbor/ingest.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "harbor/csv.hpp"

namespace harbor {

namespace {

const std::string& require(const FieldMap& raw, const char* name) {
    auto it = raw.find(name);
    if (it == raw.end()) throw Error(ErrorCode::MissingField, "column absent", name);
    return it->second;
}

double number_field(const FieldMap& raw, const char* name) {
    double v = 0.0;
    const std::string& text = require(raw, name);
    if (!csv::parse_double(text, v)) throw Error(ErrorCode::OutOfRange, "not a number: '" + text + "'", name);
    return v;
}

int integer_field(const FieldMap& raw, const char* name) {
    const double v = number_field(raw, name);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(ErrorCode::OutOfRange, "not an integer", name);
    return static_cast<int>(v);
}

void check(bool ok, const char* name, const char* what) {
    if (!ok) throw Error(ErrorCode::OutOfRange, what, name);
}

}  // namespace

AisRecord validate_ais_record(const FieldMap& raw) {
    AisRecord r;
    r.timestamp = parse_instant(require(raw, "Timestamp"));
    r.mmsi = require(raw, "MMSI");
    if (r.mmsi.empty()) throw Error(ErrorCode::MissingField, "empty identifier", "MMSI");

    r.position.lat = number_field(raw, "Latitude");
    check(r.position.lat >= -90.0 && r.position.lat <= 90.0, "Latitude", "outside [-90, 90]");
    r.position.lon = number_field(raw, "Longitude");
    check(r.position.lon >= -180.0 && r.position.lon <= 180.0, "Longitude", "outside [-180, 180]");
    r.sog = number_field(raw, "SOG");
    check(r.sog >= 0.0, "SOG", "negative speed");
    r.cog = number_field(raw, "COG");
    check(r.cog >= 0.0 && r.cog < 360.0, "COG", "outside [0, 360)");

    const int heading = integer_field(raw, "Heading");
    if (heading != kHeadingUnavailable) {
        check(heading >= 0 && heading <= 359, "Heading", "outside [0, 359]");
        r.heading = heading;
    }
    const double rot = number_field(raw, "ROT");
    if (rot != kRotUnavailable) r.rot = rot;

    r.draught = number_field(raw, "Draught");
    check(r.draught >= 0.0, "Draught", "negative draught");
    r.ship_type = integer_field(raw, "Ship Type");
    r.ship_length = number_field(raw, "Ship Length");
    check(r.ship_length > 0.0, "Ship Length", "must be positive");
    r.ship_width = number_field(raw, "Ship Width");
    check(r.ship_width > 0.0, "Ship Width", "must be positive");
    return r;
}

FieldMap to_field_map(const AisRecord& r) {
    return {
        {"Timestamp", format_instant_ais(r.timestamp)},
        {"MMSI", r.mmsi},
        {"Latitude", csv::number(r.position.lat)},
        {"Longitude", csv::number(r.position.lon)},
        {"SOG", csv::number(r.sog)},
        {"COG", csv::number(r.cog)},
        {"Heading", std::to_string(r.heading.value_or(kHeadingUnavailable))},
        {"ROT", csv::number(r.rot.value_or(kRotUnavailable))},
        {"Draught", csv::number(r.draught)},
        {"Ship Type", std::to_string(r.ship_type)},
        {"Ship Length", csv::number(r.ship_length)},
        {"Ship Width", csv::number(r.ship_width)},
    };
}

IotRecord validate_iot_record(const FieldMap& raw) {
    IotRecord r;
    r.timestamp = parse_instant(require(raw, "Timestamp"));
    r.equipment_index = require(raw, "Equipment Index");
    if (r.equipment_index.empty()) throw Error(ErrorCode::MissingField, "empty identifier", "Equipment Index");
    r.device_id = integer_field(raw, "Device Identify");
    r.position.lat = number_field(raw, "Latitude");
    check(r.position.lat >= -90.0 && r.position.lat <= 90.0, "Latitude", "outside [-90, 90]");
    r.position.lon = number_field(raw, "Longitude");
    check(r.position.lon >= -180.0 && r.position.lon <= 180.0, "Longitude", "outside [-180, 180]");
    r.altitude = number_field(raw, "Altitude");
    r.velocity = number_field(raw, "Velocity");
    check(r.velocity >= 0.0, "Velocity", "negative velocity");
    r.direction = number_field(raw, "Direction");
    check(r.direction >= 0.0 && r.direction <= 360.0, "Direction", "outside [0, 360]");

    const std::string& work = require(raw, "Work Type");
    if (work == "U") {
        r.work_type = WorkType::Unloading;
    } else if (work == "L") {
        r.work_type = WorkType::Loading;
    } else {
        throw Error(ErrorCode::InvalidWorkType, "expected U or L, got '" + work + "'", "Work Type");
    }
    return r;
}

FieldMap to_field_map(const IotRecord& r) {
    return {
        {"Timestamp", format_instant_rfc3339(r.timestamp)},
        {"Equipment Index", r.equipment_index},
        {"Device Identify", std::to_string(r.device_id)},
        {"Latitude", csv::number(r.position.lat)},
        {"Longitude", csv::number(r.position.lon)},
        {"Altitude", csv::number(r.altitude)},
        {"Velocity", csv::number(r.velocity)},
        {"Direction", csv::number(r.direction)},
        {"Work Type", r.work_type == WorkType::Unloading ? "U" : "L"},
    };
}

namespace {

template <typename Record, std::size_t N, typename Validate>
ParseResult<Record> parse_table(std::istream& in, ParseMode mode, const std::array<const char*, N>& columns,
                                Validate validate) {
    ParseResult<Record> result;
    std::string line;
    std::size_t line_no = 0;
    if (!csv::next_line(in, line, line_no)) throw Error(ErrorCode::HeaderMismatch, "missing header row");

    const auto header = csv::split_line(line);
    bool header_ok = header.size() == N;
    for (std::size_t i = 0; header_ok && i < N; ++i) header_ok = header[i] == columns[i];
    if (!header_ok) throw Error(ErrorCode::HeaderMismatch, "unexpected header: " + line);

    while (csv::next_line(in, line, line_no)) {
        const auto cells = csv::split_line(line);
        try {
            if (cells.size() != N) {
                throw Error(ErrorCode::MissingField,
                            "expected " + std::to_string(N) + " cells, got " + std::to_string(cells.size()));
            }
            FieldMap raw;
            for (std::size_t i = 0; i < N; ++i) raw.emplace(columns[i], cells[i]);
            result.records.push_back(validate(raw));
        } catch (const Error& e) {
            if (mode == ParseMode::Strict) {
                throw Error(ErrorCode::RowError, "line " + std::to_string(line_no) + ": " + e.what(), e.field());
            }
            result.issues.push_back({line_no, e.code(), e.what()});
        }
    }
    return result;
}

template <std::size_t N>
void write_table(std::ostream& out, const std::array<const char*, N>& columns, const std::vector<FieldMap>& rows) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    };
    for (std::size_t i = 0; i < N; ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < N; ++i) out << (i ? "," : "") << quote(row.at(columns[i]));
        out << '\n';
    }
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return in;
}

}  // namespace

ParseResult<AisRecord> parse_ais_csv(std::istream& in, ParseMode mode) {
    return parse_table<AisRecord>(in, mode, kAisColumns, [](const FieldMap& m) { return validate_ais_record(m); });
}

ParseResult<IotRecord> parse_iot_csv(std::istream& in, ParseMode mode) {
    return parse_table<IotRecord>(in, mode, kIotColumns, [](const FieldMap& m) { return validate_iot_record(m); });
}

ParseResult<AisRecord> parse_ais_csv(const std::filesystem::path& path, ParseMode mode) {
    auto in = open_or_throw(path);
    return parse_ais_csv(in, mode);
}

ParseResult<IotRecord> parse_iot_csv(const std::filesystem::path& path, ParseMode mode) {
    auto in = open_or_throw(path);
    return parse_iot_csv(in, mode);
}

void write_ais_csv(std::ostream& out, std::span<const AisRecord> records) {
    std::vector<FieldMap> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back(to_field_map(r));
    write_table(out, kAisColumns, rows);
}

void write_iot_csv(std::ostream& out, std::span<const IotRecord> records) {
    std::vector<FieldMap> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back(to_field_map(r));
    write_table(out, kIotColumns, rows);
}

}  // namespace harbor
