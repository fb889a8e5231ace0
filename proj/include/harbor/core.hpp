#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace harbor {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
    MissingField,
    OutOfRange,
    UnparsableTimestamp,
    HeaderMismatch,
    RowError,
    InvalidWorkType,
    InvalidConfig,
    EmptyRoute,
    EmptyTrajectory,
    SpecMismatch,
    ShapeMismatch,
    NotFitted,
    ZeroSpeed,
    LengthMismatch,
    ZeroActual,
    Empty,
    NoBerths,
    InfeasibleVessel,
    UnknownVessel,
    PastEta,
    TooLarge,
    InfeasiblePlan,
    EmptySchedule,
    ZeroSpeedLeg,
    MismatchedVessels,
    UnknownPredictor,
    Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string detail, std::string field = {});

    ErrorCode code() const noexcept { return code_; }
    /// Name of the offending field, when the error concerns one.
    const std::string& field() const noexcept { return field_; }

private:
    ErrorCode code_;
    std::string field_;
};

// ---------------------------------------------------------------------------
// Units
// ---------------------------------------------------------------------------

inline constexpr double kMetersPerSecondPerKnot = 0.514444;
inline constexpr double kMetersPerNauticalMile = 1852.0;
inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kPi = 3.14159265358979323846;

constexpr double km_to_nm(double km) { return km * 1000.0 / kMetersPerNauticalMile; }
constexpr double nm_to_km(double nm) { return nm * kMetersPerNauticalMile / 1000.0; }
constexpr double knots_to_mps(double kn) { return kn * kMetersPerSecondPerKnot; }
constexpr double mps_to_knots(double mps) { return mps / kMetersPerSecondPerKnot; }
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// ---------------------------------------------------------------------------
// Time
// ---------------------------------------------------------------------------

using Instant = std::chrono::sys_time<std::chrono::microseconds>;

/// Accepts "2019-07-03 00:00:15.015121 UTC" and RFC-3339 "2021-10-31T20:59:59Z"
/// (also the "2021-10-31 T20:59:59Z" spelling). Throws UnparsableTimestamp.
Instant parse_instant(const std::string& text);

/// "YYYY-MM-DD HH:MM:SS.ffffff UTC"
std::string format_instant_ais(Instant t);
/// "YYYY-MM-DDTHH:MM:SSZ", with ".ffffff" before the Z when the instant has
/// a sub-second part.
std::string format_instant_rfc3339(Instant t);

double minutes_between(Instant from, Instant to);
Instant add_minutes(Instant t, double minutes);

// ---------------------------------------------------------------------------
// Domain records
// ---------------------------------------------------------------------------

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const LatLon&, const LatLon&) = default;
};

/// One timestamped AIS observation. Heading and ROT are empty when the
/// transponder reported its "not available" sentinel (511 and -128).
struct AisRecord {
    Instant timestamp{};
    std::string mmsi;
    LatLon position;
    double sog = 0.0;
    double cog = 0.0;
    std::optional<int> heading;
    std::optional<double> rot;
    double draught = 0.0;
    int ship_type = 0;
    double ship_length = 0.0;
    double ship_width = 0.0;

    friend bool operator==(const AisRecord&, const AisRecord&) = default;
};

inline constexpr int kHeadingUnavailable = 511;
inline constexpr double kRotUnavailable = -128.0;

enum class WorkType { Unloading, Loading };

struct IotRecord {
    Instant timestamp{};
    std::string equipment_index;
    int device_id = 0;
    LatLon position;
    double altitude = 0.0;
    double velocity = 0.0;
    double direction = 0.0;
    WorkType work_type = WorkType::Unloading;

    friend bool operator==(const IotRecord&, const IotRecord&) = default;
};

struct Voyage {
    std::string vessel_id;
    std::vector<LatLon> route;
    Instant departure{};
    Instant promised_eta{};
    double max_speed = 0.0;  // knots
    int van_count = 0;
    double draught = 0.0;
};

/// Throws EmptyRoute / OutOfRange when the voyage breaks its invariants.
void validate_voyage(const Voyage& voyage);

}  // namespace harbor
