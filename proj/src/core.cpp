#include "harbor/core.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace harbor {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::UnparsableTimestamp: return "UnparsableTimestamp";
        case ErrorCode::HeaderMismatch: return "HeaderMismatch";
        case ErrorCode::RowError: return "RowError";
        case ErrorCode::InvalidWorkType: return "InvalidWorkType";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::EmptyRoute: return "EmptyRoute";
        case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
        case ErrorCode::SpecMismatch: return "SpecMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotFitted: return "NotFitted";
        case ErrorCode::ZeroSpeed: return "ZeroSpeed";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::ZeroActual: return "ZeroActual";
        case ErrorCode::Empty: return "Empty";
        case ErrorCode::NoBerths: return "NoBerths";
        case ErrorCode::InfeasibleVessel: return "InfeasibleVessel";
        case ErrorCode::UnknownVessel: return "UnknownVessel";
        case ErrorCode::PastEta: return "PastEta";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::InfeasiblePlan: return "InfeasiblePlan";
        case ErrorCode::EmptySchedule: return "EmptySchedule";
        case ErrorCode::ZeroSpeedLeg: return "ZeroSpeedLeg";
        case ErrorCode::MismatchedVessels: return "MismatchedVessels";
        case ErrorCode::UnknownPredictor: return "UnknownPredictor";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& detail, const std::string& field) {
    std::string msg = to_string(code);
    if (!field.empty()) msg += "(" + field + ")";
    if (!detail.empty()) msg += ": " + detail;
    return msg;
}

// Fixed-width unsigned integer at text[pos, pos+width).
bool read_digits(const std::string& text, std::size_t pos, std::size_t width, int& out) {
    if (pos + width > text.size()) return false;
    int v = 0;
    for (std::size_t i = pos; i < pos + width; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        v = v * 10 + (text[i] - '0');
    }
    out = v;
    return true;
}

}  // namespace

Error::Error(ErrorCode code, std::string detail, std::string field)
    : std::runtime_error(compose(code, detail, field)), code_(code), field_(std::move(field)) {}

Instant parse_instant(const std::string& raw) {
    auto fail = [&] { return Error(ErrorCode::UnparsableTimestamp, "'" + raw + "'", "timestamp"); };

    std::string text = raw;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    std::size_t lead = 0;
    while (lead < text.size() && std::isspace(static_cast<unsigned char>(text[lead]))) ++lead;
    text.erase(0, lead);

    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (!read_digits(text, 0, 4, y) || text.size() < 10 || text[4] != '-' || text[7] != '-' ||
        !read_digits(text, 5, 2, mo) || !read_digits(text, 8, 2, d)) {
        throw fail();
    }
    std::size_t pos = 10;
    if (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos < text.size() && (text[pos] == 'T' || text[pos] == 't')) ++pos;
    if (!read_digits(text, pos, 2, h) || pos + 8 > text.size() || text[pos + 2] != ':' ||
        !read_digits(text, pos + 3, 2, mi) || text[pos + 5] != ':' || !read_digits(text, pos + 6, 2, s)) {
        throw fail();
    }
    pos += 8;

    std::int64_t micros = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (digits < 6) {
                micros = micros * 10 + (text[pos] - '0');
                ++digits;
            }
            ++pos;
        }
        if (digits == 0) throw fail();
        while (digits < 6) {
            micros *= 10;
            ++digits;
        }
    }
    std::string zone = text.substr(pos);
    while (!zone.empty() && zone.front() == ' ') zone.erase(0, 1);
    if (!(zone.empty() || zone == "Z" || zone == "z" || zone == "UTC")) throw fail();

    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60) throw fail();
    return Instant{sys_days{ymd}} + hours{h} + minutes{mi} + seconds{s} + microseconds{micros};
}

namespace {

struct Civil {
    int y;
    unsigned mo, d;
    long h, mi, s, us;
};

Civil split(Instant t) {
    using namespace std::chrono;
    const auto day_point = floor<days>(t);
    const year_month_day ymd{day_point};
    auto rem = t - day_point;
    Civil c{};
    c.y = static_cast<int>(ymd.year());
    c.mo = static_cast<unsigned>(ymd.month());
    c.d = static_cast<unsigned>(ymd.day());
    c.h = duration_cast<hours>(rem).count();
    rem -= hours{c.h};
    c.mi = duration_cast<minutes>(rem).count();
    rem -= minutes{c.mi};
    c.s = duration_cast<seconds>(rem).count();
    rem -= seconds{c.s};
    c.us = rem.count();
    return c;
}

}  // namespace

std::string format_instant_ais(Instant t) {
    const Civil c = split(t);
    char buf[80];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02ld:%02ld:%02ld.%06ld UTC", c.y, c.mo, c.d, c.h, c.mi, c.s,
                  c.us);
    return buf;
}

std::string format_instant_rfc3339(Instant t) {
    const Civil c = split(t);
    char buf[80];
    if (c.us == 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", c.y, c.mo, c.d, c.h, c.mi, c.s);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%06ldZ", c.y, c.mo, c.d, c.h, c.mi, c.s,
                      c.us);
    }
    return buf;
}

double minutes_between(Instant from, Instant to) {
    return static_cast<double>((to - from).count()) / 60e6;
}

Instant add_minutes(Instant t, double minutes) {
    return t + std::chrono::microseconds{static_cast<std::int64_t>(std::llround(minutes * 60e6))};
}

void validate_voyage(const Voyage& v) {
    if (v.route.size() < 2) throw Error(ErrorCode::EmptyRoute, "route needs at least two waypoints", v.vessel_id);
    for (std::size_t i = 1; i < v.route.size(); ++i) {
        if (v.route[i] == v.route[i - 1]) {
            throw Error(ErrorCode::OutOfRange, "consecutive duplicate waypoint", "route");
        }
    }
    if (v.promised_eta <= v.departure) throw Error(ErrorCode::OutOfRange, "eta not after departure", "promised_eta");
    if (!(v.max_speed > 0.0)) throw Error(ErrorCode::OutOfRange, "max_speed must be positive", "max_speed");
    if (v.van_count < 0) throw Error(ErrorCode::OutOfRange, "negative van count", "van_count");
}

}  // namespace harbor
