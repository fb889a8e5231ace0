#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

namespace harbor {

/// 64-bit FNV-1a, used for config and artifact fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Flat `key = value` configuration. Lines starting with '#' are comments;
/// keys are dotted (`sim.rta_rate`). Later duplicates override earlier ones.
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig parse(std::string_view text);
    static KvConfig load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Throws InvalidConfig naming every key not in `allowed`.
    void reject_unknown(const std::set<std::string>& allowed) const;

    /// Canonical serialization: sorted `key = value` lines.
    std::string canonical() const;
    std::uint64_t hash() const { return fnv1a64(canonical()); }

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace harbor
