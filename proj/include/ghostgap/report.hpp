#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "ghostgap/symmetrization.hpp"
#include "ghostgap/version.hpp"

namespace ghostgap {

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Stable digest of the canonicalized config document.
inline std::string config_hash(const nlohmann::json& canonical) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical.dump())));
    return buf;
}

inline nlohmann::json estimate_report_to_json(const EstimateReport& r) {
    nlohmann::json j;
    j["m"] = static_cast<int>(r.m);
    j["eps"] = r.eps.to_string();
    j["growth_2m"] = r.growth_2m;
    j["bound"] = r.bound;
    j["bound_satisfied"] = r.bound_satisfied;
    if (r.mode == EstimateReport::Mode::exact) {
        j["mode"] = "exact";
        j["probability"] = r.exact_probability.to_string();
        j["probability_float"] = r.probability;
    } else {
        j["mode"] = "mc";
        j["probability"] = r.probability;
        j["trials"] = r.trials;
        j["hits"] = r.hits;
        j["confidence_radius"] = r.confidence_radius;
        j["delta_ci"] = r.delta_ci;
        j["seed"] = r.seed;
    }
    return j;
}

// Full run record. Timestamps are the only nondeterministic fields and live
// in the single "timing" sub-object so tests can strip them.
struct RunManifest {
    nlohmann::json report;
    std::string csv_text;  // empty when the run produced no sweep table

    std::string dump() const { return report.dump(2) + "\n"; }
};

inline nlohmann::json make_manifest(const std::string& command, const nlohmann::json& canonical,
                                    std::uint64_t seed, nlohmann::json result,
                                    std::chrono::system_clock::time_point started) {
    auto now = std::chrono::system_clock::now();
    auto ms = [](std::chrono::system_clock::time_point t) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch())
            .count();
    };
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["config_hash"] = config_hash(canonical);
    manifest["version"] = tool_version_string();
    manifest["seed"] = seed;
    manifest["result"] = std::move(result);
    manifest["timing"] = {{"start_unix_ms", ms(started)}, {"end_unix_ms", ms(now)}};
    return manifest;
}

inline nlohmann::json strip_timing(nlohmann::json manifest) {
    manifest.erase("timing");
    return manifest;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << text;
}

}  // namespace ghostgap
