#pragma once

#include <string>

#include "picdtc/experiment.hpp"

namespace picdtc {

// Self-describing result of one threshold search or BER sweep. Two records
// from reruns with the same config and seed carry identical result fields;
// only wall_time_s may differ.
struct RunRecord {
    static constexpr int format_version = 1;
    static constexpr const char* rng_scheme = "xoshiro256ss/splitmix64 counter streams v1";

    std::string kind;  // "threshold" | "ber" | "ranksearch"
    ExperimentConfig config;
    std::vector<ThresholdRow> thresholds;
    std::vector<BerPointResult> ber_points;
    std::vector<RankedCandidate> ranking;
    double wall_time_s = 0;

    std::string to_json() const;
    // Equality of everything except wall time.
    bool same_results(const RunRecord& other) const;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace picdtc
