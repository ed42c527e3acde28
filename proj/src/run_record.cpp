#include "picdtc/run_record.hpp"

#include <fstream>

#include <json.hpp>

#include "picdtc/errors.hpp"

namespace picdtc {

using nlohmann::json;

static json config_json(const ExperimentConfig& c) {
    return json{{"g_f", c.g_f},
                {"g_f2", c.g_f2},
                {"g_b", c.g_b},
                {"K", c.coupling.K},
                {"Kc", c.coupling.Kc},
                {"m", c.coupling.m},
                {"L", c.coupling.L},
                {"eps", c.eps_list},
                {"max_trials", c.max_trials},
                {"min_erasure_events", c.min_erasure_events},
                {"seed", c.seed},
                {"max_inner_iters", c.budgets.max_inner_iters},
                {"max_sweeps", c.budgets.max_sweeps}};
}

std::string RunRecord::to_json() const {
    json j;
    j["format_version"] = format_version;
    j["rng_scheme"] = rng_scheme;
    j["kind"] = kind;
    j["config"] = config_json(config);
    if (kind == "threshold") {
        json rows = json::array();
        for (const auto& r : thresholds)
            rows.push_back({{"lambda", r.lambda},
                            {"m", r.m},
                            {"L", r.L},
                            {"eps_bp", r.eps_bp},
                            {"precision", r.precision},
                            {"iterations", r.iterations}});
        j["results"] = rows;
    } else if (kind == "ber") {
        json rows = json::array();
        for (const auto& r : ber_points)
            rows.push_back({{"epsilon", r.epsilon},
                            {"payload_bits", r.payload_bits_total},
                            {"residual_erasures", r.residual_erasures},
                            {"ber", r.ber()},
                            {"trials", r.trials_run}});
        j["results"] = rows;
    } else if (kind == "ranksearch") {
        json rows = json::array();
        for (const auto& r : ranking)
            rows.push_back({{"g_f2", r.g_f2.octal()}, {"threshold", r.threshold}});
        j["results"] = rows;
    }
    j["wall_time_s"] = wall_time_s;
    return j.dump(2) + "\n";
}

bool RunRecord::same_results(const RunRecord& other) const {
    json a = json::parse(to_json());
    json b = json::parse(other.to_json());
    a.erase("wall_time_s");
    b.erase("wall_time_s");
    return a == b;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open '" + path + "' for writing");
    f << content;
}

}  // namespace picdtc
