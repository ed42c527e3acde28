#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "picdtc/coupling.hpp"
#include "picdtc/decoder.hpp"
#include "picdtc/density_evolution.hpp"
#include "picdtc/trellis.hpp"

namespace picdtc {

struct ExperimentConfig {
    std::string g_f = "5", g_f2 = "3", g_b = "7";
    CouplingConfig coupling;
    std::vector<double> eps_list;
    int64_t max_trials = 1000;
    int64_t min_erasure_events = 100;  // stop a point once this many residuals accumulate
    uint64_t seed = 1;
    DecodeBudgets budgets;
    int threads = 0;  // 0 -> hardware concurrency
};

struct BerPointResult {
    double epsilon = 0;
    int64_t payload_bits_total = 0;
    int64_t residual_erasures = 0;
    int64_t trials_run = 0;
    double ber() const {
        return payload_bits_total ? double(residual_erasures) / double(payload_bits_total) : 0.0;
    }
};

// One Monte-Carlo point: seeded trial streams (payload, interleavers,
// channel), encode, transmit, FF-FB decode. Trials run in deterministic
// index order regardless of thread count; every recovered bit is checked
// against the transmitted one.
BerPointResult ber_point(const Trellis& trellis2, const ExperimentConfig& cfg, double eps);

std::vector<BerPointResult> ber_sweep(const Trellis& trellis2, const ExperimentConfig& cfg);

struct ThresholdRow {
    double lambda = 0;
    int64_t m = 0;
    int64_t L = 0;
    double eps_bp = 0;
    double precision = 0;
    int64_t iterations = 0;
};

// Cartesian sweep over the lambda and m grids with a shared transfer memo.
std::vector<ThresholdRow> threshold_sweep(const Trellis& trellis2,
                                          const std::vector<double>& lambdas,
                                          const std::vector<int64_t>& ms, int64_t de_L,
                                          double precision);

// CSV emission; floats use 6 significant digits, one header line.
std::string threshold_csv(const std::vector<ThresholdRow>& rows);
std::string ber_csv(const std::vector<BerPointResult>& rows, uint64_t seed);
std::string rank_csv(const std::vector<RankedCandidate>& rows);

}  // namespace picdtc
