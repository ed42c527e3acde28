#pragma once

#include <cstdint>
#include <vector>

#include "picdtc/octal.hpp"
#include "picdtc/transfer.hpp"

namespace picdtc {

// Asymptotic ensemble parameters; K drops out of the density evolution.
struct DeConfig {
    double lambda = 1.0;
    int64_t m = 1;
    int64_t L = 0;  // 0 -> 100 for m <= 10, else max(100, 10m)

    int64_t chain_len() const {
        if (L > 0) return L;
        return m <= 10 ? 100 : (10 * m > 100 ? 10 * m : 100);
    }
};

struct DeParams {
    double target = 1e-8;      // convergence on max_t of the a-posteriori profile
    int64_t max_iters = 10000;
    double stall_tol = 1e-12;  // early stop when nothing moves
};

// Factor-to-variable erasure probabilities across the chain, index t-1.
struct DeState {
    std::vector<double> p1U, p2U, p1L, p2L;
    static DeState all_ones(int64_t L);
};

// One flooding iteration: variable-to-upper messages, upper transfer,
// variable-to-lower messages (freshest available), lower transfer. Terms
// referencing blocks outside [1, L] are zero: both chain ends are known.
void de_step(DeState& st, double eps, const DeConfig& cfg, const ExactTransfer& F);

// A-posteriori erasure probability profile of the current state.
std::vector<double> de_aposteriori(const DeState& st, double eps, const DeConfig& cfg);

struct DeRunResult {
    bool converged = false;
    int64_t iterations = 0;
    double max_aposteriori = 1.0;
    std::vector<double> aposteriori;
};

DeRunResult de_run(double eps, const DeConfig& cfg, const ExactTransfer& F,
                   const DeParams& params = {});

struct ThresholdResult {
    double eps_bp = 0;
    double interval_width = 0;
    int64_t bisection_steps = 0;
    int64_t total_de_iterations = 0;
    double precision = 0;
    DeConfig config;
};

// Bisection on [0, 1] with de_run as the predicate.
ThresholdResult find_threshold(const DeConfig& cfg, const ExactTransfer& F,
                               double precision = 1e-4, const DeParams& params = {});

// Threshold-based ranking of candidate second forward polynomials at a fixed
// reference ensemble; descending threshold, ties broken by smaller octal value.
struct RankedCandidate {
    OctalPoly g_f2;
    double threshold = 0;
};

std::vector<RankedCandidate> rank_gf2(const OctalPoly& g_f, const OctalPoly& g_b,
                                      const std::vector<OctalPoly>& candidates,
                                      const DeConfig& ref = {1.0, 1, 0},
                                      double precision = 1e-4);

}  // namespace picdtc
