#include "picdtc/density_evolution.hpp"

#include <algorithm>
#include <cmath>

#include "picdtc/errors.hpp"
#include "picdtc/trellis.hpp"

namespace picdtc {

DeState DeState::all_ones(int64_t L) {
    DeState st;
    st.p1U.assign(size_t(L), 1.0);
    st.p2U.assign(size_t(L), 1.0);
    st.p1L.assign(size_t(L), 1.0);
    st.p2L.assign(size_t(L), 1.0);
    return st;
}

namespace {

inline double at(const std::vector<double>& v, int64_t t) {
    return (t >= 1 && t <= int64_t(v.size())) ? v[size_t(t - 1)] : 0.0;
}

// 1 - lambda + (lambda/m) sum_j p2U(t+j) p2L(t+j)
double forward_coupling(const DeState& st, int64_t t, const DeConfig& cfg) {
    double sum = 0;
    for (int64_t j = 1; j <= cfg.m; ++j) sum += at(st.p2U, t + j) * at(st.p2L, t + j);
    return 1.0 - cfg.lambda + cfg.lambda / double(cfg.m) * sum;
}

// (lambda/m) sum_j p1U(t-j) p1L(t-j)
double backward_coupling(const DeState& st, int64_t t, const DeConfig& cfg) {
    double sum = 0;
    for (int64_t j = 1; j <= cfg.m; ++j) sum += at(st.p1U, t - j) * at(st.p1L, t - j);
    return cfg.lambda / double(cfg.m) * sum;
}

}  // namespace

void de_step(DeState& st, double eps, const DeConfig& cfg, const ExactTransfer& F) {
    const int64_t L = int64_t(st.p1U.size());
    const size_t n = st.p1U.size();
    std::vector<double> q1(n), q2(n);

    for (int64_t t = 1; t <= L; ++t) {
        q1[size_t(t - 1)] = eps * st.p1L[size_t(t - 1)] * forward_coupling(st, t, cfg);
        q2[size_t(t - 1)] = eps * st.p2L[size_t(t - 1)] * backward_coupling(st, t, cfg);
    }
    for (int64_t t = 1; t <= L; ++t) {
        const auto e = F.eval({q1[size_t(t - 1)], q2[size_t(t - 1)], eps});
        st.p1U[size_t(t - 1)] = e.e1;
        st.p2U[size_t(t - 1)] = e.e2;
    }
    for (int64_t t = 1; t <= L; ++t) {
        q1[size_t(t - 1)] = eps * st.p1U[size_t(t - 1)] * forward_coupling(st, t, cfg);
        q2[size_t(t - 1)] = eps * st.p2U[size_t(t - 1)] * backward_coupling(st, t, cfg);
    }
    for (int64_t t = 1; t <= L; ++t) {
        const auto e = F.eval({q1[size_t(t - 1)], q2[size_t(t - 1)], eps});
        st.p1L[size_t(t - 1)] = e.e1;
        st.p2L[size_t(t - 1)] = e.e2;
    }
}

std::vector<double> de_aposteriori(const DeState& st, double eps, const DeConfig& cfg) {
    const int64_t L = int64_t(st.p1U.size());
    std::vector<double> pu(st.p1U.size());
    for (int64_t t = 1; t <= L; ++t)
        pu[size_t(t - 1)] = eps * st.p1U[size_t(t - 1)] * st.p1L[size_t(t - 1)] *
                            forward_coupling(st, t, cfg);
    return pu;
}

DeRunResult de_run(double eps, const DeConfig& cfg, const ExactTransfer& F,
                   const DeParams& params) {
    if (eps < 0 || eps > 1) throw ConfigError("erasure probability outside [0, 1]");
    const int64_t L = cfg.chain_len();
    DeState st = DeState::all_ones(L);
    DeState prev = st;

    DeRunResult res;
    for (int64_t it = 1; it <= params.max_iters; ++it) {
        de_step(st, eps, cfg, F);
        res.iterations = it;

        const auto pu = de_aposteriori(st, eps, cfg);
        double maxp = 0;
        for (double v : pu) maxp = std::max(maxp, v);
        res.max_aposteriori = maxp;
        if (maxp < params.target) {
            res.converged = true;
            res.aposteriori = pu;
            return res;
        }

        double delta = 0;
        for (size_t i = 0; i < st.p1U.size(); ++i) {
            delta = std::max(delta, std::abs(st.p1U[i] - prev.p1U[i]));
            delta = std::max(delta, std::abs(st.p2U[i] - prev.p2U[i]));
            delta = std::max(delta, std::abs(st.p1L[i] - prev.p1L[i]));
            delta = std::max(delta, std::abs(st.p2L[i] - prev.p2L[i]));
        }
        if (delta < params.stall_tol) {
            res.aposteriori = pu;
            return res;  // stalled at a nonzero fixed point
        }
        prev = st;
    }
    res.aposteriori = de_aposteriori(st, eps, cfg);
    return res;
}

ThresholdResult find_threshold(const DeConfig& cfg, const ExactTransfer& F, double precision,
                               const DeParams& params) {
    if (precision < 1e-5) throw ConfigError("threshold precision below 1e-5");
    ThresholdResult out;
    out.config = cfg;
    out.precision = precision;
    double lo = 0.0, hi = 1.0;  // de_run trivially converges at 0, never at 1
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        const auto r = de_run(mid, cfg, F, params);
        out.total_de_iterations += r.iterations;
        ++out.bisection_steps;
        (r.converged ? lo : hi) = mid;
    }
    out.eps_bp = 0.5 * (lo + hi);
    out.interval_width = hi - lo;
    return out;
}

std::vector<RankedCandidate> rank_gf2(const OctalPoly& g_f, const OctalPoly& g_b,
                                      const std::vector<OctalPoly>& candidates,
                                      const DeConfig& ref, double precision) {
    if (candidates.empty()) throw ConfigError("rank_gf2: empty candidate list");
    std::vector<RankedCandidate> out;
    out.reserve(candidates.size());
    for (const auto& cand : candidates) {
        const Trellis trellis(g_f, cand, g_b);
        const ExactTransfer F(trellis);
        out.push_back({cand, find_threshold(ref, F, precision).eps_bp});
    }
    std::stable_sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
        if (a.threshold != b.threshold) return a.threshold > b.threshold;
        return a.g_f2.bits() < b.g_f2.bits();
    });
    return out;
}

}  // namespace picdtc
