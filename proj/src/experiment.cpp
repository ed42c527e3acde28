#include "picdtc/experiment.hpp"

#include <cstdio>
#include <future>
#include <thread>

#include "picdtc/bec.hpp"
#include "picdtc/errors.hpp"
#include "picdtc/rng.hpp"

namespace picdtc {

namespace {

struct TrialOutcome {
    int64_t payload_bits = 0;
    int64_t residual = 0;
};

TrialOutcome run_trial(const Trellis& trellis2, const ExperimentConfig& cfg,
                       const std::vector<BlockLayout>& layout, double eps, int64_t trial) {
    const CouplingConfig& c = cfg.coupling;
    Rng rng_payload = Rng::stream(cfg.seed, stream_purpose::payload, uint64_t(trial));
    Rng rng_il = Rng::stream(cfg.seed, stream_purpose::interleaver, uint64_t(trial));
    Rng rng_ch = Rng::stream(cfg.seed, stream_purpose::channel, uint64_t(trial));

    const auto payload = rng_payload.bits(size_t(payload_bits(c)));
    const Interleavers il = make_interleavers(c, rng_il);
    const ChainCodeword cw = encode_chain(payload, c, layout, il, trellis2);
    const ChainChannelOutput rx = transmit_chain(cw, c, layout, eps, rng_ch);

    ChainDecoder dec(trellis2, c, layout, il);
    const DecodeResult res = dec.decode(rx, cfg.budgets);
    for (size_t i = 0; i < payload.size(); ++i)
        if (!res.payload_erased[i] && res.payload[i] != payload[i])
            throw DecodeError("recovered bit differs from transmitted one; harness bug");
    return {int64_t(payload.size()), res.residual_erasures};
}

}  // namespace

BerPointResult ber_point(const Trellis& trellis2, const ExperimentConfig& cfg, double eps) {
    cfg.coupling.validate();
    if (eps < 0 || eps > 1) throw ConfigError("erasure probability outside [0, 1]");
    const auto layout = make_layout(cfg.coupling);

    const int threads = cfg.threads > 0 ? cfg.threads
                                        : int(std::max(1u, std::thread::hardware_concurrency()));
    BerPointResult out;
    out.epsilon = eps;
    int64_t next = 0;
    while (next < cfg.max_trials && out.residual_erasures < cfg.min_erasure_events) {
        const int64_t batch = std::min<int64_t>(threads, cfg.max_trials - next);
        std::vector<std::future<TrialOutcome>> futs;
        futs.reserve(size_t(batch));
        for (int64_t b = 0; b < batch; ++b)
            futs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred,
                                      run_trial, std::cref(trellis2), std::cref(cfg),
                                      std::cref(layout), eps, next + b));
        for (auto& f : futs) {  // reduce in trial order: deterministic accounting
            const TrialOutcome t = f.get();
            out.payload_bits_total += t.payload_bits;
            out.residual_erasures += t.residual;
            ++out.trials_run;
        }
        next += batch;
    }
    return out;
}

std::vector<BerPointResult> ber_sweep(const Trellis& trellis2, const ExperimentConfig& cfg) {
    std::vector<BerPointResult> rows;
    rows.reserve(cfg.eps_list.size());
    for (double eps : cfg.eps_list) rows.push_back(ber_point(trellis2, cfg, eps));
    return rows;
}

std::vector<ThresholdRow> threshold_sweep(const Trellis& trellis2,
                                          const std::vector<double>& lambdas,
                                          const std::vector<int64_t>& ms, int64_t de_L,
                                          double precision) {
    if (lambdas.empty() || ms.empty()) throw ConfigError("threshold sweep: empty grid");
    ExactTransfer F(trellis2);
    std::vector<ThresholdRow> rows;
    for (double lambda : lambdas) {
        if (lambda < 0 || lambda > 1) throw ConfigError("coupling ratio outside [0, 1]");
        for (int64_t m : ms) {
            const DeConfig cfg{lambda, m, de_L};
            const ThresholdResult r = find_threshold(cfg, F, precision);
            rows.push_back(
                {lambda, m, cfg.chain_len(), r.eps_bp, r.precision, r.total_de_iterations});
        }
    }
    return rows;
}

namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string threshold_csv(const std::vector<ThresholdRow>& rows) {
    std::string out = "lambda,m,L,eps_bp,precision,iterations\n";
    for (const auto& r : rows)
        out += fmt6(r.lambda) + "," + std::to_string(r.m) + "," + std::to_string(r.L) + "," +
               fmt6(r.eps_bp) + "," + fmt6(r.precision) + "," + std::to_string(r.iterations) +
               "\n";
    return out;
}

std::string ber_csv(const std::vector<BerPointResult>& rows, uint64_t seed) {
    std::string out = "epsilon,payload_bits,residual_erasures,ber,trials,seed\n";
    for (const auto& r : rows)
        out += fmt6(r.epsilon) + "," + std::to_string(r.payload_bits_total) + "," +
               std::to_string(r.residual_erasures) + "," + fmt6(r.ber()) + "," +
               std::to_string(r.trials_run) + "," + std::to_string(seed) + "\n";
    return out;
}

std::string rank_csv(const std::vector<RankedCandidate>& rows) {
    std::string out = "g_f2,threshold\n";
    for (const auto& r : rows) out += r.g_f2.octal() + "," + fmt6(r.threshold) + "\n";
    return out;
}

}  // namespace picdtc
