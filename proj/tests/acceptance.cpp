// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one PASS/FAIL line per criterion. The heavy m=50 threshold is opt-in via
// PICDTC_HEAVY=1. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bcjr_oracle.hpp"
#include "picdtc/bec.hpp"
#include "picdtc/decoder.hpp"
#include "picdtc/density_evolution.hpp"
#include "picdtc/experiment.hpp"
#include "picdtc/run_record.hpp"
#include "picdtc/set_bcjr.hpp"

using namespace picdtc;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t_section;

void begin_section() { t_section = std::chrono::steady_clock::now(); }

void report(int crit, bool pass, const std::string& what) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_section).count();
    std::printf("[%d] %s %s  (%.1fs)\n", crit, pass ? "PASS" : "FAIL", what.c_str(), secs);
    std::fflush(stdout);
    if (!pass) ++failures;
}

void note(const std::string& line) {
    std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

const Trellis& trellis2() {
    static const Trellis t(OctalPoly::parse("5"), OctalPoly::parse("3"), OctalPoly::parse("7"));
    return t;
}

BerPointResult ber_at(const CouplingConfig& c, double eps, int64_t max_trials, uint64_t seed) {
    ExperimentConfig cfg;
    cfg.coupling = c;
    cfg.seed = seed;
    cfg.max_trials = max_trials;
    cfg.min_erasure_events = 100;
    cfg.budgets.max_sweeps = 60;  // headroom for near-threshold decoding waves
    cfg.threads = 2;
    return ber_point(trellis2(), cfg, eps);
}

}  // namespace

int main() {
    const ExactTransfer F(trellis2());
    const double cap = 2.0 / 3.0;
    const double precision = 1e-4;

    // thresholds over the full lambda x m grid; boundary rows feed criteria
    // 1-4, the whole grid feeds the monotonicity property
    const std::vector<double> lambda_grid{1.0 / 8, 1.0 / 4, 1.0 / 2, 3.0 / 4, 1.0};
    const std::vector<int64_t> m_grid{1, 2, 5, 10};
    std::map<std::pair<double, int64_t>, double> th;
    begin_section();
    for (double lam : lambda_grid)
        for (int64_t m : m_grid)
            th[{lam, m}] = find_threshold(DeConfig{lam, m, 0}, F, precision).eps_bp;
    note("threshold grid of " + std::to_string(th.size()) + " ensembles computed");

    // 1. threshold reproduction
    {
        const double t11 = th[{1.0, 1}];
        const double t15 = th[{1.0, 5}];
        bool ok = std::abs(t11 - 0.6594) <= 0.002 && std::abs(t15 - 0.6644) <= 0.002;
        std::string what = "thresholds: (lambda=1,m=1) = " + fmt(t11) +
                           " [0.6594 +/- 0.002], (lambda=1,m=5) = " + fmt(t15) +
                           " [0.6644 +/- 0.002]";
        if (std::getenv("PICDTC_HEAVY")) {
            DeParams params;
            params.max_iters = 30000;
            const double t50 = find_threshold(DeConfig{1.0, 50, 0}, F, precision, params).eps_bp;
            ok = ok && std::abs(t50 - 0.6656) <= 0.002;
            what += ", (lambda=1,m=50) = " + fmt(t50) + " [0.6656 +/- 0.002]";
        } else {
            what += "; m=50 skipped (set PICDTC_HEAVY=1)";
        }
        report(1, ok, what);
        begin_section();
    }

    // 2. threshold vs coupling ratio: monotone, capacity gaps at 1/2 and 1
    {
        bool mono = true;
        for (size_t i = 1; i < lambda_grid.size(); ++i)
            mono &= th[{lambda_grid[i], 1}] >= th[{lambda_grid[i - 1], 1}] - 2 * precision;
        const double gap_half = cap - th[{0.5, 1}];
        const double gap_one = cap - th[{1.0, 1}];
        const bool ok = mono && std::abs(gap_half - 0.009) <= 0.002 &&
                        std::abs(gap_one - 0.0073) <= 0.002;
        report(2, ok,
               "lambda sweep at m=1 monotone=" + std::string(mono ? "yes" : "no") +
                   ", capacity gap at 1/2 = " + fmt(gap_half) + " [0.009 +/- 0.002], at 1 = " +
                   fmt(gap_one) + " [0.0073 +/- 0.002]");
        begin_section();
    }

    // 3. threshold vs coupling memory at lambda=1
    {
        bool mono = true;
        for (size_t i = 1; i < m_grid.size(); ++i)
            mono &= th[{1.0, m_grid[i]}] >= th[{1.0, m_grid[i - 1]}] - 2 * precision;
        const double gain = th[{1.0, 5}] - th[{1.0, 1}];
        const bool ok = mono && gain >= 0.003;
        report(3, ok,
               "m sweep at lambda=1 monotone=" + std::string(mono ? "yes" : "no") +
                   ", improvement m=1 to m=5 = " + fmt(gain) + " [>= 0.003]");
        begin_section();
    }

    // 4. simulation vs density evolution at K=1e4, L=20
    {
        bool ok = true;
        std::string what = "sim vs DE:";
        for (double lam : {0.25, 0.5}) {
            const double eps_bp = th[{lam, 1}];
            const CouplingConfig c{10000, int64_t(lam * 10000), 1, 20};
            const auto lo = ber_at(c, eps_bp - 0.01, 12, 411);
            const auto hi = ber_at(c, eps_bp + 0.02, 3, 412);
            ok = ok && lo.ber() <= 1e-4 && hi.ber() >= 1e-2;
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          " lambda=%g: BER(%.4f) = %.2e [<= 1e-4], BER(%.4f) = %.2e [>= 1e-2];",
                          lam, eps_bp - 0.01, lo.ber(), eps_bp + 0.02, hi.ber());
            what += buf;
        }
        report(4, ok, what);
        begin_section();
    }

    // 5. coupling gain over the uncoupled code at eps = 0.645
    {
        const CouplingConfig coupled{10000, 7500, 1, 20};
        const CouplingConfig uncoupled{10000, 0, 1, 20};
        const auto b_cpl = ber_at(coupled, 0.645, 6, 511);
        const auto b_unc = ber_at(uncoupled, 0.645, 6, 512);
        const bool ok = b_unc.ber() > 0 && 10.0 * b_cpl.ber() <= b_unc.ber();
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "coupling gain at eps=0.645: BER(lambda=3/4) = %.2e, BER(lambda=0) = %.2e "
                      "[factor >= 10]",
                      b_cpl.ber(), b_unc.ber());
        report(5, ok, buf);
        begin_section();
    }

    // 6. property suites
    {
        bool ok = true;

        // never-wrong decoding over 1e3 randomized runs
        {
            Rng rng(0xACCE5501);
            bool never_wrong = true;
            for (int trial = 0; trial < 1000 && never_wrong; ++trial) {
                const int64_t m = 1 + rng.below(2);
                const int64_t seg = rng.below(4);
                const int64_t K = m * seg + 4 + rng.below(28);
                const CouplingConfig c{K, m * seg, m, m + rng.below(4)};
                const auto layout = make_layout(c);
                Rng il_rng(rng.next());
                const Interleavers il = make_interleavers(c, il_rng);
                const auto payload = rng.bits(size_t(payload_bits(c)));
                const auto cw = encode_chain(payload, c, layout, il, trellis2());
                Rng ch(rng.next());
                const auto rx = transmit_chain(cw, c, layout, rng.uniform(), ch);
                ChainDecoder dec(trellis2(), c, layout, il);
                const auto res = dec.decode(rx);
                for (size_t i = 0; i < payload.size(); ++i)
                    if (!res.payload_erased[i] && res.payload[i] != payload[i]) never_wrong = false;
                for (size_t s = 1; s < res.residual_history.size(); ++s)
                    if (res.residual_history[s] > res.residual_history[s - 1]) never_wrong = false;
            }
            ok &= never_wrong;
            note(std::string("never-wrong + sweep monotonicity over 1000 runs: ") +
                 (never_wrong ? "ok" : "VIOLATED"));
        }

        // shortening equivalence over 1e3 vectors
        {
            const Trellis t1(OctalPoly::parse("5"), OctalPoly::parse("7"));
            Rng rng(0xACCE5502);
            bool same = true;
            for (int trial = 0; trial < 1000 && same; ++trial) {
                const size_t n = 1 + rng.below(96);
                const auto u = rng.bits(n);
                const std::vector<uint8_t> zero(n, 0);
                same = rsc_encode(trellis2(), u, zero).parity == rsc_encode(t1, u).parity;
            }
            ok &= same;
            note(std::string("shortening equivalence RSC2(u,0) == RSC1(u) over 1000 vectors: ") +
                 (same ? "ok" : "VIOLATED"));
        }

        // set_bcjr vs exhaustive-completion oracle, K <= 12, 1e3 trials
        {
            const SetBcjr dec(trellis2());
            Rng rng(0xACCE5503);
            bool agree = true;
            for (int trial = 0; trial < 1000 && agree; ++trial) {
                const size_t n = 1 + rng.below(12);
                const auto w = picdtc_test::random_trial(rng, trellis2(), n, 10);
                TernaryWord e1, e2;
                dec.run(w.p1, w.p2, w.pv, e1, e2);
                const auto oracle = picdtc_test::bcjr_oracle(trellis2(), w.p1, w.p2, w.pv);
                agree = !oracle.contradiction && e1 == oracle.e1 && e2 == oracle.e2;
            }
            ok &= agree;
            note(std::string("set_bcjr vs exhaustive oracle over 1000 trials: ") +
                 (agree ? "ok" : "VIOLATED"));
        }

        // code-rate identities on randomized configs, checked structurally
        {
            Rng rng(0xACCE5504);
            bool exact = true;
            for (int trial = 0; trial < 300 && exact; ++trial) {
                const int64_t m = 1 + rng.below(5);
                const int64_t seg = 1 + rng.below(6);
                const int64_t K = m * seg + rng.below(40);
                const CouplingConfig c{K, m * seg, m, m + rng.below(10)};
                const auto layout = make_layout(c);
                const Rational r = code_rate(c);
                const int64_t num = int64_t(payload_positions(c, layout).size());
                Rng il_rng(rng.next());
                const Interleavers il = make_interleavers(c, il_rng);
                const auto cw =
                    encode_chain(std::vector<uint8_t>(size_t(num), 0), c, layout, il, trellis2());
                const int64_t den = int64_t(serialize_chain(cw, c, layout).size());
                exact = r == Rational(num, den) && std::gcd(r.num, r.den) == 1 &&
                        den - num == 2 * c.K * c.L;
            }
            ok &= exact;
            note(std::string("code-rate rational identities over 300 random configs: ") +
                 (exact ? "ok" : "VIOLATED"));
        }

        // exact transfer vs Monte-Carlo on a 5x5x5 grid, 3 sigma with
        // batch-means errors; a query that trips once is retried at 10x the
        // sample size with a fresh seed, so 250 simultaneous 3-sigma checks
        // do not fail on the expected statistical stragglers while a real
        // discrepancy, whose z grows with the sample size, still fails
        {
            const double grid[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
            bool within = true;
            int idx = 0;
            int retried = 0;
            for (double q1 : grid)
                for (double q2 : grid)
                    for (double ep : grid) {
                        const TransferQuery q{q1, q2, ep};
                        const auto ex = F.eval_exact(q);
                        auto pass_at = [&](size_t n, uint64_t seed) {
                            const auto mc = transfer_mc(trellis2(), q, n, seed);
                            const double floor_se = 10.0 / double(mc.counted);
                            return std::abs(ex.e1 - mc.e1) <= 3 * std::max(mc.se1, floor_se) &&
                                   std::abs(ex.e2 - mc.e2) <= 3 * std::max(mc.se2, floor_se);
                        };
                        const uint64_t seed = 600 + uint64_t(idx++);
                        if (!pass_at(30000, seed)) {
                            ++retried;
                            if (!pass_at(300000, seed + 1000)) within = false;
                        }
                    }
            ok &= within;
            note("transfer_exact vs transfer_mc on the 5x5x5 grid: " +
                 std::string(within ? "ok" : "VIOLATED") + " (" + std::to_string(retried) +
                 " retried)");
        }

        // DE trajectory monotonicity at 10 random points
        {
            Rng rng(0xACCE5505);
            bool mono = true;
            for (int point = 0; point < 10 && mono; ++point) {
                const double eps = rng.uniform();
                const DeConfig cfg{rng.uniform(), int64_t(1 + rng.below(5)), 40};
                DeState st = DeState::all_ones(40);
                DeState prev = st;
                for (int it = 0; it < 60 && mono; ++it) {
                    de_step(st, eps, cfg, F);
                    for (size_t i = 0; i < st.p1U.size(); ++i) {
                        mono &= st.p1U[i] <= prev.p1U[i] + 1e-15;
                        mono &= st.p2U[i] <= prev.p2U[i] + 1e-15;
                        mono &= st.p1L[i] <= prev.p1L[i] + 1e-15;
                        mono &= st.p2L[i] <= prev.p2L[i] + 1e-15;
                    }
                    prev = st;
                }
            }
            ok &= mono;
            note(std::string("DE trajectory monotonicity at 10 random points: ") +
                 (mono ? "ok" : "VIOLATED"));
        }

        // threshold monotonicity over the full grid, both directions
        {
            bool mono = true;
            for (int64_t m : m_grid)
                for (size_t i = 1; i < lambda_grid.size(); ++i)
                    mono &= th[{lambda_grid[i], m}] >= th[{lambda_grid[i - 1], m}] - 2 * precision;
            for (double lam : lambda_grid)
                for (size_t i = 1; i < m_grid.size(); ++i)
                    mono &= th[{lam, m_grid[i]}] >= th[{lam, m_grid[i - 1]}] - 2 * precision;
            ok &= mono;
            note(std::string("threshold monotonicity over the 5x4 grid: ") +
                 (mono ? "ok" : "VIOLATED"));
        }

        report(6, ok, "property suites");
        begin_section();
    }

    // 7. generator-polynomial search reproduction
    {
        std::vector<OctalPoly> candidates;
        for (uint64_t v = 1; v <= 7; ++v) candidates.push_back(OctalPoly(v));
        const auto ranking = rank_gf2(OctalPoly::parse("5"), OctalPoly::parse("7"), candidates,
                                      DeConfig{1.0, 1, 0}, precision);
        size_t pos3 = ranking.size();
        for (size_t i = 0; i < ranking.size(); ++i)
            if (ranking[i].g_f2 == OctalPoly::parse("3")) pos3 = i;
        std::string table;
        for (const auto& r : ranking) table += r.g_f2.octal() + "=" + fmt(r.threshold) + " ";
        note("ranking (g_f2=threshold): " + table);
        write_text_file("acceptance_ranking.csv", rank_csv(ranking));
        report(7, pos3 < 2,
               "g_f'=3 ranked " + std::to_string(pos3 + 1) + " of 7 by threshold [top two]");
    }

    std::printf("ACCEPTANCE: %d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
