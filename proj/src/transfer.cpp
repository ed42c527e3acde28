#include "picdtc/transfer.hpp"

#include <cmath>

#include "picdtc/errors.hpp"
#include "picdtc/rng.hpp"
#include "picdtc/set_bcjr.hpp"

namespace picdtc {

namespace {

inline double clamp01(double x) { return x < 0 ? 0 : (x > 1 ? 1 : x); }

}  // namespace

ExactTransfer::ExactTransfer(const Trellis& t) : num_states_(t.num_states()) {
    if (t.num_inputs() != 2) throw ConfigError("transfer function needs a two-input trellis");
    if (num_states_ > 8) throw ConfigError("transfer function supports at most 8 states");

    const size_t nmask = size_t(1) << num_states_;
    sub_index_.assign(nmask, 0);
    for (size_t mask = 1; mask < nmask; mask += 2) {  // subsets containing state 0
        sub_index_[mask] = uint16_t(sub_mask_.size());
        sub_mask_.push_back(uint16_t(mask));
    }
    nsub_ = sub_mask_.size();

    // single-state next masks per erasure pattern, all-zero conditioned:
    // a known input message reveals 0, a known parity observation reads 0
    auto next_single = [&](int pat, int s) {
        uint16_t m = 0;
        for (unsigned x = 0; x < 4; ++x) {
            if (!(pat & 1) && (x & 1u)) continue;
            if (!(pat & 2) && (x & 2u)) continue;
            if (!(pat & 4) && t.parity(s, x) != 0) continue;
            m |= uint16_t(1u << t.next_state(s, x));
        }
        return m;
    };

    fwd_next_.assign(8 * nsub_, 0);
    bwd_prev_.assign(8 * nsub_, 0);
    const size_t ns = size_t(num_states_);
    for (int pat = 0; pat < 8; ++pat) {
        std::vector<uint16_t> single(ns);
        for (int s = 0; s < num_states_; ++s) single[size_t(s)] = next_single(pat, s);
        for (size_t a = 0; a < nsub_; ++a) {
            uint16_t fwd = 0, bwd = 0;
            const uint16_t amask = sub_mask_[a];
            for (int s = 0; s < num_states_; ++s) {
                if (amask >> s & 1u) fwd |= single[size_t(s)];
                if (single[size_t(s)] & amask) bwd |= uint16_t(1u << s);
            }
            fwd_next_[size_t(pat) * nsub_ + a] = sub_index_[fwd];
            bwd_prev_[size_t(pat) * nsub_ + a] = sub_index_[bwd];
        }
    }

    for (int j = 0; j < 2; ++j) {
        reach_[j].assign(4 * nsub_, 0);
        for (int pat = 0; pat < 4; ++pat) {  // bit0: other input erased, bit1: parity erased
            for (size_t a = 0; a < nsub_; ++a) {
                uint16_t m = 0;
                const uint16_t amask = sub_mask_[a];
                for (int s = 0; s < num_states_; ++s) {
                    if (!(amask >> s & 1u)) continue;
                    for (unsigned x = 0; x < 4; ++x) {
                        const unsigned xj = j == 0 ? (x & 1u) : (x >> 1 & 1u);
                        const unsigned xo = j == 0 ? (x >> 1 & 1u) : (x & 1u);
                        if (xj != 1u) continue;
                        if (!(pat & 1) && xo) continue;
                        if (!(pat & 2) && t.parity(s, x) != 0) continue;
                        m |= uint16_t(1u << t.next_state(s, x));
                    }
                }
                reach_[j][size_t(pat) * nsub_ + a] = m;
            }
        }
    }
}

// Limiting distribution of the subset chain from a point initialization,
// computed by repeated squaring of the half-lazy transition matrix.
std::vector<double> ExactTransfer::stationary(const std::vector<double>& m, size_t init) const {
    const size_t n = nsub_;
    std::vector<double> p(n * n), q(n * n);
    for (size_t to = 0; to < n; ++to)
        for (size_t from = 0; from < n; ++from)
            p[to * n + from] = 0.5 * m[to * n + from] + (to == from ? 0.5 : 0.0);

    std::vector<double> prev(n);
    for (size_t i = 0; i < n; ++i) prev[i] = p[i * n + init];
    for (int iter = 0; iter < 64; ++iter) {
        for (size_t to = 0; to < n; ++to)
            for (size_t from = 0; from < n; ++from) {
                double acc = 0;
                for (size_t k = 0; k < n; ++k) acc += p[to * n + k] * p[k * n + from];
                q[to * n + from] = acc;
            }
        for (size_t from = 0; from < n; ++from) {  // keep columns stochastic
            double sum = 0;
            for (size_t to = 0; to < n; ++to) sum += q[to * n + from];
            for (size_t to = 0; to < n; ++to) q[to * n + from] /= sum;
        }
        p.swap(q);
        double diff = 0;
        for (size_t i = 0; i < n; ++i) {
            const double v = p[i * n + init];
            diff = std::max(diff, std::abs(v - prev[i]));
            prev[i] = v;
        }
        if (diff <= 1e-12) return prev;
    }
    throw NumericalError("transfer: stationary distribution did not reach 1e-12");
}

TransferPoint ExactTransfer::eval_exact(const TransferQuery& query) const {
    const double q1 = clamp01(query.q1), q2 = clamp01(query.q2), ep = clamp01(query.eps_parity);

    double pp[8];
    for (int pat = 0; pat < 8; ++pat)
        pp[pat] = (pat & 1 ? q1 : 1 - q1) * (pat & 2 ? q2 : 1 - q2) * (pat & 4 ? ep : 1 - ep);

    const size_t n = nsub_;
    std::vector<double> mf(n * n, 0.0), mb(n * n, 0.0);
    for (int pat = 0; pat < 8; ++pat) {
        if (pp[pat] == 0.0) continue;
        for (size_t a = 0; a < n; ++a) {
            mf[size_t(fwd_next_[size_t(pat) * n + a]) * n + a] += pp[pat];
            mb[size_t(bwd_prev_[size_t(pat) * n + a]) * n + a] += pp[pat];
        }
    }
    const auto pf = stationary(mf, sub_index_[1]);                       // from {0}
    const auto pb = stationary(mb, sub_index_[(1u << num_states_) - 1]);  // from full set

    TransferPoint out;
    for (int j = 0; j < 2; ++j) {
        const double qo = j == 0 ? q2 : q1;
        double e = 0;
        for (int pat = 0; pat < 4; ++pat) {
            const double w = (pat & 1 ? qo : 1 - qo) * (pat & 2 ? ep : 1 - ep);
            if (w == 0.0) continue;
            for (size_t a = 0; a < n; ++a) {
                if (pf[a] == 0.0) continue;
                const uint16_t r = reach_[j][size_t(pat) * n + a];
                double hit = 0;
                for (size_t b = 0; b < n; ++b)
                    if (sub_mask_[b] & r) hit += pb[b];
                e += w * pf[a] * hit;
            }
        }
        (j == 0 ? out.e1 : out.e2) = clamp01(e);
    }
    return out;
}

TransferPoint ExactTransfer::eval(const TransferQuery& query) const {
    const auto grid = [](double v) { return uint64_t(std::llround(clamp01(v) * 1e6)); };
    const uint64_t key = (grid(query.q1) * 1000001ULL + grid(query.q2)) * 1000001ULL +
                         grid(query.eps_parity);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const TransferPoint p = eval_exact({double(grid(query.q1)) * 1e-6,
                                        double(grid(query.q2)) * 1e-6,
                                        double(grid(query.eps_parity)) * 1e-6});
    memo_.emplace(key, p);
    return p;
}

McTransferResult transfer_mc(const Trellis& t, const TransferQuery& query, size_t num_steps,
                             uint64_t seed) {
    if (t.num_inputs() != 2) throw ConfigError("transfer_mc needs a two-input trellis");
    if (num_steps < 10000) throw ConfigError("transfer_mc needs at least 1e4 steps");

    Rng rng = Rng::stream(seed, stream_purpose::transfer_mc, 0);
    std::vector<uint8_t> u(num_steps), u2(num_steps), par(num_steps);
    int state = 0;
    for (size_t k = 0; k < num_steps; ++k) {
        u[k] = rng.bit();
        u2[k] = rng.bit();
        const unsigned x = (u[k] & 1u) | unsigned((u2[k] & 1u) << 1);
        par[k] = uint8_t(t.parity(state, x));
        state = t.next_state(state, x);
    }
    TernaryWord p1(num_steps), p2(num_steps), pv(num_steps);
    for (size_t k = 0; k < num_steps; ++k) {
        p1[k] = rng.bernoulli(query.q1) ? Sym::Erased : sym_from_bit(u[k]);
        p2[k] = rng.bernoulli(query.q2) ? Sym::Erased : sym_from_bit(u2[k]);
        pv[k] = rng.bernoulli(query.eps_parity) ? Sym::Erased : sym_from_bit(par[k]);
    }
    SetBcjr dec(t);
    TernaryWord e1, e2;
    dec.run(p1, p2, pv, e1, e2);

    // extrinsic erasures are autocorrelated along the trellis, so standard
    // errors come from batch means rather than the binomial formula
    const size_t burn = std::min<size_t>(1000, num_steps / 10);
    const size_t nbatch = 100;
    const size_t bs = (num_steps - 2 * burn) / nbatch;
    McTransferResult r;
    r.counted = nbatch * bs;
    double m1[nbatch], m2[nbatch];
    for (size_t b = 0; b < nbatch; ++b) {
        size_t c1 = 0, c2 = 0;
        for (size_t k = burn + b * bs; k < burn + (b + 1) * bs; ++k) {
            c1 += e1[k] == Sym::Erased;
            c2 += e2[k] == Sym::Erased;
        }
        m1[b] = double(c1) / double(bs);
        m2[b] = double(c2) / double(bs);
        r.e1 += m1[b];
        r.e2 += m2[b];
    }
    r.e1 /= double(nbatch);
    r.e2 /= double(nbatch);
    double v1 = 0, v2 = 0;
    for (size_t b = 0; b < nbatch; ++b) {
        v1 += (m1[b] - r.e1) * (m1[b] - r.e1);
        v2 += (m2[b] - r.e2) * (m2[b] - r.e2);
    }
    r.se1 = std::sqrt(v1 / double(nbatch * (nbatch - 1)));
    r.se2 = std::sqrt(v2 / double(nbatch * (nbatch - 1)));
    return r;
}

}  // namespace picdtc
