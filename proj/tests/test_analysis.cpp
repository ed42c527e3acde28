#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "picdtc/density_evolution.hpp"
#include "picdtc/rng.hpp"
#include "picdtc/transfer.hpp"

using namespace picdtc;

namespace {

const Trellis& trellis2() {
    static const Trellis t(OctalPoly::parse("5"), OctalPoly::parse("3"), OctalPoly::parse("7"));
    return t;
}

const ExactTransfer& F() {
    static const ExactTransfer f(trellis2());
    return f;
}

}  // namespace

TEST_CASE("transfer function endpoints") {
    const auto zero = F().eval_exact({0, 0, 0});
    CHECK(zero.e1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.e2 == doctest::Approx(0.0).epsilon(1e-12));
    const auto one = F().eval_exact({1, 1, 1});
    CHECK(one.e1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.e2 == doctest::Approx(1.0).epsilon(1e-12));
    // parity alone constrains only u + u' for this trellis: nothing resolves
    // until one input carries information of its own
    const auto par = F().eval_exact({1, 1, 0});
    CHECK(par.e1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(par.e2 == doctest::Approx(1.0).epsilon(1e-12));
    const auto known2 = F().eval_exact({1, 0, 0});
    CHECK(known2.e1 == doctest::Approx(0.0).epsilon(1e-12));
    const auto known1 = F().eval_exact({0, 1, 0});
    CHECK(known1.e2 == doctest::Approx(0.0).epsilon(1e-12));
    // a fully opaque co-input keeps everything erased even in Monte-Carlo
    // (the state set never shrinks back once it grows), while any own-channel
    // information resolves a positive fraction
    const auto opaque = F().eval_exact({1, 0.5, 0.5});
    CHECK(opaque.e1 == doctest::Approx(1.0).epsilon(1e-12));
    const auto partial = F().eval_exact({0.9, 0.5, 0.5});
    CHECK(partial.e1 < 1.0);
    CHECK(partial.e1 > 0.0);
}

TEST_CASE("exact transfer matches the Monte-Carlo oracle within 3 sigma") {
    const TransferQuery queries[] = {{0.5, 0.5, 0.5}, {0.9, 0.3, 0.6}, {0.2, 0.8, 0.7},
                                     {0.7, 0.7, 0.4}, {0.95, 0.95, 0.65}, {0.3, 0.2, 0.9}};
    int idx = 0;
    for (const auto& q : queries) {
        const auto ex = F().eval_exact(q);
        const auto mc = transfer_mc(trellis2(), q, 200000, 900 + uint64_t(idx++));
        const double tol1 = 3 * std::max(mc.se1, 1e-4);
        const double tol2 = 3 * std::max(mc.se2, 1e-4);
        CHECK(std::abs(ex.e1 - mc.e1) < tol1);
        CHECK(std::abs(ex.e2 - mc.e2) < tol2);
    }
}

TEST_CASE("transfer outputs are monotone in every argument") {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double a : grid)
        for (double b : grid)
            for (double c : grid) {
                const auto base = F().eval({a, b, c});
                if (a < 1) {
                    const auto up = F().eval({a + 0.25, b, c});
                    CHECK(up.e1 >= base.e1 - 1e-12);
                    CHECK(up.e2 >= base.e2 - 1e-12);
                }
                if (b < 1) {
                    const auto up = F().eval({a, b + 0.25, c});
                    CHECK(up.e1 >= base.e1 - 1e-12);
                    CHECK(up.e2 >= base.e2 - 1e-12);
                }
                if (c < 1) {
                    const auto up = F().eval({a, b, c + 0.25});
                    CHECK(up.e1 >= base.e1 - 1e-12);
                    CHECK(up.e2 >= base.e2 - 1e-12);
                }
            }
}

TEST_CASE("memoized evaluation is reproducible") {
    ExactTransfer f(trellis2());
    const TransferQuery q{0.61234567, 0.3456789, 0.55};
    const auto a = f.eval(q);
    const size_t n = f.memo_size();
    const auto b = f.eval(q);
    CHECK(f.memo_size() == n);
    CHECK(a.e1 == b.e1);
    CHECK(a.e2 == b.e2);
    // the memo key rounds to the 1e-6 grid
    const auto c = f.eval({q.q1 + 4e-7, q.q2, q.eps_parity});
    CHECK(c.e1 == a.e1);
}

TEST_CASE("density evolution decouples at lambda=0") {
    const DeConfig cfg{0.0, 1, 20};
    DeState st = DeState::all_ones(20);
    // manual single-block recursion, upper then lower on freshest values
    double s1U = 1, s1L = 1;
    for (int it = 0; it < 8; ++it) {
        de_step(st, 0.6, cfg, F());
        const double s1L_old = s1L;
        s1U = F().eval({0.6 * s1L_old, 0.0, 0.6}).e1;
        const double s2U = F().eval({0.6 * s1L_old, 0.0, 0.6}).e2;
        s1L = F().eval({0.6 * s1U, 0.0, 0.6}).e1;
        for (int64_t t = 0; t < 20; ++t) {
            CHECK(st.p1U[size_t(t)] == doctest::Approx(s1U).epsilon(1e-12));
            CHECK(st.p1L[size_t(t)] == doctest::Approx(s1L).epsilon(1e-12));
            CHECK(st.p2U[size_t(t)] == doctest::Approx(s2U).epsilon(1e-12));
        }
    }
}

TEST_CASE("zero channel erasure collapses in one iteration") {
    const DeConfig cfg{1.0, 1, 30};
    DeState st = DeState::all_ones(30);
    de_step(st, 0.0, cfg, F());
    const auto pu = de_aposteriori(st, 0.0, cfg);
    for (double v : pu) CHECK(v == doctest::Approx(0.0).epsilon(1e-14));
    const auto run = de_run(0.0, cfg, F());
    CHECK(run.converged);
    CHECK(run.iterations == 1);
}

TEST_CASE("de_run at the documented operating points") {
    const auto a = de_run(0.63, DeConfig{1.0, 1, 100}, F());
    CHECK(a.converged);
    const auto b = de_run(0.68, DeConfig{1.0, 1, 100}, F());
    CHECK_FALSE(b.converged);
    const auto c = de_run(0.68, DeConfig{1.0, 5, 100}, F());
    CHECK_FALSE(c.converged);
    const auto d = de_run(0.66, DeConfig{1.0, 5, 100}, F());
    CHECK(d.converged);
}

TEST_CASE("DE trajectories are monotone non-increasing from all-ones") {
    Rng rng(0xDE);
    for (int point = 0; point < 10; ++point) {
        const double eps = rng.uniform();
        const DeConfig cfg{rng.uniform(), int64_t(1 + rng.below(5)), 40};
        DeState st = DeState::all_ones(40);
        DeState prev = st;
        for (int it = 0; it < 60; ++it) {
            de_step(st, eps, cfg, F());
            for (size_t i = 0; i < st.p1U.size(); ++i) {
                CHECK(st.p1U[i] <= prev.p1U[i] + 1e-15);
                CHECK(st.p2U[i] <= prev.p2U[i] + 1e-15);
                CHECK(st.p1L[i] <= prev.p1L[i] + 1e-15);
                CHECK(st.p2L[i] <= prev.p2L[i] + 1e-15);
            }
            prev = st;
        }
    }
}

TEST_CASE("lambda=0 threshold is consistent with single-block analysis") {
    const auto chain = find_threshold(DeConfig{0.0, 1, 50}, F(), 1e-3);
    const auto single = find_threshold(DeConfig{0.0, 1, 1}, F(), 1e-3);
    CHECK(chain.eps_bp == doctest::Approx(single.eps_bp).epsilon(1e-9));
    // sanity: rate-1/3 uncoupled ensemble sits well inside (0.6, 2/3)
    CHECK(chain.eps_bp > 0.60);
    CHECK(chain.eps_bp < 2.0 / 3.0);
    CHECK(chain.interval_width <= 1e-3);
}

TEST_CASE("threshold search input validation") {
    CHECK_THROWS_AS(find_threshold(DeConfig{1.0, 1, 10}, F(), 1e-6), ConfigError);
    CHECK_THROWS_AS(de_run(1.5, DeConfig{1.0, 1, 10}, F()), ConfigError);
    CHECK_THROWS_AS(rank_gf2(OctalPoly::parse("5"), OctalPoly::parse("7"), {}), ConfigError);
}

TEST_CASE("rank_gf2 returns a single candidate unchanged") {
    const auto r = rank_gf2(OctalPoly::parse("5"), OctalPoly::parse("7"),
                            {OctalPoly::parse("3")}, DeConfig{1.0, 1, 30}, 1e-3);
    REQUIRE(r.size() == 1);
    CHECK(r[0].g_f2 == OctalPoly::parse("3"));
    CHECK(r[0].threshold > 0.5);
}
