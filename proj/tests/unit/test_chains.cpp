#include <cmath>
#include <vector>

#include <doctest.h>

#include "sblab/chains.hpp"
#include "sblab/errors.hpp"
#include "sblab/stats.hpp"

using namespace sblab;
using doctest::Approx;

TEST_CASE("chain parsing")
{
    auto const bd = ChainSpec::parse("bd:kappa=3,alpha=1");
    CHECK(bd.kind() == ChainSpec::Kind::BirthDeath);
    CHECK(bd.kappa() == 3);
    CHECK(bd.alpha() == 1);
    CHECK(bd.H() == 1);
    CHECK(ChainSpec::parse("bd:kappa=-1,alpha=0.5,h=2").H() == 2);
    CHECK(ChainSpec::parse("srwnorm:d=3").dimension() == 3);
    CHECK(ChainSpec::parse("reflected").kind() == ChainSpec::Kind::ReflectedSimple);
    CHECK(ChainSpec::parse("bd:kappa=3,alpha=1").to_string() == "bd:kappa=3,alpha=1");
    CHECK_THROWS_AS(ChainSpec::parse("bd:alpha=1"), ConfigError);
    CHECK_THROWS_AS(ChainSpec::parse("bd:kappa=1,beta=2"), ConfigError);
    CHECK_THROWS_AS(ChainSpec::parse("srwnorm:d=1"), ConfigError);
    CHECK_THROWS_AS(ChainSpec::parse("srwnorm:d=2.5"), ConfigError);
    CHECK_THROWS_AS(ChainSpec::parse("lazy"), ConfigError);
    CHECK_THROWS_AS(ChainSpec::birth_death(1, 0), ConfigError);
}

TEST_CASE("birth-death probabilities are clipped")
{
    auto const bd = ChainSpec::birth_death(3, 1);
    CHECK(bd.down_probability(1) == ChainSpec::p_max);
    CHECK(bd.down_probability(100) == Approx(0.5 + 0.75 / 100));
    double const th = bd.clip_threshold();
    CHECK(th == Approx(0.75 / 0.499));
    CHECK(bd.down_probability(th * 1.01) < ChainSpec::p_max);
    auto const neg = ChainSpec::birth_death(-8, 1);
    CHECK(neg.down_probability(1) == ChainSpec::p_min);
    for (double x = 1; x < 1e4; x *= 1.1) {
        double const p = ChainSpec::birth_death(-100, 0.5).down_probability(x);
        CHECK(p >= ChainSpec::p_min);
        CHECK(p <= ChainSpec::p_max);
    }
}

TEST_CASE("floor rule")
{
    auto const bd = ChainSpec::birth_death(3, 1);
    CHECK(chain_step(bd, 1, 0.0) == 2);
    CHECK(chain_step(bd, 2, 0.0) == 1);
    CHECK(chain_step(bd, 5, 0.9999) == 6);
    auto const h = ChainSpec::birth_death(3, 1, 3);
    CHECK(chain_step(h, 3.5, 0.0) == 6);
    CHECK(chain_step(ChainSpec::reflected(), 0, 0.1) == 1);
}

TEST_CASE("symmetric birth-death walk has no drift")
{
    auto const bd = ChainSpec::birth_death(0, 1);
    RunningStats s;
    for (std::uint64_t r = 0; r < 20; ++r) {
        ChainConfig cfg;
        cfg.x_start = 1000;
        cfg.n_max = 1'000'000;
        cfg.seed = 3;
        cfg.stream = r;
        auto const tr = simulate_chain(bd, cfg);
        CHECK(std::fabs(tr.last - 1000) <= 3000);
        s.add(tr.last - 1000);
    }
    CHECK(std::fabs(s.mean) <= 3 * s.se());
}

TEST_CASE("birth-death drift identity")
{
    std::vector<double> levels{100, 1000};
    for (double alpha : {1.0, 0.5}) {
        auto const bd = ChainSpec::birth_death(3, alpha);
        auto const prof = chain_moments(bd, levels, 1'000'000, 8);
        for (std::size_t i = 0; i < levels.size(); ++i) {
            double const x = levels[i];
            double const target = -3 * std::pow(x, 1 - alpha);
            CHECK(std::fabs(2 * x * prof.mu1_hat[i] - target) <= 3 * 2 * x * prof.mu1_se[i]);
            CHECK(prof.mu2_hat[i] == 1.0);
            CHECK(2 * x * prof.mu1_pred[i] == Approx(target).epsilon(1e-12));
        }
    }
}

TEST_CASE("SRW norm moments")
{
    auto const srw = ChainSpec::srw_norm(3);
    auto const exact = chain_moments_exact(srw, 50);
    CHECK(2 * 50 * exact.mu1 - exact.mu2 == Approx(0.3332000266600019).epsilon(1e-12));
    auto const prof = chain_moments(srw, {50}, 2'000'000, 5);
    double const stat = 100 * prof.mu1_hat[0] - prof.mu2_hat[0];
    double const se = 100 * prof.mu1_se[0] + prof.mu2_se[0];
    CHECK(std::fabs(stat - 1.0 / 3) <= 3 * se);
}

TEST_CASE("chain simulation records")
{
    auto const bd = ChainSpec::birth_death(3, 1);
    ChainConfig cfg;
    cfg.x_start = 10;
    cfg.n_max = 1000;
    cfg.seed = 1;
    cfg.record = ChainRecord::Full;
    auto const full = simulate_chain(bd, cfg);
    REQUIRE(full.path.size() == 1001);
    CHECK(full.path[0] == 10);
    for (std::size_t i = 1; i < full.path.size(); ++i) {
        CHECK(full.path[i] >= 1);
        double const d = full.path[i] - full.path[i - 1];
        CHECK((std::fabs(d) == 1 || full.path[i] == 2));
    }
    auto const pts = dyadic_max(full.path);
    cfg.record = ChainRecord::DyadicMax;
    auto const stream = simulate_chain(bd, cfg);
    REQUIRE(stream.index_max.size() == 10);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].max == stream.index_max[i]);
    }
    CHECK(stream.last == full.path.back());

    cfg.record = ChainRecord::PassageTimes;
    cfg.levels = {12, 1e9};
    cfg.n_max = 100000;
    auto const pass = simulate_chain(ChainSpec::reflected(), cfg);
    CHECK(pass.passage[0]);
    CHECK_FALSE(pass.passage[1]);
    CHECK(pass.steps == 100000);

    cfg.x_start = 0.5;
    CHECK_THROWS_AS(simulate_chain(bd, cfg), ConfigError);
}

TEST_CASE("deterministic passage times")
{
    std::vector<double> seq;
    for (int n = 0; n <= 200; ++n) {
        seq.push_back(n);
    }
    std::vector<double> levels{10, 100};
    auto const p = first_passage_indices(seq, levels);
    CHECK(*p[0] == 10);
    CHECK(*p[1] == 100);
}

TEST_CASE("voit92 limit")
{
    // (|kappa| (1 + alpha) / 2)^(1/(1+alpha)) with kappa = -1, alpha = 1/2.
    auto const bd = ChainSpec::birth_death(-1, 0.5);
    int close = 0;
    for (std::uint64_t r = 0; r < 5; ++r) {
        ChainConfig cfg;
        cfg.n_max = 10'000'000;
        cfg.seed = 92;
        cfg.stream = r;
        auto const tr = simulate_chain(bd, cfg);
        double const ratio = tr.last / std::pow(1e7, 2.0 / 3);
        close += std::fabs(ratio / 0.8254818122236567 - 1) <= 0.05;
    }
    CHECK(close >= 4);
}

TEST_CASE("birth-death envelope with inward drift of order 1/x")
{
    // Down-probability 1/2 + c/x with c in [1, 2].
    for (double c : {1.0, 2.0}) {
        auto const bd = ChainSpec::birth_death(4 * c, 1);
        for (std::uint64_t r = 0; r < 10; ++r) {
            ChainConfig cfg;
            cfg.n_max = 10'000'000;
            cfg.seed = 17;
            cfg.stream = r;
            auto const tr = simulate_chain(bd, cfg);
            double const n = 1e7;
            CHECK(tr.max / std::sqrt(2 * n * std::log(std::log(n))) <= 1.2);
        }
    }
}

TEST_CASE("SRW norm lower envelope in d = 4")
{
    // The envelope sqrt(n) / log n holds eventually; on a finite window a
    // minority of runs dip below it early on.
    auto const srw = ChainSpec::srw_norm(4);
    int violated = 0;
    int violated_late = 0;
    std::uint64_t const runs = 100;
    for (std::uint64_t r = 0; r < runs; ++r) {
        ChainConfig cfg;
        cfg.n_max = 1'000'000;
        cfg.seed = 44;
        cfg.stream = r;
        cfg.record = ChainRecord::Full;
        auto const tr = simulate_chain(srw, cfg);
        bool early = false;
        bool late = false;
        for (std::size_t n = 1000; n <= 1'000'000; ++n) {
            double const nd = static_cast<double>(n);
            if (!(tr.path[n] > std::sqrt(nd) / std::log(nd))) {
                (n < 100'000 ? early : late) = true;
            }
        }
        violated += early || late;
        violated_late += late;
    }
    CHECK(violated <= 20);
    CHECK(violated_late <= 5);
}

TEST_CASE("interval embedding of a deterministic path")
{
    std::vector<double> seq;
    for (int n = 0; n <= 1000; ++n) {
        seq.push_back(n);
    }
    auto const e = interval_embed(seq, 2.0, 0.5);
    REQUIRE(e.Z.size() >= 6);
    for (std::size_t k = 1; k < e.Z.size(); ++k) {
        CHECK(e.Z[k] == e.Z[k - 1] + 1);
    }
    CHECK(e.entries[1] == 3);
    for (auto const& [r, c] : e.counts) {
        CHECK(*e.p_hat(r) == 1.0);
    }
    CHECK_FALSE(e.p_hat(100));
    CHECK_THROWS_AS(interval_embed(seq, 0.5, 1.0), ConfigError);
    CHECK_NOTHROW(interval_embed(seq, 0.5, 1.0, 4));
}

TEST_CASE("interval embedding of the reflected walk")
{
    // Optional stopping for a martingale between (1+beta)^(r-1) and
    // (1+beta)^(r+1) gives an upward probability of 1/(2 + beta).
    double const beta = 2.0;
    ChainConfig cfg;
    cfg.n_max = 20'000'000;
    cfg.seed = 5;
    cfg.record = ChainRecord::Full;
    auto const tr = simulate_chain(ChainSpec::reflected(), cfg);
    auto const e = interval_embed(tr.path, beta, 0.5, 1);
    int checked = 0;
    for (auto const& [r, c] : e.counts) {
        if (r < 2 || c.total < 50) {
            continue;
        }
        double const p = *e.p_hat(r);
        double const se = std::sqrt(0.25 * 0.75 / c.total);
        CHECK(std::fabs(p - 1 / (2 + beta)) <= 3 * se);
        ++checked;
    }
    CHECK(checked >= 3);
}
