#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "sblab/chains.hpp"
#include "sblab/criteria.hpp"
#include "sblab/errors.hpp"
#include "sblab/rng.hpp"
#include "sblab/stats.hpp"

using namespace sblab;
using doctest::Approx;
constexpr double pi = std::numbers::pi;
constexpr double t_uniform = 0.2732395447351627;

namespace {

ScaleFunction log_squared_a()
{
    return [](double x) { return x * std::pow(log1floor(x), 2.0); };
}

} // namespace

TEST_CASE("descriptor parsing")
{
    CHECK(FDescriptor::parse("square").kind() == FDescriptor::Kind::Square);
    auto const d = FDescriptor::parse("PowLogDiv:3");
    CHECK(d.kind() == FDescriptor::Kind::PowerLogDiv);
    CHECK(d.kappa() == 3);
    CHECK(FDescriptor::parse("powlogmul:2.5").to_string() == "powlogmul:2.5");
    CHECK_THROWS_AS(FDescriptor::parse("cube"), ConfigError);
    CHECK_THROWS_AS(FDescriptor::parse("powlogdiv:x"), ConfigError);
    CHECK_THROWS_AS(FDescriptor::power_log_mul(0), ConfigError);
    CHECK_THROWS_AS(FDescriptor::table({1, 2}, {0, 1}), ConfigError);
    CHECK_THROWS_AS(FDescriptor::table({0, 2}, {1, 0}), ConfigError);
}

TEST_CASE("generalized inverse")
{
    CHECK(f_inverse(FDescriptor::square(), 9) == 3);
    auto const flat = FDescriptor::table({0, 1}, {5, 5});
    CHECK(f_inverse(flat, 3) == 0);
    CHECK(std::isinf(f_inverse(flat, 7)));
    auto const mul = FDescriptor::power_log_mul(3);
    double const x = 16 * std::log(3.0);
    double const y = f_inverse(mul, x);
    CHECK(y == Approx(2.0).epsilon(1e-12));
    CHECK(mul(y) >= x);
    CHECK(mul(y - 1e-9) < x);
    CHECK_THROWS_AS(f_inverse(mul, 0), DomainError);
}

TEST_CASE("f and f_inverse are consistent")
{
    RngStream rng(11, 0);
    std::vector<FDescriptor> fs{FDescriptor::square(), FDescriptor::power_log_div(3),
                                FDescriptor::power_log_mul(3), FDescriptor::power_log_div(0.5),
                                FDescriptor::table({0, 1, 4, 10}, {0, 2, 2, 50})};
    for (auto const& f : fs) {
        for (int i = 0; i < 1000; ++i) {
            double const x = std::exp(rng.uniform() * 30 - 5);
            double const y = f_inverse(f, x);
            if (std::isinf(y)) {
                CHECK(f(1e12) < x);
                continue;
            }
            CHECK(f(y + 1e-6) >= x);
            CHECK(f(std::max(y - 1e-6, 0.0)) <= x + 1e-9);
        }
    }
}

TEST_CASE("upper envelope values")
{
    ScaleTriple sq;
    sq.a = log_squared_a();
    CHECK(upper_bound_curve(sq, 1e4) == Approx(1400.564641158972).epsilon(1e-13));
    sq.a = [](double x) { return x * x; };
    CHECK(upper_bound_curve(sq, 100) == Approx(200).epsilon(1e-14));

    ScaleTriple div;
    div.f = FDescriptor::power_log_div(3);
    double const u = upper_bound_curve(div, 1e6);
    CHECK(u == Approx(153.63804216213387).epsilon(1e-10));
    // Leading order n^(1/4) with a logarithmic correction.
    double const n = 1e6;
    double const approx = std::pow(2 * n * std::pow(std::log(2 * n), 1.5) * std::log1p(u), 0.25);
    CHECK(u == Approx(approx).epsilon(1e-6));
    CHECK_THROWS_AS(upper_bound_curve(div, 0.5), DomainError);
}

TEST_CASE("lower envelope values")
{
    ScaleTriple t;
    t.v = [](double) { return 1.0; };
    CHECK(lower_bound_curve(t, 100) == Approx(8).epsilon(1e-12));

    t.v = [](double y) { return std::pow(log1floor(y), 2.0); };
    double const r = lower_bound_curve(t, 1e6);
    CHECK(r == Approx(188.6510210263486).epsilon(1e-10));
    double const y = r + t.b;
    CHECK(t.v(y) * t.f(y + t.b) / t.eps >= 1e6);
    CHECK(t.v(y - 1e-9) * t.f(y - 1e-9 + t.b) / t.eps < 1e6);

    ScaleTriple def;
    CHECK(lower_bound_curve(def, 1e6) == Approx(272.31055211358396).epsilon(1e-10));

    double prev = -1;
    for (double eps : {0.5, 1.0, 2.0, 4.0}) {
        def.eps = eps;
        double const v = r_v(def, 1e6);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("envelopes are ordered")
{
    ScaleTriple t;
    for (double n = 10; n < 1e12; n *= 7) {
        CHECK(lower_bound_curve(t, n) <= upper_bound_curve(t, n));
    }
}

TEST_CASE("drift conditions on zeta moments")
{
    std::vector<double> grid;
    for (double y = 10; y <= 1e6; y *= 1.5) {
        grid.push_back(y);
    }
    DriftOptions opts;
    opts.H = 5;

    auto const null = lamperti_conditions(DriftInput::zeta(0.1, t_uniform, grid), opts);
    CHECK(null.get("lmpti_i").verdict == Verdict::Holds);
    CHECK(null.get("lmpti_ii").verdict == Verdict::Fails);
    CHECK(null.implied == Regime::NullRecurrent);

    auto const tr = lamperti_conditions(DriftInput::zeta(0.4, t_uniform, grid), opts);
    CHECK(tr.get("lmpti_ii").verdict == Verdict::Holds);
    CHECK(tr.get("lamp_low").verdict == Verdict::Holds);
    double const gc = 0.1766849268092905;
    CHECK(tr.get("lmpti_ii").margin == Approx(4 * 0.6 * (0.4 - gc) * (1 + 2 * t_uniform)).epsilon(1e-12));
    CHECK(tr.implied == Regime::Transient);

    auto const pr = lamperti_conditions(DriftInput::zeta(-1.0, t_uniform, grid), opts);
    CHECK(pr.get("lmpti_iii").verdict == Verdict::Holds);
    CHECK(pr.implied == Regime::PositiveRecurrent);

    auto const deg = lamperti_conditions(DriftInput::zeta(0.4, 0.0, grid), opts);
    CHECK(deg.get("ass2").verdict == Verdict::Fails);
    CHECK(deg.get("lmpti_ii").verdict == Verdict::NotApplicable);
    CHECK(deg.get("prop1_i").verdict != Verdict::NotApplicable);
    CHECK_FALSE(deg.implied);

    opts.H = 1e7;
    CHECK_THROWS_AS(lamperti_conditions(DriftInput::zeta(0.4, t_uniform, grid), opts), RangeError);
}

TEST_CASE("drift conditions agree with the classifier")
{
    std::vector<double> grid;
    for (double y = 10; y <= 1e6; y *= 2) {
        grid.push_back(y);
    }
    for (auto const& law : {ReflectionLaw::uniform(pi / 4), ReflectionLaw::two_point(0.5),
                            ReflectionLaw::uniform(1.3)}) {
        double const t = tan2_moment(law);
        for (int i = 0; i < 50; ++i) {
            double const gamma = -2.0 + 2.9 * i / 49.0;
            auto const cls = classify_regime(gamma, law);
            auto const dc = lamperti_conditions(DriftInput::zeta(gamma, t, grid), DriftOptions{});
            INFO("gamma = " << gamma << ", tan2 = " << t);
            bool const both = dc.get("lmpti_ii").verdict == Verdict::Holds &&
                              dc.get("lmpti_iii").verdict == Verdict::Holds;
            CHECK_FALSE(both);
            REQUIRE(dc.implied);
            Regime expected = cls.regime;
            if (expected == Regime::CriticalNull) {
                expected = Regime::NullRecurrent;
            }
            CHECK(*dc.implied == expected);
        }
    }
}

TEST_CASE("drift conditions for birth-death chains")
{
    std::vector<double> grid{100, 300, 1000, 3000, 10000};
    auto const bd = ChainSpec::birth_death(3, 1);
    DriftOptions opts;
    opts.H = 10;
    opts.kappa = 3;
    opts.C = 0;
    auto const c = lamperti_conditions(
        DriftInput::analytic(grid, [&](double x) { return chain_moments_exact(bd, x); }), opts);
    CHECK(c.get("prop6_i").verdict == Verdict::Holds);
    CHECK(c.get("prop6_ii").verdict == Verdict::Holds);
    CHECK(c.get("prop1_i").verdict == Verdict::Holds);
    CHECK(c.get("lmpti_iii").verdict == Verdict::Holds);
    CHECK(c.implied == Regime::PositiveRecurrent);

    auto const prof = chain_moments(bd, grid, 200000, 4);
    auto const e = lamperti_conditions(DriftInput::from_profile(prof), opts);
    CHECK(e.empirical);
    CHECK(e.get("ass2").verdict == Verdict::Holds);
    CHECK(e.get("prop6_ii").verdict == Verdict::Holds);
}

TEST_CASE("report formats")
{
    std::vector<double> grid{10, 100};
    auto const c = lamperti_conditions(DriftInput::zeta(0.4, t_uniform, grid), DriftOptions{});
    auto const csv = format_csv(c);
    CHECK(csv.rfind("condition,range_lo,range_hi,margin,verdict\n", 0) == 0);
    CHECK(csv.find("lmpti_ii,10,100,") != std::string::npos);
    auto const rep = format_report(c);
    CHECK(rep.find("implied_regime: Transient") != std::string::npos);
    CHECK(rep.find("scope: window-verified") != std::string::npos);
}

TEST_CASE("Lyapunov drift of the birth-death chain")
{
    auto const bd = ChainSpec::birth_death(3, 1);
    auto const sampler = [&](double x, double u) { return chain_step(bd, x, u); };
    std::vector<double> levels{1e2, 1e3, 1e4};
    auto const div = lyapunov_drift_check(sampler, FDescriptor::power_log_div(3), levels, 200000, 1);
    CHECK(div.bounded_above);
    CHECK(std::isfinite(div.upper));
    for (auto const& e : div.levels) {
        CHECK(e.drift <= div.upper);
    }
    auto const mul =
        lyapunov_drift_check(sampler, FDescriptor::power_log_mul(3), levels, 10'000'000, 1);
    CHECK(mul.positive);

    auto const refl = ChainSpec::reflected();
    auto const rs = [&](double x, double u) { return chain_step(refl, x, u); };
    auto const sq = lyapunov_drift_check(rs, FDescriptor::square(), {1, 10, 100, 1000}, 100000, 2);
    for (auto const& e : sq.levels) {
        CHECK(e.drift == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("reverse Foster bound for the reflected walk")
{
    auto const refl = ChainSpec::reflected();
    for (double level : {10.0, 30.0}) {
        RunningStats s;
        for (std::uint64_t r = 0; r < 300; ++r) {
            ChainConfig cfg;
            cfg.x_start = 0;
            cfg.n_max = 1'000'000;
            cfg.seed = 9;
            cfg.stream = r;
            cfg.record = ChainRecord::PassageTimes;
            cfg.levels = {level};
            auto const tr = simulate_chain(refl, cfg);
            REQUIRE(tr.passage[0]);
            s.add(static_cast<double>(*tr.passage[0]));
        }
        // E[sigma] = level^2 for the reflected walk from 0.
        CHECK(std::fabs(s.mean - level * level) <= 3 * s.se());
        CHECK(s.mean <= (level + 1) * (level + 1));
    }
}
