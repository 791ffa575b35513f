#include "sblab/lamperti.hpp"

#include <cmath>

#include "sblab/billiard.hpp"
#include "sblab/parallel.hpp"
#include "sblab/stats.hpp"

namespace sblab {

double scale_map(TubeSpec const& tube, double x)
{
    switch (tube.family()) {
    case Family::Power:
        return std::pow(x, 1.0 - tube.parameter());
    case Family::Constant:
        return x / tube.parameter();
    default:
        break;
    }
    return x / tube.g(x);
}

double inverse_scale_map(TubeSpec const& tube, double y)
{
    switch (tube.family()) {
    case Family::Power:
        return std::pow(y, 1.0 / (1.0 - tube.parameter()));
    case Family::Constant:
        return y * tube.parameter();
    default:
        break;
    }
    double lo = std::max(1.0, tube.A());
    if (scale_map(tube, lo) > y) {
        throw DomainError("scale level below h(A)");
    }
    double hi = 2.0 * lo;
    while (scale_map(tube, hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw NumericError("no bracket for the inverse scale map", y);
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        double const mid = 0.5 * (lo + hi);
        (scale_map(tube, mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double zeta_increment(TubeSpec const& tube, double x, double delta)
{
    switch (tube.family()) {
    case Family::Power: {
        double const e = 1.0 - tube.parameter();
        return std::pow(x, e) * std::expm1(e * std::log1p(delta / x));
    }
    case Family::Constant:
        return delta / tube.parameter();
    default:
        break;
    }
    return scale_map(tube, x + delta) - scale_map(tube, x);
}

JumpMoments predicted_xi_moments(TubeSpec const& tube, ReflectionLaw const& law, double x)
{
    double const t = tan2_moment(law);
    auto const b = boundary_eval(tube, x);
    return {2.0 * b.dg * b.g * (1.0 + 2.0 * t), 4.0 * b.g * b.g * t};
}

JumpMoments predicted_zeta_moments(double gamma, double tan2, double y)
{
    if (!(gamma < 1.0) || !(y > 0.0)) {
        throw DomainError("zeta moments need gamma < 1 and y > 0");
    }
    double const s = 1.0 - gamma;
    return {2.0 * gamma * s * (1.0 + tan2) / y, 4.0 * s * s * tan2};
}

RegimeConstants regime_constants(double gamma, double tan2)
{
    RegimeConstants out{tan2 / (1.0 + 2.0 * tan2), std::nullopt};
    if (gamma < -tan2) {
        out.rho = tan2 / ((1.0 - 2.0 * gamma) * tan2 - gamma);
    }
    return out;
}

char const* to_string(Regime r)
{
    switch (r) {
    case Regime::Transient:
        return "Transient";
    case Regime::NullRecurrent:
        return "NullRecurrent";
    case Regime::PositiveRecurrent:
        return "PositiveRecurrent";
    case Regime::CriticalNull:
        return "CriticalNull";
    case Regime::Unclassified:
        break;
    }
    return "Unclassified";
}

ClassificationReport classify_regime(double gamma, ReflectionLaw const& law)
{
    if (!(gamma < 1.0)) {
        throw DomainError("classification needs gamma < 1");
    }
    ClassificationReport rep;
    rep.gamma = gamma;
    rep.tan2 = tan2_moment(law);
    auto const rc = regime_constants(gamma, rep.tan2);
    rep.gamma_c = rc.gamma_c;
    rep.rho = rc.rho;
    bool const degenerate = law.kind() == ReflectionLaw::Kind::Degenerate;

    if (gamma >= 0.0) {
        double const d = gamma - rep.gamma_c;
        if (std::fabs(d) <= critical_tolerance) {
            rep.near_critical = true;
            rep.regime = rep.gamma_c > 0 && !degenerate ? Regime::CriticalNull
                                                       : Regime::Unclassified;
            rep.criterion = "growing tube, gamma = gamma_c";
        } else if (d > 0) {
            rep.regime = Regime::Transient;
            rep.criterion = "growing tube, gamma > gamma_c";
        } else {
            rep.regime = Regime::NullRecurrent;
            rep.criterion = "growing tube, gamma < gamma_c";
        }
        if (gamma > 0.0) {
            rep.discrete_exponent = 1.0 / (2.0 * (1.0 - gamma));
            rep.continuous_exponent = 1.0 / (2.0 - gamma);
        }
        return rep;
    }

    double const d = gamma + rep.tan2;
    if (std::fabs(d) <= critical_tolerance) {
        rep.near_critical = true;
        rep.regime = degenerate ? Regime::Unclassified : Regime::CriticalNull;
        rep.criterion = "narrowing tube, gamma = -E[tan^2 alpha]";
    } else if (d < 0) {
        rep.regime = Regime::PositiveRecurrent;
        rep.criterion = "narrowing tube, gamma < -E[tan^2 alpha]";
    } else {
        rep.regime = Regime::NullRecurrent;
        rep.criterion = "narrowing tube, gamma > -E[tan^2 alpha]";
    }
    if (!degenerate && !rep.near_critical) {
        if (rep.rho) {
            rep.discrete_exponent = *rep.rho;
            rep.continuous_exponent = *rep.rho / (1.0 + gamma * *rep.rho);
        } else {
            rep.discrete_exponent = 1.0 / (2.0 * (1.0 - gamma));
            rep.continuous_exponent = 1.0 / (2.0 - gamma);
        }
    }
    return rep;
}

namespace {

constexpr std::uint64_t moment_block = 1u << 16;

struct BlockStats
{
    RunningStats d1;
    RunningStats d2;
};

} // namespace

MomentProfile empirical_moments(TubeSpec const& tube, ReflectionLaw const& law,
                                std::vector<double> const& grid, MomentOptions const& opts)
{
    if (opts.n_samples < 1000) {
        throw ConfigError("empirical moments need at least 1000 samples per level");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ConfigError("moment grid must be strictly increasing");
        }
    }
    bool const zeta = opts.scale == MomentScale::Zeta;
    std::vector<double> xs;
    for (double level : grid) {
        double const x = zeta ? inverse_scale_map(tube, level) : level;
        if (!(x > tube.A())) {
            throw ConfigError("moment grid level lies at or below A");
        }
        xs.push_back(x);
    }

    std::uint64_t const blocks = (opts.n_samples + moment_block - 1) / moment_block;
    std::size_t const tasks = grid.size() * blocks;
    auto results = run_indexed(tasks, opts.workers, [&](std::size_t task) {
        std::size_t const level = task / blocks;
        std::uint64_t const block = task % blocks;
        std::uint64_t const count = std::min(moment_block, opts.n_samples - block * moment_block);
        RngStream rng(opts.seed, (static_cast<std::uint64_t>(level) << 32) | block);
        double const x = xs[level];
        CollisionState const start{{x, Side::Upper}, 0, 0.0};
        BlockStats s;
        for (std::uint64_t k = 0; k < count; ++k) {
            auto const step = collision_step(tube, start, law.sample(rng));
            double const delta = step.next.point.x - x;
            double const d = zeta ? zeta_increment(tube, x, delta) : delta;
            s.d1.add(d);
            s.d2.add(d * d);
        }
        return s;
    });

    MomentProfile prof;
    prof.scale = opts.scale;
    prof.grid = grid;
    double const t = tan2_moment(law);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        BlockStats s;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            auto const& r = results[i * blocks + b];
            s.d1.merge(r.d1);
            s.d2.merge(r.d2);
        }
        prof.n.push_back(s.d1.n);
        prof.mu1_hat.push_back(s.d1.mean);
        prof.mu1_se.push_back(s.d1.se());
        prof.mu2_hat.push_back(s.d2.mean);
        prof.mu2_se.push_back(s.d2.se());
        auto const pred = zeta ? predicted_zeta_moments(tube.growth_exponent(), t, grid[i])
                               : predicted_xi_moments(tube, law, xs[i]);
        prof.mu1_pred.push_back(pred.mu1);
        prof.mu2_pred.push_back(pred.mu2);
    }
    return prof;
}

} // namespace sblab
