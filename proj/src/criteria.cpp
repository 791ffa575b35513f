#include "sblab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sblab/errors.hpp"
#include "sblab/io.hpp"
#include "sblab/rng.hpp"
#include "sblab/stats.hpp"

namespace sblab {

//---------------------------------------------------------------------------//
// FDescriptor
//---------------------------------------------------------------------------//

FDescriptor FDescriptor::power_log_div(double kappa)
{
    if (!(kappa > 0)) {
        throw ConfigError("kappa must be positive");
    }
    return FDescriptor(Kind::PowerLogDiv, kappa);
}

FDescriptor FDescriptor::power_log_mul(double kappa)
{
    if (!(kappa > 0)) {
        throw ConfigError("kappa must be positive");
    }
    return FDescriptor(Kind::PowerLogMul, kappa);
}

FDescriptor FDescriptor::table(std::vector<double> y, std::vector<double> f)
{
    if (y.size() < 2 || y.size() != f.size() || y.front() != 0.0) {
        throw ConfigError("table needs matching abscissae starting at 0");
    }
    for (std::size_t i = 1; i < y.size(); ++i) {
        if (!(y[i] > y[i - 1]) || f[i] < f[i - 1]) {
            throw ConfigError("table must be increasing in y and nondecreasing in f");
        }
    }
    FDescriptor d(Kind::Table, 0);
    d.ty_ = std::move(y);
    d.tf_ = std::move(f);
    return d;
}

FDescriptor FDescriptor::parse(std::string const& text)
{
    std::string s = text;
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "square") {
        return square();
    }
    auto const colon = s.find(':');
    if (colon != std::string::npos) {
        std::string const kind = s.substr(0, colon);
        std::string const num = s.substr(colon + 1);
        char* end = nullptr;
        double const k = std::strtod(num.c_str(), &end);
        if (!num.empty() && end == num.c_str() + num.size()) {
            if (kind == "powlogdiv") {
                return power_log_div(k);
            }
            if (kind == "powlogmul") {
                return power_log_mul(k);
            }
        }
    }
    throw ConfigError("f spec '" + text + "' must be square, powlogdiv:<k> or powlogmul:<k>");
}

double FDescriptor::operator()(double y) const
{
    switch (kind_) {
    case Kind::Square:
        return y * y;
    case Kind::PowerLogDiv:
        return y > 0 ? std::pow(y, 1.0 + kappa_) / std::log1p(y) : 0.0;
    case Kind::PowerLogMul:
        return std::pow(y, 1.0 + kappa_) * std::log1p(y);
    case Kind::Table:
        break;
    }
    if (y <= 0) {
        return tf_.front();
    }
    if (y >= ty_.back()) {
        return tf_.back();
    }
    auto const it = std::upper_bound(ty_.begin(), ty_.end(), y);
    auto const i = static_cast<std::size_t>(it - ty_.begin());
    double const w = (y - ty_[i - 1]) / (ty_[i] - ty_[i - 1]);
    return tf_[i - 1] + w * (tf_[i] - tf_[i - 1]);
}

std::string FDescriptor::to_string() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::Square:
        return "square";
    case Kind::PowerLogDiv:
        os << "powlogdiv:" << kappa_;
        break;
    case Kind::PowerLogMul:
        os << "powlogmul:" << kappa_;
        break;
    case Kind::Table:
        os << "table:" << ty_.size();
        break;
    }
    return os.str();
}

ScaleFunction default_a(double eps)
{
    return [eps](double x) { return x * std::pow(log1floor(x), 1.0 + eps); };
}

ScaleFunction default_v(double eps)
{
    return [eps](double x) { return std::pow(log1floor(x), 1.0 + eps); };
}

//---------------------------------------------------------------------------//
// Envelopes
//---------------------------------------------------------------------------//

namespace {

constexpr double bracket_limit = 1e300;

/// Smallest y >= 0 (to double precision) with pred(y), given pred monotone.
/// Returns +inf when pred never holds below the bracket limit.
template<class Pred>
double monotone_threshold(Pred pred)
{
    if (pred(0.0)) {
        return 0.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    while (!pred(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > bracket_limit) {
            return std::numeric_limits<double>::infinity();
        }
    }
    for (int i = 0; i < 2100; ++i) {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

} // namespace

double f_inverse(FDescriptor const& f, double x)
{
    if (!(x > 0)) {
        throw DomainError("f_inverse needs x > 0");
    }
    if (f.kind() == FDescriptor::Kind::Square) {
        return std::sqrt(x);
    }
    return monotone_threshold([&](double y) { return f(y) >= x; });
}

double upper_bound_curve(ScaleTriple const& triple, double n)
{
    if (!(n >= 1)) {
        throw DomainError("envelope needs n >= 1");
    }
    return f_inverse(triple.f, triple.a(2.0 * n));
}

double r_v(ScaleTriple const& triple, double x)
{
    return monotone_threshold(
        [&](double y) { return triple.v(y) * triple.f(y + triple.b) / triple.eps >= x; });
}

double lower_bound_curve(ScaleTriple const& triple, double n)
{
    if (!(n >= 1)) {
        throw DomainError("envelope needs n >= 1");
    }
    return r_v(triple, n) - triple.b;
}

//---------------------------------------------------------------------------//
// Drift conditions
//---------------------------------------------------------------------------//

DriftInput DriftInput::from_profile(MomentProfile const& p)
{
    DriftInput in;
    in.x = p.grid;
    in.mu1 = p.mu1_hat;
    in.mu2 = p.mu2_hat;
    in.mu1_se = p.mu1_se;
    in.mu2_se = p.mu2_se;
    in.empirical = true;
    return in;
}

DriftInput DriftInput::analytic(std::vector<double> grid,
                                std::function<JumpMoments(double)> const& moments)
{
    DriftInput in;
    for (double x : grid) {
        auto const m = moments(x);
        in.mu1.push_back(m.mu1);
        in.mu2.push_back(m.mu2);
    }
    in.x = std::move(grid);
    in.mu1_se.assign(in.x.size(), 0.0);
    in.mu2_se.assign(in.x.size(), 0.0);
    return in;
}

DriftInput DriftInput::zeta(double gamma, double tan2, std::vector<double> grid)
{
    return analytic(std::move(grid),
                    [=](double y) { return predicted_zeta_moments(gamma, tan2, y); });
}

char const* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Fails:
        return "fails";
    case Verdict::NotApplicable:
        break;
    }
    return "not_applicable";
}

ConditionCheck const& DriftConditions::get(std::string const& name) const
{
    for (auto const& c : checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw RangeError("no condition named '" + name + "'");
}

namespace {

/// lhs - rhs and its standard error at one grid point.
struct Term
{
    double value;
    double se;
};

} // namespace

DriftConditions lamperti_conditions(DriftInput const& in, DriftOptions const& opts)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < in.x.size(); ++i) {
        if (in.x[i] > opts.H) {
            idx.push_back(i);
        }
    }
    if (idx.empty()) {
        throw RangeError("no grid points above H");
    }
    DriftConditions out;
    out.H = opts.H;
    out.delta = opts.delta;
    out.empirical = in.empirical;
    double const lo = in.x[idx.front()];
    double const hi = in.x[idx.back()];

    // Slack for the non-strict inequalities: 3 se for empirical input,
    // rounding-level otherwise (2x mu1 amplifies the error of mu1 by x).
    auto evaluate = [&](std::string name, std::string ineq, bool strict, double threshold,
                        auto term) {
        ConditionCheck c{std::move(name), std::move(ineq), lo, hi, 0, Verdict::Holds};
        double worst = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (std::size_t i : idx) {
            Term const t = term(i);
            double const m = t.value - threshold;
            worst = std::min(worst, m);
            double const scale = 1.0 + std::fabs(2 * in.x[i] * in.mu1[i]) + in.mu2[i] + std::fabs(t.value);
            double const noise = in.empirical ? 3.0 * t.se : 1e-12 * (1.0 + in.x[i]) * scale;
            if (strict ? !(m - (in.empirical ? noise : 0.0) > 0) : !(m + noise >= 0)) {
                ok = false;
            }
        }
        c.margin = worst;
        c.verdict = ok ? Verdict::Holds : Verdict::Fails;
        out.checks.push_back(std::move(c));
    };

    auto two_x_mu1 = [&](std::size_t i) { return Term{2 * in.x[i] * in.mu1[i], 2 * in.x[i] * in.mu1_se[i]}; };

    evaluate("ass2", "mu2 >= v > 0", true, opts.v,
             [&](std::size_t i) { return Term{in.mu2[i], in.mu2_se[i]}; });
    bool const ass2 = out.checks.back().verdict == Verdict::Holds;

    evaluate("lmpti_i", "2x|mu1| <= mu2", false, 0.0, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{in.mu2[i] - std::fabs(a.value), in.mu2_se[i] + a.se};
    });
    evaluate("lmpti_ii", "2x mu1 - mu2 > delta", true, opts.delta, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{a.value - in.mu2[i], a.se + in.mu2_se[i]};
    });
    evaluate("lmpti_iii", "2x mu1 + mu2 < -delta", true, opts.delta, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{-(a.value + in.mu2[i]), a.se + in.mu2_se[i]};
    });
    evaluate("mailem", "2x|mu1| <= (1 + 1/log x) mu2", false, 0.0, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        double const w = 1.0 + 1.0 / log1floor(in.x[i]);
        return Term{w * in.mu2[i] - std::fabs(a.value), w * in.mu2_se[i] + a.se};
    });
    evaluate("prop1_i", "2x mu1 <= C", false, 0.0, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{opts.C - a.value, a.se};
    });
    evaluate("prop1_ii", "2x mu1 + mu2 >= delta", false, opts.delta, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{a.value + in.mu2[i], a.se + in.mu2_se[i]};
    });
    evaluate("lamp_low", "2x mu1 - mu2 > delta", true, opts.delta, [&](std::size_t i) {
        auto const a = two_x_mu1(i);
        return Term{a.value - in.mu2[i], a.se + in.mu2_se[i]};
    });
    if (opts.kappa) {
        double const k = *opts.kappa;
        evaluate("prop6_i", "-2 kappa mu2 <= 2x mu1 <= -kappa mu2", false, 0.0,
                 [&](std::size_t i) {
                     auto const a = two_x_mu1(i);
                     double const left = a.value + 2 * k * in.mu2[i];
                     double const right = -k * in.mu2[i] - a.value;
                     return Term{std::min(left, right), a.se + 2 * k * in.mu2_se[i]};
                 });
        if (!(k > 1)) {
            out.checks.back().verdict = Verdict::NotApplicable;
        }
        evaluate("prop6_ii", "2x mu1 + kappa mu2 >= 0", false, 0.0, [&](std::size_t i) {
            auto const a = two_x_mu1(i);
            return Term{a.value + k * in.mu2[i], a.se + k * in.mu2_se[i]};
        });
        if (!(k >= 1)) {
            out.checks.back().verdict = Verdict::NotApplicable;
        }
    } else {
        for (char const* name : {"prop6_i", "prop6_ii"}) {
            out.checks.push_back({name, "needs kappa", lo, hi, 0, Verdict::NotApplicable});
        }
    }

    if (!ass2) {
        for (auto& c : out.checks) {
            if (c.name != "ass2" && c.name != "prop1_i") {
                c.verdict = Verdict::NotApplicable;
            }
        }
        return out;
    }
    if (out.get("lmpti_ii").verdict == Verdict::Holds) {
        out.implied = Regime::Transient;
    } else if (out.get("lmpti_iii").verdict == Verdict::Holds) {
        out.implied = Regime::PositiveRecurrent;
    } else if (out.get("lmpti_i").verdict == Verdict::Holds) {
        out.implied = Regime::NullRecurrent;
    }
    return out;
}

std::string format_report(DriftConditions const& c)
{
    std::ostringstream os;
    os.precision(10);
    os << "H: " << c.H << "\n";
    os << "delta: " << c.delta << "\n";
    os << "input: " << (c.empirical ? "empirical" : "analytic") << "\n";
    os << "scope: window-verified\n";
    for (auto const& k : c.checks) {
        os << k.name << ": " << to_string(k.verdict) << " (" << k.inequality
           << "; worst margin " << k.margin << " on [" << k.range_lo << ", " << k.range_hi
           << "])\n";
    }
    os << "implied_regime: " << (c.implied ? to_string(*c.implied) : "none") << "\n";
    return os.str();
}

std::string format_csv(DriftConditions const& c)
{
    std::ostringstream os;
    os << "condition,range_lo,range_hi,margin,verdict\n";
    for (auto const& k : c.checks) {
        os << k.name << ',' << format_number(k.range_lo) << ',' << format_number(k.range_hi) << ','
           << format_number(k.margin) << ',' << to_string(k.verdict) << '\n';
    }
    return os.str();
}

//---------------------------------------------------------------------------//
// Lyapunov drift
//---------------------------------------------------------------------------//

LyapunovCheck lyapunov_drift_check(QuantileSampler const& sampler, FDescriptor const& f,
                                   std::vector<double> const& levels, std::uint64_t n_samples,
                                   std::uint64_t seed, int batches)
{
    if (batches < 2 || n_samples < static_cast<std::uint64_t>(batches)) {
        throw ConfigError("need at least two batches with one sample each");
    }
    std::uint64_t const m = n_samples / static_cast<std::uint64_t>(batches);
    LyapunovCheck out;
    out.upper = -std::numeric_limits<double>::infinity();
    out.lower = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < levels.size(); ++l) {
        double const x = levels[l];
        double const f0 = f(x);
        RunningStats batch_means;
        for (int b = 0; b < batches; ++b) {
            RngStream rng(seed, l * static_cast<std::uint64_t>(batches) + b);
            RunningStats s;
            for (std::uint64_t j = 0; j < m; ++j) {
                double const u = (static_cast<double>(j) + rng.uniform()) / static_cast<double>(m);
                s.add(f(sampler(x, u)) - f0);
            }
            batch_means.add(s.mean);
        }
        DriftEstimate e{x, batch_means.mean, batch_means.se(), m * static_cast<std::uint64_t>(batches)};
        out.upper = std::max(out.upper, e.drift + 3 * e.se);
        out.lower = std::min(out.lower, e.drift - 3 * e.se);
        out.levels.push_back(e);
    }
    out.bounded_above = std::isfinite(out.upper);
    out.positive = out.lower > 0;
    return out;
}

} // namespace sblab
