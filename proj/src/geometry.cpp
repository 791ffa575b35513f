#include "sblab/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "sblab/io.hpp"

namespace sblab {

namespace {

std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

double parse_number(std::string_view text, std::string_view what)
{
    std::string const buf(text);
    char* end = nullptr;
    double const v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v)) {
        throw ConfigError("invalid number '" + buf + "' in " + std::string(what));
    }
    return v;
}

void check_cutoff(double A)
{
    if (!(A >= 1.0) || !std::isfinite(A)) {
        throw ConfigError("tube cutoff A must be finite and >= 1");
    }
}

std::string format_double(double v) { return format_number(v); }

} // namespace

TubeSpec TubeSpec::power(double gamma, double A)
{
    check_cutoff(A);
    if (!(gamma <= 1.0) || !std::isfinite(gamma)) {
        throw ConfigError("power family requires gamma <= 1");
    }
    return TubeSpec(Family::Power, gamma, A);
}

TubeSpec TubeSpec::log_power(double K, double A)
{
    check_cutoff(A);
    if (!(K > 0) || !std::isfinite(K)) {
        throw ConfigError("log-power family requires K > 0");
    }
    // (log x)^K vanishes at x = 1, so the tube must start strictly beyond it.
    if (!(A > 1.0)) {
        throw ConfigError("log-power family requires A > 1");
    }
    return TubeSpec(Family::LogPower, K, A);
}

TubeSpec TubeSpec::constant(double c, double A)
{
    check_cutoff(A);
    if (!(c > 0) || !std::isfinite(c)) {
        throw ConfigError("constant family requires c > 0");
    }
    return TubeSpec(Family::Constant, c, A);
}

TubeSpec TubeSpec::custom(CustomBoundary boundary, double A)
{
    check_cutoff(A);
    if (!boundary.g || !boundary.dg || !boundary.d2g) {
        throw ConfigError("custom family must supply g, g' and g''");
    }
    TubeSpec t(Family::Custom, boundary.gamma, A);
    t.custom_ = std::make_shared<CustomBoundary const>(std::move(boundary));
    return t;
}

TubeSpec TubeSpec::parse(std::string_view text, double A)
{
    std::string const s = lowercase(text);
    auto const colon = s.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("tube spec '" + std::string(text) + "' must look like family:value");
    }
    std::string const family = s.substr(0, colon);
    double const value = parse_number(std::string_view(s).substr(colon + 1), "tube spec");
    if (family == "power") {
        return power(value, A);
    }
    if (family == "logpow") {
        return log_power(value, A);
    }
    if (family == "const") {
        return constant(value, A);
    }
    throw ConfigError("unknown tube family '" + family + "' (expected power, logpow, const)");
}

double TubeSpec::growth_exponent() const
{
    switch (family_) {
    case Family::Power:
    case Family::Custom:
        return param_;
    case Family::LogPower:
    case Family::Constant:
        return 0.0;
    }
    return 0.0;
}

bool TubeSpec::increasing() const
{
    switch (family_) {
    case Family::Power:
        return param_ > 0;
    case Family::LogPower:
        return true;
    case Family::Constant:
        return false;
    case Family::Custom:
        return custom_->dg(std::max(A_, 1.0)) > 0;
    }
    return false;
}

bool TubeSpec::decreasing() const
{
    switch (family_) {
    case Family::Power:
        return param_ < 0;
    case Family::LogPower:
    case Family::Constant:
        return false;
    case Family::Custom:
        return custom_->dg(std::max(A_, 1.0)) < 0;
    }
    return false;
}

double TubeSpec::dg(double x) const
{
    if (!(x >= 1.0)) {
        throw DomainError("boundary evaluated at x < 1");
    }
    switch (family_) {
    case Family::Power:
        return param_ * std::pow(x, param_ - 1.0);
    case Family::Constant:
        return 0.0;
    case Family::LogPower: {
        double const L = std::log(x);
        return param_ * std::pow(L, param_ - 1.0) / x;
    }
    case Family::Custom:
        break;
    }
    return custom_->dg(x);
}

BoundaryValues TubeSpec::eval(double x) const
{
    if (!(x >= 1.0)) {
        throw DomainError("boundary evaluated at x < 1");
    }
    BoundaryValues v{};
    switch (family_) {
    case Family::Power: {
        double const gam = param_;
        v.g = g(x);
        v.dg = gam * v.g / x;
        v.d2g = gam * (gam - 1.0) * v.g / (x * x);
        break;
    }
    case Family::Constant:
        v.g = param_;
        v.dg = 0;
        v.d2g = 0;
        break;
    case Family::LogPower: {
        double const K = param_;
        double const L = std::log(x);
        v.g = std::pow(L, K);
        v.dg = K * std::pow(L, K - 1.0) / x;
        // d/dx [K L^{K-1} / x] = K L^{K-2} ((K - 1) - L) / x^2
        v.d2g = K * std::pow(L, K - 2.0) * ((K - 1.0) - L) / (x * x);
        break;
    }
    case Family::Custom:
        v.g = custom_->g(x);
        v.dg = custom_->dg(x);
        v.d2g = custom_->d2g(x);
        break;
    }
    v.theta = std::atan(v.dg);
    return v;
}

std::string TubeSpec::to_string() const
{
    switch (family_) {
    case Family::Power:
        return "power:" + format_double(param_);
    case Family::LogPower:
        return "logpow:" + format_double(param_);
    case Family::Constant:
        return "const:" + format_double(param_);
    case Family::Custom:
        return custom_->name;
    }
    return {};
}

BoundaryValues boundary_eval(TubeSpec const& tube, double x) { return tube.eval(x); }

Point2 reflect_direction(Side side, double theta, double alpha)
{
    if (!(std::abs(alpha) < std::numbers::pi / 2) || !(std::abs(theta) < std::numbers::pi / 2)) {
        throw DomainError("reflection requires |alpha| < pi/2 and |theta| < pi/2");
    }
    double const angle = side == Side::Upper ? -std::numbers::pi / 2 + theta + alpha
                                             : std::numbers::pi / 2 - theta - alpha;
    return {std::cos(angle), std::sin(angle)};
}

namespace {

// Signed distance-like functions, positive strictly inside the tube:
//   top(s) = g(x(s)) - y(s),  bottom(s) = g(x(s)) + y(s).
struct RayProbe
{
    TubeSpec const& tube;
    Point2 o;
    Point2 d;

    Point2 at(double s) const { return {o.x + s * d.x, o.y + s * d.y}; }
};

constexpr double kResidualTol = 1e-12;

/// Root of F on [a, b] with F(a) > 0 >= F(b), where F is top (sgn = +1) or
/// bottom (sgn = -1). Newton steps fall back to bisection whenever they leave
/// the bracket.
double refine_crossing(RayProbe const& p, int sgn, double a, double b, double fa, double fb,
                       double& residual_out)
{
    auto value = [&](double s, double& y) {
        Point2 const q = p.at(s);
        y = q.y;
        return p.tube.g(q.x) - sgn * q.y;
    };
    double s = a + (b - a) * fa / (fa - fb);
    if (!(s > a && s < b)) {
        s = 0.5 * (a + b);
    }
    double best_s = b;
    double best_r = std::abs(fb);
    for (int it = 0; it < 200; ++it) {
        double y = 0;
        double const f = value(s, y);
        double const r = std::abs(f);
        if (r < best_r) {
            best_r = r;
            best_s = s;
        }
        if (r <= kResidualTol * (1.0 + std::abs(y))) {
            residual_out = r;
            return s;
        }
        if (f > 0) {
            a = s;
        } else {
            b = s;
        }
        Point2 const q = p.at(s);
        double const df = p.tube.dg(q.x) * p.d.x - sgn * p.d.y;
        double next = s - f / df;
        if (!(next > a && next < b)) {
            next = 0.5 * (a + b);
        }
        if (next == s || b - a <= 4 * std::numeric_limits<double>::epsilon() * std::abs(s)) {
            break;
        }
        s = next;
    }
    residual_out = best_r;
    return best_s;
}

} // namespace

Intersection first_intersection(TubeSpec const& tube, Ray const& ray)
{
    double const A = tube.A();
    Point2 const o = ray.origin;
    Point2 const d = ray.direction;
    if (!(o.x >= A)) {
        throw DomainError("ray origin lies left of the vertical wall");
    }
    RayProbe const probe{tube, o, d};
    double const g0 = tube.g(o.x);
    double const s_min = 1e-9 * (1.0 + g0);
    double const s_cap = 1e6 * (1.0 + g0);
    double const s_wall = d.x < 0 ? (A - o.x) / d.x : std::numeric_limits<double>::infinity();

    auto sample = [&](double s, double& top, double& bot, double& gx) {
        Point2 q = probe.at(s);
        q.x = std::max(q.x, A);
        gx = tube.g(q.x);
        top = gx - q.y;
        bot = gx + q.y;
    };

    double s_prev = std::min(s_min, s_wall);
    double top_prev = 0;
    double bot_prev = 0;
    double g_prev = 0;
    sample(s_prev, top_prev, bot_prev, g_prev);
    if (!(top_prev > 0 && bot_prev > 0)) {
        throw NumericError("ray does not enter the tube interior", std::min(top_prev, bot_prev));
    }

    for (;;) {
        double const h = std::max(0.1 * g_prev, 1e-6);
        double s_next = s_prev + h;
        bool at_wall = false;
        if (s_next >= s_wall) {
            s_next = s_wall;
            at_wall = true;
        }
        if (s_next > s_cap) {
            throw EscapeSuspected("no boundary crossing within the march cap");
        }
        double top = 0;
        double bot = 0;
        double gx = 0;
        sample(s_next, top, bot, gx);

        bool const cross_top = top <= 0;
        bool const cross_bot = bot <= 0;
        if (cross_top || cross_bot) {
            Intersection hit{HitKind::Curve, {0, Side::Upper}};
            double best = std::numeric_limits<double>::infinity();
            if (cross_top) {
                double res = 0;
                double const s = refine_crossing(probe, +1, s_prev, s_next, top_prev, top, res);
                best = s;
                hit.point = {probe.at(s).x, Side::Upper};
                hit.s = s;
                hit.residual = res;
            }
            if (cross_bot) {
                double res = 0;
                double const s = refine_crossing(probe, -1, s_prev, s_next, bot_prev, bot, res);
                if (s < best) {
                    hit.point = {probe.at(s).x, Side::Lower};
                    hit.s = s;
                    hit.residual = res;
                }
            }
            if (hit.point.x < A) {
                hit.point.x = A;
            }
            return hit;
        }
        if (at_wall) {
            Intersection hit{HitKind::VerticalWall, {A, Side::Upper}};
            hit.wall_y = o.y + s_wall * d.y;
            hit.s = s_wall;
            return hit;
        }
        s_prev = s_next;
        top_prev = top;
        bot_prev = bot;
        g_prev = gx;
    }
}

double delta_implicit_oracle(TubeSpec const& tube, double x, double alpha)
{
    BoundaryValues const b = tube.eval(x);
    if (!(std::abs(b.theta) + std::abs(alpha) < std::numbers::pi / 2)) {
        throw DomainError("oracle requires |theta| + |alpha| < pi/2");
    }
    double const T = std::tan(alpha + b.theta);
    auto G = [&](double delta) { return delta - (b.g + tube.g(x + delta)) * T; };
    auto dG = [&](double delta) { return 1.0 - tube.dg(x + delta) * T; };

    if (T == 0.0) {
        return 0.0;
    }
    // G(0) = -2 g T, so the root has the sign of T. Expand outward until G
    // changes sign; x + delta must stay >= 1.
    double lo = 0;
    double hi = 0;
    double const dir = T > 0 ? 1.0 : -1.0;
    double step = 2.0 * b.g * std::abs(T);
    double far = dir * step;
    for (int i = 0;; ++i) {
        if (x + far < 1.0) {
            far = 1.0 - x;
        }
        if (dir * G(far) >= 0) {
            break;
        }
        if (x + far <= 1.0 || i > 200) {
            throw DomainError("oracle could not bracket the opposite-side crossing");
        }
        far *= 2.0;
    }
    lo = std::min(0.0, far);
    hi = std::max(0.0, far);
    // G is negative at the end nearer to the root's sign-reversed side.
    double glo = G(lo);
    double delta = 0.5 * (lo + hi);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 100; ++it) {
        double const gv = G(delta);
        residual = std::abs(gv);
        if (residual <= 1e-12 * (1.0 + std::abs(delta) + b.g)) {
            return delta;
        }
        if ((gv > 0) == (glo > 0)) {
            lo = delta;
            glo = gv;
        } else {
            hi = delta;
        }
        double next = delta - gv / dG(delta);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == delta) {
            return delta;
        }
        delta = next;
    }
    throw NumericError("implicit jump equation did not converge", residual);
}

namespace {

/// sup |g'| over a geometric grid on [a0, a0 * 1e8]; built-in families have
/// eventually decreasing |g'|, so the grid captures the supremum.
double sup_abs_slope(TubeSpec const& tube, double a0)
{
    double sup = 0;
    for (double x = a0; x <= a0 * 1e8; x *= 1.02) {
        sup = std::max(sup, std::abs(tube.dg(x)));
    }
    return sup;
}

} // namespace

double jump_bound_constant(TubeSpec const& tube, double alpha0, double a0)
{
    double const a = sup_abs_slope(tube, std::max(a0, 1.0));
    double const angle = alpha0 + std::atan(a);
    if (!(angle < std::numbers::pi / 2)) {
        return std::numeric_limits<double>::infinity();
    }
    double const T = std::tan(angle);
    if (!(a * T < 1.0)) {
        return std::numeric_limits<double>::infinity();
    }
    // |Delta| <= (g(x) + g(x + Delta)) T and g(x + Delta) <= g(x) + a |Delta|.
    return 2.0 * T / (1.0 - a * T);
}

double calibrate_a0(TubeSpec const& tube, double alpha0)
{
    double const theta_cap = 0.5 * std::min(alpha0, std::numbers::pi / 2 - alpha0);
    double const slope_cap = std::tan(theta_cap);
    double candidate = std::max(tube.A(), 1.0);
    // Every grid point above the returned level is admissible.
    double x = candidate;
    double last_bad = 0;
    for (; x <= 1e12; x *= 1.05) {
        double const s = std::abs(tube.dg(x));
        if (!(s <= slope_cap) || !(s * std::tan(alpha0 + std::atan(s)) < 0.5)) {
            last_bad = x;
        }
    }
    return last_bad > 0 ? last_bad * 1.05 : candidate;
}

} // namespace sblab
