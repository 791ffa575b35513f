#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

#include "sblab/errors.hpp"

namespace sblab {

struct Point2
{
    double x = 0;
    double y = 0;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(b.x - a.x, b.y - a.y); }

enum class Side : std::int8_t
{
    Lower = -1,
    Upper = +1,
};

inline int sign_of(Side s) { return static_cast<int>(s); }
inline Side opposite(Side s) { return s == Side::Upper ? Side::Lower : Side::Upper; }

enum class Family
{
    Power,    ///< g(x) = x^gamma
    LogPower, ///< g(x) = (log x)^K
    Constant, ///< g(x) = c
    Custom,   ///< user-supplied g, g', g''
};

/// g and its first two derivatives, plus theta = arctan g'(x).
struct BoundaryValues
{
    double g;
    double dg;
    double d2g;
    double theta;
};

/// User boundary for the Custom family. All three callables are required;
/// derivatives are never approximated by differencing.
struct CustomBoundary
{
    std::function<double(double)> g;
    std::function<double(double)> dg;
    std::function<double(double)> d2g;
    double gamma = 0;  ///< growth exponent, used for classification only
    std::string name = "custom";
};

/// The tube {(x, y) : x > A, |y| < g(x)}.
class TubeSpec
{
  public:
    /// Power family. gamma = 1 (the wedge) is accepted for boundary
    /// evaluation; simulation requires gamma < 1.
    static TubeSpec power(double gamma, double A = 1.0);
    static TubeSpec log_power(double K, double A);
    static TubeSpec constant(double c, double A = 1.0);
    static TubeSpec custom(CustomBoundary boundary, double A);

    /// Parse "power:0.5", "logpow:2", "const:1" (case-insensitive).
    static TubeSpec parse(std::string_view text, double A);

    Family family() const { return family_; }
    double A() const { return A_; }
    /// gamma, K or c depending on the family.
    double parameter() const { return param_; }
    /// Polynomial growth exponent gamma of g (0 for log-power and constant).
    double growth_exponent() const;

    bool increasing() const;
    bool decreasing() const;

    /// g(x); DomainError for x < 1.
    double g(double x) const
    {
        if (!(x >= 1.0)) {
            throw DomainError("boundary evaluated at x < 1");
        }
        switch (family_) {
        case Family::Power:
            if (param_ == 0.5) {
                return std::sqrt(x);
            }
            if (param_ == -1.0) {
                return 1.0 / x;
            }
            return std::pow(x, param_);
        case Family::Constant:
            return param_;
        case Family::LogPower:
            return std::pow(std::log(x), param_);
        case Family::Custom:
            break;
        }
        return custom_->g(x);
    }

    /// g'(x); DomainError for x < 1.
    double dg(double x) const;

    BoundaryValues eval(double x) const;

    /// Canonical spec string, e.g. "power:0.5".
    std::string to_string() const;

  private:
    TubeSpec(Family f, double param, double A) : family_(f), param_(param), A_(A) {}

    Family family_;
    double param_;
    double A_;
    std::shared_ptr<CustomBoundary const> custom_;
};

/// Exact (g, g', g'', arctan g') at x >= 1.
BoundaryValues boundary_eval(TubeSpec const& tube, double x);

/// A collision point; the y-coordinate is +g(x) on Upper and -g(x) on Lower.
struct BoundaryPoint
{
    double x;
    Side side;

    Point2 position(TubeSpec const& tube) const { return {x, sign_of(side) * tube.g(x)}; }
};

struct Ray
{
    Point2 origin;
    Point2 direction;  ///< unit length
};

enum class HitKind
{
    Curve,
    VerticalWall,
};

struct Intersection
{
    HitKind kind;
    BoundaryPoint point;  ///< meaningful for Curve hits
    double wall_y = 0;    ///< meaningful for VerticalWall hits
    double s = 0;         ///< distance travelled along the ray
    double residual = 0;  ///< |y(s) -/+ g(x(s))| at the returned parameter

    Point2 position(TubeSpec const& tube) const
    {
        return kind == HitKind::Curve ? point.position(tube) : Point2{tube.A(), wall_y};
    }
};

/// Outgoing unit direction after reflecting at angle alpha to the inward
/// normal. theta = arctan g'(x). Positive alpha displaces toward +x.
Point2 reflect_direction(Side side, double theta, double alpha);

/// First point where the ray leaves the tube through y = +g, y = -g or x = A.
/// Throws EscapeSuspected when nothing is bracketed before the march cap.
Intersection first_intersection(TubeSpec const& tube, Ray const& ray);

/// Horizontal jump Delta(x, alpha) from (x, +g(x)), obtained by solving
/// Delta = (g(x) + g(x + Delta)) tan(alpha + theta) with a safeguarded Newton
/// iteration. Independent of the marching solver; used to cross-check it.
double delta_implicit_oracle(TubeSpec const& tube, double x, double alpha);

/// Upper bound C on |Delta(x, alpha)| / g(x) for x >= a0 and |alpha| <= alpha0,
/// from the secant-line construction bounding the jump. Returns +inf when the
/// construction does not apply (|g'| too large relative to alpha0).
double jump_bound_constant(TubeSpec const& tube, double alpha0, double a0);

/// Empirical calibration level beyond which the tube is flat enough for the
/// large-x geometric facts (alternating sides, bounded jumps) to hold for
/// reflection angles up to alpha0. Not a value from the theory: the theory only
/// asserts that such a level exists.
double calibrate_a0(TubeSpec const& tube, double alpha0);

} // namespace sblab
