#pragma once

#include <string>
#include <string_view>

#include "sblab/rng.hpp"

namespace sblab {

/// Symmetric law of the reflection angle alpha, measured from the inward
/// normal. Only laws with a closed-form E[tan^2 alpha] are provided.
class ReflectionLaw
{
  public:
    enum class Kind
    {
        Uniform,   ///< uniform on (-bound, bound)
        TwoPoint,  ///< +-bound with probability 1/2 each
        Degenerate ///< alpha = 0
    };

    static ReflectionLaw uniform(double alpha0);
    static ReflectionLaw two_point(double a);
    static ReflectionLaw degenerate();

    /// Parse "uniform:0.7854", "twopoint:0.5236", "degenerate".
    static ReflectionLaw parse(std::string_view text);

    Kind kind() const { return kind_; }
    /// alpha0 (Uniform), a (TwoPoint) or 0 (Degenerate).
    double bound() const { return bound_; }

    /// alpha as a deterministic function of a uniform draw u in [0, 1).
    /// Replacing u by 1 - u flips the sign of alpha (up to the measure-zero
    /// endpoint), which is how symmetry is tested.
    double quantile(double u) const
    {
        switch (kind_) {
        case Kind::Uniform:
            return bound_ * (2.0 * u - 1.0);
        case Kind::TwoPoint:
            return u < 0.5 ? -bound_ : bound_;
        case Kind::Degenerate:
            break;
        }
        return 0.0;
    }

    double sample(RngStream& rng) const { return quantile(rng.uniform()); }

    std::string to_string() const;

  private:
    ReflectionLaw(Kind k, double b) : kind_(k), bound_(b) {}

    Kind kind_;
    double bound_;
};

inline double sample_alpha(ReflectionLaw const& law, RngStream& rng) { return law.sample(rng); }

/// E[tan^2 alpha] in closed form: tan(a0)/a0 - 1, tan^2 a, or 0.
double tan2_moment(ReflectionLaw const& law);

} // namespace sblab
