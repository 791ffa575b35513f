#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sblab/geometry.hpp"
#include "sblab/reflection.hpp"

namespace sblab {

//---------------------------------------------------------------------------//
// Lamperti scale
//---------------------------------------------------------------------------//

/// h(x) = x / g(x); x^(1 - gamma) for power tubes.
double scale_map(TubeSpec const& tube, double x);

/// x with h(x) = y; closed form for power and constant tubes.
double inverse_scale_map(TubeSpec const& tube, double y);

/// h(x + delta) - h(x) without cancellation for power tubes.
double zeta_increment(TubeSpec const& tube, double x, double delta);

//---------------------------------------------------------------------------//
// Closed-form moments and constants
//---------------------------------------------------------------------------//

struct JumpMoments
{
    double mu1;
    double mu2;
};

/// Leading-order E[Delta] = 2 g' g (1 + 2t) and E[Delta^2] = 4 g^2 t with
/// t = E[tan^2 alpha]. Dropped terms are O(g^3/x^2) and O(g^3/x); both vanish
/// in the constant family, where the formulas are exact.
JumpMoments predicted_xi_moments(TubeSpec const& tube, ReflectionLaw const& law, double x);

/// m1 = 2 gamma (1 - gamma)(1 + t) / y and m2 = 4 (1 - gamma)^2 t.
JumpMoments predicted_zeta_moments(double gamma, double tan2, double y);

struct RegimeConstants
{
    double gamma_c;
    std::optional<double> rho;  ///< defined for gamma < -tan2
};

/// gamma_c = t / (1 + 2t); rho = t / ((1 - 2 gamma) t - gamma).
RegimeConstants regime_constants(double gamma, double tan2);

enum class Regime
{
    Transient,
    NullRecurrent,
    PositiveRecurrent,
    CriticalNull,
    Unclassified,
};

char const* to_string(Regime r);

struct ClassificationReport
{
    double gamma = 0;
    double tan2 = 0;
    double gamma_c = 0;
    std::optional<double> rho;
    Regime regime = Regime::Unclassified;
    std::string criterion;       ///< the comparison that decided the regime
    bool near_critical = false;  ///< |gamma - threshold| within tolerance
    /// Predicted growth exponents of the collision-index and time maxima.
    std::optional<double> discrete_exponent;
    std::optional<double> continuous_exponent;
};

/// Absolute tolerance for gamma = threshold comparisons.
inline constexpr double critical_tolerance = 1e-12;

ClassificationReport classify_regime(double gamma, ReflectionLaw const& law);

//---------------------------------------------------------------------------//
// Monte Carlo jump moments
//---------------------------------------------------------------------------//

enum class MomentScale
{
    Xi,    ///< Delta = x' - x
    Zeta,  ///< h(x') - h(x)
};

struct MomentProfile
{
    MomentScale scale = MomentScale::Xi;
    std::vector<double> grid;  ///< x levels (Xi) or y levels (Zeta)
    std::vector<std::uint64_t> n;
    std::vector<double> mu1_hat;
    std::vector<double> mu1_se;
    std::vector<double> mu2_hat;
    std::vector<double> mu2_se;
    std::vector<double> mu1_pred;
    std::vector<double> mu2_pred;

    std::size_t size() const { return grid.size(); }
};

struct MomentOptions
{
    std::uint64_t n_samples = 1'000'000;
    std::uint64_t seed = 0;
    MomentScale scale = MomentScale::Xi;
    unsigned workers = 1;
};

/// Samples independent single jumps from (x, Upper) at each grid level. Sample
/// blocks have fixed size and fixed substreams, so results do not depend on
/// the worker count.
MomentProfile empirical_moments(TubeSpec const& tube, ReflectionLaw const& law,
                                std::vector<double> const& grid, MomentOptions const& opts);

} // namespace sblab
