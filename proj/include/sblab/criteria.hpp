#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sblab/lamperti.hpp"

namespace sblab {

//---------------------------------------------------------------------------//
// Scale functions
//---------------------------------------------------------------------------//

/// max{1, log x}; the convention for every logarithm in the envelope formulas.
inline double log1floor(double x) { return x > 2.718281828459045 ? std::log(x) : 1.0; }

/// A nondecreasing function on [0, inf).
class FDescriptor
{
  public:
    enum class Kind
    {
        Square,       ///< y^2
        PowerLogDiv,  ///< y^(1+kappa) / log(1+y)
        PowerLogMul,  ///< y^(1+kappa) log(1+y)
        Table,        ///< piecewise linear through (y_i, f_i), flat beyond
    };

    static FDescriptor square() { return FDescriptor(Kind::Square, 0); }
    static FDescriptor power_log_div(double kappa);
    static FDescriptor power_log_mul(double kappa);
    /// Abscissae strictly increasing from 0, values nondecreasing.
    static FDescriptor table(std::vector<double> y, std::vector<double> f);

    /// "square", "powlogdiv:3", "powlogmul:3".
    static FDescriptor parse(std::string const& text);

    Kind kind() const { return kind_; }
    double kappa() const { return kappa_; }

    double operator()(double y) const;

    std::string to_string() const;

  private:
    FDescriptor(Kind k, double kappa) : kind_(k), kappa_(kappa) {}

    Kind kind_;
    double kappa_;
    std::vector<double> ty_;
    std::vector<double> tf_;
};

using ScaleFunction = std::function<double(double)>;

/// x (log x)^(1+eps), with log read as max{1, log}.
ScaleFunction default_a(double eps = 0.5);
/// (log x)^(1+eps), with log read as max{1, log}.
ScaleFunction default_v(double eps = 0.5);

struct ScaleTriple
{
    FDescriptor f = FDescriptor::square();
    ScaleFunction a = default_a();
    ScaleFunction v = default_v();
    double eps = 1.0;
    double b = 1.0;  ///< jump bound
};

/// sup{y >= 0 : f(y) < x}; 0 when no y qualifies, +inf when f stays below x.
double f_inverse(FDescriptor const& f, double x);

/// f^{-1}(a(2n)): eventual upper envelope of the running maximum.
double upper_bound_curve(ScaleTriple const& triple, double n);

/// inf{y >= 0 : v(y) f(y + b) / eps >= x}.
double r_v(ScaleTriple const& triple, double x);

/// r_v(n) - b: eventual lower envelope of the running maximum.
double lower_bound_curve(ScaleTriple const& triple, double n);

//---------------------------------------------------------------------------//
// Lamperti drift conditions
//---------------------------------------------------------------------------//

/// Jump moments on a grid. Standard errors are zero for analytic input.
struct DriftInput
{
    std::vector<double> x;
    std::vector<double> mu1;
    std::vector<double> mu2;
    std::vector<double> mu1_se;
    std::vector<double> mu2_se;
    bool empirical = false;

    static DriftInput from_profile(MomentProfile const& profile);
    static DriftInput analytic(std::vector<double> grid,
                               std::function<JumpMoments(double)> const& moments);
    /// Closed-form zeta moments of a power tube on a y-grid.
    static DriftInput zeta(double gamma, double tan2, std::vector<double> grid);
};

struct DriftOptions
{
    double H = 0;      ///< checks use grid points x > H
    double delta = 0;  ///< strict conditions need margin > delta
    double C = std::numeric_limits<double>::infinity();  ///< bound on 2x mu1
    double v = 0;      ///< mu2 must exceed v
    std::optional<double> kappa;  ///< for the polynomial-ergodicity conditions
};

enum class Verdict
{
    Holds,
    Fails,
    NotApplicable,
};

char const* to_string(Verdict v);

struct ConditionCheck
{
    std::string name;
    std::string inequality;
    double range_lo = 0;
    double range_hi = 0;
    double margin = 0;  ///< worst value of lhs - rhs over the window
    Verdict verdict = Verdict::NotApplicable;
};

/// Pointwise evaluation of each drift inequality over the grid points above H.
///
/// Margins are worst cases over the window. With empirical input a
/// non-strict inequality holds unless violated by more than 3 standard
/// errors, and a strict one holds only if satisfied by more than 3 standard
/// errors. Everything is window-verified, never proven.
struct DriftConditions
{
    double H = 0;
    double delta = 0;
    bool empirical = false;
    std::vector<ConditionCheck> checks;
    /// Regime implied by the recurrence/transience conditions, if any holds.
    std::optional<Regime> implied;

    ConditionCheck const& get(std::string const& name) const;
};

DriftConditions lamperti_conditions(DriftInput const& input, DriftOptions const& opts);

/// "key: value" lines.
std::string format_report(DriftConditions const& c);
/// condition,range_lo,range_hi,margin,verdict
std::string format_csv(DriftConditions const& c);

//---------------------------------------------------------------------------//
// Lyapunov drift
//---------------------------------------------------------------------------//

/// Next state of a Markov chain from x, as a function of one uniform draw.
using QuantileSampler = std::function<double(double x, double u)>;

struct DriftEstimate
{
    double level;
    double drift;  ///< estimate of E[f(next) - f(x)]
    double se;
    std::uint64_t n;
};

struct LyapunovCheck
{
    std::vector<DriftEstimate> levels;
    double upper = 0;  ///< max over levels of drift + 3 se
    double lower = 0;  ///< min over levels of drift - 3 se
    /// Every level bounded by the single constant `upper` (always true on a
    /// finite window; recorded for the report).
    bool bounded_above = false;
    /// Every level bounded below by `lower` > 0.
    bool positive = false;
};

/// Monte Carlo E[f(eta') - f(eta) | eta = x] per level. The draws of each
/// batch are stratified over [0, 1); the standard error comes from the
/// spread of batch means.
LyapunovCheck lyapunov_drift_check(QuantileSampler const& sampler, FDescriptor const& f,
                                   std::vector<double> const& levels,
                                   std::uint64_t n_samples, std::uint64_t seed,
                                   int batches = 20);

} // namespace sblab
