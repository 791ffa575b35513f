#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sblab {

/// Mean and variance accumulator (Welford), mergeable with Chan's formula.
struct RunningStats
{
    std::uint64_t n = 0;
    double mean = 0;
    double m2 = 0;  ///< sum of squared deviations from the mean

    void add(double v)
    {
        ++n;
        double const d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }

    void merge(RunningStats const& other);

    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    /// Standard error of the mean.
    double se() const;
};

struct DyadicPoint
{
    double n;    ///< 2^i
    double max;  ///< running maximum over indices m <= n
};

/// Running maxima M_i = max_{0 <= m <= 2^i} seq[m] for every 2^i < seq.size().
std::vector<DyadicPoint> dyadic_max(std::span<double const> seq);

/// Pairs (2^i, maxima[i]) for maxima already sampled at dyadic indices or
/// times, as recorded by streaming simulations.
std::vector<DyadicPoint> dyadic_points(std::span<double const> maxima);

/// Inclusive range of n used by a fit.
struct FitWindow
{
    double lo;
    double hi;
};

/// Window [2^lo_exp, 2^hi_exp].
FitWindow dyadic_window(int lo_exp, int hi_exp);

/// Default window: everything above the lowest 10 dyadic points.
FitWindow default_window(std::span<DyadicPoint const> points);

struct ExponentFit
{
    double slope = 0;
    double intercept = 0;
    double se = 0;  ///< standard error of the slope
    int n_points = 0;
    FitWindow window{0, 0};
};

/// Least squares of log M on log n over the points with n in the window.
/// Throws RangeError with fewer than 5 points.
ExponentFit fit_exponent(std::span<DyadicPoint const> points, FitWindow window);

/// Median; the mean of the two central values for even sizes.
double median(std::vector<double> values);

/// sigma_l = min{n : seq[n] >= l} for each level, nullopt if never reached.
std::vector<std::optional<std::uint64_t>>
first_passage_indices(std::span<double const> seq, std::span<double const> levels);

/// Summary of one passage or return time across replicas. Censored
/// replicas (nullopt) are excluded from mean and median and counted.
struct PassageSummary
{
    double level = 0;
    std::size_t replicas = 0;
    std::size_t observed = 0;
    double mean = 0;
    double median = 0;
    double max = 0;
    double censored_fraction = 0;
    /// True when any replica was censored; mean and median are then biased low.
    bool censored = false;
};

PassageSummary passage_time_stats(double level, std::span<std::optional<double> const> times);

} // namespace sblab
