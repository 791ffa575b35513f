#include "sblab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sblab/errors.hpp"

namespace sblab {

void RunningStats::merge(RunningStats const& other)
{
    if (other.n == 0) {
        return;
    }
    if (n == 0) {
        *this = other;
        return;
    }
    double const na = static_cast<double>(n);
    double const nb = static_cast<double>(other.n);
    double const nt = na + nb;
    double const d = other.mean - mean;
    mean += d * nb / nt;
    m2 += other.m2 + d * d * na * nb / nt;
    n += other.n;
}

double RunningStats::se() const
{
    return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

std::vector<DyadicPoint> dyadic_max(std::span<double const> seq)
{
    std::vector<DyadicPoint> out;
    if (seq.empty()) {
        return out;
    }
    double running = seq[0];
    std::size_t next = 1;
    for (std::size_t m = 1; m < seq.size(); ++m) {
        running = std::max(running, seq[m]);
        if (m == next) {
            out.push_back({static_cast<double>(m), running});
            next *= 2;
        }
    }
    return out;
}

std::vector<DyadicPoint> dyadic_points(std::span<double const> maxima)
{
    std::vector<DyadicPoint> out;
    out.reserve(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) {
        out.push_back({std::ldexp(1.0, static_cast<int>(i)), maxima[i]});
    }
    return out;
}

FitWindow dyadic_window(int lo_exp, int hi_exp)
{
    return {std::ldexp(1.0, lo_exp), std::ldexp(1.0, hi_exp)};
}

FitWindow default_window(std::span<DyadicPoint const> points)
{
    if (points.size() <= 10) {
        throw RangeError("default window needs more than 10 dyadic points");
    }
    return {points[10].n, points.back().n};
}

ExponentFit fit_exponent(std::span<DyadicPoint const> points, FitWindow window)
{
    std::vector<double> lx;
    std::vector<double> ly;
    for (auto const& p : points) {
        if (p.n >= window.lo && p.n <= window.hi) {
            if (!(p.max > 0)) {
                throw DomainError("maxima must be positive to fit a power law");
            }
            lx.push_back(std::log(p.n));
            ly.push_back(std::log(p.max));
        }
    }
    int const k = static_cast<int>(lx.size());
    if (k < 5) {
        throw RangeError("exponent fit needs at least 5 points in the window");
    }
    double mx = 0;
    double my = 0;
    for (int i = 0; i < k; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0;
    double sxy = 0;
    for (int i = 0; i < k; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (int i = 0; i < k; ++i) {
        double const r = ly[i] - fit.intercept - fit.slope * lx[i];
        ssr += r * r;
    }
    fit.se = std::sqrt(ssr / (k - 2) / sxx);
    fit.n_points = k;
    fit.window = window;
    return fit;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw RangeError("median of an empty set");
    }
    std::sort(values.begin(), values.end());
    std::size_t const h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::vector<std::optional<std::uint64_t>>
first_passage_indices(std::span<double const> seq, std::span<double const> levels)
{
    std::vector<std::optional<std::uint64_t>> out(levels.size());
    for (std::size_t j = 0; j < levels.size(); ++j) {
        for (std::size_t n = 0; n < seq.size(); ++n) {
            if (seq[n] >= levels[j]) {
                out[j] = n;
                break;
            }
        }
    }
    return out;
}

PassageSummary passage_time_stats(double level, std::span<std::optional<double> const> times)
{
    PassageSummary s;
    s.level = level;
    s.replicas = times.size();
    std::vector<double> seen;
    for (auto const& t : times) {
        if (t) {
            seen.push_back(*t);
        }
    }
    s.observed = seen.size();
    if (!seen.empty()) {
        double sum = 0;
        for (double v : seen) {
            sum += v;
        }
        s.mean = sum / static_cast<double>(seen.size());
        s.max = *std::max_element(seen.begin(), seen.end());
        s.median = median(std::move(seen));
    }
    if (s.replicas > 0) {
        s.censored_fraction = static_cast<double>(s.replicas - s.observed) /
                              static_cast<double>(s.replicas);
    }
    s.censored = s.observed < s.replicas;
    return s;
}

} // namespace sblab
