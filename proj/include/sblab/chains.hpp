#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sblab/lamperti.hpp"
#include "sblab/rng.hpp"

namespace sblab {

/// One-dimensional test chains for the drift criteria.
class ChainSpec
{
  public:
    enum class Kind
    {
        BirthDeath,       ///< nearest-neighbour walk, down with probability p_x
        ReflectedSimple,  ///< |eta +- 1|
        SrwNorm,          ///< Euclidean norm of simple random walk on Z^d
    };

    /// p_x = 1/2 + (kappa/4) x^(-alpha), clipped to (0.001, 0.999).
    static ChainSpec birth_death(double kappa, double alpha, double H = 1.0);
    static ChainSpec reflected();
    static ChainSpec srw_norm(int d);

    /// "bd:kappa=3,alpha=1", "srwnorm:d=3", "reflected".
    static ChainSpec parse(std::string const& text);

    Kind kind() const { return kind_; }
    double kappa() const { return kappa_; }
    double alpha() const { return alpha_; }
    int dimension() const { return d_; }
    double H() const { return H_; }

    /// Probability of a down-step at x (BirthDeath).
    double down_probability(double x) const
    {
        double p = 0.5 + 0.25 * kappa_ * (alpha_ == 1.0 ? 1.0 / x : std::pow(x, -alpha_));
        return std::clamp(p, p_min, p_max);
    }

    /// Level below which clipping of p_x is active (0 if never).
    double clip_threshold() const;

    std::string to_string() const;

    static constexpr double p_min = 0.001;
    static constexpr double p_max = 0.999;

  private:
    ChainSpec(Kind k) : kind_(k) {}

    Kind kind_;
    double kappa_ = 0;
    double alpha_ = 1;
    int d_ = 0;
    double H_ = 1;
};

/// One step of the chain from x driven by a single uniform u. For SrwNorm
/// the walk is placed at (round(x), 0, ..., 0), so the result is the norm
/// after one step from that lattice point.
double chain_step(ChainSpec const& spec, double x, double u);

/// Exact one-step moments (mu1, mu2) from x, matching chain_step.
JumpMoments chain_moments_exact(ChainSpec const& spec, double x);

enum class ChainRecord
{
    DyadicMax,
    Full,
    PassageTimes,
};

struct ChainConfig
{
    double x_start = 1;
    std::uint64_t n_max = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    ChainRecord record = ChainRecord::DyadicMax;
    std::vector<double> levels;  ///< for PassageTimes; the run stops once all are reached
};

struct ChainTrajectory
{
    std::vector<double> path;       ///< Full only; path[0] = x_start
    std::vector<double> index_max;  ///< max_{m <= 2^i} eta_m
    std::vector<std::optional<std::uint64_t>> passage;  ///< min{n : eta_n >= level}
    double last = 0;
    double max = 0;
    std::uint64_t steps = 0;
    std::uint64_t floor_hits = 0;  ///< jumps redirected to 2H
};

ChainTrajectory simulate_chain(ChainSpec const& spec, ChainConfig const& config);

/// Single-step Monte Carlo moments at each level, with exact predictions.
MomentProfile chain_moments(ChainSpec const& spec, std::vector<double> const& levels,
                            std::uint64_t n_samples, std::uint64_t seed);

/// Embedded index chain on intervals I_r = [(1+beta)^r - B, (1+beta)^r + B].
struct IntervalEmbedding
{
    double beta = 0;
    double B = 0;
    int r_min = 0;
    std::vector<int> Z;                  ///< interval index at each entry time
    std::vector<std::uint64_t> entries;  ///< entry times l_k
    struct Count
    {
        std::uint64_t up = 0;
        std::uint64_t total = 0;
    };
    std::map<int, Count> counts;  ///< transitions out of each r

    /// Empirical P[Z_{k+1} = r + 1 | Z_k = r]; nullopt if r never left.
    std::optional<double> p_hat(int r) const;
};

/// Extracts the entry times into a new adjacent interval. Intervals with
/// r >= r_min are used; throws ConfigError if any two of them that the
/// trajectory can reach overlap.
IntervalEmbedding interval_embed(std::span<double const> traj, double beta, double B,
                                 int r_min = 0);

} // namespace sblab
