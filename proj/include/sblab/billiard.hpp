#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sblab/geometry.hpp"
#include "sblab/reflection.hpp"
#include "sblab/rng.hpp"

namespace sblab {

/// State of the collision chain after n collisions.
struct CollisionState
{
    BoundaryPoint point;
    std::uint64_t index = 0;
    double nu = 0;  ///< cumulative path length, i.e. the collision time
};

/// Everything one collision produces.
struct StepOutcome
{
    CollisionState next;
    double alpha = 0;
    double travelled = 0;   ///< increment of nu
    bool teleported = false;
    double wall_y = 0;      ///< y of the wall hit when teleported
};

/// One collision with an explicit reflection angle.
///
/// A ray that reaches the wall x = A restarts the particle at (2A, g(2A)) on
/// the upper side. The elapsed time is the distance to the wall plus the
/// straight-line distance from the wall hit to (2A, g(2A)).
StepOutcome collision_step(TubeSpec const& tube, CollisionState const& state, double alpha);

/// One collision with alpha drawn from the law.
StepOutcome collision_step(TubeSpec const& tube, ReflectionLaw const& law,
                           CollisionState const& state, RngStream& rng);

/// When to stop a run besides the step cap.
struct StopRule
{
    std::optional<double> return_below;  ///< stop once x <= this level
    std::optional<double> level;         ///< stop once x >= this level

    static StopRule steps() { return {}; }
    static StopRule return_below_level(double l) { return {l, std::nullopt}; }
    static StopRule level_reached(double l) { return {std::nullopt, l}; }
    static StopRule level_or_return(double level, double ret) { return {ret, level}; }
};

enum class RecordMode
{
    Full,      ///< every collision point and time
    Streaming, ///< dyadic running maxima and stopping data only
};

enum class StopReason
{
    StepCap,
    Returned,
    LevelReached,
    Escaped,
};

char const* to_string(StopReason r);

/// Step k -> k+1 went through the wall at (A, wall_y).
struct WallEvent
{
    std::uint64_t step;
    double wall_y;
};

struct SimulationConfig
{
    double x_start = 0;          ///< 0 selects the default 4A
    std::uint64_t n_max = 0;
    StopRule stop;
    RecordMode mode = RecordMode::Full;
    bool record_alpha = false;   ///< keep drawn angles (Full mode)
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;    ///< replica index; selects the substream
};

struct Trajectory
{
    Trajectory(TubeSpec t, ReflectionLaw l) : tube(std::move(t)), law(l) {}

    TubeSpec tube;
    ReflectionLaw law;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    RecordMode mode = RecordMode::Full;

    // Full mode only.
    std::vector<double> x;
    std::vector<Side> side;
    std::vector<double> nu;
    std::vector<double> alpha;   ///< alpha[k] drives step k -> k+1
    std::vector<WallEvent> walls;

    // Always recorded.
    CollisionState first;
    CollisionState last;
    StopReason stop = StopReason::StepCap;
    double max_x = 0;
    /// index_max[i] = max_{m <= 2^i} x_m, for every 2^i <= last.index.
    std::vector<double> index_max;
    /// time_max[i] = sup_{s <= 2^i} X_s^(1), for every 2^i <= last.nu.
    std::vector<double> time_max;
    /// First collision index with x <= 2A and first time X^(1) <= 2A.
    std::optional<std::uint64_t> sigma;
    std::optional<double> tau;
    std::optional<std::uint64_t> level_index;
    std::uint64_t wall_hits = 0;

    std::size_t size() const { return x.size(); }
    Point2 point(std::size_t k) const { return BoundaryPoint{x[k], side[k]}.position(tube); }
};

/// Thrown when the geometry reports an escape; carries the partial run.
class TrajectoryEscape : public EscapeSuspected
{
  public:
    TrajectoryEscape(std::string const& what, std::shared_ptr<Trajectory const> partial)
        : EscapeSuspected(what), partial_(std::move(partial))
    {
    }
    Trajectory const& partial() const { return *partial_; }

  private:
    std::shared_ptr<Trajectory const> partial_;
};

/// Runs collision_step from (x_start, Upper) until the stop rule fires or
/// n_max collisions have happened.
Trajectory simulate_collisions(TubeSpec const& tube, ReflectionLaw const& law,
                               SimulationConfig const& config);

/// X_t by unit-speed interpolation between collisions (Full mode).
Point2 position_at_time(Trajectory const& traj, double t);

struct ReturnTimes
{
    std::optional<std::uint64_t> sigma;  ///< nullopt: no return within the horizon
    std::optional<double> tau;
};

/// sigma_A = min{n : x_n <= 2A}; tau_A = inf{t > 0 : X_t^(1) <= 2A}, found
/// per segment (Full mode).
ReturnTimes return_times(Trajectory const& traj, double A);

/// Level beyond which consecutive collision distances are comparable to 1:
/// at least 1 in a growing tube (g >= 1 there) and at most 1 in a narrowing
/// one, where |Delta| + 2g <= (C + 2) g(x) <= 1 with C from
/// jump_bound_constant. Never below calibrate_a0 or 2A.
double unit_distance_level(TubeSpec const& tube, double alpha0);

} // namespace sblab
