#include "sblab/billiard.hpp"

#include <algorithm>
#include <cmath>

namespace sblab {

char const* to_string(StopReason r)
{
    switch (r) {
    case StopReason::StepCap:
        return "step_cap";
    case StopReason::Returned:
        return "returned";
    case StopReason::LevelReached:
        return "level_reached";
    case StopReason::Escaped:
        return "escaped";
    }
    return "unknown";
}

StepOutcome collision_step(TubeSpec const& tube, CollisionState const& state, double alpha)
{
    double const A = tube.A();
    if (!(state.point.x > A)) {
        throw DomainError("collision step requires x > A");
    }
    double const x = state.point.x;
    double const theta = std::atan(tube.dg(x));
    Ray const ray{state.point.position(tube), reflect_direction(state.point.side, theta, alpha)};
    Intersection const hit = first_intersection(tube, ray);

    StepOutcome out;
    out.alpha = alpha;
    out.next.index = state.index + 1;
    if (hit.kind == HitKind::VerticalWall || hit.point.x <= A) {
        double const wall_y = hit.kind == HitKind::VerticalWall
                                  ? hit.wall_y
                                  : ray.origin.y + hit.s * ray.direction.y;
        Point2 const wall{A, wall_y};
        BoundaryPoint const restart{2.0 * A, Side::Upper};
        out.teleported = true;
        out.wall_y = wall.y;
        out.travelled = hit.s + distance(wall, restart.position(tube));
        out.next.point = restart;
    } else {
        out.travelled = hit.s;
        out.next.point = hit.point;
    }
    out.next.nu = state.nu + out.travelled;
    return out;
}

StepOutcome collision_step(TubeSpec const& tube, ReflectionLaw const& law,
                           CollisionState const& state, RngStream& rng)
{
    return collision_step(tube, state, law.sample(rng));
}

namespace {

/// Horizontal coordinate a distance u into the path of one step.
double x_along_step(TubeSpec const& tube, double x_from, Point2 from, StepOutcome const& step,
                    double u)
{
    double const x_to = step.next.point.x;
    if (!step.teleported) {
        return step.travelled > 0 ? x_from + (x_to - x_from) * (u / step.travelled) : x_to;
    }
    Point2 const wall{tube.A(), step.wall_y};
    double const leg1 = distance(from, wall);
    if (u <= leg1) {
        return x_from + (wall.x - x_from) * (leg1 > 0 ? u / leg1 : 1.0);
    }
    double const leg2 = step.travelled - leg1;
    double const frac = leg2 > 0 ? (u - leg1) / leg2 : 1.0;
    return wall.x + (x_to - wall.x) * std::min(frac, 1.0);
}

/// Time offset within the step at which x first drops to `level`, given that
/// the step starts above it and ends at or below it.
double crossing_offset(TubeSpec const& tube, double x_from, Point2 from, StepOutcome const& step,
                       double level)
{
    if (!step.teleported) {
        double const x_to = step.next.point.x;
        return step.travelled * (x_from - level) / (x_from - x_to);
    }
    Point2 const wall{tube.A(), step.wall_y};
    double const leg1 = distance(from, wall);
    return leg1 * (x_from - level) / (x_from - wall.x);
}

} // namespace

Trajectory simulate_collisions(TubeSpec const& tube, ReflectionLaw const& law,
                               SimulationConfig const& config)
{
    double const A = tube.A();
    double const x_start = config.x_start > 0 ? config.x_start : 4.0 * A;
    if (!(x_start > 2.0 * A)) {
        throw ConfigError("x_start must exceed 2A");
    }
    if (tube.family() == Family::Power && !(tube.parameter() < 1.0)) {
        throw ConfigError("simulation requires a sublinear tube (gamma < 1)");
    }

    Trajectory traj(tube, law);
    traj.seed = config.seed;
    traj.stream = config.stream;
    traj.mode = config.mode;
    bool const full = config.mode == RecordMode::Full;

    CollisionState state{{x_start, Side::Upper}, 0, 0.0};
    traj.first = state;
    traj.last = state;
    traj.max_x = x_start;
    if (full) {
        traj.x.push_back(state.point.x);
        traj.side.push_back(state.point.side);
        traj.nu.push_back(0.0);
    }

    double const return_level = 2.0 * A;
    RngStream rng(config.seed, config.stream);
    std::uint64_t next_index = 1;
    double next_time = 1.0;
    double running_max = x_start;

    auto stop_now = [&](double x) {
        if (config.stop.return_below && x <= *config.stop.return_below) {
            traj.stop = StopReason::Returned;
            return true;
        }
        if (config.stop.level && x >= *config.stop.level) {
            traj.stop = StopReason::LevelReached;
            return true;
        }
        return false;
    };

    while (state.index < config.n_max) {
        StepOutcome step;
        try {
            step = collision_step(tube, law, state, rng);
        } catch (EscapeSuspected const& e) {
            traj.stop = StopReason::Escaped;
            throw TrajectoryEscape(e.what(), std::make_shared<Trajectory const>(std::move(traj)));
        }
        Point2 const from = state.point.position(tube);
        double const x_from = state.point.x;
        double const x_to = step.next.point.x;

        while (next_time <= step.next.nu) {
            double const xt = x_along_step(tube, x_from, from, step, next_time - state.nu);
            traj.time_max.push_back(std::max(running_max, xt));
            next_time *= 2.0;
        }
        if (!traj.tau && (step.teleported || x_to <= return_level)) {
            traj.tau = state.nu + crossing_offset(tube, x_from, from, step, return_level);
        }
        if (!traj.sigma && x_to <= return_level) {
            traj.sigma = step.next.index;
        }
        if (step.teleported) {
            ++traj.wall_hits;
            if (full) {
                traj.walls.push_back({state.index, step.wall_y});
            }
        }

        running_max = std::max(running_max, x_to);
        if (step.next.index == next_index) {
            traj.index_max.push_back(running_max);
            next_index *= 2;
        }
        if (full) {
            traj.x.push_back(x_to);
            traj.side.push_back(step.next.point.side);
            traj.nu.push_back(step.next.nu);
            if (config.record_alpha) {
                traj.alpha.push_back(step.alpha);
            }
        }
        state = step.next;
        if (config.stop.level && x_to >= *config.stop.level && !traj.level_index) {
            traj.level_index = state.index;
        }
        if (stop_now(x_to)) {
            break;
        }
    }
    traj.last = state;
    traj.max_x = running_max;
    return traj;
}

Point2 position_at_time(Trajectory const& traj, double t)
{
    if (traj.mode != RecordMode::Full) {
        throw RangeError("position_at_time needs a fully recorded trajectory");
    }
    if (!(t >= 0.0) || t > traj.nu.back()) {
        throw RangeError("time outside the recorded trajectory");
    }
    // n(t) = max{n : nu_n <= t}
    auto const it = std::upper_bound(traj.nu.begin(), traj.nu.end(), t);
    auto const n = static_cast<std::size_t>(std::distance(traj.nu.begin(), it)) - 1;
    Point2 const from = traj.point(n);
    if (traj.nu[n] == t || n + 1 == traj.nu.size()) {
        return from;
    }
    Point2 const to = traj.point(n + 1);
    double const u = t - traj.nu[n];

    auto const wall = std::lower_bound(traj.walls.begin(), traj.walls.end(), n,
                                       [](WallEvent const& w, std::size_t k) { return w.step < k; });
    if (wall != traj.walls.end() && wall->step == n) {
        Point2 const w{traj.tube.A(), wall->wall_y};
        double const leg1 = distance(from, w);
        if (u <= leg1) {
            double const f = u / leg1;
            return {from.x + (w.x - from.x) * f, from.y + (w.y - from.y) * f};
        }
        double const leg2 = distance(w, to);
        double const f = std::min((u - leg1) / leg2, 1.0);
        return {w.x + (to.x - w.x) * f, w.y + (to.y - w.y) * f};
    }
    double const len = traj.nu[n + 1] - traj.nu[n];
    double const f = u / len;
    return {from.x + (to.x - from.x) * f, from.y + (to.y - from.y) * f};
}

ReturnTimes return_times(Trajectory const& traj, double A)
{
    if (traj.mode != RecordMode::Full) {
        throw RangeError("return_times needs a fully recorded trajectory");
    }
    double const level = 2.0 * A;
    ReturnTimes out;
    std::size_t wall_pos = 0;
    for (std::size_t k = 0; k + 1 < traj.x.size(); ++k) {
        while (wall_pos < traj.walls.size() && traj.walls[wall_pos].step < k) {
            ++wall_pos;
        }
        bool const teleport = wall_pos < traj.walls.size() && traj.walls[wall_pos].step == k;
        double const x_from = traj.x[k];
        double const x_to = traj.x[k + 1];
        if (x_from <= level) {
            out.sigma = k;
            out.tau = traj.nu[k];
            return out;
        }
        if (teleport) {
            // The first leg runs to x = tube.A() <= level.
            Point2 const w{traj.tube.A(), traj.walls[wall_pos].wall_y};
            double const leg1 = distance(traj.point(k), w);
            out.tau = traj.nu[k] + leg1 * (x_from - level) / (x_from - w.x);
        } else if (x_to <= level) {
            double const len = traj.nu[k + 1] - traj.nu[k];
            out.tau = traj.nu[k] + len * (x_from - level) / (x_from - x_to);
        }
        if (out.tau) {
            for (std::size_t j = k + 1; j < traj.x.size(); ++j) {
                if (traj.x[j] <= level) {
                    out.sigma = j;
                    break;
                }
            }
            return out;
        }
    }
    return out;
}

double unit_distance_level(TubeSpec const& tube, double alpha0)
{
    double const a0 = std::max(calibrate_a0(tube, alpha0), 2.0 * tube.A());
    double const C = jump_bound_constant(tube, alpha0, a0);
    auto ok = [&](double x) {
        double const g = tube.g(x);
        return tube.decreasing() ? (C + 2.0) * g <= 1.0 : g >= 1.0;
    };
    if (!std::isfinite(C)) {
        throw NumericError("no finite jump bound for this tube and angle", C);
    }
    double x = a0;
    while (!ok(x)) {
        x *= 1.01;
        if (x > 1e15) {
            throw NumericError("tube never reaches unit width", x);
        }
    }
    return x;
}

} // namespace sblab
