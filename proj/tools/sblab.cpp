#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sblab/billiard.hpp"
#include "sblab/chains.hpp"
#include "sblab/criteria.hpp"
#include "sblab/errors.hpp"
#include "sblab/io.hpp"
#include "sblab/lamperti.hpp"
#include "sblab/parallel.hpp"
#include "sblab/stats.hpp"

namespace fs = std::filesystem;
using namespace sblab;

namespace {

struct Options
{
    std::string tube = "power:0.5";
    std::string law = "uniform:0.7854";
    double A = 1.0;
    double x_start = 0.0;
    std::uint64_t steps = 1u << 20;
    std::uint64_t replicas = 1;
    std::uint64_t seed = 0;
    unsigned workers = default_workers();
    std::string output_dir;
    std::string record = "streaming";
    std::optional<double> level;
    bool stop_on_return = false;

    std::string grid = "100,1000,10000";
    std::uint64_t samples = 1'000'000;
    std::string scale = "xi";

    std::string input;
    std::string mode = "discrete";
    std::string window;

    std::string chain;

    double H = 0;
    double delta = 0;
    std::optional<double> kappa;
    double C = std::numeric_limits<double>::infinity();
    double v = 0;
    bool empirical = false;

    std::string levels;
};

std::vector<double> parse_list(std::string const& text, char const* what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        double const v = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) {
            throw ConfigError(std::string("invalid number '") + item + "' in " + what);
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ConfigError(std::string(what) + " is empty");
    }
    return out;
}

std::string cell(double v) { return format_number(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }

template<class T>
std::string cell(std::optional<T> const& v)
{
    return v ? cell(*v) : std::string();
}

fs::path output_path(Options const& o, std::string const& name)
{
    fs::path dir = o.output_dir;
    if (dir.empty()) {
        char const* env = std::getenv("SBLAB_OUTPUT_DIR");
        dir = env && *env ? env : ".";
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    return dir / name;
}

Metadata billiard_meta(std::string const& command, Options const& o, TubeSpec const& tube,
                       ReflectionLaw const& law)
{
    Metadata m;
    m.add("command", command)
        .add("tube", tube.to_string())
        .add("law", law.to_string())
        .add("A", o.A)
        .add("gamma", tube.growth_exponent())
        .add("tan2", tan2_moment(law))
        .add("seed", std::to_string(o.seed))
        .add("teleport_timing", "distance to the wall plus straight line to (2A, g(2A))");
    return m;
}

struct Billiard
{
    TubeSpec tube;
    ReflectionLaw law;
};

Billiard make_billiard(Options const& o)
{
    return {TubeSpec::parse(o.tube, o.A), ReflectionLaw::parse(o.law)};
}

void check_replicas(Options const& o)
{
    if (o.replicas < 1) {
        throw ConfigError("--replicas must be at least 1");
    }
}

//---------------------------------------------------------------------------//

int cmd_simulate(Options const& o)
{
    check_replicas(o);
    auto const [tube, law] = make_billiard(o);
    bool const full = o.record == "full";
    if (!full && o.record != "streaming") {
        throw ConfigError("--record must be full or streaming");
    }
    SimulationConfig base;
    base.x_start = o.x_start;
    base.n_max = o.steps;
    base.seed = o.seed;
    base.mode = full ? RecordMode::Full : RecordMode::Streaming;
    if (o.stop_on_return) {
        base.stop.return_below = 2.0 * o.A;
    }
    base.stop.level = o.level;

    auto const runs = run_indexed(o.replicas, o.workers, [&](std::size_t r) {
        SimulationConfig c = base;
        c.stream = r;
        return simulate_collisions(tube, law, c);
    });

    auto meta = billiard_meta("simulate", o, tube, law);
    meta.add("x_start", o.x_start > 0 ? o.x_start : 4.0 * o.A)
        .add("steps", std::to_string(o.steps))
        .add("replicas", std::to_string(o.replicas))
        .add("record", o.record);
    if (o.level) {
        meta.add("level", *o.level);
    }
    meta.add("stop_on_return", o.stop_on_return ? "true" : "false");

    CsvWriter maxima(output_path(o, "maxima.csv"), meta, {"replica", "clock", "i", "n", "max"});
    for (std::size_t r = 0; r < runs.size(); ++r) {
        auto const& t = runs[r];
        for (std::size_t i = 0; i < t.index_max.size(); ++i) {
            maxima.row({cell(std::uint64_t{r}), "index", cell(std::uint64_t{i}),
                        cell(std::ldexp(1.0, static_cast<int>(i))), cell(t.index_max[i])});
        }
        for (std::size_t i = 0; i < t.time_max.size(); ++i) {
            maxima.row({cell(std::uint64_t{r}), "time", cell(std::uint64_t{i}),
                        cell(std::ldexp(1.0, static_cast<int>(i))), cell(t.time_max[i])});
        }
    }
    CsvWriter summary(output_path(o, "summary.csv"), meta,
                      {"replica", "collisions", "time", "stop", "max_x", "sigma", "tau", "wall_hits"});
    for (std::size_t r = 0; r < runs.size(); ++r) {
        auto const& t = runs[r];
        summary.row({cell(std::uint64_t{r}), cell(t.last.index), cell(t.last.nu), to_string(t.stop),
                     cell(t.max_x), cell(t.sigma), cell(t.tau), cell(t.wall_hits)});
    }
    if (full) {
        CsvWriter traj(output_path(o, "trajectory.csv"), meta, {"replica", "k", "x", "side", "nu"});
        for (std::size_t r = 0; r < runs.size(); ++r) {
            auto const& t = runs[r];
            for (std::size_t k = 0; k < t.size(); ++k) {
                traj.row({cell(std::uint64_t{r}), cell(std::uint64_t{k}), cell(t.x[k]),
                          t.side[k] == Side::Upper ? "upper" : "lower", cell(t.nu[k])});
            }
        }
    }
    std::cout << "wrote " << runs.size() << " replica(s) to " << output_path(o, "").string() << "\n";
    return 0;
}

int cmd_moments(Options const& o)
{
    auto const [tube, law] = make_billiard(o);
    MomentOptions mo;
    mo.n_samples = o.samples;
    mo.seed = o.seed;
    mo.workers = o.workers;
    if (o.scale == "zeta") {
        mo.scale = MomentScale::Zeta;
    } else if (o.scale != "xi") {
        throw ConfigError("--scale must be xi or zeta");
    }
    auto const p = empirical_moments(tube, law, parse_list(o.grid, "--grid"), mo);
    auto meta = billiard_meta("moments", o, tube, law);
    meta.add("scale", o.scale).add("samples", std::to_string(o.samples));
    CsvWriter out(output_path(o, "moments.csv"), meta,
                  {"level", "n", "mu1_hat", "mu1_se", "mu2_hat", "mu2_se", "mu1_pred", "mu2_pred"});
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.row({cell(p.grid[i]), cell(p.n[i]), cell(p.mu1_hat[i]), cell(p.mu1_se[i]),
                 cell(p.mu2_hat[i]), cell(p.mu2_se[i]), cell(p.mu1_pred[i]), cell(p.mu2_pred[i])});
        std::cout << "level " << cell(p.grid[i]) << ": mu1 " << cell(p.mu1_hat[i]) << " (pred "
                  << cell(p.mu1_pred[i]) << "), mu2 " << cell(p.mu2_hat[i]) << " (pred "
                  << cell(p.mu2_pred[i]) << ")\n";
    }
    return 0;
}

int cmd_classify(Options const& o)
{
    auto const [tube, law] = make_billiard(o);
    auto const rep = classify_regime(tube.growth_exponent(), law);
    std::vector<std::pair<std::string, std::string>> rows{
        {"regime", to_string(rep.regime)},
        {"gamma", cell(rep.gamma)},
        {"tan2", cell(rep.tan2)},
        {"gamma_c", cell(rep.gamma_c)},
        {"rho", cell(rep.rho)},
        {"criterion", rep.criterion},
        {"near_critical", rep.near_critical ? "true" : "false"},
        {"discrete_exponent", cell(rep.discrete_exponent)},
        {"continuous_exponent", cell(rep.continuous_exponent)},
    };
    CsvWriter out(output_path(o, "classify.csv"), billiard_meta("classify", o, tube, law),
                  {"key", "value"});
    for (auto const& [k, v] : rows) {
        out.row({k, v});
        std::cout << k << ": " << (v.empty() ? "none" : v) << "\n";
    }
    return 0;
}

std::optional<double> chain_target(ChainSpec const& spec)
{
    switch (spec.kind()) {
    case ChainSpec::Kind::BirthDeath:
        if (spec.alpha() == 1.0 && spec.kappa() > 1.0) {
            return 1.0 / (1.0 + spec.kappa());
        }
        if (spec.alpha() < 1.0 && spec.kappa() < 0.0) {
            return 1.0 / (1.0 + spec.alpha());
        }
        return std::nullopt;
    case ChainSpec::Kind::ReflectedSimple:
    case ChainSpec::Kind::SrwNorm:
        return 0.5;
    }
    return std::nullopt;
}

int cmd_exponent(Options const& o)
{
    if (o.input.empty()) {
        throw ConfigError("exponent needs --input <maxima.csv>");
    }
    if (o.mode != "discrete" && o.mode != "continuous") {
        throw ConfigError("--mode must be discrete or continuous");
    }
    auto const table = read_csv(o.input);
    std::size_t const c_rep = table.column("replica");
    std::size_t const c_clock = table.column("clock");
    std::size_t const c_n = table.column("n");
    std::size_t const c_max = table.column("max");
    std::string const clock = o.mode == "discrete" ? "index" : "time";

    std::vector<std::vector<DyadicPoint>> per_replica;
    for (auto const& row : table.rows) {
        if (row[c_clock] != clock) {
            continue;
        }
        auto const r = std::stoull(row[c_rep]);
        if (r >= per_replica.size()) {
            per_replica.resize(r + 1);
        }
        per_replica[r].push_back({std::stod(row[c_n]), std::stod(row[c_max])});
    }
    if (per_replica.empty()) {
        throw ConfigError("no '" + clock + "' maxima in '" + o.input + "'");
    }

    std::optional<FitWindow> window;
    if (!o.window.empty()) {
        auto const colon = o.window.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("--window must be lo:hi in powers of two");
        }
        window = dyadic_window(std::stoi(o.window.substr(0, colon)), std::stoi(o.window.substr(colon + 1)));
    }

    std::vector<ExponentFit> fits;
    std::vector<double> slopes;
    for (auto const& pts : per_replica) {
        fits.push_back(fit_exponent(pts, window ? *window : default_window(pts)));
        slopes.push_back(fits.back().slope);
    }

    std::optional<double> target;
    std::string source = "none";
    auto const& meta_in = table.meta;
    if (meta_in.count("gamma") && meta_in.count("law")) {
        auto const rep = classify_regime(std::stod(meta_in.at("gamma")), ReflectionLaw::parse(meta_in.at("law")));
        target = o.mode == "discrete" ? rep.discrete_exponent : rep.continuous_exponent;
        if (target) {
            source = std::string(to_string(rep.regime)) + " " + o.mode + " exponent";
        }
    } else if (meta_in.count("chain") && o.mode == "discrete") {
        target = chain_target(ChainSpec::parse(meta_in.at("chain")));
        if (target) {
            source = "chain exponent";
        }
    }

    Metadata meta;
    meta.add("command", "exponent").add("input", o.input).add("mode", o.mode);
    for (char const* key : {"tube", "law", "chain", "gamma", "seed"}) {
        if (meta_in.count(key)) {
            meta.add(key, meta_in.at(key));
        }
    }
    meta.add("median_slope", median(slopes));
    meta.add("target", target ? cell(*target) : "none");
    CsvWriter out(output_path(o, "exponent.csv"), meta,
                  {"replica", "window_lo", "window_hi", "slope", "stderr", "intercept", "n_points",
                   "target_exponent", "target_source"});
    for (std::size_t r = 0; r < fits.size(); ++r) {
        auto const& f = fits[r];
        out.row({cell(std::uint64_t{r}), cell(f.window.lo), cell(f.window.hi), cell(f.slope), cell(f.se),
                 cell(f.intercept), cell(static_cast<std::uint64_t>(f.n_points)), cell(target), source});
    }
    std::cout << "median slope: " << cell(median(slopes)) << "\n";
    std::cout << "target: " << (target ? cell(*target) : "none") << "\n";
    return 0;
}

int cmd_chain(Options const& o)
{
    check_replicas(o);
    if (o.chain.empty()) {
        throw ConfigError("chain needs --chain <spec>");
    }
    auto const spec = ChainSpec::parse(o.chain);
    double const x_start = o.x_start > 0 ? o.x_start : 1.0;
    auto const runs = run_indexed(o.replicas, o.workers, [&](std::size_t r) {
        ChainConfig c;
        c.x_start = x_start;
        c.n_max = o.steps;
        c.seed = o.seed;
        c.stream = r;
        return simulate_chain(spec, c);
    });
    Metadata meta;
    meta.add("command", "chain")
        .add("chain", spec.to_string())
        .add("x_start", x_start)
        .add("steps", std::to_string(o.steps))
        .add("replicas", std::to_string(o.replicas))
        .add("seed", std::to_string(o.seed));
    if (spec.kind() == ChainSpec::Kind::BirthDeath) {
        meta.add("clip_threshold", spec.clip_threshold());
    }
    CsvWriter maxima(output_path(o, "maxima.csv"), meta, {"replica", "clock", "i", "n", "max"});
    CsvWriter summary(output_path(o, "summary.csv"), meta,
                      {"replica", "steps", "last", "max", "floor_hits"});
    for (std::size_t r = 0; r < runs.size(); ++r) {
        auto const& t = runs[r];
        for (std::size_t i = 0; i < t.index_max.size(); ++i) {
            maxima.row({cell(std::uint64_t{r}), "index", cell(std::uint64_t{i}),
                        cell(std::ldexp(1.0, static_cast<int>(i))), cell(t.index_max[i])});
        }
        summary.row({cell(std::uint64_t{r}), cell(t.steps), cell(t.last), cell(t.max), cell(t.floor_hits)});
    }
    std::cout << "wrote " << runs.size() << " replica(s) to " << output_path(o, "").string() << "\n";
    return 0;
}

int cmd_criteria(Options const& o)
{
    auto const grid = parse_list(o.grid, "--grid");
    DriftOptions opts;
    opts.H = o.H;
    opts.delta = o.delta;
    opts.C = o.C;
    opts.v = o.v;
    opts.kappa = o.kappa;

    Metadata meta;
    meta.add("command", "criteria");
    DriftInput input;
    if (!o.chain.empty()) {
        auto const spec = ChainSpec::parse(o.chain);
        meta.add("chain", spec.to_string());
        input = o.empirical ? DriftInput::from_profile(chain_moments(spec, grid, o.samples, o.seed))
                            : DriftInput::analytic(grid, [&](double x) { return chain_moments_exact(spec, x); });
    } else {
        auto const [tube, law] = make_billiard(o);
        meta = billiard_meta("criteria", o, tube, law);
        if (o.empirical) {
            MomentOptions mo;
            mo.n_samples = o.samples;
            mo.seed = o.seed;
            mo.workers = o.workers;
            mo.scale = MomentScale::Zeta;
            input = DriftInput::from_profile(empirical_moments(tube, law, grid, mo));
        } else {
            if (tube.family() != Family::Power) {
                throw ConfigError("analytic criteria need a power tube; use --empirical otherwise");
            }
            input = DriftInput::zeta(tube.growth_exponent(), tan2_moment(law), grid);
        }
    }
    meta.add("input", o.empirical ? "empirical" : "analytic");
    if (o.empirical) {
        meta.add("samples", std::to_string(o.samples));
    }
    auto const c = lamperti_conditions(input, opts);

    CsvWriter csv(output_path(o, "conditions.csv"), meta,
                  {"condition", "range_lo", "range_hi", "margin", "verdict"});
    for (auto const& k : c.checks) {
        csv.row({k.name, cell(k.range_lo), cell(k.range_hi), cell(k.margin), to_string(k.verdict)});
    }
    auto const report = format_report(c);
    std::ofstream txt(output_path(o, "conditions.txt"), std::ios::binary);
    if (!txt) {
        throw ConfigError("cannot write conditions.txt");
    }
    txt << "# sblab " << version << "\n";
    for (auto const& [k, v] : meta.entries()) {
        txt << "# " << k << ": " << v << "\n";
    }
    txt << report;
    std::cout << report;
    return 0;
}

int cmd_passage(Options const& o)
{
    check_replicas(o);
    std::vector<double> const levels = o.levels.empty() ? std::vector<double>{} : parse_list(o.levels, "--levels");
    struct Row
    {
        std::string quantity;
        PassageSummary s;
    };
    std::vector<Row> rows;
    Metadata meta;

    if (!o.chain.empty()) {
        if (levels.empty()) {
            throw ConfigError("chain passage needs --levels");
        }
        auto const spec = ChainSpec::parse(o.chain);
        double const x_start = o.x_start > 0 ? o.x_start : (spec.kind() == ChainSpec::Kind::ReflectedSimple ? 0.0 : 1.0);
        auto const runs = run_indexed(o.replicas, o.workers, [&](std::size_t r) {
            ChainConfig c;
            c.x_start = x_start;
            c.n_max = o.steps;
            c.seed = o.seed;
            c.stream = r;
            c.record = ChainRecord::PassageTimes;
            c.levels = levels;
            return simulate_chain(spec, c).passage;
        });
        for (std::size_t j = 0; j < levels.size(); ++j) {
            std::vector<std::optional<double>> times;
            for (auto const& p : runs) {
                times.push_back(p[j] ? std::optional<double>(static_cast<double>(*p[j])) : std::nullopt);
            }
            rows.push_back({"sigma_level", passage_time_stats(levels[j], times)});
        }
        meta.add("command", "passage").add("chain", spec.to_string()).add("x_start", x_start);
        meta.add("seed", std::to_string(o.seed));
    } else {
        auto const [tube, law] = make_billiard(o);
        meta = billiard_meta("passage", o, tube, law);
        meta.add("x_start", o.x_start > 0 ? o.x_start : 4.0 * o.A);
        SimulationConfig base;
        base.x_start = o.x_start;
        base.n_max = o.steps;
        base.seed = o.seed;
        if (levels.empty()) {
            base.mode = RecordMode::Streaming;
            base.stop = StopRule::return_below_level(2.0 * o.A);
        } else {
            base.mode = RecordMode::Full;
            base.stop = StopRule::level_reached(*std::max_element(levels.begin(), levels.end()));
        }
        auto const runs = run_indexed(o.replicas, o.workers, [&](std::size_t r) {
            SimulationConfig c = base;
            c.stream = r;
            auto t = simulate_collisions(tube, law, c);
            std::vector<std::optional<double>> out;
            if (levels.empty()) {
                out.push_back(t.sigma ? std::optional<double>(static_cast<double>(*t.sigma)) : std::nullopt);
                out.push_back(t.tau);
            } else {
                for (auto const& p : first_passage_indices(t.x, levels)) {
                    out.push_back(p ? std::optional<double>(static_cast<double>(*p)) : std::nullopt);
                }
            }
            return out;
        });
        auto column = [&](std::size_t j) {
            std::vector<std::optional<double>> v;
            for (auto const& r : runs) {
                v.push_back(r[j]);
            }
            return v;
        };
        if (levels.empty()) {
            rows.push_back({"sigma_A", passage_time_stats(2.0 * o.A, column(0))});
            rows.push_back({"tau_A", passage_time_stats(2.0 * o.A, column(1))});
        } else {
            for (std::size_t j = 0; j < levels.size(); ++j) {
                rows.push_back({"sigma_level", passage_time_stats(levels[j], column(j))});
            }
        }
    }
    meta.add("steps", std::to_string(o.steps)).add("replicas", std::to_string(o.replicas));
    CsvWriter out(output_path(o, "passage.csv"), meta,
                  {"quantity", "level", "replicas", "observed", "mean", "median", "max",
                   "censored_fraction", "censored"});
    for (auto const& [q, s] : rows) {
        out.row({q, cell(s.level), cell(std::uint64_t{s.replicas}), cell(std::uint64_t{s.observed}),
                 cell(s.mean), cell(s.median), cell(s.max), cell(s.censored_fraction),
                 s.censored ? "true" : "false"});
        std::cout << q << " level " << cell(s.level) << ": mean " << cell(s.mean) << ", observed "
                  << s.observed << "/" << s.replicas << (s.censored ? " (censored)" : "") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo lab for stochastic billiards in planar tubes"};
    app.set_version_flag("--version", std::string("sblab ") + version);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key = value file; flags override it");

    Options o;
    app.add_option("--tube", o.tube, "power:<gamma>, logpow:<K>, const:<c>")->capture_default_str();
    app.add_option("--law", o.law, "uniform:<a0>, twopoint:<a>, degenerate")->capture_default_str();
    app.add_option("--A", o.A, "Tube base A")->capture_default_str();
    app.add_option("--x-start", o.x_start, "Starting abscissa (0 selects the default)");
    app.add_option("--steps", o.steps, "Collision or chain step cap")->capture_default_str();
    app.add_option("--replicas", o.replicas, "Independent replicas")->capture_default_str();
    app.add_option("--seed", o.seed, "64-bit master seed")->capture_default_str();
    app.add_option("--workers", o.workers, "Worker threads (does not affect output)");
    app.add_option("--output-dir", o.output_dir, "Output directory (default $SBLAB_OUTPUT_DIR or .)");
    app.add_option("--record", o.record, "full or streaming")->capture_default_str();
    app.add_option("--level", o.level, "Stop once x reaches this level");
    app.add_flag("--stop-on-return", o.stop_on_return, "Stop once x <= 2A");
    app.add_option("--grid", o.grid, "Comma-separated levels")->capture_default_str();
    app.add_option("--samples", o.samples, "Single-jump samples per level")->capture_default_str();
    app.add_option("--scale", o.scale, "xi or zeta")->capture_default_str();
    app.add_option("--input", o.input, "Maxima CSV for exponent fits");
    app.add_option("--mode", o.mode, "discrete or continuous")->capture_default_str();
    app.add_option("--window", o.window, "Fit window lo:hi as powers of two");
    app.add_option("--chain", o.chain, "bd:kappa=..,alpha=.., srwnorm:d=.., reflected");
    app.add_option("--H", o.H, "Conditions use levels above H");
    app.add_option("--delta", o.delta, "Margin for strict conditions");
    app.add_option("--kappa", o.kappa, "kappa for the polynomial-ergodicity conditions");
    app.add_option("--C", o.C, "Bound on 2x mu1");
    app.add_option("--v", o.v, "Lower bound on mu2");
    app.add_flag("--empirical", o.empirical, "Estimate moments by Monte Carlo");
    app.add_option("--levels", o.levels, "Comma-separated passage levels");

    int (*handler)(Options const&) = nullptr;
    auto sub = [&](char const* name, char const* help, int (*fn)(Options const&)) {
        app.add_subcommand(name, help)->callback([&handler, fn] { handler = fn; });
    };
    sub("simulate", "Run the collision chain and write maxima, summaries and trajectories", cmd_simulate);
    sub("moments", "Estimate single-jump moments on a grid", cmd_moments);
    sub("classify", "Classify the regime of a power tube", cmd_classify);
    sub("exponent", "Fit growth exponents to dyadic maxima", cmd_exponent);
    sub("chain", "Simulate a one-dimensional test chain", cmd_chain);
    sub("criteria", "Check the drift conditions on a grid", cmd_criteria);
    sub("passage", "Tabulate first-passage and return times", cmd_passage);

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        return handler(o);
    } catch (ConfigError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (std::invalid_argument const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
