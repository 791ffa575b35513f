#include "sblab/chains.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "sblab/errors.hpp"
#include "sblab/io.hpp"
#include "sblab/stats.hpp"

namespace sblab {

ChainSpec ChainSpec::birth_death(double kappa, double alpha, double H)
{
    if (!(alpha > 0)) {
        throw ConfigError("birth-death exponent alpha must be positive");
    }
    if (!(H > 0)) {
        throw ConfigError("reflection floor H must be positive");
    }
    ChainSpec s(Kind::BirthDeath);
    s.kappa_ = kappa;
    s.alpha_ = alpha;
    s.H_ = H;
    return s;
}

ChainSpec ChainSpec::reflected() { return ChainSpec(Kind::ReflectedSimple); }

ChainSpec ChainSpec::srw_norm(int d)
{
    if (d < 2) {
        throw ConfigError("srwnorm needs d >= 2");
    }
    ChainSpec s(Kind::SrwNorm);
    s.d_ = d;
    return s;
}

namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(std::string const& text)
{
    char* end = nullptr;
    double const v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw ConfigError("invalid number '" + text + "' in chain spec");
    }
    return v;
}

} // namespace

ChainSpec ChainSpec::parse(std::string const& text)
{
    std::string const s = lower(text);
    if (s == "reflected") {
        return reflected();
    }
    auto const colon = s.find(':');
    std::string const kind = s.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(s.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            auto const eq = item.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("chain parameter '" + item + "' must be key=value");
            }
            kv[item.substr(0, eq)] = parse_number(item.substr(eq + 1));
        }
    }
    auto take = [&](char const* key, std::optional<double> fallback) {
        auto const it = kv.find(key);
        if (it == kv.end()) {
            if (!fallback) {
                throw ConfigError(std::string("chain spec '") + text + "' needs " + key);
            }
            return *fallback;
        }
        double const v = it->second;
        kv.erase(it);
        return v;
    };
    ChainSpec out = reflected();
    if (kind == "bd") {
        double const kappa = take("kappa", std::nullopt);
        double const alpha = take("alpha", 1.0);
        double const H = take("h", 1.0);
        out = birth_death(kappa, alpha, H);
    } else if (kind == "srwnorm") {
        double const d = take("d", std::nullopt);
        if (d != std::floor(d)) {
            throw ConfigError("srwnorm dimension must be an integer");
        }
        out = srw_norm(static_cast<int>(d));
    } else {
        throw ConfigError("unknown chain '" + text + "'; use bd:kappa=..,alpha=.., srwnorm:d=.. or reflected");
    }
    if (!kv.empty()) {
        throw ConfigError("unknown chain parameter '" + kv.begin()->first + "'");
    }
    return out;
}

double ChainSpec::clip_threshold() const
{
    if (kind_ != Kind::BirthDeath || kappa_ == 0) {
        return 0;
    }
    return std::pow(std::fabs(kappa_) / (4.0 * (0.5 - p_min)), 1.0 / alpha_);
}

std::string ChainSpec::to_string() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::BirthDeath:
        os << "bd:kappa=" << format_number(kappa_) << ",alpha=" << format_number(alpha_);
        if (H_ != 1.0) {
            os << ",h=" << format_number(H_);
        }
        break;
    case Kind::ReflectedSimple:
        os << "reflected";
        break;
    case Kind::SrwNorm:
        os << "srwnorm:d=" << d_;
        break;
    }
    return os.str();
}

namespace {

double bd_down(ChainSpec const& spec, double x)
{
    double const y = x - 1.0;
    return y < spec.H() ? 2.0 * spec.H() : y;
}

} // namespace

double chain_step(ChainSpec const& spec, double x, double u)
{
    switch (spec.kind()) {
    case ChainSpec::Kind::BirthDeath:
        return u < spec.down_probability(x) ? bd_down(spec, x) : x + 1.0;
    case ChainSpec::Kind::ReflectedSimple:
        return u < 0.5 ? std::fabs(x - 1.0) : x + 1.0;
    case ChainSpec::Kind::SrwNorm:
        break;
    }
    int const d = spec.dimension();
    int const k = std::min(static_cast<int>(u * 2 * d), 2 * d - 1);
    double const r = std::round(x);
    if (k < 2) {
        return std::fabs(r + (k == 0 ? 1.0 : -1.0));
    }
    return std::sqrt(r * r + 1.0);
}

JumpMoments chain_moments_exact(ChainSpec const& spec, double x)
{
    switch (spec.kind()) {
    case ChainSpec::Kind::BirthDeath: {
        double const p = spec.down_probability(x);
        double const dn = bd_down(spec, x) - x;
        return {p * dn + (1 - p), p * dn * dn + (1 - p)};
    }
    case ChainSpec::Kind::ReflectedSimple: {
        double const dn = std::fabs(x - 1.0) - x;
        return {0.5 * (dn + 1.0), 0.5 * (dn * dn + 1.0)};
    }
    case ChainSpec::Kind::SrwNorm:
        break;
    }
    double const d = spec.dimension();
    double const r = std::round(x);
    double const a = r + 1.0 - x;
    double const b = std::fabs(r - 1.0) - x;
    double const c = std::sqrt(r * r + 1.0) - x;
    return {(a + b + 2 * (d - 1) * c) / (2 * d), (a * a + b * b + 2 * (d - 1) * c * c) / (2 * d)};
}

ChainTrajectory simulate_chain(ChainSpec const& spec, ChainConfig const& cfg)
{
    bool const reflected = spec.kind() == ChainSpec::Kind::ReflectedSimple;
    if (!(cfg.x_start >= (reflected ? 0.0 : 1.0))) {
        throw ConfigError("chain start must be >= 1 (>= 0 for the reflected walk)");
    }
    ChainTrajectory out;
    RngStream rng(cfg.seed, cfg.stream);
    bool const full = cfg.record == ChainRecord::Full;
    bool const passage = cfg.record == ChainRecord::PassageTimes;
    out.passage.assign(cfg.levels.size(), std::nullopt);
    std::size_t pending = cfg.levels.size();

    // Integer lattice state for the SRW norm.
    std::vector<std::int64_t> pos;
    std::int64_t norm2 = 0;
    if (spec.kind() == ChainSpec::Kind::SrwNorm) {
        pos.assign(spec.dimension(), 0);
        pos[0] = static_cast<std::int64_t>(std::llround(cfg.x_start));
        norm2 = pos[0] * pos[0];
    }

    double x = spec.kind() == ChainSpec::Kind::SrwNorm ? std::sqrt(static_cast<double>(norm2))
                                                       : cfg.x_start;
    double running = x;
    std::uint64_t next_dyadic = 1;
    auto observe = [&](std::uint64_t n) {
        if (full) {
            out.path.push_back(x);
        }
        for (std::size_t j = 0; j < cfg.levels.size(); ++j) {
            if (!out.passage[j] && x >= cfg.levels[j]) {
                out.passage[j] = n;
                --pending;
            }
        }
    };
    observe(0);

    std::uint64_t n = 0;
    while (n < cfg.n_max && !(passage && pending == 0)) {
        switch (spec.kind()) {
        case ChainSpec::Kind::BirthDeath: {
            double const u = rng.uniform();
            if (u < spec.down_probability(x)) {
                double const y = x - 1.0;
                if (y < spec.H()) {
                    ++out.floor_hits;
                    x = 2.0 * spec.H();
                } else {
                    x = y;
                }
            } else {
                x += 1.0;
            }
            break;
        }
        case ChainSpec::Kind::ReflectedSimple:
            x = rng.uniform() < 0.5 ? std::fabs(x - 1.0) : x + 1.0;
            break;
        case ChainSpec::Kind::SrwNorm: {
            auto const k = rng.below(2 * pos.size());
            auto& c = pos[k / 2];
            std::int64_t const s = (k % 2) ? -1 : 1;
            norm2 += 2 * c * s + 1;
            c += s;
            x = std::sqrt(static_cast<double>(norm2));
            break;
        }
        }
        ++n;
        running = std::max(running, x);
        if (n == next_dyadic) {
            out.index_max.push_back(running);
            next_dyadic *= 2;
        }
        observe(n);
    }
    out.last = x;
    out.max = running;
    out.steps = n;
    return out;
}

MomentProfile chain_moments(ChainSpec const& spec, std::vector<double> const& levels,
                            std::uint64_t n_samples, std::uint64_t seed)
{
    MomentProfile prof;
    prof.grid = levels;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw ConfigError("moment grid must be strictly increasing");
        }
        double const x = levels[i];
        RngStream rng(seed, i);
        RunningStats d1;
        RunningStats d2;
        for (std::uint64_t k = 0; k < n_samples; ++k) {
            double const d = chain_step(spec, x, rng.uniform()) - x;
            d1.add(d);
            d2.add(d * d);
        }
        auto const exact = chain_moments_exact(spec, x);
        prof.n.push_back(d1.n);
        prof.mu1_hat.push_back(d1.mean);
        prof.mu1_se.push_back(d1.se());
        prof.mu2_hat.push_back(d2.mean);
        prof.mu2_se.push_back(d2.se());
        prof.mu1_pred.push_back(exact.mu1);
        prof.mu2_pred.push_back(exact.mu2);
    }
    return prof;
}

std::optional<double> IntervalEmbedding::p_hat(int r) const
{
    auto const it = counts.find(r);
    if (it == counts.end() || it->second.total == 0) {
        return std::nullopt;
    }
    return static_cast<double>(it->second.up) / static_cast<double>(it->second.total);
}

IntervalEmbedding interval_embed(std::span<double const> traj, double beta, double B, int r_min)
{
    if (!(beta > 0) || !(B > 0)) {
        throw ConfigError("interval embedding needs beta > 0 and B > 0");
    }
    double const base = 1.0 + beta;
    // Gaps grow with r, so the first pair decides disjointness.
    if (!(beta * std::pow(base, r_min) > 2.0 * B)) {
        throw ConfigError("intervals overlap: need beta (1+beta)^r_min > 2B");
    }
    double const log_base = std::log(base);
    auto interval_of = [&](double v) -> std::optional<int> {
        if (!(v > 0)) {
            return std::nullopt;
        }
        int const r0 = static_cast<int>(std::floor(std::log(v) / log_base));
        for (int r : {r0, r0 + 1}) {
            if (r >= r_min && std::fabs(v - std::pow(base, r)) <= B) {
                return r;
            }
        }
        return std::nullopt;
    };

    IntervalEmbedding out;
    out.beta = beta;
    out.B = B;
    out.r_min = r_min;
    std::optional<int> cur;
    for (std::size_t n = 0; n < traj.size(); ++n) {
        auto const r = interval_of(traj[n]);
        if (!r || (cur && *r == *cur)) {
            continue;
        }
        if (cur && std::abs(*r - *cur) == 1) {
            auto& c = out.counts[*cur];
            ++c.total;
            if (*r == *cur + 1) {
                ++c.up;
            }
        }
        cur = r;
        out.Z.push_back(*r);
        out.entries.push_back(n);
    }
    return out;
}

} // namespace sblab
