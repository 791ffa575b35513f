#include "sblab/reflection.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sblab/errors.hpp"
#include "sblab/io.hpp"

namespace sblab {

namespace {

void check_bound(double b)
{
    if (!(b > 0 && b < std::numbers::pi / 2)) {
        throw ConfigError("reflection bound must lie in (0, pi/2)");
    }
}

} // namespace

ReflectionLaw ReflectionLaw::uniform(double alpha0)
{
    check_bound(alpha0);
    return {Kind::Uniform, alpha0};
}

ReflectionLaw ReflectionLaw::two_point(double a)
{
    check_bound(a);
    return {Kind::TwoPoint, a};
}

ReflectionLaw ReflectionLaw::degenerate() { return {Kind::Degenerate, 0.0}; }

ReflectionLaw ReflectionLaw::parse(std::string_view text)
{
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "degenerate") {
        return degenerate();
    }
    auto const colon = s.find(':');
    if (colon == std::string::npos) {
        throw ConfigError("law spec '" + std::string(text) +
                          "' must be uniform:<a0>, twopoint:<a> or degenerate");
    }
    std::string const kind = s.substr(0, colon);
    std::string const num = s.substr(colon + 1);
    char* end = nullptr;
    double const v = std::strtod(num.c_str(), &end);
    if (num.empty() || end != num.c_str() + num.size()) {
        throw ConfigError("invalid number '" + num + "' in law spec");
    }
    if (kind == "uniform") {
        return uniform(v);
    }
    if (kind == "twopoint") {
        return two_point(v);
    }
    throw ConfigError("unknown reflection law '" + kind + "'");
}

std::string ReflectionLaw::to_string() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::Uniform:
        os << "uniform:" << format_number(bound_);
        break;
    case Kind::TwoPoint:
        os << "twopoint:" << format_number(bound_);
        break;
    case Kind::Degenerate:
        os << "degenerate";
        break;
    }
    return os.str();
}

double tan2_moment(ReflectionLaw const& law)
{
    switch (law.kind()) {
    case ReflectionLaw::Kind::Uniform:
        return std::tan(law.bound()) / law.bound() - 1.0;
    case ReflectionLaw::Kind::TwoPoint: {
        double const t = std::tan(law.bound());
        return t * t;
    }
    case ReflectionLaw::Kind::Degenerate:
        break;
    }
    return 0.0;
}

} // namespace sblab
