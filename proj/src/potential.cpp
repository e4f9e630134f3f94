#include "diracsym/potential.hpp"

#include "diracsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diracsym {

PotentialProfile PotentialProfile::woods_saxon(double depth, double radius, double diffuseness) {
    if (!(diffuseness > 0.0)) throw std::invalid_argument("woods_saxon diffuseness must be > 0");
    PotentialProfile p;
    p.kind = Kind::woods_saxon;
    p.depth = depth;
    p.radius = radius;
    p.diffuseness = diffuseness;
    return p;
}

PotentialProfile PotentialProfile::harmonic(double k) {
    PotentialProfile p;
    p.kind = Kind::harmonic;
    p.k = k;
    return p;
}

PotentialProfile PotentialProfile::square_well(double depth, double radius) {
    PotentialProfile p;
    p.kind = Kind::square_well;
    p.depth = depth;
    p.radius = radius;
    return p;
}

PotentialProfile PotentialProfile::constant(double c) {
    PotentialProfile p;
    p.kind = Kind::constant;
    p.offset = c;
    return p;
}

namespace {

double base_value(const PotentialProfile& p, double ax) {
    using K = PotentialProfile::Kind;
    switch (p.kind) {
    case K::woods_saxon: {
        const double t = (ax - p.radius) / p.diffuseness;
        // exp overflow past t ~ 700 only underflows the result to 0.
        return t > 700.0 ? 0.0 : p.depth / (1.0 + std::exp(t));
    }
    case K::harmonic: return 0.5 * p.k * ax * ax;
    case K::square_well: return ax < p.radius ? p.depth : 0.0;
    case K::constant: return 0.0;
    }
    return 0.0;
}

// d base / d|x|
double base_slope(const PotentialProfile& p, double ax) {
    using K = PotentialProfile::Kind;
    switch (p.kind) {
    case K::woods_saxon: {
        const double t = (ax - p.radius) / p.diffuseness;
        if (std::abs(t) > 350.0) return 0.0;
        const double e = std::exp(t);
        return -p.depth * e / (p.diffuseness * (1.0 + e) * (1.0 + e));
    }
    case K::harmonic: return p.k * ax;
    case K::square_well:
    case K::constant: return 0.0;
    }
    return 0.0;
}

} // namespace

double PotentialProfile::value(double x) const {
    const double b = base_value(*this, std::abs(x));
    if (modulation == 0.0) return offset + b;
    return offset + b * (1.0 + modulation * std::tanh(x));
}

double PotentialProfile::derivative(double x) const {
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double db = sign * base_slope(*this, std::abs(x));
    if (modulation == 0.0) return db;
    const double th = std::tanh(x);
    return db * (1.0 + modulation * th) +
           base_value(*this, std::abs(x)) * modulation * (1.0 - th * th);
}

double PotentialProfile::cell_average(double a, double b) const {
    if (b <= a) return value(a);
    double total = 0.0;
    double left = a;
    std::vector<double> cuts;
    for (double d : discontinuities()) {
        if (d > a && d < b) cuts.push_back(d);
        if (-d > a && -d < b) cuts.push_back(-d);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(b);
    for (double right : cuts) {
        total += (right - left) * value(0.5 * (left + right));
        left = right;
    }
    return total / (b - a);
}

double PotentialProfile::asymptote() const {
    switch (kind) {
    case Kind::harmonic:
        if (k == 0.0) return offset;
        return k > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    default: return offset;
    }
}

std::vector<double> PotentialProfile::discontinuities() const {
    if (kind == Kind::square_well && depth != 0.0) return {radius};
    return {};
}

PotentialProfile PotentialProfile::scaled(double a) const {
    PotentialProfile p = *this;
    p.depth *= a;
    p.k *= a;
    p.offset *= a;
    return p;
}

PotentialProfile PotentialProfile::with_offset(double c) const {
    PotentialProfile p = *this;
    p.offset = c;
    return p;
}

PotentialProfile PotentialProfile::with_modulation(double m) const {
    PotentialProfile p = *this;
    p.modulation = m;
    return p;
}

std::string to_string(PotentialProfile::Kind k) {
    using K = PotentialProfile::Kind;
    switch (k) {
    case K::woods_saxon: return "woods_saxon";
    case K::harmonic: return "harmonic";
    case K::square_well: return "square_well";
    case K::constant: return "constant";
    }
    return "?";
}

PotentialProfile combine(const PotentialProfile& a, double wa, const PotentialProfile& b,
                         double wb) {
    if (b.kind == PotentialProfile::Kind::constant)
        return a.scaled(wa).with_offset(wa * a.offset + wb * b.offset);
    if (a.kind == PotentialProfile::Kind::constant) return combine(b, wb, a, wa);
    const bool same = a.kind == b.kind && a.modulation == b.modulation &&
                      (a.kind == PotentialProfile::Kind::harmonic ||
                       (a.radius == b.radius &&
                        (a.kind != PotentialProfile::Kind::woods_saxon ||
                         a.diffuseness == b.diffuseness)));
    if (!same)
        throw InvalidCoupling("cannot combine " + a.describe() + " and " + b.describe() +
                              " into one profile");
    PotentialProfile out = a;
    out.depth = wa * a.depth + wb * b.depth;
    out.k = wa * a.k + wb * b.k;
    out.offset = wa * a.offset + wb * b.offset;
    if (out.depth == 0.0 && out.k == 0.0) return PotentialProfile::constant(out.offset);
    return out;
}

std::string PotentialProfile::describe() const {
    std::ostringstream os;
    os.precision(6);
    switch (kind) {
    case Kind::woods_saxon:
        os << "woods_saxon(" << depth << "," << radius << "," << diffuseness << ")";
        break;
    case Kind::harmonic: os << "harmonic(" << k << ")"; break;
    case Kind::square_well: os << "square_well(" << depth << "," << radius << ")"; break;
    case Kind::constant: os << "constant"; break;
    }
    if (offset != 0.0 || kind == Kind::constant) os << "+" << offset;
    if (modulation != 0.0) os << "*(1+" << modulation << "tanh)";
    return os.str();
}

void to_json(nlohmann::json& j, const PotentialProfile& p) {
    using K = PotentialProfile::Kind;
    j = nlohmann::json{{"kind", to_string(p.kind)}};
    switch (p.kind) {
    case K::woods_saxon:
        j["depth"] = p.depth;
        j["radius"] = p.radius;
        j["diffuseness"] = p.diffuseness;
        break;
    case K::harmonic: j["k"] = p.k; break;
    case K::square_well:
        j["depth"] = p.depth;
        j["radius"] = p.radius;
        break;
    case K::constant: break;
    }
    j["offset"] = p.offset;
    j["modulation"] = p.modulation;
}

void from_json(const nlohmann::json& j, PotentialProfile& p) {
    using K = PotentialProfile::Kind;
    if (!j.is_object()) throw ConfigError("potential profile must be an object");
    const std::string kind = j.value("kind", std::string{});
    auto num = [&](const char* key, double fallback) {
        if (!j.contains(key)) return fallback;
        if (!j.at(key).is_number()) throw ConfigError(std::string("profile field '") + key + "' must be a number");
        return j.at(key).get<double>();
    };
    auto need = [&](const char* key) {
        if (!j.contains(key)) throw ConfigError("profile '" + kind + "' needs field '" + key + "'");
        return num(key, 0.0);
    };
    if (kind == "woods_saxon") {
        const double a = need("diffuseness");
        if (!(a > 0.0)) throw ConfigError("woods_saxon diffuseness must be > 0");
        p = PotentialProfile::woods_saxon(need("depth"), need("radius"), a);
    } else if (kind == "harmonic") {
        p = PotentialProfile::harmonic(need("k"));
    } else if (kind == "square_well") {
        p = PotentialProfile::square_well(need("depth"), need("radius"));
    } else if (kind == "constant") {
        p = PotentialProfile{};
        p.kind = K::constant;
    } else {
        throw ConfigError("unknown profile kind '" + kind + "'");
    }
    p.offset = num("offset", p.offset);
    p.modulation = num("modulation", 0.0);
}

} // namespace diracsym
