#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace diracsym {

/// A scalar profile of one coordinate (r, rho or z), natural units.
///
///   value(x) = offset + base(|x|) * (1 + modulation * tanh(x))
///
/// where base is one of
///   woods_saxon: depth / (1 + exp((|x| - radius) / diffuseness))
///   harmonic:    k x^2 / 2
///   square_well: depth for |x| < radius, 0 outside
///   constant:    0 (the constant lives in offset)
struct PotentialProfile {
    enum class Kind { woods_saxon, harmonic, square_well, constant };

    Kind kind = Kind::constant;
    double depth = 0.0;
    double radius = 0.0;
    double diffuseness = 1.0;
    double k = 0.0;
    double offset = 0.0;
    double modulation = 0.0;

    static PotentialProfile woods_saxon(double depth, double radius, double diffuseness);
    static PotentialProfile harmonic(double k);
    static PotentialProfile square_well(double depth, double radius);
    static PotentialProfile constant(double c);

    double value(double x) const;
    double derivative(double x) const;
    /// Mean over [a, b]; exact for piecewise constant profiles, midpoint rule otherwise.
    double cell_average(double a, double b) const;
    /// Limit as x -> +infinity; +inf for unbounded profiles.
    double asymptote() const;
    /// Positions of jumps on x >= 0.
    std::vector<double> discontinuities() const;
    bool is_constant() const { return kind == Kind::constant && modulation == 0.0; }

    /// This profile multiplied by a (offset included).
    PotentialProfile scaled(double a) const;
    PotentialProfile with_offset(double c) const;
    PotentialProfile with_modulation(double m) const;

    std::string describe() const;
};

std::string to_string(PotentialProfile::Kind k);

/// wa * a + wb * b as a single profile. Representable when one side is an
/// unmodulated constant, or both share kind, radius, diffuseness and modulation;
/// InvalidCoupling otherwise.
PotentialProfile combine(const PotentialProfile& a, double wa, const PotentialProfile& b, double wb);

void to_json(nlohmann::json& j, const PotentialProfile& p);
void from_json(const nlohmann::json& j, PotentialProfile& p);

} // namespace diracsym
