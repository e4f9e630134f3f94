#pragma once

#include "diracsym/potential.hpp"
#include "diracsym/symmetry.hpp"

#include "json.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace diracsym {

/// Uniform mesh r_i = r_min + i h, i = 0..n-1, r_{n-1} = r_max.
struct RadialGrid {
    double r_min = 1e-6;
    double r_max = 20.0;
    int n = 4000;

    double h() const { return (r_max - r_min) / double(n - 1); }
    double r(int i) const { return r_min + double(i) * h(); }
    RadialGrid refined() const { return {r_min, r_max, 2 * n - 1}; }
};

struct EnergyWindow {
    double lo = 0.0;
    double hi = 0.0;
};

enum class ScenarioBranch { spin, pseudospin, broken };
std::string to_string(ScenarioBranch b);

/// Two-branch potential V = V_+ P_+ + V_- P_- with O = g0 (scalar plus vector).
/// spin: V_- = c. pseudospin: V_+ = c. broken: the constant branch of
/// `breaks` becomes c + breaking(r).
struct SymmetryScenario {
    ScenarioBranch branch = ScenarioBranch::spin;
    PotentialProfile v_active;
    double c = 0.0;
    std::optional<PotentialProfile> breaking;
    Branch breaks = Branch::spin;

    static SymmetryScenario spin(PotentialProfile v, double c);
    static SymmetryScenario pseudospin(PotentialProfile v, double c);
    /// The constant branch becomes c + amplitude * v.
    static SymmetryScenario broken(PotentialProfile v, double c, double amplitude,
                                   Branch breaks = Branch::spin);

    /// The branch that would be symmetric without the breaking term.
    Branch symmetry() const;
    PotentialProfile v_plus() const;
    PotentialProfile v_minus() const;
};

/// Right-hand sides of G' = -(k/r) G + (E - V_-) F, F' = (k/r) F - (E - V_+) G.
std::pair<double, double> radial_equations(const SymmetryScenario& s, int kappa, double energy,
                                           double r, double g, double f);

struct RadialSolution {
    double kappa = 0.0; // integer in 3D, half-integer for the planar reduction
    int nodes = 0;      // nodes of G
    int nodes_f = 0;    // nodes of F
    double energy = 0.0;
    RadialGrid grid;
    std::vector<double> g; // r * upper radial function
    std::vector<double> f; // r * lower radial function
    double matching_radius = 0.0;
};

struct ShootingOptions {
    int scan_points = 400;
    double energy_tol = 1e-12;
    /// Length L of the origin grading: substeps are about h r / (r + L).
    double origin_scale = 1.0;
};

/// Coupled first-order system with arbitrary V_+, V_- profiles and a real
/// angular label kappa. The planar (2D) reduction reuses it with half-integer kappa.
struct DiracRadialSystem {
    double kappa = -1.0;
    PotentialProfile v_plus;
    PotentialProfile v_minus;
};

/// Shooting eigen-solver. Each step propagates with the exact exponential of
/// the traceless 2x2 generator frozen at the step midpoint, which keeps the
/// Wronskian of the outward and inward solutions exactly conserved.
std::vector<RadialSolution> shoot_bound_states(const DiracRadialSystem& sys,
                                               const EnergyWindow& window,
                                               const RadialGrid& grid,
                                               const ShootingOptions& opt = {});

/// Normalised matching determinant at energy e; nullopt when e lies in the
/// continuum (classically allowed at large r). Exposed for diagnostics.
std::optional<double> matching_determinant(const DiracRadialSystem& sys, double e,
                                           const RadialGrid& grid,
                                           const ShootingOptions& opt = {});

std::vector<RadialSolution> solve_bound_states(const SymmetryScenario& s, int kappa,
                                               const EnergyWindow& window,
                                               const RadialGrid& grid = {},
                                               const ShootingOptions& opt = {});

double trapezoid_norm(const RadialSolution& sol);

/// Sign changes of v, ignoring entries below rel_floor * max |v|.
int count_nodes(const std::vector<double>& v, double rel_floor = 1e-9);

/// Max pointwise residual of the second-order equation obeyed by the
/// component that keeps the spin-orbit and Darwin terms (F for spin, G for
/// pseudospin), relative to the largest term at each point.
struct SecondOrderResidual {
    double max_relative = 0.0;
    int points_checked = 0;
    /// Radii where E - V changes sign; the residual is ill-conditioned around them.
    std::vector<double> crossing_radii;
    double max_spin_orbit = 0.0; // largest |V'/(E-V) * kappa F / r|
    double max_darwin = 0.0;     // largest |V'/(E-V) * F'|
};

/// SingularDenominator when |E - V| < 1e-8 at a grid point.
SecondOrderResidual residual_second_order(const RadialSolution& sol, const SymmetryScenario& s);

} // namespace diracsym
