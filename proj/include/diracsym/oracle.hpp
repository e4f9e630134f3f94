#pragma once

#include "diracsym/potential.hpp"
#include "diracsym/radial.hpp"

#include <optional>
#include <vector>

namespace diracsym {

/// Energy-dependent Schrodinger problem
///
///   -u'' + [centrifugal / r^2] u + (E - C) V u = (E - C) E u
///
/// discretized with a three-point Laplacian. Used as an independent check of
/// the first-order solvers on the exactly symmetric branches.
enum class OracleGeometry {
    line,   // z in [-L, L], hard walls at both ends
    planar, // rho in [0, L], cell-centred finite volumes on A(rho) = u / sqrt(rho)
    radial, // r in [0, L], nodes r_i = i h, u(0) = 0
};

struct OracleProblem {
    OracleGeometry geometry = OracleGeometry::radial;
    /// radial: l(l+1). planar: m^2 for the orbital factor exp(i m phi). line: unused.
    double centrifugal = 0.0;
    PotentialProfile v; // the non-constant branch
    double c = 0.0;     // the constant branch
    /// Outer boundary for radial and planar: hard wall, or the exact decaying
    /// ratio u(L + h) / u(L) of the frozen-potential tail (the default).
    bool hard_wall = false;
    double length = 20.0;
    /// radial and planar: unknowns at i = 1..n. line: interior points i = 1..n.
    int n = 4000;
    /// line only: zero-flux walls with the unknowns at cell centres
    /// z_i = -L + (i - 1/2) h, h = 2L / n.
    bool neumann = false;

    double h() const;
    double x(int i) const; // position of unknown i (1-based)
};

enum class OracleMethod {
    /// Bisection on E with Sturm counts of K(E) = T - (E - C)(E - V), which
    /// counts the levels below E when the i-th eigenvalue of K falls with E.
    sturm,
    /// Freeze E_k in the potential term, take the eigenvalue mu_n of the
    /// linear operator with n nodes and solve (E - C) E = mu_n for E_{k+1}.
    fixed_point,
};

struct OracleOptions {
    OracleMethod method = OracleMethod::sturm;
    double energy_tol = 1e-11;
    int max_iterations = 200;
    /// Combine grids n and 2n (same domain) as (4 E_{h/2} - E_h) / 3.
    bool richardson = false;
};

struct OracleLevel {
    double energy = 0.0;
    int nodes = 0;
};

/// Symmetric tridiagonal K(E) in the symmetrised unknowns; K(E) u = 0 at a level.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    std::vector<double> off; // size n - 1
};

TridiagonalOperator oracle_operator(const OracleProblem& p, double energy);

/// Number of negative eigenvalues of a symmetric tridiagonal matrix shifted by -shift.
int sturm_count(const TridiagonalOperator& t, double shift = 0.0);

/// Levels of the discrete problem in the window, sorted by nodes.
/// IterationDiverged when the fixed point does not contract or the level
/// count is not monotone in E.
std::vector<OracleLevel> oracle_levels(const OracleProblem& p, const EnergyWindow& window,
                                       const OracleOptions& opt = {});

/// The oracle for an exact-symmetry 3D scenario: u = G with l(l+1) = k(k+1)
/// for spin, u = F with k(k-1) for pseudospin. Uses r_max and n of the grid and
/// Richardson extrapolation unless options say otherwise.
std::vector<OracleLevel> schrodinger_oracle(const SymmetryScenario& s, int kappa,
                                            const EnergyWindow& window,
                                            const RadialGrid& grid = {},
                                            std::optional<OracleOptions> opt = std::nullopt);

/// Window clipped to the energies that are bound asymptotically, C < E < V(inf)
/// or V(inf) < E < C.
EnergyWindow bound_window(const OracleProblem& p, const EnergyWindow& window);

} // namespace diracsym
