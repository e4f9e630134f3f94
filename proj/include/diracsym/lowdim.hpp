#pragma once

#include "diracsym/clifford.hpp"
#include "diracsym/oracle.hpp"
#include "diracsym/potential.hpp"
#include "diracsym/radial.hpp"

#include "json.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace diracsym {

/// plus: V_- = C (spin-like, the O = +1 branch carries the potential).
/// minus: V_+ = C (pseudospin-like). broken: plus with a symmetry-breaking term.
enum class Relation { plus, minus, broken };
std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

// ---------------------------------------------------------------- 1D tensor case

/// z in [-L, L] with hard walls at both ends. Upper components live on the
/// integer points z_i = -L + i h (i = 1..n), lower components on the half
/// points z_{i+1/2} (i = 0..n), h = 2L / (n + 1).
struct AxialGrid {
    double length = 10.0;
    /// n + 1 a multiple of 20 puts z = +-1 on integer points for L = 10, and
    /// keeps them there under n -> 2n + 1.
    int n = 3999;

    double h() const { return 2.0 * length / double(n + 1); }
    double z(int i) const { return -length + double(i) * h(); }
    double half(int i) const { return -length + (double(i) + 0.5) * h(); }
};

/// H1 = alpha_3 p_z + i beta alpha_3 V_t + V_1v, O = i beta alpha_3, so that
/// V_+ = V_1v + V_t and V_- = V_1v - V_t.
struct Axial1DProblem {
    PotentialProfile v_t;
    PotentialProfile v_1v;
    Relation relation = Relation::plus;
    double c = 0.0;
    double breaking = 0.0; // tanh modulation amplitude for relation = broken
    AxialGrid grid;

    /// V_t = V_1v - C, so V_- = C.
    static Axial1DProblem plus(PotentialProfile v_1v, double c, AxialGrid grid = {});
    /// V_t = C - V_1v, so V_+ = C.
    static Axial1DProblem minus(PotentialProfile v_1v, double c, AxialGrid grid = {});
    /// V_t = V_1v (1 + a tanh z) - C.
    static Axial1DProblem broken(PotentialProfile v_1v, double c, double amplitude,
                                 AxialGrid grid = {});

    double v_plus(double z) const { return v_1v.value(z) + v_t.value(z); }
    double v_minus(double z) const { return v_1v.value(z) - v_t.value(z); }

    /// InvalidCoupling when an exact relation does not hold on the grid.
    void validate() const;
};

enum class Stencil1D {
    staggered,  // upper on integer points, lower on half points
    collocated, // both on integer points with a centred difference (doubles)
};

struct Options1D {
    Stencil1D stencil = Stencil1D::staggered;
    /// Normalised total variation sum |d phi| / sum |phi| above which a state
    /// counts as a grid-scale (doubled) mode.
    double doubling_threshold = 1.0;
};

struct State1D {
    double energy = 0.0;
    int nodes = 0;    // nodes of the Schrodinger-like projected component
    int channel = 1;  // Sigma_3 eigenvalue
    std::vector<double> upper; // phi_+ at z_1..z_n
    std::vector<double> lower; // phi_- at the half points (staggered) or z_1..z_n (collocated)
    std::vector<Spinor> spinor; // psi(z_i), lower component averaged onto integer points
    double doubling_index = 0.0;
};

/// Interleaved real symmetric band of one channel,
/// order phi_-(1/2), phi_+(1), phi_-(3/2), ..., phi_+(n), phi_-(n+1/2).
struct Assembled1D {
    std::vector<double> diagonal;
    std::vector<double> upper; // A(k, k+1)
    std::vector<double> lower; // A(k+1, k)
};

Assembled1D assemble_1d(const Axial1DProblem& p);

/// max |A - A^T| entry.
double hermiticity_residual(const Assembled1D& a);

/// The Sigma_3 channel basis: columns v_+(s), v_-(s) for s = +1, -1 with
/// v_+ in the O = +1 eigenspace and v_- = i alpha_3 v_+.
SpinorMatrix channel_basis();

/// Largest entry coupling the two Sigma_3 channels in U^dagger X U for
/// X in {alpha_3, i beta alpha_3, I}; the discrete H1 is built from these blocks.
double channel_coupling_residual();

/// sum |phi_{i+1} - phi_i| / sum |phi_i|.
double doubling_index(const std::vector<double>& phi);

/// Bound states in the window, both Sigma_3 channels, sorted by (energy, channel).
/// DoublingDetected if a state in the window oscillates on the grid scale;
/// NoStateFound if the window holds none.
std::vector<State1D> solve_1d(const Axial1DProblem& p, const EnergyWindow& window,
                              const Options1D& opt = {});

/// The matching line oracle: Dirichlet on the integer points for plus,
/// Neumann on the half points for minus. The oracle of the unbroken problem
/// for relation = broken.
OracleProblem oracle_problem_1d(const Axial1DProblem& p);

/// Periodic staggered grid with V_t = m, V_1v = 0: largest deviation of the
/// lowest `modes` positive energies from sqrt(m^2 + k^2).
double free_dispersion_error_1d(double m, double length, int n, int modes);

/// Residual of {beta alpha_3, alpha . p} on eigenstates extended over a
/// transverse (x) slab as psi(z) f(x); p_x by centred differences.
struct AnticommutatorCheck {
    double max_residual = 0.0;
    int states = 0;
};

AnticommutatorCheck anticommutator_residual_1d(
    const std::vector<State1D>& states, const AxialGrid& grid,
    const std::function<double(double)>& transverse = [](double) { return 1.0; });

// ---------------------------------------------------------------- 2D planar case

/// H2 = alpha_1 p_1 + alpha_2 p_2 + alpha_3 V_z + V_2v with O = alpha_3:
/// V_+ = V_2v + V_z, V_- = V_2v - V_z. gamma_5 commutes with H2 and labels
/// the chirality; J_3 = L_3 + Sigma_3 / 2 gives the half-integer m_j.
struct Planar2DProblem {
    PotentialProfile v_z;
    PotentialProfile v_2v;
    Relation relation = Relation::plus;
    double c = -1.0;
    double breaking = 0.0; // V_- = C + a V_2v for relation = broken
    double m_j = 0.5;
    int chirality = 1;
    RadialGrid grid{1e-6, 20.0, 8000};

    /// V_z = V_2v - C, so V_- = C.
    static Planar2DProblem plus(PotentialProfile v_2v, double c, double m_j);
    /// V_z = C - V_2v, so V_+ = C.
    static Planar2DProblem minus(PotentialProfile v_2v, double c, double m_j);
    /// V_+ as for plus, V_- = C + a V_2v.
    static Planar2DProblem broken(PotentialProfile v_2v, double c, double amplitude, double m_j);

    PotentialProfile v_plus() const;
    PotentialProfile v_minus() const;
    /// kappa of the equivalent radial system: -m_j for chirality +1, +m_j for -1.
    double kappa() const;
    void validate() const;
};

struct State2D {
    double energy = 0.0;
    int nodes = 0; // nodes of the Schrodinger-like component
    double m_j = 0.5;
    int chirality = 1;
    RadialSolution radial; // G = sqrt(rho) x upper radial amplitude, F likewise
};

/// NoStateFound, TurningPointOutsideGrid as for the radial solver.
std::vector<State2D> solve_2d_radial(const Planar2DProblem& p, const EnergyWindow& window,
                                     const ShootingOptions& opt = {});

/// Planar oracle of an exact-relation problem (finite volumes on the
/// Schrodinger-like amplitude, orbital index |kappa +- 1/2|).
OracleProblem oracle_problem_2d(const Planar2DProblem& p);

/// psi(rho, phi) at grid point i.
Spinor planar_spinor(const State2D& s, int i, double phi);

struct PlanarResiduals {
    double dirac = 0.0;    // max |H2 psi - E psi| / max |E psi|, radial derivatives by differences
    double sigma3 = 0.0;   // max |[H2, Sigma_3] psi| / max |psi|
    double generator = 0.0; // same for S_3 = Sigma_3 P_+ + s_3 P_- = gamma_5 at p_3 = 0
    double p3 = 0.0;       // |p_3 psi|, zero by construction
    int points = 0;
};

PlanarResiduals planar_residuals(const Planar2DProblem& p, const State2D& s, int angles = 8);

// ---------------------------------------------------------------- reports

struct LowdimSymmetryReport {
    std::string problem; // "1d" or "2d"
    Relation relation = Relation::plus;
    int states = 0;
    double anticommutator = 0.0; // 1D
    double sigma3_commutator = 0.0; // 2D, literal [H2, Sigma_3]
    double generator_commutator = 0.0; // 2D, [H2, S_3]
    double p3 = 0.0; // 2D
    double dirac = 0.0; // 2D
    double tolerance = 0.0;
    bool pass = false;
};

void to_json(nlohmann::json& j, const LowdimSymmetryReport& r);

LowdimSymmetryReport check_weak_symmetry_residuals(const Axial1DProblem& p,
                                                   const EnergyWindow& window);
LowdimSymmetryReport check_weak_symmetry_residuals(const Planar2DProblem& p,
                                                   const EnergyWindow& window);

} // namespace diracsym
