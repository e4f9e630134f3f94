#pragma once

#include "diracsym/clifford.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace diracsym {

/// spin: V_- is the constant branch. pseudospin: V_+ is the constant branch.
enum class Branch { spin, pseudospin };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

struct Projectors {
    SpinorMatrix plus;
    SpinorMatrix minus;
};

/// P+- = (I +- O)/2. InvalidCoupling when O^2 != I.
Projectors build_projectors(const SpinorMatrix& o);

/// A plane wave of momentum p at a point where the active potential branch
/// takes the value v_active and the other branch is the constant c.
struct PlaneWaveContext {
    Vec3 p{0.0, 0.0, 1.0};
    double v_active = 0.0; // V_+ for spin, V_- for pseudospin
    double c = 0.0;        // C_- for spin, C_+ for pseudospin
    SpinorMatrix o = gamma(0);
    std::string o_label = "g0";
    Branch branch = Branch::spin;
};

/// alpha.p + V_+ P_+ + C_- P_- (spin) or alpha.p + V_- P_- + C_+ P_+ (pseudospin).
SpinorMatrix build_hamiltonian(const PlaneWaveContext& ctx);

struct GeneratorSet {
    std::array<SpinorMatrix, 3> components; // S_i
    std::array<SpinorMatrix, 3> s_matrices; // (alpha.p) Sigma_i (alpha.p) / p^2
};

/// S_- = Sigma P_+ + s P_- (spin), S_+ = Sigma P_- + s P_+ (pseudospin).
/// ZeroMomentum when p = 0.
GeneratorSet build_generators(const PlaneWaveContext& ctx);

struct SymmetryResiduals {
    double commutator = 0.0;     // max_i |[H, S_i]|
    double kinetic_term = 0.0;   // max_i |[alpha.p, S_i]|
    double active_term = 0.0;    // max_i |[V_active P, S_i]|
    double constant_term = 0.0;  // max_i |[C P, S_i]|
    double su2 = 0.0;            // max_ij |[S_i, S_j] - 2i eps_ijk S_k|
    double s_algebra = 0.0;      // same for the s_i alone
    double projector = 0.0;      // max of |P+^2 - P+|, |P-^2 - P-|, |P+ P-|, |P+ + P- - I|
};

struct SymmetryReport {
    std::string candidate;
    Branch branch = Branch::spin;
    Vec3 p{};
    double v = 0.0;
    double c = 0.0;
    SymmetryResiduals residuals;
    double tolerance = kEntryTol;
    bool pass = false;
};

void to_json(nlohmann::json& j, const SymmetryReport& r);

SymmetryReport verify_commutation(const PlaneWaveContext& ctx, double tol = kEntryTol);
SymmetryReport verify_su2(const PlaneWaveContext& ctx, double tol = kEntryTol);

/// Eigenvalues of the 4x4 plane-wave Hamiltonian in ascending order.
std::array<double, 4> hamiltonian_eigenvalues(const PlaneWaveContext& ctx);

/// Roots of (E - C)(E - V) = p^2 in ascending order.
std::array<double, 2> dispersion_roots(const PlaneWaveContext& ctx);

/// Max deviation of the sorted spectrum from the doubled dispersion roots.
double dispersion_residual(const PlaneWaveContext& ctx);

/// exp(eps.S / (2i)) built by diagonalising the Hermitian eps.S.
SpinorMatrix finite_rotation(const GeneratorSet& gens, const Vec3& epsilon);

/// Reproducible random contexts: momentum and potential values uniform in
/// [-range, range]; momenta shorter than 1e-3 are redrawn.
std::vector<PlaneWaveContext> random_contexts(std::uint64_t seed, int count,
                                              const SpinorMatrix& o, const std::string& o_label,
                                              Branch branch, double range = 2.0);

} // namespace diracsym
