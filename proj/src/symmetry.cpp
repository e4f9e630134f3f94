#include "diracsym/symmetry.hpp"

#include "diracsym/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace diracsym {

std::string to_string(Branch b) { return b == Branch::spin ? "spin" : "pseudospin"; }

Branch branch_from_string(const std::string& s) {
    if (s == "spin") return Branch::spin;
    if (s == "pseudospin") return Branch::pseudospin;
    throw std::invalid_argument("unknown branch '" + s + "'");
}

Projectors build_projectors(const SpinorMatrix& o) {
    const double inv = max_abs(o * o - identity());
    if (inv > kEntryTol)
        throw InvalidCoupling("O^2 != I (max entry deviation " + std::to_string(inv) + ")");
    return {(identity() + o) / 2.0, (identity() - o) / 2.0};
}

SpinorMatrix build_hamiltonian(const PlaneWaveContext& ctx) {
    const auto proj = build_projectors(ctx.o);
    const SpinorMatrix kinetic = alpha_dot(ctx.p);
    if (ctx.branch == Branch::spin) return kinetic + ctx.v_active * proj.plus + ctx.c * proj.minus;
    return kinetic + ctx.v_active * proj.minus + ctx.c * proj.plus;
}

GeneratorSet build_generators(const PlaneWaveContext& ctx) {
    const double p2 = dot(ctx.p, ctx.p);
    if (!(p2 > 0.0)) throw ZeroMomentum("generators s_i need |p| > 0");
    const auto proj = build_projectors(ctx.o);
    const SpinorMatrix ap = alpha_dot(ctx.p);
    // The Sigma part acts on the Schroedinger-like projection, s on the other.
    const SpinorMatrix& on_sigma = ctx.branch == Branch::spin ? proj.plus : proj.minus;
    const SpinorMatrix& on_s = ctx.branch == Branch::spin ? proj.minus : proj.plus;

    GeneratorSet g;
    for (int i = 0; i < 3; ++i) {
        g.s_matrices[i] = ap * sigma(i + 1) * ap / p2;
        g.components[i] = sigma(i + 1) * on_sigma + g.s_matrices[i] * on_s;
    }
    return g;
}

namespace {

double projector_residual(const Projectors& pr) {
    return std::max({max_abs(pr.plus * pr.plus - pr.plus), max_abs(pr.minus * pr.minus - pr.minus),
                     max_abs(pr.plus * pr.minus), max_abs(pr.minus * pr.plus),
                     max_abs(pr.plus + pr.minus - identity())});
}

double algebra_residual(const std::array<SpinorMatrix, 3>& m) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SpinorMatrix expected = SpinorMatrix::Zero();
            for (int k = 0; k < 3; ++k) {
                // Levi-Civita for 0-based indices.
                const int eps = (i - j) * (j - k) * (k - i) / 2;
                if (eps != 0) expected += 2.0 * I_unit * double(eps) * m[k];
            }
            worst = std::max(worst, max_abs(commutator(m[i], m[j]) - expected));
        }
    return worst;
}

SymmetryReport base_report(const PlaneWaveContext& ctx, double tol) {
    SymmetryReport r;
    r.candidate = ctx.o_label;
    r.branch = ctx.branch;
    r.p = ctx.p;
    r.v = ctx.v_active;
    r.c = ctx.c;
    r.tolerance = tol;
    r.residuals.projector = projector_residual(build_projectors(ctx.o));
    return r;
}

} // namespace

SymmetryReport verify_commutation(const PlaneWaveContext& ctx, double tol) {
    SymmetryReport r = base_report(ctx, tol);
    const auto proj = build_projectors(ctx.o);
    const auto gens = build_generators(ctx);
    const SpinorMatrix h = build_hamiltonian(ctx);
    const SpinorMatrix kinetic = alpha_dot(ctx.p);
    const SpinorMatrix active =
        ctx.v_active * (ctx.branch == Branch::spin ? proj.plus : proj.minus);
    const SpinorMatrix constant = ctx.c * (ctx.branch == Branch::spin ? proj.minus : proj.plus);

    auto& res = r.residuals;
    for (const auto& s : gens.components) {
        res.commutator = std::max(res.commutator, max_abs(commutator(h, s)));
        res.kinetic_term = std::max(res.kinetic_term, max_abs(commutator(kinetic, s)));
        res.active_term = std::max(res.active_term, max_abs(commutator(active, s)));
        res.constant_term = std::max(res.constant_term, max_abs(commutator(constant, s)));
    }
    r.pass = res.commutator <= tol && res.kinetic_term <= tol && res.active_term <= tol &&
             res.constant_term <= tol && res.projector <= tol;
    return r;
}

SymmetryReport verify_su2(const PlaneWaveContext& ctx, double tol) {
    SymmetryReport r = base_report(ctx, tol);
    const auto gens = build_generators(ctx);
    r.residuals.su2 = algebra_residual(gens.components);
    r.residuals.s_algebra = algebra_residual(gens.s_matrices);
    r.pass = r.residuals.su2 <= tol && r.residuals.s_algebra <= tol && r.residuals.projector <= tol;
    return r;
}

void to_json(nlohmann::json& j, const SymmetryReport& r) {
    j = nlohmann::json{
        {"candidate", r.candidate},
        {"branch", to_string(r.branch)},
        {"p", r.p},
        {"V", r.v},
        {"C", r.c},
        {"residuals",
         {{"commutator", r.residuals.commutator},
          {"commutator_terms",
           {{"kinetic", r.residuals.kinetic_term},
            {"active", r.residuals.active_term},
            {"constant", r.residuals.constant_term}}},
          {"su2", r.residuals.su2},
          {"s_algebra", r.residuals.s_algebra},
          {"projector", r.residuals.projector}}},
        {"tolerance", r.tolerance},
        {"pass", r.pass},
    };
}

std::array<double, 4> hamiltonian_eigenvalues(const PlaneWaveContext& ctx) {
    Eigen::SelfAdjointEigenSolver<SpinorMatrix> es(build_hamiltonian(ctx), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return {ev(0), ev(1), ev(2), ev(3)};
}

std::array<double, 2> dispersion_roots(const PlaneWaveContext& ctx) {
    // E^2 - (C + V) E + C V - p^2 = 0; the discriminant (C - V)^2 + 4 p^2 >= 0.
    const double sum = ctx.c + ctx.v_active;
    const double disc = std::sqrt((ctx.c - ctx.v_active) * (ctx.c - ctx.v_active) +
                                  4.0 * dot(ctx.p, ctx.p));
    return {(sum - disc) / 2.0, (sum + disc) / 2.0};
}

double dispersion_residual(const PlaneWaveContext& ctx) {
    const auto ev = hamiltonian_eigenvalues(ctx);
    const auto roots = dispersion_roots(ctx);
    return std::max({std::abs(ev[0] - roots[0]), std::abs(ev[1] - roots[0]),
                     std::abs(ev[2] - roots[1]), std::abs(ev[3] - roots[1])});
}

SpinorMatrix finite_rotation(const GeneratorSet& gens, const Vec3& epsilon) {
    SpinorMatrix es = epsilon[0] * gens.components[0] + epsilon[1] * gens.components[1] +
                      epsilon[2] * gens.components[2];
    es = (es + es.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<SpinorMatrix> solver(es);
    const Eigen::Vector4cd phases =
        (solver.eigenvalues().cast<cplx>() / (2.0 * I_unit)).array().exp();
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

std::vector<PlaneWaveContext> random_contexts(std::uint64_t seed, int count,
                                              const SpinorMatrix& o, const std::string& o_label,
                                              Branch branch, double range) {
    // mt19937_64 output is fixed by the standard; the [0,1) mapping is done
    // by hand so results do not depend on the library's distributions.
    std::mt19937_64 rng(seed);
    auto uniform = [&] {
        const double u = double(rng() >> 11) * 0x1.0p-53;
        return range * (2.0 * u - 1.0);
    };
    std::vector<PlaneWaveContext> out;
    out.reserve(count);
    while (int(out.size()) < count) {
        PlaneWaveContext ctx;
        ctx.p = {uniform(), uniform(), uniform()};
        ctx.v_active = uniform();
        ctx.c = uniform();
        if (norm(ctx.p) < 1e-3) continue;
        ctx.o = o;
        ctx.o_label = o_label;
        ctx.branch = branch;
        out.push_back(ctx);
    }
    return out;
}

} // namespace diracsym
