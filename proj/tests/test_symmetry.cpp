#include "diracsym/errors.hpp"
#include "diracsym/symmetry.hpp"

#include "doctest.h"

#include <cmath>

using namespace diracsym;

namespace {

struct Cand {
    SpinorMatrix o;
    std::string label;
};

std::vector<Cand> candidates() {
    return {{gamma(0), "g0"}, {I_unit * gamma(0) * gamma5(), "i*g0g5"}};
}

} // namespace

TEST_CASE("projectors are exact") {
    for (const auto& c : candidates()) {
        const auto p = build_projectors(c.o);
        CHECK(max_abs(p.plus * p.plus - p.plus) == 0.0);
        CHECK(max_abs(p.minus * p.minus - p.minus) == 0.0);
        CHECK(max_abs(p.plus * p.minus) == 0.0);
        CHECK(max_abs(p.plus + p.minus - identity()) == 0.0);
    }
    CHECK_THROWS_AS(build_projectors(2.0 * gamma(0)), InvalidCoupling);
}

TEST_CASE("generators commute with H over the seeded sweep") {
    for (const auto& c : candidates())
        for (Branch b : {Branch::spin, Branch::pseudospin}) {
            CAPTURE(c.label);
            CAPTURE(to_string(b));
            for (const auto& ctx : random_contexts(42, 100, c.o, c.label, b)) {
                const auto rc = verify_commutation(ctx);
                CHECK(rc.residuals.commutator < 1e-12);
                const auto rs = verify_su2(ctx);
                CHECK(rs.residuals.su2 < 1e-12);
                CHECK(rs.residuals.s_algebra < 1e-12);
            }
        }
}

TEST_CASE("S_i squared is the identity and S_i is Hermitian") {
    for (const auto& c : candidates())
        for (const auto& ctx : random_contexts(7, 20, c.o, c.label, Branch::spin)) {
            const auto g = build_generators(ctx);
            for (const auto& s : g.components) {
                CHECK(max_abs(s * s - identity()) < 1e-12);
                CHECK(is_hermitian(s, 1e-13));
            }
        }
}

TEST_CASE("bare Sigma does not commute with H at finite momentum") {
    // guards against a residual that is blind to the kinetic term
    PlaneWaveContext ctx;
    ctx.p = {0.4, -0.3, 0.9};
    ctx.v_active = -1.3;
    ctx.c = 0.7;
    const SpinorMatrix h = build_hamiltonian(ctx);
    for (int i = 1; i <= 3; ++i) CHECK(max_abs(commutator(h, sigma(i))) > 1e-3);
}

TEST_CASE("finite rotations are unitary and leave H invariant") {
    for (const auto& c : candidates())
        for (Branch b : {Branch::spin, Branch::pseudospin})
            for (const auto& ctx : random_contexts(11, 10, c.o, c.label, b)) {
                const auto g = build_generators(ctx);
                const Vec3 eps{0.3, -1.1, 0.7};
                const SpinorMatrix u = finite_rotation(g, eps);
                CHECK(max_abs(u.adjoint() * u - identity()) < 1e-12);
                const SpinorMatrix h = build_hamiltonian(ctx);
                CHECK(max_abs(u * h * u.adjoint() - h) < 1e-12);
                // a full 4 pi turn about any axis is the identity
                const SpinorMatrix full = finite_rotation(g, {0.0, 0.0, 4.0 * M_PI});
                CHECK(max_abs(full - identity()) < 1e-12);
            }
}

TEST_CASE("plane-wave spectrum is the doubled dispersion") {
    for (const auto& c : candidates())
        for (Branch b : {Branch::spin, Branch::pseudospin})
            for (const auto& ctx : random_contexts(42, 100, c.o, c.label, b)) {
                const double p2 = dot(ctx.p, ctx.p);
                const double s = ctx.v_active + ctx.c;
                const double d = std::sqrt((ctx.v_active - ctx.c) * (ctx.v_active - ctx.c) + 4.0 * p2);
                const double lo = 0.5 * (s - d);
                const double hi = 0.5 * (s + d);
                const auto ev = hamiltonian_eigenvalues(ctx);
                CHECK(std::abs(ev[0] - lo) < 1e-10);
                CHECK(std::abs(ev[1] - lo) < 1e-10);
                CHECK(std::abs(ev[2] - hi) < 1e-10);
                CHECK(std::abs(ev[3] - hi) < 1e-10);
                CHECK(dispersion_residual(ctx) < 1e-10);
            }
}

TEST_CASE("zero momentum has no generators") {
    PlaneWaveContext ctx;
    ctx.p = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(build_generators(ctx), ZeroMomentum);
}

TEST_CASE("random contexts are reproducible") {
    const auto a = random_contexts(5, 10, gamma(0), "g0", Branch::spin);
    const auto b = random_contexts(5, 10, gamma(0), "g0", Branch::spin);
    const auto c = random_contexts(6, 10, gamma(0), "g0", Branch::spin);
    REQUIRE(a.size() == 10);
    bool differs = false;
    for (int i = 0; i < 10; ++i) {
        CHECK(a[i].p == b[i].p);
        CHECK(a[i].v_active == b[i].v_active);
        CHECK(norm(a[i].p) >= 1e-3);
        differs = differs || a[i].p != c[i].p;
    }
    CHECK(differs);
}
