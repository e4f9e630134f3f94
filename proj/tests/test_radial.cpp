#include "diracsym/errors.hpp"
#include "diracsym/radial.hpp"

#include "doctest.h"

#include <cmath>
#include <map>

using namespace diracsym;

namespace {

// Spin branch with V_+ = k r^2 / 2 and V_- = C = 0: G obeys
//   -G'' + l(l+1)/r^2 G + E (k/2) r^2 G = E^2 G,
// a 3D oscillator with omega^2 = E k / 2, so E^2 = 2 omega (2n + l + 3/2) and
// E = (sqrt(2k) (2n + l + 3/2))^(2/3).
double ho_energy(double k, int n, int l) {
    return std::pow(std::sqrt(2.0 * k) * (2.0 * n + l + 1.5), 2.0 / 3.0);
}

int spin_l(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }

const PotentialProfile kWS = PotentialProfile::woods_saxon(-60.0, 4.0, 0.6);

} // namespace

TEST_CASE("oscillator spin branch against the closed form") {
    const auto s = SymmetryScenario::spin(PotentialProfile::harmonic(1.0), 0.0);
    const RadialGrid grid{1e-6, 8.0, 8000};
    for (int kappa : {-1, 1, -2, 2}) {
        CAPTURE(kappa);
        const auto sols = solve_bound_states(s, kappa, {0.5, 4.0}, grid);
        REQUIRE(sols.size() >= 1);
        for (const auto& sol : sols) {
            const double e = ho_energy(1.0, sol.nodes, spin_l(kappa));
            CHECK(std::abs(sol.energy - e) / e < 1e-6);
        }
    }
}

TEST_CASE("oscillator doublets are degenerate") {
    const auto s = SymmetryScenario::spin(PotentialProfile::harmonic(1.0), 0.0);
    const RadialGrid grid{1e-6, 8.0, 8000};
    const auto a = solve_bound_states(s, 1, {0.5, 4.0}, grid);
    const auto b = solve_bound_states(s, -2, {0.5, 4.0}, grid);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].nodes == b[i].nodes);
        CHECK(std::abs(a[i].energy - b[i].energy) < 1e-8);
    }
}

TEST_CASE("Woods-Saxon spin doublets and breaking") {
    const RadialGrid grid{1e-6, 20.0, 16000};
    const EnergyWindow w{-1.999, -0.001};
    const auto exact = SymmetryScenario::spin(kWS, -2.0);
    const auto a = solve_bound_states(exact, 1, w, grid);
    const auto b = solve_bound_states(exact, -2, w, grid);
    std::map<int, double> eb;
    for (const auto& s : b) eb[s.nodes] = s.energy;
    int pairs = 0;
    for (const auto& s : a)
        if (eb.count(s.nodes)) {
            CHECK(std::abs(s.energy - eb[s.nodes]) < 1e-8);
            ++pairs;
        }
    CHECK(pairs >= 3);

    const auto broken = SymmetryScenario::broken(kWS, -2.0, 0.1);
    CHECK(broken.symmetry() == Branch::spin);
    const auto ba = solve_bound_states(broken, 1, w, grid);
    const auto bb = solve_bound_states(broken, -2, w, grid);
    std::map<int, double> ebb;
    for (const auto& s : bb) ebb[s.nodes] = s.energy;
    pairs = 0;
    for (const auto& s : ba)
        if (ebb.count(s.nodes)) {
            CHECK(std::abs(s.energy - ebb[s.nodes]) > 1e-3);
            ++pairs;
        }
    CHECK(pairs >= 1);
}

TEST_CASE("pseudospin doublets") {
    const RadialGrid grid{1e-6, 20.0, 16000};
    const auto s = SymmetryScenario::pseudospin(kWS, -2.0);
    const EnergyWindow w{-1.999, -0.001};
    const auto a = solve_bound_states(s, -1, w, grid);
    const auto b = solve_bound_states(s, 2, w, grid);
    std::map<int, double> fb;
    for (const auto& x : b) fb[x.nodes_f] = x.energy;
    int pairs = 0;
    for (const auto& x : a)
        if (fb.count(x.nodes_f)) {
            CHECK(std::abs(x.energy - fb[x.nodes_f]) < 1e-8);
            ++pairs;
        }
    CHECK(pairs >= 1);
}

TEST_CASE("solutions are normalised and node counts grow with energy") {
    const auto s = SymmetryScenario::spin(kWS, -2.0);
    const auto sols = solve_bound_states(s, -1, {-1.999, -0.001}, {1e-6, 20.0, 8000});
    REQUIRE(sols.size() >= 2);
    for (std::size_t i = 0; i < sols.size(); ++i) {
        CHECK(trapezoid_norm(sols[i]) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(static_cast<int>(sols[i].nodes) == static_cast<int>(i) + sols[0].nodes);
        if (i > 0) CHECK(sols[i].energy > sols[i - 1].energy);
    }
}

TEST_CASE("second-order reduction of the small component") {
    const auto s = SymmetryScenario::spin(kWS, -2.0);
    const auto sols = solve_bound_states(s, -1, {-1.999, -0.001}, {1e-6, 20.0, 8000});
    const auto r = residual_second_order(sols.front(), s);
    CHECK(r.points_checked > 100);
    CHECK(r.max_relative < 1e-3);
    CHECK(r.max_spin_orbit > 0.0);
    CHECK(r.max_darwin > 0.0);
    CHECK_THROWS_AS(residual_second_order(sols.front(), SymmetryScenario::broken(kWS, -2.0, 0.1)),
                    std::invalid_argument);
}

TEST_CASE("radial equations match the coupled system") {
    const auto s = SymmetryScenario::spin(kWS, -2.0);
    const double e = -1.0, r = 3.0, g = 0.4, f = -0.2;
    const auto [dg, df] = radial_equations(s, -2, e, r, g, f);
    CHECK(dg == doctest::Approx(2.0 / r * g + (e + 2.0) * f));
    CHECK(df == doctest::Approx(-2.0 / r * f - (e - kWS.value(r)) * g));
}

TEST_CASE("errors") {
    const auto s = SymmetryScenario::spin(kWS, -2.0);
    CHECK_THROWS_AS(solve_bound_states(s, 0, {-1.9, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(solve_bound_states(s, -1, {-0.1, -0.2}), NoStateFound);
    // deep levels lie far below this narrow slice
    CHECK_THROWS_AS(solve_bound_states(s, -1, {-1.999, -1.998}), NoStateFound);
    // r_max inside the well: E is classically allowed at r_max
    CHECK_THROWS_AS(solve_bound_states(s, -1, {-1.9, -0.1}, {1e-6, 3.0, 4000}),
                    TurningPointOutsideGrid);
    DiracRadialSystem sys{-1.0, kWS, PotentialProfile::constant(-2.0)};
    CHECK_FALSE(matching_determinant(sys, 0.5, {1e-6, 20.0, 4000}).has_value());
    CHECK(matching_determinant(sys, -1.0, {1e-6, 20.0, 4000}).has_value());
}

TEST_CASE("node counting ignores the floor") {
    CHECK(count_nodes({1.0, 0.5, -0.5, -1.0, 1.0}) == 2);
    CHECK(count_nodes({1.0, 1e-12, -1e-12, 1.0}) == 0);
    CHECK(count_nodes({0.0, 0.0}) == 0);
}
