// Acceptance checks 1-9. `acceptance N` runs one criterion and prints a single
// PASS/FAIL line followed by indented detail; the exit code is 0 on PASS.
// Reference values come from oracles written here, not from the library.

#include "diracsym/config.hpp"
#include "diracsym/errors.hpp"
#include "diracsym/lowdim.hpp"
#include "diracsym/radial.hpp"
#include "diracsym/spectrum.hpp"
#include "diracsym/symmetry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace diracsym;
namespace fs = std::filesystem;

namespace {

// ------------------------------------------------------------ reporting

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    }
    void info(const std::string& what) { notes.push_back("info " + what); }
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string sci(double x) { return fmt("%.3e", x); }

class Clock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

// ------------------------------------------------------------ reference matrices

using M2 = Eigen::Matrix2cd;
using M4 = Eigen::Matrix4cd;
const std::complex<double> kI{0.0, 1.0};

M2 pauli(int i) {
    M2 s;
    if (i == 1) s << 0, 1, 1, 0;
    if (i == 2) s << 0, -kI, kI, 0;
    if (i == 3) s << 1, 0, 0, -1;
    return s;
}

M4 blocks(const M2& a, const M2& b, const M2& c, const M2& d) {
    M4 m;
    m << a, b, c, d;
    return m;
}

M4 ref_gamma0() { return blocks(M2::Identity(), M2::Zero(), M2::Zero(), -M2::Identity()); }
M4 ref_gamma(int i) { return blocks(M2::Zero(), pauli(i), -pauli(i), M2::Zero()); }
M4 ref_gamma5() { return kI * ref_gamma0() * ref_gamma(1) * ref_gamma(2) * ref_gamma(3); }
M4 ref_alpha(int i) { return ref_gamma0() * ref_gamma(i); }
M4 ref_sigma(int i) { return blocks(pauli(i), M2::Zero(), M2::Zero(), pauli(i)); }

double maxabs(const M4& m) { return m.cwiseAbs().maxCoeff(); }

M4 adot(const Vec3& a) {
    return a[0] * ref_alpha(1) + a[1] * ref_alpha(2) + a[2] * ref_alpha(3);
}

// ------------------------------------------------------------ 3D oracle

// -u'' + [l(l+1)/r^2 + (E - C)(V - E)] u = 0 by Numerov on [0, L], u(0) = 0,
// matched at L to the decaying sqrt(r) K_{l+1/2}(lam r) of the frozen tail.
struct NumerovRadial {
    std::function<double(double)> v;
    double c = 0.0;
    int l = 0;
    double length = 20.0;
    int steps = 40000;

    double g(double r, double e) const {
        return l * (l + 1.0) / (r * r) + (e - c) * (v(r) - e);
    }

    // mismatch and node count
    std::pair<double, int> shoot(double e) const {
        const double h = length / steps;
        const double w = h * h / 12.0;
        // (1 - w g) u at r = 0: only l = 1 leaves a finite limit, -w l(l+1) r^{l-1} u / r^{l+1}.
        double y_prev = l == 1 ? -w * 2.0 : 0.0;
        double u_prev = 0.0;
        double u = std::pow(h, l + 1);
        double y = (1.0 - w * g(h, e)) * u;
        int nodes = 0;
        double peak = std::abs(u);
        std::vector<double> tail;
        std::vector<double> us;
        us.reserve(steps + 1);
        us.push_back(0.0);
        us.push_back(u);
        for (int i = 1; i < steps; ++i) {
            const double r = i * h;
            const double y_next = 2.0 * y - y_prev + h * h * g(r, e) * u;
            const double u_next = y_next / (1.0 - w * g(r + h, e));
            y_prev = y;
            y = y_next;
            u_prev = u;
            u = u_next;
            us.push_back(u);
            if (std::abs(u) > 1e150) {
                for (auto& x : us) x *= 1e-150;
                y *= 1e-150;
                y_prev *= 1e-150;
                u *= 1e-150;
                u_prev *= 1e-150;
            }
        }
        for (double x : us) peak = std::max(peak, std::abs(x));
        double last = 0.0;
        for (double x : us) {
            if (std::abs(x) < 1e-9 * peak) continue;
            if (last != 0.0 && (x > 0.0) != (last > 0.0)) ++nodes;
            last = x;
        }
        const double lam = std::sqrt((e - c) * (v(length) - e));
        const double nu = l + 0.5;
        const double ratio = std::sqrt(length / (length - h)) * std::cyl_bessel_k(nu, lam * length) /
                             std::cyl_bessel_k(nu, lam * (length - h));
        const double scale = std::max(std::abs(u), std::abs(u_prev));
        return {(u - ratio * u_prev) / scale, nodes};
    }
};

struct Level {
    double energy;
    int nodes;
};

// Roots of a continuous mismatch in [lo, hi] by scan and bisection.
std::vector<Level> scan_roots(const std::function<std::pair<double, int>(double)>& f, double lo,
                              double hi, int points) {
    std::vector<Level> out;
    double a = lo;
    double fa = f(a).first;
    for (int k = 1; k < points; ++k) {
        const double b = lo + (hi - lo) * k / (points - 1);
        const double fb = f(b).first;
        if (std::isfinite(fa) && std::isfinite(fb) && (fa > 0.0) != (fb > 0.0)) {
            double x = a, y = b, fx = fa;
            for (int it = 0; it < 200 && y - x > 1e-14 * std::max(1.0, std::abs(x)); ++it) {
                const double m = 0.5 * (x + y);
                const double fm = f(m).first;
                if ((fm > 0.0) == (fx > 0.0)) {
                    x = m;
                    fx = fm;
                } else {
                    y = m;
                }
            }
            const double root = 0.5 * (x + y);
            out.push_back({root, f(root).second});
        }
        a = b;
        fa = fb;
    }
    return out;
}

std::map<int, double> radial_oracle(const PotentialProfile& v, double c, int l, double lo, double hi) {
    NumerovRadial o;
    o.v = [&v](double r) { return v.value(r); };
    o.c = c;
    o.l = l;
    std::map<int, double> m;
    for (const auto& lv : scan_roots([&](double e) { return o.shoot(e); }, lo, hi, 1200))
        m[lv.nodes] = lv.energy;
    return m;
}

// ------------------------------------------------------------ 2D oracle

// Square well of radius R: A = J_m(k rho) inside with k^2 = (E - C)(E - V_in),
// K_m(lam rho) outside with lam^2 = (E - C)(V_out - E); A and A' continuous.
std::pair<double, int> planar_mismatch(double e, double c, double v_in, double v_out, double radius,
                                       int m) {
    const double k2 = (e - c) * (e - v_in);
    const double l2 = (e - c) * (v_out - e);
    if (!(k2 > 0.0) || !(l2 > 0.0)) return {std::nan(""), 0};
    const double k = std::sqrt(k2);
    const double lam = std::sqrt(l2);
    const double x = k * radius;
    const double y = lam * radius;
    auto jn = [](int n, double t) { return n < 0 ? (n % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(-n, t) : std::cyl_bessel_j(n, t); };
    const double j = jn(m, x);
    const double dj = 0.5 * (jn(m - 1, x) - jn(m + 1, x));
    const double kk = std::cyl_bessel_k(m, y);
    const double dk = -0.5 * (std::cyl_bessel_k(std::abs(m - 1), y) + std::cyl_bessel_k(m + 1, y));
    int nodes = 0;
    double last = 0.0;
    for (int i = 1; i <= 4000; ++i) {
        const double t = x * i / 4000.0;
        const double s = jn(m, t);
        if (last != 0.0 && (s > 0.0) != (last > 0.0)) ++nodes;
        if (s != 0.0) last = s;
    }
    const double norm = std::hypot(k * dj * kk, lam * dk * j);
    return {(k * dj * kk - lam * dk * j) / norm, nodes};
}

// ------------------------------------------------------------ 1D oracle

// Same-grid second-order problem on the integer points: three-point Laplacian
// with Dirichlet walls and cell-averaged V_+, levels by Sturm bisection.
struct LineOracle {
    std::vector<double> vbar;
    double c = 0.0;
    double h = 0.0;

    int count(double e) const {
        int neg = 0;
        double q = 1.0;
        const double off2 = 1.0 / (h * h * h * h);
        for (std::size_t i = 0; i < vbar.size(); ++i) {
            const double d = 2.0 / (h * h) - (e - c) * (e - vbar[i]);
            q = d - (i > 0 ? off2 / q : 0.0);
            if (q == 0.0) q = -1e-300;
            if (q < 0.0) ++neg;
        }
        return neg;
    }

    std::map<int, double> levels(double lo, double hi) const {
        std::map<int, double> out;
        const int a = count(lo);
        const int b = count(hi);
        for (int level = a; level < b; ++level) {
            double x = lo, y = hi;
            while (y - x > 1e-14) {
                const double m = 0.5 * (x + y);
                if (m <= x || m >= y) break;
                if (count(m) > level) y = m;
                else x = m;
            }
            out[level] = 0.5 * (x + y);
        }
        return out;
    }
};

// |[a, b] intersect [-r, r]| * depth / (b - a)
double square_average(double depth, double radius, double a, double b) {
    const double lo = std::max(a, -radius);
    const double hi = std::min(b, radius);
    return hi > lo ? depth * (hi - lo) / (b - a) : 0.0;
}

// ------------------------------------------------------------ criteria

Outcome criterion1() {
    Outcome o;
    Clock clock;
    const auto cands = enumerate_strict_candidates(build_gamma_basis());
    std::set<std::string> labels;
    for (const auto& c : cands) labels.insert(c.label);
    o.check(labels == std::set<std::string>{"g0", "i*g0g5"} && cands.size() == 2,
            "strict candidates are exactly {g0, i*g0g5} (" + std::to_string(cands.size()) + " found)");
    const M4 ig0g5 = kI * ref_gamma0() * ref_gamma5();
    for (const auto& c : cands) {
        const M4 expect = c.label == "g0" ? ref_gamma0() : ig0g5;
        o.check(maxabs(c.matrix - expect) == 0.0, c.label + " equals the reference matrix");
        const auto p = build_projectors(c.matrix);
        const M4 one = M4::Identity();
        const double res = std::max({maxabs(p.plus * p.plus - p.plus), maxabs(p.minus * p.minus - p.minus),
                                     maxabs(p.plus * p.minus), maxabs(p.minus * p.plus),
                                     maxabs(p.plus + p.minus - one),
                                     maxabs(p.plus - 0.5 * (one + expect))});
        o.check(res == 0.0, c.label + " projector identities exact (max entry " + sci(res) + ")");
    }
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0, worst_lib = 0.0;
    for (int s = 0; s < 100; ++s) {
        const Vec3 a{u(rng), u(rng), u(rng)};
        const Vec3 b{u(rng), u(rng), u(rng)};
        const Vec3 x{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
        const M4 lhs = adot(a) * adot(b);
        const M4 rhs = (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) * M4::Identity() +
                       kI * (x[0] * ref_sigma(1) + x[1] * ref_sigma(2) + x[2] * ref_sigma(3));
        worst = std::max(worst, maxabs(lhs - rhs));
        worst_lib = std::max(worst_lib, alpha_identity_residual(a, b));
    }
    o.check(worst < 1e-13 && worst_lib < 1e-13,
            "alpha.A alpha.B identity over 100 seeded samples: reference " + sci(worst) + ", library " +
                sci(worst_lib) + " (< 1e-13)");
    const double t = clock.seconds();
    o.check(t < 1.0, "runtime " + fmt("%.3f", t) + " s (< 1 s)");
    return o;
}

struct Candidate {
    M4 o;
    std::string label;
};

std::vector<Candidate> candidates() {
    return {{ref_gamma0(), "g0"}, {kI * ref_gamma0() * ref_gamma5(), "i*g0g5"}};
}

Outcome criterion2() {
    Outcome o;
    Clock clock;
    const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                              {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                              {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
    for (const auto& cand : candidates())
        for (Branch b : {Branch::spin, Branch::pseudospin}) {
            double comm = 0.0, su2 = 0.0, lib_comm = 0.0, lib_su2 = 0.0;
            const M4 pp = 0.5 * (M4::Identity() + cand.o);
            const M4 pm = 0.5 * (M4::Identity() - cand.o);
            for (const auto& ctx : random_contexts(42, 100, cand.o, cand.label, b)) {
                const M4 ap = adot(ctx.p);
                const double p2 = dot(ctx.p, ctx.p);
                const bool spin = b == Branch::spin;
                const M4 h = ap + ctx.v_active * (spin ? pp : pm) + ctx.c * (spin ? pm : pp);
                std::array<M4, 3> s;
                for (int i = 0; i < 3; ++i) {
                    const M4 si = ap * ref_sigma(i + 1) * ap / p2;
                    s[i] = spin ? M4(ref_sigma(i + 1) * pp + si * pm) : M4(ref_sigma(i + 1) * pm + si * pp);
                    comm = std::max(comm, maxabs(h * s[i] - s[i] * h));
                }
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) {
                        M4 r = s[i] * s[j] - s[j] * s[i];
                        for (int k = 0; k < 3; ++k) r -= 2.0 * kI * double(eps[i][j][k]) * s[k];
                        su2 = std::max(su2, maxabs(r));
                    }
                lib_comm = std::max(lib_comm, verify_commutation(ctx).residuals.commutator);
                lib_su2 = std::max(lib_su2, verify_su2(ctx).residuals.su2);
            }
            const std::string tag = cand.label + "/" + to_string(b);
            o.check(comm < 1e-12 && lib_comm < 1e-12,
                    tag + " max |[H, S_i]|: reference " + sci(comm) + ", library " + sci(lib_comm));
            o.check(su2 < 1e-12 && lib_su2 < 1e-12,
                    tag + " SU(2) residual: reference " + sci(su2) + ", library " + sci(lib_su2));
        }
    const double t = clock.seconds();
    o.check(t < 1.0, "runtime " + fmt("%.3f", t) + " s (< 1 s)");
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (const auto& cand : candidates())
        for (Branch b : {Branch::spin, Branch::pseudospin}) {
            double worst = 0.0;
            const M4 pp = 0.5 * (M4::Identity() + cand.o);
            const M4 pm = 0.5 * (M4::Identity() - cand.o);
            for (const auto& ctx : random_contexts(42, 100, cand.o, cand.label, b)) {
                const double p2 = dot(ctx.p, ctx.p);
                const double s = ctx.v_active + ctx.c;
                const double d = std::sqrt((ctx.v_active - ctx.c) * (ctx.v_active - ctx.c) + 4.0 * p2);
                const double roots[4] = {0.5 * (s - d), 0.5 * (s - d), 0.5 * (s + d), 0.5 * (s + d)};
                const auto lib = hamiltonian_eigenvalues(ctx);
                const bool spin = b == Branch::spin;
                const M4 h = adot(ctx.p) + ctx.v_active * (spin ? pp : pm) + ctx.c * (spin ? pm : pp);
                const Eigen::Vector4d ev = Eigen::SelfAdjointEigenSolver<M4>(h).eigenvalues();
                for (int i = 0; i < 4; ++i) {
                    worst = std::max(worst, std::abs(lib[i] - roots[i]));
                    worst = std::max(worst, std::abs(ev(i) - roots[i]));
                }
            }
            o.check(worst < 1e-10, cand.label + "/" + to_string(b) +
                                       " spectrum vs doubled roots of (E-C)(E-V)=p^2: " + sci(worst));
        }
    return o;
}

int spin_l(int kappa) { return kappa > 0 ? kappa : -kappa - 1; }

// Partner splittings between the channels of each pair, matched by node label.
struct PairStats {
    int pairs = 0;
    double max_abs = 0.0;
    double min_abs = 1e300;
};

PairStats pair_stats(const std::vector<RadialSolution>& a, const std::vector<RadialSolution>& b,
                     bool by_f) {
    std::map<int, double> eb;
    for (const auto& s : b) eb[by_f ? s.nodes_f : s.nodes] = s.energy;
    PairStats st;
    for (const auto& s : a) {
        const auto it = eb.find(by_f ? s.nodes_f : s.nodes);
        if (it == eb.end()) continue;
        const double d = std::abs(s.energy - it->second);
        ++st.pairs;
        st.max_abs = std::max(st.max_abs, d);
        st.min_abs = std::min(st.min_abs, d);
    }
    return st;
}

Outcome criterion4() {
    Outcome o;
    Clock clock;
    const RunConfig cfg;
    const auto& r = cfg.radial;
    const auto exact = SymmetryScenario::spin(r.potential, r.c);
    std::map<int, std::vector<RadialSolution>> sols;
    for (int k : {1, -2, 2, -3}) sols[k] = solve_bound_states(exact, k, r.window, r.grid);
    for (auto [a, b] : {std::pair{1, -2}, std::pair{2, -3}}) {
        const auto st = pair_stats(sols[a], sols[b], false);
        o.check(st.pairs >= 3 && st.max_abs < 1e-8,
                "kappa " + std::to_string(a) + "/" + std::to_string(b) + ": " + std::to_string(st.pairs) +
                    " pairs, max |splitting| " + sci(st.max_abs) + " (< 1e-8)");
    }
    double worst = 0.0;
    bool complete = true;
    for (auto& [k, list] : sols) {
        const auto ref = radial_oracle(r.potential, r.c, spin_l(k), r.window.lo, r.window.hi);
        complete = complete && ref.size() == list.size();
        for (const auto& s : list) {
            const auto it = ref.find(s.nodes);
            if (it == ref.end()) {
                complete = false;
                continue;
            }
            worst = std::max(worst, std::abs(s.energy - it->second) / std::abs(it->second));
        }
    }
    o.check(complete && worst < 1e-6,
            "Numerov oracle: every level found, max relative deviation " + sci(worst) + " (< 1e-6)");
    const auto broken = SymmetryScenario::broken(r.potential, r.c, 0.1);
    double min_split = 1e300;
    int pairs = 0;
    for (auto [a, b] : {std::pair{1, -2}, std::pair{2, -3}}) {
        const auto st = pair_stats(solve_bound_states(broken, a, r.window, r.grid),
                                   solve_bound_states(broken, b, r.window, r.grid), false);
        pairs += st.pairs;
        min_split = std::min(min_split, st.min_abs);
    }
    o.check(pairs >= 1 && min_split > 1e-3,
            "broken (V_- = C + 0.1 V_ws): " + std::to_string(pairs) + " pairs, min |splitting| " +
                sci(min_split) + " (> 1e-3)");
    const double t = clock.seconds();
    o.check(t < 30.0, "runtime " + fmt("%.1f", t) + " s (< 30 s)");
    return o;
}

Outcome criterion5() {
    Outcome o;
    Clock clock;
    const RunConfig cfg;
    const auto& r = cfg.radial;
    const auto s = SymmetryScenario::pseudospin(r.potential, r.c);
    for (auto [a, b] : {std::pair{-1, 2}, std::pair{-2, 3}}) {
        const auto st = pair_stats(solve_bound_states(s, a, r.window, r.grid),
                                   solve_bound_states(s, b, r.window, r.grid), true);
        o.check(st.pairs >= 1 && st.max_abs < 1e-8,
                "kappa " + std::to_string(a) + "/" + std::to_string(b) + ": " + std::to_string(st.pairs) +
                    " pairs by F nodes, max |splitting| " + sci(st.max_abs) + " (< 1e-8)");
    }
    const double t = clock.seconds();
    o.check(t < 30.0, "runtime " + fmt("%.1f", t) + " s (< 30 s)");
    return o;
}

Outcome criterion6() {
    Outcome o;
    Clock clock;
    const RunConfig cfg;
    const auto& ax = cfg.axial;
    const auto p = Axial1DProblem::plus(ax.potential, ax.c, {ax.length, ax.n});
    const auto states = solve_1d(p, ax.window);
    LineOracle ref;
    ref.c = ax.c;
    ref.h = 2.0 * ax.length / (ax.n + 1);
    // V_+ = 2 V_1v - C for the plus relation
    const double depth = 2.0 * ax.potential.depth;
    for (int i = 1; i <= ax.n; ++i) {
        const double z = -ax.length + i * ref.h;
        ref.vbar.push_back(square_average(depth, ax.potential.radius, z - 0.5 * ref.h, z + 0.5 * ref.h) -
                           ax.c);
    }
    const auto levels = ref.levels(ax.window.lo, ax.window.hi);
    double worst = 0.0;
    bool matched = true;
    for (const auto& s : states) {
        const auto it = levels.find(s.nodes);
        if (it == levels.end()) {
            matched = false;
            continue;
        }
        worst = std::max(worst, std::abs(s.energy - it->second));
    }
    o.check(matched && worst < 1e-8,
            std::to_string(states.size()) + " states vs same-grid Schrodinger oracle: max |dE| " + sci(worst) +
                " (< 1e-8)");
    o.check(states.size() == 2 * levels.size(),
            "each of the " + std::to_string(levels.size()) + " oracle levels appears once per Sigma_3 channel, nothing extra");

    const auto a = assemble_1d(p);
    double herm = 0.0;
    for (std::size_t k = 0; k < a.upper.size(); ++k) herm = std::max(herm, std::abs(a.upper[k] - a.lower[k]));
    o.check(herm < 1e-14 && hermiticity_residual(a) < 1e-14,
            "discrete operator symmetric: max |A - A^T| " + sci(herm) + " (< 1e-14)");

    double tv = 0.0;
    for (const auto& s : states)
        for (const auto* f : {&s.upper, &s.lower}) {
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < f->size(); ++i) {
                den += std::abs((*f)[i]);
                if (i + 1 < f->size()) num += std::abs((*f)[i + 1] - (*f)[i]);
            }
            tv = std::max(tv, num / den);
        }
    o.check(tv < 0.1, "no doubling: largest total-variation index " + sci(tv) + " (grid-scale modes give ~2)");
    const double t = clock.seconds();
    o.check(t < 10.0, "runtime " + fmt("%.1f", t) + " s (< 10 s)");
    return o;
}

Outcome criterion7() {
    Outcome o;
    Clock clock;
    const RunConfig cfg;
    const auto& pl = cfg.planar;
    // plus relation: V_+ = 2 V_2v - C inside, C outside; V_- = C
    const double v_in = 2.0 * pl.potential.depth - pl.c;
    const double v_out = -pl.c;
    double worst = 0.0, sigma3 = 0.0, gen = 0.0, dirac = 0.0;
    int n_states = 0;
    bool complete = true;
    for (int chi : {1, -1})
        for (double m_j : {0.5, -0.5, 1.5, -1.5}) {
            auto p = Planar2DProblem::plus(pl.potential, pl.c, m_j);
            p.chirality = chi;
            p.grid = pl.grid;
            const auto states = solve_2d_radial(p, pl.window);
            const int m = int(std::lround(std::abs(p.kappa() + 0.5)));
            std::map<int, double> ref;
            for (const auto& lv : scan_roots(
                     [&](double e) { return planar_mismatch(e, pl.c, v_in, v_out, pl.potential.radius, m); },
                     pl.window.lo, pl.window.hi, 2000))
                ref[lv.nodes] = lv.energy;
            complete = complete && ref.size() == states.size();
            for (const auto& s : states) {
                ++n_states;
                const auto it = ref.find(s.nodes);
                if (it == ref.end()) {
                    complete = false;
                    continue;
                }
                worst = std::max(worst, std::abs(s.energy - it->second) / std::abs(it->second));
                const auto res = planar_residuals(p, s);
                sigma3 = std::max(sigma3, res.sigma3);
                gen = std::max(gen, res.generator);
                dirac = std::max(dirac, res.dirac);
            }
        }
    o.check(complete && worst < 1e-6, std::to_string(n_states) +
                                          " states vs exact Bessel matching: max relative deviation " +
                                          sci(worst) + " (< 1e-6)");
    o.check(sigma3 < 1e-10, "literal [H2, Sigma_3] psi on eigenstates: " + sci(sigma3) + " (needs < 1e-10)");
    o.info("Sigma_3 anticommutes with alpha_1 and alpha_2, so [H2, Sigma_3] = 2 (alpha_1 p_1 + alpha_2 p_2) Sigma_3,");
    o.info("which vanishes only for constant psi. The conserved operators are J_3 = L_3 + Sigma_3/2 (used to");
    o.info("separate m_j) and S_3 = Sigma_3 P_+ + s_3 P_- = gamma_5 at p_3 = 0: [H2, gamma_5] psi = " + sci(gen) + ".");
    o.info("Dirac equation residual on the same states: " + sci(dirac) + ".");
    const double t = clock.seconds();
    o.check(t < 60.0, "runtime " + fmt("%.1f", t) + " s (< 60 s)");
    return o;
}

struct Convergence {
    double max_change = 0.0; // |E(h) - E(h/2)|
    double ratio_lo = 1e300;
    double ratio_hi = 0.0;
    int levels = 0;
};

void accumulate(Convergence& c, const std::vector<std::map<int, double>>& e) {
    for (const auto& [n, e0] : e[0]) {
        if (!e[1].count(n) || !e[2].count(n)) continue;
        const double d1 = e0 - e[1].at(n);
        const double d2 = e[1].at(n) - e[2].at(n);
        c.max_change = std::max(c.max_change, std::abs(d1));
        const double r = d1 / d2;
        c.ratio_lo = std::min(c.ratio_lo, r);
        c.ratio_hi = std::max(c.ratio_hi, r);
        ++c.levels;
    }
}

std::string describe(const std::string& tag, const Convergence& c) {
    return tag + ": " + std::to_string(c.levels) + " levels, max change " + sci(c.max_change) +
           ", ratio in [" + fmt("%.3f", c.ratio_lo) + ", " + fmt("%.3f", c.ratio_hi) + "]";
}

bool converged(const Convergence& c) {
    return c.levels > 0 && c.max_change < 1e-7 && c.ratio_lo > 3.2 && c.ratio_hi < 4.8;
}

Outcome criterion8() {
    Outcome o;
    const RunConfig cfg;
    {
        // each grid is the previous one with the spacing halved
        const auto s = SymmetryScenario::spin(cfg.radial.potential, cfg.radial.c);
        Convergence c;
        for (int k : cfg.radial.kappas) {
            std::vector<std::map<int, double>> e;
            RadialGrid g = cfg.radial.grid;
            for (int t = 0; t < 3; ++t, g = g.refined()) {
                std::map<int, double> m;
                for (const auto& x : solve_bound_states(s, k, cfg.radial.window, g)) m[x.nodes] = x.energy;
                e.push_back(m);
            }
            accumulate(c, e);
        }
        o.check(converged(c), describe("3d spin, N = " + std::to_string(cfg.radial.grid.n), c));
    }
    {
        Convergence c;
        // chirality -1 maps m_j to -m_j, so one chirality covers every kappa
        for (double m_j : cfg.planar.m_j) {
            std::vector<std::map<int, double>> e;
            RadialGrid g = cfg.planar.grid;
            for (int t = 0; t < 3; ++t, g = g.refined()) {
                auto p = Planar2DProblem::plus(cfg.planar.potential, cfg.planar.c, m_j);
                p.grid = g;
                std::map<int, double> m;
                for (const auto& x : solve_2d_radial(p, cfg.planar.window)) m[x.nodes] = x.energy;
                e.push_back(m);
            }
            accumulate(c, e);
        }
        o.check(converged(c), describe("2d plus, N = " + std::to_string(cfg.planar.grid.n), c));
    }
    {
        Convergence c;
        std::vector<std::map<int, double>> e;
        int n = cfg.axial.n;
        for (int t = 0; t < 3; ++t, n = 2 * n + 1) {
            const auto p = Axial1DProblem::plus(cfg.axial.potential, cfg.axial.c, {cfg.axial.length, n});
            std::map<int, double> m;
            for (const auto& x : solve_1d(p, cfg.axial.window))
                if (x.channel == 1) m[x.nodes] = x.energy;
            e.push_back(m);
        }
        accumulate(c, e);
        o.check(converged(c), describe("1d plus, n = " + std::to_string(cfg.axial.n), c));
    }
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome criterion9() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "diracsym_acceptance_9";
    fs::remove_all(root);
    struct Case {
        std::string name;
        Command command;
        std::string dimension;
    };
    const std::vector<Case> cases{{"verify-algebra", Command::verify_algebra, "3d"},
                                  {"doublets-3d", Command::doublets, "3d"},
                                  {"spectrum-2d", Command::spectrum, "2d"},
                                  {"spectrum-1d", Command::spectrum, "1d"}};
    for (const auto& c : cases) {
        RunConfig cfg;
        cfg.command = c.command;
        cfg.dimension = c.dimension;
        cfg.seed = 42;
        std::vector<std::vector<std::string>> runs;
        for (int rep = 0; rep < 2; ++rep) {
            cfg.out_dir = (root / (c.name + "_" + std::to_string(rep))).string();
            cfg.threads = rep == 0 ? 1 : 4; // scheduling must not leak into the data
            const auto res = run(cfg);
            std::vector<std::string> blobs;
            for (const auto& f : res.files) blobs.push_back(fs::path(f).filename().string() + "\n" + slurp(f));
            runs.push_back(blobs);
        }
        bool same = runs[0].size() == runs[1].size() && !runs[0].empty();
        for (std::size_t i = 0; same && i < runs[0].size(); ++i) same = runs[0][i] == runs[1][i];
        o.check(same, c.name + ": " + std::to_string(runs[0].size()) + " files byte-identical across two runs");
    }
    fs::remove_all(root);
    return o;
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> all{
        {"algebra suite", criterion1},
        {"commutation suite", criterion2},
        {"plane-wave dispersion", criterion3},
        {"spin doublets (3D)", criterion4},
        {"pseudospin doublets (3D)", criterion5},
        {"1D tensor case", criterion6},
        {"2D radial case", criterion7},
        {"convergence", criterion8},
        {"determinism", criterion9},
    };
    std::vector<int> which;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    } else {
        for (int i = 1; i <= 9; ++i) which.push_back(i);
    }
    bool ok = true;
    for (int n : which) {
        if (n < 1 || n > 9) {
            std::fprintf(stderr, "usage: acceptance [1-9 ...]\n");
            return 2;
        }
        Outcome out;
        try {
            out = all[n - 1].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.notes.push_back(std::string("FAIL threw ") + e.what());
        }
        std::printf("criterion %d %s: %s\n", n, out.pass ? "PASS" : "FAIL", all[n - 1].first);
        for (const auto& s : out.notes) std::printf("    %s\n", s.c_str());
        std::fflush(stdout);
        ok = ok && out.pass;
    }
    return ok ? 0 : 1;
}
