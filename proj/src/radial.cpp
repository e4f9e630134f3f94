#include "diracsym/radial.hpp"

#include "diracsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diracsym {

std::string to_string(ScenarioBranch b) {
    switch (b) {
    case ScenarioBranch::spin: return "spin";
    case ScenarioBranch::pseudospin: return "pseudospin";
    case ScenarioBranch::broken: return "broken";
    }
    return "?";
}

SymmetryScenario SymmetryScenario::spin(PotentialProfile v, double c) {
    SymmetryScenario s;
    s.branch = ScenarioBranch::spin;
    s.v_active = std::move(v);
    s.c = c;
    return s;
}

SymmetryScenario SymmetryScenario::pseudospin(PotentialProfile v, double c) {
    SymmetryScenario s = spin(std::move(v), c);
    s.branch = ScenarioBranch::pseudospin;
    s.breaks = Branch::pseudospin;
    return s;
}

SymmetryScenario SymmetryScenario::broken(PotentialProfile v, double c, double amplitude,
                                          Branch breaks) {
    SymmetryScenario s = spin(v, c);
    s.branch = ScenarioBranch::broken;
    s.breaking = v.scaled(amplitude);
    s.breaks = breaks;
    return s;
}

Branch SymmetryScenario::symmetry() const {
    switch (branch) {
    case ScenarioBranch::spin: return Branch::spin;
    case ScenarioBranch::pseudospin: return Branch::pseudospin;
    case ScenarioBranch::broken: return breaks;
    }
    return Branch::spin;
}

namespace {

PotentialProfile constant_branch(const SymmetryScenario& s) {
    if (s.branch == ScenarioBranch::broken && s.breaking)
        return s.breaking->with_offset(s.breaking->offset + s.c);
    return PotentialProfile::constant(s.c);
}

} // namespace

PotentialProfile SymmetryScenario::v_plus() const {
    return symmetry() == Branch::spin ? v_active : constant_branch(*this);
}

PotentialProfile SymmetryScenario::v_minus() const {
    return symmetry() == Branch::spin ? constant_branch(*this) : v_active;
}

std::pair<double, double> radial_equations(const SymmetryScenario& s, int kappa, double energy,
                                           double r, double g, double f) {
    if (!(r > 0.0)) throw std::invalid_argument("radial_equations needs r > 0");
    const double k = double(kappa) / r;
    const double dg = -k * g + (energy - s.v_minus().value(r)) * f;
    const double df = k * f - (energy - s.v_plus().value(r)) * g;
    return {dg, df};
}

namespace {

struct Substep {
    double dr;
    double k;  // mean of kappa / r over the substep
    double vp; // V_+ at the midpoint
    double vm; // V_- at the midpoint
};

struct Vec2 {
    double g;
    double f;
};

/// Precomputed propagation plan: substeps for every cell of the grid.
class Propagator {
public:
    Propagator(const DiracRadialSystem& sys, const RadialGrid& grid, const ShootingOptions& opt)
        : sys_(sys), grid_(grid) {
        if (grid.n < 16) throw std::invalid_argument("radial grid needs at least 16 points");
        if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min))
            throw std::invalid_argument("radial grid needs 0 < r_min < r_max");
        std::vector<double> jumps;
        for (const auto& p : {sys.v_plus, sys.v_minus})
            for (double d : p.discontinuities()) jumps.push_back(d);
        std::sort(jumps.begin(), jumps.end());
        // Both branches usually jump at the same radius; a repeated cut would be a zero-width step.
        jumps.erase(std::unique(jumps.begin(), jumps.end()), jumps.end());

        cell_begin_.reserve(grid.n);
        node_vp_.resize(grid.n);
        node_vm_.resize(grid.n);
        for (int i = 0; i < grid.n; ++i) {
            node_vp_[i] = sys.v_plus.value(grid.r(i));
            node_vm_[i] = sys.v_minus.value(grid.r(i));
        }
        for (int i = 0; i + 1 < grid.n; ++i) {
            cell_begin_.push_back(int(steps_.size()));
            const double a = grid.r(i);
            const double b = grid.r(i + 1);
            std::vector<double> cuts{a};
            for (double d : jumps)
                if (d > a && d < b) cuts.push_back(d);
            cuts.push_back(b);
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) add_piece(cuts[c], cuts[c + 1], opt);
        }
        cell_begin_.push_back(int(steps_.size()));
    }

    const RadialGrid& grid() const { return grid_; }
    double node_vp(int i) const { return node_vp_[i]; }
    double node_vm(int i) const { return node_vm_[i]; }

    /// Propagate cell i forward (r_i -> r_{i+1}) or backward.
    Vec2 forward(int cell, double e, Vec2 y) const {
        for (int s = cell_begin_[cell]; s < cell_begin_[cell + 1]; ++s) y = apply(steps_[s], e, y, 1.0);
        return y;
    }
    Vec2 backward(int cell, double e, Vec2 y) const {
        for (int s = cell_begin_[cell + 1] - 1; s >= cell_begin_[cell]; --s)
            y = apply(steps_[s], e, y, -1.0);
        return y;
    }

    double kappa() const { return sys_.kappa; }

private:
    void add_piece(double a, double b, const ShootingOptions& opt) {
        // Substeps uniform in s(r) = r + L ln r, so a step is about h r / (r + L):
        // geometric near the origin, where k / r varies quickly, and h far out.
        // The substep layout scales with h, which keeps the error O(h^2).
        const double L = opt.origin_scale;
        const double h = grid_.h();
        auto s_of = [L](double r) { return r + L * std::log(r); };
        int m = 1;
        if (L > 0.0) m = std::max(1, int(std::ceil((s_of(b) - s_of(a)) / h - 1e-9)));
        const double ds = (s_of(b) - s_of(a)) / m;
        double left = a;
        for (int j = 0; j < m; ++j) {
            double right = b;
            if (j + 1 < m) {
                // Newton on s(r) = s(a) + (j+1) ds, s is increasing and concave.
                const double target = s_of(a) + double(j + 1) * ds;
                right = left;
                for (int it = 0; it < 60; ++it) {
                    const double step = (s_of(right) - target) / (1.0 + L / right);
                    right -= step;
                    if (right <= left) right = 0.5 * (left + right + step);
                    if (std::abs(step) <= 1e-15 * right) break;
                }
                right = std::clamp(right, left, b);
            }
            const double dr = right - left;
            const double mid = 0.5 * (left + right);
            Substep st;
            st.dr = dr;
            st.k = sys_.kappa * std::log(right / left) / dr;
            st.vp = sys_.v_plus.value(mid);
            st.vm = sys_.v_minus.value(mid);
            steps_.push_back(st);
            left = right;
        }
    }

    static Vec2 apply(const Substep& s, double e, Vec2 y, double dir) {
        // A = [[-k, p], [-q, k]] is traceless, so exp(t A) = C I + S A with
        // A^2 = (k^2 - p q) I.
        const double p = e - s.vm;
        const double q = e - s.vp;
        const double t = dir * s.dr;
        const double x = t * t * (s.k * s.k - p * q);
        double c;
        double sa;
        if (std::abs(x) < 1e-8) {
            c = 1.0 + x / 2.0 + x * x / 24.0;
            sa = t * (1.0 + x / 6.0 + x * x / 120.0);
        } else if (x > 0.0) {
            const double w = std::sqrt(x);
            c = std::cosh(w);
            sa = t * std::sinh(w) / w;
        } else {
            const double w = std::sqrt(-x);
            c = std::cos(w);
            sa = t * std::sin(w) / w;
        }
        return {c * y.g + sa * (-s.k * y.g + p * y.f), c * y.f + sa * (-q * y.g + s.k * y.f)};
    }

    const DiracRadialSystem& sys_;
    RadialGrid grid_;
    std::vector<Substep> steps_;
    std::vector<int> cell_begin_;
    std::vector<double> node_vp_;
    std::vector<double> node_vm_;
};

/// Brent's method on a sign-changing bracket; nullopt when f leaves its domain.
template <class F>
std::optional<double> brent_root(const F& f, double a, double b, double fa, double fb,
                                 double tol) {
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        const auto fn = f(b);
        if (!fn) return std::nullopt;
        fb = *fn;
    }
    return b;
}

double signed_product(double a, double b) {
    // Sign-safe product for asymptotes that may be infinite.
    if (a == 0.0 || b == 0.0) return 0.0;
    if (std::isinf(a) || std::isinf(b)) return ((a > 0) == (b > 0)) ? 1.0 : -1.0;
    return a * b;
}

Vec2 origin_start(const DiracRadialSystem& sys, double e, double r0) {
    const double k = sys.kappa;
    if (k < 0.0) {
        // G ~ r^|k| dominant, F ~ -(E - V_+) r^{|k|+1} / (2|k|+1).
        return {1.0, -(e - sys.v_plus.value(r0)) * r0 / (2.0 * std::abs(k) + 1.0)};
    }
    // F ~ r^k dominant, G ~ (E - V_-) r^{k+1} / (2k+1).
    return {(e - sys.v_minus.value(r0)) * r0 / (2.0 * k + 1.0), 1.0};
}

struct Shot {
    bool bound = false;
    int match = 0;
    Vec2 out{};
    Vec2 in{};
    double det = 0.0;
};

double norm2(Vec2 y) { return std::hypot(y.g, y.f); }

Vec2 rescaled(Vec2 y) {
    const double n = norm2(y);
    if (n > 1e100 || (n < 1e-100 && n > 0.0)) return {y.g / n, y.f / n};
    return y;
}

int matching_index(const Propagator& prop, double e) {
    const auto& grid = prop.grid();
    int m = -1;
    for (int i = grid.n - 1; i >= 0; --i) {
        const double k = prop.kappa() / grid.r(i);
        if ((e - prop.node_vp(i)) * (e - prop.node_vm(i)) - k * k > 0.0) {
            m = i;
            break;
        }
    }
    if (m < 0) m = grid.n / 2;
    return std::clamp(m, 4, grid.n - 5);
}

/// Decaying solution beyond r_max with both branches frozen at their r_max
/// values: the Schrodinger-like component is sqrt(r) K_nu(lam r), which keeps
/// the centrifugal term exact in the tail.
std::optional<Vec2> asymptotic_start(const DiracRadialSystem& sys, const Propagator& prop,
                                     double e, double lam) {
    const auto& grid = prop.grid();
    const double r = grid.r_max;
    const double x = lam * r;
    if (x > 600.0) return std::nullopt;
    const double k = sys.kappa;
    const double p = e - prop.node_vm(grid.n - 1);
    const double q = e - prop.node_vp(grid.n - 1);
    // u = sqrt(r) K_nu(lam r) solves -u'' + (nu^2 - 1/4)/r^2 u = -lam^2 u.
    auto log_slope = [&](double nu) {
        const double kn = std::cyl_bessel_k(nu, x);
        const double dk = -std::cyl_bessel_k(std::abs(nu - 1.0), x) - nu / x * kn;
        return 0.5 / r + lam * dk / kn; // u'/u
    };
    Vec2 v;
    if (std::abs(p) >= std::abs(q)) {
        // G Schrodinger-like with nu = |k + 1/2|; F = (G' + k G / r) / p.
        const double s = log_slope(std::abs(k + 0.5));
        v = {1.0, (s + k / r) / p};
    } else {
        // F with nu = |k - 1/2|; G = -(F' - k F / r) / q.
        const double s = log_slope(std::abs(k - 0.5));
        v = {-(s - k / r) / q, 1.0};
    }
    if (!std::isfinite(v.g) || !std::isfinite(v.f)) return std::nullopt;
    const double n = norm2(v);
    v = {v.g / n, v.f / n};
    if (v.g < 0.0 || (v.g == 0.0 && v.f < 0.0)) v = {-v.g, -v.f};
    return v;
}

/// Inward start. Falls back to the decaying eigenvector of the local generator
/// when the potentials are not yet asymptotic at r_max.
std::optional<Vec2> decaying_start(const DiracRadialSystem& sys, const Propagator& prop, double e) {
    const auto& grid = prop.grid();
    const double r = grid.r_max;
    const double k = sys.kappa / r;
    const double p = e - prop.node_vm(grid.n - 1);
    const double q = e - prop.node_vp(grid.n - 1);
    const double d = k * k - p * q;
    if (!(d > 0.0)) {
        const double far = signed_product(e - sys.v_plus.asymptote(), e - sys.v_minus.asymptote());
        if (far < 0.0) {
            std::ostringstream os;
            os << "E = " << e << " is still classically allowed at r_max = " << r
               << " although it is bound asymptotically; enlarge r_max";
            throw TurningPointOutsideGrid(os.str());
        }
        return std::nullopt;
    }
    if (-p * q > 0.0) {
        if (auto v = asymptotic_start(sys, prop, e, std::sqrt(-p * q))) return v;
    }
    const double lam = std::sqrt(d);
    // (A + lam I) v = 0 with A = [[-k, p], [-q, k]].
    Vec2 v1{p, k - lam};
    Vec2 v2{k + lam, q};
    Vec2 v = norm2(v1) >= norm2(v2) ? v1 : v2;
    const double n = norm2(v);
    v = {v.g / n, v.f / n};
    if (v.g < 0.0 || (v.g == 0.0 && v.f < 0.0)) v = {-v.g, -v.f};
    return v;
}

std::optional<Shot> shoot(const DiracRadialSystem& sys, const Propagator& prop, double e) {
    const auto start_in = decaying_start(sys, prop, e);
    if (!start_in) return std::nullopt;
    const auto& grid = prop.grid();
    Shot s;
    s.match = matching_index(prop, e);
    Vec2 y = origin_start(sys, e, grid.r_min);
    for (int i = 0; i < s.match; ++i) y = rescaled(prop.forward(i, e, y));
    s.out = y;
    Vec2 z = *start_in;
    for (int i = grid.n - 2; i >= s.match; --i) z = rescaled(prop.backward(i, e, z));
    s.in = z;
    s.det = (s.out.g * s.in.f - s.out.f * s.in.g) / (norm2(s.out) * norm2(s.in));
    s.bound = true;
    return s;
}

RadialSolution build_solution(const DiracRadialSystem& sys, const Propagator& prop, double e) {
    const auto& grid = prop.grid();
    const auto shot = shoot(sys, prop, e);
    RadialSolution sol;
    sol.kappa = sys.kappa;
    sol.energy = e;
    sol.grid = grid;
    sol.g.assign(grid.n, 0.0);
    sol.f.assign(grid.n, 0.0);
    const int m = shot->match;
    sol.matching_radius = grid.r(m);

    auto store = [&](int i, Vec2 y) {
        sol.g[i] = y.g;
        sol.f[i] = y.f;
    };
    // Outward part with in-place rescaling of everything stored so far.
    Vec2 y = origin_start(sys, e, grid.r_min);
    store(0, y);
    for (int i = 0; i < m; ++i) {
        y = prop.forward(i, e, y);
        const double n = norm2(y);
        if (n > 1e100) {
            for (int j = 0; j <= i; ++j) {
                sol.g[j] /= n;
                sol.f[j] /= n;
            }
            y = {y.g / n, y.f / n};
        }
        store(i + 1, y);
    }
    const Vec2 out = y;
    // Inward part, stored separately then matched in a least-squares sense at m.
    std::vector<double> gin(grid.n, 0.0);
    std::vector<double> fin(grid.n, 0.0);
    Vec2 z = *decaying_start(sys, prop, e);
    gin[grid.n - 1] = z.g;
    fin[grid.n - 1] = z.f;
    for (int i = grid.n - 2; i >= m; --i) {
        z = prop.backward(i, e, z);
        const double n = norm2(z);
        if (n > 1e100) {
            for (int j = i + 1; j < grid.n; ++j) {
                gin[j] /= n;
                fin[j] /= n;
            }
            z = {z.g / n, z.f / n};
        }
        gin[i] = z.g;
        fin[i] = z.f;
    }
    const double scale = (out.g * z.g + out.f * z.f) / (z.g * z.g + z.f * z.f);
    for (int i = m + 1; i < grid.n; ++i) {
        sol.g[i] = scale * gin[i];
        sol.f[i] = scale * fin[i];
    }
    const double nrm = std::sqrt(trapezoid_norm(sol));
    for (int i = 0; i < grid.n; ++i) {
        sol.g[i] /= nrm;
        sol.f[i] /= nrm;
    }
    sol.nodes = count_nodes(sol.g);
    sol.nodes_f = count_nodes(sol.f);
    return sol;
}

} // namespace

int count_nodes(const std::vector<double>& v, double rel_floor) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    const double floor = rel_floor * peak;
    int nodes = 0;
    int last = 0;
    for (double x : v) {
        if (std::abs(x) <= floor) continue;
        const int sgn = x > 0 ? 1 : -1;
        if (last != 0 && sgn != last) ++nodes;
        last = sgn;
    }
    return nodes;
}

double trapezoid_norm(const RadialSolution& sol) {
    const double h = sol.grid.h();
    double sum = 0.0;
    for (std::size_t i = 0; i < sol.g.size(); ++i) {
        const double w = (i == 0 || i + 1 == sol.g.size()) ? 0.5 : 1.0;
        sum += w * (sol.g[i] * sol.g[i] + sol.f[i] * sol.f[i]);
    }
    return sum * h;
}

std::optional<double> matching_determinant(const DiracRadialSystem& sys, double e,
                                           const RadialGrid& grid, const ShootingOptions& opt) {
    const Propagator prop(sys, grid, opt);
    const auto s = shoot(sys, prop, e);
    if (!s) return std::nullopt;
    return s->det;
}

std::vector<RadialSolution> shoot_bound_states(const DiracRadialSystem& sys,
                                               const EnergyWindow& window,
                                               const RadialGrid& grid,
                                               const ShootingOptions& opt) {
    if (!(window.hi > window.lo) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
        throw NoStateFound("empty or non-finite energy window");
    if (opt.scan_points < 2) throw std::invalid_argument("scan_points must be >= 2");
    const Propagator prop(sys, grid, opt);

    auto det = [&](double e) -> std::optional<double> {
        const auto s = shoot(sys, prop, e);
        if (!s) return std::nullopt;
        return s->det;
    };

    std::vector<RadialSolution> found;
    const int ns = opt.scan_points;
    std::vector<double> es(ns);
    std::vector<std::optional<double>> ds(ns);
    for (int k = 0; k < ns; ++k) {
        es[k] = window.lo + (window.hi - window.lo) * double(k) / double(ns - 1);
        ds[k] = det(es[k]);
    }
    for (int k = 0; k + 1 < ns; ++k) {
        if (!ds[k] || !ds[k + 1] || !std::isfinite(*ds[k]) || !std::isfinite(*ds[k + 1])) continue;
        double a = es[k];
        double b = es[k + 1];
        double fa = *ds[k];
        double fb = *ds[k + 1];
        if (fa == 0.0) {
            b = a;
        } else if (fa * fb > 0.0) {
            continue;
        } else if (fb == 0.0) {
            // Picked up as fa == 0 on the next interval.
            continue;
        }
        std::optional<double> root = a;
        if (b > a) root = brent_root(det, a, b, fa, fb, opt.energy_tol);
        if (!root) continue;
        // A sign flip without a zero (inward start vector changing sign) is not a state.
        const auto check = det(*root);
        if (!check || !std::isfinite(*check) || std::abs(*check) > 1e-6) continue;
        found.push_back(build_solution(sys, prop, *root));
    }
    if (found.empty()) {
        std::ostringstream os;
        os << "no bound state with kappa = " << sys.kappa << " in [" << window.lo << ", "
           << window.hi << "]";
        throw NoStateFound(os.str());
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const RadialSolution& x, const RadialSolution& y) { return x.nodes < y.nodes; });
    return found;
}

std::vector<RadialSolution> solve_bound_states(const SymmetryScenario& s, int kappa,
                                               const EnergyWindow& window,
                                               const RadialGrid& grid,
                                               const ShootingOptions& opt) {
    if (kappa == 0) throw std::invalid_argument("kappa must be nonzero");
    DiracRadialSystem sys{double(kappa), s.v_plus(), s.v_minus()};
    return shoot_bound_states(sys, window, grid, opt);
}

SecondOrderResidual residual_second_order(const RadialSolution& sol, const SymmetryScenario& s) {
    if (s.branch == ScenarioBranch::broken)
        throw std::invalid_argument("residual_second_order needs an exact symmetry branch");
    const bool spin = s.branch == ScenarioBranch::spin;
    // spin: F obeys the equation with V_+; pseudospin: G with V_-.
    const auto& x = spin ? sol.f : sol.g;
    const auto& other = spin ? sol.g : sol.f;
    const PotentialProfile v = s.v_active;
    const double kappa = sol.kappa;
    const double e = sol.energy;
    const double sgn = spin ? -1.0 : 1.0;
    const double ell = spin ? kappa * (kappa - 1.0) : kappa * (kappa + 1.0);
    const auto& grid = sol.grid;
    const int n = grid.n;
    const double h = grid.h();

    SecondOrderResidual out;
    for (int i = 0; i < n; ++i) {
        const double gap = e - v.value(grid.r(i));
        if (std::abs(gap) < 1e-8) {
            std::ostringstream os;
            os << "E - V vanishes at r = " << grid.r(i) << " (|E - V| = " << std::abs(gap) << ")";
            throw SingularDenominator(os.str());
        }
        if (i > 0) {
            const double prev = e - v.value(grid.r(i - 1));
            if ((prev > 0.0) != (gap > 0.0)) out.crossing_radii.push_back(grid.r(i));
        }
    }

    double peak = 0.0;
    for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(x[i]) + std::abs(other[i]));

    const auto jumps = v.discontinuities();
    for (int i = 8; i + 2 < n; ++i) {
        const double r = grid.r(i);
        if (std::abs(x[i]) + std::abs(other[i]) < 1e-8 * peak) continue;
        bool near_jump = false;
        for (double d : jumps) near_jump = near_jump || std::abs(r - d) < 3.0 * h;
        if (near_jump) continue;
        // Fourth-order central differences.
        const double d1 = (x[i - 2] - 8.0 * x[i - 1] + 8.0 * x[i + 1] - x[i + 2]) / (12.0 * h);
        const double d2 = (-x[i - 2] + 16.0 * x[i - 1] - 30.0 * x[i] + 16.0 * x[i + 1] - x[i + 2]) /
                          (12.0 * h * h);
        const double gap = e - v.value(r);
        const double dv = v.derivative(r) / gap;
        const double t_kin = -d2;
        const double t_cent = ell / (r * r) * x[i];
        const double t_darwin = -dv * d1;
        const double t_so = -dv * sgn * kappa * x[i] / r;
        const double t_pot = -(e - s.c) * gap * x[i];
        const double res = t_kin + t_cent + t_darwin + t_so + t_pot;
        const double scale = std::max({std::abs(t_kin), std::abs(t_cent), std::abs(t_darwin),
                                       std::abs(t_so), std::abs(t_pot)});
        if (scale == 0.0) continue;
        out.max_relative = std::max(out.max_relative, std::abs(res) / scale);
        out.max_spin_orbit = std::max(out.max_spin_orbit, std::abs(t_so));
        out.max_darwin = std::max(out.max_darwin, std::abs(t_darwin));
        ++out.points_checked;
    }
    return out;
}

} // namespace diracsym
