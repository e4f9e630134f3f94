#include "diracsym/oracle.hpp"

#include "diracsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace diracsym {

double OracleProblem::h() const {
    if (geometry == OracleGeometry::line) return 2.0 * length / double(neumann ? n : n + 1);
    return length / double(n);
}

double OracleProblem::x(int i) const {
    switch (geometry) {
    case OracleGeometry::line: return -length + (double(i) - (neumann ? 0.5 : 0.0)) * h();
    case OracleGeometry::planar: return (double(i) - 0.5) * h();
    case OracleGeometry::radial: return double(i) * h();
    }
    return 0.0;
}

namespace {

void validate(const OracleProblem& p) {
    if (p.n < 8) throw std::invalid_argument("oracle grid needs at least 8 unknowns");
    if (!(p.length > 0.0)) throw std::invalid_argument("oracle domain length must be > 0");
    if (p.geometry == OracleGeometry::planar && p.centrifugal < 0.0)
        throw std::invalid_argument("planar oracle needs m^2 >= 0");
    if (p.geometry == OracleGeometry::radial && p.centrifugal < -0.25)
        throw std::invalid_argument("radial oracle needs l(l+1) >= -1/4");
}

// u(x + h) / u(x) for the decaying tail with the potential frozen at the edge.
double tail_ratio(const OracleProblem& p, double energy) {
    if (p.hard_wall || p.geometry == OracleGeometry::line) return 0.0;
    const double x = p.x(p.n);
    const double h = p.h();
    const double lam2 = -(energy - p.c) * (energy - p.v.value(p.length));
    if (!(lam2 > 0.0)) return 0.0;
    const double lam = std::sqrt(lam2);
    if (lam * x > 600.0) return std::exp(-lam * h);
    if (p.geometry == OracleGeometry::radial) {
        const double nu = std::sqrt(p.centrifugal + 0.25);
        return std::sqrt((x + h) / x) * std::cyl_bessel_k(nu, lam * (x + h)) /
               std::cyl_bessel_k(nu, lam * x);
    }
    const double nu = std::sqrt(p.centrifugal);
    return std::cyl_bessel_k(nu, lam * (x + h)) / std::cyl_bessel_k(nu, lam * x);
}

struct Sampled {
    std::vector<double> v;    // cell averages of V at each unknown
    std::vector<double> base; // energy-independent diagonal
    std::vector<double> off;
};

Sampled sample(const OracleProblem& p) {
    const int n = p.n;
    const double h = p.h();
    Sampled s;
    s.v.resize(n);
    s.base.resize(n);
    s.off.assign(n - 1, -1.0 / (h * h));
    for (int i = 1; i <= n; ++i) {
        const double x = p.x(i);
        double lo = x - 0.5 * h;
        if (p.geometry != OracleGeometry::line) lo = std::max(lo, 0.0);
        s.v[i - 1] = p.v.cell_average(lo, x + 0.5 * h);
        double d = 2.0 / (h * h);
        if (p.geometry != OracleGeometry::line) d += p.centrifugal / (x * x);
        s.base[i - 1] = d;
    }
    if (p.geometry == OracleGeometry::line && p.neumann) {
        s.base.front() = 1.0 / (h * h);
        s.base.back() = 1.0 / (h * h);
    }
    if (p.geometry == OracleGeometry::planar) {
        // Faces at rho_{i +- 1/2} = x_i +- h/2, rho_{1/2} = 0.
        for (int i = 1; i < n; ++i) {
            const double face = double(i) * h;
            s.off[i - 1] = -face / (h * h * std::sqrt(p.x(i) * p.x(i + 1)));
        }
    }
    return s;
}

TridiagonalOperator assemble(const OracleProblem& p, const Sampled& s, double energy) {
    TridiagonalOperator t;
    const int n = p.n;
    t.diagonal.resize(n);
    for (int i = 0; i < n; ++i) t.diagonal[i] = s.base[i] - (energy - p.c) * (energy - s.v[i]);
    t.off = s.off;
    const double h = p.h();
    const double rho = tail_ratio(p, energy);
    if (p.geometry == OracleGeometry::planar) {
        const double face = double(n) * h;
        t.diagonal[n - 1] -= face * rho / (p.x(n) * h * h);
    } else if (p.geometry == OracleGeometry::radial) {
        t.diagonal[n - 1] -= rho / (h * h);
    }
    return t;
}

std::pair<double, double> gershgorin(const TridiagonalOperator& t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = t.diagonal.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.off[i - 1]);
        if (i + 1 < n) r += std::abs(t.off[i]);
        lo = std::min(lo, t.diagonal[i] - r);
        hi = std::max(hi, t.diagonal[i] + r);
    }
    return {lo, hi};
}

// The index-th eigenvalue (0-based, ascending) by bisection on Sturm counts.
double eigenvalue(const TridiagonalOperator& t, int index, double tol) {
    auto [lo, hi] = gershgorin(t);
    const double scale = std::max(std::abs(lo), std::abs(hi));
    while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) > index) hi = mid;
        else lo = mid;
        if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() * scale) break;
    }
    return 0.5 * (lo + hi);
}

std::vector<OracleLevel> levels_sturm(const OracleProblem& p, const Sampled& s,
                                      const EnergyWindow& w, const OracleOptions& opt) {
    auto count = [&](double e) { return sturm_count(assemble(p, s, e)); };
    const int scan = 64;
    std::vector<double> es(scan + 1);
    std::vector<int> cs(scan + 1);
    for (int k = 0; k <= scan; ++k) {
        es[k] = w.lo + (w.hi - w.lo) * double(k) / double(scan);
        cs[k] = count(es[k]);
        if (k > 0 && cs[k] < cs[k - 1]) {
            std::ostringstream os;
            os << "level count falls from " << cs[k - 1] << " to " << cs[k] << " between E = "
               << es[k - 1] << " and " << es[k] << "; the levels are not monotone in this window";
            throw IterationDiverged(os.str());
        }
    }
    std::vector<OracleLevel> out;
    for (int k = 0; k < scan; ++k) {
        for (int level = cs[k]; level < cs[k + 1]; ++level) {
            double a = es[k];
            double b = es[k + 1];
            while (b - a > opt.energy_tol) {
                const double mid = 0.5 * (a + b);
                if (mid <= a || mid >= b) break;
                if (count(mid) > level) b = mid;
                else a = mid;
            }
            out.push_back({0.5 * (a + b), level});
        }
    }
    return out;
}

double pick_root(double c, double mu, const EnergyWindow& w) {
    // (E - C) E = mu.
    const double disc = 0.25 * c * c + mu;
    if (disc < 0.0) {
        std::ostringstream os;
        os << "(E - C) E = " << mu << " has no real root for C = " << c;
        throw IterationDiverged(os.str());
    }
    const double r1 = 0.5 * c + std::sqrt(disc);
    const double r2 = 0.5 * c - std::sqrt(disc);
    const double mid = 0.5 * (w.lo + w.hi);
    return std::abs(r1 - mid) <= std::abs(r2 - mid) ? r1 : r2;
}

std::vector<OracleLevel> levels_fixed_point(const OracleProblem& p, const Sampled& s,
                                            const EnergyWindow& w, const OracleOptions& opt) {
    const int first = sturm_count(assemble(p, s, w.lo));
    const int last = sturm_count(assemble(p, s, w.hi));
    std::vector<OracleLevel> out;
    for (int level = first; level < last; ++level) {
        double e = 0.5 * (w.lo + w.hi);
        double prev_step = std::numeric_limits<double>::infinity();
        int growing = 0;
        bool done = false;
        for (int it = 0; it < opt.max_iterations; ++it) {
            const auto t = assemble(p, s, e);
            const double mu = eigenvalue(t, level, 1e-15) + (e - p.c) * e;
            const double next = pick_root(p.c, mu, w);
            const double step = std::abs(next - e);
            e = next;
            if (step < opt.energy_tol) {
                done = true;
                break;
            }
            growing = step >= prev_step ? growing + 1 : 0;
            if (growing >= 5) break;
            prev_step = step;
        }
        if (!done) {
            std::ostringstream os;
            os << "fixed point for level " << level << " did not contract (last E = " << e
               << "); use the sturm method or narrow the window";
            throw IterationDiverged(os.str());
        }
        out.push_back({e, level});
    }
    return out;
}

std::vector<OracleLevel> levels_on(const OracleProblem& p, const EnergyWindow& w,
                                   const OracleOptions& opt) {
    const Sampled s = sample(p);
    return opt.method == OracleMethod::sturm ? levels_sturm(p, s, w, opt)
                                             : levels_fixed_point(p, s, w, opt);
}

} // namespace

TridiagonalOperator oracle_operator(const OracleProblem& p, double energy) {
    validate(p);
    return assemble(p, sample(p), energy);
}

int sturm_count(const TridiagonalOperator& t, double shift) {
    const std::size_t n = t.diagonal.size();
    int neg = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
        q = t.diagonal[i] - shift - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) q = -std::numeric_limits<double>::min();
        if (q < 0.0) ++neg;
    }
    return neg;
}

EnergyWindow bound_window(const OracleProblem& p, const EnergyWindow& window) {
    EnergyWindow w = window;
    if (p.geometry == OracleGeometry::line) return w;
    const double far = p.v.asymptote();
    if (std::isinf(far)) {
        // Confining: bound above C when far = +inf, below when -inf.
        if (far > 0.0) w.lo = std::max(w.lo, p.c);
        else w.hi = std::min(w.hi, p.c);
        return w;
    }
    w.lo = std::max(w.lo, std::min(p.c, far));
    w.hi = std::min(w.hi, std::max(p.c, far));
    return w;
}

std::vector<OracleLevel> oracle_levels(const OracleProblem& p, const EnergyWindow& window,
                                       const OracleOptions& opt) {
    validate(p);
    if (!(window.hi > window.lo) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
        throw NoStateFound("empty or non-finite energy window");
    const EnergyWindow w = bound_window(p, window);
    if (!(w.hi > w.lo)) return {};
    auto coarse = levels_on(p, w, opt);
    if (!opt.richardson) return coarse;
    OracleProblem fine = p;
    fine.n = p.geometry == OracleGeometry::line && !p.neumann ? 2 * p.n + 1 : 2 * p.n;
    const auto refined = levels_on(fine, w, opt);
    std::map<int, double> by_nodes;
    for (const auto& l : coarse) by_nodes[l.nodes] = l.energy;
    std::vector<OracleLevel> out;
    for (const auto& l : refined) {
        const auto it = by_nodes.find(l.nodes);
        if (it == by_nodes.end()) continue;
        out.push_back({(4.0 * l.energy - it->second) / 3.0, l.nodes});
    }
    return out;
}

std::vector<OracleLevel> schrodinger_oracle(const SymmetryScenario& s, int kappa,
                                            const EnergyWindow& window, const RadialGrid& grid,
                                            std::optional<OracleOptions> opt) {
    if (s.branch == ScenarioBranch::broken)
        throw std::invalid_argument("schrodinger_oracle needs an exact symmetry branch");
    if (kappa == 0) throw std::invalid_argument("kappa must be nonzero");
    OracleProblem p;
    p.geometry = OracleGeometry::radial;
    const double k = kappa;
    if (s.branch == ScenarioBranch::spin) {
        p.v = s.v_plus();
        p.centrifugal = k * (k + 1.0);
    } else {
        p.v = s.v_minus();
        p.centrifugal = k * (k - 1.0);
    }
    p.c = s.c;
    p.length = grid.r_max;
    p.n = grid.n;
    OracleOptions o;
    o.richardson = true;
    return oracle_levels(p, window, opt.value_or(o));
}

} // namespace diracsym
