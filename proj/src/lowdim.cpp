#include "diracsym/lowdim.hpp"

#include "diracsym/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace diracsym {

std::string to_string(Relation r) {
    switch (r) {
    case Relation::plus: return "plus";
    case Relation::minus: return "minus";
    case Relation::broken: return "broken";
    }
    return "?";
}

Relation relation_from_string(const std::string& s) {
    if (s == "plus") return Relation::plus;
    if (s == "minus") return Relation::minus;
    if (s == "broken") return Relation::broken;
    throw ConfigError("unknown relation '" + s + "' (expected plus, minus or broken)");
}

namespace {

TridiagonalOperator as_operator(const Assembled1D& a) { return {a.diagonal, a.upper}; }

// Gaussian elimination with partial pivoting for a tridiagonal system (the
// fill-in adds one super-diagonal). b is overwritten by the solution.
void tridiagonal_solve(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                       std::vector<double>& b) {
    const std::size_t n = d.size();
    std::vector<double> du2(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i])) {
            if (d[i] == 0.0) d[i] = std::numeric_limits<double>::min();
            const double f = dl[i] / d[i];
            d[i + 1] -= f * du[i];
            b[i + 1] -= f * b[i];
            dl[i] = 0.0;
        } else {
            const double f = d[i] / dl[i];
            d[i] = dl[i];
            const double t = d[i + 1];
            d[i + 1] = du[i] - f * t;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -f * du2[i];
            }
            du[i] = t;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f * b[i];
        }
    }
    if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::min();
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n - 2; k-- > 0;) b[k] = (b[k] - du[k] * b[k + 1] - du2[k] * b[k + 2]) / d[k];
}

// Eigenvalues in [lo, hi] by Sturm bisection, eigenvectors by inverse iteration.
struct EigenPair {
    double value;
    std::vector<double> vector;
};

std::vector<EigenPair> eigenpairs_in(const Assembled1D& a, double lo, double hi) {
    const TridiagonalOperator t = as_operator(a);
    const int first = sturm_count(t, lo);
    const int last = sturm_count(t, hi);
    double scale = 0.0;
    for (double d : a.diagonal) scale = std::max(scale, std::abs(d));
    for (double u : a.upper) scale = std::max(scale, 2.0 * std::abs(u));
    std::vector<EigenPair> out;
    const std::size_t n = a.diagonal.size();
    for (int k = first; k < last; ++k) {
        double x0 = lo;
        double x1 = hi;
        for (int it = 0; it < 200 && x1 - x0 > 4.0 * std::numeric_limits<double>::epsilon() * scale;
             ++it) {
            const double mid = 0.5 * (x0 + x1);
            if (sturm_count(t, mid) > k) x1 = mid;
            else x0 = mid;
        }
        const double lam = 0.5 * (x0 + x1);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(0.7 * double(i));
        const double shift = lam + 1e-12 * std::max(1.0, scale);
        for (int it = 0; it < 3; ++it) {
            std::vector<double> dg(a.diagonal);
            for (double& d : dg) d -= shift;
            tridiagonal_solve(a.lower, dg, a.upper, v);
            double nrm = 0.0;
            for (double x : v) nrm += x * x;
            nrm = std::sqrt(nrm);
            for (double& x : v) x /= nrm;
        }
        // Rayleigh quotient.
        double num = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double av = a.diagonal[i] * v[i];
            if (i > 0) av += a.lower[i - 1] * v[i - 1];
            if (i + 1 < n) av += a.upper[i] * v[i + 1];
            num += v[i] * av;
        }
        out.push_back({num, std::move(v)});
    }
    return out;
}

Spinor column(const SpinorMatrix& m, int c) { return m.col(c); }

bool approx_constant(const std::function<double(double)>& f, const std::vector<double>& xs,
                     double target) {
    double scale = 1.0 + std::abs(target);
    for (double x : xs)
        if (std::abs(f(x) - target) > 1e-12 * scale) return false;
    return true;
}

} // namespace

// ------------------------------------------------------------------ 1D problem

Axial1DProblem Axial1DProblem::plus(PotentialProfile v_1v, double c, AxialGrid grid) {
    Axial1DProblem p;
    p.relation = Relation::plus;
    p.c = c;
    p.v_t = v_1v.with_offset(v_1v.offset - c);
    p.v_1v = std::move(v_1v);
    p.grid = grid;
    return p;
}

Axial1DProblem Axial1DProblem::minus(PotentialProfile v_1v, double c, AxialGrid grid) {
    Axial1DProblem p;
    p.relation = Relation::minus;
    p.c = c;
    p.v_t = v_1v.scaled(-1.0).with_offset(c - v_1v.offset);
    p.v_1v = std::move(v_1v);
    p.grid = grid;
    return p;
}

Axial1DProblem Axial1DProblem::broken(PotentialProfile v_1v, double c, double amplitude,
                                      AxialGrid grid) {
    Axial1DProblem p = plus(v_1v, c, grid);
    p.relation = Relation::broken;
    p.breaking = amplitude;
    p.v_t = v_1v.with_modulation(amplitude).with_offset(v_1v.offset - c);
    return p;
}

void Axial1DProblem::validate() const {
    if (grid.n < 16) throw InvalidCoupling("1D grid needs at least 16 interior points");
    if (!(grid.length > 0.0)) throw InvalidCoupling("1D grid length must be > 0");
    if (relation == Relation::broken) return;
    std::vector<double> zs;
    for (int i = 0; i <= grid.n + 1; ++i) zs.push_back(grid.z(i));
    for (int i = 0; i <= grid.n; ++i) zs.push_back(grid.half(i));
    const bool ok = relation == Relation::plus
                        ? approx_constant([this](double z) { return v_minus(z); }, zs, c)
                        : approx_constant([this](double z) { return v_plus(z); }, zs, c);
    if (!ok) {
        std::ostringstream os;
        os << "relation " << to_string(relation) << " needs V_" << (relation == Relation::plus ? '-' : '+')
           << " = V_1v " << (relation == Relation::plus ? '-' : '+') << " V_t = C = " << c
           << " on the whole grid";
        throw InvalidCoupling(os.str());
    }
}

Assembled1D assemble_1d(const Axial1DProblem& p) {
    const int n = p.grid.n;
    const double h = p.grid.h();
    const double lo = -p.grid.length;
    const double hi = p.grid.length;
    Assembled1D a;
    a.diagonal.resize(2 * n + 1);
    a.upper.resize(2 * n);
    a.lower.resize(2 * n);
    auto avg = [](const PotentialProfile& v, double x0, double x1) { return v.cell_average(x0, x1); };
    for (int i = 0; i <= n; ++i) {
        // phi_- at half point i: cell [z_i, z_{i+1}].
        const double x0 = std::max(lo, p.grid.z(i));
        const double x1 = std::min(hi, p.grid.z(i + 1));
        a.diagonal[2 * i] = avg(p.v_1v, x0, x1) - avg(p.v_t, x0, x1);
    }
    for (int i = 1; i <= n; ++i) {
        const double x0 = p.grid.half(i - 1);
        const double x1 = p.grid.half(i);
        a.diagonal[2 * i - 1] = avg(p.v_1v, x0, x1) + avg(p.v_t, x0, x1);
    }
    for (int k = 0; k < 2 * n; ++k) {
        // Row phi_-(i) couples to phi_+(i+1) with -1/h; row phi_+(i) to phi_-(i) with +1/h.
        const double v = (k % 2 == 0) ? -1.0 / h : 1.0 / h;
        a.upper[k] = v;
        a.lower[k] = v;
    }
    return a;
}

double hermiticity_residual(const Assembled1D& a) {
    double r = 0.0;
    for (std::size_t k = 0; k < a.upper.size(); ++k) r = std::max(r, std::abs(a.upper[k] - a.lower[k]));
    return r;
}

SpinorMatrix channel_basis() {
    const SpinorMatrix o = I_unit * beta() * alpha(3);
    const SpinorMatrix p_plus = 0.5 * (identity() + o);
    SpinorMatrix u = SpinorMatrix::Zero();
    for (int s = 0; s < 2; ++s) {
        const double sign = s == 0 ? 1.0 : -1.0;
        const SpinorMatrix pi = 0.5 * (identity() + sign * sigma(3));
        Spinor e = Spinor::Zero();
        e(s) = 1.0; // e_0 has Sigma_3 = +1, e_1 has -1
        Spinor v = p_plus * pi * e;
        v /= v.norm();
        u.col(2 * s) = v;
        u.col(2 * s + 1) = I_unit * alpha(3) * v;
    }
    return u;
}

double channel_coupling_residual() {
    const SpinorMatrix u = channel_basis();
    const SpinorMatrix ops[] = {alpha(3), SpinorMatrix(I_unit * beta() * alpha(3)), identity()};
    double r = 0.0;
    for (const auto& x : ops) {
        const SpinorMatrix m = u.adjoint() * x * u;
        for (int i = 0; i < 2; ++i)
            for (int j = 2; j < 4; ++j) r = std::max({r, std::abs(m(i, j)), std::abs(m(j, i))});
    }
    return r;
}

double doubling_index(const std::vector<double>& phi) {
    double tv = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        mass += std::abs(phi[i]);
        if (i + 1 < phi.size()) tv += std::abs(phi[i + 1] - phi[i]);
    }
    return mass > 0.0 ? tv / mass : 0.0;
}

namespace {

std::vector<State1D> states_from_channels(const Axial1DProblem& p, double energy,
                                          std::vector<double> upper, std::vector<double> lower,
                                          bool staggered) {
    const int n = p.grid.n;
    const SpinorMatrix u = channel_basis();
    const bool lower_projected = p.relation == Relation::minus;
    // Normalise sum |psi|^2 h = 1 with both components.
    double norm = 0.0;
    for (double x : upper) norm += x * x;
    for (double x : lower) norm += x * x;
    norm = std::sqrt(norm * p.grid.h());
    int sign = 1;
    const auto& lead = lower_projected ? lower : upper;
    for (double x : lead) {
        if (std::abs(x) > 1e-6 * norm) {
            sign = x > 0.0 ? 1 : -1;
            break;
        }
    }
    for (double& x : upper) x *= sign / norm;
    for (double& x : lower) x *= sign / norm;

    std::vector<State1D> out;
    for (int s = 0; s < 2; ++s) {
        State1D st;
        st.energy = energy;
        st.channel = s == 0 ? 1 : -1;
        st.upper = upper;
        st.lower = lower;
        st.nodes = count_nodes(lower_projected ? lower : upper, 1e-7);
        st.doubling_index = std::max(doubling_index(upper), doubling_index(lower));
        st.spinor.resize(n);
        const Spinor vp = column(u, 2 * s);
        const Spinor vm = column(u, 2 * s + 1);
        for (int i = 0; i < n; ++i) {
            const double lo = staggered ? 0.5 * (lower[i] + lower[i + 1]) : lower[i];
            st.spinor[i] = upper[i] * vp + lo * vm;
        }
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<State1D> solve_staggered(const Axial1DProblem& p, const EnergyWindow& w) {
    const Assembled1D a = assemble_1d(p);
    const int n = p.grid.n;
    std::vector<State1D> out;
    for (auto& ep : eigenpairs_in(a, w.lo, w.hi)) {
        std::vector<double> upper(n);
        std::vector<double> lower(n + 1);
        for (int i = 0; i <= n; ++i) lower[i] = ep.vector[2 * i];
        for (int i = 1; i <= n; ++i) upper[i - 1] = ep.vector[2 * i - 1];
        for (auto& st : states_from_channels(p, ep.value, upper, lower, true)) out.push_back(std::move(st));
    }
    return out;
}

std::vector<State1D> solve_collocated(const Axial1DProblem& p, const EnergyWindow& w) {
    // Centred differences on a single lattice split into two independent
    // chains: phi_+ on odd sites with phi_- on even ones, and the reverse.
    const int n = p.grid.n;
    const double h = p.grid.h();
    std::vector<double> vp(n + 1), vm(n + 1);
    for (int i = 1; i <= n; ++i) {
        vp[i] = p.v_plus(p.grid.z(i));
        vm[i] = p.v_minus(p.grid.z(i));
    }
    std::vector<State1D> out;
    for (int chain = 0; chain < 2; ++chain) {
        // Site i carries phi_+ when (i + chain) is odd.
        Assembled1D a;
        for (int i = 1; i <= n; ++i) {
            const bool up = ((i + chain) % 2) == 1;
            a.diagonal.push_back(up ? vp[i] : vm[i]);
            if (i < n) {
                // Row phi_+(i) holds +phi_-(i+1)/(2h); row phi_-(i) holds -phi_+(i+1)/(2h).
                const double v = up ? 0.5 / h : -0.5 / h;
                a.upper.push_back(v);
                a.lower.push_back(v);
            }
        }
        for (auto& ep : eigenpairs_in(a, w.lo, w.hi)) {
            std::vector<double> upper(n, 0.0);
            std::vector<double> lower(n, 0.0);
            for (int i = 1; i <= n; ++i) {
                const bool up = ((i + chain) % 2) == 1;
                (up ? upper : lower)[i - 1] = ep.vector[i - 1];
            }
            for (auto& st : states_from_channels(p, ep.value, upper, lower, false))
                out.push_back(std::move(st));
        }
    }
    return out;
}

} // namespace

std::vector<State1D> solve_1d(const Axial1DProblem& p, const EnergyWindow& window,
                              const Options1D& opt) {
    p.validate();
    if (!(window.hi > window.lo) || !std::isfinite(window.lo) || !std::isfinite(window.hi))
        throw NoStateFound("empty or non-finite energy window");
    auto states = opt.stencil == Stencil1D::staggered ? solve_staggered(p, window)
                                                      : solve_collocated(p, window);
    for (const auto& s : states) {
        if (s.doubling_index > opt.doubling_threshold) {
            std::ostringstream os;
            os << "state at E = " << s.energy << " oscillates on the grid scale (total variation "
               << s.doubling_index << " > " << opt.doubling_threshold
               << "); the stencil produces doubled modes";
            throw DoublingDetected(os.str());
        }
    }
    if (states.empty()) {
        std::ostringstream os;
        os << "no 1D state in [" << window.lo << ", " << window.hi << "]";
        throw NoStateFound(os.str());
    }
    std::stable_sort(states.begin(), states.end(), [](const State1D& a, const State1D& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.channel > b.channel;
    });
    return states;
}

OracleProblem oracle_problem_1d(const Axial1DProblem& p) {
    // The staggered system eliminates exactly to a three-point Laplacian for
    // the projected component on its own lattice.
    Axial1DProblem exact = p;
    if (p.relation == Relation::broken) exact = Axial1DProblem::plus(p.v_1v, p.c, p.grid);
    OracleProblem o;
    o.geometry = OracleGeometry::line;
    o.length = p.grid.length;
    o.c = p.c;
    if (exact.relation == Relation::plus) {
        o.v = combine(exact.v_1v, 1.0, exact.v_t, 1.0);
        o.n = p.grid.n;
    } else {
        o.v = combine(exact.v_1v, 1.0, exact.v_t, -1.0);
        o.n = p.grid.n + 1;
        o.neumann = true;
    }
    return o;
}

double free_dispersion_error_1d(double m, double length, int n, int modes) {
    const double h = length / double(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    // Upper at i (0..n-1), lower at i + 1/2 stored at n + i; periodic.
    for (int i = 0; i < n; ++i) {
        const int up = i;
        const int lo = n + i;
        const int lo_prev = n + (i + n - 1) % n;
        const int up_next = (i + 1) % n;
        a(up, up) = m;
        a(lo, lo) = -m;
        a(up, lo) += 1.0 / h;
        a(up, lo_prev) -= 1.0 / h;
        a(lo, up_next) -= 1.0 / h;
        a(lo, up) += 1.0 / h;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    std::vector<double> positive;
    for (int i = 0; i < 2 * n; ++i)
        if (es.eigenvalues()(i) > 0.0) positive.push_back(es.eigenvalues()(i));
    std::sort(positive.begin(), positive.end());
    std::vector<double> exact;
    const double pi = std::acos(-1.0);
    exact.push_back(std::abs(m));
    for (int j = 1; int(exact.size()) < modes + 2; ++j) {
        const double k = 2.0 * pi * double(j) / length;
        const double e = std::sqrt(m * m + k * k);
        exact.push_back(e);
        exact.push_back(e);
    }
    double err = 0.0;
    for (int i = 0; i < modes && i < int(positive.size()); ++i)
        err = std::max(err, std::abs(positive[i] - exact[i]));
    return err;
}

AnticommutatorCheck anticommutator_residual_1d(const std::vector<State1D>& states,
                                               const AxialGrid& grid,
                                               const std::function<double(double)>& transverse) {
    const SpinorMatrix ba3 = beta() * alpha(3);
    const SpinorMatrix a1 = alpha(1);
    const SpinorMatrix a3 = alpha(3);
    const int nx = 33;
    const double x_half = 2.0;
    const double hx = 2.0 * x_half / double(nx - 1);
    const double hz = grid.h();
    AnticommutatorCheck out;
    for (const auto& st : states) {
        const int nz = int(st.spinor.size());
        auto psi = [&](int ix, int iz) -> Spinor {
            if (iz < 0 || iz >= nz) return Spinor::Zero();
            return transverse(-x_half + ix * hx) * st.spinor[iz];
        };
        double peak = 0.0;
        for (int iz = 0; iz < nz; ++iz)
            for (int ix = 0; ix < nx; ++ix) peak = std::max(peak, psi(ix, iz).norm());
        double worst = 0.0;
        for (int ix = 1; ix + 1 < nx; ++ix) {
            for (int iz = 0; iz < nz; ++iz) {
                // alpha . p = -i (alpha_1 d_x + alpha_3 d_z).
                auto ap = [&](const SpinorMatrix& pre) -> Spinor {
                    const Spinor dx = (pre * psi(ix + 1, iz) - pre * psi(ix - 1, iz)) / (2.0 * hx);
                    const Spinor dz = (pre * psi(ix, iz + 1) - pre * psi(ix, iz - 1)) / (2.0 * hz);
                    return -I_unit * (a1 * dx + a3 * dz);
                };
                const Spinor r = ba3 * ap(identity()) + ap(ba3);
                worst = std::max(worst, r.norm());
            }
        }
        out.max_residual = std::max(out.max_residual, peak > 0.0 ? worst / peak : 0.0);
        ++out.states;
    }
    return out;
}

// ------------------------------------------------------------------ 2D problem

Planar2DProblem Planar2DProblem::plus(PotentialProfile v_2v, double c, double m_j) {
    Planar2DProblem p;
    p.relation = Relation::plus;
    p.c = c;
    p.m_j = m_j;
    p.v_z = v_2v.with_offset(v_2v.offset - c);
    p.v_2v = std::move(v_2v);
    return p;
}

Planar2DProblem Planar2DProblem::minus(PotentialProfile v_2v, double c, double m_j) {
    Planar2DProblem p;
    p.relation = Relation::minus;
    p.c = c;
    p.m_j = m_j;
    p.v_z = v_2v.scaled(-1.0).with_offset(c - v_2v.offset);
    p.v_2v = std::move(v_2v);
    return p;
}

Planar2DProblem Planar2DProblem::broken(PotentialProfile v_2v, double c, double amplitude,
                                        double m_j) {
    Planar2DProblem p;
    p.relation = Relation::broken;
    p.c = c;
    p.m_j = m_j;
    p.breaking = amplitude;
    p.v_z = v_2v.scaled(1.0 - 0.5 * amplitude);
    p.v_z.offset -= c;
    p.v_2v = v_2v.scaled(1.0 + 0.5 * amplitude);
    return p;
}

PotentialProfile Planar2DProblem::v_plus() const { return combine(v_2v, 1.0, v_z, 1.0); }
PotentialProfile Planar2DProblem::v_minus() const { return combine(v_2v, 1.0, v_z, -1.0); }

double Planar2DProblem::kappa() const { return chirality > 0 ? -m_j : m_j; }

void Planar2DProblem::validate() const {
    const double twice = 2.0 * m_j;
    if (std::abs(twice - std::round(twice)) > 1e-12 || std::lround(twice) % 2 == 0)
        throw InvalidCoupling("m_j must be a half-integer");
    if (chirality != 1 && chirality != -1) throw InvalidCoupling("chirality must be +1 or -1");
    if (relation == Relation::broken) return;
    std::vector<double> rs;
    for (int i = 0; i < grid.n; ++i) rs.push_back(grid.r(i));
    const PotentialProfile fixed = relation == Relation::plus ? v_minus() : v_plus();
    if (!approx_constant([&](double r) { return fixed.value(r); }, rs, c)) {
        std::ostringstream os;
        os << "relation " << to_string(relation) << " needs V_" << (relation == Relation::plus ? '-' : '+')
           << " = C = " << c << " on the whole grid";
        throw InvalidCoupling(os.str());
    }
}

std::vector<State2D> solve_2d_radial(const Planar2DProblem& p, const EnergyWindow& window,
                                     const ShootingOptions& opt) {
    p.validate();
    const DiracRadialSystem sys{p.kappa(), p.v_plus(), p.v_minus()};
    const auto sols = shoot_bound_states(sys, window, p.grid, opt);
    std::vector<State2D> out;
    for (const auto& s : sols) {
        State2D st;
        st.energy = s.energy;
        st.nodes = p.relation == Relation::minus ? s.nodes_f : s.nodes;
        st.m_j = p.m_j;
        st.chirality = p.chirality;
        st.radial = s;
        out.push_back(std::move(st));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const State2D& a, const State2D& b) { return a.nodes < b.nodes; });
    return out;
}

OracleProblem oracle_problem_2d(const Planar2DProblem& p) {
    if (p.relation == Relation::broken)
        throw std::invalid_argument("the planar oracle needs an exact relation");
    OracleProblem o;
    o.geometry = OracleGeometry::planar;
    o.c = p.c;
    o.length = p.grid.r_max;
    o.n = p.grid.n;
    const double k = p.kappa();
    if (p.relation == Relation::plus) {
        o.v = p.v_plus();
        o.centrifugal = (k + 0.5) * (k + 0.5);
    } else {
        o.v = p.v_minus();
        o.centrifugal = (k - 0.5) * (k - 0.5);
    }
    return o;
}

namespace {

struct PlanarBasis {
    Spinor b1;
    Spinor b2;
};

PlanarBasis planar_basis(int chirality) {
    const double s = 1.0 / std::sqrt(2.0);
    PlanarBasis b;
    b.b1 = Spinor::Zero();
    b.b2 = Spinor::Zero();
    const double c = chirality > 0 ? 1.0 : -1.0;
    b.b1(0) = s;
    b.b1(2) = c * s;
    b.b2(1) = s;
    b.b2(3) = c * s;
    return b;
}

// Upper and lower planar amplitudes A, B from the radial G, F at point i.
std::pair<double, double> amplitudes(const State2D& s, double g, double f, double rho) {
    const double sq = std::sqrt(rho);
    if (s.chirality > 0) return {g / sq, -f / sq};
    return {-f / sq, g / sq};
}

} // namespace

Spinor planar_spinor(const State2D& s, int i, double phi) {
    const double rho = s.radial.grid.r(i);
    const auto [a, b] = amplitudes(s, s.radial.g[i], s.radial.f[i], rho);
    const double m = s.m_j - 0.5;
    const PlanarBasis pb = planar_basis(s.chirality);
    return a * std::exp(I_unit * (m * phi)) * pb.b1 + I_unit * b * std::exp(I_unit * ((m + 1.0) * phi)) * pb.b2;
}

PlanarResiduals planar_residuals(const Planar2DProblem& p, const State2D& s, int angles) {
    const auto& grid = s.radial.grid;
    const int n = grid.n;
    const double h = grid.h();
    const double m = s.m_j - 0.5;
    const PlanarBasis pb = planar_basis(s.chirality);
    std::vector<double> A(n), B(n);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto [a, b] = amplitudes(s, s.radial.g[i], s.radial.f[i], grid.r(i));
        A[i] = a;
        B[i] = b;
        peak = std::max(peak, std::abs(s.radial.g[i]) + std::abs(s.radial.f[i]));
    }
    std::vector<double> jumps;
    for (const auto& v : {p.v_z, p.v_2v})
        for (double d : v.discontinuities()) jumps.push_back(d);
    const SpinorMatrix a1 = alpha(1), a2 = alpha(2), a3 = alpha(3);
    const SpinorMatrix s3 = sigma(3);
    const SpinorMatrix g5 = gamma5();
    const double pi = std::acos(-1.0);

    PlanarResiduals out;
    double dirac_num = 0.0, dirac_den = 0.0, psi_peak = 0.0, sig = 0.0, gen = 0.0;
    for (int i = 8; i + 2 < n; ++i) {
        if (std::abs(s.radial.g[i]) + std::abs(s.radial.f[i]) < 1e-8 * peak) continue;
        const double rho = grid.r(i);
        bool near = false;
        for (double d : jumps) near = near || std::abs(rho - d) < 3.0 * h;
        if (near) continue;
        auto d5 = [&](const std::vector<double>& x) {
            return (x[i - 2] - 8.0 * x[i - 1] + 8.0 * x[i + 1] - x[i + 2]) / (12.0 * h);
        };
        const double da = d5(A), db = d5(B);
        const double vz = p.v_z.value(rho), v2 = p.v_2v.value(rho);
        for (int k = 0; k < angles; ++k) {
            const double phi = 2.0 * pi * double(k) / double(angles);
            const cplx e0 = std::exp(I_unit * (m * phi));
            const cplx e1 = std::exp(I_unit * ((m + 1.0) * phi));
            const Spinor psi = A[i] * e0 * pb.b1 + I_unit * B[i] * e1 * pb.b2;
            const Spinor d_rho = da * e0 * pb.b1 + I_unit * db * e1 * pb.b2;
            const Spinor d_phi = I_unit * m * A[i] * e0 * pb.b1 - (m + 1.0) * B[i] * e1 * pb.b2;
            const Spinor dx = std::cos(phi) * d_rho - std::sin(phi) / rho * d_phi;
            const Spinor dy = std::sin(phi) * d_rho + std::cos(phi) / rho * d_phi;
            // H2 applied to X psi, X a constant matrix.
            auto h2 = [&](const SpinorMatrix& x) -> Spinor {
                return -I_unit * (a1 * (x * dx) + a2 * (x * dy)) + vz * (a3 * (x * psi)) + v2 * (x * psi);
            };
            const Spinor hpsi = h2(identity());
            dirac_num = std::max(dirac_num, (hpsi - s.energy * psi).norm());
            dirac_den = std::max(dirac_den, (s.energy * psi).norm());
            psi_peak = std::max(psi_peak, psi.norm());
            sig = std::max(sig, (h2(s3) - s3 * hpsi).norm());
            gen = std::max(gen, (h2(g5) - g5 * hpsi).norm());
            ++out.points;
        }
    }
    out.dirac = dirac_den > 0.0 ? dirac_num / dirac_den : dirac_num;
    out.sigma3 = psi_peak > 0.0 ? sig / psi_peak : sig;
    out.generator = psi_peak > 0.0 ? gen / psi_peak : gen;
    out.p3 = 0.0; // psi carries no z dependence
    return out;
}

// ------------------------------------------------------------------ reports

void to_json(nlohmann::json& j, const LowdimSymmetryReport& r) {
    j = nlohmann::json{{"problem", r.problem},
                       {"relation", to_string(r.relation)},
                       {"states", r.states},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}};
    if (r.problem == "1d") {
        j["anticommutator"] = r.anticommutator;
    } else {
        j["sigma3_commutator"] = r.sigma3_commutator;
        j["generator_commutator"] = r.generator_commutator;
        j["p3"] = r.p3;
        j["dirac"] = r.dirac;
    }
}

LowdimSymmetryReport check_weak_symmetry_residuals(const Axial1DProblem& p,
                                                   const EnergyWindow& window) {
    const auto states = solve_1d(p, window);
    const auto chk = anticommutator_residual_1d(states, p.grid);
    LowdimSymmetryReport r;
    r.problem = "1d";
    r.relation = p.relation;
    r.states = chk.states;
    r.anticommutator = chk.max_residual;
    r.tolerance = 1e-8;
    r.pass = chk.max_residual < r.tolerance;
    return r;
}

LowdimSymmetryReport check_weak_symmetry_residuals(const Planar2DProblem& p,
                                                   const EnergyWindow& window) {
    const auto states = solve_2d_radial(p, window);
    LowdimSymmetryReport r;
    r.problem = "2d";
    r.relation = p.relation;
    r.tolerance = 1e-10;
    for (const auto& s : states) {
        const auto res = planar_residuals(p, s);
        r.sigma3_commutator = std::max(r.sigma3_commutator, res.sigma3);
        r.generator_commutator = std::max(r.generator_commutator, res.generator);
        r.p3 = std::max(r.p3, res.p3);
        r.dirac = std::max(r.dirac, res.dirac);
        ++r.states;
    }
    r.pass = r.sigma3_commutator < r.tolerance && r.generator_commutator < r.tolerance &&
             r.p3 < r.tolerance;
    return r;
}

} // namespace diracsym
