#include "diracsym/clifford.hpp"

#include "diracsym/errors.hpp"

#include <cmath>

namespace diracsym {

namespace {

Eigen::Matrix2cd pauli(int i) {
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
    switch (i) {
    case 1:
        s(0, 1) = 1.0;
        s(1, 0) = 1.0;
        break;
    case 2:
        s(0, 1) = -I_unit;
        s(1, 0) = I_unit;
        break;
    case 3:
        s(0, 0) = 1.0;
        s(1, 1) = -1.0;
        break;
    default:
        throw std::out_of_range("pauli index must be 1..3");
    }
    return s;
}

SpinorMatrix blocks(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b,
                    const Eigen::Matrix2cd& c, const Eigen::Matrix2cd& d) {
    SpinorMatrix m;
    m << a, b, c, d;
    return m;
}

} // namespace

double max_abs(const SpinorMatrix& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const SpinorMatrix& m, double tol) {
    return max_abs(m - m.adjoint()) <= tol;
}

SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b) {
    return a * b + b * a;
}

SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b) {
    return a * b - b * a;
}

SpinorMatrix identity() { return SpinorMatrix::Identity(); }

SpinorMatrix gamma(int mu) {
    const Eigen::Matrix2cd z = Eigen::Matrix2cd::Zero();
    const Eigen::Matrix2cd one = Eigen::Matrix2cd::Identity();
    if (mu == 0) return blocks(one, z, z, -one);
    if (mu >= 1 && mu <= 3) return blocks(z, pauli(mu), -pauli(mu), z);
    throw std::out_of_range("gamma index must be 0..3");
}

SpinorMatrix gamma5() { return I_unit * gamma(0) * gamma(1) * gamma(2) * gamma(3); }

SpinorMatrix beta() { return gamma(0); }

SpinorMatrix alpha(int i) { return gamma(0) * gamma(i); }

SpinorMatrix sigma(int i) { return gamma5() * alpha(i); }

SpinorMatrix alpha_dot(const Vec3& a) {
    return a[0] * alpha(1) + a[1] * alpha(2) + a[2] * alpha(3);
}

SpinorMatrix sigma_dot(const Vec3& a) {
    return a[0] * sigma(1) + a[1] * sigma(2) + a[2] * sigma(3);
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

std::array<cplx, 16> GammaBasis::coefficients(const SpinorMatrix& m) const {
    std::array<cplx, 16> c{};
    for (std::size_t a = 0; a < elements.size() && a < 16; ++a)
        c[a] = (elements[a].product.adjoint() * m).trace() / 4.0;
    return c;
}

GammaBasis build_gamma_basis() {
    GammaBasis basis;
    auto add = [&](std::string label, const SpinorMatrix& m, int count) {
        BasisElement e;
        e.label = std::move(label);
        e.product = m;
        e.gamma_count = count;
        if (is_hermitian(m)) {
            e.hermitian_phase = 1.0;
            e.hermitian_label = e.label;
        } else {
            e.hermitian_phase = I_unit;
            e.hermitian_label = "i*" + e.label;
        }
        e.hermitian = e.hermitian_phase * m;
        basis.elements.push_back(std::move(e));
    };

    add("I", identity(), 0);
    for (int mu = 0; mu < 4; ++mu) add("g" + std::to_string(mu), gamma(mu), 1);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu)
            add("g" + std::to_string(mu) + "g" + std::to_string(nu),
                gamma(mu) * gamma(nu), 2);
    for (int mu = 0; mu < 4; ++mu)
        add("g" + std::to_string(mu) + "g5", gamma(mu) * gamma5(), 3);
    add("g5", gamma5(), 4);
    return basis;
}

ConditionReport check_O_conditions(const SpinorMatrix& o, double tol) {
    if (!is_hermitian(o, tol))
        throw NonHermitianInput("coupling matrix O must equal its adjoint (max |O - O^+| = " +
                                std::to_string(max_abs(o - o.adjoint())) + ")");

    ConditionReport r;
    r.involution_residual = max_abs(o * o - identity());
    for (int i = 1; i <= 3; ++i) {
        r.alpha_residual = std::max(r.alpha_residual, max_abs(anticommutator(alpha(i), o)));
        r.sigma_residual = std::max(r.sigma_residual, max_abs(commutator(o, sigma(i))));
    }
    static const GammaBasis basis = build_gamma_basis();
    const auto c = basis.coefficients(o);
    for (std::size_t a = 0; a < 16; ++a)
        if (basis.elements[a].gamma_count % 2 == 0) r.even_part = std::max(r.even_part, std::abs(c[a]));

    r.involutory = r.involution_residual <= tol;
    r.anticommutes_with_alpha = r.alpha_residual <= tol;
    r.commutes_with_sigma = r.sigma_residual <= tol;
    r.odd_gamma_count = r.even_part <= tol;

    if (!r.involutory) r.max_residual = std::max(r.max_residual, r.involution_residual);
    if (!r.anticommutes_with_alpha) r.max_residual = std::max(r.max_residual, r.alpha_residual);
    if (!r.commutes_with_sigma) r.max_residual = std::max(r.max_residual, r.sigma_residual);
    if (!r.odd_gamma_count) r.max_residual = std::max(r.max_residual, r.even_part);
    return r;
}

std::vector<NamedMatrix> enumerate_strict_candidates(const GammaBasis& basis) {
    std::vector<NamedMatrix> out;
    for (const auto& e : basis.elements) {
        const auto report = check_O_conditions(e.hermitian, 0.0);
        if (report.strict()) out.push_back({e.hermitian_label, e.hermitian});
    }
    return out;
}

std::string to_string(WeakKind k) {
    return k == WeakKind::lambda_alpha ? "lambda.alpha" : "i*beta*lambda.alpha";
}

WeakConditionReport check_weak_conditions(const SpinorMatrix& o, const Vec3& lambda,
                                          const Vec3& epsilon, const Vec3& p, double tol) {
    if (std::abs(norm(lambda) - 1.0) > 1e-12)
        throw InvalidLambda("lambda must be a unit vector, |lambda| = " +
                            std::to_string(norm(lambda)));

    const SpinorMatrix la = alpha_dot(lambda);
    const SpinorMatrix tensor = I_unit * beta() * la;

    WeakConditionReport r;
    if (max_abs(o - la) <= tol) {
        r.kind = WeakKind::lambda_alpha;
    } else if (max_abs(o - tensor) <= tol) {
        r.kind = WeakKind::i_beta_lambda_alpha;
    } else {
        throw InvalidCoupling("O is neither lambda.alpha nor i*beta*lambda.alpha for the given lambda");
    }

    r.involutory = max_abs(o * o - identity()) <= tol;
    const SpinorMatrix es = sigma_dot(epsilon);
    const Vec3 lxe = cross(lambda, epsilon);

    if (r.kind == WeakKind::lambda_alpha) {
        const SpinorMatrix comm = commutator(la, es);
        r.epsilon_commutator = max_abs(comm);
        r.epsilon_identity_residual = max_abs(comm - 2.0 * I_unit * alpha_dot(lxe));
        r.momentum_residual = std::abs(dot(lambda, p));
    } else {
        const SpinorMatrix bla = beta() * la;
        const SpinorMatrix comm = commutator(bla, es);
        r.epsilon_commutator = max_abs(comm);
        r.epsilon_identity_residual = max_abs(comm - 2.0 * I_unit * beta() * alpha_dot(lxe));
        const SpinorMatrix anti = anticommutator(bla, alpha_dot(p));
        r.momentum_residual = max_abs(anti);
        r.momentum_identity_residual =
            max_abs(anti - 2.0 * I_unit * beta() * sigma_dot(cross(lambda, p)));
    }
    r.max_residual = std::max({r.epsilon_commutator, r.epsilon_identity_residual,
                               r.momentum_residual, r.momentum_identity_residual});
    return r;
}

double alpha_identity_residual(const Vec3& a, const Vec3& b) {
    const SpinorMatrix lhs = alpha_dot(a) * alpha_dot(b);
    const SpinorMatrix rhs = dot(a, b) * identity() + I_unit * sigma_dot(cross(a, b));
    return max_abs(lhs - rhs);
}

} // namespace diracsym
