#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace diracsym {

using cplx = std::complex<double>;
using SpinorMatrix = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;
using Vec3 = std::array<double, 3>;

inline constexpr cplx I_unit{0.0, 1.0};

/// Default absolute tolerance on matrix entries for floating-point residuals.
inline constexpr double kEntryTol = 1e-12;

/// Chebyshev norm: largest absolute entry.
double max_abs(const SpinorMatrix& m);
bool is_hermitian(const SpinorMatrix& m, double tol = 0.0);

SpinorMatrix anticommutator(const SpinorMatrix& a, const SpinorMatrix& b);
SpinorMatrix commutator(const SpinorMatrix& a, const SpinorMatrix& b);

// Dirac (standard) representation. Entries are 0, +-1, +-i, so every product
// of these matrices is exact in double precision.
SpinorMatrix identity();
SpinorMatrix gamma(int mu); // mu = 0..3
SpinorMatrix gamma5();      // i g0 g1 g2 g3
SpinorMatrix beta();        // g0
SpinorMatrix alpha(int i);  // g0 g^i, i = 1..3
SpinorMatrix sigma(int i);  // g5 alpha_i, i = 1..3

/// a . alpha and a . Sigma for a real 3-vector.
SpinorMatrix alpha_dot(const Vec3& a);
SpinorMatrix sigma_dot(const Vec3& a);

Vec3 cross(const Vec3& a, const Vec3& b);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

struct BasisElement {
    std::string label;          // e.g. "g0g5"
    SpinorMatrix product;       // the bare gamma product
    int gamma_count = 0;        // number of distinct gamma^mu factors (g5 counts 4)
    cplx hermitian_phase{1.0};  // 1 or i, so that phase * product is Hermitian
    SpinorMatrix hermitian;     // hermitian_phase * product
    std::string hermitian_label;
};

/// The 16 products {I, g^mu, sigma^{mu nu}, g^mu g5, g5}.
struct GammaBasis {
    std::vector<BasisElement> elements;

    /// Expansion coefficients c_a = Tr(B_a^dagger M) / 4 over the bare products.
    std::array<cplx, 16> coefficients(const SpinorMatrix& m) const;
};

GammaBasis build_gamma_basis();

/// Structural conditions a coupling matrix O must satisfy for the
/// projector construction and the SU(2) generators to exist.
struct ConditionReport {
    bool involutory = false;             // O^2 = I
    bool anticommutes_with_alpha = false; // {alpha_i, O} = 0, i = 1..3
    bool commutes_with_sigma = false;     // [O, Sigma_i] = 0, i = 1..3
    bool odd_gamma_count = false;         // O lies in the span of odd products
    double involution_residual = 0.0;
    double alpha_residual = 0.0;
    double sigma_residual = 0.0;
    double even_part = 0.0;
    /// Largest entry over all violated relations (0 when all hold).
    double max_residual = 0.0;

    bool strict() const {
        return involutory && anticommutes_with_alpha && commutes_with_sigma &&
               odd_gamma_count;
    }
    /// (anticommutes_with_alpha and odd) => commutes_with_sigma.
    bool implication_consistent() const {
        return !(anticommutes_with_alpha && odd_gamma_count) || commutes_with_sigma;
    }
};

/// Throws NonHermitianInput when O != O^dagger (beyond tol).
ConditionReport check_O_conditions(const SpinorMatrix& o, double tol = kEntryTol);

struct NamedMatrix {
    std::string label;
    SpinorMatrix matrix;
};

/// Scans the Hermitian-phased basis and keeps those passing every strict condition.
std::vector<NamedMatrix> enumerate_strict_candidates(const GammaBasis& basis);

enum class WeakKind { lambda_alpha, i_beta_lambda_alpha };

std::string to_string(WeakKind k);

/// Weak (reduced-dimension) couplings O = lambda.alpha and O = i beta lambda.alpha.
struct WeakConditionReport {
    WeakKind kind = WeakKind::lambda_alpha;
    bool involutory = false;
    /// Norm of [lambda.alpha, eps.Sigma] (or with the beta factor for the tensor case).
    double epsilon_commutator = 0.0;
    /// Deviation of that commutator from its closed form 2i (lambda x eps).(alpha | beta alpha).
    double epsilon_identity_residual = 0.0;
    /// |lambda . p| for lambda.alpha; norm of {beta lambda.alpha, alpha.p} for the tensor case.
    double momentum_residual = 0.0;
    /// Deviation of {beta lambda.alpha, alpha.p} from 2i beta (lambda x p).Sigma (tensor case only).
    double momentum_identity_residual = 0.0;
    double max_residual = 0.0;

    bool satisfied(double tol = kEntryTol) const {
        return involutory && epsilon_commutator <= tol && momentum_residual <= tol &&
               epsilon_identity_residual <= tol && momentum_identity_residual <= tol;
    }
};

/// O must equal lambda.alpha or i beta lambda.alpha for the supplied unit lambda;
/// otherwise InvalidCoupling. InvalidLambda when |lambda| != 1.
WeakConditionReport check_weak_conditions(const SpinorMatrix& o, const Vec3& lambda,
                                          const Vec3& epsilon, const Vec3& p,
                                          double tol = kEntryTol);

/// Max entry of (a.alpha)(b.alpha) - [a.b I + i (a x b).Sigma].
double alpha_identity_residual(const Vec3& a, const Vec3& b);

} // namespace diracsym
