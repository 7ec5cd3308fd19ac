#ifndef HOFERCERT_CAPACITY_HPP
#define HOFERCERT_CAPACITY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hofercert/geometry.hpp"
#include "hofercert/shells.hpp"

namespace hofercert {

/// Distance potential V(q) = c |q - q_inf| whose fiberwise translation
/// recenters a momentum shell onto the zero section. The far point sits
/// 10^7 R + 1 away from q0 along the first axis, so the gradient norm is
/// exactly c throughout the valid ball B(q0, 2R) and no plateau cutoff is
/// needed there.
struct PotentialV {
    double gradient_norm = 0.0;  // c = sqrt(s_lo + 1/2^{N+2})
    Eigen::VectorXd far_point;   // q_inf
    Eigen::VectorXd center;      // q0
    double valid_radius = 0.0;   // 2R

    double value(const Eigen::VectorXd& q) const;
    Eigen::VectorXd gradient(const Eigen::VectorXd& q) const;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& q) const;
    void check_domain(const Eigen::VectorXd& q) const;  // throws outside B(q0, 2R)
};

PotentialV build_potential(int shell_index, int N, double R, const Eigen::VectorXd& q0);

/// T_V: (q, p) -> (q, p - dV(q)). Symplectic; defined on the valid ball.
CotangentPoint fiberwise_translate(const PotentialV& V, const CotangentPoint& pt);
/// T_V^{-1}: (q, p) -> (q, p + dV(q)).
CotangentPoint fiberwise_translate_inverse(const PotentialV& V, const CotangentPoint& pt);

/// The symplectomorphism induced by the exponential chart at q0. Flat
/// model: exp is affine, so (v, eta) -> (q0 + v, eta) and the operator
/// norm of (D exp)^{-1} is exactly 1.
CotangentPoint exp_induced_map(const Eigen::VectorXd& q0, const CotangentPoint& pt);

/// (q, p) -> (sqrt(R/alpha) q, sqrt(alpha/R) p); linear symplectic.
CotangentPoint linear_rescale(double R, double alpha, const CotangentPoint& pt);

/// An evaluatable symplectic map with an optional analytic Jacobian.
/// When `jacobian` is empty, use fd_jacobian.
struct PhaseMap {
    std::string kind;
    std::function<CotangentPoint(const CotangentPoint&)> forward;
    std::function<Eigen::MatrixXd(const CotangentPoint&)> jacobian;
};

PhaseMap make_fiberwise_translation(const PotentialV& V);
PhaseMap make_fiberwise_translation_inverse(const PotentialV& V);
PhaseMap make_exp_chart_map(const Eigen::VectorXd& q0);
PhaseMap make_linear_rescale(double R, double alpha);
/// Composition applying `maps` in order (maps[0] first).
PhaseMap compose(const std::vector<PhaseMap>& maps);

/// Central finite-difference Jacobian of an arbitrary phase-space map.
Eigen::MatrixXd fd_jacobian(const std::function<CotangentPoint(const CotangentPoint&)>& map,
                            const CotangentPoint& pt, double step);

/// symplectic_form_residual of the FD Jacobian at pt.
double fd_symplectic_residual(const PhaseMap& map, const CotangentPoint& pt, double step);

/// Exact integer verification that the recentred momentum interval
/// [(c-alpha)^2, (c+alpha)^2] sits inside the shell [s_lo, s_hi] for
/// alpha = (10 * 2^{N+2})^{-1}. Both inequalities reduce to
/// 400 P D <= (100 D -+ 1)^2 with D = 2^{N+2}, P = D + 4(i-1) + 1.
struct ShellFitCheck {
    bool ok = false;
    std::int64_t lhs = 0;        // 400 P D
    std::int64_t rhs_upper = 0;  // (100 D - 1)^2, the binding side
    std::int64_t rhs_lower = 0;  // (100 D + 1)^2
    double c_squared = 0.0;
    double alpha = 0.0;
};

ShellFitCheck shell_fit_exact(int N, int shell_index);

/// alpha = (10 * 2^{N+2})^{-1}, the momentum half-width of the recentred
/// shell embedding.
double shell_embedding_momentum_bound(int N);

/// Largest alpha for which the recentred interval still fits the shell,
/// sqrt(s_hi) - c. Reported for reference; the certificates use the
/// standard alpha above.
double optimal_momentum_bound(int N, int shell_index);

/// The composed ball embedding into a region, with the parameters the
/// certificate reports.
struct BallEmbedding {
    PhaseMap map;
    double ball_radius = 0.0;
    double alpha = 0.0;
    double base_radius = 0.0;
};

/// rescale -> exp chart for momentum-ball targets; additionally the
/// inverse fiberwise translation for lifted-shell targets.
BallEmbedding make_ball_embedding(const RegionSpec& target);

/// Evidence that a Euclidean ball B(0, r) of R^{2n} embeds symplectically
/// into the target region, with the capacity lower bound pi r^2 this
/// witnesses.
struct EmbeddingCertificate {
    RegionSpec target;
    double ball_radius = 0.0;
    double capacity = 0.0;  // pi * r^2 = pi * R * alpha
    double alpha = 0.0;
    double alpha_optimal = 0.0;  // shell targets only
    int samples = 0;
    int containment_violations = 0;
    double max_symplectic_residual = 0.0;
    double min_image_separation = 0.0;  // injectivity evidence on sampled pairs
    std::optional<ShellFitCheck> fit;   // shell targets only
    bool certified = false;
    std::optional<CotangentPoint> first_violation;
};

/// Composes rescale -> exp chart (-> inverse fiberwise translation, for
/// shell targets), samples the inset ball, and verifies containment,
/// symplecticity (FD residual) and sampled injectivity.
EmbeddingCertificate certify_ball_embedding(const RegionSpec& target, int samples,
                                            std::uint64_t seed, double fd_step,
                                            int symplectic_samples = 100,
                                            double symplectic_tol = 1e-6);

/// Certified capacity lower bound of a region: pi R alpha for a lifted
/// shell, pi C nu for a momentum ball. Momentum shells over the whole
/// torus are unsupported (their cover preimage has infinite capacity).
double capacity_floor(const RegionSpec& region);

}  // namespace hofercert

#endif
