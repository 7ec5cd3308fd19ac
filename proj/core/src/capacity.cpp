#include "hofercert/capacity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hofercert/rng.hpp"

namespace hofercert {

double PotentialV::value(const Eigen::VectorXd& q) const {
    return gradient_norm * (q - far_point).norm();
}

Eigen::VectorXd PotentialV::gradient(const Eigen::VectorXd& q) const {
    const Eigen::VectorXd d = q - far_point;
    return gradient_norm / d.norm() * d;
}

Eigen::MatrixXd PotentialV::hessian(const Eigen::VectorXd& q) const {
    const Eigen::VectorXd d = q - far_point;
    const double r = d.norm();
    const Eigen::VectorXd u = d / r;
    const int n = static_cast<int>(q.size());
    return gradient_norm / r * (Eigen::MatrixXd::Identity(n, n) - u * u.transpose());
}

void PotentialV::check_domain(const Eigen::VectorXd& q) const {
    if ((q - center).norm() >= valid_radius)
        throw std::invalid_argument("PotentialV: point outside the valid ball B(q0, 2R)");
}

PotentialV build_potential(int shell_index, int N, double R, const Eigen::VectorXd& q0) {
    if (!(R > 0.0)) throw std::invalid_argument("build_potential: R must be positive");
    const auto shells = build_shells(N);
    const ShellSpec shell = shells.at(static_cast<std::size_t>(shell_index) - 1);

    PotentialV V;
    V.gradient_norm = std::sqrt(shell.s_lo + std::ldexp(1.0, -(N + 2)));
    V.center = q0;
    V.valid_radius = 2.0 * R;
    V.far_point = q0;
    V.far_point[0] += 1e7 * R + 1.0;
    return V;
}

CotangentPoint fiberwise_translate(const PotentialV& V, const CotangentPoint& pt) {
    V.check_domain(pt.q);
    CotangentPoint out = pt;
    out.p -= V.gradient(pt.q);
    return out;
}

CotangentPoint fiberwise_translate_inverse(const PotentialV& V, const CotangentPoint& pt) {
    V.check_domain(pt.q);
    CotangentPoint out = pt;
    out.p += V.gradient(pt.q);
    return out;
}

CotangentPoint exp_induced_map(const Eigen::VectorXd& q0, const CotangentPoint& pt) {
    CotangentPoint out = pt;
    out.q += q0;
    return out;
}

CotangentPoint linear_rescale(double R, double alpha, const CotangentPoint& pt) {
    if (!(R > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("linear_rescale: parameters must be positive");
    CotangentPoint out = pt;
    const double base_scale = std::sqrt(R / alpha);
    out.q *= base_scale;
    out.p /= base_scale;
    return out;
}

PhaseMap make_fiberwise_translation(const PotentialV& V) {
    PhaseMap map;
    map.kind = "fiberwise_translation";
    map.forward = [V](const CotangentPoint& pt) { return fiberwise_translate(V, pt); };
    map.jacobian = [V](const CotangentPoint& pt) {
        const int n = pt.dim();
        Eigen::MatrixXd J = Eigen::MatrixXd::Identity(2 * n, 2 * n);
        J.bottomLeftCorner(n, n) = -V.hessian(pt.q);
        return J;
    };
    return map;
}

PhaseMap make_fiberwise_translation_inverse(const PotentialV& V) {
    PhaseMap map;
    map.kind = "fiberwise_translation_inverse";
    map.forward = [V](const CotangentPoint& pt) { return fiberwise_translate_inverse(V, pt); };
    map.jacobian = [V](const CotangentPoint& pt) {
        const int n = pt.dim();
        Eigen::MatrixXd J = Eigen::MatrixXd::Identity(2 * n, 2 * n);
        J.bottomLeftCorner(n, n) = V.hessian(pt.q);
        return J;
    };
    return map;
}

PhaseMap make_exp_chart_map(const Eigen::VectorXd& q0) {
    PhaseMap map;
    map.kind = "exp_chart";
    map.forward = [q0](const CotangentPoint& pt) { return exp_induced_map(q0, pt); };
    map.jacobian = [q0](const CotangentPoint& pt) {
        return Eigen::MatrixXd::Identity(2 * pt.dim(), 2 * pt.dim()).eval();
    };
    return map;
}

PhaseMap make_linear_rescale(double R, double alpha) {
    if (!(R > 0.0) || !(alpha > 0.0))
        throw std::invalid_argument("make_linear_rescale: parameters must be positive");
    PhaseMap map;
    map.kind = "linear_rescale";
    map.forward = [R, alpha](const CotangentPoint& pt) { return linear_rescale(R, alpha, pt); };
    map.jacobian = [R, alpha](const CotangentPoint& pt) {
        const int n = pt.dim();
        const double base_scale = std::sqrt(R / alpha);
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        J.topLeftCorner(n, n) = base_scale * Eigen::MatrixXd::Identity(n, n);
        J.bottomRightCorner(n, n) = 1.0 / base_scale * Eigen::MatrixXd::Identity(n, n);
        return J;
    };
    return map;
}

PhaseMap compose(const std::vector<PhaseMap>& maps) {
    if (maps.empty()) throw std::invalid_argument("compose: empty map list");
    PhaseMap out;
    out.kind = "composition";
    bool analytic = true;
    for (const auto& m : maps) analytic = analytic && static_cast<bool>(m.jacobian);
    out.forward = [maps](const CotangentPoint& pt) {
        CotangentPoint cur = pt;
        for (const auto& m : maps) cur = m.forward(cur);
        return cur;
    };
    if (analytic) {
        out.jacobian = [maps](const CotangentPoint& pt) {
            CotangentPoint cur = pt;
            Eigen::MatrixXd J = Eigen::MatrixXd::Identity(2 * pt.dim(), 2 * pt.dim());
            for (const auto& m : maps) {
                J = (m.jacobian(cur) * J).eval();
                cur = m.forward(cur);
            }
            return J;
        };
    }
    return out;
}

Eigen::MatrixXd fd_jacobian(const std::function<CotangentPoint(const CotangentPoint&)>& map,
                            const CotangentPoint& pt, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("fd_jacobian: step must be positive");
    const int n = pt.dim();
    Eigen::MatrixXd J(2 * n, 2 * n);
    for (int col = 0; col < 2 * n; ++col) {
        CotangentPoint plus = pt, minus = pt;
        if (col < n) {
            plus.q[col] += step;
            minus.q[col] -= step;
        } else {
            plus.p[col - n] += step;
            minus.p[col - n] -= step;
        }
        const CotangentPoint fp = map(plus), fm = map(minus);
        for (int row = 0; row < n; ++row) {
            J(row, col) = (fp.q[row] - fm.q[row]) / (2.0 * step);
            J(n + row, col) = (fp.p[row] - fm.p[row]) / (2.0 * step);
        }
    }
    return J;
}

double fd_symplectic_residual(const PhaseMap& map, const CotangentPoint& pt, double step) {
    return symplectic_form_residual(fd_jacobian(map.forward, pt, step));
}

ShellFitCheck shell_fit_exact(int N, int shell_index) {
    if (N < 1 || N > kMaxFamilySize) throw std::invalid_argument("shell_fit_exact: N out of range");
    if (shell_index < 1 || shell_index > (1 << N))
        throw std::invalid_argument("shell_fit_exact: shell index out of range");

    const std::int64_t D = std::int64_t{1} << (N + 2);
    const std::int64_t P = D + 4 * (shell_index - 1) + 1;  // c^2 = P / D

    ShellFitCheck check;
    check.lhs = 400 * P * D;
    check.rhs_upper = (100 * D - 1) * (100 * D - 1);
    check.rhs_lower = (100 * D + 1) * (100 * D + 1);
    check.ok = check.lhs <= check.rhs_upper && check.lhs <= check.rhs_lower;
    check.c_squared = static_cast<double>(P) / static_cast<double>(D);
    check.alpha = shell_embedding_momentum_bound(N);
    return check;
}

double shell_embedding_momentum_bound(int N) {
    return 1.0 / (10.0 * std::ldexp(1.0, N + 2));
}

double optimal_momentum_bound(int N, int shell_index) {
    const auto shell = build_shells(N).at(static_cast<std::size_t>(shell_index) - 1);
    const double c = std::sqrt(shell.s_lo + std::ldexp(1.0, -(N + 2)));
    return std::sqrt(shell.s_hi) - c;
}

BallEmbedding make_ball_embedding(const RegionSpec& target) {
    target.validate();
    BallEmbedding out;
    std::vector<PhaseMap> stages;
    switch (target.kind) {
        case RegionKind::LiftedShell: {
            out.base_radius = target.base_radius;
            out.alpha = shell_embedding_momentum_bound(target.N);
            const PotentialV V =
                build_potential(target.shell_index, target.N, out.base_radius, target.center);
            stages.push_back(make_linear_rescale(out.base_radius, out.alpha));
            stages.push_back(make_exp_chart_map(target.center));
            stages.push_back(make_fiberwise_translation_inverse(V));
            break;
        }
        case RegionKind::LowMomentumBall:
            out.base_radius = target.base_radius;
            out.alpha = target.momentum_bound;
            stages.push_back(make_linear_rescale(out.base_radius, out.alpha));
            stages.push_back(make_exp_chart_map(target.center));
            break;
        case RegionKind::Shell:
            throw std::invalid_argument(
                "make_ball_embedding: whole-torus shells are not embedding targets");
    }
    out.map = compose(stages);
    out.ball_radius = std::sqrt(out.base_radius * out.alpha);
    return out;
}

EmbeddingCertificate certify_ball_embedding(const RegionSpec& target, int samples,
                                            std::uint64_t seed, double fd_step,
                                            int symplectic_samples, double symplectic_tol) {
    if (samples < 1) throw std::invalid_argument("certify_ball_embedding: samples must be >= 1");

    const int n = static_cast<int>(target.center.size());
    const BallEmbedding built = make_ball_embedding(target);
    const PhaseMap& embedding = built.map;

    EmbeddingCertificate cert;
    cert.target = target;
    cert.samples = samples;
    cert.alpha = built.alpha;
    if (target.kind == RegionKind::LiftedShell) {
        cert.alpha_optimal = optimal_momentum_bound(target.N, target.shell_index);
        cert.fit = shell_fit_exact(target.N, target.shell_index);
    }
    cert.ball_radius = built.ball_radius;
    cert.capacity = std::numbers::pi * built.base_radius * built.alpha;

    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2 * n);
    const double inset_radius = cert.ball_radius * (1.0 - 1e-9);
    cert.min_image_separation = std::numeric_limits<double>::infinity();
    CotangentPoint previous_image;
    bool have_previous = false;

    for (int i = 0; i < samples; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Eigen::VectorXd z = rng.in_ball(origin, inset_radius);
        CotangentPoint ball_pt;
        ball_pt.q = z.head(n);
        ball_pt.p = z.tail(n);
        ball_pt.chart = Chart::Cover;

        const CotangentPoint image = embedding.forward(ball_pt);
        if (!region_contains(target, image)) {
            ++cert.containment_violations;
            if (!cert.first_violation) cert.first_violation = image;
        }
        if (have_previous) {
            const double sep = (image.q - previous_image.q).norm() +
                               (image.p - previous_image.p).norm();
            cert.min_image_separation = std::min(cert.min_image_separation, sep);
        }
        previous_image = image;
        have_previous = true;

        if (i < symplectic_samples) {
            // The FD stencil must stay inside the valid ball of the
            // fiberwise translation; for tiny regions fall back to the
            // analytic Jacobian the descriptor carries.
            const bool stencil_fits = built.base_radius > 1e3 * fd_step;
            const double residual =
                (stencil_fits || !embedding.jacobian)
                    ? fd_symplectic_residual(embedding, ball_pt, fd_step)
                    : symplectic_form_residual(embedding.jacobian(ball_pt));
            cert.max_symplectic_residual = std::max(cert.max_symplectic_residual, residual);
        }
    }
    if (samples < 2) cert.min_image_separation = 0.0;

    const bool fit_ok = !cert.fit || cert.fit->ok;
    cert.certified = fit_ok && cert.containment_violations == 0 &&
                     cert.max_symplectic_residual < symplectic_tol;
    return cert;
}

double capacity_floor(const RegionSpec& region) {
    switch (region.kind) {
        case RegionKind::LiftedShell:
            return std::numbers::pi * region.base_radius *
                   shell_embedding_momentum_bound(region.N);
        case RegionKind::LowMomentumBall:
            return std::numbers::pi * region.base_radius * region.momentum_bound;
        case RegionKind::Shell:
            throw std::invalid_argument("capacity_floor: unsupported region kind");
    }
    return 0.0;
}

}  // namespace hofercert
