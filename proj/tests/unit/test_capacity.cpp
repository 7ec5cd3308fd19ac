#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hofercert/capacity.hpp"
#include "hofercert/rng.hpp"

using namespace hofercert;

namespace {

const Eigen::VectorXd kOrigin2 = Eigen::VectorXd::Zero(2);

CotangentPoint phase_point(const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    CotangentPoint pt;
    pt.q = q;
    pt.p = p;
    pt.chart = Chart::Cover;
    return pt;
}

}  // namespace

TEST_CASE("distance potential: unit-norm gradient scaled by c") {
    // N=2, shell 1: c = sqrt(1 + 0 + 1/16) = sqrt(17)/4.
    const PotentialV V = build_potential(1, 2, 2.0, kOrigin2);
    CHECK(V.gradient_norm == doctest::Approx(std::sqrt(17.0) / 4.0).epsilon(1e-15));
    CHECK(V.gradient_norm == doctest::Approx(1.0307764064044151).epsilon(1e-15));

    const Eigen::VectorXd at_center = V.gradient(kOrigin2);
    CHECK(at_center[0] == doctest::Approx(-V.gradient_norm).epsilon(1e-15));
    CHECK(std::abs(at_center[1]) < 1e-20);

    CHECK((V.far_point - kOrigin2).norm() >= 1e7 * 2.0);

    SampleRng rng(501u, 0u);
    for (int i = 0; i < 500; ++i) {
        const Eigen::VectorXd q = rng.in_ball(kOrigin2, 2.0 * 2.0);
        CHECK(std::abs(V.gradient(q).norm() - V.gradient_norm) < 1e-12);
    }
}

TEST_CASE("fiberwise translation: exact formula, inverse, domain guard") {
    const PotentialV V = build_potential(2, 2, 2.0, kOrigin2);

    Eigen::VectorXd q(2);
    q << 0.5, -0.3;
    const auto zeroed = fiberwise_translate(V, phase_point(q, V.gradient(q)));
    CHECK(zeroed.p.cwiseAbs().maxCoeff() == 0.0);

    SampleRng rng(502u, 0u);
    for (int i = 0; i < 100; ++i) {
        const Eigen::VectorXd base = rng.in_ball(kOrigin2, 3.9);
        Eigen::VectorXd mom(2);
        mom << rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0);
        const auto pt = phase_point(base, mom);
        const auto back = fiberwise_translate_inverse(V, fiberwise_translate(V, pt));
        CHECK((back.p - pt.p).cwiseAbs().maxCoeff() < 1e-15);
    }

    Eigen::VectorXd outside(2);
    outside << 4.5, 0.0;
    CHECK_THROWS_AS(fiberwise_translate(V, phase_point(outside, q)), std::invalid_argument);
}

TEST_CASE("fiberwise translation is symplectic (finite differences)") {
    const PotentialV V = build_potential(2, 2, 2.0, kOrigin2);
    const PhaseMap map = make_fiberwise_translation(V);
    SampleRng rng(503u, 0u);
    for (int i = 0; i < 100; ++i) {
        const auto pt = phase_point(rng.in_ball(kOrigin2, 3.5),
                                    rng.in_ball(kOrigin2, 1.5));
        CHECK(fd_symplectic_residual(map, pt, 1e-5) < 1e-6);
        // Analytic Jacobian agrees with the finite-difference one.
        const Eigen::MatrixXd gap =
            map.jacobian(pt) - fd_jacobian(map.forward, pt, 1e-5);
        CHECK(gap.cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("recentred momenta land in the shell: sampled and exact-rational") {
    // N=2, shell 1 = [1, 1.125]: q in B(q0, R), |p| < 1/160 pulls back into
    // the shell through the inverse translation.
    const double alpha = shell_embedding_momentum_bound(2);
    CHECK(alpha == doctest::Approx(1.0 / 160.0).epsilon(1e-16));

    const PotentialV V = build_potential(1, 2, 2.0, kOrigin2);
    SampleRng rng(504u, 0u);
    for (int i = 0; i < 2000; ++i) {
        const auto pt = phase_point(rng.in_ball(kOrigin2, 2.0),
                                    rng.in_ball(kOrigin2, alpha));
        const auto lifted = fiberwise_translate_inverse(V, pt);
        const double s = metric_norm_sq(lifted);
        CHECK(s >= 1.0);
        CHECK(s <= 1.125);
    }

    // Interval endpoints (c -+ alpha)^2 verified in integers.
    const auto fit = shell_fit_exact(2, 1);
    CHECK(fit.ok);
    const double c = V.gradient_norm;
    CHECK((c - alpha) * (c - alpha) >= 1.0);
    CHECK((c + alpha) * (c + alpha) <= 1.125);
}

TEST_CASE("exact shell fit: frozen integers for N=2, i=2; all shells pass") {
    const auto fit = shell_fit_exact(2, 2);
    CHECK(fit.ok);
    // D = 16, P = 21: lhs = 400*21*16, rhs = (1600 -+ 1)^2.
    CHECK(fit.lhs == 134400);
    CHECK(fit.rhs_upper == 2556801);
    CHECK(fit.rhs_lower == 2563201);
    CHECK(fit.c_squared == 1.3125);

    for (int N = 1; N <= 8; ++N)
        for (int i = 1; i <= (1 << N); ++i) CHECK(shell_fit_exact(N, i).ok);
}

TEST_CASE("exp chart map is the affine identity with unit operator norm") {
    Eigen::VectorXd q0(2);
    q0 << 0.3, 0.7;
    Eigen::VectorXd v(2), eta(2);
    v << 1.0, 0.0;
    eta << 0.0, 1.0;
    const auto image = exp_induced_map(q0, phase_point(v, eta));
    CHECK(image.q[0] == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(image.q[1] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(image.p == eta);  // momenta carried isometrically: norm bound 1 with equality

    // Box {|v| < R, |eta| < alpha} maps into the momentum ball region.
    const RegionSpec lambda = RegionSpec::low_momentum_ball(0.25, 1.5, q0);
    SampleRng rng(505u, 0u);
    for (int i = 0; i < 500; ++i) {
        const auto pt = phase_point(rng.in_ball(kOrigin2, 1.5), rng.in_ball(kOrigin2, 0.25));
        CHECK(region_contains(lambda, exp_induced_map(q0, pt)));
    }
}

TEST_CASE("linear rescale: exact arithmetic, analytic symplecticity, ball to "
          "box") {
    Eigen::VectorXd q(2), p(2);
    q << 0.1, 0.0;
    p << 0.0, 0.0;
    const auto out = linear_rescale(2.0, 1.0 / 160.0, phase_point(q, p));
    CHECK(out.q[0] == doctest::Approx(1.7888543819998317).epsilon(1e-15));
    CHECK(out.q[0] < 2.0);

    const PhaseMap map = make_linear_rescale(2.0, 1.0 / 160.0);
    const auto sample = phase_point(q, p);
    CHECK(symplectic_form_residual(map.jacobian(sample)) == 0.0);

    // B(0, sqrt(R alpha)) -> {|v| < R, |eta| < alpha}.
    const double R = 2.0, alpha = 1.0 / 160.0;
    const double r = std::sqrt(R * alpha);
    SampleRng rng(506u, 0u);
    for (int i = 0; i < 2000; ++i) {
        const Eigen::VectorXd z = rng.in_ball(Eigen::VectorXd::Zero(4), r);
        const auto mapped = linear_rescale(R, alpha, phase_point(z.head(2), z.tail(2)));
        CHECK(mapped.q.norm() < R);
        CHECK(mapped.p.norm() < alpha);
    }

    CHECK_THROWS_AS(linear_rescale(-1.0, 0.5, sample), std::invalid_argument);
}

TEST_CASE("ball embedding certificate: shell target") {
    const RegionSpec target = RegionSpec::lifted_shell(2, 2, 2.0, kOrigin2);
    const auto cert = certify_ball_embedding(target, 10000, 11u, 1e-5);
    CHECK(cert.certified);
    CHECK(cert.containment_violations == 0);
    CHECK(cert.ball_radius == doctest::Approx(std::sqrt(1.0 / 80.0)).epsilon(1e-15));
    CHECK(cert.ball_radius == doctest::Approx(0.11180339887498948).epsilon(1e-15));
    CHECK(std::abs(cert.capacity - std::numbers::pi / 80.0) < 1e-15);
    CHECK(cert.max_symplectic_residual < 1e-6);
    CHECK(cert.min_image_separation > 0.0);
    REQUIRE(cert.fit.has_value());
    CHECK(cert.fit->ok);
    CHECK(cert.alpha_optimal > cert.alpha);  // the standard alpha has slack
}

TEST_CASE("ball embedding certificate: momentum ball target and degenerate "
          "radius") {
    const RegionSpec lambda =
        RegionSpec::low_momentum_ball(1.0 / std::sqrt(2.0), 1.0, kOrigin2);
    const auto cert = certify_ball_embedding(lambda, 10000, 12u, 1e-5);
    CHECK(cert.certified);
    CHECK(cert.containment_violations == 0);
    CHECK(std::abs(cert.capacity - std::numbers::pi / std::sqrt(2.0)) < 1e-15);
    CHECK(cert.capacity == doctest::Approx(2.2214414690791831).epsilon(1e-15));

    const RegionSpec tiny = RegionSpec::lifted_shell(2, 2, 1e-9, kOrigin2);
    const auto small_cert = certify_ball_embedding(tiny, 500, 13u, 1e-5);
    CHECK(small_cert.certified);
    CHECK(small_cert.capacity > 0.0);
    CHECK(small_cert.capacity < 1e-10);
}

TEST_CASE("capacity floor: closed forms and the binding side") {
    const RegionSpec shell_region = RegionSpec::lifted_shell(2, 2, 2.0, kOrigin2);
    CHECK(std::abs(capacity_floor(shell_region) - std::numbers::pi / 80.0) < 1e-15);

    const RegionSpec lambda =
        RegionSpec::low_momentum_ball(1.0 / std::sqrt(2.0), 1.0, kOrigin2);
    CHECK(std::abs(capacity_floor(lambda) - std::numbers::pi / std::sqrt(2.0)) < 1e-15);

    // The shell side is the minimum for every N: 10 * 2^{N+2} > 2 sqrt(2).
    for (int N = 1; N <= 8; ++N) {
        const double R = 2.0;
        const RegionSpec shell_n = RegionSpec::lifted_shell(N, 1, R, kOrigin2);
        const RegionSpec ball_n =
            RegionSpec::low_momentum_ball(1.0 / std::sqrt(2.0), R / 2.0, kOrigin2);
        CHECK(capacity_floor(shell_n) < capacity_floor(ball_n));
    }

    CHECK_THROWS_AS(capacity_floor(RegionSpec::shell(2, 1, 2)), std::invalid_argument);
}

TEST_CASE("composed embedding matches capacity_floor bitwise and is injective "
          "on sampled pairs") {
    const RegionSpec target = RegionSpec::lifted_shell(3, 5, 1.5, kOrigin2);
    const auto cert = certify_ball_embedding(target, 3000, 14u, 1e-5);
    CHECK(cert.certified);
    CHECK(cert.capacity == capacity_floor(target));  // same expression on both paths
    CHECK(cert.min_image_separation > 0.0);

    // Distinct inputs stay distinct through the composition.
    const BallEmbedding embedding = make_ball_embedding(target);
    SampleRng rng(507u, 0u);
    for (int i = 0; i < 500; ++i) {
        const Eigen::VectorXd z1 =
            rng.in_ball(Eigen::VectorXd::Zero(4), embedding.ball_radius * (1 - 1e-9));
        const Eigen::VectorXd z2 =
            rng.in_ball(Eigen::VectorXd::Zero(4), embedding.ball_radius * (1 - 1e-9));
        if ((z1 - z2).norm() < 1e-12) continue;
        const auto y1 = embedding.map.forward(phase_point(z1.head(2), z1.tail(2)));
        const auto y2 = embedding.map.forward(phase_point(z2.head(2), z2.tail(2)));
        const double separation = (y1.q - y2.q).norm() + (y1.p - y2.p).norm();
        CHECK(separation > 0.0);
    }
}
