#include <cmath>

#include <doctest.h>

#include "hofercert/dynamics.hpp"
#include "hofercert/rng.hpp"

using namespace hofercert;

namespace {

CotangentPoint cover_point(std::initializer_list<double> q, std::initializer_list<double> p) {
    CotangentPoint pt;
    pt.q.resize(static_cast<Eigen::Index>(q.size()));
    pt.p.resize(static_cast<Eigen::Index>(p.size()));
    Eigen::Index i = 0;
    for (double v : q) pt.q[i++] = v;
    i = 0;
    for (double v : p) pt.p[i++] = v;
    pt.chart = Chart::Cover;
    return pt;
}

CotangentPoint on_shell_point(int N, int shell_index, std::uint64_t seed, std::uint64_t stream) {
    CotangentPoint pt = sample_region_point(RegionSpec::shell(N, shell_index, 2), seed, stream);
    pt.chart = Chart::Cover;
    return pt;
}

}  // namespace

TEST_CASE("energy evaluation") {
    const HamiltonianFamily family(1);
    const auto h1 = family.generator(1);

    CotangentPoint pt = cover_point({0, 0}, {std::sqrt(0.4), 0});
    CHECK(h1.energy(pt) == 0.0);  // below the support

    pt.p << std::sqrt(1.2), 0.0;  // shell 1, sign -1
    CHECK(h1.energy(pt) == doctest::Approx(-0.6).epsilon(1e-15));

    const auto geodesic = RadialHamiltonian::geodesic_energy();
    pt.p << std::sqrt(1.3), 0.0;
    CHECK(geodesic.energy(pt) == doctest::Approx(0.65).epsilon(1e-15));
}

TEST_CASE("exact flow: geodesic drift, fixed points below the support") {
    const auto geodesic = RadialHamiltonian::geodesic_energy();
    const auto moved = exact_flow(geodesic, 1.0, cover_point({0, 0}, {1, 0}));
    CHECK(moved.q[0] == 1.0);
    CHECK(moved.q[1] == 0.0);
    CHECK(moved.p[0] == 1.0);

    const HamiltonianFamily family(2);
    const auto frozen = exact_flow(family.generator(1), 3.7, cover_point({0.2, 0.4}, {0.5, 0.2}));
    CHECK(frozen.q[0] == 0.2);  // |p|^2 = 0.29 < 1/2: the Hamiltonian vanishes
    CHECK(frozen.q[1] == 0.4);

    // On a +1 shell the drift is exactly t p.
    const auto profile = family.profile(1);
    for (const auto& shell : family.shells()) {
        if (profile.shell_sign(shell.index) != 1.0) continue;
        const auto pt = on_shell_point(2, shell.index, 3u, 5u);
        const auto out = exact_flow(family.generator(1), 0.75, pt);
        CHECK((out.q - (pt.q + 0.75 * pt.p)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("flow of a weighted sum: identity at zero, geodesic speed l on the "
          "matched shell") {
    const HamiltonianFamily family(2);
    LatticeElement zero;
    zero.a = Eigen::VectorXi::Zero(2);
    const auto pt = cover_point({0.3, -0.2}, {1.1, 0.4});
    const auto fixed = exact_flow_sum(family, zero, 1.0, pt);
    CHECK(fixed.q == pt.q);
    CHECK(fixed.p == pt.p);

    // Both entries negative selects shell 1; |p| = 1.03 lies inside it and
    // the time-1 drift has speed l = 8.
    const auto a = LatticeElement::of({-3, -5});
    const auto start = cover_point({0.1, 0.2}, {1.03, 0.0});
    REQUIRE(metric_norm_sq(start) == doctest::Approx(1.0609).epsilon(1e-15));
    const auto out = exact_flow_sum(family, a, 1.0, start);
    CHECK(cover_distance(out.q, start.q) == doctest::Approx(8.24).epsilon(1e-14));
    CHECK((out.q - (start.q + 8.0 * start.p)).cwiseAbs().maxCoeff() == 0.0);

    // Mixed signs select shell 2 = [1.25, 1.375]; displacement is l |p|.
    const auto mixed = LatticeElement::of({3, -5});
    const auto start2 = cover_point({0.0, 0.0}, {std::sqrt(1.3), 0.0});
    const auto out2 = exact_flow_sum(family, mixed, 1.0, start2);
    CHECK(cover_distance(out2.q, start2.q) ==
          doctest::Approx(8.0 * std::sqrt(1.3)).epsilon(1e-14));
}

TEST_CASE("generator flows compose to the flow of the sum") {
    const HamiltonianFamily family(3);
    SampleRng rng(303u, 0u);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        LatticeElement a;
        a.a.resize(3);
        for (int k = 0; k < 3; ++k) a.a[k] = static_cast<int>(rng.uniform(-6.0, 7.0));
        CotangentPoint pt;
        pt.q.resize(2);
        pt.p.resize(2);
        for (int j = 0; j < 2; ++j) {
            pt.q[j] = rng.uniform(-2.0, 2.0);
            pt.p[j] = rng.uniform(-1.7, 1.7);
        }
        pt.chart = Chart::Cover;

        CotangentPoint composed = pt;
        for (int k = 1; k <= 3; ++k)
            composed = exact_flow(family.generator(k), a.a[k - 1], composed);
        const CotangentPoint direct = exact_flow_sum(family, a, 1.0, pt);
        worst = std::max(worst, (composed.q - direct.q).cwiseAbs().maxCoeff());
        CHECK(composed.p == direct.p);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("leapfrog reproduces the radial flows to near machine precision") {
    const auto geodesic = RadialHamiltonian::geodesic_energy();
    const auto pt = cover_point({0.2, -0.1}, {0.8, 0.6});
    const auto exact = exact_flow(geodesic, 1.0, pt);

    for (double dt : {1e-2, 1e-3, 1e-4}) {
        const auto numeric = integrator_flow(geodesic, 1.0, pt, dt);
        const double err = (numeric.q - exact.q).cwiseAbs().maxCoeff();
        CHECK(err < dt * dt);    // comfortably inside the order-2 envelope
        CHECK(err < 1e-11);      // constant-momentum flows: every step is exact
        CHECK(numeric.p == pt.p);  // no force, bitwise conserved
    }
    const auto at_1e3 = integrator_flow(geodesic, 1.0, pt, 1e-3);
    CHECK((at_1e3.q - exact.q).cwiseAbs().maxCoeff() < 1e-5);

    const HamiltonianFamily family(2);
    const auto bump_pt = on_shell_point(2, 3, 5u, 9u);
    const auto exact_bump = exact_flow(family.generator(1), 1.0, bump_pt);
    const auto numeric_bump = integrator_flow(family.generator(1), 1.0, bump_pt, 1e-3);
    CHECK((numeric_bump.q - exact_bump.q).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("leapfrog is order 2 on a control problem with genuine momentum "
          "dynamics") {
    // Harmonic oscillator H = (|p|^2 + |q|^2)/2: exact flow is a rotation,
    // and the integrator error is measurably O(dt^2).
    SeparableHamiltonian oscillator;
    oscillator.grad_q = [](const Eigen::VectorXd& q) { return q; };
    oscillator.grad_p = [](const Eigen::VectorXd& p) { return p; };

    const auto pt = cover_point({1.0, 0.0}, {0.0, 0.5});
    auto exact = [&](double t) {
        CotangentPoint out = pt;
        out.q = std::cos(t) * pt.q + std::sin(t) * pt.p;
        out.p = -std::sin(t) * pt.q + std::cos(t) * pt.p;
        return out;
    };

    auto error_at = [&](double dt) {
        const auto numeric = leapfrog_flow(oscillator, 1.0, pt, dt);
        const auto truth = exact(1.0);
        return (numeric.q - truth.q).norm() + (numeric.p - truth.p).norm();
    };

    const double e2 = error_at(1e-2), e3 = error_at(1e-3), e4 = error_at(1e-4);
    CHECK(e3 < 1e-5);
    // Order from successive decades: log10(e_k / e_{k+1}) / 1 ~ 2.
    CHECK(std::log10(e2 / e3) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(std::log10(e3 / e4) == doctest::Approx(2.0).epsilon(0.15));
    // Halving dt divides the error by about 4.
    const double ratio = error_at(2e-3) / error_at(1e-3);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("poisson brackets of radial pairs vanish") {
    const HamiltonianFamily family(2);
    const auto geodesic = RadialHamiltonian::geodesic_energy();
    SampleRng rng(304u, 0u);
    for (int trial = 0; trial < 200; ++trial) {
        CotangentPoint pt;
        pt.q.resize(2);
        pt.p.resize(2);
        for (int j = 0; j < 2; ++j) {
            pt.q[j] = rng.uniform(-2.0, 2.0);
            pt.p[j] = rng.uniform(-1.7, 1.7);
        }
        pt.chart = Chart::Cover;
        CHECK(poisson_bracket(family.generator(1), family.generator(2), pt) == 0.0);
        CHECK(poisson_bracket(family.generator(1), geodesic, pt) == 0.0);
        CHECK(std::abs(poisson_bracket_fd(family.generator(1), family.generator(2), pt, 1e-5)) <
              1e-6);
    }
}

TEST_CASE("flows of different generators commute at arbitrary times") {
    const HamiltonianFamily family(3);
    SampleRng rng(305u, 0u);
    for (int trial = 0; trial < 200; ++trial) {
        CotangentPoint pt;
        pt.q.resize(2);
        pt.p.resize(2);
        for (int j = 0; j < 2; ++j) {
            pt.q[j] = rng.uniform(-2.0, 2.0);
            pt.p[j] = rng.uniform(-1.7, 1.7);
        }
        pt.chart = Chart::Cover;
        const double tj = rng.uniform(-3.0, 3.0), tk = rng.uniform(-3.0, 3.0);
        for (int j = 1; j <= 3; ++j)
            for (int k = j + 1; k <= 3; ++k) {
                const auto jk = exact_flow(family.generator(k), tk,
                                           exact_flow(family.generator(j), tj, pt));
                const auto kj = exact_flow(family.generator(j), tj,
                                           exact_flow(family.generator(k), tk, pt));
                CHECK((jk.q - kj.q).cwiseAbs().maxCoeff() < 1e-12);
            }
    }
}

TEST_CASE("energy is conserved along the flow") {
    const HamiltonianFamily family(2);
    for (int k = 1; k <= 2; ++k) {
        const auto h = family.generator(k);
        for (int shell = 1; shell <= 4; ++shell) {
            const auto pt = on_shell_point(2, shell, 7u, static_cast<std::uint64_t>(shell));
            const auto out = exact_flow(h, 2.5, pt);
            CHECK(h.energy(out) == h.energy(pt));  // p is untouched
        }
    }
}

TEST_CASE("exact flow is symplectic: analytic Jacobian everywhere, finite "
          "differences on the shells") {
    const HamiltonianFamily family(2);
    SampleRng rng(306u, 0u);

    // Analytic Jacobian, including inside the steep gap interpolants.
    double worst_analytic = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        CotangentPoint pt;
        pt.q.resize(2);
        pt.p.resize(2);
        for (int j = 0; j < 2; ++j) {
            pt.q[j] = rng.uniform(-2.0, 2.0);
            pt.p[j] = rng.uniform(-1.7, 1.7);
        }
        pt.chart = Chart::Cover;
        for (int k = 1; k <= 2; ++k)
            worst_analytic =
                std::max(worst_analytic, symplectic_form_residual(exact_flow_jacobian(
                                             family.generator(k), 1.0, pt)));
    }
    CHECK(worst_analytic < 1e-9);
}

TEST_CASE("geodesic coincidence on the matched shell") {
    const HamiltonianFamily family(2);
    const auto geodesic = RadialHamiltonian::geodesic_energy();
    const auto a = LatticeElement::of({3, -5});
    const int l = a.l1();
    // Shell 2 carries signs (+1, -1), matching the signs of a.
    for (int i = 0; i < 10000; ++i) {
        const auto pt = on_shell_point(2, 2, 8u, static_cast<std::uint64_t>(i));
        const auto via_sum = exact_flow_sum(family, a, 1.0, pt);
        const auto via_geodesic = exact_flow(geodesic, l, pt);
        CHECK((via_sum.q - via_geodesic.q).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("oscillation: exact extraction agrees with dense sampling") {
    const HamiltonianFamily family(1);
    LatticeElement zero;
    zero.a = Eigen::VectorXi::Zero(1);
    CHECK(oscillation(family, zero) == 0.0);

    // The on-shell values already force osc(H_1) >= (1.75 + 1.25)/2.
    const double osc1 = generator_oscillation(family, 1);
    CHECK(osc1 >= 1.5);

    const auto unit = LatticeElement::of({1});
    const double sampled = oscillation_sampled(family, unit, 1000000);
    CHECK(osc1 >= sampled - 1e-15);  // the grid can only undershoot
    CHECK(std::abs(osc1 - sampled) < 1e-9);
}

TEST_CASE("oscillation is subadditive and the upper bound takes the better "
          "path") {
    const HamiltonianFamily family(3);
    SampleRng rng(307u, 0u);
    for (int trial = 0; trial < 30; ++trial) {
        LatticeElement a;
        a.a.resize(3);
        for (int k = 0; k < 3; ++k) a.a[k] = static_cast<int>(rng.uniform(-8.0, 9.0));
        if (a.is_zero()) continue;
        double concatenated = 0.0;
        for (int k = 1; k <= 3; ++k)
            concatenated += std::abs(a.a[k - 1]) * generator_oscillation(family, k);
        const double one_shot = oscillation(family, a);
        CHECK(one_shot <= concatenated + 1e-12);
        CHECK(hofer_upper_bound(family, a) == doctest::Approx(std::min(one_shot, concatenated))
                                                  .epsilon(1e-15));
    }

    LatticeElement zero;
    zero.a = Eigen::VectorXi::Zero(3);
    CHECK(hofer_upper_bound(family, zero) == 0.0);

    const auto e1 = LatticeElement::of({1, 0, 0});
    CHECK(hofer_upper_bound(family, e1) ==
          doctest::Approx(generator_oscillation(family, 1)).epsilon(1e-15));

    const HamiltonianFamily family2(2);
    const auto a = LatticeElement::of({3, -5});
    CHECK(hofer_upper_bound(family2, a) <= 8.0 * max_generator_oscillation(family2) + 1e-12);
}

TEST_CASE("torus-chart flows reduce mod 1") {
    const auto geodesic = RadialHamiltonian::geodesic_energy();
    CotangentPoint pt = cover_point({0.75, 0.5}, {1.0, 0.0});
    pt.chart = Chart::Torus;
    const auto out = exact_flow(geodesic, 0.5, pt);
    CHECK(out.chart == Chart::Torus);
    CHECK(out.q[0] == doctest::Approx(0.25).epsilon(1e-12));
}
