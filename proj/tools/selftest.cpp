#include "selftest.hpp"

#include <cmath>
#include <numbers>

#include "hofercert/certify.hpp"
#include "hofercert/report.hpp"
#include "hofercert/rng.hpp"

namespace hofercert::tools {

namespace {

struct Suite {
    std::ostream& out;
    int failures = 0;

    void check(const char* name, bool ok) {
        out << (ok ? "[ ok ] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    }
};

// Count of on-shell sample points violating phi(s) = sign * s or
// phi'(s) = sign. Also run against a deliberately corrupted profile.
int exactness_violations(const BumpProfile& profile, int samples_per_shell) {
    int violations = 0;
    SampleRng rng(7u, 0u);
    for (const auto& shell : build_shells(profile.family_size)) {
        const double sign = profile.shell_signs[static_cast<std::size_t>(shell.index - 1)];
        for (int i = 0; i < samples_per_shell; ++i) {
            const double s = rng.uniform(shell.s_lo, shell.s_hi);
            if (profile.value(s) != sign * s || profile.deriv(s) != sign) ++violations;
        }
    }
    return violations;
}

CotangentPoint on_shell_point(const HamiltonianFamily& family, int shell_index, int n,
                              std::uint64_t stream) {
    const RegionSpec region = RegionSpec::shell(family.size(), shell_index, n);
    CotangentPoint pt = sample_region_point(region, 11u, stream);
    pt.chart = Chart::Cover;
    return pt;
}

}  // namespace

int run_selftest(std::ostream& out) {
    Suite suite{out};
    const ModelConfig model = ModelConfig::standard(2);

    // Shell exactness and its mutation control.
    {
        bool ok = true;
        for (int N = 1; N <= 3; ++N)
            for (int k = 1; k <= N; ++k)
                ok = ok && exactness_violations(build_profile(k, N), 500) == 0;
        suite.check("shell exactness (N=1..3)", ok);

        BumpProfile corrupted = build_profile(1, 2);
        for (auto& seg : corrupted.segments)
            if (seg.on_shell) {
                seg.shell_sign = -seg.shell_sign;
                break;
            }
        suite.check("mutation control: sign flip detected",
                    exactness_violations(corrupted, 100) > 0);
    }

    // Profile construction invariants.
    {
        bool ok = true;
        try {
            for (int N = 1; N <= 4; ++N)
                for (int k = 1; k <= N; ++k) build_profile(k, N).validate();
        } catch (const std::exception&) {
            ok = false;
        }
        suite.check("profile C^2 continuity (N=1..4)", ok);
    }

    // Symplecticity of flows and embedding stages, FD Jacobians at
    // on-shell points.
    {
        const HamiltonianFamily family(2);
        const double h = 1e-5;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const CotangentPoint pt = on_shell_point(family, 1 + i % 4, 2, 100u + i);
            for (int k = 1; k <= 2; ++k) {
                PhaseMap flow;
                flow.forward = [&family, k](const CotangentPoint& x) {
                    return exact_flow(family.generator(k), 1.0, x);
                };
                worst = std::max(worst, fd_symplectic_residual(flow, pt, h));
            }
        }
        const RegionSpec shell_region =
            RegionSpec::lifted_shell(2, 2, 2.0, model.base_point_q0);
        const BallEmbedding embedding = make_ball_embedding(shell_region);
        for (int i = 0; i < 20; ++i) {
            SampleRng rng(13u, static_cast<std::uint64_t>(i));
            const Eigen::VectorXd z =
                rng.in_ball(Eigen::VectorXd::Zero(4), embedding.ball_radius * (1.0 - 1e-9));
            CotangentPoint pt;
            pt.q = z.head(2);
            pt.p = z.tail(2);
            pt.chart = Chart::Cover;
            worst = std::max(worst, fd_symplectic_residual(embedding.map, pt, h));
        }
        suite.check("symplecticity residual < 1e-6 (flows, embedding)", worst < 1e-6);

        const Eigen::MatrixXd bad = 2.0 * Eigen::MatrixXd::Identity(2, 2);
        suite.check("mutation control: non-symplectic map detected",
                    symplectic_form_residual(bad) > 1e-6);
    }

    // Commutation and Poisson brackets.
    {
        const HamiltonianFamily family(3);
        double worst_gap = 0.0, worst_fd = 0.0, worst_analytic = 0.0;
        SampleRng rng(17u, 0u);
        for (int i = 0; i < 100; ++i) {
            CotangentPoint pt;
            pt.q.resize(2);
            pt.p.resize(2);
            for (int j = 0; j < 2; ++j) {
                pt.q[j] = rng.uniform(-2.0, 2.0);
                pt.p[j] = rng.uniform(-1.7, 1.7);
            }
            pt.chart = Chart::Cover;
            for (int j = 1; j <= 3; ++j)
                for (int k = j + 1; k <= 3; ++k) {
                    const double tj = rng.uniform(-2.0, 2.0), tk = rng.uniform(-2.0, 2.0);
                    const auto once =
                        exact_flow(family.generator(k), tk,
                                   exact_flow(family.generator(j), tj, pt));
                    const auto other =
                        exact_flow(family.generator(j), tj,
                                   exact_flow(family.generator(k), tk, pt));
                    worst_gap = std::max(worst_gap, (once.q - other.q).cwiseAbs().maxCoeff());
                    worst_analytic = std::max(
                        worst_analytic,
                        std::abs(poisson_bracket(family.generator(j), family.generator(k), pt)));
                    worst_fd = std::max(
                        worst_fd, std::abs(poisson_bracket_fd(family.generator(j),
                                                              family.generator(k), pt, 1e-5)));
                }
        }
        suite.check("flow commutation < 1e-12", worst_gap < 1e-12);
        suite.check("Poisson brackets: analytic 0, FD < 1e-6",
                    worst_analytic == 0.0 && worst_fd < 1e-6);
    }

    // Geodesic coincidence on the selected shell.
    {
        const HamiltonianFamily family(2);
        SampleRng rng(23u, 0u);
        double worst = 0.0;
        for (int trial = 0; trial < 3; ++trial) {
            LatticeElement a;
            a.a.resize(2);
            do {
                a.a[0] = static_cast<int>(rng.uniform(-6.0, 7.0));
                a.a[1] = static_cast<int>(rng.uniform(-6.0, 7.0));
            } while (a.is_zero());
            const int i = pattern_index(select_pattern(a));
            const auto geodesic = RadialHamiltonian::geodesic_energy();
            for (int s = 0; s < 200; ++s) {
                const CotangentPoint pt = on_shell_point(family, i, 2, 1000u * trial + s);
                const auto via_sum = exact_flow_sum(family, a, 1.0, pt);
                const auto via_geodesic = exact_flow(geodesic, a.l1(), pt);
                worst = std::max(worst, (via_sum.q - via_geodesic.q).cwiseAbs().maxCoeff());
            }
        }
        suite.check("geodesic coincidence < 1e-12", worst < 1e-12);
    }

    // Displacement and the deck dichotomy.
    {
        const HamiltonianFamily family(2);
        const LatticeElement a = LatticeElement::of({3, -5});
        const auto witness = verify_displacement(family, model, a, 2000, 5u);
        suite.check("displacement: all samples exit, min >= 8.9",
                    witness.disjoint && witness.min_base_displacement >= 8.9);

        const auto near_case = deck_dichotomy(family, model, a, {Eigen::Vector2i(1, 0)}, 500, 6u);
        const auto far_case = deck_dichotomy(family, model, a, {Eigen::Vector2i(5, 0)}, 500, 6u);
        suite.check("dichotomy cases certify",
                    near_case.disjoint &&
                        near_case.dichotomy_case == DichotomyCase::ShellDisplaced &&
                        far_case.disjoint &&
                        far_case.dichotomy_case == DichotomyCase::BallDisplaced &&
                        far_case.analytic_case);

        const auto sweep = displaced_capacity_floor(family, model, a, 0, 200, 7u);
        suite.check("dichotomy sweep certified",
                    sweep.all_certified && sweep.tail_certified &&
                        std::abs(sweep.capacity_floor - std::numbers::pi / 80.0) < 1e-15);
    }

    // Ball embeddings and the exact shell fit.
    {
        const RegionSpec shell_region = RegionSpec::lifted_shell(2, 2, 2.0, model.base_point_q0);
        const auto shell_cert = certify_ball_embedding(shell_region, 2000, 8u, 1e-5);
        const RegionSpec ball_region =
            RegionSpec::low_momentum_ball(1.0 / std::sqrt(2.0), 1.0, model.base_point_q0);
        const auto ball_cert = certify_ball_embedding(ball_region, 2000, 8u, 1e-5);
        suite.check("ball embeddings certified, zero violations",
                    shell_cert.certified && shell_cert.containment_violations == 0 &&
                        ball_cert.certified && ball_cert.containment_violations == 0);

        bool fits = true;
        for (int N = 1; N <= 6; ++N)
            for (int i = 1; i <= (1 << N); ++i) fits = fits && shell_fit_exact(N, i).ok;
        suite.check("exact rational shell fit (N=1..6, all shells)", fits);
    }

    // End-to-end certificate and determinism.
    {
        RunConfig cfg;
        cfg.displacement_samples = 2000;
        cfg.embedding_samples = 2000;
        cfg.dichotomy_samples = 200;
        cfg.symplectic_samples = 20;
        const auto cert = certify(cfg.lattice_element(), cfg.model(), cfg.certify_options());
        suite.check("certificate: bounds and constants",
                    cert.certified &&
                        std::abs(cert.lower - std::numbers::pi / 160.0) < 1e-15 &&
                        cert.lower <= cert.upper && cert.C_osc >= 1.5 && cert.C_osc <= 3.0);

        const auto cert2 = certify(cfg.lattice_element(), cfg.model(), cfg.certify_options());
        suite.check("determinism: identical reports",
                    certificate_to_json(cert) == certificate_to_json(cert2));
    }

    // Constant growth across family sizes.
    {
        const auto scan = growth_scan(1, 4);
        bool halves = true;
        for (std::size_t i = 1; i < scan.rows.size(); ++i)
            halves = halves && scan.rows[i].epsilon_ratio == 0.5;
        suite.check("scan: epsilon halves exactly, C_N doubles",
                    halves && scan.geometric_growth);
    }

    out << (suite.failures == 0 ? "selftest: all properties passed\n"
                                : "selftest: FAILURES present\n");
    return suite.failures == 0 ? 0 : 1;
}

}  // namespace hofercert::tools
