#include "hofercert/lift.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hofercert {

SignPattern select_pattern(const LatticeElement& a) {
    if (a.is_zero()) throw std::invalid_argument("select_pattern: a must be nonzero");
    SignPattern pattern;
    pattern.entries.resize(static_cast<std::size_t>(a.size()));
    for (int k = 0; k < a.size(); ++k)
        pattern.entries[static_cast<std::size_t>(k)] = a.a[k] < 0 ? -1 : 1;
    return pattern;
}

RegionSpec displaced_shell_region(const HamiltonianFamily& family, const ModelConfig& model,
                                  const LatticeElement& a) {
    family.check_weights(a);
    const int i = pattern_index(select_pattern(a));
    const double R = a.l1() / 4.0;
    return RegionSpec::lifted_shell(family.size(), i, R, model.base_point_q0);
}

RegionSpec control_ball_region(const ModelConfig& model, const LatticeElement& a) {
    if (a.is_zero()) throw std::invalid_argument("control_ball_region: a must be nonzero");
    const double R = a.l1() / 4.0;
    return RegionSpec::low_momentum_ball(1.0 / std::sqrt(2.0), R / 2.0, model.base_point_q0);
}

CotangentPoint lifted_flow(const HamiltonianFamily& family, const LatticeElement& a, double t,
                           const CotangentPoint& pt) {
    if (pt.chart != Chart::Cover)
        throw std::invalid_argument("lifted_flow: point must be in the cover chart");
    return exact_flow_sum(family, a, t, pt);
}

namespace {

struct SampleCheck {
    int samples = 0;
    double min_displacement = std::numeric_limits<double>::infinity();
    double min_exit_margin = std::numeric_limits<double>::infinity();
    bool all_exited = true;
    std::optional<CotangentPoint> counterexample;
};

// Pushes per-sample region points through deck o time-1 flow and records
// displacement and exit margins.
SampleCheck run_sample_check(const HamiltonianFamily& family, const LatticeElement& a,
                             const DeckTransformation& deck, const RegionSpec& region,
                             int samples, std::uint64_t seed) {
    SampleCheck check;
    check.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const CotangentPoint pt = sample_region_point(region, seed, static_cast<std::uint64_t>(i));
        CotangentPoint image = lifted_flow(family, a, 1.0, pt);
        if (!deck.v.isZero()) image = apply_deck(deck, image);
        check.min_displacement =
            std::min(check.min_displacement, cover_distance(image.q, pt.q));
        check.min_exit_margin = std::min(
            check.min_exit_margin, cover_distance(image.q, region.center) - region.base_radius);
        if (region_contains(region, image)) {
            check.all_exited = false;
            if (!check.counterexample) check.counterexample = pt;
        }
    }
    return check;
}

}  // namespace

DisplacementWitness verify_displacement(const HamiltonianFamily& family,
                                        const ModelConfig& model, const LatticeElement& a,
                                        int samples, std::uint64_t seed) {
    if (a.is_zero()) throw std::invalid_argument("verify_displacement: a must be nonzero");
    if (samples < 1) throw std::invalid_argument("verify_displacement: samples must be >= 1");
    model.validate();

    const int l = a.l1();
    const RegionSpec region = displaced_shell_region(family, model, a);
    const DeckTransformation identity{Eigen::VectorXi::Zero(model.n)};
    const SampleCheck check = run_sample_check(family, a, identity, region, samples, seed);

    DisplacementWitness witness;
    witness.region = region;
    witness.lattice_element = a;
    witness.deck = identity;
    witness.dichotomy_case = DichotomyCase::ShellDisplaced;
    witness.samples_checked = check.samples;
    witness.min_base_displacement = check.min_displacement;
    witness.min_exit_margin = check.min_exit_margin;
    // On the shell the flow is geodesic at time l, so the base moves by
    // l |p| >= l sqrt(s_lo).
    witness.analytic_displacement_floor = l * std::sqrt(region.shell_bounds().s_lo);
    witness.disjoint = check.all_exited && check.min_displacement >= l - 1e-12;
    witness.counterexample = check.counterexample;
    return witness;
}

DisplacementWitness deck_dichotomy(const HamiltonianFamily& family, const ModelConfig& model,
                                   const LatticeElement& a, const DeckTransformation& deck,
                                   int samples, std::uint64_t seed) {
    if (a.is_zero()) throw std::invalid_argument("deck_dichotomy: a must be nonzero");
    if (deck.v.size() != model.n)
        throw std::invalid_argument("deck_dichotomy: deck dimension mismatch");
    model.validate();

    const int l = a.l1();
    const double shift = deck.translation_norm();

    DisplacementWitness witness;
    witness.lattice_element = a;
    witness.deck = deck;

    if (shift < 0.5 * l) {
        // Short translation: the shell region stays displaced. The image
        // base sits at distance >= l|p| - R - |v| > R from q0.
        witness.dichotomy_case = DichotomyCase::ShellDisplaced;
        witness.region = displaced_shell_region(family, model, a);
        witness.analytic_displacement_floor =
            l * std::sqrt(witness.region.shell_bounds().s_lo) - shift;
        const SampleCheck check =
            run_sample_check(family, a, deck, witness.region, samples, seed);
        witness.samples_checked = check.samples;
        witness.min_base_displacement = check.min_displacement;
        witness.min_exit_margin = check.min_exit_margin;
        witness.disjoint = check.all_exited;
        witness.counterexample = check.counterexample;
    } else {
        // Long translation: on the low-momentum ball every generator
        // vanishes, so deck o flow is the translation itself and
        // |v| >= l/2 > 2 (R/2) forces disjointness.
        witness.dichotomy_case = DichotomyCase::BallDisplaced;
        witness.region = control_ball_region(model, a);
        witness.analytic_displacement_floor = shift;
        witness.analytic_case = shift > 2.0 * witness.region.base_radius;
        const SampleCheck check =
            run_sample_check(family, a, deck, witness.region, samples, seed);
        witness.samples_checked = check.samples;
        witness.min_base_displacement = check.min_displacement;
        witness.min_exit_margin = check.min_exit_margin;
        witness.disjoint = witness.analytic_case && check.all_exited;
        witness.counterexample = check.counterexample;
    }
    return witness;
}

std::vector<Eigen::VectorXi> lattice_vectors_in_ball(int n, int radius) {
    if (n < 1 || radius < 0) throw std::invalid_argument("lattice_vectors_in_ball: bad arguments");
    std::vector<Eigen::VectorXi> out;
    Eigen::VectorXi v = Eigen::VectorXi::Constant(n, -radius);
    const long long r2 = static_cast<long long>(radius) * radius;
    for (;;) {
        long long norm2 = 0;
        for (int j = 0; j < n; ++j) norm2 += static_cast<long long>(v[j]) * v[j];
        if (norm2 <= r2) out.push_back(v);
        int j = 0;
        while (j < n && v[j] == radius) v[j++] = -radius;
        if (j == n) break;
        ++v[j];
    }
    return out;
}

DeckSweepResult displaced_capacity_floor(const HamiltonianFamily& family,
                                         const ModelConfig& model, const LatticeElement& a,
                                         int deck_radius, int samples_per_case,
                                         std::uint64_t seed) {
    if (a.is_zero()) throw std::invalid_argument("displaced_capacity_floor: a must be nonzero");
    const int l = a.l1();
    if (deck_radius <= 0) deck_radius = 2 * l;
    if (2 * deck_radius < l)
        throw std::invalid_argument(
            "displaced_capacity_floor: deck_radius must be >= l/2 for the analytic tail");

    DeckSweepResult sweep;
    sweep.deck_radius = deck_radius;
    sweep.all_certified = true;
    // Beyond the sweep every translation satisfies |v| > deck_radius >= l/2,
    // which is the ball case hypothesis.
    sweep.tail_certified = true;

    std::uint64_t case_seed = seed;
    for (const auto& v : lattice_vectors_in_ball(model.n, deck_radius)) {
        const DeckTransformation deck{v};
        const DisplacementWitness witness =
            deck_dichotomy(family, model, a, deck, samples_per_case, ++case_seed);
        if (witness.dichotomy_case == DichotomyCase::ShellDisplaced)
            ++sweep.cases_shell;
        else
            ++sweep.cases_ball;
        if (!witness.disjoint) {
            sweep.all_certified = false;
            sweep.failures.push_back(witness);
        }
    }

    if (sweep.all_certified) {
        const double shell_floor = capacity_floor(displaced_shell_region(family, model, a));
        const double ball_floor = capacity_floor(control_ball_region(model, a));
        sweep.capacity_floor = std::min(shell_floor, ball_floor);
    }
    return sweep;
}

}  // namespace hofercert
