#ifndef HOFERCERT_LIFT_HPP
#define HOFERCERT_LIFT_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hofercert/capacity.hpp"
#include "hofercert/dynamics.hpp"
#include "hofercert/geometry.hpp"
#include "hofercert/shells.hpp"

namespace hofercert {

/// Which disjointness argument certified a lifted flow: the shell region
/// (deck translation shorter than l/2) or the low-momentum ball, where
/// the flow is the identity and the translation itself displaces.
enum class DichotomyCase { ShellDisplaced, BallDisplaced };

/// Evidence that (deck o time-1 flow of sum a_k H_k) maps a region off
/// itself. `disjoint` requires every checked sample to exit the region.
struct DisplacementWitness {
    RegionSpec region;
    LatticeElement lattice_element;
    DeckTransformation deck;
    DichotomyCase dichotomy_case = DichotomyCase::ShellDisplaced;
    int samples_checked = 0;
    double min_base_displacement = 0.0;
    double min_exit_margin = 0.0;      // min over samples of d(q'', q0) - region radius
    double analytic_displacement_floor = 0.0;
    bool analytic_case = false;        // ball case: disjointness also proved by inequality
    bool disjoint = false;
    std::optional<CotangentPoint> counterexample;
};

/// The sign pattern I with I_k a_k >= 0 (+1 on zero entries). Requires
/// a != 0.
SignPattern select_pattern(const LatticeElement& a);

/// Shell region displaced by a: the lifted shell over B(q0, l/4) with
/// index i(select_pattern(a)).
RegionSpec displaced_shell_region(const HamiltonianFamily& family, const ModelConfig& model,
                                  const LatticeElement& a);

/// Low-momentum control region of the dichotomy's second case.
RegionSpec control_ball_region(const ModelConfig& model, const LatticeElement& a);

/// Time-t flow of sum a_k H_k on the universal cover (no torus
/// reduction). Requires the cover chart.
CotangentPoint lifted_flow(const HamiltonianFamily& family, const LatticeElement& a, double t,
                           const CotangentPoint& pt);

/// Samples the lifted shell region (R = l/4), pushes every sample through
/// the time-1 lifted flow and checks base displacement >= l and region
/// exit. Throws std::invalid_argument for a = 0.
DisplacementWitness verify_displacement(const HamiltonianFamily& family,
                                        const ModelConfig& model, const LatticeElement& a,
                                        int samples = 100000, std::uint64_t seed = 0);

/// One deck transformation against the lifted flow: translations shorter
/// than l/2 cannot bring the displaced shell back (case ShellDisplaced);
/// longer ones displace the low-momentum ball, where the flow acts as the
/// translation alone (case BallDisplaced, also certified analytically).
DisplacementWitness deck_dichotomy(const HamiltonianFamily& family, const ModelConfig& model,
                                   const LatticeElement& a, const DeckTransformation& deck,
                                   int samples = 2000, std::uint64_t seed = 0);

/// Aggregate of a dichotomy sweep over all deck translations of Euclidean
/// norm <= deck_radius, plus the analytic tail argument beyond it.
struct DeckSweepResult {
    int deck_radius = 0;
    int cases_shell = 0;
    int cases_ball = 0;
    bool all_certified = false;
    bool tail_certified = false;  // |v| > deck_radius implies |v| >= l/2
    double capacity_floor = 0.0;  // min over both region kinds
    std::vector<DisplacementWitness> failures;
};

/// Runs deck_dichotomy for every lattice vector with |v| <= deck_radius
/// (deck_radius <= 0 selects the default ceil(2 l)) and returns the
/// certified capacity floor min(c_lb(shell region), c_lb(ball region)).
/// The analytic tail needs deck_radius >= l/2; smaller values throw.
DeckSweepResult displaced_capacity_floor(const HamiltonianFamily& family,
                                         const ModelConfig& model, const LatticeElement& a,
                                         int deck_radius = 0, int samples_per_case = 2000,
                                         std::uint64_t seed = 0);

/// All lattice vectors of Z^n with Euclidean norm <= radius.
std::vector<Eigen::VectorXi> lattice_vectors_in_ball(int n, int radius);

}  // namespace hofercert

#endif
