#ifndef HOFERCERT_SHELLS_HPP
#define HOFERCERT_SHELLS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "hofercert/geometry.hpp"

namespace hofercert {

/// Maximum family size. Gap interpolants steepen like 2^N, so the cap is
/// practical, not mathematical.
inline constexpr int kMaxFamilySize = 16;

/// An element of {+1,-1}^N indexing one momentum shell.
struct SignPattern {
    std::vector<int> entries;  // each exactly +1 or -1

    int size() const { return static_cast<int>(entries.size()); }
    void validate() const;
};

/// One of the 2^N momentum shells: the set of phase points whose squared
/// momentum norm lies in [s_lo, s_hi].
struct ShellSpec {
    int index;    // 1-based shell index in {1, ..., 2^N}
    double s_lo;  // 1 + (index-1)/2^N
    double s_hi;  // s_lo + 1/2^{N+1}
};

/// Bijection {+-1}^N <-> {1, ..., 2^N}: entry k is +1 iff bit (k-1) of
/// (index - 1) is set.
int pattern_index(const SignPattern& pattern);
SignPattern index_pattern(int index, int N);

/// All 2^N shells in index order. The shells sit in [1, 2 - 1/2^{N+1}]
/// and consecutive shells are separated by gaps of width 1/2^{N+1}.
std::vector<ShellSpec> build_shells(int N);

/// (sqrt(s_lo), sqrt(s_hi)) per shell: the annulus radii the fiber trace
/// diagram plots.
std::vector<std::pair<double, double>> shell_boundary_radii(int N);

/// One polynomial piece of a radial profile, valid on [lo, hi). Stored in
/// the shifted basis sum_j coeffs[j] * (s - lo)^j to keep the steep gap
/// interpolants well-conditioned. Shell pieces are evaluated as
/// shell_sign * s directly so the on-shell identity is exact in floating
/// point, not just up to rounding.
struct ProfileSegment {
    double lo = 0.0;
    double hi = 0.0;
    std::array<double, 6> coeffs{};  // degree <= 5
    bool on_shell = false;
    double shell_sign = 0.0;  // +-1 on shells, 0 elsewhere

    double value(double s) const;
    double deriv(double s) const;
    double second_deriv(double s) const;
};

/// Radial profile of one generator: identically zero outside [1/2, 5/2],
/// exactly +-s on each shell, and quintic Hermite ramps (value, first and
/// second derivative matched at both ends) across the head, the gaps and
/// the tail. C^2 overall.
struct BumpProfile {
    int generator = 0;    // k in {1, ..., N}
    int family_size = 0;  // N
    std::vector<ProfileSegment> segments;  // tile [0, 3] contiguously
    std::vector<double> shell_signs;       // sign on shell i at [i-1]

    double value(double s) const;
    double deriv(double s) const;
    double second_deriv(double s) const;

    /// Sign eps_{k,i} of this profile on shell i (1-based).
    double shell_sign(int shell_index) const { return shell_signs.at(shell_index - 1); }

    /// Index of the segment containing s, or -1 outside the support
    /// closure [1/2, 5/2].
    int segment_index(double s) const;

    /// Checks the construction invariants: support, on-shell exactness,
    /// and C^2 continuity at every knot. Continuity residuals are
    /// measured relative to the local evaluation scale; the absolute
    /// scale of the gap coefficients grows like 2^N. Throws
    /// std::logic_error on violation.
    void validate(double tol = 1e-12) const;
};

/// Builds the profile of generator k for a family of N commuting
/// Hamiltonians. 1 <= k <= N <= kMaxFamilySize.
BumpProfile build_profile(int k, int N);

/// Quintic Hermite coefficients on [a, b] in the shifted basis
/// sum_j c[j] (s-a)^j, matching value/first/second derivative
/// (f0, d0, k0) at a and (f1, d1, k1) at b.
std::array<double, 6> hermite_quintic(double a, double b, double f0, double d0, double k0,
                                      double f1, double d1, double k1);

/// Region kinds used by the displacement and capacity certificates.
enum class RegionKind {
    Shell,            // momentum shell over the whole torus
    LiftedShell,      // shell over a base ball B(q0, R) on the cover
    LowMomentumBall,  // {q in B(q0, C), |p| < nu} on the cover
};

struct RegionSpec {
    RegionKind kind;
    int N = 0;                 // family size (shell kinds)
    int shell_index = 0;       // i (shell kinds)
    double base_radius = 0.0;  // R for LiftedShell, C for LowMomentumBall
    double momentum_bound = 0.0;  // nu for LowMomentumBall
    Eigen::VectorXd center;       // q0 in cover coordinates

    static RegionSpec shell(int N, int shell_index, int dim);
    static RegionSpec lifted_shell(int N, int shell_index, double R, const Eigen::VectorXd& q0);
    static RegionSpec low_momentum_ball(double nu, double C, const Eigen::VectorXd& q0);

    ShellSpec shell_bounds() const;  // valid for shell kinds
    void validate() const;
};

/// Exact membership predicate. Shell momentum intervals are closed, base
/// and momentum balls are open. Throws std::invalid_argument when the
/// point's chart does not fit the region kind.
bool region_contains(const RegionSpec& region, const CotangentPoint& pt);

/// `count` deterministic pseudo-random points of the region, drawn with
/// per-sample streams from `seed` (direction times radius draws, so the
/// sampler terminates unconditionally). Every returned point satisfies
/// region_contains.
std::vector<CotangentPoint> sample_region(const RegionSpec& region, int count,
                                          std::uint64_t seed);

/// Single region point from an explicit per-sample stream index.
CotangentPoint sample_region_point(const RegionSpec& region, std::uint64_t seed,
                                   std::uint64_t stream);

}  // namespace hofercert

#endif
