#include "hofercert/shells.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hofercert/rng.hpp"

namespace hofercert {

void SignPattern::validate() const {
    const int N = size();
    if (N < 1 || N > kMaxFamilySize)
        throw std::invalid_argument("SignPattern: size must be in [1, " +
                                    std::to_string(kMaxFamilySize) + "]");
    for (int e : entries)
        if (e != 1 && e != -1)
            throw std::invalid_argument("SignPattern: entries must be +1 or -1");
}

int pattern_index(const SignPattern& pattern) {
    pattern.validate();
    int idx = 1;
    for (int k = 0; k < pattern.size(); ++k)
        if (pattern.entries[k] == 1) idx += 1 << k;
    return idx;
}

SignPattern index_pattern(int index, int N) {
    if (N < 1 || N > kMaxFamilySize)
        throw std::invalid_argument("index_pattern: N out of range");
    if (index < 1 || index > (1 << N))
        throw std::invalid_argument("index_pattern: index out of range");
    SignPattern pattern;
    pattern.entries.resize(N);
    for (int k = 0; k < N; ++k)
        pattern.entries[k] = ((index - 1) >> k) & 1 ? 1 : -1;
    return pattern;
}

std::vector<ShellSpec> build_shells(int N) {
    if (N < 1 || N > kMaxFamilySize)
        throw std::invalid_argument("build_shells: N out of range");
    const double step = std::ldexp(1.0, -N);        // 1/2^N
    const double width = std::ldexp(1.0, -(N + 1)); // 1/2^{N+1}
    std::vector<ShellSpec> shells;
    shells.reserve(std::size_t{1} << N);
    for (int i = 1; i <= (1 << N); ++i) {
        ShellSpec s;
        s.index = i;
        s.s_lo = 1.0 + (i - 1) * step;
        s.s_hi = s.s_lo + width;
        shells.push_back(s);
    }
    return shells;
}

std::vector<std::pair<double, double>> shell_boundary_radii(int N) {
    std::vector<std::pair<double, double>> out;
    for (const auto& shell : build_shells(N))
        out.emplace_back(std::sqrt(shell.s_lo), std::sqrt(shell.s_hi));
    return out;
}

double ProfileSegment::value(double s) const {
    if (on_shell) return shell_sign * s;
    const double t = s - lo;
    double acc = coeffs[5];
    for (int j = 4; j >= 0; --j) acc = acc * t + coeffs[j];
    return acc;
}

double ProfileSegment::deriv(double s) const {
    if (on_shell) return shell_sign;
    const double t = s - lo;
    double acc = 5.0 * coeffs[5];
    for (int j = 4; j >= 1; --j) acc = acc * t + j * coeffs[j];
    return acc;
}

double ProfileSegment::second_deriv(double s) const {
    if (on_shell) return 0.0;
    const double t = s - lo;
    double acc = 20.0 * coeffs[5];
    for (int j = 4; j >= 2; --j) acc = acc * t + j * (j - 1) * coeffs[j];
    return acc;
}

std::array<double, 6> hermite_quintic(double a, double b, double f0, double d0, double k0,
                                      double f1, double d1, double k1) {
    const double h = b - a;
    if (!(h > 0.0)) throw std::invalid_argument("hermite_quintic: requires b > a");
    // Coefficients in u = (s-a)/h, then rescaled to the shifted basis.
    const double c0 = f0;
    const double c1 = h * d0;
    const double c2 = 0.5 * h * h * k0;
    const double A = f1 - (c0 + c1 + c2);
    const double B = h * d1 - (c1 + 2.0 * c2);
    const double C = h * h * k1 - 2.0 * c2;
    const double c3 = 10.0 * A - 4.0 * B + 0.5 * C;
    const double c4 = -15.0 * A + 7.0 * B - C;
    const double c5 = 6.0 * A - 3.0 * B + 0.5 * C;
    std::array<double, 6> out{c0, c1, c2, c3, c4, c5};
    double scale = 1.0;
    for (int j = 1; j < 6; ++j) {
        scale /= h;
        out[j] *= scale;
    }
    return out;
}

namespace {

ProfileSegment zero_segment(double lo, double hi) {
    ProfileSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    return seg;
}

ProfileSegment shell_segment(double lo, double hi, double sign) {
    ProfileSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.on_shell = true;
    seg.shell_sign = sign;
    seg.coeffs = {sign * lo, sign, 0.0, 0.0, 0.0, 0.0};
    return seg;
}

ProfileSegment ramp_segment(double lo, double hi, double f0, double d0, double f1, double d1) {
    ProfileSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.coeffs = hermite_quintic(lo, hi, f0, d0, 0.0, f1, d1, 0.0);
    return seg;
}

}  // namespace

BumpProfile build_profile(int k, int N) {
    if (N < 1 || N > kMaxFamilySize) throw std::invalid_argument("build_profile: N out of range");
    if (k < 1 || k > N) throw std::invalid_argument("build_profile: k out of range");

    const auto shells = build_shells(N);
    BumpProfile profile;
    profile.generator = k;
    profile.family_size = N;
    profile.shell_signs.reserve(shells.size());
    for (const auto& shell : shells)
        profile.shell_signs.push_back(index_pattern(shell.index, N).entries[k - 1]);

    auto& segs = profile.segments;
    segs.push_back(zero_segment(0.0, 0.5));
    const double first_sign = profile.shell_signs.front();
    segs.push_back(ramp_segment(0.5, shells.front().s_lo, 0.0, 0.0,
                                first_sign * shells.front().s_lo, first_sign));
    for (std::size_t i = 0; i < shells.size(); ++i) {
        const double sign = profile.shell_signs[i];
        segs.push_back(shell_segment(shells[i].s_lo, shells[i].s_hi, sign));
        if (i + 1 < shells.size()) {
            const double next_sign = profile.shell_signs[i + 1];
            segs.push_back(ramp_segment(shells[i].s_hi, shells[i + 1].s_lo,
                                        sign * shells[i].s_hi, sign,
                                        next_sign * shells[i + 1].s_lo, next_sign));
        }
    }
    const double last_sign = profile.shell_signs.back();
    segs.push_back(ramp_segment(shells.back().s_hi, 2.5,
                                last_sign * shells.back().s_hi, last_sign, 0.0, 0.0));
    segs.push_back(zero_segment(2.5, 3.0));

    profile.validate();
    return profile;
}

int BumpProfile::segment_index(double s) const {
    if (s < 0.5 || s >= 2.5) return -1;
    // Segments tile [0,3]; find the one with lo <= s < hi.
    auto it = std::upper_bound(segments.begin(), segments.end(), s,
                               [](double v, const ProfileSegment& seg) { return v < seg.lo; });
    return static_cast<int>(it - segments.begin()) - 1;
}

double BumpProfile::value(double s) const {
    const int idx = segment_index(s);
    return idx < 0 ? 0.0 : segments[idx].value(s);
}

double BumpProfile::deriv(double s) const {
    const int idx = segment_index(s);
    return idx < 0 ? 0.0 : segments[idx].deriv(s);
}

double BumpProfile::second_deriv(double s) const {
    const int idx = segment_index(s);
    return idx < 0 ? 0.0 : segments[idx].second_deriv(s);
}

void BumpProfile::validate(double tol) const {
    auto fail = [](const std::string& what) { throw std::logic_error("BumpProfile: " + what); };

    if (segments.empty()) fail("no segments");
    if (segments.front().lo != 0.0 || segments.back().hi != 3.0) fail("domain is not [0,3]");
    for (std::size_t i = 0; i + 1 < segments.size(); ++i)
        if (segments[i].hi != segments[i + 1].lo) fail("segments do not tile the domain");

    // Support: identically zero on [0, 1/2] and [5/2, 3].
    for (double s : {0.0, 0.25, 0.5})
        if (value(s) != 0.0 || deriv(s) != 0.0) fail("head support violated");
    for (double s : {2.5, 2.75, 3.0})
        if (value(s) != 0.0 || deriv(s) != 0.0) fail("tail support violated");

    // On-shell exactness at a few interior points of every shell.
    const auto shells = build_shells(family_size);
    for (const auto& shell : shells) {
        const double sign = shell_signs[shell.index - 1];
        for (double u : {0.0, 0.37, 1.0}) {
            const double s = shell.s_lo + u * (shell.s_hi - shell.s_lo);
            if (value(s) != sign * s) fail("on-shell value not exact");
            if (deriv(s) != sign) fail("on-shell derivative not exact");
        }
    }

    // C^2 continuity at interior knots, residuals relative to the local
    // evaluation scale (gap coefficients grow like 2^N).
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const auto& left = segments[i];
        const auto& right = segments[i + 1];
        const double knot = left.hi;
        const double w = left.hi - left.lo;
        double scale_v = 1.0, scale_d = 1.0, scale_dd = 1.0;
        for (int j = 0; j < 6; ++j) {
            const double wj = std::pow(w, j);
            scale_v += std::abs(left.coeffs[j]) * wj;
            if (j >= 1) scale_d += j * std::abs(left.coeffs[j]) * wj / w;
            if (j >= 2) scale_dd += j * (j - 1) * std::abs(left.coeffs[j]) * wj / (w * w);
        }
        if (std::abs(left.value(knot) - right.value(knot)) > tol * scale_v)
            fail("value continuity violated at knot " + std::to_string(knot));
        if (std::abs(left.deriv(knot) - right.deriv(knot)) > tol * scale_d)
            fail("derivative continuity violated at knot " + std::to_string(knot));
        if (std::abs(left.second_deriv(knot) - right.second_deriv(knot)) > tol * scale_dd)
            fail("second-derivative continuity violated at knot " + std::to_string(knot));
    }
}

RegionSpec RegionSpec::shell(int N, int shell_index, int dim) {
    RegionSpec r;
    r.kind = RegionKind::Shell;
    r.N = N;
    r.shell_index = shell_index;
    r.center = Eigen::VectorXd::Zero(dim);
    r.validate();
    return r;
}

RegionSpec RegionSpec::lifted_shell(int N, int shell_index, double R, const Eigen::VectorXd& q0) {
    RegionSpec r;
    r.kind = RegionKind::LiftedShell;
    r.N = N;
    r.shell_index = shell_index;
    r.base_radius = R;
    r.center = q0;
    r.validate();
    return r;
}

RegionSpec RegionSpec::low_momentum_ball(double nu, double C, const Eigen::VectorXd& q0) {
    RegionSpec r;
    r.kind = RegionKind::LowMomentumBall;
    r.momentum_bound = nu;
    r.base_radius = C;
    r.center = q0;
    r.validate();
    return r;
}

ShellSpec RegionSpec::shell_bounds() const {
    if (kind == RegionKind::LowMomentumBall)
        throw std::logic_error("RegionSpec: momentum ball has no shell bounds");
    const auto shells = build_shells(N);
    return shells.at(shell_index - 1);
}

void RegionSpec::validate() const {
    if (center.size() < 1) throw std::invalid_argument("RegionSpec: empty center");
    switch (kind) {
        case RegionKind::Shell:
        case RegionKind::LiftedShell:
            if (N < 1 || N > kMaxFamilySize) throw std::invalid_argument("RegionSpec: N out of range");
            if (shell_index < 1 || shell_index > (1 << N))
                throw std::invalid_argument("RegionSpec: shell index out of range");
            if (kind == RegionKind::LiftedShell && !(base_radius > 0.0))
                throw std::invalid_argument("RegionSpec: base radius must be positive");
            break;
        case RegionKind::LowMomentumBall:
            if (!(momentum_bound > 0.0) || !(base_radius > 0.0))
                throw std::invalid_argument("RegionSpec: ball bounds must be positive");
            break;
    }
}

bool region_contains(const RegionSpec& region, const CotangentPoint& pt) {
    const double s = metric_norm_sq(pt);
    switch (region.kind) {
        case RegionKind::Shell: {
            const auto bounds = region.shell_bounds();
            return bounds.s_lo <= s && s <= bounds.s_hi;
        }
        case RegionKind::LiftedShell: {
            if (pt.chart != Chart::Cover)
                throw std::invalid_argument("region_contains: lifted shell expects cover chart");
            const auto bounds = region.shell_bounds();
            return cover_distance(pt.q, region.center) < region.base_radius &&
                   bounds.s_lo <= s && s <= bounds.s_hi;
        }
        case RegionKind::LowMomentumBall:
            if (pt.chart != Chart::Cover)
                throw std::invalid_argument("region_contains: momentum ball expects cover chart");
            return cover_distance(pt.q, region.center) < region.base_radius &&
                   pt.p.norm() < region.momentum_bound;
    }
    return false;
}

namespace {

// Momentum with |p|^2 uniform in an inset of [s_lo, s_hi]; the inset keeps
// the squared norm inside the closed interval after the unit-vector
// normalization rounds.
Eigen::VectorXd shell_momentum(const ShellSpec& bounds, SampleRng& rng, int n) {
    const double inset = 1e-9 * (bounds.s_hi - bounds.s_lo);
    const double s = rng.uniform(bounds.s_lo + inset, bounds.s_hi - inset);
    return std::sqrt(s) * rng.unit_vector(n);
}

}  // namespace

CotangentPoint sample_region_point(const RegionSpec& region, std::uint64_t seed,
                                   std::uint64_t stream) {
    SampleRng rng(seed, stream);
    const int n = static_cast<int>(region.center.size());
    CotangentPoint pt;
    switch (region.kind) {
        case RegionKind::Shell: {
            pt.chart = Chart::Torus;
            pt.q.resize(n);
            for (int j = 0; j < n; ++j) pt.q[j] = rng.uniform();
            pt.p = shell_momentum(region.shell_bounds(), rng, n);
            break;
        }
        case RegionKind::LiftedShell: {
            pt.chart = Chart::Cover;
            pt.q = rng.in_ball(region.center, region.base_radius);
            pt.p = shell_momentum(region.shell_bounds(), rng, n);
            break;
        }
        case RegionKind::LowMomentumBall: {
            pt.chart = Chart::Cover;
            pt.q = rng.in_ball(region.center, region.base_radius);
            pt.p = rng.in_ball(Eigen::VectorXd::Zero(n), region.momentum_bound);
            break;
        }
    }
    return pt;
}

std::vector<CotangentPoint> sample_region(const RegionSpec& region, int count,
                                          std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_region: count must be >= 1");
    region.validate();
    std::vector<CotangentPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        out.push_back(sample_region_point(region, seed, static_cast<std::uint64_t>(i)));
    return out;
}

}  // namespace hofercert
