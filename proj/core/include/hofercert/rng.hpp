#ifndef HOFERCERT_RNG_HPP
#define HOFERCERT_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace hofercert {

/// Counter-based pseudo-random stream (splitmix64). Each (seed, stream)
/// pair yields an independent deterministic sequence, so sample batches
/// can be partitioned across workers with per-sample streams and the
/// merged result does not depend on the partition.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream)
        : state_(seed ^ (0x9E3779B97F4A7C15ull * (stream + 0x632BE59BD9B4E019ull))) {
        next();  // burn-in decorrelates nearby streams
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no spare caching).
    double normal() {
        double u1 = uniform();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform direction on the unit sphere in R^n.
    Eigen::VectorXd unit_vector(int n) {
        Eigen::VectorXd v(n);
        for (;;) {
            for (int j = 0; j < n; ++j) v[j] = normal();
            const double nrm = v.norm();
            if (nrm > 1e-12) return v / nrm;
        }
    }

    /// Uniform point in the open ball B(center, radius). The radius draw is
    /// inset by a relative 1e-9 so strict containment survives rounding.
    Eigen::VectorXd in_ball(const Eigen::VectorXd& center, double radius) {
        const int n = static_cast<int>(center.size());
        const double r = radius * (1.0 - 1e-9) * std::pow(uniform(), 1.0 / n);
        return center + r * unit_vector(n);
    }

private:
    std::uint64_t state_;
};

}  // namespace hofercert

#endif
