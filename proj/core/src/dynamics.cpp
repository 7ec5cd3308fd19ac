#include "hofercert/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hofercert {

LatticeElement LatticeElement::of(std::initializer_list<int> entries) {
    LatticeElement e;
    e.a.resize(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index j = 0;
    for (int v : entries) e.a[j++] = v;
    return e;
}

RadialHamiltonian RadialHamiltonian::geodesic_energy() { return RadialHamiltonian{}; }

RadialHamiltonian RadialHamiltonian::generator(std::shared_ptr<const BumpProfile> profile) {
    if (!profile) throw std::invalid_argument("RadialHamiltonian: null profile");
    RadialHamiltonian h;
    h.profile_ = std::move(profile);
    return h;
}

int RadialHamiltonian::label() const { return profile_ ? profile_->generator : 0; }

double RadialHamiltonian::profile_value(double s) const {
    return profile_ ? profile_->value(s) : s;
}

double RadialHamiltonian::profile_deriv(double s) const {
    return profile_ ? profile_->deriv(s) : 1.0;
}

double RadialHamiltonian::profile_second_deriv(double s) const {
    return profile_ ? profile_->second_deriv(s) : 0.0;
}

double RadialHamiltonian::energy(const CotangentPoint& pt) const {
    return 0.5 * profile_value(metric_norm_sq(pt));
}

HamiltonianFamily::HamiltonianFamily(int N) : N_(N), shells_(build_shells(N)) {
    profiles_.reserve(static_cast<std::size_t>(N));
    for (int k = 1; k <= N; ++k)
        profiles_.push_back(std::make_shared<const BumpProfile>(build_profile(k, N)));
    // All generators share one knot partition; the oscillation code sums
    // segment coefficients index by index.
    for (int k = 2; k <= N; ++k) {
        const auto& ref = profiles_.front()->segments;
        const auto& segs = profiles_[static_cast<std::size_t>(k - 1)]->segments;
        if (segs.size() != ref.size())
            throw std::logic_error("HamiltonianFamily: inconsistent knot partitions");
    }
}

const BumpProfile& HamiltonianFamily::profile(int k) const {
    if (k < 1 || k > N_) throw std::invalid_argument("HamiltonianFamily: generator out of range");
    return *profiles_[static_cast<std::size_t>(k - 1)];
}

RadialHamiltonian HamiltonianFamily::generator(int k) const {
    if (k < 1 || k > N_) throw std::invalid_argument("HamiltonianFamily: generator out of range");
    return RadialHamiltonian::generator(profiles_[static_cast<std::size_t>(k - 1)]);
}

void HamiltonianFamily::check_weights(const LatticeElement& a) const {
    if (a.size() != N_)
        throw std::invalid_argument("HamiltonianFamily: weight vector size != N");
}

double HamiltonianFamily::sum_value(const LatticeElement& a, double s) const {
    check_weights(a);
    double acc = 0.0;
    for (int k = 0; k < N_; ++k)
        if (a.a[k] != 0) acc += a.a[k] * profiles_[static_cast<std::size_t>(k)]->value(s);
    return acc;
}

double HamiltonianFamily::sum_deriv(const LatticeElement& a, double s) const {
    check_weights(a);
    double acc = 0.0;
    for (int k = 0; k < N_; ++k)
        if (a.a[k] != 0) acc += a.a[k] * profiles_[static_cast<std::size_t>(k)]->deriv(s);
    return acc;
}

namespace {

CotangentPoint drift(const CotangentPoint& pt, double speed) {
    CotangentPoint out = pt;
    out.q += speed * pt.p;
    if (out.chart == Chart::Torus) {
        out.chart = Chart::Cover;
        out = project_to_torus(out);
    }
    return out;
}

}  // namespace

CotangentPoint exact_flow(const RadialHamiltonian& h, double t, const CotangentPoint& pt) {
    return drift(pt, t * h.profile_deriv(metric_norm_sq(pt)));
}

CotangentPoint exact_flow_sum(const HamiltonianFamily& family, const LatticeElement& a,
                              double t, const CotangentPoint& pt) {
    return drift(pt, t * family.sum_deriv(a, metric_norm_sq(pt)));
}

Eigen::MatrixXd exact_flow_jacobian(const RadialHamiltonian& h, double t,
                                    const CotangentPoint& pt) {
    const int n = pt.dim();
    const double s = metric_norm_sq(pt);
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    // d q'/d p = t (phi' I + 2 phi'' p p^T); the symmetric block below the
    // identity blocks is what makes J symplectic.
    J.topRightCorner(n, n) =
        t * (h.profile_deriv(s) * Eigen::MatrixXd::Identity(n, n) +
             2.0 * h.profile_second_deriv(s) * pt.p * pt.p.transpose());
    return J;
}

CotangentPoint leapfrog_flow(const SeparableHamiltonian& h, double t, const CotangentPoint& pt,
                             double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("leapfrog_flow: dt must be positive");
    if (t == 0.0) return pt;
    const long steps = static_cast<long>(std::ceil(std::abs(t) / dt));
    const double step = t / static_cast<double>(steps);

    Eigen::VectorXd q = pt.q;
    Eigen::VectorXd p = pt.p;
    for (long i = 0; i < steps; ++i) {
        p -= 0.5 * step * h.grad_q(q);
        q += step * h.grad_p(p);
        p -= 0.5 * step * h.grad_q(q);
    }
    CotangentPoint out;
    out.q = q;
    out.p = p;
    out.chart = Chart::Cover;
    if (pt.chart == Chart::Torus) out = project_to_torus(out);
    return out;
}

CotangentPoint integrator_flow(const RadialHamiltonian& h, double t, const CotangentPoint& pt,
                               double dt) {
    SeparableHamiltonian sep;
    sep.grad_q = [](const Eigen::VectorXd& q) { return Eigen::VectorXd::Zero(q.size()).eval(); };
    sep.grad_p = [&h](const Eigen::VectorXd& p) {
        return (h.profile_deriv(p.squaredNorm()) * p).eval();
    };
    return leapfrog_flow(sep, t, pt, dt);
}

double poisson_bracket(const RadialHamiltonian& h1, const RadialHamiltonian& h2,
                       const CotangentPoint& pt) {
    const int n = pt.dim();
    const double s = metric_norm_sq(pt);
    const Eigen::VectorXd dq1 = Eigen::VectorXd::Zero(n);  // radial: no base dependence
    const Eigen::VectorXd dq2 = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd dp1 = h1.profile_deriv(s) * pt.p;
    const Eigen::VectorXd dp2 = h2.profile_deriv(s) * pt.p;
    return dq1.dot(dp2) - dp1.dot(dq2);
}

double poisson_bracket_fd(const RadialHamiltonian& h1, const RadialHamiltonian& h2,
                          const CotangentPoint& pt, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("poisson_bracket_fd: step must be positive");
    const int n = pt.dim();
    auto partial = [&](const RadialHamiltonian& h, bool wrt_q, int j) {
        CotangentPoint plus = pt, minus = pt;
        if (wrt_q) {
            plus.q[j] += step;
            minus.q[j] -= step;
        } else {
            plus.p[j] += step;
            minus.p[j] -= step;
        }
        return (h.energy(plus) - h.energy(minus)) / (2.0 * step);
    };
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
        acc += partial(h1, true, j) * partial(h2, false, j) -
               partial(h1, false, j) * partial(h2, true, j);
    return acc;
}

namespace {

// Real roots of sum_j c[j] u^j in the open interval (0, span), via the
// companion matrix of the deflated polynomial.
std::vector<double> interior_roots(const std::array<double, 5>& c, double span) {
    double max_c = 0.0;
    for (double v : c) max_c = std::max(max_c, std::abs(v));
    if (max_c == 0.0) return {};
    int degree = 4;
    while (degree > 0 && std::abs(c[static_cast<std::size_t>(degree)]) < 1e-14 * max_c) --degree;
    if (degree == 0) return {};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    const double lead = c[static_cast<std::size_t>(degree)];
    for (int j = 0; j < degree; ++j)
        companion(j, degree - 1) = -c[static_cast<std::size_t>(j)] / lead;
    for (int j = 1; j < degree; ++j) companion(j, j - 1) = 1.0;

    std::vector<double> roots;
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
    for (int j = 0; j < degree; ++j) {
        const std::complex<double> z = solver.eigenvalues()[j];
        if (std::abs(z.imag()) > 1e-8 * (1.0 + std::abs(z.real()))) continue;
        const double u = z.real();
        if (u > 0.0 && u < span) roots.push_back(u);
    }
    return roots;
}

double eval_local(const std::array<double, 6>& c, double t) {
    double acc = c[5];
    for (int j = 4; j >= 0; --j) acc = acc * t + c[j];
    return acc;
}

}  // namespace

double oscillation(const HamiltonianFamily& family, const LatticeElement& a) {
    family.check_weights(a);
    if (a.is_zero()) return 0.0;

    const auto& ref_segments = family.profile(1).segments;
    double max_v = 0.0, min_v = 0.0;  // zero attained below the support
    for (std::size_t si = 0; si < ref_segments.size(); ++si) {
        std::array<double, 6> coeffs{};
        for (int k = 1; k <= family.size(); ++k) {
            const int w = a.a[k - 1];
            if (w == 0) continue;
            const auto& seg = family.profile(k).segments[si];
            for (int j = 0; j < 6; ++j) coeffs[j] += 0.5 * w * seg.coeffs[j];
        }
        const double span = ref_segments[si].hi - ref_segments[si].lo;
        auto consider = [&](double t) {
            const double v = eval_local(coeffs, t);
            max_v = std::max(max_v, v);
            min_v = std::min(min_v, v);
        };
        consider(0.0);
        consider(span);
        std::array<double, 5> deriv{};
        for (int j = 1; j < 6; ++j) deriv[static_cast<std::size_t>(j - 1)] = j * coeffs[j];
        for (double u : interior_roots(deriv, span)) consider(u);
    }
    return max_v - min_v;
}

double generator_oscillation(const HamiltonianFamily& family, int k) {
    LatticeElement unit;
    unit.a = Eigen::VectorXi::Zero(family.size());
    unit.a[k - 1] = 1;
    return oscillation(family, unit);
}

double max_generator_oscillation(const HamiltonianFamily& family) {
    double best = 0.0;
    for (int k = 1; k <= family.size(); ++k)
        best = std::max(best, generator_oscillation(family, k));
    return best;
}

double oscillation_sampled(const HamiltonianFamily& family, const LatticeElement& a,
                           int samples) {
    family.check_weights(a);
    if (samples < 2) throw std::invalid_argument("oscillation_sampled: need >= 2 samples");
    double max_v = 0.0, min_v = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = 3.0 * i / (samples - 1);
        const double v = 0.5 * family.sum_value(a, s);
        max_v = std::max(max_v, v);
        min_v = std::min(min_v, v);
    }
    return max_v - min_v;
}

double hofer_upper_bound(const HamiltonianFamily& family, const LatticeElement& a) {
    family.check_weights(a);
    if (a.is_zero()) return 0.0;
    const double one_shot = oscillation(family, a);
    double concatenated = 0.0;
    for (int k = 1; k <= family.size(); ++k)
        if (a.a[k - 1] != 0)
            concatenated += std::abs(a.a[k - 1]) * generator_oscillation(family, k);
    return std::min(one_shot, concatenated);
}

}  // namespace hofercert
