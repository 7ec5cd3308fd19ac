#ifndef HOFERCERT_DYNAMICS_HPP
#define HOFERCERT_DYNAMICS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "hofercert/geometry.hpp"
#include "hofercert/shells.hpp"

namespace hofercert {

/// An element a of the integer lattice Z^N acting through the commuting
/// generator flows. The l^1 norm is the word length the certificates
/// compare against.
struct LatticeElement {
    Eigen::VectorXi a;

    int size() const { return static_cast<int>(a.size()); }
    int l1() const { return a.cwiseAbs().sum(); }
    bool is_zero() const { return a.isZero(); }

    static LatticeElement of(std::initializer_list<int> entries);
};

/// A Hamiltonian of radial type, H(q, p) = phi(|p|^2)/2: either the
/// geodesic energy (phi = identity, generating the geodesic flow) or a
/// compactly supported shell generator built from a BumpProfile.
class RadialHamiltonian {
public:
    static RadialHamiltonian geodesic_energy();
    static RadialHamiltonian generator(std::shared_ptr<const BumpProfile> profile);

    bool is_geodesic() const { return profile_ == nullptr; }
    int label() const;  // generator index k, 0 for the geodesic energy
    const BumpProfile* profile() const { return profile_.get(); }

    double profile_value(double s) const;
    double profile_deriv(double s) const;
    double profile_second_deriv(double s) const;

    /// H(q, p) = phi(|p|^2)/2.
    double energy(const CotangentPoint& pt) const;

private:
    RadialHamiltonian() = default;
    std::shared_ptr<const BumpProfile> profile_;
};

/// The N commuting shell generators for a fixed family size, sharing one
/// knot partition. Flows of any weighted sum stay closed-form because the
/// momentum norm is conserved.
class HamiltonianFamily {
public:
    explicit HamiltonianFamily(int N);

    int size() const { return N_; }
    const std::vector<ShellSpec>& shells() const { return shells_; }
    const BumpProfile& profile(int k) const;  // 1-based
    RadialHamiltonian generator(int k) const;

    /// sum_k a_k phi_k(s) and its derivative. On shell i these are exact
    /// integer combinations of the shell signs.
    double sum_value(const LatticeElement& a, double s) const;
    double sum_deriv(const LatticeElement& a, double s) const;

    void check_weights(const LatticeElement& a) const;

private:
    int N_;
    std::vector<ShellSpec> shells_;
    std::vector<std::shared_ptr<const BumpProfile>> profiles_;
};

/// Time-t flow of a radial Hamiltonian, in closed form: the momentum is
/// conserved and the base drifts along the geodesic through q with
/// velocity phi'(|p|^2) p. Reduced mod Z^n iff the chart is Torus.
CotangentPoint exact_flow(const RadialHamiltonian& h, double t, const CotangentPoint& pt);

/// Time-t flow of sum_k a_k H_k. On shell A_{i(I)} with I_k a_k >= 0 this
/// coincides with the geodesic flow at time l t, l = |a|_1.
CotangentPoint exact_flow_sum(const HamiltonianFamily& family, const LatticeElement& a,
                              double t, const CotangentPoint& pt);

/// Analytic Jacobian of exact_flow at pt; symplectic for every t.
Eigen::MatrixXd exact_flow_jacobian(const RadialHamiltonian& h, double t,
                                    const CotangentPoint& pt);

/// A separable Hamiltonian H(q,p) = T(p) + V(q) given through its
/// gradients, for the generic integrator below.
struct SeparableHamiltonian {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_q;  // dV/dq
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad_p;  // dT/dp
};

/// Stoermer-Verlet (kick-drift-kick) integration to time t using
/// ceil(|t|/dt) equal steps. Order 2; exact on flows whose momentum is
/// constant. Serves as the independent oracle for exact_flow.
CotangentPoint leapfrog_flow(const SeparableHamiltonian& h, double t, const CotangentPoint& pt,
                             double dt);

/// leapfrog_flow driven by the analytic partials of a radial Hamiltonian.
CotangentPoint integrator_flow(const RadialHamiltonian& h, double t, const CotangentPoint& pt,
                               double dt);

/// Poisson bracket {H1, H2} from analytic gradients; identically zero for
/// radial pairs since neither depends on the base point.
double poisson_bracket(const RadialHamiltonian& h1, const RadialHamiltonian& h2,
                       const CotangentPoint& pt);

/// Central finite-difference evaluation of {H1, H2}; independent oracle.
double poisson_bracket_fd(const RadialHamiltonian& h1, const RadialHamiltonian& h2,
                          const CotangentPoint& pt, double step);

/// max - min over phase space of (1/2) sum_k a_k phi_k(|p|^2), computed
/// per segment from polynomial critical points. Zero is always attained
/// (the sum vanishes below |p|^2 = 1/2).
double oscillation(const HamiltonianFamily& family, const LatticeElement& a);

/// Oscillation of the single generator H_k.
double generator_oscillation(const HamiltonianFamily& family, int k);

/// C = max_k osc(H_k), the Lipschitz constant of the upper bound.
double max_generator_oscillation(const HamiltonianFamily& family);

/// Dense-grid cross-check of oscillation (max - min over a uniform grid
/// of `samples` points of [0, 3]).
double oscillation_sampled(const HamiltonianFamily& family, const LatticeElement& a,
                           int samples);

/// Upper bound for the Hofer norm of the time-1 map of sum a_k H_k: the
/// better of the one-shot path (osc of the sum) and the concatenation of
/// generator paths (sum |a_k| osc(H_k)).
double hofer_upper_bound(const HamiltonianFamily& family, const LatticeElement& a);

}  // namespace hofercert

#endif
