#ifndef HOFERCERT_GEOMETRY_HPP
#define HOFERCERT_GEOMETRY_HPP

#include <Eigen/Dense>

namespace hofercert {

/// Coordinate chart for the base position of a phase-space point.
/// Cover coordinates live in R^n, torus coordinates in [0,1)^n.
enum class Chart { Cover, Torus };

/// The model spaces: flat torus L = R^n/Z^n, universal cover R^n, and a
/// marked base point q0 on the cover. The metric is the flat one, so
/// geodesics are straight lines and the exponential map is affine.
struct ModelConfig {
    int n;                        // base dimension, >= 1
    Eigen::VectorXd base_point_q0;  // cover coordinates of the marked point

    static ModelConfig standard(int n);
    void validate() const;  // throws std::invalid_argument on violation
};

/// A point (q, p) of the cotangent bundle. q is a base position in the
/// chart indicated by `chart`; p is a covector in fiber coordinates.
struct CotangentPoint {
    Eigen::VectorXd q;
    Eigen::VectorXd p;
    Chart chart = Chart::Cover;

    int dim() const { return static_cast<int>(q.size()); }
};

/// Deck transformation of the cover R^n -> R^n/Z^n: translation by an
/// integer vector. Acts on phase space by (q, p) -> (q + v, p).
struct DeckTransformation {
    Eigen::VectorXi v;

    double translation_norm() const { return v.cast<double>().norm(); }
};

/// Squared metric norm of the momentum, |p|^2 in the flat metric.
double metric_norm_sq(const CotangentPoint& pt);

/// Euclidean distance between two base positions on the cover.
/// Throws std::invalid_argument on dimension mismatch.
double cover_distance(const Eigen::VectorXd& q1, const Eigen::VectorXd& q2);

/// Reduce a cover-chart point mod Z^n into [0,1)^n. Momenta are untouched.
CotangentPoint project_to_torus(const CotangentPoint& pt);

/// Send a torus-chart point to the cover sheet indexed by `sheet`.
CotangentPoint lift_to_cover(const CotangentPoint& pt, const Eigen::VectorXi& sheet);

/// Apply a deck transformation. Requires cover chart.
CotangentPoint apply_deck(const DeckTransformation& deck, const CotangentPoint& pt);

/// Canonical symplectic form on R^{2n} in (q, p) block coordinates:
/// Omega = [[0, I], [-I, 0]].
Eigen::MatrixXd canonical_form_matrix(int n);

/// Max-entry norm of J^T Omega J - Omega; zero iff J is symplectic.
/// Throws std::invalid_argument if J is not square of even size.
double symplectic_form_residual(const Eigen::MatrixXd& J);

}  // namespace hofercert

#endif
