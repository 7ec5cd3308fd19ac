#include "hofercert/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace hofercert {

ModelConfig ModelConfig::standard(int n) {
    ModelConfig cfg;
    cfg.n = n;
    cfg.base_point_q0 = Eigen::VectorXd::Zero(n);
    cfg.validate();
    return cfg;
}

void ModelConfig::validate() const {
    if (n < 1) throw std::invalid_argument("ModelConfig: base dimension must be >= 1");
    if (base_point_q0.size() != n)
        throw std::invalid_argument("ModelConfig: base point dimension mismatch");
    if (!base_point_q0.allFinite())
        throw std::invalid_argument("ModelConfig: base point must be finite");
}

double metric_norm_sq(const CotangentPoint& pt) {
    return pt.p.squaredNorm();
}

double cover_distance(const Eigen::VectorXd& q1, const Eigen::VectorXd& q2) {
    if (q1.size() != q2.size())
        throw std::invalid_argument("cover_distance: dimension mismatch");
    return (q1 - q2).norm();
}

CotangentPoint project_to_torus(const CotangentPoint& pt) {
    if (pt.chart == Chart::Torus) return pt;
    CotangentPoint out = pt;
    for (Eigen::Index j = 0; j < out.q.size(); ++j) {
        out.q[j] -= std::floor(out.q[j]);
        if (out.q[j] >= 1.0) out.q[j] = 0.0;  // floor rounding at the seam
    }
    out.chart = Chart::Torus;
    return out;
}

CotangentPoint lift_to_cover(const CotangentPoint& pt, const Eigen::VectorXi& sheet) {
    if (pt.chart != Chart::Torus)
        throw std::invalid_argument("lift_to_cover: point must be in the torus chart");
    if (sheet.size() != pt.q.size())
        throw std::invalid_argument("lift_to_cover: sheet dimension mismatch");
    CotangentPoint out = pt;
    out.q += sheet.cast<double>();
    out.chart = Chart::Cover;
    return out;
}

CotangentPoint apply_deck(const DeckTransformation& deck, const CotangentPoint& pt) {
    if (pt.chart != Chart::Cover)
        throw std::invalid_argument("apply_deck: deck transformations act on the cover chart");
    if (deck.v.size() != pt.q.size())
        throw std::invalid_argument("apply_deck: dimension mismatch");
    CotangentPoint out = pt;
    out.q += deck.v.cast<double>();
    return out;
}

Eigen::MatrixXd canonical_form_matrix(int n) {
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    return omega;
}

double symplectic_form_residual(const Eigen::MatrixXd& J) {
    if (J.rows() != J.cols() || J.rows() % 2 != 0)
        throw std::invalid_argument("symplectic_form_residual: J must be square of even size");
    const int n = static_cast<int>(J.rows()) / 2;
    const Eigen::MatrixXd omega = canonical_form_matrix(n);
    return (J.transpose() * omega * J - omega).cwiseAbs().maxCoeff();
}

}  // namespace hofercert
