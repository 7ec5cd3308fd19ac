#include "hofercert/certify.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hofercert {

double epsilon_lower_rate(int N) {
    if (N < 1 || N > kMaxFamilySize)
        throw std::invalid_argument("epsilon_lower_rate: N out of range");
    return std::numbers::pi / (80.0 * std::ldexp(1.0, N + 2));
}

double lower_bound(const HamiltonianFamily& family, const ModelConfig& model,
                   const LatticeElement& a, const CertifyOptions& options) {
    family.check_weights(a);
    if (a.is_zero()) return 0.0;

    const DisplacementWitness witness =
        verify_displacement(family, model, a, options.displacement_samples, options.seed);
    if (!witness.disjoint)
        throw CertificationError("lower_bound: displacement witness failed");

    const DeckSweepResult sweep =
        displaced_capacity_floor(family, model, a, options.deck_radius,
                                 options.dichotomy_samples, options.seed);
    if (!sweep.all_certified)
        throw CertificationError("lower_bound: deck dichotomy sweep failed");

    return epsilon_lower_rate(family.size()) * a.l1();
}

double upper_bound(const HamiltonianFamily& family, const LatticeElement& a) {
    return hofer_upper_bound(family, a);
}

BoundCertificate certify(const LatticeElement& a, const ModelConfig& model,
                         const CertifyOptions& options) {
    model.validate();
    const int N = a.size();
    if (N < 1 || N > kMaxFamilySize)
        throw std::invalid_argument("certify: lattice element size out of range");

    const HamiltonianFamily family(N);

    BoundCertificate cert;
    cert.N = N;
    cert.n = model.n;
    cert.a = a;
    cert.l = a.l1();
    cert.epsilon_N = epsilon_lower_rate(N);
    cert.C_osc = max_generator_oscillation(family);
    cert.C_N = std::max(1.0 / cert.epsilon_N, cert.C_osc);

    if (a.is_zero()) {
        // The identity: trivial certificate (0, 0).
        cert.certified = true;
        return cert;
    }

    cert.upper_one_shot = oscillation(family, a);
    for (int k = 1; k <= N; ++k)
        if (a.a[k - 1] != 0)
            cert.upper_concatenated += std::abs(a.a[k - 1]) * generator_oscillation(family, k);
    cert.upper = std::min(cert.upper_one_shot, cert.upper_concatenated);

    cert.displacement =
        verify_displacement(family, model, a, options.displacement_samples, options.seed);
    cert.deck_sweep = displaced_capacity_floor(family, model, a, options.deck_radius,
                                               options.dichotomy_samples, options.seed);

    cert.embeddings.push_back(certify_ball_embedding(
        displaced_shell_region(family, model, a), options.embedding_samples, options.seed,
        options.fd_step, options.symplectic_samples, options.symplectic_tol));
    cert.embeddings.push_back(certify_ball_embedding(
        control_ball_region(model, a), options.embedding_samples, options.seed,
        options.fd_step, options.symplectic_samples, options.symplectic_tol));

    bool embeddings_ok = true;
    for (const auto& e : cert.embeddings) embeddings_ok = embeddings_ok && e.certified;
    cert.certified = cert.displacement->disjoint && cert.deck_sweep->all_certified &&
                     embeddings_ok;
    if (cert.certified) cert.lower = cert.epsilon_N * cert.l;
    return cert;
}

LatticeElement pair_difference(const LatticeElement& a, const LatticeElement& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("pair_difference: size mismatch");
    LatticeElement d;
    d.a = a.a - b.a;
    return d;
}

GrowthScan growth_scan(int from, int to) {
    if (from < 1 || to < from || to > kMaxFamilySize)
        throw std::invalid_argument("growth_scan: bad range");

    GrowthScan scan;
    scan.geometric_growth = true;
    double prev_epsilon = 0.0, prev_cn = 0.0;
    for (int N = from; N <= to; ++N) {
        const HamiltonianFamily family(N);
        GrowthRow row;
        row.N = N;
        row.epsilon_N = epsilon_lower_rate(N);
        row.C_osc = max_generator_oscillation(family);
        row.C_N = std::max(1.0 / row.epsilon_N, row.C_osc);
        if (N > from) {
            row.epsilon_ratio = row.epsilon_N / prev_epsilon;
            row.C_N_ratio = row.C_N / prev_cn;
            if (!(row.C_N_ratio >= 1.9)) scan.geometric_growth = false;
        }
        prev_epsilon = row.epsilon_N;
        prev_cn = row.C_N;
        scan.rows.push_back(row);
    }
    return scan;
}

}  // namespace hofercert
