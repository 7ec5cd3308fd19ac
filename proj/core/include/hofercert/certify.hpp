#ifndef HOFERCERT_CERTIFY_HPP
#define HOFERCERT_CERTIFY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hofercert/capacity.hpp"
#include "hofercert/dynamics.hpp"
#include "hofercert/lift.hpp"

namespace hofercert {

/// A displacement or embedding witness failed, so no lower bound can be
/// emitted for this element.
class CertificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// epsilon_N = pi / (80 * 2^{N+2}), the certified lower rate per unit of
/// l^1 length: half the shell capacity floor at R = l/4.
double epsilon_lower_rate(int N);

struct CertifyOptions {
    int displacement_samples = 100000;
    int dichotomy_samples = 2000;
    int embedding_samples = 100000;
    int symplectic_samples = 100;
    double fd_step = 1e-5;
    double symplectic_tol = 1e-6;
    int deck_radius = 0;  // <= 0: default ceil(2 l)
    std::uint64_t seed = 42;
};

/// Two-sided bounds on the Hofer norm of the time-1 map of sum a_k H_k,
/// with the witnesses backing each side. Both sides bound the same
/// uncomputable quantity, so lower <= upper always; `certified` records
/// whether every witness passed.
struct BoundCertificate {
    int N = 0;
    int n = 0;
    LatticeElement a;
    int l = 0;
    double lower = 0.0;  // epsilon_N * l, valid once witnesses pass
    double upper = 0.0;  // min of the two path constructions
    double upper_one_shot = 0.0;      // osc(sum a_k H_k)
    double upper_concatenated = 0.0;  // sum |a_k| osc(H_k)
    double epsilon_N = 0.0;
    double C_osc = 0.0;  // max_k osc(H_k); bounds the generator energies from above
    double C_N = 0.0;    // max(1/epsilon_N, C_osc)
    bool certified = false;

    std::optional<DisplacementWitness> displacement;
    std::optional<DeckSweepResult> deck_sweep;
    std::vector<EmbeddingCertificate> embeddings;  // shell and ball targets
};

/// Certified lower bound epsilon_N * l. Runs the displacement witness and
/// the full dichotomy sweep first and throws CertificationError if any
/// witness fails. Returns 0 for a = 0.
double lower_bound(const HamiltonianFamily& family, const ModelConfig& model,
                   const LatticeElement& a, const CertifyOptions& options = {});

/// Upper bound from the better of the two explicit generating paths.
double upper_bound(const HamiltonianFamily& family, const LatticeElement& a);

/// Full certificate for one lattice element. Witness failures are
/// embedded (certified = false) rather than thrown.
BoundCertificate certify(const LatticeElement& a, const ModelConfig& model,
                         const CertifyOptions& options = {});

/// Bi-invariance reduces a pair (a, b) to the single element a - b.
LatticeElement pair_difference(const LatticeElement& a, const LatticeElement& b);

struct GrowthRow {
    int N = 0;
    double epsilon_N = 0.0;
    double C_osc = 0.0;
    double C_N = 0.0;
    double epsilon_ratio = 0.0;  // epsilon_N / epsilon_{N-1}; 0 on the first row
    double C_N_ratio = 0.0;      // C_N / C_{N-1}; 0 on the first row
};

struct GrowthScan {
    std::vector<GrowthRow> rows;
    bool geometric_growth = false;  // every C_N ratio >= 1.9
};

/// Constants per family size over [from, to]. epsilon_N halves exactly
/// per step; C_N doubles once C_N = 1/epsilon_N dominates.
GrowthScan growth_scan(int from, int to);

}  // namespace hofercert

#endif
