#ifndef HOFERCERT_REPORT_HPP
#define HOFERCERT_REPORT_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hofercert/certify.hpp"

namespace hofercert {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Run parameters, loadable from a flat `key = value` text file. Every
/// field has an embedded default; `to_text` emits the same grammar the
/// parser reads, so printed configs round-trip.
struct RunConfig {
    int N = 2;
    int n = 2;
    std::vector<int> a = {3, -5};
    int displacement_samples = 100000;
    int embedding_samples = 100000;
    int dichotomy_samples = 2000;
    int symplectic_samples = 100;
    double fd_step = 1e-5;
    double tol_symplectic = 1e-6;
    double tol_exact = 1e-12;
    std::uint64_t seed = 42;
    int deck_radius = 0;  // 0 selects ceil(2 l)
    std::string out;      // empty: stdout

    static RunConfig parse_text(const std::string& text);
    static RunConfig parse_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
    void validate() const;  // throws ConfigError
    std::string to_text() const;

    ModelConfig model() const;
    LatticeElement lattice_element() const;
    CertifyOptions certify_options() const;
};

/// Doubles rendered with 17 significant digits ("%.17g"): round-trip
/// exact and byte-deterministic. Non-finite values render as "null".
std::string format_double(double v);

/// Certificate report, schema "hofercert.certificate/1". Fixed key order,
/// deterministic bytes for a fixed certificate.
std::string certificate_to_json(const BoundCertificate& cert);

/// Growth-scan table as CSV with header
/// N,epsilon_N,C_osc,C_N,epsilon_ratio,C_N_ratio (ratios empty on the
/// first row).
std::string scan_to_csv(const GrowthScan& scan);

/// Sampled point cloud of the composed ball embedding: one row per
/// sample, input ball coordinates then image (q, p).
std::string embedding_cloud_csv(const RegionSpec& target, int count, std::uint64_t seed);

/// Fiber trace of the 2^N shells: concentric dark annuli between radii
/// sqrt(s_lo) and sqrt(s_hi) inside the boundary circle of radius
/// sqrt(3). Deterministic bytes.
std::string shells_svg(int N);

}  // namespace hofercert

#endif
