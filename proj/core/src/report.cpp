#include "hofercert/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hofercert/rng.hpp"

namespace hofercert {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer for '" + key + "': " + value);
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad real for '" + key + "': " + value);
    }
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_int(key, trim(item)));
    if (out.empty()) throw ConfigError("config: empty list for '" + key + "'");
    return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "N")
        N = parse_int(key, value);
    else if (key == "n")
        n = parse_int(key, value);
    else if (key == "a")
        a = parse_int_list(key, value);
    else if (key == "displacement_samples")
        displacement_samples = parse_int(key, value);
    else if (key == "embedding_samples")
        embedding_samples = parse_int(key, value);
    else if (key == "dichotomy_samples")
        dichotomy_samples = parse_int(key, value);
    else if (key == "symplectic_samples")
        symplectic_samples = parse_int(key, value);
    else if (key == "fd_step")
        fd_step = parse_real(key, value);
    else if (key == "tol_symplectic")
        tol_symplectic = parse_real(key, value);
    else if (key == "tol_exact")
        tol_exact = parse_real(key, value);
    else if (key == "seed") {
        try {
            seed = std::stoull(value);
        } catch (const std::exception&) {
            throw ConfigError("config: bad seed: " + value);
        }
    } else if (key == "deck_radius")
        deck_radius = parse_int(key, value);
    else if (key == "out")
        out = value;
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::parse_text(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_text(buffer.str());
}

void RunConfig::validate() const {
    if (N < 1 || N > kMaxFamilySize) throw ConfigError("config: N out of range");
    if (n < 1) throw ConfigError("config: n must be >= 1");
    if (static_cast<int>(a.size()) != N) throw ConfigError("config: a must have N entries");
    if (displacement_samples < 1 || embedding_samples < 1 || dichotomy_samples < 1 ||
        symplectic_samples < 1)
        throw ConfigError("config: sample counts must be positive");
    if (!(fd_step >= 1e-8 && fd_step <= 1e-3))
        throw ConfigError("config: fd_step must lie in [1e-8, 1e-3]");
    if (!(tol_symplectic > 0.0) || !(tol_exact > 0.0))
        throw ConfigError("config: tolerances must be positive");
    if (deck_radius < 0) throw ConfigError("config: deck_radius must be >= 0");
}

std::string RunConfig::to_text() const {
    std::string s;
    auto line = [&s](const std::string& key, const std::string& value) {
        s += key + " = " + value + "\n";
    };
    line("N", std::to_string(N));
    line("n", std::to_string(n));
    std::string list;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) list += ",";
        list += std::to_string(a[i]);
    }
    line("a", list);
    line("displacement_samples", std::to_string(displacement_samples));
    line("embedding_samples", std::to_string(embedding_samples));
    line("dichotomy_samples", std::to_string(dichotomy_samples));
    line("symplectic_samples", std::to_string(symplectic_samples));
    line("fd_step", format_double(fd_step));
    line("tol_symplectic", format_double(tol_symplectic));
    line("tol_exact", format_double(tol_exact));
    line("seed", std::to_string(seed));
    line("deck_radius", std::to_string(deck_radius));
    line("out", out);
    return s;
}

ModelConfig RunConfig::model() const { return ModelConfig::standard(n); }

LatticeElement RunConfig::lattice_element() const {
    LatticeElement e;
    e.a.resize(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) e.a[static_cast<Eigen::Index>(i)] = a[i];
    return e;
}

CertifyOptions RunConfig::certify_options() const {
    CertifyOptions opts;
    opts.displacement_samples = displacement_samples;
    opts.dichotomy_samples = dichotomy_samples;
    opts.embedding_samples = embedding_samples;
    opts.symplectic_samples = symplectic_samples;
    opts.fd_step = fd_step;
    opts.symplectic_tol = tol_symplectic;
    opts.deck_radius = deck_radius;
    opts.seed = seed;
    return opts;
}

std::string format_double(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

/// Minimal deterministic JSON emitter: fixed key order, two-space
/// indentation, doubles through format_double.
class JsonWriter {
public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const std::string& name) {
        separator();
        indent();
        buf_ += '"' + name + "\": ";
        pending_value_ = true;
    }

    void value_raw(const std::string& raw) {
        if (!pending_value_) {
            separator();
            indent();
        }
        buf_ += raw;
        pending_value_ = false;
        first_ = false;
    }

    void value(double v) { value_raw(format_double(v)); }
    void value(int v) { value_raw(std::to_string(v)); }
    void value(std::int64_t v) { value_raw(std::to_string(v)); }
    void value(bool v) { value_raw(v ? "true" : "false"); }
    void value(const std::string& s) { value_raw('"' + s + '"'); }
    void null() { value_raw("null"); }

    std::string str() const { return buf_ + "\n"; }

private:
    void open(char c) {
        if (!pending_value_) {
            separator();
            indent();
        }
        buf_ += c;
        pending_value_ = false;
        ++depth_;
        first_ = true;
    }

    void close(char c) {
        --depth_;
        if (!first_) {
            buf_ += '\n';
            indent();
        }
        buf_ += c;
        first_ = false;
    }

    void separator() {
        if (!first_) buf_ += ',';
        if (depth_ > 0) buf_ += '\n';
        first_ = true;  // consumed by indent caller
    }

    void indent() { buf_.append(static_cast<std::size_t>(2 * depth_), ' '); }

    std::string buf_;
    int depth_ = 0;
    bool first_ = true;
    bool pending_value_ = false;
};

void write_vector(JsonWriter& w, const Eigen::VectorXd& v) {
    w.begin_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) w.value(v[i]);
    w.end_array();
}

void write_ivector(JsonWriter& w, const Eigen::VectorXi& v) {
    w.begin_array();
    for (Eigen::Index i = 0; i < v.size(); ++i) w.value(v[i]);
    w.end_array();
}

void write_point(JsonWriter& w, const CotangentPoint& pt) {
    w.begin_object();
    w.key("q");
    write_vector(w, pt.q);
    w.key("p");
    write_vector(w, pt.p);
    w.key("chart");
    w.value(std::string(pt.chart == Chart::Cover ? "cover" : "torus"));
    w.end_object();
}

void write_region(JsonWriter& w, const RegionSpec& region) {
    w.begin_object();
    w.key("kind");
    switch (region.kind) {
        case RegionKind::Shell: w.value(std::string("shell")); break;
        case RegionKind::LiftedShell: w.value(std::string("lifted_shell")); break;
        case RegionKind::LowMomentumBall: w.value(std::string("low_momentum_ball")); break;
    }
    if (region.kind != RegionKind::LowMomentumBall) {
        w.key("N");
        w.value(region.N);
        w.key("shell_index");
        w.value(region.shell_index);
        const auto bounds = region.shell_bounds();
        w.key("s_lo");
        w.value(bounds.s_lo);
        w.key("s_hi");
        w.value(bounds.s_hi);
    }
    if (region.kind != RegionKind::Shell) {
        w.key("base_radius");
        w.value(region.base_radius);
    }
    if (region.kind == RegionKind::LowMomentumBall) {
        w.key("momentum_bound");
        w.value(region.momentum_bound);
    }
    w.key("center");
    write_vector(w, region.center);
    w.end_object();
}

void write_witness(JsonWriter& w, const DisplacementWitness& witness) {
    w.begin_object();
    w.key("case");
    w.value(std::string(witness.dichotomy_case == DichotomyCase::ShellDisplaced
                            ? "shell_displaced"
                            : "ball_displaced"));
    w.key("region");
    write_region(w, witness.region);
    w.key("deck");
    write_ivector(w, witness.deck.v);
    w.key("samples_checked");
    w.value(witness.samples_checked);
    w.key("min_base_displacement");
    w.value(witness.min_base_displacement);
    w.key("min_exit_margin");
    w.value(witness.min_exit_margin);
    w.key("analytic_displacement_floor");
    w.value(witness.analytic_displacement_floor);
    w.key("analytic_case");
    w.value(witness.analytic_case);
    w.key("disjoint");
    w.value(witness.disjoint);
    w.key("counterexample");
    if (witness.counterexample)
        write_point(w, *witness.counterexample);
    else
        w.null();
    w.end_object();
}

void write_embedding(JsonWriter& w, const EmbeddingCertificate& cert) {
    w.begin_object();
    w.key("target");
    write_region(w, cert.target);
    w.key("ball_radius");
    w.value(cert.ball_radius);
    w.key("capacity");
    w.value(cert.capacity);
    w.key("alpha");
    w.value(cert.alpha);
    if (cert.target.kind == RegionKind::LiftedShell) {
        w.key("alpha_optimal");
        w.value(cert.alpha_optimal);
    }
    w.key("samples");
    w.value(cert.samples);
    w.key("containment_violations");
    w.value(cert.containment_violations);
    w.key("max_symplectic_residual");
    w.value(cert.max_symplectic_residual);
    w.key("min_image_separation");
    w.value(cert.min_image_separation);
    w.key("shell_fit");
    if (cert.fit) {
        w.begin_object();
        w.key("ok");
        w.value(cert.fit->ok);
        w.key("lhs");
        w.value(cert.fit->lhs);
        w.key("rhs_upper");
        w.value(cert.fit->rhs_upper);
        w.key("rhs_lower");
        w.value(cert.fit->rhs_lower);
        w.key("c_squared");
        w.value(cert.fit->c_squared);
        w.end_object();
    } else {
        w.null();
    }
    w.key("first_violation");
    if (cert.first_violation)
        write_point(w, *cert.first_violation);
    else
        w.null();
    w.key("certified");
    w.value(cert.certified);
    w.end_object();
}

}  // namespace

std::string certificate_to_json(const BoundCertificate& cert) {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(std::string("hofercert.certificate/1"));
    w.key("N");
    w.value(cert.N);
    w.key("base_dimension");
    w.value(cert.n);
    w.key("a");
    write_ivector(w, cert.a.a);
    w.key("l1");
    w.value(cert.l);
    w.key("certified");
    w.value(cert.certified);
    w.key("lower_bound");
    w.value(cert.lower);
    w.key("upper_bound");
    w.value(cert.upper);
    w.key("upper_one_shot");
    w.value(cert.upper_one_shot);
    w.key("upper_concatenated");
    w.value(cert.upper_concatenated);
    w.key("epsilon_N");
    w.value(cert.epsilon_N);
    w.key("C_osc");
    w.value(cert.C_osc);
    w.key("C_N");
    w.value(cert.C_N);
    w.key("lower_provenance");
    w.value(std::string("half of the certified capacity floor of a region every admissible "
                        "lift displaces"));
    w.key("upper_provenance");
    w.value(std::string("oscillation length of an explicit generating path; the group "
                        "energy may be smaller"));
    w.key("displacement");
    if (cert.displacement)
        write_witness(w, *cert.displacement);
    else
        w.null();
    w.key("deck_sweep");
    if (cert.deck_sweep) {
        const auto& sweep = *cert.deck_sweep;
        w.begin_object();
        w.key("deck_radius");
        w.value(sweep.deck_radius);
        w.key("cases_shell");
        w.value(sweep.cases_shell);
        w.key("cases_ball");
        w.value(sweep.cases_ball);
        w.key("all_certified");
        w.value(sweep.all_certified);
        w.key("tail_certified");
        w.value(sweep.tail_certified);
        w.key("capacity_floor");
        w.value(sweep.capacity_floor);
        w.key("failures");
        w.begin_array();
        for (const auto& witness : sweep.failures) write_witness(w, witness);
        w.end_array();
        w.end_object();
    } else {
        w.null();
    }
    w.key("embeddings");
    w.begin_array();
    for (const auto& e : cert.embeddings) write_embedding(w, e);
    w.end_array();
    w.end_object();
    return w.str();
}

std::string scan_to_csv(const GrowthScan& scan) {
    std::string s = "N,epsilon_N,C_osc,C_N,epsilon_ratio,C_N_ratio\n";
    bool first = true;
    for (const auto& row : scan.rows) {
        s += std::to_string(row.N) + "," + format_double(row.epsilon_N) + "," +
             format_double(row.C_osc) + "," + format_double(row.C_N) + ",";
        if (!first) s += format_double(row.epsilon_ratio);
        s += ",";
        if (!first) s += format_double(row.C_N_ratio);
        s += "\n";
        first = false;
    }
    return s;
}

std::string embedding_cloud_csv(const RegionSpec& target, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("embedding_cloud_csv: count must be >= 1");
    const BallEmbedding embedding = make_ball_embedding(target);
    const int n = static_cast<int>(target.center.size());

    std::string s;
    for (int j = 0; j < 2 * n; ++j) s += "ball_" + std::to_string(j) + ",";
    for (int j = 0; j < n; ++j) s += "q_" + std::to_string(j) + ",";
    for (int j = 0; j < n; ++j) {
        s += "p_" + std::to_string(j);
        s += (j + 1 < n) ? "," : "\n";
    }

    const Eigen::VectorXd origin = Eigen::VectorXd::Zero(2 * n);
    const double inset = embedding.ball_radius * (1.0 - 1e-9);
    for (int i = 0; i < count; ++i) {
        SampleRng rng(seed, static_cast<std::uint64_t>(i));
        const Eigen::VectorXd z = rng.in_ball(origin, inset);
        CotangentPoint ball_pt;
        ball_pt.q = z.head(n);
        ball_pt.p = z.tail(n);
        ball_pt.chart = Chart::Cover;
        const CotangentPoint image = embedding.map.forward(ball_pt);
        for (int j = 0; j < 2 * n; ++j) s += format_double(z[j]) + ",";
        for (int j = 0; j < n; ++j) s += format_double(image.q[j]) + ",";
        for (int j = 0; j < n; ++j) {
            s += format_double(image.p[j]);
            s += (j + 1 < n) ? "," : "\n";
        }
    }
    return s;
}

std::string shells_svg(int N) {
    const double size = 480.0;
    const double center = size / 2.0;
    const double scale = 127.0;  // sqrt(3) * scale stays inside the margin

    char buf[256];
    auto circle_arcs = [&](double r) {
        std::snprintf(buf, sizeof(buf),
                      "M %.3f %.3f A %.3f %.3f 0 1 0 %.3f %.3f A %.3f %.3f 0 1 0 %.3f %.3f Z",
                      center + r, center, r, r, center - r, center, r, r, center + r, center);
        return std::string(buf);
    };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                  "viewBox=\"0 0 %.0f %.0f\">\n",
                  size, size, size, size);
    s += buf;
    std::snprintf(buf, sizeof(buf),
                  "  <rect width=\"%.0f\" height=\"%.0f\" fill=\"#ffffff\"/>\n", size, size);
    s += buf;
    // Boundary of the momentum disc |p| < sqrt(3).
    std::snprintf(buf, sizeof(buf),
                  "  <circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"#000000\" "
                  "stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n",
                  center, center, scale * std::sqrt(3.0));
    s += buf;
    for (const auto& [r_lo, r_hi] : shell_boundary_radii(N)) {
        s += "  <path fill=\"#1f1f1f\" fill-rule=\"evenodd\" d=\"";
        s += circle_arcs(scale * r_hi);
        s += " ";
        s += circle_arcs(scale * r_lo);
        s += "\"/>\n";
    }
    // Zero section marker.
    std::snprintf(buf, sizeof(buf),
                  "  <circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"#000000\"/>\n", center,
                  center);
    s += buf;
    s += "</svg>\n";
    return s;
}

}  // namespace hofercert
