#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hofercert/report.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitWitnessFailure = 1;
constexpr int kExitConfigError = 2;

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hofercert::ConfigError("cannot open output path: " + path);
    out << content;
    if (!out) throw hofercert::ConfigError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hofercert: certified two-sided Hofer-norm bounds for commuting "
                 "shell flows on the cotangent bundle of a flat torus"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out_override;
    std::uint64_t seed_override = 0;
    bool seed_given = false, print_config = false;
    app.add_option("--config", config_path, "flat key = value configuration file");
    app.add_option("--seed", seed_override, "override the configured seed")
        ->each([&seed_given](const std::string&) { seed_given = true; });
    app.add_option("--out", out_override, "output path (default: configured path or stdout)");
    app.add_flag("--print-config", print_config, "print the effective configuration and exit");

    auto* cmd_shells = app.add_subcommand("shells", "emit the shell-trace SVG diagram");
    cmd_shells->fallthrough();
    int shells_n = 0;
    cmd_shells->add_option("--N", shells_n, "family size (default: configured N)");

    auto* cmd_certify =
        app.add_subcommand("certify", "run the full certification pipeline, emit JSON");
    cmd_certify->fallthrough();
    std::string cloud_path;
    cmd_certify->add_option("--cloud", cloud_path,
                            "also export the shell ball embedding as a point-cloud CSV");

    auto* cmd_scan = app.add_subcommand("scan", "emit the constant growth table as CSV");
    cmd_scan->fallthrough();
    int scan_from = 1, scan_to = 6;
    cmd_scan->add_option("--from", scan_from, "first family size (default 1)");
    cmd_scan->add_option("--to", scan_to, "last family size (default 6)");

    auto* cmd_selftest =
        app.add_subcommand("selftest", "run the invariant suite at reduced sample counts");
    cmd_selftest->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        hofercert::RunConfig cfg;
        if (!config_path.empty()) cfg = hofercert::RunConfig::parse_file(config_path);
        if (seed_given) cfg.seed = seed_override;
        if (!out_override.empty()) cfg.out = out_override;
        cfg.validate();

        if (print_config) {
            std::cout << cfg.to_text();
            return kExitCertified;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << "error: no subcommand; see --help\n";
            return kExitConfigError;
        }

        if (*cmd_shells) {
            const int N = shells_n > 0 ? shells_n : cfg.N;
            write_output(cfg.out, hofercert::shells_svg(N));
            return kExitCertified;
        }

        if (*cmd_certify) {
            const auto cert = hofercert::certify(cfg.lattice_element(), cfg.model(),
                                                 cfg.certify_options());
            write_output(cfg.out, hofercert::certificate_to_json(cert));
            if (!cloud_path.empty()) {
                const auto family = hofercert::HamiltonianFamily(cfg.N);
                const auto region = hofercert::displaced_shell_region(
                    family, cfg.model(), cfg.lattice_element());
                write_output(cloud_path,
                             hofercert::embedding_cloud_csv(region, 1000, cfg.seed));
            }
            return cert.certified ? kExitCertified : kExitWitnessFailure;
        }

        if (*cmd_scan) {
            const auto scan = hofercert::growth_scan(scan_from, scan_to);
            write_output(cfg.out, hofercert::scan_to_csv(scan));
            return scan.geometric_growth ? kExitCertified : kExitWitnessFailure;
        }

        if (*cmd_selftest) return hofercert::tools::run_selftest(std::cout);
    } catch (const hofercert::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const hofercert::CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return kExitWitnessFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitCertified;
}
