// Command-line entry point; see README for usage.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lbt/cli.hpp"

namespace {

bool parse_grid(const std::string& s, lbt::cli::GridSpec& g) {
    // a:b:n or a single value
    if (s.find(':') == std::string::npos) {
        try {
            g.lo = g.hi = std::stod(s);
        } catch (...) {
            return false;
        }
        g.n = 1;
        return true;
    }
    std::istringstream is(s);
    std::string a, b, n;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, n))
        return false;
    try {
        g.lo = std::stod(a);
        g.hi = std::stod(b);
        g.n = std::stoi(n);
    } catch (...) {
        return false;
    }
    return g.n >= 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Liouville billiard tables: dynamics, Radon transforms, frequency maps"};
    app.require_subcommand(1);

    lbt::cli::RunConfig cfg;
    std::string table_file, k1s, k2s, ks;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--table", table_file, "table specification (JSON)")->required();
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--tol", cfg.tol, "integration tolerance");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--threads", cfg.threads, "worker cap (also LBT_THREADS)");
    };

    std::vector<std::pair<std::string, std::string>> cmds = {
        {"validate", "check the profile conditions"},
        {"trajectory", "per-bounce trajectory dump"},
        {"conserve", "conservation drift over n bounces"},
        {"actions", "actions on a kappa-grid"},
        {"freq-scan", "actions and frequencies on a kappa-grid"},
        {"jacobian-scan", "frequency-map Jacobian on a kappa-grid"},
        {"rotation", "boundary rotation function"},
        {"radon-scan", "Radon transforms on a kappa-grid"},
        {"rigidity", "moment-system Gram certificates"},
        {"rational-orbit", "periodic-orbit means on a rational torus"}};
    for (auto& [name, desc] : cmds) {
        CLI::App* sub = app.add_subcommand(name, desc);
        add_common(sub);
        if (name == "trajectory" || name == "conserve")
            sub->add_option("--bounces", cfg.bounces, "number of bounces");
        if (name == "actions" || name == "freq-scan" || name == "jacobian-scan" ||
            name == "radon-scan" || name == "trajectory") {
            sub->add_option("--k1", k1s, "kappa1 grid a:b:n (or a single value)");
            sub->add_option("--k2", k2s, "kappa2 grid a:b:n (or a single value)");
        }
        if (name == "rotation") sub->add_option("--k", ks, "kappa grid a:b:n");
        if (name == "radon-scan" || name == "rational-orbit")
            sub->add_option("--kernel", cfg.kernel, "one | trig | product | codd");
        if (name == "rigidity") sub->add_option("--degree", cfg.degree, "max degree");
        if (name == "rational-orbit") {
            sub->add_option("--p", cfg.p, "numerator of Omega1/(2 pi)");
            sub->add_option("--q", cfg.q, "numerator of Omega2/(2 pi)");
            sub->add_option("--denom", cfg.denom, "rotation denominator");
            sub->add_option("--starts", cfg.starts, "number of orbit starts");
        }
    }

    CLI11_PARSE(app, argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();

    std::ifstream tf(table_file);
    if (!tf) {
        std::cerr << "cannot open table file: " << table_file << "\n";
        return 2;
    }
    std::ostringstream ss;
    ss << tf.rdbuf();
    cfg.table_json = ss.str();

    if (!k1s.empty() && !parse_grid(k1s, cfg.k1)) return 2;
    if (!k2s.empty() && !parse_grid(k2s, cfg.k2)) return 2;
    if (!ks.empty() && !parse_grid(ks, cfg.k)) return 2;

    try {
        return lbt::cli::run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
