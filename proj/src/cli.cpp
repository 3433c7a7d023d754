#include "lbt/cli.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "lbt/dynamics.hpp"
#include "lbt/frequency.hpp"
#include "lbt/profiles.hpp"
#include "lbt/radon.hpp"
#include "lbt/table_io.hpp"
#include "lbt/tori.hpp"

namespace lbt::cli {

namespace {

namespace fs = std::filesystem;

// splitmix64: platform-stable seeded uniforms
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next_u64() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
};

int thread_count(const RunConfig& cfg, int njobs) {
    int n = cfg.threads;
    if (n <= 0) {
        if (const char* env = std::getenv("LBT_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = int(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::min(n, std::max(1, njobs));
}

// ordered parallel map: out[i] = fn(i), workers pick indices atomically
template <class Fn>
void parallel_for(int n, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

struct Failure {
    int index;
    std::string what;
};

struct Output {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<Failure> failures;
    std::mutex mu;

    void fail(int index, const std::string& what) {
        std::lock_guard<std::mutex> lock(mu);
        failures.push_back({index, what});
    }
};

std::vector<double> grid_points(const GridSpec& g) {
    std::vector<double> pts;
    if (g.n <= 0) return pts;
    if (g.n == 1) {
        pts.push_back(g.lo);
        return pts;
    }
    for (int i = 0; i < g.n; ++i)
        pts.push_back(g.lo + (g.hi - g.lo) * double(i) / (g.n - 1));
    return pts;
}

const char* case_name(tori::CaseTag tag) {
    switch (tag) {
        case tori::CaseTag::A: return "A";
        case tori::CaseTag::B: return "B";
        case tori::CaseTag::C: return "C";
        case tori::CaseTag::D: return "D";
        default: return "degenerate";
    }
}

void write_outputs(const RunConfig& cfg, const Output& out, int status) {
    fs::create_directories(cfg.out_dir);
    fs::path csv = fs::path(cfg.out_dir) / (cfg.command + ".csv");
    std::ofstream f(csv, std::ios::binary);
    for (std::size_t i = 0; i < out.header.size(); ++i)
        f << (i ? "," : "") << out.header[i];
    f << "\n";
    for (const auto& row : out.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << "\n";
    }
    f.close();

    nlohmann::json meta;
    meta["command"] = cfg.command;
    meta["version"] = kVersion;
    meta["seed"] = cfg.seed;
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  (unsigned long long)config_hash(cfg));
    meta["config_hash"] = hex;
    meta["status"] = status;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& fl : out.failures)
        fails.push_back({{"index", fl.index}, {"what", fl.what}});
    meta["failures"] = fails;
    std::ofstream mf(fs::path(cfg.out_dir) / (cfg.command + ".meta.json"),
                     std::ios::binary);
    mf << meta.dump(2) << "\n";
}

using profiles::ProfileTriple;

// ---- command bodies ----

int cmd_validate(const RunConfig&, const ProfileTriple& t, Output& out) {
    auto rep = t.validate(4);
    out.header = {"condition", "severity", "passed", "residual"};
    for (const auto& it : rep.items)
        out.rows.push_back({it.condition, it.hard ? "hard" : "warning",
                            it.passed ? "1" : "0", format_double(it.residual)});
    return rep.hard_ok() ? 0 : 3;
}

dynamics::BoundaryCovector seeded_start(const ProfileTriple& t, Rng& rng) {
    double k1 = t.nu3() * (0.3 + 0.4 * rng.uniform());
    double k2 = t.nu1() * (0.3 + 0.4 * rng.uniform());
    tori::TorusSpec s = tori::make_spec(t, k1, k2);
    double f2 = t.inverse_branch(2, k2);
    double th1 = t.omega1() * rng.uniform();
    double th2 = 0.8 * f2 * (2.0 * rng.uniform() - 1.0);
    return tori::torus_point(t, s, th1, th2);
}

int cmd_trajectory(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    out.header = {"bounce", "theta1", "theta2", "p1", "p2", "H", "I1", "I2", "time"};
    Rng rng(cfg.seed);
    dynamics::BoundaryCovector xi;
    if (cfg.k1.n >= 1 && cfg.k2.n >= 1) {
        tori::TorusSpec s = tori::make_spec(t, cfg.k1.lo, cfg.k2.lo);
        xi = tori::torus_point(t, s, 0.3 * t.omega1(), 0.0);
    } else {
        xi = seeded_start(t, rng);
    }
    double tcum = 0.0;
    for (int b = 0; b <= cfg.bounces; ++b) {
        dynamics::PhasePoint z = dynamics::lift_inward(t, xi);
        auto v = dynamics::hamiltonian_values(t, z);
        out.rows.push_back({std::to_string(b), format_double(xi.theta1),
                            format_double(xi.theta2), format_double(xi.p1),
                            format_double(xi.p2), format_double(v[0]),
                            format_double(v[1]), format_double(v[2]),
                            format_double(tcum)});
        if (b == cfg.bounces) break;
        double dt = 0.0;
        try {
            xi = dynamics::billiard_map(t, xi, cfg.tol, {}, &dt);
        } catch (const Error& e) {
            out.fail(b, e.what());
            return 3;
        }
        tcum += dt;
    }
    return 0;
}

int cmd_conserve(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    out.header = {"bounce", "H", "I1", "I2", "driftH", "driftI1", "driftI2"};
    Rng rng(cfg.seed);
    dynamics::BoundaryCovector xi = seeded_start(t, rng);
    dynamics::PhasePoint z = dynamics::lift_inward(t, xi);
    auto ref = dynamics::hamiltonian_values(t, z);
    double dH = 0, d1 = 0, d2 = 0;
    for (int b = 1; b <= cfg.bounces; ++b) {
        dynamics::FlowResult fr;
        try {
            fr = dynamics::integrate_to_boundary(t, z, cfg.tol);
        } catch (const Error& e) {
            out.fail(b, e.what());
            return 3;
        }
        auto v = dynamics::hamiltonian_values(t, fr.state);
        dH = std::max(dH, std::abs(v[0] - ref[0]) / std::abs(ref[0]));
        d1 = std::max(d1, std::abs(v[1] - ref[1]) / std::abs(ref[1]));
        d2 = std::max(d2, std::abs(v[2] - ref[2]) / std::abs(ref[2]));
        out.rows.push_back({std::to_string(b), format_double(v[0]), format_double(v[1]),
                            format_double(v[2]), format_double(dH), format_double(d1),
                            format_double(d2)});
        z = dynamics::reflect(t, fr.state);
    }
    return 0;
}

int cmd_scan(const RunConfig& cfg, const ProfileTriple& t, Output& out, bool freqs,
             bool jac) {
    auto g1 = grid_points(cfg.k1), g2 = grid_points(cfg.k2);
    if (g1.empty() || g2.empty()) return 2;
    out.header = {"kappa1", "kappa2", "case", "J1", "J2", "J3"};
    if (freqs) {
        out.header.push_back("Omega1");
        out.header.push_back("Omega2");
    }
    if (jac) out.header.push_back("jacobian");
    int n = int(g1.size() * g2.size());
    out.rows.assign(n, {});
    std::atomic<bool> failed{false};
    parallel_for(n, thread_count(cfg, n), [&](int idx) {
        double k1 = g1[idx / g2.size()], k2 = g2[idx % g2.size()];
        std::vector<std::string> row{format_double(k1), format_double(k2)};
        try {
            tori::CaseTag tag = tori::classify_case(k1, k2, t);
            row.push_back(case_name(tag));
            if (tag == tori::CaseTag::A || tag == tori::CaseTag::B) {
                row.push_back(format_double(freq::action(t, 1, k1, k2)));
                row.push_back(format_double(freq::action(t, 2, k1, k2)));
                row.push_back(format_double(freq::action(t, 3, k1, k2)));
                if (freqs) {
                    auto om = freq::frequencies(t, k1, k2);
                    row.push_back(format_double(om.first));
                    row.push_back(format_double(om.second));
                }
                if (jac) row.push_back(format_double(freq::jacobian(t, k1, k2)));
            } else {
                for (std::size_t c = 3; c < out.header.size(); ++c) row.push_back("nan");
            }
        } catch (const Error& e) {
            out.fail(idx, e.what());
            failed = true;
            while (row.size() < out.header.size()) row.push_back("nan");
        }
        out.rows[idx] = std::move(row);
    });
    return failed ? 3 : 0;
}

int cmd_rotation(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    auto gk = grid_points(cfg.k);
    if (gk.empty()) return 2;
    out.header = {"kappa", "rho", "J1", "J2"};
    out.rows.assign(gk.size(), {});
    std::atomic<bool> failed{false};
    parallel_for(int(gk.size()), thread_count(cfg, int(gk.size())), [&](int i) {
        std::vector<std::string> row{format_double(gk[i])};
        try {
            row.push_back(format_double(freq::boundary_rotation(t, gk[i])));
            auto J = freq::boundary_actions(t, gk[i]);
            row.push_back(format_double(J.first));
            row.push_back(format_double(J.second));
        } catch (const Error& e) {
            out.fail(i, e.what());
            failed = true;
            while (row.size() < out.header.size()) row.push_back("nan");
        }
        out.rows[i] = std::move(row);
    });
    return failed ? 3 : 0;
}

int cmd_radon_scan(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    auto g1 = grid_points(cfg.k1), g2 = grid_points(cfg.k2);
    if (g1.empty() || g2.empty()) return 2;
    radon::BoundaryFunction K = radon::kernel_by_name(t, cfg.kernel);
    out.header = {"kappa1", "kappa2", "case", "R_unit", "R_normal"};
    int n = int(g1.size() * g2.size());
    out.rows.assign(n, {});
    std::atomic<bool> failed{false};
    parallel_for(n, thread_count(cfg, n), [&](int idx) {
        double k1 = g1[idx / g2.size()], k2 = g2[idx % g2.size()];
        std::vector<std::string> row{format_double(k1), format_double(k2)};
        try {
            tori::TorusSpec s = tori::make_spec(t, k1, k2);
            row.push_back(case_name(s.tag));
            if (s.tag == tori::CaseTag::A || s.tag == tori::CaseTag::B) {
                row.push_back(
                    format_double(radon::radon_torus(t, K, radon::MuChoice::Unit, s)));
                row.push_back(format_double(
                    radon::radon_torus(t, K, radon::MuChoice::NormalIncidence, s)));
            } else {
                row.push_back("nan");
                row.push_back("nan");
            }
        } catch (const Error& e) {
            out.fail(idx, e.what());
            failed = true;
            while (row.size() < out.header.size()) row.push_back("nan");
        }
        out.rows[idx] = std::move(row);
    });
    return failed ? 3 : 0;
}

int cmd_rigidity(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    out.header = {"degree", "dim", "min_sv", "max_sv", "ill_conditioned"};
    for (int d = 0; d <= cfg.degree; ++d) {
        auto rc = radon::rigidity_certificate(t, d);
        out.rows.push_back({std::to_string(d), std::to_string(rc.dim),
                            format_double(rc.min_sv), format_double(rc.max_sv),
                            rc.ill_conditioned ? "1" : "0"});
    }
    return 0;
}

int cmd_rational_orbit(const RunConfig& cfg, const ProfileTriple& t, Output& out) {
    out.header = {"start", "theta1", "theta2", "eps2", "orbit_mean", "weight"};
    radon::BoundaryFunction K = radon::kernel_by_name(t, cfg.kernel);
    tori::TorusSpec s;
    try {
        s = radon::find_rational_torus(t, cfg.p, cfg.q, cfg.denom);
    } catch (const Error& e) {
        out.fail(-1, e.what());
        return 3;
    }
    Rng rng(cfg.seed);
    double wsum = 0.0, msum = 0.0;
    int fails = 0;
    for (int i = 0; i < cfg.starts; ++i) {
        // stratified (theta1, chi) with a golden-ratio offset on chi
        double th1 = t.omega1() * (i + rng.uniform()) / cfg.starts;
        double chi = 0.5 * M_PI * std::fmod(0.6180339887498949 * i + rng.uniform(), 1.0);
        int quarter = i % 4;
        double x2 = s.k2 * std::sin(chi) * std::sin(chi);
        double th2 = t.inverse_branch(2, x2);
        if (quarter == 1 || quarter == 3) th2 = -th2;
        tori::TorusSpec si = s;
        si.eps2 = (quarter < 2) ? +1 : -1;
        double weight;
        {
            double ph1 = t.phi(1, th1);
            double p1sq = (ph1 - s.k1) * (ph1 - s.k2);
            weight = (ph1 - x2) / std::sqrt(p1sq) * t.density(2, x2) * 2.0 *
                     std::sqrt(s.k2) * std::sin(chi) / std::sqrt(x2 - s.k1);
        }
        try {
            auto xi = tori::torus_point(t, si, th1, th2);
            double m = radon::periodic_orbit_mean(t, K, radon::MuChoice::Unit, xi,
                                                  cfg.denom, cfg.tol);
            out.rows.push_back({std::to_string(i), format_double(th1),
                                format_double(th2), std::to_string(si.eps2),
                                format_double(m), format_double(weight)});
            wsum += weight;
            msum += weight * m;
        } catch (const Error& e) {
            out.fail(i, e.what());
            if (++fails > cfg.starts / 10) return 3;
        }
    }
    double orbit_avg = msum / wsum;
    double rad = radon::radon_torus(t, K, radon::MuChoice::Unit, s);
    out.rows.push_back({"summary", format_double(s.k1), format_double(s.k2), "0",
                        format_double(orbit_avg), format_double(rad)});
    return 0;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t config_hash(const RunConfig& cfg) {
    std::ostringstream os;
    os << cfg.command << '|' << cfg.table_json << '|' << cfg.out_dir << '|'
       << format_double(cfg.tol) << '|' << cfg.seed << '|';
    for (const GridSpec* g : {&cfg.k1, &cfg.k2, &cfg.k})
        os << format_double(g->lo) << ':' << format_double(g->hi) << ':' << g->n << '|';
    os << cfg.bounces << '|' << cfg.degree << '|' << cfg.p << ',' << cfg.q << ','
       << cfg.denom << '|' << cfg.starts << '|' << cfg.kernel;
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : os.str()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

int run(const RunConfig& cfg) {
    std::optional<profiles::ProfileTriple> table;
    try {
        table.emplace(profiles::load_table_json(cfg.table_json));
    } catch (...) {
        return 2;
    }
    const profiles::ProfileTriple& t = *table;

    Output out;
    int status = 0;
    try {
        if (cfg.command == "validate") status = cmd_validate(cfg, t, out);
        else if (cfg.command == "trajectory") status = cmd_trajectory(cfg, t, out);
        else if (cfg.command == "conserve") status = cmd_conserve(cfg, t, out);
        else if (cfg.command == "actions") status = cmd_scan(cfg, t, out, false, false);
        else if (cfg.command == "freq-scan") status = cmd_scan(cfg, t, out, true, false);
        else if (cfg.command == "jacobian-scan") status = cmd_scan(cfg, t, out, true, true);
        else if (cfg.command == "rotation") status = cmd_rotation(cfg, t, out);
        else if (cfg.command == "radon-scan") status = cmd_radon_scan(cfg, t, out);
        else if (cfg.command == "rigidity") status = cmd_rigidity(cfg, t, out);
        else if (cfg.command == "rational-orbit") status = cmd_rational_orbit(cfg, t, out);
        else return 2;
    } catch (const std::invalid_argument&) {
        return 2;
    } catch (const Error& e) {
        out.fail(-1, e.what());
        status = 3;
    }
    write_outputs(cfg, out, status);
    return status;
}

} // namespace lbt::cli
