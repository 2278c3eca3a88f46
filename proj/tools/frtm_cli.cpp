// Experiment driver: computes norm tables, concentration-family scans,
// constrained maximizations, and diagnostic sweeps, serialized as CSV or
// JSON with the discretization context embedded in every output.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frtm/frtm.hpp"

namespace {

constexpr const char* kToolVersion = "frtm-cli 1.0.0";

struct ExperimentConfig {
    double grid_L = 20.0;
    std::size_t grid_n = 4096;
    std::vector<double> alphas;
    std::vector<double> epsilons;
    std::vector<double> qs;
    std::string out;          // empty = stdout
    std::string format = "csv";
    std::size_t max_iters = 5000;
    double tol = 1e-8;
    std::size_t rearrange_every = 20;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += fmt(v[i]);
    }
    return s;
}

void write_output(const ExperimentConfig& cfg, const std::string& command,
                  const Table& table) {
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "# tool_version=" << kToolVersion << "\n";
        os << "# command=" << command << "\n";
        os << "# grid_L=" << fmt(cfg.grid_L) << " grid_n=" << cfg.grid_n << "\n";
        if (!cfg.alphas.empty()) os << "# alpha=" << join(cfg.alphas) << "\n";
        if (!cfg.epsilons.empty()) os << "# eps=" << join(cfg.epsilons) << "\n";
        if (!cfg.qs.empty()) os << "# q=" << join(cfg.qs) << "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) os << ",";
            os << table.columns[c];
        }
        os << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ",";
                os << row[c];
            }
            os << "\n";
        }
    } else {
        nlohmann::ordered_json j;
        j["tool_version"] = kToolVersion;
        j["command"] = command;
        j["grid"] = {{"L", cfg.grid_L}, {"n", cfg.grid_n}};
        if (!cfg.alphas.empty()) j["alpha"] = cfg.alphas;
        if (!cfg.epsilons.empty()) j["eps"] = cfg.epsilons;
        if (!cfg.qs.empty()) j["q"] = cfg.qs;
        j["columns"] = table.columns;
        j["rows"] = table.rows;
        os << j.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
        f << os.str();
    }
}

std::vector<std::pair<std::string, frtm::Profile>> fixture_suite() {
    return {{"gaussian-1", frtm::gaussian(1.0)},
            {"gaussian-4", frtm::gaussian(4.0)},
            {"hat", frtm::hat(0.0, 1.0)},
            {"bump", frtm::bump(0.0, 1.0)},
            {"cosine-window", frtm::cosine_window(2.0, 5.0)}};
}

int run_norms(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    Table t;
    t.columns = {"fixture", "l2", "seminorm_fourier", "seminorm_gagliardo", "h12",
                 "relative_gap"};
    auto suite = fixture_suite();
    suite.emplace_back("zero", frtm::Profile{"zero", [](double) { return 0.0; }});
    for (const auto& [name, prof] : suite) {
        const auto u = frtm::sample(grid, prof);
        const double l2 = frtm::l2_norm_sq(u);
        const double sf = frtm::seminorm_fourier_sq(u);
        const double sg = frtm::seminorm_gagliardo_sq(u);
        const double gap = sf > 0.0 ? (sg - sf) / sf : 0.0;
        t.rows.push_back({name, fmt(l2), fmt(sf), fmt(sg), fmt(sf + l2), fmt(gap)});
    }
    write_output(cfg, "norms", t);
    return 0;
}

int run_moser_scan(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    const double alpha = cfg.alphas.empty() ? std::numbers::pi : cfg.alphas.front();
    Table t;
    t.columns = {"epsilon", "T", "l2_exact", "l2_numeric", "seminorm",
                 "ratio_at_alpha", "status"};
    bool any_failed = false;
    for (double eps : cfg.epsilons) {
        const frtm::MoserParam p(eps);
        std::vector<std::string> row{fmt(eps), fmt(p.log_inv())};
        try {
            const auto u = frtm::moser_function(p, grid);
            row.push_back(fmt(frtm::moser_l2_sq_exact(p)));
            row.push_back(fmt(frtm::l2_norm_sq(u)));
            const double sem = frtm::seminorm_fourier_sq(u);
            row.push_back(fmt(sem));
            auto v = u;
            const double s = std::sqrt(sem);
            for (double& x : v.values) x /= s;
            try {
                row.push_back(fmt(
                    frtm::evaluate({frtm::FunctionalKind::AdachiTanaka,
                                    frtm::Exponent(alpha)}, v).value));
                row.push_back("ok");
            } catch (const frtm::overflow_error&) {
                row.push_back("+inf");
                row.push_back("overflow");
            }
        } catch (const frtm::resolution_error&) {
            row.insert(row.end(), {"", "", "", "", "resolution"});
            any_failed = true;
        }
        t.rows.push_back(std::move(row));
    }
    write_output(cfg, "moser-scan", t);
    return any_failed ? 3 : 0;
}

int run_blowup(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    std::vector<frtm::MoserParam> ps;
    for (double eps : cfg.epsilons) ps.emplace_back(eps);
    const frtm::Exponent alpha(cfg.alphas.empty() ? std::numbers::pi
                                                  : cfg.alphas.front());
    Table t;
    t.columns = {"epsilon", "T", "l2_exact", "l2_numeric", "seminorm",
                 "ratio_at_alpha", "status"};
    for (const auto& row : frtm::critical_blowup_scan(ps, grid, alpha)) {
        t.rows.push_back({fmt(row.epsilon), fmt(row.log_inv), fmt(row.l2_exact),
                          fmt(row.l2_numeric), fmt(row.seminorm),
                          row.overflow ? "+inf" : fmt(row.ratio),
                          row.overflow ? "overflow" : "ok"});
    }
    write_output(cfg, "blowup", t);
    return 0;
}

frtm::MaximizeConfig optimizer_config(const ExperimentConfig& cfg, double alpha,
                                      const frtm::Grid& grid) {
    frtm::MaximizeConfig mc{frtm::Exponent(alpha), grid};
    mc.max_iters = cfg.max_iters;
    mc.tol = cfg.tol;
    mc.rearrange_every = cfg.rearrange_every;
    mc.starts = frtm::default_starts();
    return mc;
}

int run_maximize(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    Table t;
    t.columns = {"alpha", "best_value", "margin_over_alpha", "seminorm_residual",
                 "l2_residual", "status"};
    std::size_t failed = 0;
    for (double alpha : cfg.alphas) {
        try {
            const auto rep = frtm::maximize(
                {frtm::FunctionalKind::AdachiTanakaNormalized, frtm::Exponent(alpha)},
                optimizer_config(cfg, alpha, grid));
            t.rows.push_back({fmt(alpha), fmt(rep.best_value),
                              fmt(rep.best_value - alpha),
                              fmt(rep.constraint_residuals.at("seminorm-1")),
                              fmt(rep.constraint_residuals.at("l2-1")),
                              frtm::to_string(rep.status)});
        } catch (const frtm::overflow_error&) {
            t.rows.push_back({fmt(alpha), "", "", "", "", "overflow"});
            ++failed;
        }
    }
    write_output(cfg, "maximize", t);
    return (failed == cfg.alphas.size() && !cfg.alphas.empty()) ? 3 : 0;
}

int run_relation(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    Table t;
    t.columns = {"alpha", "A_lower_bound", "transported_value", "identity_residual",
                 "B_pi_lower_bound", "status"};
    std::size_t failed = 0;
    for (double alpha : cfg.alphas) {
        try {
            const frtm::Exponent e(alpha);
            const auto rep = frtm::maximize(
                {frtm::FunctionalKind::AdachiTanakaNormalized, e},
                optimizer_config(cfg, alpha, grid));
            const double a_lb = frtm::tm_integral(rep.best_function, e);
            const auto w = frtm::transport_to_B(rep.best_function, e);
            const double lhs =
                frtm::tm_integral(w, frtm::Exponent(std::numbers::pi));
            const double rhs = frtm::relation_bound(e, a_lb);
            t.rows.push_back({fmt(alpha), fmt(a_lb), fmt(lhs),
                              fmt((lhs - rhs) / rhs), fmt(rhs), "ok"});
        } catch (const std::exception&) {
            t.rows.push_back({fmt(alpha), "", "", "", "", "failed"});
            ++failed;
        }
    }
    write_output(cfg, "relation", t);
    return (failed == cfg.alphas.size() && !cfg.alphas.empty()) ? 3 : 0;
}

int run_orbit(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    Table t;
    t.columns = {"fixture", "alpha", "series", "fd", "relative_gap", "status"};
    std::size_t failed = 0, total = 0;
    for (const auto& [name, prof] : fixture_suite()) {
        auto u = frtm::rearrange(frtm::sample(grid, prof)).fn;
        const double s = std::sqrt(frtm::h12_norm_sq(u));
        for (double& x : u.values) x /= s;
        for (double alpha : cfg.alphas) {
            ++total;
            try {
                const frtm::Exponent e(alpha);
                const double series = frtm::orbit_derivative_series(u, e);
                const double fd = frtm::orbit_derivative_fd(u, e);
                t.rows.push_back({name, fmt(alpha), fmt(series), fmt(fd),
                                  fmt(std::abs(fd - series) / std::abs(series)),
                                  "ok"});
            } catch (const std::exception&) {
                t.rows.push_back({name, fmt(alpha), "", "", "", "failed"});
                ++failed;
            }
        }
    }
    write_output(cfg, "orbit", t);
    return (failed == total && total > 0) ? 3 : 0;
}

int run_gn(const ExperimentConfig& cfg) {
    const auto grid = frtm::make_grid(cfg.grid_L, cfg.grid_n);
    Table t;
    t.columns = {"fixture", "q", "ratio", "beta0_reference"};
    const std::string beta0 = fmt(frtm::gn_beta0_reference());
    auto suite = fixture_suite();
    suite.insert(suite.begin(), {"gaussian-half", frtm::gaussian(0.5)});
    for (const auto& [name, prof] : suite) {
        const auto u = frtm::sample(grid, prof);
        for (double q : cfg.qs)
            t.rows.push_back({name, fmt(q), fmt(frtm::gn_ratio(u, q)), beta0});
    }
    write_output(cfg, "gn", t);
    return 0;
}

void apply_config_file(const std::string& path, ExperimentConfig& cfg, CLI::App& app) {
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("--config", "cannot open config file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", std::string("malformed JSON: ") + e.what());
    }
    // flags win: only fill fields the command line left untouched
    const auto unset = [&](const std::string& flag) {
        const auto* opt = app.get_option_no_throw(flag);
        return opt == nullptr || opt->count() == 0;
    };
    try {
        if (j.contains("grid")) {
            if (j["grid"].contains("L") && unset("--grid-L"))
                cfg.grid_L = j["grid"]["L"].get<double>();
            if (j["grid"].contains("n") && unset("--grid-n"))
                cfg.grid_n = j["grid"]["n"].get<std::size_t>();
        }
        if (j.contains("alpha") && unset("--alpha"))
            cfg.alphas = j["alpha"].get<std::vector<double>>();
        if (j.contains("eps") && unset("--eps"))
            cfg.epsilons = j["eps"].get<std::vector<double>>();
        if (j.contains("q") && unset("--q"))
            cfg.qs = j["q"].get<std::vector<double>>();
        if (j.contains("out") && unset("--out")) cfg.out = j["out"].get<std::string>();
        if (j.contains("format") && unset("--format"))
            cfg.format = j["format"].get<std::string>();
        if (j.contains("optimizer")) {
            const auto& o = j["optimizer"];
            if (o.contains("max_iters")) cfg.max_iters = o["max_iters"].get<std::size_t>();
            if (o.contains("tol")) cfg.tol = o["tol"].get<double>();
            if (o.contains("rearrange_every"))
                cfg.rearrange_every = o["rearrange_every"].get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("--config", std::string("bad field type: ") + e.what());
    }
    if (cfg.format != "csv" && cfg.format != "json")
        throw CLI::ValidationError("--config", "format must be csv or json");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational toolkit for exponential-integral functionals on the "
                 "half-order Sobolev space of the line"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;
    app.add_option("--grid-L", cfg.grid_L, "half-width of the truncated line");
    app.add_option("--grid-n", cfg.grid_n, "number of grid nodes (even)");
    app.add_option("--alpha", cfg.alphas, "exponent values");
    app.add_option("--eps", cfg.epsilons, "concentration parameters");
    app.add_option("--q", cfg.qs, "Lebesgue exponents for the ratio scan");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", cfg.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config_path, "JSON config file; flags override it");

    auto* norms = app.add_subcommand("norms", "norm table over the fixture suite");
    auto* moser_scan = app.add_subcommand("moser-scan", "concentration family scan");
    auto* blowup = app.add_subcommand("blowup", "critical-exponent divergence scan");
    auto* maximize = app.add_subcommand("maximize", "constrained maximization per alpha");
    auto* relation = app.add_subcommand("relation", "subcritical-to-critical transport");
    auto* orbit = app.add_subcommand("orbit", "dilation-orbit derivative diagnostic");
    auto* gn = app.add_subcommand("gn", "interpolation-inequality ratio scan");
    for (auto* sub : {norms, moser_scan, blowup, maximize, relation, orbit, gn})
        sub->fallthrough(); // shared flags may follow the subcommand name

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) apply_config_file(config_path, cfg, app);
        frtm::make_grid(cfg.grid_L, cfg.grid_n); // validate before any work
        for (double a : cfg.alphas)
            if (!(a > 0.0)) throw CLI::ValidationError("--alpha", "must be positive");
        for (double e : cfg.epsilons)
            if (!(e > 0.0 && e < 1.0))
                throw CLI::ValidationError("--eps", "must lie in (0, 1)");
        for (double q : cfg.qs)
            if (!(q >= 2.0)) throw CLI::ValidationError("--q", "must be >= 2");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (norms->parsed()) return run_norms(cfg);
        if (moser_scan->parsed()) return run_moser_scan(cfg);
        if (blowup->parsed()) return run_blowup(cfg);
        if (maximize->parsed()) return run_maximize(cfg);
        if (relation->parsed()) return run_relation(cfg);
        if (orbit->parsed()) return run_orbit(cfg);
        if (gn->parsed()) return run_gn(cfg);
    } catch (const frtm::overflow_error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    } catch (const frtm::resolution_error& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
