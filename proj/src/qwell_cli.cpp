// Reproduction harness: spectrum / otoc / echo / classical / sweep commands
// on top of the qwell C API. Emits CSV (comment headers, full precision) and
// gnuplot scripts that reference the CSVs relatively.

#include <CLI11.hpp>

#include <atomic>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qwell.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Config {
    std::string model = "I";
    std::vector<std::string> models;  // sweep
    double sigma = 0.0;
    std::vector<double> sigmas;  // sweep
    std::string out = "out";
    int grid_points = 4096;
    int k_states = 120;
    int k_trunc = 100;
    std::string convention = "paper";
    std::vector<double> betas;
    double tmax = 10.0;
    int samples = 500;
    double lambda = 0.5;  // echo perturbation
    int m_max = 40;
    int jobs = 1;
};

int convention_code(const Config& cfg) {
    if (cfg.convention == "paper") return QWELL_CONVENTION_PAPER;
    if (cfg.convention == "canonical") return QWELL_CONVENTION_CANONICAL;
    throw CLI::ValidationError("--convention must be paper or canonical");
}

std::vector<double> default_betas() {
    // T = 5, 10, 20, 50 straddle the preset barrier scales.
    return {1.0 / 5.0, 1.0 / 10.0, 1.0 / 20.0, 1.0 / 50.0};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Csv {
    std::ofstream f;
    explicit Csv(const fs::path& p) : f(p) {
        if (!f) throw std::runtime_error("cannot open " + p.string());
    }
    void comment(const std::string& line) { f << "# " << line << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
        f << "\n";
    }
};

uint64_t fnv1a_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::string checksum_hex(const fs::path& p) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fnv1a_file(p));
    return buf;
}

struct SolverHandle {
    qwell_solver* s = nullptr;
    ~SolverHandle() { qwell_solver_free(s); }
};

void make_solver(SolverHandle& h, const std::string& model, double sigma,
                 int grid_points, int k_states) {
    h.s = qwell_solver_new(model.c_str(), sigma, grid_points, k_states, 0.0, 0.0);
    if (!h.s) throw std::runtime_error(std::string("solver failed: ") + qwell_last_error());
}

std::vector<double> time_grid(double tmax, int samples) {
    std::vector<double> t(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) t[static_cast<size_t>(i)] = tmax * i / (samples - 1);
    return t;
}

void write_plot_script(const fs::path& dir, const std::string& name,
                       const std::vector<std::string>& lines) {
    std::ofstream f(dir / name);
    f << "# gnuplot script; data files are referenced relatively\n";
    for (const auto& l : lines) f << l << "\n";
}

// ---- commands -------------------------------------------------------------

void cmd_spectrum(const Config& cfg) {
    fs::create_directories(cfg.out);
    SolverHandle h;
    make_solver(h, cfg.model, cfg.sigma, cfg.grid_points, cfg.k_states);
    const int k = qwell_solver_k_states(h.s);
    double x_min, x_max;
    qwell_solver_domain(h.s, &x_min, &x_max);

    {
        Csv c(fs::path(cfg.out) / "potential.csv");
        c.comment("model=" + cfg.model + " sigma=" + fmt(cfg.sigma) +
                  " lambda=" + fmt(qwell_solver_lambda(h.s)) +
                  " shift=" + fmt(qwell_solver_shift(h.s)));
        c.comment("x,V");
        for (int i = 0; i <= 800; ++i) {
            double x = x_min + (x_max - x_min) * i / 800.0;
            c.row({fmt(x), fmt(qwell_solver_potential(h.s, x, 0))});
        }
    }
    std::vector<double> e(static_cast<size_t>(k));
    qwell_solver_energies(h.s, e.data());
    {
        Csv c(fs::path(cfg.out) / "spectrum.csv");
        c.comment("model=" + cfg.model + " sigma=" + fmt(cfg.sigma) +
                  " resolution_warning=" + std::to_string(qwell_solver_resolution_warning(h.s)));
        c.comment("n,E");
        for (int n = 0; n < k; ++n) c.row({std::to_string(n), fmt(e[static_cast<size_t>(n)])});
    }
    {
        const int np = qwell_solver_grid_points(h.s);
        std::vector<double> x(static_cast<size_t>(np)), psi(static_cast<size_t>(np));
        qwell_solver_grid(h.s, x.data());
        int n_show = std::min(12, k);
        std::vector<std::vector<double>> states;
        for (int n = 0; n < n_show; ++n) {
            qwell_solver_state(h.s, n, psi.data());
            states.push_back(psi);
        }
        Csv c(fs::path(cfg.out) / "states.csv");
        c.comment("x,psi_0..psi_" + std::to_string(n_show - 1));
        for (int i = 0; i < np; i += 4) {  // thin the grid for plotting
            std::vector<std::string> row{fmt(x[static_cast<size_t>(i)])};
            for (auto& s : states) row.push_back(fmt(s[static_cast<size_t>(i)]));
            c.row(row);
        }
    }
    {
        std::vector<int> lo(64), hi(64);
        int n_clusters = 0;
        qwell_clusters(h.s, 64, lo.data(), hi.data(), &n_clusters);
        Csv c(fs::path(cfg.out) / "clusters.csv");
        c.comment("level-difference clusters (index range into diffs, energies)");
        c.comment("lo,hi,E_lo,E_hi");
        for (int i = 0; i < n_clusters; ++i)
            c.row({std::to_string(lo[static_cast<size_t>(i)]), std::to_string(hi[static_cast<size_t>(i)]),
                   fmt(e[static_cast<size_t>(lo[static_cast<size_t>(i)])]),
                   fmt(e[static_cast<size_t>(hi[static_cast<size_t>(i)])])});
    }
    write_plot_script(cfg.out, "plot_spectrum.gp",
                      {"set datafile separator ','",
                       "plot 'potential.csv' using 1:2 with lines title 'V(x)', \\",
                       "     'spectrum.csv' using (0):2 with points title 'E_n'"});
}

void cmd_otoc(const Config& cfg) {
    fs::create_directories(cfg.out);
    SolverHandle h;
    make_solver(h, cfg.model, cfg.sigma, cfg.grid_points, cfg.k_states);
    auto t = time_grid(cfg.tmax, cfg.samples);
    const int conv = convention_code(cfg);
    const int m_max = std::min(cfg.m_max, cfg.k_trunc - 1);

    std::vector<std::vector<double>> micro(static_cast<size_t>(m_max + 1),
                                           std::vector<double>(t.size()));
    for (int m = 0; m <= m_max; ++m) {
        if (qwell_otoc_microcanonical(h.s, m, cfg.k_trunc, conv, t.data(),
                                      static_cast<int>(t.size()),
                                      micro[static_cast<size_t>(m)].data()) != QWELL_OK)
            throw std::runtime_error(std::string("otoc failed: ") + qwell_last_error());
    }
    {
        Csv c(fs::path(cfg.out) / "otoc_micro.csv");
        c.comment("model=" + cfg.model + " sigma=" + fmt(cfg.sigma) +
                  " K_t=" + std::to_string(cfg.k_trunc) + " convention=" + cfg.convention);
        c.comment("t,c_0..c_" + std::to_string(m_max));
        for (size_t i = 0; i < t.size(); ++i) {
            std::vector<std::string> row{fmt(t[i])};
            for (int m = 0; m <= m_max; ++m) row.push_back(fmt(micro[static_cast<size_t>(m)][i]));
            c.row(row);
        }
    }
    {
        Csv c(fs::path(cfg.out) / "growth_windows.csv");
        c.comment("m,found,lambda_hat,r_squared,t_lo,t_hi");
        for (int m = 0; m <= m_max; ++m) {
            double lam = 0, r2 = 0, lo = 0, hi = 0;
            int rc = qwell_fit_growth(t.data(), micro[static_cast<size_t>(m)].data(),
                                      static_cast<int>(t.size()), &lam, &r2, &lo, &hi);
            c.row({std::to_string(m), rc == QWELL_OK ? "1" : "0", fmt(lam), fmt(r2), fmt(lo), fmt(hi)});
        }
    }
    {
        auto betas = cfg.betas.empty() ? default_betas() : cfg.betas;
        std::vector<std::vector<double>> thermal(betas.size(), std::vector<double>(t.size()));
        for (size_t b = 0; b < betas.size(); ++b)
            if (qwell_otoc_thermal(h.s, betas[b], cfg.k_trunc, conv, t.data(),
                                   static_cast<int>(t.size()), thermal[b].data()) != QWELL_OK)
                throw std::runtime_error(std::string("thermal otoc failed: ") + qwell_last_error());
        Csv c(fs::path(cfg.out) / "otoc_thermal.csv");
        std::string header = "t";
        for (double b : betas) header += ",beta=" + fmt(b);
        c.comment(header);
        for (size_t i = 0; i < t.size(); ++i) {
            std::vector<std::string> row{fmt(t[i])};
            for (size_t b = 0; b < betas.size(); ++b) row.push_back(fmt(thermal[b][i]));
            c.row(row);
        }
    }
    write_plot_script(cfg.out, "plot_otoc.gp",
                      {"set datafile separator ','", "set logscale y",
                       "plot for [m=2:10] 'otoc_micro.csv' using 1:m with lines title sprintf('c_{%d}', m-2)"});
}

void cmd_echo(const Config& cfg) {
    fs::create_directories(cfg.out);
    auto t = time_grid(cfg.tmax, cfg.samples);
    SolverHandle h;
    make_solver(h, cfg.model, cfg.sigma, cfg.grid_points, cfg.k_states);

    std::vector<double> peres(t.size()), exact(t.size());
    if (qwell_echo(h.s, QWELL_ECHO_PERES, cfg.lambda, t.data(),
                   static_cast<int>(t.size()), peres.data()) != QWELL_OK ||
        qwell_echo(h.s, QWELL_ECHO_EXACT, cfg.lambda, t.data(),
                   static_cast<int>(t.size()), exact.data()) != QWELL_OK)
        throw std::runtime_error(std::string("echo failed: ") + qwell_last_error());
    {
        Csv c(fs::path(cfg.out) / "echo.csv");
        c.comment("model=" + cfg.model + " sigma=" + fmt(cfg.sigma) +
                  " lambda=" + fmt(cfg.lambda) + " psi0=ground(H1)");
        c.comment("t,M_peres,M_exact");
        for (size_t i = 0; i < t.size(); ++i) c.row({fmt(t[i]), fmt(peres[i]), fmt(exact[i])});
    }
    {
        // cross-model comparison: HO vs the three models, exact echo of a
        // Gaussian packet seated in each well.
        std::vector<std::string> models = {"harmonic", "I", "Ia", "II"};
        std::vector<std::vector<double>> curves;
        for (const auto& m : models) {
            SolverHandle hm;
            make_solver(hm, m, 0.0, cfg.grid_points, cfg.k_states);
            std::vector<double> v(t.size());
            if (qwell_echo_packet(hm.s, QWELL_ECHO_EXACT, cfg.lambda, t.data(),
                                  static_cast<int>(t.size()), v.data()) != QWELL_OK)
                throw std::runtime_error(std::string("echo failed: ") + qwell_last_error());
            curves.push_back(std::move(v));
        }
        Csv c(fs::path(cfg.out) / "echo_comparison.csv");
        c.comment("exact echo, Gaussian packet at the well minimum, lambda=" + fmt(cfg.lambda));
        c.comment("t,harmonic,modelI,modelIa,modelII");
        for (size_t i = 0; i < t.size(); ++i) {
            std::vector<std::string> row{fmt(t[i])};
            for (auto& v : curves) row.push_back(fmt(v[i]));
            c.row(row);
        }
    }
    write_plot_script(cfg.out, "plot_echo.gp",
                      {"set datafile separator ','",
                       "plot 'echo_comparison.csv' using 1:2 with lines title 'HO', \\",
                       "     '' using 1:3 with lines title 'Model I', \\",
                       "     '' using 1:4 with lines title 'Model I-a', \\",
                       "     '' using 1:5 with lines title 'Model II'"});
}

void cmd_classical(const Config& cfg) {
    fs::create_directories(cfg.out);
    {
        std::vector<double> x(16), en(16);
        std::vector<int> st(16);
        int n = 0;
        if (qwell_fixed_points(cfg.model.c_str(), cfg.sigma, 16, x.data(), st.data(),
                               en.data(), &n) != QWELL_OK)
            throw std::runtime_error(std::string("fixed points failed: ") + qwell_last_error());
        Csv c(fs::path(cfg.out) / "fixed_points.csv");
        c.comment("x,stability(0=min 1=max 2=degenerate),V");
        for (int i = 0; i < n; ++i)
            c.row({fmt(x[static_cast<size_t>(i)]), std::to_string(st[static_cast<size_t>(i)]),
                   fmt(en[static_cast<size_t>(i)])});
    }
    {
        Csv c(fs::path(cfg.out) / "saddle_node_locus.csv");
        c.comment("saddle-node locus a1 = (3/2) a0^(1/3) lambda^(2/3), a0=0.02");
        c.comment("lambda,a1");
        for (int i = 0; i <= 50; ++i) {
            double lam = 4.0 * i / 50.0;
            c.row({fmt(lam), fmt(qwell_saddle_node_a1(0.02, lam))});
        }
    }
    {
        // fixed-point-count region grid over (lambda, a1) for the quartic family.
        Csv c(fs::path(cfg.out) / "fixed_point_regions.csv");
        c.comment("lambda,a1,n_fixed_points (a0=0.02)");
        for (int i = 0; i <= 40; ++i)
            for (int j = 1; j <= 40; ++j) {
                double lam = 4.0 * i / 40.0;
                double a1 = 1.2 * j / 40.0;
                int count = 0;
                qwell_quartic_fixed_point_count(0.02, a1, lam, &count);
                c.row({fmt(lam), fmt(a1), std::to_string(count)});
            }
    }
    {
        std::vector<double> x(8), sl(8), en(8);
        int n = 0;
        qwell_slope_minima(cfg.model.c_str(), cfg.sigma, 8, x.data(), sl.data(), en.data(), &n);
        Csv c(fs::path(cfg.out) / "slope_minima.csv");
        c.comment("x,slope,turning_energy");
        for (int i = 0; i < n; ++i)
            c.row({fmt(x[static_cast<size_t>(i)]), fmt(sl[static_cast<size_t>(i)]),
                   fmt(en[static_cast<size_t>(i)])});
    }
    {
        const double dt = 0.002, tmax = cfg.tmax;
        const int cap = static_cast<int>(tmax / dt) + 2;
        std::vector<double> tt(static_cast<size_t>(cap)), xx(static_cast<size_t>(cap)),
            pp(static_cast<size_t>(cap));
        Csv c(fs::path(cfg.out) / "trajectories.csv");
        c.comment("trajectory id,t,x,p (velocity Verlet, dt=" + fmt(dt) + ")");
        std::vector<std::pair<double, double>> ics = {
            {0.01, 0.0}, {-0.01, 0.0}, {0.5, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {0.0, 1.0}};
        int id = 0;
        for (auto [x0, p0] : ics) {
            int n = 0;
            double drift = 0;
            if (qwell_trajectory(cfg.model.c_str(), cfg.sigma, x0, p0, tmax, dt, cap,
                                 tt.data(), xx.data(), pp.data(), &n, &drift) != QWELL_OK)
                throw std::runtime_error(std::string("trajectory failed: ") + qwell_last_error());
            for (int i = 0; i < n; i += 5)
                c.row({std::to_string(id), fmt(tt[static_cast<size_t>(i)]),
                       fmt(xx[static_cast<size_t>(i)]), fmt(pp[static_cast<size_t>(i)])});
            ++id;
        }
    }
    write_plot_script(cfg.out, "plot_classical.gp",
                      {"set datafile separator ','",
                       "plot 'trajectories.csv' using 3:4 with dots title 'phase portrait'"});
}

struct SweepCell {
    std::string model;
    double sigma;
    double beta;
    std::string status = "ok";
    std::vector<std::pair<std::string, std::string>> files;  // name, checksum
    std::string dir;
};

void run_sweep_cell(const Config& cfg, SweepCell& cell) {
    try {
        fs::path dir = fs::path(cfg.out) / cell.dir;
        fs::create_directories(dir);
        SolverHandle h;
        make_solver(h, cell.model, cell.sigma, cfg.grid_points, cfg.k_states);
        const int k = qwell_solver_k_states(h.s);
        std::vector<double> e(static_cast<size_t>(k));
        qwell_solver_energies(h.s, e.data());
        {
            Csv c(dir / "spectrum.csv");
            c.comment("n,E");
            for (int n = 0; n < k; ++n) c.row({std::to_string(n), fmt(e[static_cast<size_t>(n)])});
        }
        auto t = time_grid(cfg.tmax, cfg.samples);
        std::vector<double> v(t.size());
        if (qwell_otoc_thermal(h.s, cell.beta, cfg.k_trunc, convention_code(cfg), t.data(),
                               static_cast<int>(t.size()), v.data()) != QWELL_OK)
            throw std::runtime_error(qwell_last_error());
        {
            Csv c(dir / "otoc_thermal.csv");
            c.comment("t,C_beta");
            for (size_t i = 0; i < t.size(); ++i) c.row({fmt(t[i]), fmt(v[i])});
        }
        {
            double lam = 0, r2 = 0, lo = 0, hi = 0;
            int rc = qwell_fit_growth(t.data(), v.data(), static_cast<int>(t.size()),
                                      &lam, &r2, &lo, &hi);
            Csv c(dir / "growth.csv");
            c.comment("found,lambda_hat,r_squared,t_lo,t_hi");
            c.row({rc == QWELL_OK ? "1" : "0", fmt(lam), fmt(r2), fmt(lo), fmt(hi)});
        }
        for (const char* name : {"spectrum.csv", "otoc_thermal.csv", "growth.csv"})
            cell.files.emplace_back(name, checksum_hex(dir / name));
    } catch (const std::exception& e) {
        cell.status = std::string("error: ") + e.what();
    }
}

int cmd_sweep(const Config& cfg) {
    fs::create_directories(cfg.out);
    std::vector<SweepCell> cells;
    auto betas = cfg.betas.empty() ? default_betas() : cfg.betas;
    for (const auto& m : cfg.models)
        for (double s : cfg.sigmas)
            for (double b : betas) {
                SweepCell c{m, s, b};
                std::ostringstream d;
                d << m << "_s" << s << "_b" << b;
                c.dir = d.str();
                cells.push_back(std::move(c));
            }

    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            run_sweep_cell(cfg, cells[i]);
        }
    };
    std::vector<std::thread> pool;
    int jobs = std::max(1, cfg.jobs);
    for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    json manifest;
    manifest["version"] = qwell_version();
    manifest["inputs"] = {{"grid_points", cfg.grid_points}, {"k_states", cfg.k_states},
                          {"k_trunc", cfg.k_trunc},         {"convention", cfg.convention},
                          {"tmax", cfg.tmax},               {"samples", cfg.samples}};
    manifest["cells"] = json::array();
    bool any_error = false;
    for (const auto& c : cells) {
        json jc = {{"model", c.model}, {"sigma", c.sigma}, {"beta", c.beta},
                   {"dir", c.dir},     {"status", c.status}};
        jc["checksums"] = json::object();
        for (const auto& [name, sum] : c.files) jc["checksums"][name] = sum;
        manifest["cells"].push_back(jc);
        if (c.status != "ok") any_error = true;
    }
    std::ofstream f(fs::path(cfg.out) / "manifest.json");
    f << manifest.dump(2) << "\n";
    return any_error ? kExitNumeric : 0;
}

void add_common(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--model", cfg.model, "harmonic | I | Ia | II")
        ->check(CLI::IsMember({"harmonic", "ho", "I", "Ia", "II"}));
    cmd->add_option("--sigma", cfg.sigma, "asymmetry parameter");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--grid-points", cfg.grid_points)->check(CLI::Range(64, 1 << 20));
    cmd->add_option("--k-states", cfg.k_states)->check(CLI::Range(8, 4096));
    cmd->add_option("--k-trunc", cfg.k_trunc)->check(CLI::Range(2, 4096));
    cmd->add_option("--convention", cfg.convention)
        ->check(CLI::IsMember({"paper", "canonical"}));
    cmd->add_option("--beta", cfg.betas, "inverse temperatures");
    cmd->add_option("--tmax", cfg.tmax)->check(CLI::PositiveNumber);
    cmd->add_option("--samples", cfg.samples)->check(CLI::Range(2, 1 << 20));
    cmd->set_config("--config", "", "config file (INI/TOML; flags override)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perturbed-well chaos diagnostics"};
    app.require_subcommand(1);
    Config cfg;

    auto* sp = app.add_subcommand("spectrum", "eigenvalues, states, potential curve");
    add_common(sp, cfg);
    auto* ot = app.add_subcommand("otoc", "microcanonical and thermal OTOCs");
    add_common(ot, cfg);
    ot->add_option("--m-max", cfg.m_max, "highest microcanonical state");
    auto* ec = app.add_subcommand("echo", "Loschmidt echo (Peres and exact)");
    add_common(ec, cfg);
    ec->add_option("--lambda", cfg.lambda, "echo perturbation strength");
    auto* cl = app.add_subcommand("classical", "fixed points, loci, trajectories");
    add_common(cl, cfg);
    auto* sw = app.add_subcommand("sweep", "grid of (model, sigma, beta) runs");
    add_common(sw, cfg);
    sw->add_option("--models", cfg.models, "model list")
        ->check(CLI::IsMember({"harmonic", "ho", "I", "Ia", "II"}));
    sw->add_option("--sigmas", cfg.sigmas, "sigma list");
    sw->add_option("--jobs", cfg.jobs, "worker pool size")->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitConfig;
    }

    try {
        if (cfg.sigma < 0.0) throw CLI::ValidationError("sigma must be >= 0");
        if (sp->parsed()) cmd_spectrum(cfg);
        if (ot->parsed()) cmd_otoc(cfg);
        if (ec->parsed()) cmd_echo(cfg);
        if (cl->parsed()) cmd_classical(cfg);
        if (sw->parsed()) return cmd_sweep(cfg);
    } catch (const CLI::Error&) {
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumeric;
    }
    return 0;
}
