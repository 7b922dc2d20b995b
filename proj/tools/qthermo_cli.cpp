// Command-line front end: evolve any of the three maps, emit the ledger as a
// time series, classify rate profiles, and run the randomized invariant sweeps.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/damping.hpp"
#include "qthermo/dephasing.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/gad.hpp"
#include "qthermo/scan.hpp"
#include "qthermo/series_io.hpp"
#include "qthermo/thermo.hpp"

namespace {

using namespace qthermo;

struct SeriesOpts {
    double x0 = 0.0, y0 = 0.0, z0 = 0.0;
    double horizon = 10.0;
    int grid = 2000;
    std::string output = "-";
    std::string format = "csv";
};

void add_series_options(CLI::App* cmd, SeriesOpts& o) {
    cmd->add_option("--x0", o.x0, "Initial Bloch x");
    cmd->add_option("--y0", o.y0, "Initial Bloch y");
    cmd->add_option("--z0", o.z0, "Initial Bloch z");
    cmd->add_option("--horizon", o.horizon, "Final time of the series");
    cmd->add_option("--grid", o.grid, "Number of grid points (>= 2)");
    cmd->add_option("--output", o.output, "Output path, '-' for stdout");
    cmd->add_option("--format", o.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void append_series_config(ConfigItems& cfg, const SeriesOpts& o) {
    cfg.emplace_back("x0", format_double(o.x0));
    cfg.emplace_back("y0", format_double(o.y0));
    cfg.emplace_back("z0", format_double(o.z0));
    cfg.emplace_back("horizon", format_double(o.horizon));
    cfg.emplace_back("grid", std::to_string(o.grid));
    cfg.emplace_back("format", o.format);
}

struct ProfileOpts {
    std::string kind = "const";
    double gamma0 = 1.0;
    double a = 1.5;
    double nu = 5.0;
    double phase = M_PI / 2.0;
    std::string file;
};

void add_profile_options(CLI::App* cmd, ProfileOpts& o) {
    cmd->add_option("--profile", o.kind, "Rate profile: const, osc, or sampled")
        ->check(CLI::IsMember({"const", "osc", "sampled"}));
    cmd->add_option("--gamma0", o.gamma0, "Base damping rate");
    cmd->add_option("--a", o.a, "Oscillation amplitude (osc profile)");
    cmd->add_option("--nu", o.nu, "Oscillation frequency (osc profile)");
    cmd->add_option("--phase", o.phase,
                    "Oscillation phase; the default pi/2 keeps the running integral >= 0");
    cmd->add_option("--profile-file", o.file,
                    "Sampled profile table: one 'tau gamma' pair per line");
}

DampingProfile build_profile(const ProfileOpts& o) {
    if (o.kind == "const") return DampingProfile::constant(o.gamma0);
    if (o.kind == "osc") return DampingProfile::oscillating(o.gamma0, o.a, o.nu, o.phase);
    if (o.file.empty()) {
        throw ParameterOutOfRange("sampled profile needs --profile-file");
    }
    std::ifstream in(o.file);
    if (!in) throw IoError("cannot open profile table '" + o.file + "'");
    std::vector<double> taus, gammas;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double t, g;
        if (row >> t >> g) {
            taus.push_back(t);
            gammas.push_back(g);
        } else if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) {
            throw IoError("malformed profile row: '" + line + "'");
        }
    }
    return DampingProfile::sampled(std::move(taus), std::move(gammas));
}

void append_profile_config(ConfigItems& cfg, const ProfileOpts& o) {
    cfg.emplace_back("profile", o.kind);
    cfg.emplace_back("gamma0", format_double(o.gamma0));
    if (o.kind == "osc") {
        cfg.emplace_back("a", format_double(o.a));
        cfg.emplace_back("nu", format_double(o.nu));
        cfg.emplace_back("phase", format_double(o.phase));
    }
    if (o.kind == "sampled") cfg.emplace_back("profile_file", o.file);
}

void write_series(const SeriesOpts& o, const ConfigItems& cfg,
                  const std::function<QubitState(double)>& state_at,
                  const std::function<Eigen::Vector3d(double)>& velocity_at,
                  const GibbsSpec& spec) {
    std::vector<double> grid = uniform_grid(o.horizon, o.grid);
    std::vector<ThermoSample> ledger = build_series(state_at, velocity_at, spec, grid);
    std::vector<QubitState> states;
    states.reserve(grid.size());
    for (double t : grid) states.push_back(state_at(t));
    emit_series(o.output, make_rows(states, ledger), parse_format(o.format), cfg);
}

int run_example1(const ProfileOpts& po, const SeriesOpts& so, double beta, double omega) {
    auto params = make_damping_params(build_profile(po), make_gibbs_spec(beta, omega));
    QubitState rho0 = state_from_bloch(so.x0, so.y0, so.z0);

    ConfigItems cfg{{"command", "example1"},
                    {"beta", format_double(beta)},
                    {"omega", format_double(omega)}};
    append_profile_config(cfg, po);
    append_series_config(cfg, so);

    write_series(
        so, cfg, [&](double t) { return evolve_damping(rho0, params, t); },
        [&](double t) {
            return bloch_velocity_damping(params, evolve_damping(rho0, params, t), t);
        },
        params.spec);
    return 0;
}

int run_example2(const SeriesOpts& so, double beta, double eps, double lam,
                 ConfigItems extra = {}) {
    GadSchedule sched = make_gad_schedule(eps, lam, beta);
    QubitState rho0 = state_from_bloch(so.x0, so.y0, so.z0);

    ConfigItems cfg{{"command", extra.empty() ? "example2" : "fig1"},
                    {"beta", format_double(beta)},
                    {"eps", format_double(eps)},
                    {"lam", format_double(lam)}};
    append_series_config(cfg, so);
    for (auto& kv : extra) cfg.push_back(std::move(kv));

    write_series(
        so, cfg, [&](double t) { return evolve_gad(rho0, sched, t); },
        [&](double t) { return bloch_velocity_gad(sched, evolve_gad(rho0, sched, t), t); },
        sched.gibbs());
    return 0;
}

int run_example3(const SeriesOpts& so, double s, double omega_c, double beta, double lambda) {
    DephasingConfig cfg_d = make_dephasing_config(make_spectral_density(s, omega_c), beta,
                                                  lambda, state_from_bloch(so.x0, so.y0, so.z0));

    ConfigItems cfg{{"command", "example3"},
                    {"s", format_double(s)},
                    {"omega_c", format_double(omega_c)},
                    {"beta", format_double(beta)},
                    {"lambda", format_double(lambda)}};
    append_series_config(cfg, so);

    // Pure dephasing: populations frozen, so the system heat flux vanishes and
    // the ledger reference is the Gibbs state of sz at the bath temperature.
    GibbsSpec spec = make_gibbs_spec(beta, 2.0);
    write_series(
        so, cfg, [&](double t) { return evolve_dephasing(cfg_d, t); },
        [&](double t) {
            QubitState st = evolve_dephasing(cfg_d, t);
            double shrink = -8.0 * lambda * lambda * d_gamma(cfg_d, t);
            return Eigen::Vector3d(shrink * st.x, shrink * st.y, 0.0);
        },
        spec);
    return 0;
}

int run_classify(const ProfileOpts& po, double horizon, int grid) {
    Divisibility d = classify_divisibility(build_profile(po), horizon, grid);
    std::cout << to_string(d) << "\n";
    return 0;
}

int run_fig1(const SeriesOpts& so, double beta, double eps, double lam) {
    GadSchedule sched = make_gad_schedule(eps, lam, beta);
    Fig1Result scan = fig1_scan(sched, so.horizon, so.grid);

    ConfigItems extra{{"sigma_min", format_double(scan.sigma_min)},
                      {"tau_at_min", format_double(scan.tau_at_min)}};
    for (std::size_t i = 0; i < scan.negative_windows.size(); ++i) {
        extra.emplace_back("negative_window_" + std::to_string(i),
                           format_double(scan.negative_windows[i].first) + ":" +
                               format_double(scan.negative_windows[i].second));
    }
    SeriesOpts mixed = so;
    mixed.x0 = mixed.y0 = mixed.z0 = 0.0;  // the scan is defined for the maximally mixed state
    return run_example2(mixed, beta, eps, lam, std::move(extra));
}

int run_sweep(const std::string& kind, std::size_t n, std::uint64_t seed, bool serial,
              double s, double omega_c, double beta, double lambda, double tau_max,
              int grid) {
    if (kind == "sign" || kind == "dataproc") {
        SweepOptions opts;
        opts.n = n > 0 ? n : (kind == "sign" ? 10000 : 1000);
        opts.seed = seed;
        opts.parallel = !serial;
        if (kind == "sign") {
            SignSweepResult r = sign_sweep(opts);
            std::cout << "kind=sign n=" << opts.n << " evaluated=" << r.evaluated
                      << " skipped=" << r.skipped << " negative_rate_hits=" << r.negative_rate_hits
                      << " violations=" << r.sign_violations
                      << " min_bracket=" << format_double(r.min_bracket) << "\n";
            return r.sign_violations == 0 && r.min_bracket >= -1e-12 ? 0 : 3;
        }
        DataProcResult r = data_processing_sweep(opts);
        std::cout << "kind=dataproc n=" << r.n << " violations=" << r.violations
                  << " max_increase=" << format_double(r.max_increase) << "\n";
        return r.violations == 0 ? 0 : 3;
    }

    DephasingConfig cfg = make_dephasing_config(make_spectral_density(s, omega_c), beta,
                                                lambda, state_from_bloch(0.5, 0.0, 0.5));
    if (kind == "window") {
        auto windows = find_negative_window(cfg, 0.0, tau_max);
        if (windows.empty()) {
            std::cout << "no interval with both entropy rates negative\n";
        }
        for (const auto& [lo, hi] : windows) {
            std::cout << "both_rates_negative tau=[" << format_double(lo) << ", "
                      << format_double(hi) << "]"
                      << " omega_c_tau=[" << format_double(omega_c * lo) << ", "
                      << format_double(omega_c * hi) << "]\n";
        }
        return 0;
    }
    if (kind == "balance") {
        BalanceSeries series = second_law_cumulative(cfg, tau_max, grid);
        double min_integral = INFINITY;
        for (double v : series.integral) min_integral = std::min(min_integral, v);
        std::cout << "kind=balance horizon=" << format_double(tau_max)
                  << " min_cumulative=" << format_double(min_integral) << "\n";
        return min_integral >= -1e-9 ? 0 : 3;
    }
    throw ParameterOutOfRange("unknown sweep kind '" + kind + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-qubit thermodynamics under three non-Markovian maps"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read defaults from a key=value file (flags override)");
    app.allow_config_extras(false);

    double beta1 = 1.0, omega1 = 1.0;
    ProfileOpts prof1;
    SeriesOpts so1;
    so1.x0 = 0.5;
    so1.z0 = 0.2;
    auto* ex1 = app.add_subcommand("example1", "Damped qubit with a time-dependent rate");
    ex1->add_option("--beta", beta1, "Inverse bath temperature");
    ex1->add_option("--omega", omega1, "Level splitting");
    add_profile_options(ex1, prof1);
    add_series_options(ex1, so1);

    double beta2 = 0.1, eps2 = 1.0, lam2 = 1.0;
    SeriesOpts so2;
    auto* ex2 = app.add_subcommand("example2", "Generalized amplitude damping schedule");
    ex2->add_option("--beta", beta2, "Inverse bath temperature (H = sz)");
    ex2->add_option("--eps", eps2, "Modulation frequency of the population schedule");
    ex2->add_option("--lam", lam2, "Relaxation rate of the decay schedule");
    add_series_options(ex2, so2);

    double s3 = 4.0, omega_c3 = 1.0, beta3 = 1.0, lambda3 = 0.1;
    SeriesOpts so3;
    so3.x0 = 0.6;
    so3.z0 = 0.3;
    so3.horizon = 20.0;
    so3.grid = 501;
    auto* ex3 = app.add_subcommand("example3", "Pure dephasing against a bosonic bath");
    ex3->add_option("--s", s3, "Ohmicity exponent of the spectral density");
    ex3->add_option("--omega-c", omega_c3, "Spectral cutoff");
    ex3->add_option("--beta", beta3, "Inverse bath temperature");
    ex3->add_option("--lambda", lambda3, "System-bath coupling");
    add_series_options(ex3, so3);

    ProfileOpts prof_c;
    prof_c.kind = "osc";
    double horizon_c = 10.0;
    int grid_c = 4001;
    auto* cls = app.add_subcommand("classify", "Divisibility class of a rate profile");
    add_profile_options(cls, prof_c);
    cls->add_option("--horizon", horizon_c, "Scan horizon");
    cls->add_option("--grid", grid_c, "Scan grid points");

    double beta_f = 0.1, eps_f = 1.0, lam_f = 1.0;
    SeriesOpts so_f;
    so_f.grid = 2001;
    auto* fig = app.add_subcommand(
        "fig1", "Integrated production of the damping schedule, maximally mixed start");
    fig->add_option("--beta", beta_f, "Inverse bath temperature (H = sz)");
    fig->add_option("--eps", eps_f, "Modulation frequency");
    fig->add_option("--lam", lam_f, "Relaxation rate");
    add_series_options(fig, so_f);

    std::string kind_s = "sign";
    std::size_t n_s = 0;
    std::uint64_t seed_s = qthermo::CounterRng::kDefaultSeed;
    bool serial_s = false;
    double s_s = 4.0, omega_c_s = 1.0, beta_s = 1.0, lambda_s = 0.1, tau_max_s = 10.0;
    int grid_s = 401;
    auto* swp = app.add_subcommand("sweep", "Randomized and scanned invariant checks");
    swp->add_option("--kind", kind_s, "sign, dataproc, window, or balance")
        ->check(CLI::IsMember({"sign", "dataproc", "window", "balance"}));
    swp->add_option("--n", n_s, "Sample count (0 picks the kind's default)");
    swp->add_option("--seed", seed_s, "Counter RNG seed");
    swp->add_flag("--serial", serial_s, "Run the serial reference kernel");
    swp->add_option("--s", s_s, "Ohmicity (window/balance)");
    swp->add_option("--omega-c", omega_c_s, "Spectral cutoff (window/balance)");
    swp->add_option("--beta", beta_s, "Inverse bath temperature (window/balance)");
    swp->add_option("--lambda", lambda_s, "Coupling (window/balance)");
    swp->add_option("--tau-max", tau_max_s, "Scan horizon (window/balance)");
    swp->add_option("--grid", grid_s, "Grid points (balance)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (ex1->parsed()) return run_example1(prof1, so1, beta1, omega1);
        if (ex2->parsed()) return run_example2(so2, beta2, eps2, lam2);
        if (ex3->parsed()) return run_example3(so3, s3, omega_c3, beta3, lambda3);
        if (cls->parsed()) return run_classify(prof_c, horizon_c, grid_c);
        if (fig->parsed()) return run_fig1(so_f, beta_f, eps_f, lam_f);
        if (swp->parsed()) {
            return run_sweep(kind_s, n_s, seed_s, serial_s, s_s, omega_c_s, beta_s, lambda_s,
                             tau_max_s, grid_s);
        }
    } catch (const qthermo::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qthermo::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
