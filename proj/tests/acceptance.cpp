// Acceptance harness: one pass/fail line per numbered check, exit code equal
// to the number of failures. Every check carries its own wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qthermo/channels.hpp"
#include "qthermo/damping.hpp"
#include "qthermo/dephasing.hpp"
#include "qthermo/gad.hpp"
#include "qthermo/numerics.hpp"
#include "qthermo/qstate.hpp"
#include "qthermo/scan.hpp"
#include "qthermo/thermo.hpp"

namespace {

using namespace qthermo;
using Clock = std::chrono::steady_clock;

struct Check {
    const char* label;
    double budget_seconds;
    std::function<bool(std::ostringstream&)> run;
};

// Frozen regression values for the dense production scan of the damping
// schedule (beta = 0.1, eps = lambda = 1, maximally mixed start), fixed by a
// dense-grid scan with golden-section refinement of the minimum.
constexpr double kSigmaMin = -0.0257246481157649;
constexpr double kTauAtMin = 1.162484505344532;

QubitState shrink_into_ball(double x, double y, double z, double rmax) {
    double r = std::sqrt(x * x + y * y + z * z);
    if (r > rmax) {
        double f = rmax / r;
        x *= f;
        y *= f;
        z *= f;
    }
    return state_from_bloch(x, y, z);
}

bool check_sign_law(std::ostringstream& note) {
    SweepOptions opts;  // 10000 points, default seed
    SignSweepResult r = sign_sweep(opts);
    note << r.evaluated << " decidable, " << r.skipped << " skipped, "
         << r.negative_rate_hits << " negative-rate hits, " << r.sign_violations
         << " sign violations, min bracket " << r.min_bracket;
    return r.sign_violations == 0 && r.min_bracket >= -1e-12 && r.negative_rate_hits > 0 &&
           r.evaluated + r.skipped == opts.n && r.evaluated >= opts.n / 2;
}

bool check_cp_integrated_production(std::ostringstream& note) {
    CounterRng rng(0xACCE902ULL);
    double min_running = 0.0;
    long negative_rate_points = 0;
    for (int i = 0; i < 100; ++i) {
        double beta = rng.uniform(0.05, 5.0, i, 0);
        double omega = rng.uniform(0.1, std::min(10.0, 20.0 / beta), i, 1);
        double g0 = rng.uniform(0.1, 1.5, i, 2);
        // Odd draws oscillate with amplitude up to 1.9: the instantaneous rate
        // dips below zero while its running integral stays nonnegative, so the
        // map remains CP at every time.
        DampingProfile prof = (i % 2 == 0)
            ? DampingProfile::constant(g0)
            : DampingProfile::oscillating(g0, rng.uniform(0.2, 1.9, i, 3),
                                          rng.uniform(0.5, 6.0, i, 4), M_PI / 2.0);
        DampingParams params = make_damping_params(prof, make_gibbs_spec(beta, omega));
        QubitState rho0 = shrink_into_ball(rng.uniform(-0.7, 0.7, i, 5),
                                           rng.uniform(-0.7, 0.7, i, 6),
                                           rng.uniform(-0.7, 0.7, i, 7), 0.95);
        auto series = build_series(
            [&](double t) { return evolve_damping(rho0, params, t); },
            [&](double t) {
                return bloch_velocity_damping(params, evolve_damping(rho0, params, t), t);
            },
            params.spec, uniform_grid(10.0, 2000));
        for (const auto& s : series) {
            min_running = std::min(min_running, s.Sigma);
            if (s.sigma < 0.0) ++negative_rate_points;
        }
    }
    note << "100 profiles x 2000 points, min running integral " << min_running << ", "
         << negative_rate_points << " points with a transient negative rate";
    return min_running >= -1e-9 && negative_rate_points > 0;
}

bool check_frozen_minimum(std::ostringstream& note) {
    Fig1Result r = fig1_scan(make_gad_schedule(1.0, 1.0, 0.1), 10.0, 2001);
    note << "minimum " << r.sigma_min << " at tau " << r.tau_at_min << " (expected "
         << kSigmaMin << " at " << kTauAtMin << ")";
    return r.sigma_min < 0.0 && std::abs(r.sigma_min - kSigmaMin) <= 1e-8 &&
           std::abs(r.tau_at_min - kTauAtMin) <= 1e-8;
}

bool check_production_rate_identity(std::ostringstream& note) {
    CounterRng rng(0xFD17ACCEULL);
    double worst = 0.0;
    int points = 0;
    for (int i = 0; i < 50; ++i) {
        double beta = rng.uniform(0.05, 5.0, i, 0);
        double omega = rng.uniform(0.1, std::min(10.0, 20.0 / beta), i, 1);
        double g0 = rng.uniform(0.1, 1.5, i, 2);
        double a = rng.uniform(0.2, 1.9, i, 3);
        double nu = rng.uniform(0.5, 6.0, i, 4);
        DampingProfile prof = (i % 2 == 0)
            ? DampingProfile::constant(g0)
            : DampingProfile::oscillating(g0, a, nu, M_PI / 2.0);
        DampingParams params = make_damping_params(prof, make_gibbs_spec(beta, omega));
        QubitState rho0 = state_from_bloch(rng.uniform(0.15, 0.7, i, 5), 0.0,
                                           rng.uniform(-0.6, 0.6, i, 6));
        QubitState ref = gibbs_state(params.spec);
        double coth = 1.0 / std::tanh(0.5 * beta * omega);
        double gmax = 0.5 * g0 * (1.0 + a) * coth;
        // Step small enough that the fourth-order truncation stays below the
        // tolerance even for the fastest configs.
        double h = std::min(5e-3, 0.05 / std::max(1.0, gmax));
        double tau0 = rng.uniform(0.1, 2.0, i, 7) / std::max(1.0, 0.5 * gmax);
        for (double mult : {1.0, 1.4, 1.9, 2.5}) {
            double tau = std::max(tau0 * mult, 2.0 * h);
            QubitState st = evolve_damping(rho0, params, tau);
            double sg = entropy_production(st, bloch_velocity_damping(params, st, tau),
                                           params.spec);
            double fd = -central_diff_richardson(
                [&](double t) { return relative_entropy(evolve_damping(rho0, params, t), ref); },
                tau, h);
            worst = std::max(worst, std::abs(sg - fd) / std::max(std::abs(sg), 1e-3));
            ++points;
        }
    }
    for (int i = 50; i < 100; ++i) {
        double eps = rng.uniform(0.3, 2.0, i, 0);
        double lam = rng.uniform(0.1, 1.5, i, 1);
        double beta = rng.uniform(0.05, 2.0, i, 2);
        GadSchedule sched = make_gad_schedule(eps, lam, beta);
        QubitState rho0 = state_from_bloch(rng.uniform(0.1, 0.6, i, 3), 0.0,
                                           rng.uniform(-0.5, 0.5, i, 4));
        QubitState ref = gibbs_state(sched.gibbs());
        double h = std::min(5e-3, 0.05 / (1.0 + 2.0 * lam + eps));
        double tau0 = rng.uniform(0.2, 1.0, i, 5);
        for (double mult : {1.0, 1.4, 1.9, 2.5}) {
            double tau = std::min(tau0 * mult, std::min(4.0, -std::log(1e-3) / (2.0 * lam)));
            QubitState st = evolve_gad(rho0, sched, tau);
            double sg = entropy_production(st, bloch_velocity_gad(sched, st, tau),
                                           sched.gibbs());
            double fd = -central_diff_richardson(
                [&](double t) { return relative_entropy(evolve_gad(rho0, sched, t), ref); },
                tau, h);
            worst = std::max(worst, std::abs(sg - fd) / std::max(std::abs(sg), 1e-3));
            ++points;
        }
    }
    note << "100 trajectories, " << points << " sample times, worst relative gap " << worst;
    return worst <= 1e-5;
}

bool check_closed_form_vs_ode(std::ostringstream& note) {
    CounterRng rng(0x0DE5A9ULL);
    double sup = 0.0;
    for (int i = 0; i < 10; ++i) {
        double beta = rng.uniform(0.3, 3.0, i, 0);
        double omega = rng.uniform(0.5, 3.0, i, 1);
        double g0 = rng.uniform(0.2, 1.2, i, 2);
        DampingProfile prof = (i % 2 == 0)
            ? DampingProfile::constant(g0)
            : DampingProfile::oscillating(g0, rng.uniform(0.0, 1.8, i, 3),
                                          rng.uniform(0.5, 5.0, i, 4), M_PI / 2.0);
        DampingParams params = make_damping_params(prof, make_gibbs_spec(beta, omega));
        QubitState rho0 = state_from_bloch(rng.uniform(0.1, 0.6, i, 5),
                                           rng.uniform(-0.4, 0.4, i, 6),
                                           rng.uniform(-0.5, 0.5, i, 7));
        auto field = [&params](double t, const Eigen::Vector3d& y) {
            return bloch_velocity_damping(params, QubitState{y[0], y[1], y[2]}, t);
        };
        std::vector<double> grid = uniform_grid(10.0, 201);
        auto traj = ode_rk_sample(field, Eigen::Vector3d(rho0.x, rho0.y, rho0.z), grid, 1e-10);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            QubitState ex = evolve_damping(rho0, params, grid[k]);
            sup = std::max(sup,
                           (traj[k] - Eigen::Vector3d(ex.x, ex.y, ex.z)).lpNorm<Eigen::Infinity>());
        }
    }
    for (int i = 10; i < 20; ++i) {
        double eps = rng.uniform(0.3, 2.0, i, 0);
        double lam = rng.uniform(0.2, 1.5, i, 1);
        double beta = rng.uniform(0.05, 2.0, i, 2);
        GadSchedule sched = make_gad_schedule(eps, lam, beta);
        QubitState rho0 = state_from_bloch(rng.uniform(0.1, 0.6, i, 3),
                                           rng.uniform(-0.4, 0.4, i, 4),
                                           rng.uniform(-0.5, 0.5, i, 5));
        auto field = [&sched](double t, const Eigen::Vector3d& y) {
            return bloch_velocity_gad(sched, QubitState{y[0], y[1], y[2]}, t);
        };
        // Stay where the decay progress is below 0.999 so the time-local
        // generator the field evaluates remains regular.
        double tau_max = std::min(10.0, -std::log(1e-3) / (2.0 * lam));
        std::vector<double> grid = uniform_grid(tau_max, 201);
        auto traj = ode_rk_sample(field, Eigen::Vector3d(rho0.x, rho0.y, rho0.z), grid, 1e-10);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            QubitState ex = evolve_gad(rho0, sched, grid[k]);
            sup = std::max(sup,
                           (traj[k] - Eigen::Vector3d(ex.x, ex.y, ex.z)).lpNorm<Eigen::Infinity>());
        }
    }
    note << "20 configs x 201 sample times, sup-norm gap " << sup;
    return sup <= 1e-6;
}

bool check_kraus_choi_intertwiners(std::ostringstream& note) {
    GadSchedule sched = make_gad_schedule(1.0, 1.0, 0.1);
    double worst_defect = 0.0;
    double worst_eig = 0.0;
    for (int i = 1; i <= 100; ++i) {
        PGamma pg = schedule_eval(sched, 0.05 * i);
        KrausSet k = kraus_gad(pg.p, pg.gamma);
        worst_defect = std::max(worst_defect, k.completeness_defect());
        worst_eig = std::min(worst_eig, choi_from(k).min_eigenvalue());
    }

    // Oscillating rate 1 + 1.5 sin(2 tau): negative exactly on (1.9356, 2.7767)
    // within the first period, so intertwiners across sign-definite intervals
    // must flip their CP verdict with the rate sign.
    DampingParams params = make_damping_params(
        DampingProfile::oscillating(1.0, 1.5, 2.0, M_PI / 2.0), make_gibbs_spec(1.0, 1.0));
    auto family = [&params](double t) { return bloch_map_damping(params, t); };
    bool cp_pos_1 = is_cp(choi_from(intertwiner(family, 0.5, 0.2)));
    bool cp_pos_2 = is_cp(choi_from(intertwiner(family, 3.3, 3.0)));
    bool cp_neg_1 = is_cp(choi_from(intertwiner(family, 2.3, 2.0)));
    bool cp_neg_2 = is_cp(choi_from(intertwiner(family, 2.5, 2.1)));

    note << "completeness defect " << worst_defect << ", Choi min eigenvalue " << worst_eig
         << "; intertwiner CP verdicts " << cp_pos_1 << cp_pos_2 << cp_neg_1 << cp_neg_2
         << " (expect 1100)";
    return worst_defect <= 1e-12 && worst_eig >= -1e-10 && cp_pos_1 && cp_pos_2 &&
           !cp_neg_1 && !cp_neg_2;
}

bool check_dephasing_rate_limits(std::ostringstream& note) {
    double worst_closed = 0.0;
    for (double s : {2.5, 4.0}) {
        DephasingConfig c = make_dephasing_config(make_spectral_density(s, 1.0), 1.0, 0.1,
                                                  state_from_bloch(0.6, 0.0, 0.3));
        for (int i = 0; i < 30; ++i) {
            double T = 0.1 * std::pow(200.0, i / 29.0);
            double q = d_delta(c, T);
            double cl = d_delta_closed(c, T);
            worst_closed = std::max(worst_closed, std::abs(q - cl) / std::abs(cl));
        }
    }

    DephasingConfig hot = make_dephasing_config(make_spectral_density(4.0, 1.0), 0.01, 0.1,
                                                state_from_bloch(0.6, 0.0, 0.3));
    double worst_hot = 0.0;
    for (double tau : {0.5, 1.0, 2.5, 3.5, 5.0}) {
        double q = d_gamma(hot, tau);
        double cl = d_gamma_highT(hot, tau);
        worst_hot = std::max(worst_hot, std::abs(q - cl) / std::abs(cl));
    }

    DephasingConfig warm = make_dephasing_config(make_spectral_density(4.0, 1.0), 1.0, 0.1,
                                                 state_from_bloch(0.6, 0.0, 0.3));
    double worst_disc = 0.0;
    for (double tau : {1.0, 2.0, 5.0}) {
        double disc = discrete_mode_gamma(warm, tau, 10000);
        double cont = gamma_dephasing(warm, tau);
        worst_disc = std::max(worst_disc, std::abs(disc - cont) / std::abs(cont));
    }

    note << "quadrature vs closed rate " << worst_closed << ", high-temperature limit "
         << worst_hot << ", 10^4 discrete modes vs continuum " << worst_disc;
    return worst_closed <= 1e-6 && worst_hot <= 1e-2 && worst_disc <= 1e-3;
}

bool check_negative_rate_window(std::ostringstream& note) {
    DephasingConfig c = make_dephasing_config(make_spectral_density(4.0, 1.0), 0.01, 0.05,
                                              state_from_bloch(0.6, 0.0, 0.3));
    auto windows = find_negative_window(c, 0.0, 10.0);
    if (windows.empty()) {
        note << "no window found";
        return false;
    }
    double lo = windows.front().first;
    double hi = windows.front().second;
    const double lower_onset = std::sqrt(3.0);  // tan(pi / 3) for s = 4
    double lo_rel = std::abs(lo - lower_onset) / lower_onset;
    // The upper edge is best read as an angle: arctan(omega_c tau) at closing.
    // Two candidate readings circulate, 2pi/5 and pi/2; a pi/2 reading would
    // mean the window never closes, so record the distance to both.
    double hi_angle = std::atan(1.0 * hi);
    double off_two_fifths = std::abs(hi_angle - 2.0 * M_PI / 5.0);
    double off_half_pi = std::abs(hi_angle - M_PI / 2.0);
    note << "window [" << lo << ", " << hi << "], lower edge off tan(pi/3) by " << lo_rel
         << "; upper-edge reading arctan = " << hi_angle << ", off 2pi/5 by "
         << off_two_fifths << ", off pi/2 by " << off_half_pi;
    return lo_rel <= 1e-3 && off_two_fifths <= 1e-3 && off_two_fifths < off_half_pi;
}

bool check_cumulative_balance(std::ostringstream& note) {
    CounterRng rng(0xBA1A7CEULL);
    double min_cumulative = 0.0;
    for (int i = 0; i < 20; ++i) {
        double s = rng.uniform(1.5, 5.5, i, 0);
        double omega_c = rng.uniform(0.5, 3.0, i, 1);
        double beta = rng.uniform(0.1, 5.0, i, 2);
        double lambda = rng.uniform(0.005, 0.1, i, 3);
        double transverse = rng.uniform(0.1, 0.8, i, 4);
        double angle = rng.uniform(0.0, 2.0 * M_PI, i, 5);
        QubitState rho0 = state_from_bloch(transverse * std::cos(angle),
                                           transverse * std::sin(angle),
                                           rng.uniform(-0.5, 0.5, i, 6));
        DephasingConfig c = make_dephasing_config(make_spectral_density(s, omega_c), beta,
                                                  lambda, rho0);
        BalanceSeries series = second_law_cumulative(c, 20.0 / omega_c, 400);
        for (double v : series.integral) min_cumulative = std::min(min_cumulative, v);
    }
    note << "20 configs x 400 points, min cumulative balance " << min_cumulative;
    return min_cumulative >= -1e-9;
}

bool check_data_processing(std::ostringstream& note) {
    SweepOptions opts;
    opts.n = 1000;
    DataProcResult r = data_processing_sweep(opts);
    note << r.n << " random channels, " << r.violations << " contraction violations, "
         << "max increase " << r.max_increase;
    return r.violations == 0 && r.max_increase <= 1e-10;
}

} // namespace

int main() {
    std::vector<Check> checks = {
        {"production-rate sign tracks the damping-rate sign on random configs", 10.0,
         check_sign_law},
        {"integrated production stays nonnegative for always-CP profiles", 5.0,
         check_cp_integrated_production},
        {"dense production scan reproduces the frozen negative minimum", 5.0,
         check_frozen_minimum},
        {"production rate equals minus the relative-entropy rate", 10.0,
         check_production_rate_identity},
        {"closed-form trajectories match adaptive Runge-Kutta integration", 10.0,
         check_closed_form_vs_ode},
        {"Kraus completeness, Choi positivity, and intertwiner CP verdicts", 10.0,
         check_kraus_choi_intertwiners},
        {"dephasing rates match closed forms, hot limit, and discrete bath", 30.0,
         check_dephasing_rate_limits},
        {"system and bath entropy rates turn negative on the predicted window", 20.0,
         check_negative_rate_window},
        {"cumulative system-plus-bath entropy balance stays nonnegative", 20.0,
         check_cumulative_balance},
        {"relative entropy contracts under random channels", 10.0, check_data_processing},
    };

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::ostringstream note;
        bool ok = false;
        auto start = Clock::now();
        try {
            ok = checks[i].run(note);
        } catch (const std::exception& e) {
            note << "exception: " << e.what();
            ok = false;
        }
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (elapsed > checks[i].budget_seconds) {
            note << " [over budget " << checks[i].budget_seconds << "s]";
            ok = false;
        }
        if (!ok) ++failures;
        std::printf("[%s] %2zu. %s (%.2fs): %s\n", ok ? "PASS" : "FAIL", i + 1,
                    checks[i].label, elapsed, note.str().c_str());
    }
    std::printf("%zu/%zu checks passed\n", checks.size() - static_cast<std::size_t>(failures),
                checks.size());
    return failures;
}
