#include <doctest.h>

#include <cmath>

#include "qthermo/dephasing.hpp"
#include "qthermo/numerics.hpp"
#include "qthermo/thermo.hpp"

using namespace qthermo;

namespace {

DephasingConfig cfg(double s, double wc, double beta, double lambda,
                    QubitState rho0 = state_from_bloch(0.6, 0.0, 0.3)) {
    return make_dephasing_config(make_spectral_density(s, wc), beta, lambda, rho0);
}

} // namespace

TEST_CASE("spectral density and config validation") {
    CHECK_THROWS_AS(make_spectral_density(0.0, 1.0), ParameterOutOfRange);
    CHECK_THROWS_AS(make_spectral_density(2.0, -1.0), ParameterOutOfRange);
    CHECK_THROWS_AS(cfg(2.0, 1.0, 0.0, 0.1), ParameterOutOfRange);
    CHECK_THROWS_AS(cfg(2.0, 1.0, 1.0, -0.1), ParameterOutOfRange);
    DephasingConfig c = cfg(4.0, 1.0, 1.0, 0.05);
    CHECK(c.coherence_sq() == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(c.population_product() == doctest::Approx(0.25 * (1.0 - 0.09)).epsilon(1e-15));
    CHECK(c.weak_coupling());
}

TEST_CASE("decoherence integral: frozen values, domain guard, zero at zero") {
    CHECK(gamma_dephasing(cfg(4.0, 1.0, 1.0, 0.1), 2.0) ==
          doctest::Approx(1.5311381603728381).epsilon(1e-9));
    CHECK(gamma_dephasing(cfg(3.0, 2.0, 0.5, 0.1), 1.5) ==
          doctest::Approx(1.0493786398425355).epsilon(1e-9));
    CHECK(gamma_dephasing(cfg(4.0, 1.0, 1.0, 0.1), 0.0) == 0.0);
    CHECK_THROWS_AS(gamma_dephasing(cfg(1.0, 1.0, 1.0, 0.1), 1.0), IntegrandDivergence);
    CHECK_THROWS_AS(gamma_dephasing(cfg(0.5, 1.0, 1.0, 0.1), 1.0), IntegrandDivergence);
    CHECK_THROWS_AS(gamma_dephasing(cfg(4.0, 1.0, 1.0, 0.1), -1.0), ParameterOutOfRange);
}

TEST_CASE("interaction-energy integral: exact Ohmic value and frozen super-Ohmic value") {
    // s = 1, wc = 1, tau = 3: the integral reduces to (1 - 1/(1+T^2))/2 = 0.45
    CHECK(delta_heat(cfg(1.0, 1.0, 1.0, 0.1), 3.0) == doctest::Approx(0.45).epsilon(1e-10));
    CHECK(delta_heat(cfg(4.0, 1.3, 1.0, 0.1), 2.0) ==
          doctest::Approx(3.893398900133392).epsilon(1e-10));
}

TEST_CASE("quadrature rate of the energy integral matches the Euler-gamma closed form") {
    CHECK(d_delta(cfg(4.0, 1.3, 1.0, 0.1), 2.0) ==
          doctest::Approx(-0.031672406849524).epsilon(1e-9));
    for (double s : {0.5, 1.0, 2.5, 4.0}) {
        for (double T : {0.3, 1.0, 4.0, 12.0}) {
            DephasingConfig c = cfg(s, 1.0, 1.0, 0.1);
            double quad_rate = d_delta(c, T);
            double closed = d_delta_closed(c, T);
            CHECK(quad_rate == doctest::Approx(closed).epsilon(1e-8));
        }
    }
}

TEST_CASE("rate of the decoherence integral equals its finite difference") {
    DephasingConfig c = cfg(4.0, 1.0, 1.0, 0.1);
    for (double tau : {0.5, 2.0, 6.0}) {
        double analytic = d_gamma(c, tau);
        double numeric = central_diff_richardson(
            [&](double t) { return gamma_dephasing(c, t); }, tau, 1e-2);
        CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
    }
}

TEST_CASE("high-temperature closed form approximates the exact rate") {
    DephasingConfig hot = cfg(4.0, 1.0, 0.01, 0.1);
    for (double tau : {0.5, 1.7320508, 3.0}) {
        double exact = d_gamma(hot, tau);
        double closed = d_gamma_highT(hot, tau);
        CHECK(exact == doctest::Approx(closed).epsilon(0.01));
    }
    CHECK_THROWS_AS(d_gamma_highT(cfg(0.8, 1.0, 0.01, 0.1), 1.0), ParameterOutOfRange);
}

TEST_CASE("discrete bath modes converge to the continuum integral") {
    DephasingConfig c = cfg(4.0, 1.0, 1.0, 0.1);
    double cont = gamma_dephasing(c, 2.0);
    double coarse = discrete_mode_gamma(c, 2.0, 200);
    double fine = discrete_mode_gamma(c, 2.0, 20000);
    CHECK(std::abs(fine - cont) < std::abs(coarse - cont));
    CHECK(fine == doctest::Approx(cont).epsilon(1e-3));
}

TEST_CASE("dephasing trajectory freezes populations and shrinks coherence") {
    DephasingConfig c = cfg(4.0, 1.0, 1.0, 0.1);
    QubitState at0 = evolve_dephasing(c, 0.0);
    CHECK(at0.x == doctest::Approx(0.6).epsilon(1e-15));
    for (double tau : {0.5, 2.0, 10.0}) {
        QubitState st = evolve_dephasing(c, tau);
        CHECK(st.z == doctest::Approx(0.3).epsilon(1e-15));
        double scale = std::exp(-8.0 * c.lambda * c.lambda * gamma_dephasing(c, tau));
        CHECK(st.x == doctest::Approx(0.6 * scale).epsilon(1e-10));
        CHECK(st.y == doctest::Approx(0.0));
    }
}

TEST_CASE("system entropy rate agrees with the generic ledger route") {
    DephasingConfig c = cfg(4.0, 1.0, 1.0, 0.1);
    for (double tau : {0.3, 1.0, 2.5, 7.0}) {
        double direct = system_entropy_rate(c, tau);
        QubitState st = evolve_dephasing(c, tau);
        double shrink = -8.0 * c.lambda * c.lambda * d_gamma(c, tau);
        double generic = entropy_rate(st, Eigen::Vector3d(shrink * st.x, shrink * st.y, 0.0));
        CHECK(direct == doctest::Approx(generic).epsilon(1e-10));
    }
    DephasingConfig incoherent = cfg(4.0, 1.0, 1.0, 0.1, state_from_bloch(0.0, 0.0, 0.3));
    CHECK(system_entropy_rate(incoherent, 1.0) == 0.0);
}

TEST_CASE("bath rates: entropy rate is beta times the heat rate, binding balances") {
    DephasingConfig c = cfg(4.0, 1.0, 0.7, 0.08);
    for (double tau : {0.4, 1.3, 3.0}) {
        BathRates b = bath_rates(c, tau);
        CHECK(b.dS_B == doctest::Approx(c.beta * b.dQ_B).epsilon(1e-14));
        double expect = 4.0 * c.lambda * c.lambda * (1.0 - 0.09) * d_delta_closed(c, tau);
        CHECK(b.dQ_B == doctest::Approx(expect).epsilon(1e-12));
        CHECK(binding_energy_rate(c, tau) == doctest::Approx(-b.dQ_B).epsilon(1e-14));
    }
}

TEST_CASE("simultaneous-negativity window: present for hot super-Ohmic, absent otherwise") {
    DephasingConfig hot = cfg(4.0, 1.0, 0.01, 0.05);
    auto windows = find_negative_window(hot, 0.0, 10.0);
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].first == doctest::Approx(std::sqrt(3.0)).epsilon(1e-3));
    CHECK(windows[0].second == doctest::Approx(std::tan(2.0 * M_PI / 5.0)).epsilon(1e-3));

    // sub-Ohmic: the energy rate never turns negative, so no window
    DephasingConfig sub = cfg(0.5, 1.0, 0.01, 0.05);
    CHECK(find_negative_window(sub, 0.0, 10.0).empty());

    // no coherence, no system entropy motion
    DephasingConfig flat = cfg(4.0, 1.0, 0.01, 0.05, state_from_bloch(0.0, 0.0, 0.3));
    CHECK(find_negative_window(flat, 0.0, 10.0).empty());
}

TEST_CASE("second-law balance: pointwise dips, cumulative stays nonnegative") {
    // hot bath, where the simultaneous-negativity window makes the pointwise
    // rate provably dip below zero
    DephasingConfig c = cfg(4.0, 1.0, 0.01, 0.05);
    BalanceSeries series = second_law_cumulative(c, 20.0, 400);
    REQUIRE(series.taus.size() == 400);
    bool pointwise_negative = false;
    double min_integral = INFINITY;
    for (std::size_t i = 0; i < series.taus.size(); ++i) {
        if (series.rates[i] < 0.0) pointwise_negative = true;
        min_integral = std::min(min_integral, series.integral[i]);
        CHECK(series.rates[i] ==
              doctest::Approx(second_law_balance(c, series.taus[i])).epsilon(1e-12));
    }
    CHECK(pointwise_negative);
    CHECK(min_integral >= -1e-12);
}

TEST_CASE("critical ohmicity approaches 3 for a hot bath and 2 for a cold one") {
    CHECK(find_critical_ohmicity(0.01, 1.0) == doctest::Approx(3.0).epsilon(0.02));
    CHECK(find_critical_ohmicity(1e4, 1.0) == doctest::Approx(2.0).epsilon(0.03));
}
