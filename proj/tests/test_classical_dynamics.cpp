#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qwell/classical_dynamics.hpp"

using namespace qwell::classical_dynamics;
using qwell::model_potentials::build_preset;
using qwell::model_potentials::Model;

TEST_CASE("fixed points of the symmetric and tilted quartic") {
    auto fp0 = fixed_points(build_preset(Model::ModelI, 0.0));
    REQUIRE(fp0.points.size() == 3);
    CHECK(fp0.points[0].x == doctest::Approx(-4.0).epsilon(1e-9));
    CHECK(fp0.points[1].x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fp0.points[2].x == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fp0.points[0].stability == Stability::Minimum);
    CHECK(fp0.points[1].stability == Stability::Maximum);
    CHECK(fp0.points[2].stability == Stability::Minimum);
    CHECK(fp0.region_label() == "ThreeFixedPoints");

    auto fp30 = fixed_points(build_preset(Model::ModelI, 30.0));
    REQUIRE(fp30.points.size() == 1);
    CHECK(fp30.points[0].stability == Stability::Minimum);
    CHECK(fp30.region_label() == "OneFixedPoint");
}

TEST_CASE("Model II sigma=0 has five fixed points matching the closed form") {
    auto fp = fixed_points(build_preset(Model::ModelII, 0.0), -4.0, 4.0);
    REQUIRE(fp.points.size() == 5);
    // x^2 = (2 a0 +- sqrt(4 a0^2 - 12 a1)) / 6 for V' = 0, V = a1 x^2 - a0 x^4 + x^6
    double a0 = 10.95445, a1 = 30.0;
    double disc = std::sqrt(4.0 * a0 * a0 - 12.0 * a1);
    double x_outer = std::sqrt((2.0 * a0 + disc) / 6.0);
    double x_inner = std::sqrt((2.0 * a0 - disc) / 6.0);
    CHECK(fp.points[0].x == doctest::Approx(-x_outer).epsilon(1e-8));
    CHECK(fp.points[1].x == doctest::Approx(-x_inner).epsilon(1e-8));
    CHECK(fp.points[2].x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fp.points[3].x == doctest::Approx(x_inner).epsilon(1e-8));
    CHECK(fp.points[4].x == doctest::Approx(x_outer).epsilon(1e-8));
    CHECK(x_outer == doctest::Approx(2.3403).epsilon(1e-4));
    CHECK(x_inner == doctest::Approx(1.3512).epsilon(1e-4));
    // Lambda = 0 symmetry
    for (const auto& p : fp.points) {
        bool mirrored = false;
        for (const auto& q : fp.points)
            if (std::abs(p.x + q.x) < 1e-8) mirrored = true;
        CHECK(mirrored);
    }
}

TEST_CASE("saddle-node locus") {
    CHECK(saddle_node_a1(0.02, 1.9707) == doctest::Approx(0.64).epsilon(1e-4));
    CHECK(saddle_node_a1(0.37, 0.0) == 0.0);
    CHECK(saddle_node_a1(0.02, 1.0) == doctest::Approx(1.5 * std::cbrt(0.02)).epsilon(1e-9));
    CHECK(saddle_node_a1_numeric(0.02, 1.0) ==
          doctest::Approx(saddle_node_a1(0.02, 1.0)).epsilon(1e-6));
}

TEST_CASE("critical lambda: closed forms, bisection, Model II range") {
    double l1c = critical_lambda(Model::ModelI, CriticalMethod::ClosedForm);
    double l1b = critical_lambda(Model::ModelI, CriticalMethod::Bisection);
    CHECK(l1c == doctest::Approx(1.9707).epsilon(1e-4));
    CHECK(l1b == doctest::Approx(l1c).epsilon(1e-6));

    double lac = critical_lambda(Model::ModelIa, CriticalMethod::ClosedForm);
    double lab = critical_lambda(Model::ModelIa, CriticalMethod::Bisection);
    CHECK(lac == doctest::Approx(5.96857).epsilon(1e-4));
    CHECK(lab == doctest::Approx(lac).epsilon(1e-6));

    double l2 = critical_lambda(Model::ModelII, CriticalMethod::Bisection);
    double sigma_c = l2 / qwell::model_potentials::lambda_for_sigma(Model::ModelII, 1.0);
    CHECK(sigma_c > 89.0);
    CHECK(sigma_c < 93.0);
    CHECK_THROWS_AS(critical_lambda(Model::ModelII, CriticalMethod::ClosedForm),
                    std::invalid_argument);
    CHECK(critical_lambda(Model::Harmonic, CriticalMethod::Bisection) == 0.0);
}

TEST_CASE("slope minima") {
    auto s30 = build_preset(Model::ModelI, 30.0);
    auto list = slope_minima(s30);
    REQUIRE(list.size() == 1);
    double x_star = std::sqrt(0.64 / (6.0 * 0.02));
    CHECK(list[0].x == doctest::Approx(x_star).epsilon(1e-9));
    CHECK(list[0].slope == doctest::Approx(s30.evaluate(x_star, 1)).epsilon(1e-12));
    CHECK(list[0].slope > 0.0);

    auto ii95 = slope_minima(build_preset(Model::ModelII, 95.0), -4.5, 4.5);
    REQUIRE(ii95.size() == 2);
    // one local, one global minimum of V'; the global one is sharper (smaller slope)
    CHECK(ii95[1].slope < ii95[0].slope);

    CHECK(slope_minima(build_preset(Model::Harmonic, 0.0)).empty());
    CHECK(slope_minima(build_preset(Model::ModelI, 0.0)).empty());
}

TEST_CASE("velocity Verlet: closure, escape, stationarity, drift order") {
    auto ho = build_preset(Model::Harmonic, 0.0);
    auto circle = integrate(ho, 1.0, 0.0, 2.0 * M_PI, 2.0 * M_PI / 20000.0);
    CHECK(std::abs(circle.x.back() - 1.0) < 1e-4);

    auto mi = build_preset(Model::ModelI, 0.0);
    auto esc = integrate(mi, 0.01, 0.0, 10.0, 1e-3);
    double max_abs_x = 0.0;
    for (double x : esc.x) max_abs_x = std::max(max_abs_x, std::abs(x));
    CHECK(max_abs_x > 3.0);
    // dt-halving agreement at the endpoint
    auto esc2 = integrate(mi, 0.01, 0.0, 10.0, 5e-4);
    CHECK(std::abs(esc.x.back() - esc2.x.back()) < 1e-5);
    // drift is O(dt^2)
    auto d1 = integrate(mi, 2.0, 0.0, 10.0, 2e-3);
    auto d2 = integrate(mi, 2.0, 0.0, 10.0, 1e-3);
    CHECK(d1.energy_drift / d2.energy_drift >= 3.5);

    auto stat = integrate(mi, 4.0, 0.0, 5.0, 1e-3);
    for (double x : stat.x) CHECK(std::abs(x - 4.0) < 1e-12);

    CHECK_THROWS_AS(integrate(ho, 1.0, 0.0, 10.0, 1.0), std::invalid_argument);
}
