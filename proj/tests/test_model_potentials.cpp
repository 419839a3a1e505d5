#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qwell/model_potentials.hpp"

using namespace qwell::model_potentials;

TEST_CASE("preset coefficients and lambda mapping") {
    auto s = build_preset(Model::ModelI, 0.0);
    CHECK(s.coeff[4] == doctest::Approx(0.02));
    CHECK(s.coeff[2] == doctest::Approx(-0.64));
    CHECK(s.lambda == 0.0);
    CHECK(s.shift == doctest::Approx(5.12).epsilon(1e-9));  // -a1^2/(4 a0)

    CHECK(build_preset(Model::ModelI, 10.0).lambda == doctest::Approx(1.25));
    CHECK(build_preset(Model::ModelII, 95.0).lambda ==
          doctest::Approx(95.0 * std::sqrt(10.95445 / 60.0)));
}

TEST_CASE("evaluate: wells, hilltop, derivatives") {
    auto s = build_preset(Model::ModelI, 0.0);
    CHECK(s.evaluate(4.0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.evaluate(-4.0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.evaluate(0.0, 0) == doctest::Approx(5.12));

    auto s30 = build_preset(Model::ModelI, 30.0);
    CHECK(s30.evaluate(0.0, 1) == doctest::Approx(3.75));  // V'(0) = lambda

    // derivative orders against central differences
    for (int order = 1; order <= 3; ++order) {
        double x = 1.3, eps = 1e-5;
        double fd = (s30.evaluate(x + eps, order - 1) - s30.evaluate(x - eps, order - 1)) / (2 * eps);
        CHECK(s30.evaluate(x, order) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("zero-min shift holds for every preset and sigma") {
    for (auto m : {Model::ModelI, Model::ModelIa, Model::ModelII}) {
        for (double sigma : {0.0, 10.0, 30.0, 70.0, 95.0}) {
            auto s = build_preset(m, sigma);
            double xm = global_minimizer(s);
            CHECK(std::abs(s.evaluate(xm, 0)) < 1e-9);
            CHECK(std::abs(s.evaluate(xm, 1)) < 1e-7);
        }
    }
}

TEST_CASE("sigma=0 presets are even; lambda scales linearly in sigma") {
    for (auto m : {Model::ModelI, Model::ModelIa, Model::ModelII}) {
        auto s = build_preset(m, 0.0);
        for (double x : {0.3, 1.7, 4.2}) CHECK(s.evaluate(x, 0) == s.evaluate(-x, 0));
        CHECK(build_preset(m, 24.0).lambda == doctest::Approx(2.0 * build_preset(m, 12.0).lambda).epsilon(1e-15));
    }
}

TEST_CASE("preset rejects bad input") {
    CHECK_THROWS_AS(build_preset(Model::ModelI, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_preset(Model::Custom, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_model("nope"), std::invalid_argument);
}
