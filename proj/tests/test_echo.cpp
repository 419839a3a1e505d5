#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qwell/echo.hpp"
#include "qwell/otoc_engine.hpp"

using namespace qwell::echo;
using qwell::model_potentials::build_preset;
using qwell::model_potentials::Model;
using qwell::schrodinger::default_grid;
using qwell::schrodinger::eigensolve;
using qwell::schrodinger::Grid;
using qwell::otoc_engine::time_grid;

namespace {
const auto& ho_eig() {
    static auto eig = eigensolve(build_preset(Model::Harmonic, 0.0), Grid{-14, 14, 8192}, 60);
    return eig;
}
}  // namespace

TEST_CASE("Peres echo: identity, Gaussian analytic case, tau scaling, phase blindness") {
    const auto& eig = ho_eig();
    const auto& psi0 = eig.states[0];
    auto t = time_grid(6.0, 120);

    auto flat = peres_echo(psi0, eig.x, eig.spacing(), 0.0, t);
    for (double v : flat.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    auto s = peres_echo(psi0, eig.x, eig.spacing(), 1.0, t);
    CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (size_t i = 0; i < t.size(); ++i) {
        double expect = std::exp(-t[i] * t[i] / 2.0);  // sigma_x^2 = 1/2
        CHECK(std::abs(s.values[i] - expect) < 1e-6);
        CHECK(s.values[i] >= -1e-12);
        CHECK(s.values[i] <= 1.0 + 1e-9);
    }

    // M(lambda, t) = M(lambda/2, 2t) exactly
    auto t2 = t;
    for (double& ti : t2) ti *= 2.0;
    auto half = peres_echo(psi0, eig.x, eig.spacing(), 0.5, t2);
    for (size_t i = 0; i < t.size(); ++i) CHECK(half.values[i] == s.values[i]);

    // depends on |psi0|^2 only: flipping signs changes nothing
    auto scrambled = psi0;
    for (size_t i = 0; i < scrambled.size(); i += 2) scrambled[i] = -scrambled[i];
    auto s2 = peres_echo(scrambled, eig.x, eig.spacing(), 1.0, t);
    for (size_t i = 0; i < t.size(); ++i) CHECK(s2.values[i] == s.values[i]);
}

TEST_CASE("exact echo: identity, short-time Peres agreement, quadratic onset, small lambda") {
    const auto& eig = ho_eig();
    auto t = time_grid(2.0, 80);

    auto same = exact_echo(eig, eig, eig.states[0], t);
    for (double v : same.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));

    auto spec2 = build_preset(Model::Harmonic, 0.0);
    spec2.lambda = 0.05;
    auto eig2 = eigensolve(spec2, eig.grid, 60);
    auto ex = exact_echo(eig, eig2, eig.states[0], t);
    auto pe = peres_echo(eig.states[0], eig.x, eig.spacing(), 0.05, t);
    for (size_t i = 0; i < t.size(); ++i)
        CHECK(std::abs(ex.values[i] - pe.values[i]) < 0.02);

    // 1 - M = lambda^2 var_x t^2 + O(t^4)
    double lam = 0.05, var = 0.5;
    for (size_t i = 1; i < 10; ++i)
        CHECK(1.0 - ex.values[i] == doctest::Approx(lam * lam * var * t[i] * t[i]).epsilon(0.01));

    spec2.lambda = 1e-3;
    auto eig3 = eigensolve(spec2, eig.grid, 60);
    auto tiny = exact_echo(eig, eig3, eig.states[0], t);
    for (double v : tiny.values) CHECK(std::abs(v - 1.0) < 1e-4);
}

TEST_CASE("exact echo rejects a state outside the basis span") {
    const auto& eig = ho_eig();
    // a narrow packet far up the potential needs many more than 60 states
    auto psi = gaussian_state(eig.x, eig.spacing(), 6.0, 0.05);
    CHECK_THROWS_AS(exact_echo(eig, eig, psi, time_grid(1.0, 10)), BasisIncomplete);
}

TEST_CASE("post-decay fluctuation statistics") {
    EchoSeries s;
    s.times = time_grid(20.0, 4000);
    for (double t : s.times) s.values.push_back(0.5);
    auto f = post_decay_fluctuation(s, 1.0);
    CHECK(f.mean == doctest::Approx(0.5));
    CHECK(f.amplitude_std == doctest::Approx(0.0));

    EchoSeries w;
    w.times = s.times;
    for (double t : w.times) w.values.push_back(0.5 + 0.1 * std::sin(t));
    auto g = post_decay_fluctuation(w, 0.0);
    CHECK(g.amplitude_std == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(0.02));

    CHECK_THROWS_AS(post_decay_fluctuation(w, 30.0), std::invalid_argument);
}

TEST_CASE("model echo decays and fluctuates below the matched harmonic echo") {
    // cross-model fluctuation ordering: packets seated in each well, exact echo.
    auto t = time_grid(40.0, 800);
    const double lam = 0.5;

    auto run = [&](Model m) {
        auto spec = build_preset(m, 0.0);
        auto grid = default_grid(spec, 2048, 120);
        auto eig = eigensolve(spec, grid, 120);
        double center = qwell::model_potentials::global_minimizer(spec);
        double omega = std::sqrt(spec.evaluate(center, 2));
        auto psi0 = gaussian_state(eig.x, eig.spacing(), center, 1.0 / std::sqrt(2.0 * omega));
        auto spec2 = spec;
        spec2.lambda += lam;
        auto eig2 = eigensolve(spec2, grid, 120);
        auto series = exact_echo(eig, eig2, psi0, t);
        return post_decay_fluctuation(series, default_t_settle(series)).amplitude_std;
    };

    double ho = run(Model::Harmonic);
    CHECK(ho > run(Model::ModelI));
    CHECK(ho > run(Model::ModelIa));
    CHECK(ho > run(Model::ModelII));

    // Peres tail of the symmetric double well: decay then low-amplitude wiggle
    auto spec = build_preset(Model::ModelI, 0.0);
    auto eig = eigensolve(spec, Grid{-10, 10, 2048}, 40);
    auto pe = peres_echo(eig.states[0], eig.x, eig.spacing(), 0.125, time_grid(40.0, 800));
    auto fl = post_decay_fluctuation(pe, default_t_settle(pe));
    CHECK(fl.mean < 0.5);
}
