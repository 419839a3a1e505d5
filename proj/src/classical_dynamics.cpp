#include "qwell/classical_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwell::classical_dynamics {

namespace {

constexpr double kStabilityTol = 1e-8;

// Bracketed bisection + Newton polish for a root of d/dx^order V on [a, b].
double refine_root(const PotentialSpec& spec, int order, double a, double b) {
    double fa = spec.evaluate(a, order);
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        double fm = spec.evaluate(m, order);
        if (fm == 0.0 || b - a < 1e-14 * std::max(1.0, std::abs(m))) {
            a = b = m;
            break;
        }
        if ((fa < 0.0) == (fm < 0.0)) { a = m; fa = fm; } else { b = m; }
    }
    double x = 0.5 * (a + b);
    for (int it = 0; it < 8; ++it) {
        double f = spec.evaluate(x, order);
        double df = spec.evaluate(x, order + 1);
        if (std::abs(df) < 1e-300) break;
        double step = f / df;
        double xn = x - step;
        if (xn < a - 1e-6 || xn > b + 1e-6) break;
        x = xn;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// All roots of d/dx^order V on [lo, hi] by uniform scan over 2048 cells.
std::vector<double> scan_roots(const PotentialSpec& spec, int order, double lo, double hi) {
    const int cells = 2048;
    std::vector<double> roots;
    double fp = spec.evaluate(lo, order);
    double xp = lo;
    for (int i = 1; i <= cells; ++i) {
        double x = lo + (hi - lo) * i / cells;
        double f = spec.evaluate(x, order);
        if (fp == 0.0) {
            roots.push_back(xp);
        } else if ((fp < 0.0) != (f < 0.0)) {
            roots.push_back(refine_root(spec, order, xp, x));
        }
        xp = x;
        fp = f;
    }
    if (fp == 0.0) roots.push_back(xp);
    // merge near-duplicates
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots)
        if (out.empty() || r - out.back() > 1e-9 * std::max(1.0, std::abs(r))) out.push_back(r);
    return out;
}

double lambda_to_sigma(Model m, double lambda) {
    return lambda / model_potentials::lambda_for_sigma(m, 1.0);
}

// A local maximum exists iff some concave stretch [u, v] (between sign
// changes of V'', which do not depend on lambda) has V'(u) > 0 > V'(v):
// V' is nonincreasing there, so it crosses zero inside. This stays exact
// arbitrarily close to the saddle-node merge, where root counting of V'
// loses the nearly coincident pair.
bool has_maximum(Model m, double lambda) {
    auto spec = model_potentials::build_preset(m, lambda_to_sigma(m, lambda));
    auto infl = scan_roots(spec, 2, -12.0, 12.0);
    std::vector<double> edges = {-12.0};
    edges.insert(edges.end(), infl.begin(), infl.end());
    edges.push_back(12.0);
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double u = edges[i], v = edges[i + 1];
        // generic interior sample; avoids V'' touch points such as x = 0
        double probe = u + 0.381966 * (v - u);
        if (spec.evaluate(probe, 2) >= 0.0) continue;
        if (spec.evaluate(u, 1) > 0.0 && spec.evaluate(v, 1) < 0.0) return true;
    }
    return false;
}

}  // namespace

std::string FixedPointSet::region_label() const {
    switch (points.size()) {
        case 1: return "OneFixedPoint";
        case 2: return "TwoFixedPoints";
        case 3: return "ThreeFixedPoints";
        case 5: return "FiveFixedPoints";
        default: return std::to_string(points.size()) + "FixedPoints";
    }
}

FixedPointSet fixed_points(const PotentialSpec& spec, double x_lo, double x_hi) {
    FixedPointSet set;
    for (double r : scan_roots(spec, 1, x_lo, x_hi)) {
        double v2 = spec.evaluate(r, 2);
        Stability s = v2 > kStabilityTol   ? Stability::Minimum
                      : v2 < -kStabilityTol ? Stability::Maximum
                                            : Stability::Degenerate;
        set.points.push_back({r, s, spec.evaluate(r, 0)});
    }
    return set;
}

double saddle_node_a1(double a0, double lambda) {
    if (a0 <= 0.0 || lambda < 0.0) throw std::invalid_argument("need a0 > 0, lambda >= 0");
    return 1.5 * std::cbrt(a0) * std::pow(lambda, 2.0 / 3.0);
}

double saddle_node_a1_numeric(double a0, double lambda) {
    if (lambda == 0.0) return 0.0;
    auto count_roots = [&](double a1) {
        std::array<double, 7> c{};
        c[4] = a0;
        c[2] = -a1;
        auto spec = model_potentials::build_custom(c, lambda);
        double L = 2.0 * std::sqrt(std::max(1.0, a1 / (2.0 * a0))) + 2.0;
        return scan_roots(spec, 1, -L, L).size();
    };
    double lo = 1e-9, hi = 10.0 * saddle_node_a1(a0, lambda) + 1.0;
    if (count_roots(hi) < 3) throw std::runtime_error("saddle-node bracket failed");
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        if (count_roots(mid) >= 3) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

double critical_lambda(Model m, CriticalMethod method) {
    using model_potentials::preset_pair;
    if (method == CriticalMethod::ClosedForm) {
        if (m == Model::ModelI) {
            auto [a0, a1] = preset_pair(m);
            return (2.0 / 3.0) * std::sqrt(2.0 * a1 * a1 * a1 / (3.0 * a0));
        }
        if (m == Model::ModelIa) {
            auto [a0, a1] = preset_pair(m);
            return (16.0 / 25.0) * std::sqrt(2.0 * std::pow(a1, 5) / (5.0 * std::pow(a0, 3)));
        }
        throw std::invalid_argument("no closed-form critical lambda for this model");
    }
    if (!has_maximum(m, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (has_maximum(m, hi)) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("critical lambda bracket failed");
    }
    for (int it = 0; it < 120; ++it) {
        double mid = 0.5 * (lo + hi);
        if (has_maximum(m, mid)) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<SlopeMinimum> slope_minima(const PotentialSpec& spec, double x_lo, double x_hi) {
    std::vector<SlopeMinimum> out;
    for (double r : scan_roots(spec, 2, x_lo, x_hi)) {
        if (spec.evaluate(r, 3) <= kStabilityTol) continue;  // not a minimum of V'
        double slope = spec.evaluate(r, 1);
        if (slope <= kStabilityTol) continue;  // only positive-slope minima
        out.push_back({r, slope, spec.evaluate(r, 0)});
    }
    return out;
}

Trajectory integrate(const PotentialSpec& spec, double x0, double p0,
                     double t_max, double dt) {
    if (dt <= 0.0 || t_max <= 0.0) throw std::invalid_argument("need dt > 0, t_max > 0");
    double xmin = model_potentials::global_minimizer(spec);
    double curv = std::max(spec.evaluate(xmin, 2), 1e-12);
    double period = 2.0 * M_PI / std::sqrt(curv);
    if (dt >= period / 20.0) throw std::invalid_argument("dt too large for characteristic period");

    auto force = [&](double x) { return -spec.evaluate(x, 1); };
    auto energy = [&](double x, double p) { return 0.5 * p * p + spec.evaluate(x, 0); };

    Trajectory traj;
    size_t n = static_cast<size_t>(std::floor(t_max / dt)) + 1;
    traj.t.reserve(n); traj.x.reserve(n); traj.p.reserve(n);
    double x = x0, p = p0, e0 = energy(x0, p0);
    double f = force(x);
    for (size_t i = 0; i < n; ++i) {
        double t = static_cast<double>(i) * dt;
        traj.t.push_back(t);
        traj.x.push_back(x);
        traj.p.push_back(p);
        traj.energy_drift = std::max(traj.energy_drift, std::abs(energy(x, p) - e0));
        double p_half = p + 0.5 * dt * f;
        x += dt * p_half;
        f = force(x);
        p = p_half + 0.5 * dt * f;
    }
    return traj;
}

std::vector<Trajectory> phase_portrait(const PotentialSpec& spec,
                                       const std::vector<std::pair<double, double>>& initial_conditions,
                                       double t_max, double dt) {
    std::vector<Trajectory> out;
    out.reserve(initial_conditions.size());
    for (auto [x0, p0] : initial_conditions) out.push_back(integrate(spec, x0, p0, t_max, dt));
    return out;
}

}  // namespace qwell::classical_dynamics
