#pragma once

#include <string>
#include <vector>

#include "qwell/model_potentials.hpp"

namespace qwell::classical_dynamics {

using model_potentials::Model;
using model_potentials::PotentialSpec;

enum class Stability { Minimum, Maximum, Degenerate };

struct FixedPoint {
    double x;
    Stability stability;
    double energy;  // V(x) on the shifted scale
};

struct FixedPointSet {
    std::vector<FixedPoint> points;  // sorted ascending in x
    std::string region_label() const;
};

// All real roots of V'(x) = 0 over [x_lo, x_hi], classified by V''.
FixedPointSet fixed_points(const PotentialSpec& spec, double x_lo = -10.0, double x_hi = 10.0);

// Saddle-node locus of the tilted quartic a0 x^4 - a1 x^2 + lambda x.
double saddle_node_a1(double a0, double lambda);
// Same locus located by bisection on the fixed-point-count transition.
double saddle_node_a1_numeric(double a0, double lambda);

enum class CriticalMethod { ClosedForm, Bisection };

// Smallest lambda >= 0 at which the local maximum disappears.
double critical_lambda(Model m, CriticalMethod method);

struct SlopeMinimum {
    double x;
    double slope;           // V'(x) > 0
    double turning_energy;  // V(x) on the shifted scale
};

// Local minima of V' with positive slope (V''=0, V'''>0, V'>0).
std::vector<SlopeMinimum> slope_minima(const PotentialSpec& spec,
                                       double x_lo = -10.0, double x_hi = 10.0);

struct Trajectory {
    std::vector<double> t, x, p;
    double energy_drift = 0.0;  // max |H(t) - H(0)|
};

// Velocity-Verlet integration of xdot = p, pdot = -V'(x).
Trajectory integrate(const PotentialSpec& spec, double x0, double p0,
                     double t_max, double dt);

std::vector<Trajectory> phase_portrait(const PotentialSpec& spec,
                                       const std::vector<std::pair<double, double>>& initial_conditions,
                                       double t_max, double dt);

}  // namespace qwell::classical_dynamics
