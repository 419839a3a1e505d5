#pragma once

#include <stdexcept>
#include <vector>

#include "qwell/schrodinger.hpp"

namespace qwell::echo {

using schrodinger::EigenSystem;

struct EchoSeries {
    std::vector<double> times;
    std::vector<double> values;  // M(t) in [0, 1]
};

struct BasisIncomplete : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Peres reduction: M(t) = |sum_i e^{i x_i tau} |psi0(x_i)|^2 h|^2, tau = lambda t.
EchoSeries peres_echo(const std::vector<double>& psi0, const std::vector<double>& x,
                      double spacing, double lambda, const std::vector<double>& times);

// Exact two-Hamiltonian echo M = |<psi0| U2^+(t) U1(t) |psi0>|^2 by spectral
// propagation; throws BasisIncomplete if either basis misses > 1e-6 of psi0.
EchoSeries exact_echo(const EigenSystem& eig1, const EigenSystem& eig2,
                      const std::vector<double>& psi0, const std::vector<double>& times);

// Normalized Gaussian packet on the grid.
std::vector<double> gaussian_state(const std::vector<double>& x, double spacing,
                                   double center, double width);

struct Fluctuation {
    double mean = 0.0;
    double amplitude_std = 0.0;
};

Fluctuation post_decay_fluctuation(const EchoSeries& series, double t_settle);

// 2x the e-folding time of the initial decay (fallback: half the time range).
double default_t_settle(const EchoSeries& series);

}  // namespace qwell::echo
