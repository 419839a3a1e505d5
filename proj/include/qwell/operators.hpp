#pragma once

#include <complex>
#include <vector>

#include "qwell/schrodinger.hpp"

namespace qwell::operators {

using schrodinger::EigenSystem;

// kappa in p_mn = i kappa E_mn x_mn: 1/2 is the half-scaled convention the
// OTOC defaults use, 1 the canonical [H, x] = -i p convention.
enum class Convention { PaperHalf, Canonical };

struct MatrixElementSet {
    int k_t = 0;
    Convention convention = Convention::PaperHalf;
    std::vector<double> energies;    // K_t
    std::vector<double> x_elements;  // K_t * K_t, symmetric

    double kappa() const { return convention == Convention::Canonical ? 1.0 : 0.5; }
    double x(int m, int n) const {
        return x_elements[static_cast<size_t>(m) * static_cast<size_t>(k_t) + static_cast<size_t>(n)];
    }
    double e_diff(int m, int n) const {
        return energies[static_cast<size_t>(m)] - energies[static_cast<size_t>(n)];
    }
};

struct TruncationTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

MatrixElementSet position_elements(const EigenSystem& eig, int k_t,
                                   Convention convention = Convention::PaperHalf);

std::complex<double> momentum_element(const MatrixElementSet& set, int m, int n);

}  // namespace qwell::operators
