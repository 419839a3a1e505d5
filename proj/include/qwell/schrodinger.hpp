#pragma once

#include <stdexcept>
#include <vector>

#include "qwell/model_potentials.hpp"

namespace qwell::schrodinger {

using model_potentials::PotentialSpec;

struct Grid {
    double x_min, x_max;
    int n_points;
    double spacing() const { return (x_max - x_min) / (n_points - 1); }
    std::vector<double> points() const;
};

struct Tridiagonal {
    std::vector<double> diag;     // V(x_i) + 1/h^2
    std::vector<double> offdiag;  // -1/(2 h^2), length n-1
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EigenSystem {
    Grid grid{};
    PotentialSpec spec{};
    std::vector<double> x;                     // grid points
    std::vector<double> energies;              // K, ascending
    std::vector<std::vector<double>> states;   // K vectors, sum |psi|^2 h = 1
    bool resolution_warning = false;           // E_K above the wall potential
    double spacing() const { return grid.spacing(); }
};

// H = -(1/2) d^2/dx^2 + V(x), 3-point stencil, Dirichlet walls.
Tridiagonal build_hamiltonian(const PotentialSpec& spec, const Grid& grid);

EigenSystem eigensolve(const PotentialSpec& spec, const Grid& grid, int k_states);

// [-10, 10] for the quartic-family models; Model II auto-sized to the
// smallest symmetric interval with V(wall) > 3 E_K.
Grid default_grid(const PotentialSpec& spec, int n_points, int k_states);

// Max relative eigenvalue change when n_points is doubled (n < K).
double convergence_report(const PotentialSpec& spec, const Grid& grid, int k_states);

}  // namespace qwell::schrodinger
