#include "qwell/schrodinger.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace qwell::schrodinger {

std::vector<double> Grid::points() const {
    std::vector<double> xs(static_cast<size_t>(n_points));
    double h = spacing();
    for (int i = 0; i < n_points; ++i) xs[static_cast<size_t>(i)] = x_min + h * i;
    xs.back() = x_max;
    return xs;
}

Tridiagonal build_hamiltonian(const PotentialSpec& spec, const Grid& grid) {
    if (grid.n_points < 64 || grid.x_max <= grid.x_min)
        throw std::invalid_argument("invalid grid");
    double h = grid.spacing();
    double inv_h2 = 1.0 / (h * h);
    Tridiagonal op;
    op.diag.resize(static_cast<size_t>(grid.n_points));
    op.offdiag.assign(static_cast<size_t>(grid.n_points - 1), -0.5 * inv_h2);
    auto xs = grid.points();
    for (int i = 0; i < grid.n_points; ++i)
        op.diag[static_cast<size_t>(i)] = spec.evaluate(xs[static_cast<size_t>(i)]) + inv_h2;
    return op;
}

EigenSystem eigensolve(const PotentialSpec& spec, const Grid& grid, int k_states) {
    if (k_states < 1 || k_states > grid.n_points)
        throw std::invalid_argument("k_states out of range");
    auto op = build_hamiltonian(spec, grid);
    const int n = grid.n_points;

    std::vector<double> w(static_cast<size_t>(n));
    std::vector<double> z(static_cast<size_t>(n) * static_cast<size_t>(k_states));
    std::vector<lapack_int> isuppz(2 * static_cast<size_t>(k_states));
    lapack_int m_found = 0;
    lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n,
                                     op.diag.data(), op.offdiag.data(),
                                     0.0, 0.0, 1, k_states, 0.0, &m_found,
                                     w.data(), z.data(), n, isuppz.data());
    if (info != 0 || m_found != k_states)
        throw ConvergenceFailure("tridiagonal eigensolver failed (info=" + std::to_string(info) + ")");

    EigenSystem eig;
    eig.grid = grid;
    eig.spec = spec;
    eig.x = grid.points();
    eig.energies.assign(w.begin(), w.begin() + k_states);
    double h = grid.spacing();
    double inv_sqrt_h = 1.0 / std::sqrt(h);
    eig.states.resize(static_cast<size_t>(k_states));
    for (int k = 0; k < k_states; ++k) {
        auto& psi = eig.states[static_cast<size_t>(k)];
        psi.assign(z.begin() + static_cast<size_t>(k) * n,
                   z.begin() + (static_cast<size_t>(k) + 1) * n);
        double max_abs = 0.0;
        for (double v : psi) max_abs = std::max(max_abs, std::abs(v));
        double sign = 1.0;
        for (double v : psi)
            if (std::abs(v) > 1e-8 * max_abs) { sign = v > 0.0 ? 1.0 : -1.0; break; }
        for (double& v : psi) v *= sign * inv_sqrt_h;  // sum |psi|^2 h = 1
    }
    double wall = std::min(spec.evaluate(grid.x_min), spec.evaluate(grid.x_max));
    eig.resolution_warning = eig.energies.back() > wall;
    return eig;
}

Grid default_grid(const PotentialSpec& spec, int n_points, int k_states) {
    using model_potentials::Model;
    if (spec.model != Model::ModelII) return Grid{-10.0, 10.0, n_points};
    // Two passes: coarse solve for E_K, then shrink the box to the smallest
    // symmetric interval whose walls clear 3 E_K.
    Grid coarse{-6.0, 6.0, 1024};
    auto eig = eigensolve(spec, coarse, k_states);
    double target = 3.0 * eig.energies.back();
    double L = 2.0;
    while (L < 10.0 && std::min(spec.evaluate(-L), spec.evaluate(L)) < target) L += 0.1;
    return Grid{-L, L, n_points};
}

double convergence_report(const PotentialSpec& spec, const Grid& grid, int k_states) {
    auto e1 = eigensolve(spec, grid, k_states);
    Grid fine{grid.x_min, grid.x_max, 2 * grid.n_points};
    auto e2 = eigensolve(spec, fine, k_states);
    double worst = 0.0;
    for (int n = 0; n < k_states; ++n) {
        double a = e1.energies[static_cast<size_t>(n)];
        double b = e2.energies[static_cast<size_t>(n)];
        worst = std::max(worst, std::abs(a - b) / std::max(1e-300, std::abs(b)));
    }
    return worst;
}

}  // namespace qwell::schrodinger
