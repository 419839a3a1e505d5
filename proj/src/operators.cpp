#include "qwell/operators.hpp"

namespace qwell::operators {

MatrixElementSet position_elements(const EigenSystem& eig, int k_t, Convention convention) {
    if (k_t < 1 || static_cast<size_t>(k_t) > eig.states.size())
        throw TruncationTooLarge("K_t exceeds available states");
    MatrixElementSet set;
    set.k_t = k_t;
    set.convention = convention;
    set.energies.assign(eig.energies.begin(), eig.energies.begin() + k_t);
    set.x_elements.assign(static_cast<size_t>(k_t) * static_cast<size_t>(k_t), 0.0);
    const double h = eig.spacing();
    const size_t np = eig.x.size();
    for (int m = 0; m < k_t; ++m) {
        const auto& pm = eig.states[static_cast<size_t>(m)];
        for (int n = m; n < k_t; ++n) {
            const auto& pn = eig.states[static_cast<size_t>(n)];
            double acc = 0.0;
            for (size_t i = 0; i < np; ++i) acc += pm[i] * eig.x[i] * pn[i];
            acc *= h;
            set.x_elements[static_cast<size_t>(m) * static_cast<size_t>(k_t) + static_cast<size_t>(n)] = acc;
            set.x_elements[static_cast<size_t>(n) * static_cast<size_t>(k_t) + static_cast<size_t>(m)] = acc;
        }
    }
    return set;
}

std::complex<double> momentum_element(const MatrixElementSet& set, int m, int n) {
    return std::complex<double>(0.0, set.kappa() * set.e_diff(m, n) * set.x(m, n));
}

}  // namespace qwell::operators
