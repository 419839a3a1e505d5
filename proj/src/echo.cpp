#include "qwell/echo.hpp"

#include <cmath>
#include <complex>

namespace qwell::echo {

namespace {
using cd = std::complex<double>;
}

EchoSeries peres_echo(const std::vector<double>& psi0, const std::vector<double>& x,
                      double spacing, double lambda, const std::vector<double>& times) {
    if (psi0.size() != x.size()) throw std::invalid_argument("state/grid size mismatch");
    std::vector<double> density(psi0.size());
    for (size_t i = 0; i < psi0.size(); ++i) density[i] = psi0[i] * psi0[i] * spacing;
    EchoSeries s;
    s.times = times;
    s.values.resize(times.size());
    for (size_t it = 0; it < times.size(); ++it) {
        double tau = lambda * times[it];
        cd a(0, 0);
        for (size_t i = 0; i < x.size(); ++i) a += density[i] * std::polar(1.0, x[i] * tau);
        s.values[it] = std::norm(a);
    }
    return s;
}

EchoSeries exact_echo(const EigenSystem& eig1, const EigenSystem& eig2,
                      const std::vector<double>& psi0, const std::vector<double>& times) {
    if (eig1.x.size() != eig2.x.size() || eig1.x.size() != psi0.size())
        throw std::invalid_argument("eigensystems must share the grid with psi0");
    const double h = eig1.spacing();
    const size_t k1 = eig1.states.size(), k2 = eig2.states.size(), np = psi0.size();

    auto project = [&](const std::vector<std::vector<double>>& basis) {
        std::vector<double> c(basis.size());
        for (size_t n = 0; n < basis.size(); ++n) {
            double acc = 0.0;
            for (size_t i = 0; i < np; ++i) acc += basis[n][i] * psi0[i];
            c[n] = acc * h;
        }
        return c;
    };
    auto a = project(eig1.states);
    auto c2 = project(eig2.states);
    double n1 = 0.0, n2 = 0.0;
    for (double v : a) n1 += v * v;
    for (double v : c2) n2 += v * v;
    if (1.0 - n1 > 1e-6 || 1.0 - n2 > 1e-6)
        throw BasisIncomplete("initial state not spanned by the eigenbasis");

    // A(t) = sum_{j,n} conj(c2_j) T_jn a_n e^{i (E2_j - E1_n) t}
    std::vector<double> w(k2 * k1), omega(k2 * k1);
    for (size_t j = 0; j < k2; ++j) {
        for (size_t n = 0; n < k1; ++n) {
            double tjn = 0.0;
            for (size_t i = 0; i < np; ++i) tjn += eig2.states[j][i] * eig1.states[n][i];
            tjn *= h;
            w[j * k1 + n] = c2[j] * tjn * a[n];
            omega[j * k1 + n] = eig2.energies[j] - eig1.energies[n];
        }
    }
    EchoSeries s;
    s.times = times;
    s.values.resize(times.size());
    for (size_t it = 0; it < times.size(); ++it) {
        double t = times[it];
        cd acc(0, 0);
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] != 0.0) acc += w[i] * std::polar(1.0, omega[i] * t);
        s.values[it] = std::norm(acc);
    }
    return s;
}

std::vector<double> gaussian_state(const std::vector<double>& x, double spacing,
                                   double center, double width) {
    std::vector<double> psi(x.size());
    double norm = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - center;
        psi[i] = std::exp(-d * d / (4.0 * width * width));
        norm += psi[i] * psi[i];
    }
    norm = 1.0 / std::sqrt(norm * spacing);
    for (double& v : psi) v *= norm;
    return psi;
}

Fluctuation post_decay_fluctuation(const EchoSeries& series, double t_settle) {
    double sum = 0.0, sum2 = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < series.times.size(); ++i) {
        if (series.times[i] <= t_settle) continue;
        sum += series.values[i];
        sum2 += series.values[i] * series.values[i];
        ++n;
    }
    if (n == 0) throw std::invalid_argument("t_settle beyond the time range");
    Fluctuation f;
    f.mean = sum / static_cast<double>(n);
    double var = sum2 / static_cast<double>(n) - f.mean * f.mean;
    f.amplitude_std = std::sqrt(std::max(0.0, var));
    return f;
}

double default_t_settle(const EchoSeries& series) {
    const double threshold = std::exp(-1.0);
    for (size_t i = 0; i < series.times.size(); ++i)
        if (series.values[i] < threshold) return 2.0 * series.times[i];
    return 0.5 * series.times.back();
}

}  // namespace qwell::echo
