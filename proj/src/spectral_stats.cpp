#include "qwell/spectral_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwell::spectral_stats {

SpectrumStats level_differences(const EigenSystem& eig) {
    const int k = static_cast<int>(eig.energies.size());
    if (k < 8) throw std::invalid_argument("need at least 8 levels");
    SpectrumStats st;
    st.diffs.resize(static_cast<size_t>(k - 1));
    for (int n = 0; n + 1 < k; ++n)
        st.diffs[static_cast<size_t>(n)] =
            eig.energies[static_cast<size_t>(n + 1)] - eig.energies[static_cast<size_t>(n)];

    const int nd = k - 1;
    st.smoothed.resize(static_cast<size_t>(nd));
    for (int i = 0; i < nd; ++i) {
        int a = std::max(0, i - 1), b = std::min(nd - 1, i + 1);
        double acc = 0.0;
        for (int j = a; j <= b; ++j) acc += st.diffs[static_cast<size_t>(j)];
        st.smoothed[static_cast<size_t>(i)] = acc / (b - a + 1);
    }

    // Local minima of the smoothed curve; minima separated by <= 2 indices
    // belong to one oscillatory chain (paired doublets) and collapse to the
    // last member, where the chain meets the genuine dip.
    std::vector<int> minima;
    for (int i = 1; i + 1 < nd; ++i)
        if (st.smoothed[static_cast<size_t>(i)] < st.smoothed[static_cast<size_t>(i - 1)] &&
            st.smoothed[static_cast<size_t>(i)] < st.smoothed[static_cast<size_t>(i + 1)])
            minima.push_back(i);
    for (size_t i = 0; i < minima.size(); ++i) {
        size_t j = i;
        while (j + 1 < minima.size() && minima[j + 1] - minima[j] <= 2) ++j;
        int rep = minima[j];
        st.dips.push_back({rep, eig.energies[static_cast<size_t>(rep)],
                           st.smoothed[static_cast<size_t>(rep)]});
        i = j;
    }

    for (const auto& dip : st.dips) {
        double limit = 1.5 * dip.smoothed_value;
        int lo = dip.n, hi = dip.n;
        while (lo > 0 && st.smoothed[static_cast<size_t>(lo - 1)] <= limit) --lo;
        while (hi + 1 < nd && st.smoothed[static_cast<size_t>(hi + 1)] <= limit) ++hi;
        if (!st.clusters.empty() && lo <= st.clusters.back().hi)
            st.clusters.back().hi = std::max(st.clusters.back().hi, hi);
        else
            st.clusters.push_back({lo, hi});
    }
    return st;
}

double default_smoothing_width(const EigenSystem& eig) {
    std::vector<double> d;
    for (size_t n = 0; n + 1 < eig.energies.size(); ++n)
        d.push_back(eig.energies[n + 1] - eig.energies[n]);
    std::sort(d.begin(), d.end());
    double median = d.empty() ? 1.0
                  : d.size() % 2 ? d[d.size() / 2]
                                 : 0.5 * (d[d.size() / 2 - 1] + d[d.size() / 2]);
    return 2.0 * median;
}

std::vector<std::pair<double, double>> density_of_states(const EigenSystem& eig,
                                                         double smoothing_width) {
    if (smoothing_width <= 0.0) throw std::invalid_argument("smoothing_width must be > 0");
    const int samples = 400;
    double e_lo = eig.energies.front(), e_hi = eig.energies.back();
    std::vector<std::pair<double, double>> out(samples);
    double norm = 1.0 / (smoothing_width * std::sqrt(2.0 * M_PI));
    for (int i = 0; i < samples; ++i) {
        double e = e_lo + (e_hi - e_lo) * i / (samples - 1);
        double rho = 0.0;
        for (double en : eig.energies) {
            double u = (e - en) / smoothing_width;
            rho += std::exp(-0.5 * u * u);
        }
        out[static_cast<size_t>(i)] = {e, rho * norm};
    }
    return out;
}

std::vector<std::pair<int, double>> doublet_splittings(const EigenSystem& eig,
                                                       double barrier_energy) {
    std::vector<std::pair<int, double>> out;
    std::vector<int> below;
    for (size_t n = 0; n < eig.energies.size(); ++n)
        if (eig.energies[n] < barrier_energy) below.push_back(static_cast<int>(n));

    if (std::abs(eig.spec.lambda) < 1e-12) {
        for (size_t i = 0; i + 1 < below.size(); i += 2)
            out.emplace_back(static_cast<int>(i / 2),
                             eig.energies[static_cast<size_t>(below[i + 1])] -
                                 eig.energies[static_cast<size_t>(below[i])]);
        return out;
    }

    // Tilted well: partner the k-th left-localized state with the k-th
    // right-localized one (first-order splitting lambda*(x_R - x_L) = sigma).
    auto moments = state_moments(eig);
    std::vector<int> left, right;
    for (int n : below)
        (moments[static_cast<size_t>(n)].mean_x < 0.0 ? left : right).push_back(n);
    for (size_t k = 0; k < std::min(left.size(), right.size()); ++k)
        out.emplace_back(static_cast<int>(k),
                         eig.energies[static_cast<size_t>(right[k])] -
                             eig.energies[static_cast<size_t>(left[k])]);
    return out;
}

std::vector<StateMoments> state_moments(const EigenSystem& eig) {
    const double h = eig.spacing();
    std::vector<StateMoments> out(eig.states.size());
    for (size_t n = 0; n < eig.states.size(); ++n) {
        const auto& psi = eig.states[n];
        double m1 = 0.0, m2 = 0.0;
        std::vector<double> cum(psi.size());
        double running = 0.0;
        for (size_t i = 0; i < psi.size(); ++i) {
            double p = psi[i] * psi[i] * h;
            m1 += eig.x[i] * p;
            m2 += eig.x[i] * eig.x[i] * p;
            running += p;
            cum[i] = running;
        }
        StateMoments sm;
        sm.mean_x = m1;
        sm.spread_x = std::sqrt(std::max(0.0, m2 - m1 * m1));
        // smallest interval holding 99% of the mass, two-pointer sweep
        double best = eig.x.back() - eig.x.front();
        size_t j = 0;
        for (size_t i = 0; i < psi.size(); ++i) {
            double base = i > 0 ? cum[i - 1] : 0.0;
            while (j < psi.size() && cum[j] - base < 0.99 * running) ++j;
            if (j >= psi.size()) break;
            best = std::min(best, eig.x[j] - eig.x[i]);
        }
        sm.support_width = best;
        out[n] = sm;
    }
    return out;
}

}  // namespace qwell::spectral_stats
