#include "qwell/otoc_engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace qwell::otoc_engine {

namespace {

using cd = std::complex<double>;

// c_m(0) with the l,k sums restricted to the first k_eff states.
double c_m_zero(const MatrixElementSet& set, int m, int k_eff) {
    const double kappa = set.kappa();
    double c = 0.0;
    for (int k = 0; k < k_eff; ++k) {
        double b = 0.0;
        for (int l = 0; l < k_eff; ++l)
            b += set.x(m, l) * set.x(l, k) * (set.e_diff(l, k) - set.e_diff(m, l));
        b *= kappa;
        c += b * b;
    }
    return c;
}

struct LsqFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LsqFit lsq(const std::vector<double>& t, const std::vector<double>& y, int lo, int hi) {
    int n = hi - lo + 1;
    double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
    for (int i = lo; i <= hi; ++i) {
        st += t[static_cast<size_t>(i)];
        sy += y[static_cast<size_t>(i)];
    }
    double mt = st / n, my = sy / n;
    for (int i = lo; i <= hi; ++i) {
        double dt = t[static_cast<size_t>(i)] - mt, dy = y[static_cast<size_t>(i)] - my;
        stt += dt * dt;
        sty += dt * dy;
        syy += dy * dy;
    }
    LsqFit f;
    f.slope = stt > 0 ? sty / stt : 0.0;
    f.intercept = my - f.slope * mt;
    f.r2 = (stt > 0 && syy > 0) ? (sty * sty) / (stt * syy) : 1.0;
    return f;
}

}  // namespace

std::vector<double> time_grid(double t_max, int samples) {
    if (samples < 2 || t_max <= 0.0) throw std::invalid_argument("bad time grid");
    std::vector<double> t(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i)
        t[static_cast<size_t>(i)] = t_max * i / (samples - 1);
    return t;
}

OtocSeries microcanonical_otoc(const MatrixElementSet& set, int m,
                               const std::vector<double>& times) {
    const int kt = set.k_t;
    if (m < 0 || m >= kt) throw std::invalid_argument("m out of truncation range");
    const double kappa = set.kappa();
    OtocSeries s;
    s.times = times;
    s.values.resize(times.size());
    std::vector<cd> ph(static_cast<size_t>(kt));
    for (size_t it = 0; it < times.size(); ++it) {
        double t = times[it];
        for (int j = 0; j < kt; ++j)
            ph[static_cast<size_t>(j)] = std::polar(1.0, set.energies[static_cast<size_t>(j)] * t);
        const cd phm = ph[static_cast<size_t>(m)];
        double c = 0.0;
        for (int k = 0; k < kt; ++k) {
            cd b(0.0, 0.0);
            const cd phk_conj = std::conj(ph[static_cast<size_t>(k)]);
            for (int l = 0; l < kt; ++l) {
                double xx = set.x(m, l) * set.x(l, k);
                if (xx == 0.0) continue;
                // E_lk e^{i E_ml t} - E_ml e^{i E_lk t}
                b += xx * (set.e_diff(l, k) * phm * std::conj(ph[static_cast<size_t>(l)]) -
                           set.e_diff(m, l) * ph[static_cast<size_t>(l)] * phk_conj);
            }
            b *= kappa;
            c += std::norm(b);
        }
        s.values[it] = c;
    }
    if (kt > 10) {
        double full = c_m_zero(set, m, kt);
        double reduced = c_m_zero(set, m, kt - 10);
        s.truncation_warning = std::abs(full - reduced) > 0.01 * std::abs(full);
    }
    return s;
}

double matrix_oracle(const MatrixElementSet& set, int m, double t) {
    const int kt = set.k_t;
    if (m < 0 || m >= kt) throw std::invalid_argument("m out of truncation range");
    const size_t n = static_cast<size_t>(kt);
    std::vector<cd> xt(n * n), p(n * n), c(n * n, cd(0, 0));
    std::vector<cd> ph(n);
    for (int j = 0; j < kt; ++j)
        ph[static_cast<size_t>(j)] = std::polar(1.0, set.energies[static_cast<size_t>(j)] * t);
    const double kappa = set.kappa();
    for (int a = 0; a < kt; ++a)
        for (int b = 0; b < kt; ++b) {
            size_t i = static_cast<size_t>(a) * n + static_cast<size_t>(b);
            xt[i] = ph[static_cast<size_t>(a)] * set.x(a, b) * std::conj(ph[static_cast<size_t>(b)]);
            p[i] = cd(0.0, kappa * set.e_diff(a, b) * set.x(a, b));
        }
    for (int a = 0; a < kt; ++a)
        for (int b = 0; b < kt; ++b) {
            cd acc(0, 0);
            for (int k = 0; k < kt; ++k)
                acc += xt[static_cast<size_t>(a) * n + static_cast<size_t>(k)] * p[static_cast<size_t>(k) * n + static_cast<size_t>(b)] -
                       p[static_cast<size_t>(a) * n + static_cast<size_t>(k)] * xt[static_cast<size_t>(k) * n + static_cast<size_t>(b)];
            c[static_cast<size_t>(a) * n + static_cast<size_t>(b)] = acc;
        }
    cd out(0, 0);
    for (int k = 0; k < kt; ++k)
        out += c[static_cast<size_t>(m) * n + static_cast<size_t>(k)] * c[static_cast<size_t>(k) * n + static_cast<size_t>(m)];
    return -out.real();
}

OtocSeries thermal_otoc(const MatrixElementSet& set, double beta,
                        const std::vector<double>& times) {
    if (beta <= 0.0) throw std::invalid_argument("beta must be > 0");
    const double e0 = set.energies.front();
    std::vector<double> weights;
    for (int m = 0; m < set.k_t; ++m) {
        double w = std::exp(-beta * (set.energies[static_cast<size_t>(m)] - e0));
        if (w < 1e-10) break;
        weights.push_back(w);
    }
    double z = 0.0;
    for (double w : weights) z += w;
    OtocSeries out;
    out.times = times;
    out.values.assign(times.size(), 0.0);
    for (size_t m = 0; m < weights.size(); ++m) {
        auto cm = microcanonical_otoc(set, static_cast<int>(m), times);
        out.truncation_warning = out.truncation_warning || cm.truncation_warning;
        double w = weights[m] / z;
        for (size_t i = 0; i < times.size(); ++i) out.values[i] += w * cm.values[i];
    }
    return out;
}

std::optional<GrowthWindow> fit_growth_rate(
    const OtocSeries& series, std::optional<std::pair<double, double>> window) {
    const auto& t = series.times;
    const int n = static_cast<int>(t.size());
    if (n < 2) return std::nullopt;
    std::vector<double> lv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        lv[static_cast<size_t>(i)] = std::log(std::max(series.values[static_cast<size_t>(i)], 1e-300));

    if (window) {
        auto [t_lo, t_hi] = *window;
        int lo = 0, hi = n - 1;
        while (lo < n && t[static_cast<size_t>(lo)] < t_lo) ++lo;
        while (hi >= 0 && t[static_cast<size_t>(hi)] > t_hi) --hi;
        if (hi - lo + 1 < 20) throw std::invalid_argument("window has fewer than 20 samples");
        auto f = lsq(t, lv, lo, hi);
        return GrowthWindow{f.slope / 2.0, f.r2, t[static_cast<size_t>(lo)], t[static_cast<size_t>(hi)]};
    }

    const double t_max = t.back();
    const double t_start = 0.02 * t_max;     // 0.2 at the default t_max = 10
    const double min_len = 0.10 * t_max;     // 1.0 at the default t_max = 10
    const double early_max = 0.20 * t_max;   // growth must begin early
    const double ln_c0 = lv[0];

    // 3-sample half-width moving average of ln(values).
    std::vector<double> sv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int a = std::max(0, i - 3), b = std::min(n - 1, i + 3);
        double acc = 0.0;
        for (int j = a; j <= b; ++j) acc += lv[static_cast<size_t>(j)];
        sv[static_cast<size_t>(i)] = acc / (b - a + 1);
    }

    int i0 = 0;
    while (i0 < n && t[static_cast<size_t>(i0)] < t_start) ++i0;

    std::optional<GrowthWindow> best;
    double best_len = 0.0;
    int a = i0;
    while (a < n - 1) {
        int b = a;
        while (b + 1 < n && sv[static_cast<size_t>(b + 1)] > sv[static_cast<size_t>(b)]) ++b;
        if (b == a) { ++a; continue; }
        bool qualifies =
            t[static_cast<size_t>(a)] <= early_max &&
            sv[static_cast<size_t>(a)] >= ln_c0 - 1.2 &&
            sv[static_cast<size_t>(b)] - ln_c0 >= 2.2 &&
            sv[static_cast<size_t>(b)] - sv[static_cast<size_t>(a)] >= 1.1 &&
            t[static_cast<size_t>(b)] - t[static_cast<size_t>(a)] >= min_len;
        if (qualifies) {
            // local slope at each run sample, +/-5 sample least squares
            std::vector<double> slope(static_cast<size_t>(b - a + 1));
            for (int i = a; i <= b; ++i) {
                int lo = std::max(a, i - 5), hi = std::min(b, i + 5);
                slope[static_cast<size_t>(i - a)] = lsq(t, sv, lo, hi).slope;
            }
            // longest subinterval whose local slopes stay within 30% of its mean
            for (int i = a; i <= b; ++i) {
                double sum = 0.0, mn = 1e300, mx = -1e300;
                for (int j = i; j <= b; ++j) {
                    double s = slope[static_cast<size_t>(j - a)];
                    sum += s;
                    mn = std::min(mn, s);
                    mx = std::max(mx, s);
                    double mean = sum / (j - i + 1);
                    if (mean <= 0.0 || mn < 0.7 * mean || mx > 1.3 * mean) break;
                    double len = t[static_cast<size_t>(j)] - t[static_cast<size_t>(i)];
                    if (len >= min_len && len > best_len) {
                        // window selected on the smoothed log; rate reported
                        // from the raw log so a pure exponential fits exactly
                        auto f = lsq(t, lv, i, j);
                        best_len = len;
                        best = GrowthWindow{f.slope / 2.0, f.r2,
                                            t[static_cast<size_t>(i)], t[static_cast<size_t>(j)]};
                    }
                }
            }
        }
        a = b;
    }
    return best;
}

}  // namespace qwell::otoc_engine
