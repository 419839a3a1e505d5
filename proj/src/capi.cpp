#include "qwell.h"

#include <cmath>
#include <cstring>
#include <string>

#include "qwell/classical_dynamics.hpp"
#include "qwell/echo.hpp"
#include "qwell/model_potentials.hpp"
#include "qwell/otoc_engine.hpp"
#include "qwell/operators.hpp"
#include "qwell/schrodinger.hpp"
#include "qwell/spectral_stats.hpp"

namespace mp = qwell::model_potentials;
namespace cd = qwell::classical_dynamics;
namespace sch = qwell::schrodinger;
namespace ops = qwell::operators;
namespace otoc = qwell::otoc_engine;
namespace ech = qwell::echo;
namespace sps = qwell::spectral_stats;

namespace {
thread_local std::string g_error;

void set_error(const char* what) { g_error = what ? what : "unknown error"; }

template <typename F>
int guarded(F&& f) {
    try {
        return f();
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return QWELL_ERR_INVALID;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QWELL_ERR_NUMERIC;
    }
}
}  // namespace

struct qwell_solver {
    mp::PotentialSpec spec;
    sch::EigenSystem eig;
};

extern "C" {

const char* qwell_version(void) { return "1.0.0"; }
const char* qwell_last_error(void) { return g_error.c_str(); }

qwell_solver* qwell_solver_new(const char* model, double sigma,
                               int grid_points, int k_states,
                               double x_min, double x_max) {
    qwell_solver* out = nullptr;
    guarded([&]() {
        auto spec = mp::build_preset(mp::parse_model(model ? model : ""), sigma);
        sch::Grid grid = (x_min == 0.0 && x_max == 0.0)
                             ? sch::default_grid(spec, grid_points, k_states)
                             : sch::Grid{x_min, x_max, grid_points};
        auto eig = sch::eigensolve(spec, grid, k_states);
        out = new qwell_solver{spec, std::move(eig)};
        return QWELL_OK;
    });
    return out;
}

void qwell_solver_free(qwell_solver* s) { delete s; }

double qwell_solver_lambda(const qwell_solver* s) { return s->spec.lambda; }
double qwell_solver_shift(const qwell_solver* s) { return s->spec.shift; }
int qwell_solver_grid_points(const qwell_solver* s) { return s->eig.grid.n_points; }
int qwell_solver_k_states(const qwell_solver* s) { return static_cast<int>(s->eig.energies.size()); }
int qwell_solver_resolution_warning(const qwell_solver* s) { return s->eig.resolution_warning ? 1 : 0; }

void qwell_solver_domain(const qwell_solver* s, double* x_min, double* x_max) {
    if (x_min) *x_min = s->eig.grid.x_min;
    if (x_max) *x_max = s->eig.grid.x_max;
}

int qwell_solver_energies(const qwell_solver* s, double* out) {
    return guarded([&]() {
        std::memcpy(out, s->eig.energies.data(), s->eig.energies.size() * sizeof(double));
        return QWELL_OK;
    });
}

int qwell_solver_grid(const qwell_solver* s, double* out) {
    return guarded([&]() {
        std::memcpy(out, s->eig.x.data(), s->eig.x.size() * sizeof(double));
        return QWELL_OK;
    });
}

int qwell_solver_state(const qwell_solver* s, int n, double* out) {
    return guarded([&]() {
        if (n < 0 || static_cast<size_t>(n) >= s->eig.states.size())
            throw std::invalid_argument("state index out of range");
        const auto& psi = s->eig.states[static_cast<size_t>(n)];
        std::memcpy(out, psi.data(), psi.size() * sizeof(double));
        return QWELL_OK;
    });
}

double qwell_solver_potential(const qwell_solver* s, double x, int derivative_order) {
    return s->spec.evaluate(x, derivative_order);
}

namespace {
ops::Convention to_convention(int c) {
    if (c == QWELL_CONVENTION_CANONICAL) return ops::Convention::Canonical;
    if (c == QWELL_CONVENTION_PAPER) return ops::Convention::PaperHalf;
    throw std::invalid_argument("unknown convention");
}
}  // namespace

int qwell_otoc_microcanonical(const qwell_solver* s, int m, int k_trunc,
                              int convention, const double* times, int n_times,
                              double* out_values) {
    return guarded([&]() {
        auto set = ops::position_elements(s->eig, k_trunc, to_convention(convention));
        std::vector<double> t(times, times + n_times);
        auto series = otoc::microcanonical_otoc(set, m, t);
        std::memcpy(out_values, series.values.data(), t.size() * sizeof(double));
        return QWELL_OK;
    });
}

int qwell_otoc_thermal(const qwell_solver* s, double beta, int k_trunc,
                       int convention, const double* times, int n_times,
                       double* out_values) {
    return guarded([&]() {
        auto set = ops::position_elements(s->eig, k_trunc, to_convention(convention));
        std::vector<double> t(times, times + n_times);
        auto series = otoc::thermal_otoc(set, beta, t);
        std::memcpy(out_values, series.values.data(), t.size() * sizeof(double));
        return QWELL_OK;
    });
}

int qwell_fit_growth(const double* times, const double* values, int n,
                     double* lambda_hat, double* r_squared,
                     double* t_lo, double* t_hi) {
    return guarded([&]() {
        otoc::OtocSeries s;
        s.times.assign(times, times + n);
        s.values.assign(values, values + n);
        auto w = otoc::fit_growth_rate(s);
        if (!w) return QWELL_NO_GROWTH_WINDOW;
        if (lambda_hat) *lambda_hat = w->lambda_hat;
        if (r_squared) *r_squared = w->r_squared;
        if (t_lo) *t_lo = w->t_lo;
        if (t_hi) *t_hi = w->t_hi;
        return QWELL_OK;
    });
}

namespace {
int run_echo(const qwell_solver* s, int method, double lambda,
             const std::vector<double>& psi0, const double* times, int n_times,
             double* out_values) {
    std::vector<double> t(times, times + n_times);
    ech::EchoSeries series;
    if (method == QWELL_ECHO_PERES) {
        series = ech::peres_echo(psi0, s->eig.x, s->eig.spacing(), lambda, t);
    } else if (method == QWELL_ECHO_EXACT) {
        auto spec2 = s->spec;
        spec2.lambda += lambda;
        auto eig2 = sch::eigensolve(spec2, s->eig.grid, static_cast<int>(s->eig.energies.size()));
        series = ech::exact_echo(s->eig, eig2, psi0, t);
    } else {
        throw std::invalid_argument("unknown echo method");
    }
    std::memcpy(out_values, series.values.data(), t.size() * sizeof(double));
    return QWELL_OK;
}
}  // namespace

int qwell_echo(const qwell_solver* s, int method, double lambda,
               const double* times, int n_times, double* out_values) {
    return guarded([&]() {
        return run_echo(s, method, lambda, s->eig.states.front(), times, n_times, out_values);
    });
}

int qwell_echo_packet(const qwell_solver* s, int method, double lambda,
                      const double* times, int n_times, double* out_values) {
    return guarded([&]() {
        double center = mp::global_minimizer(s->spec);
        double omega = std::sqrt(std::max(s->spec.evaluate(center, 2), 1e-12));
        double width = 1.0 / std::sqrt(2.0 * omega);
        auto psi0 = ech::gaussian_state(s->eig.x, s->eig.spacing(), center, width);
        return run_echo(s, method, lambda, psi0, times, n_times, out_values);
    });
}

int qwell_fixed_points(const char* model, double sigma, int capacity,
                       double* out_x, int* out_stability, double* out_energy,
                       int* out_count) {
    return guarded([&]() {
        auto spec = mp::build_preset(mp::parse_model(model ? model : ""), sigma);
        auto set = cd::fixed_points(spec, -12.0, 12.0);
        int n = static_cast<int>(set.points.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        for (int i = 0; i < n; ++i) {
            const auto& fp = set.points[static_cast<size_t>(i)];
            out_x[i] = fp.x;
            out_stability[i] = fp.stability == cd::Stability::Minimum   ? QWELL_STAB_MINIMUM
                               : fp.stability == cd::Stability::Maximum ? QWELL_STAB_MAXIMUM
                                                                        : QWELL_STAB_DEGENERATE;
            out_energy[i] = fp.energy;
        }
        *out_count = n;
        return QWELL_OK;
    });
}

int qwell_critical_lambda(const char* model, int method, double* out) {
    return guarded([&]() {
        auto m = mp::parse_model(model ? model : "");
        *out = cd::critical_lambda(m, method == 0 ? cd::CriticalMethod::ClosedForm
                                                  : cd::CriticalMethod::Bisection);
        return QWELL_OK;
    });
}

double qwell_saddle_node_a1(double a0, double lambda) {
    return cd::saddle_node_a1(a0, lambda);
}

int qwell_quartic_fixed_point_count(double a0, double a1, double lambda,
                                    int* out_count) {
    return guarded([&]() {
        std::array<double, 7> c{};
        c[4] = a0;
        c[2] = -a1;
        auto spec = mp::build_custom(c, lambda);
        double half = 2.0 * std::sqrt(std::max(1.0, a1 / (2.0 * a0))) + 2.0;
        *out_count = static_cast<int>(cd::fixed_points(spec, -half, half).points.size());
        return QWELL_OK;
    });
}

int qwell_slope_minima(const char* model, double sigma, int capacity,
                       double* out_x, double* out_slope, double* out_energy,
                       int* out_count) {
    return guarded([&]() {
        auto spec = mp::build_preset(mp::parse_model(model ? model : ""), sigma);
        auto list = cd::slope_minima(spec, -12.0, 12.0);
        int n = static_cast<int>(list.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        for (int i = 0; i < n; ++i) {
            out_x[i] = list[static_cast<size_t>(i)].x;
            out_slope[i] = list[static_cast<size_t>(i)].slope;
            out_energy[i] = list[static_cast<size_t>(i)].turning_energy;
        }
        *out_count = n;
        return QWELL_OK;
    });
}

int qwell_trajectory(const char* model, double sigma, double x0, double p0,
                     double t_max, double dt, int capacity,
                     double* out_t, double* out_x, double* out_p,
                     int* out_count, double* out_energy_drift) {
    return guarded([&]() {
        auto spec = mp::build_preset(mp::parse_model(model ? model : ""), sigma);
        auto traj = cd::integrate(spec, x0, p0, t_max, dt);
        int n = static_cast<int>(traj.t.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        std::memcpy(out_t, traj.t.data(), traj.t.size() * sizeof(double));
        std::memcpy(out_x, traj.x.data(), traj.x.size() * sizeof(double));
        std::memcpy(out_p, traj.p.data(), traj.p.size() * sizeof(double));
        *out_count = n;
        if (out_energy_drift) *out_energy_drift = traj.energy_drift;
        return QWELL_OK;
    });
}

int qwell_level_differences(const qwell_solver* s, double* out) {
    return guarded([&]() {
        auto st = sps::level_differences(s->eig);
        std::memcpy(out, st.diffs.data(), st.diffs.size() * sizeof(double));
        return QWELL_OK;
    });
}

int qwell_dips(const qwell_solver* s, int capacity, int* out_index,
               double* out_energy, int* out_count) {
    return guarded([&]() {
        auto st = sps::level_differences(s->eig);
        int n = static_cast<int>(st.dips.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        for (int i = 0; i < n; ++i) {
            out_index[i] = st.dips[static_cast<size_t>(i)].n;
            out_energy[i] = st.dips[static_cast<size_t>(i)].energy;
        }
        *out_count = n;
        return QWELL_OK;
    });
}

int qwell_clusters(const qwell_solver* s, int capacity, int* out_lo,
                   int* out_hi, int* out_count) {
    return guarded([&]() {
        auto st = sps::level_differences(s->eig);
        int n = static_cast<int>(st.clusters.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        for (int i = 0; i < n; ++i) {
            out_lo[i] = st.clusters[static_cast<size_t>(i)].lo;
            out_hi[i] = st.clusters[static_cast<size_t>(i)].hi;
        }
        *out_count = n;
        return QWELL_OK;
    });
}

int qwell_density_of_states(const qwell_solver* s, double smoothing_width,
                            int n_samples, double* out_energy, double* out_rho) {
    return guarded([&]() {
        if (n_samples != 400) throw std::invalid_argument("n_samples must be 400");
        double w = smoothing_width > 0.0 ? smoothing_width : sps::default_smoothing_width(s->eig);
        auto dos = sps::density_of_states(s->eig, w);
        for (size_t i = 0; i < dos.size(); ++i) {
            out_energy[i] = dos[i].first;
            out_rho[i] = dos[i].second;
        }
        return QWELL_OK;
    });
}

int qwell_doublet_splittings(const qwell_solver* s, double barrier_energy,
                             int capacity, int* out_pair, double* out_splitting,
                             int* out_count) {
    return guarded([&]() {
        auto list = sps::doublet_splittings(s->eig, barrier_energy);
        int n = static_cast<int>(list.size());
        if (n > capacity) throw std::invalid_argument("capacity too small");
        for (int i = 0; i < n; ++i) {
            out_pair[i] = list[static_cast<size_t>(i)].first;
            out_splitting[i] = list[static_cast<size_t>(i)].second;
        }
        *out_count = n;
        return QWELL_OK;
    });
}

int qwell_state_moments(const qwell_solver* s, double* out_mean_x,
                        double* out_spread_x, double* out_support_width) {
    return guarded([&]() {
        auto m = sps::state_moments(s->eig);
        for (size_t i = 0; i < m.size(); ++i) {
            out_mean_x[i] = m[i].mean_x;
            out_spread_x[i] = m[i].spread_x;
            out_support_width[i] = m[i].support_width;
        }
        return QWELL_OK;
    });
}

}  // extern "C"
