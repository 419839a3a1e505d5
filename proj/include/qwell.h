#ifndef QWELL_H
#define QWELL_H

/* C API for the perturbed-well diagnostics library. All functions return
 * QWELL_OK (0) on success unless noted; on failure qwell_last_error() holds
 * a message for the calling thread. Array outputs are caller-allocated. */

#ifdef __cplusplus
extern "C" {
#endif

enum {
    QWELL_OK = 0,
    QWELL_ERR_INVALID = 1,   /* bad arguments / configuration */
    QWELL_ERR_NUMERIC = 2,   /* solver or iteration failure */
    QWELL_NO_GROWTH_WINDOW = 3
};

enum {
    QWELL_CONVENTION_PAPER = 0,    /* p_mn = (i/2) E_mn x_mn */
    QWELL_CONVENTION_CANONICAL = 1 /* p_mn = i E_mn x_mn */
};

enum {
    QWELL_ECHO_PERES = 0,
    QWELL_ECHO_EXACT = 1
};

enum {
    QWELL_STAB_MINIMUM = 0,
    QWELL_STAB_MAXIMUM = 1,
    QWELL_STAB_DEGENERATE = 2
};

const char* qwell_version(void);
const char* qwell_last_error(void);

/* ---- solver handle (model + sigma + grid + eigensystem) ---- */

typedef struct qwell_solver qwell_solver;

/* model: "harmonic", "I", "Ia", "II". Pass x_min = x_max = 0 for the default
 * domain. Returns NULL on failure. */
qwell_solver* qwell_solver_new(const char* model, double sigma,
                               int grid_points, int k_states,
                               double x_min, double x_max);
void qwell_solver_free(qwell_solver* s);

double qwell_solver_lambda(const qwell_solver* s);
double qwell_solver_shift(const qwell_solver* s);
int qwell_solver_grid_points(const qwell_solver* s);
int qwell_solver_k_states(const qwell_solver* s);
int qwell_solver_resolution_warning(const qwell_solver* s);
void qwell_solver_domain(const qwell_solver* s, double* x_min, double* x_max);

int qwell_solver_energies(const qwell_solver* s, double* out /* k_states */);
int qwell_solver_grid(const qwell_solver* s, double* out /* grid_points */);
int qwell_solver_state(const qwell_solver* s, int n, double* out /* grid_points */);
double qwell_solver_potential(const qwell_solver* s, double x, int derivative_order);

/* ---- OTOC ---- */

int qwell_otoc_microcanonical(const qwell_solver* s, int m, int k_trunc,
                              int convention, const double* times, int n_times,
                              double* out_values);
int qwell_otoc_thermal(const qwell_solver* s, double beta, int k_trunc,
                       int convention, const double* times, int n_times,
                       double* out_values);
/* Returns QWELL_OK when a window is found, QWELL_NO_GROWTH_WINDOW otherwise. */
int qwell_fit_growth(const double* times, const double* values, int n,
                     double* lambda_hat, double* r_squared,
                     double* t_lo, double* t_hi);

/* ---- Loschmidt echo (psi0 = ground state of the solver's Hamiltonian) ---- */

int qwell_echo(const qwell_solver* s, int method, double lambda,
               const double* times, int n_times, double* out_values);
/* Same, from a Gaussian packet centered at the potential's global minimum
 * with width set by the local curvature. */
int qwell_echo_packet(const qwell_solver* s, int method, double lambda,
                      const double* times, int n_times, double* out_values);

/* ---- classical analysis ---- */

int qwell_fixed_points(const char* model, double sigma, int capacity,
                       double* out_x, int* out_stability, double* out_energy,
                       int* out_count);
/* method: 0 = closed form, 1 = bisection on the fixed-point count. */
int qwell_critical_lambda(const char* model, int method, double* out);
double qwell_saddle_node_a1(double a0, double lambda);
/* Fixed-point count of the tilted quartic a0 x^4 - a1 x^2 + lambda x
 * (bifurcation-region grids). */
int qwell_quartic_fixed_point_count(double a0, double a1, double lambda,
                                    int* out_count);
int qwell_slope_minima(const char* model, double sigma, int capacity,
                       double* out_x, double* out_slope, double* out_energy,
                       int* out_count);
int qwell_trajectory(const char* model, double sigma, double x0, double p0,
                     double t_max, double dt, int capacity,
                     double* out_t, double* out_x, double* out_p,
                     int* out_count, double* out_energy_drift);

/* ---- spectral statistics ---- */

int qwell_level_differences(const qwell_solver* s, double* out /* k_states-1 */);
int qwell_dips(const qwell_solver* s, int capacity, int* out_index,
               double* out_energy, int* out_count);
int qwell_clusters(const qwell_solver* s, int capacity, int* out_lo,
                   int* out_hi, int* out_count);
/* smoothing_width <= 0 selects the default (2x median spacing). n_samples
 * must be 400. */
int qwell_density_of_states(const qwell_solver* s, double smoothing_width,
                            int n_samples, double* out_energy, double* out_rho);
int qwell_doublet_splittings(const qwell_solver* s, double barrier_energy,
                             int capacity, int* out_pair, double* out_splitting,
                             int* out_count);
int qwell_state_moments(const qwell_solver* s, double* out_mean_x,
                        double* out_spread_x, double* out_support_width);

#ifdef __cplusplus
}
#endif

#endif /* QWELL_H */
