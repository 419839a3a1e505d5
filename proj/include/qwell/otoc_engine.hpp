#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qwell/operators.hpp"

namespace qwell::otoc_engine {

using operators::MatrixElementSet;

struct OtocSeries {
    std::vector<double> times;
    std::vector<double> values;
    bool truncation_warning = false;  // last 10 basis states carry > 1% of c_m(0)
};

std::vector<double> time_grid(double t_max, int samples);

// Microcanonical c_m(t), factorized form: c_m = sum_k |b_mk|^2 with
// b_mk = kappa sum_l x_ml x_lk (E_lk e^{i E_ml t} - E_ml e^{i E_lk t}).
OtocSeries microcanonical_otoc(const MatrixElementSet& set, int m,
                               const std::vector<double>& times);

// Independent operator-product path: X(t) = diag(e^{iEt}) X diag(e^{-iEt}),
// P = i kappa dE o X, returns -([X(t),P]^2)_mm.
double matrix_oracle(const MatrixElementSet& set, int m, double t);

// Boltzmann-weighted sum over m while e^{-beta(E_m-E_0)} >= 1e-10.
OtocSeries thermal_otoc(const MatrixElementSet& set, double beta,
                        const std::vector<double>& times);

struct GrowthWindow {
    double lambda_hat = 0.0;  // slope/2 per the e^{2 lambda t} convention
    double r_squared = 0.0;
    double t_lo = 0.0;
    double t_hi = 0.0;
};

// Least-squares fit of ln(values); with no explicit window, auto-detects an
// early monotone log-linear interval (see README for the qualification rules).
// Returns nullopt when no growth window qualifies.
std::optional<GrowthWindow> fit_growth_rate(
    const OtocSeries& series,
    std::optional<std::pair<double, double>> window = std::nullopt);

}  // namespace qwell::otoc_engine
