#include "qwell/model_potentials.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwell::model_potentials {

namespace {

// Scan range used for the zero-min shift and global minimizer. Wide enough
// for every preset at any sigma used in practice (wells sit within |x| < 8).
double scan_half_width(const PotentialSpec& spec) {
    return spec.model == Model::ModelII ? 8.0 : 12.0;
}

double raw_value(const PotentialSpec& spec, double x) {
    double v = 0.0;
    for (int k = 6; k >= 0; --k) v = v * x + spec.coeff[static_cast<size_t>(k)];
    return v + spec.lambda * x;
}

// Golden-section refinement of a bracketed minimum.
double golden_min(const PotentialSpec& spec, double a, double b) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = raw_value(spec, c), fd = raw_value(spec, d);
    while (b - a > 1e-13) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - gr * (b - a);
            fc = raw_value(spec, c);
        } else {
            a = c; c = d; fc = fd;
            d = a + gr * (b - a);
            fd = raw_value(spec, d);
        }
    }
    return 0.5 * (a + b);
}

double raw_deriv(const PotentialSpec& spec, double x, int order) {
    double v = 0.0;
    for (int k = 6; k >= order; --k) {
        double c = spec.coeff[static_cast<size_t>(k)];
        for (int j = 0; j < order; ++j) c *= static_cast<double>(k - j);
        v = v * x + c;
    }
    if (order == 1) v += spec.lambda;
    return v;
}

double argmin_raw(const PotentialSpec& spec) {
    const double L = scan_half_width(spec);
    const int n = 4001;
    double best_x = -L, best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double x = -L + 2.0 * L * i / (n - 1);
        double v = raw_value(spec, x);
        if (v < best_v) { best_v = v; best_x = x; }
    }
    double step = 2.0 * L / (n - 1);
    double x = golden_min(spec, best_x - step, best_x + step);
    // Newton polish on V' = 0: the value comparison goes flat near the
    // minimum, the derivative does not.
    for (int it = 0; it < 40; ++it) {
        double d1 = raw_deriv(spec, x, 1), d2 = raw_deriv(spec, x, 2);
        if (d2 <= 0.0) break;
        double dx = d1 / d2;
        x -= dx;
        if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

}  // namespace

double PotentialSpec::evaluate(double x, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
    // Horner on the differentiated coefficient table.
    double v = 0.0;
    for (int k = 6; k >= order; --k) {
        double c = coeff[static_cast<size_t>(k)];
        for (int j = 0; j < order; ++j) c *= static_cast<double>(k - j);
        v = v * x + c;
    }
    if (order == 0) v += lambda * x + shift;
    if (order == 1) v += lambda;
    return v;
}

std::pair<double, double> preset_pair(Model m) {
    switch (m) {
        case Model::ModelI:  return {0.02, 0.64};
        case Model::ModelIa: return {1.0 / 142.0, 0.15};
        case Model::ModelII: return {10.95445, 30.0};
        default: throw std::invalid_argument("no (a0, a1) pair for this model");
    }
}

double lambda_for_sigma(Model m, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (m == Model::Harmonic) return sigma;
    auto [a0, a1] = preset_pair(m);
    return sigma * std::sqrt(std::abs(a0 / (2.0 * a1)));
}

PotentialSpec build_preset(Model m, double sigma) {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (m == Model::Custom) throw std::invalid_argument("Custom requires explicit coefficients");
    PotentialSpec spec;
    spec.model = m;
    spec.sigma = sigma;
    switch (m) {
        case Model::Harmonic:
            spec.coeff[2] = 0.5;
            break;
        case Model::ModelI: {
            auto [a0, a1] = preset_pair(m);
            spec.coeff[4] = a0;
            spec.coeff[2] = -a1;
            break;
        }
        case Model::ModelIa: {
            auto [a0, a1] = preset_pair(m);
            spec.coeff[6] = a0;
            spec.coeff[4] = -a1;
            break;
        }
        case Model::ModelII: {
            auto [a0, a1] = preset_pair(m);
            spec.coeff[2] = a1;
            spec.coeff[4] = -a0;
            spec.coeff[6] = 1.0;
            break;
        }
        default:
            break;
    }
    spec.lambda = lambda_for_sigma(m, sigma);
    spec.shift = -raw_value(spec, argmin_raw(spec));
    return spec;
}

PotentialSpec build_custom(const std::array<double, 7>& coeff, double lambda) {
    PotentialSpec spec;
    spec.model = Model::Custom;
    spec.coeff = coeff;
    spec.lambda = lambda;
    spec.shift = -raw_value(spec, argmin_raw(spec));
    return spec;
}

double global_minimizer(const PotentialSpec& spec) { return argmin_raw(spec); }

Model parse_model(const std::string& name) {
    if (name == "harmonic" || name == "ho") return Model::Harmonic;
    if (name == "I" || name == "modelI" || name == "model1") return Model::ModelI;
    if (name == "Ia" || name == "modelIa" || name == "model1a") return Model::ModelIa;
    if (name == "II" || name == "modelII" || name == "model2") return Model::ModelII;
    throw std::invalid_argument("unknown model: " + name);
}

std::string model_name(Model m) {
    switch (m) {
        case Model::Harmonic: return "harmonic";
        case Model::ModelI:   return "I";
        case Model::ModelIa:  return "Ia";
        case Model::ModelII:  return "II";
        case Model::Custom:   return "custom";
    }
    return "?";
}

}  // namespace qwell::model_potentials
