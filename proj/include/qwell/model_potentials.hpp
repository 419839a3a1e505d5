#pragma once

#include <array>
#include <string>
#include <utility>

namespace qwell::model_potentials {

enum class Model { Harmonic, ModelI, ModelIa, ModelII, Custom };

// Polynomial well V(x) = sum_k c_k x^k plus linear perturbation lambda*x and
// a constant shift chosen so the perturbed potential's global minimum is 0.
struct PotentialSpec {
    std::array<double, 7> coeff{};  // base polynomial, powers 0..6
    double lambda = 0.0;
    double sigma = 0.0;
    double shift = 0.0;
    Model model = Model::Custom;

    // V(x) + lambda*x + shift and its derivatives (order 0..3).
    double evaluate(double x, int order = 0) const;
};

// (a0, a1): per-model (stabilisation, destabilisation) coefficient pair.
std::pair<double, double> preset_pair(Model m);

// lambda = sigma * sqrt(|a0 / (2 a1)|); for the harmonic spec lambda = sigma.
double lambda_for_sigma(Model m, double sigma);

PotentialSpec build_preset(Model m, double sigma);

// Custom spec from explicit coefficients and lambda (zero-min shift applied).
PotentialSpec build_custom(const std::array<double, 7>& coeff, double lambda);

// Global minimizer of the perturbed potential over the scan interval.
double global_minimizer(const PotentialSpec& spec);

Model parse_model(const std::string& name);
std::string model_name(Model m);

}  // namespace qwell::model_potentials
