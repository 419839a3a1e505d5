#pragma once

#include <utility>
#include <vector>

#include "qwell/schrodinger.hpp"

namespace qwell::spectral_stats {

using schrodinger::EigenSystem;

struct Dip {
    int n;                 // index into diffs
    double energy;         // E_n
    double smoothed_value;
};

struct Cluster {
    int lo, hi;  // inclusive index range into diffs
};

struct SpectrumStats {
    std::vector<double> diffs;     // E_{n+1} - E_n
    std::vector<double> smoothed;  // 3-point smoothed diffs
    std::vector<Dip> dips;
    std::vector<Cluster> clusters;
};

SpectrumStats level_differences(const EigenSystem& eig);

double default_smoothing_width(const EigenSystem& eig);  // 2x median diff

// Gaussian-kernel density of states on 400 samples spanning [E_0, E_K].
std::vector<std::pair<double, double>> density_of_states(const EigenSystem& eig,
                                                         double smoothing_width);

// Doublet splittings below barrier_energy. For the symmetric (lambda = 0)
// case these are consecutive pairs (E1-E0, E3-E2, ...); with a tilt the
// partner states are matched across wells by the sign of <x>.
std::vector<std::pair<int, double>> doublet_splittings(const EigenSystem& eig,
                                                       double barrier_energy);

struct StateMoments {
    double mean_x = 0.0;
    double spread_x = 0.0;
    double support_width = 0.0;  // smallest interval holding 99% probability
};

std::vector<StateMoments> state_moments(const EigenSystem& eig);

}  // namespace qwell::spectral_stats
