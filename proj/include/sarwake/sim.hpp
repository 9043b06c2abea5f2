#pragma once

#include <cstdint>

#include "sarwake/image.hpp"
#include "sarwake/types.hpp"

namespace sarwake {

enum class NoiseModel { Speckle, AdditiveGaussian };

struct SceneParams {
    int width = 128, height = 128;
    double background_mean = 1.0;
    int looks = 4;                     // speckle averaging factor
    double turbulent_contrast = 0.5;   // in (0, 1]: darkens
    double narrow_contrast = 1.8;      // >= 1: brightens
    double kelvin_contrast = 1.5;      // >= 1: brightens
    double turbulent_theta = 30.0;     // degrees in [0, 180)
    double narrow_half_angle = 3.0;    // arm offset from the turbulent axis
    double kelvin_half_angle = 19.47;  // ~ asin(1/3) in degrees
    double wake_width = 2.0;           // band width, pixels
    std::array<int, kWakeSlots> visibility{1, 1, 0, 0, 0};
    HalfLineSide side = HalfLineSide::Positive;
    NoiseModel noise = NoiseModel::Speckle;
    double gaussian_sigma = 0.1;
    uint64_t seed = 0;

    void validate() const;
};

/// i.i.d. gamma(L, 1/L) multipliers: mean 1, variance 1/L.
Grid speckle_field(int width, int height, int looks, uint64_t seed);

/// Reflectivity bands through the image centre (turbulent axis plus the
/// requested arms), degraded by the configured noise model.
std::pair<SarImage, GroundTruthAnnotation> simulate_scene(const SceneParams& p);

struct CorpusParams {
    int count = 22;
    SceneParams base;
    double theta_min = 20.0, theta_max = 160.0;
    double turbulent_contrast_min = 0.3, turbulent_contrast_max = 0.6;
    double narrow_contrast_min = 1.5, narrow_contrast_max = 2.0;
    double kelvin_contrast_min = 1.3, kelvin_contrast_max = 1.8;
    double narrow2_prob = 0.0;  // visibility marginals following the corpus schema
    double kelvin1_prob = 0.4;
    double kelvin2_prob = 0.05;
    uint64_t master_seed = 1;
};

/// Writes scene_%03d.raw / scene_%03d.ann plus summary.txt into dir.
/// Byte-identical for identical parameters.
void make_corpus(const CorpusParams& cp, const std::string& dir);

}  // namespace sarwake
