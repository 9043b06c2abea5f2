#pragma once

#include "sarwake/image.hpp"
#include "sarwake/solver.hpp"
#include "sarwake/types.hpp"

namespace sarwake {

struct DetectConfig {
    double mask_radius_frac = 0.05;  // ship mask disc radius, fraction of min dim
    double narrow_min_deg = 1.0;     // |dtheta| window for narrow-V arms
    double narrow_max_deg = 10.0;
    double kelvin_min_deg = 14.0;  // brackets the Kelvin half-angle asin(1/3) ~ 19.47 deg
    double kelvin_max_deg = 22.0;
    double merit_margin = 0.1;          // bright arms must beat this
    double turbulent_threshold = 0.0;   // turbulent merit must be below this...
    bool turbulent_accept_any = false;  // ...unless any merit is accepted
    double peak_prominence_sigma = 2.0;

    void validate() const;
};

/// Fills the central ship disc with the unmasked mean, then subtracts the
/// mean so dark wakes become negative.
SarImage preprocess(const SarImage& img, const DetectConfig& cfg);

/// Locates the five wake hypotheses in a solved sinogram: turbulent at the
/// global trough, arms at the strongest prominent local maxima inside the
/// narrow-V / Kelvin angular windows (one per angular side of the trough,
/// falling back to the window's largest bin when no prominent peak exists).
/// Only (kind, r, theta) are filled; side and merit need the image.
std::array<WakeHypothesis, kWakeSlots> find_hypotheses(const Sinogram& x, const DetectConfig& cfg);

/// Bilinear samples at unit spacing along one half of the line (r, theta),
/// starting at the perpendicular foot from the image centre, clipped to the
/// image bounds.
std::vector<double> sample_halfline(const SarImage& img, double r, double theta_deg, HalfLineSide side);

/// mean(samples) / image_mean - 1
double merit_index(const std::vector<double>& samples, double image_mean);

/// Turbulent: merit below the (default 0) threshold. Bright arms: merit
/// above the margin.
bool validate(WakeType kind, double merit, const DetectConfig& cfg);

/// preprocess -> solve -> find_hypotheses -> merit on the original image.
/// If solution_out is non-null it receives the solved sinogram.
DetectionReport detect_pipeline(const SarImage& img, const SolverConfig& scfg, const DetectConfig& dcfg,
                                const std::string& id = "", Sinogram* solution_out = nullptr);

/// Input raster with validated wake lines burned in at distinct gray levels.
SarImage render_overlay(const SarImage& img, const DetectionReport& report);

}  // namespace sarwake
