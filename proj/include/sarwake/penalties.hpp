#pragma once

#include "sarwake/dtcwt.hpp"
#include "sarwake/grid.hpp"

namespace sarwake {

/// Scale parameter of the heavy-tailed Cauchy prior.
struct CauchyParams {
    double gamma = 1.0;
    explicit CauchyParams(double g) : gamma(g) {
        if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("gamma must be finite and positive");
    }
};

/// sum over elements of -log(gamma / (x^2 + gamma^2))
double cauchy_penalty(const Grid& x, const CauchyParams& p);

/// elementwise 2x / (gamma^2 + x^2); odd, bounded by 1/gamma
Grid cauchy_gradient(const Grid& x, const CauchyParams& p);

/// Complex-magnitude soft threshold of every directional coefficient:
/// w -> w * max(0, 1 - T/|w|). Lowpass grids pass through unchanged.
WaveletPyramid soft_threshold(WaveletPyramid w, double threshold);

/// Value of the smoothed isotropic TV penalty weight * sum sqrt(|grad X|^2 + eps^2)
/// (forward differences, eps = 1e-8).
double tv_value(const Grid& x, double weight);

/// Gradient of tv_value: forward differences followed by their adjoint
/// (negative divergence).
Grid tv_gradient_step(const Grid& x, double weight);

}  // namespace sarwake
