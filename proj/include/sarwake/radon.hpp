#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "sarwake/grid.hpp"

namespace sarwake {

enum class Interp { Nearest, Linear };

/// Discretisation of the line-integral geometry shared by all Radon-domain
/// operators. Angles are uniform over [0, 180) degrees; offsets are signed
/// perpendicular distances from the image centre in pixels, spacing 1,
/// always an odd count so r = 0 exists.
///
/// Convention: theta = 0 is a vertical line; theta grows counter-clockwise
/// (towards +y); r is measured along the line normal (cos t, sin t).
struct RadonGeometry {
    int image_width = 0;
    int image_height = 0;
    int num_angles = 180;
    int num_offsets = 0;
    Interp interp = Interp::Linear;
    bool ramp = true;  // inverse_radon = filtered backprojection when true

    static RadonGeometry for_image(int w, int h, int num_angles = 180);

    int offset_center() const { return (num_offsets - 1) / 2; }
    double offset(int i) const { return double(i - offset_center()); }
    double angle_deg(int j) const { return 180.0 * j / num_angles; }
    double angle_step() const { return 180.0 / num_angles; }
    void validate() const;
};

/// Radon-domain grid: data.at(i, j) is offset index i, angle index j.
struct Sinogram {
    RadonGeometry geo;
    Grid data;  // width = num_offsets, height = num_angles

    Sinogram() = default;
    explicit Sinogram(const RadonGeometry& g) : geo(g), data(g.num_offsets, g.num_angles) {}
};

/// Line-integral (forward) Radon transform; unit-spaced samples along each
/// line, bilinear by default. The oracle companion of inverse_radon.
Sinogram forward_radon(const Grid& img, const RadonGeometry& geo);

/// Filtered backprojection: ramp-filter each angle profile, backproject,
/// scale by pi / (2 * num_angles). This is the operator C.
Grid inverse_radon(const Sinogram& sino);

/// Exact discrete adjoint of inverse_radon under the standard inner
/// products: transpose of the backprojection, then the (self-adjoint)
/// ramp filter, same scale.
Sinogram adjoint_inverse_radon(const Grid& img, const RadonGeometry& geo);

/// Power iteration for the dominant eigenvalue of a symmetric PSD operator.
double power_iteration(const std::function<std::vector<double>(const std::vector<double>&)>& op,
                       size_t dim, int iterations, uint64_t seed);

/// Estimates ||C||^2 via power iteration on C^T C. Deterministic per seed.
double estimate_operator_norm(const RadonGeometry& geo, int iterations, uint64_t seed);

void save_sinogram(const Sinogram& s, const std::string& path);
Sinogram load_sinogram(const std::string& path);

}  // namespace sarwake
