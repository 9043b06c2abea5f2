#pragma once

#include <array>
#include <string>

#include "sarwake/grid.hpp"

namespace sarwake {

/// Filter set for the dual-tree transform.
///
/// Level 1 uses an odd-length symmetric biorthogonal (13,19)-tap pair;
/// the second tree applies the same filters delayed by one sample.
/// Levels >= 2 use a 14-tap orthonormal quarter-delay (q-shift) filter;
/// the second tree uses its time reverse, and synthesis is the adjoint.
///
/// Coefficients: the 13/19 pair and the 14-tap filter follow the standard
/// published near-symmetric / q-shift designs, numerically refined so that
/// perfect reconstruction, the DC and Nyquist zeros, and (for the q-shift
/// filter) orthonormality hold to machine precision.
struct FilterBank {
    std::vector<double> h0o, h1o;  // level-1 analysis, placement offsets below
    std::vector<double> g0o, g1o;  // level-1 synthesis
    int off_h0o = -6, off_h1o = -10, off_g0o = -9, off_g1o = -7;
    std::vector<double> h0a, h1a, h0b, h1b;  // q-shift trees a/b
    int off_q = -7;

    static const FilterBank& standard();
};

/// W = B X. Six oriented complex subbands per level (orientation order
/// ~{15, 45, 75, 105, 135, 165} degrees) plus four real lowpass grids,
/// one per tree combination. Total coefficient count is exactly 4x the
/// input pixel count.
struct WaveletPyramid {
    int levels = 0;
    int width0 = 0, height0 = 0;
    std::vector<std::array<CGrid, 6>> bands;  // bands[level][orientation]
    std::array<Grid, 4> lowpass;              // index = 2*row_tree + col_tree

    size_t coefficient_count() const;
    WaveletPyramid& operator*=(double s);
    WaveletPyramid& operator+=(const WaveletPyramid& o);
};

/// Forward 2-D dual-tree transform. Dims must be divisible by 2^levels and
/// large enough that no filter wraps more than once at any level.
WaveletPyramid dtcwt_forward(const Grid& x, int levels, const FilterBank& fb = FilterBank::standard());

/// Left inverse of dtcwt_forward (exact up to rounding).
Grid dtcwt_inverse(const WaveletPyramid& pyr, const FilterBank& fb = FilterBank::standard());

/// Sum of complex magnitudes over the directional subbands (lowpass excluded).
double pyramid_l1(const WaveletPyramid& pyr);

/// Writes each subband magnitude (and the lowpass grids) as raw rasters
/// with the given path prefix, for inspection.
void dump_pyramid(const WaveletPyramid& pyr, const std::string& prefix);

}  // namespace sarwake
