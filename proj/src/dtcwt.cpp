#include "sarwake/dtcwt.hpp"

#include <cmath>

#include "sarwake/image.hpp"

namespace sarwake {

namespace {

// Symmetric 13-tap analysis / 19-tap synthesis lowpass pair, sqrt(2) DC gain.
const std::vector<double> kH0o = {
    -2.48590311832822680e-03, 2.02474395516014014e-08,  3.14883119458273797e-02,
    -6.62912235986065079e-02, -6.82247383593763690e-02, 4.19844593944440791e-01,
    7.85551440250302102e-01,  4.19844593944440791e-01,  -6.82247383593763690e-02,
    -6.62912235986065079e-02, 3.14883119458273797e-02,  2.02474395516014014e-08,
    -2.48590311832822680e-03};

const std::vector<double> kG0o = {
    9.98806091822586188e-05,  8.13514076928291672e-10,  -1.89773282141160785e-03,
    -2.66350709957428704e-03, 1.01212369130333091e-02,  3.37375060947984889e-02,
    -7.86912465583115561e-02, -7.30979711305716762e-02, 4.23921252450781327e-01,
    7.91154723830214235e-01,  4.23921252450781327e-01,  -7.30979711305716762e-02,
    -7.86912465583115561e-02, 3.37375060947984889e-02,  1.01212369130333091e-02,
    -2.66350709957428704e-03, -1.89773282141160785e-03, 8.13514076928291672e-10,
    9.98806091822586188e-05};

// 14-tap orthonormal quarter-delay lowpass (tree a; tree b is its reverse).
const std::vector<double> kH0a = {
    3.25313114252360949e-03,  -3.88319939589726066e-03, 3.46602360623058658e-02,
    -3.88726864444402173e-02, -1.17204016038829656e-01, 2.75295479344540683e-01,
    7.56145535112776268e-01,  5.68810533285105779e-01,  1.18659733840287586e-02,
    -1.06711686784027829e-01, 2.38253764393148125e-02,  1.70252177101694324e-02,
    -5.43945491557204595e-03, -4.55687652890303992e-03};

std::vector<double> alternate_signs(const std::vector<double>& f, double sign0 = 1.0) {
    std::vector<double> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = ((i % 2) ? -sign0 : sign0) * f[i];
    return out;
}

std::vector<double> reversed(const std::vector<double>& f) {
    return std::vector<double>(f.rbegin(), f.rend());
}

inline int wrap(int v, int n) {
    while (v < 0) v += n;
    while (v >= n) v -= n;
    return v;
}

// Analysis along y: out(x, k) = sum_i f[i] * in(x, (2k + n0 + i) mod H)
Grid analyze_y(const Grid& in, const std::vector<double>& f, int n0) {
    Grid out(in.width, in.height / 2);
    for (int k = 0; k < out.height; ++k) {
        double* orow = &out.at(0, k);
        for (size_t i = 0; i < f.size(); ++i) {
            const double* irow = &in.at(0, wrap(2 * k + n0 + static_cast<int>(i), in.height));
            const double fi = f[i];
            for (int x = 0; x < in.width; ++x) orow[x] += fi * irow[x];
        }
    }
    return out;
}

Grid analyze_x(const Grid& in, const std::vector<double>& f, int n0) {
    Grid out(in.width / 2, in.height);
    const int nf = static_cast<int>(f.size());
    // k-range whose whole filter support stays in bounds
    const int klo = std::max(0, (-n0 + 1) / 2);
    const int khi = std::min(out.width - 1, (in.width - nf - n0) / 2);
    for (int y = 0; y < in.height; ++y) {
        const double* irow = &in.at(0, y);
        double* orow = &out.at(0, y);
        auto edge = [&](int k) {
            double s = 0.0;
            for (int i = 0; i < nf; ++i) s += f[i] * irow[wrap(2 * k + n0 + i, in.width)];
            orow[k] = s;
        };
        for (int k = 0; k < std::min(klo, out.width); ++k) edge(k);
        for (int k = klo; k <= khi; ++k) {
            const double* p = irow + 2 * k + n0;
            double s = 0.0;
            for (int i = 0; i < nf; ++i) s += f[i] * p[i];
            orow[k] = s;
        }
        for (int k = std::max(khi + 1, klo); k < out.width; ++k) edge(k);
    }
    return out;
}

// Synthesis scatter along y into a grid of height H (adjoint index pattern).
void scatter_y(Grid& acc, const Grid& c, const std::vector<double>& f, int n0) {
    for (int k = 0; k < c.height; ++k) {
        const double* crow = &c.at(0, k);
        for (size_t i = 0; i < f.size(); ++i) {
            double* orow = &acc.at(0, wrap(2 * k + n0 + static_cast<int>(i), acc.height));
            const double fi = f[i];
            for (int x = 0; x < c.width; ++x) orow[x] += fi * crow[x];
        }
    }
}

void scatter_x(Grid& acc, const Grid& c, const std::vector<double>& f, int n0) {
    const int nf = static_cast<int>(f.size());
    const int klo = std::max(0, (-n0 + 1) / 2);
    const int khi = std::min(c.width - 1, (acc.width - nf - n0) / 2);
    for (int y = 0; y < c.height; ++y) {
        const double* crow = &c.at(0, y);
        double* orow = &acc.at(0, y);
        auto edge = [&](int k) {
            for (int i = 0; i < nf; ++i) orow[wrap(2 * k + n0 + i, acc.width)] += f[i] * crow[k];
        };
        for (int k = 0; k < std::min(klo, c.width); ++k) edge(k);
        for (int k = klo; k <= khi; ++k) {
            double* p = orow + 2 * k + n0;
            const double v = crow[k];
            for (int i = 0; i < nf; ++i) p[i] += f[i] * v;
        }
        for (int k = std::max(khi + 1, klo); k < c.width; ++k) edge(k);
    }
}

struct LevelFilters {
    const std::vector<double>*lo, *hi;
    int off_lo, off_hi;
};

LevelFilters analysis_filters(const FilterBank& fb, int tree, int level) {
    if (level == 1) {
        int d = tree;  // tree 1 = one-sample delay
        return {&fb.h0o, &fb.h1o, fb.off_h0o + d, fb.off_h1o + d};
    }
    if (tree == 0) return {&fb.h0a, &fb.h1a, fb.off_q, fb.off_q};
    return {&fb.h0b, &fb.h1b, fb.off_q, fb.off_q};
}

LevelFilters synthesis_filters(const FilterBank& fb, int tree, int level) {
    if (level == 1) {
        int d = tree;
        return {&fb.g0o, &fb.g1o, fb.off_g0o + d, fb.off_g1o + d};
    }
    return analysis_filters(fb, tree, level);  // orthonormal: adjoint
}

void check_dims(int w, int h, int levels) {
    if (levels < 1 || levels > 5) throw std::invalid_argument("dtcwt: levels must be in [1, 5]");
    int div = 1 << levels;
    if (w % div != 0 || h % div != 0)
        throw std::invalid_argument("dtcwt: dims must be divisible by 2^levels");
    if (w < 20 || h < 20) throw std::invalid_argument("dtcwt: dims too small for the filter support");
    for (int lev = 2; lev <= levels; ++lev)
        if ((w >> (lev - 1)) < 14 || (h >> (lev - 1)) < 14)
            throw std::invalid_argument("dtcwt: too many levels for these dims (filter would wrap twice)");
}

// Canonical orientation order {15,45,75,105,135,165} from the raw
// butterfly order {105,75,165,15,135,45}.
constexpr int kBandPerm[6] = {3, 5, 1, 0, 4, 2};
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

const FilterBank& FilterBank::standard() {
    static const FilterBank fb = [] {
        FilterBank f;
        f.h0o = kH0o;
        f.g0o = kG0o;
        f.h1o = alternate_signs(kG0o);
        f.g1o = alternate_signs(kH0o, -1.0);
        f.h0a = kH0a;
        f.h0b = reversed(kH0a);
        f.h1a = alternate_signs(reversed(kH0a));
        f.h1b = alternate_signs(reversed(f.h0b));
        return f;
    }();
    return fb;
}

size_t WaveletPyramid::coefficient_count() const {
    size_t n = 0;
    for (const auto& lev : bands)
        for (const auto& b : lev) n += 2 * b.size();
    for (const auto& lp : lowpass) n += lp.size();
    return n;
}

WaveletPyramid& WaveletPyramid::operator*=(double s) {
    for (auto& lev : bands)
        for (auto& b : lev)
            for (auto& v : b.data) v *= s;
    for (auto& lp : lowpass) lp *= s;
    return *this;
}

WaveletPyramid& WaveletPyramid::operator+=(const WaveletPyramid& o) {
    for (size_t l = 0; l < bands.size(); ++l)
        for (int b = 0; b < 6; ++b)
            for (size_t i = 0; i < bands[l][b].data.size(); ++i) bands[l][b].data[i] += o.bands[l][b].data[i];
    for (int t = 0; t < 4; ++t) lowpass[t] += o.lowpass[t];
    return *this;
}

WaveletPyramid dtcwt_forward(const Grid& x, int levels, const FilterBank& fb) {
    check_dims(x.width, x.height, levels);
    WaveletPyramid pyr;
    pyr.levels = levels;
    pyr.width0 = x.width;
    pyr.height0 = x.height;
    pyr.bands.resize(levels);

    // raw detail subbands per (row_tree, col_tree, level, d)
    std::vector<std::array<std::array<Grid, 3>, 4>> subs(levels);

    for (int rt = 0; rt < 2; ++rt) {
        for (int ct = 0; ct < 2; ++ct) {
            Grid cur = x;
            cur *= 0.5;
            for (int lev = 1; lev <= levels; ++lev) {
                LevelFilters fy = analysis_filters(fb, rt, lev);
                LevelFilters fx = analysis_filters(fb, ct, lev);
                Grid lo = analyze_y(cur, *fy.lo, fy.off_lo);
                Grid hi = analyze_y(cur, *fy.hi, fy.off_hi);
                Grid ll = analyze_x(lo, *fx.lo, fx.off_lo);
                subs[lev - 1][2 * rt + ct][0] = analyze_x(lo, *fx.hi, fx.off_hi);  // x-high, y-low
                subs[lev - 1][2 * rt + ct][1] = analyze_x(hi, *fx.lo, fx.off_lo);  // x-low, y-high
                subs[lev - 1][2 * rt + ct][2] = analyze_x(hi, *fx.hi, fx.off_hi);  // both high
                cur = std::move(ll);
            }
            pyr.lowpass[2 * rt + ct] = std::move(cur);
        }
    }

    for (int lev = 0; lev < levels; ++lev) {
        std::array<CGrid, 6> raw;
        for (int d = 0; d < 3; ++d) {
            const Grid& w11 = subs[lev][0][d];
            const Grid& w12 = subs[lev][1][d];
            const Grid& w21 = subs[lev][2][d];
            const Grid& w22 = subs[lev][3][d];
            CGrid plus(w11.width, w11.height), minus(w11.width, w11.height);
            for (size_t i = 0; i < w11.data.size(); ++i) {
                plus.data[i] = {kInvSqrt2 * (w11.data[i] - w22.data[i]),
                                kInvSqrt2 * (w12.data[i] + w21.data[i])};
                minus.data[i] = {kInvSqrt2 * (w11.data[i] + w22.data[i]),
                                 kInvSqrt2 * (w12.data[i] - w21.data[i])};
            }
            raw[2 * d] = std::move(plus);
            raw[2 * d + 1] = std::move(minus);
        }
        for (int b = 0; b < 6; ++b) pyr.bands[lev][b] = std::move(raw[kBandPerm[b]]);
    }
    return pyr;
}

Grid dtcwt_inverse(const WaveletPyramid& pyr, const FilterBank& fb) {
    if (pyr.levels < 1) throw std::invalid_argument("dtcwt_inverse: empty pyramid");
    for (int lev = 0; lev < pyr.levels; ++lev) {
        int bw = pyr.width0 >> (lev + 1), bh = pyr.height0 >> (lev + 1);
        for (int b = 0; b < 6; ++b)
            if (pyr.bands[lev][b].width != bw || pyr.bands[lev][b].height != bh)
                throw std::invalid_argument("dtcwt_inverse: inconsistent subband shapes");
    }

    Grid out(pyr.width0, pyr.height0);
    for (int rt = 0; rt < 2; ++rt) {
        for (int ct = 0; ct < 2; ++ct) {
            Grid cur = pyr.lowpass[2 * rt + ct];
            if (cur.width != pyr.width0 >> pyr.levels || cur.height != pyr.height0 >> pyr.levels)
                throw std::invalid_argument("dtcwt_inverse: inconsistent lowpass shape");
            for (int lev = pyr.levels; lev >= 1; --lev) {
                // un-butterfly this tree's three detail subbands
                std::array<Grid, 3> det;
                for (int d = 0; d < 3; ++d) {
                    int bplus = -1, bminus = -1;
                    for (int b = 0; b < 6; ++b) {
                        if (kBandPerm[b] == 2 * d) bplus = b;
                        if (kBandPerm[b] == 2 * d + 1) bminus = b;
                    }
                    const CGrid& p = pyr.bands[lev - 1][bplus];
                    const CGrid& m = pyr.bands[lev - 1][bminus];
                    Grid g(p.width, p.height);
                    for (size_t i = 0; i < g.data.size(); ++i) {
                        double pr = p.data[i].real(), mr = m.data[i].real();
                        double pi = p.data[i].imag(), mi = m.data[i].imag();
                        if (rt == 0 && ct == 0) g.data[i] = kInvSqrt2 * (pr + mr);
                        else if (rt == 0 && ct == 1) g.data[i] = kInvSqrt2 * (pi + mi);
                        else if (rt == 1 && ct == 0) g.data[i] = kInvSqrt2 * (pi - mi);
                        else g.data[i] = kInvSqrt2 * (mr - pr);
                    }
                    det[d] = std::move(g);
                }
                LevelFilters fy = synthesis_filters(fb, rt, lev);
                LevelFilters fx = synthesis_filters(fb, ct, lev);
                Grid lo(det[0].width * 2, det[0].height);
                scatter_x(lo, cur, *fx.lo, fx.off_lo);
                scatter_x(lo, det[0], *fx.hi, fx.off_hi);
                Grid hi(det[1].width * 2, det[1].height);
                scatter_x(hi, det[1], *fx.lo, fx.off_lo);
                scatter_x(hi, det[2], *fx.hi, fx.off_hi);
                Grid up(lo.width, lo.height * 2);
                scatter_y(up, lo, *fy.lo, fy.off_lo);
                scatter_y(up, hi, *fy.hi, fy.off_hi);
                cur = std::move(up);
            }
            out += cur;
        }
    }
    out *= 0.5;
    return out;
}

double pyramid_l1(const WaveletPyramid& pyr) {
    double s = 0.0;
    for (const auto& lev : pyr.bands)
        for (const auto& b : lev)
            for (const auto& v : b.data) s += std::abs(v);
    return s;
}

void dump_pyramid(const WaveletPyramid& pyr, const std::string& prefix) {
    for (int lev = 0; lev < pyr.levels; ++lev) {
        for (int b = 0; b < 6; ++b) {
            const CGrid& c = pyr.bands[lev][b];
            Grid mag(c.width, c.height);
            for (size_t i = 0; i < c.data.size(); ++i) mag.data[i] = std::abs(c.data[i]);
            save_grid_raw(mag, prefix + "_L" + std::to_string(lev + 1) + "_b" + std::to_string(b) + ".raw");
        }
    }
    for (int t = 0; t < 4; ++t)
        save_grid_raw(pyr.lowpass[t], prefix + "_lowpass" + std::to_string(t) + ".raw");
}

}  // namespace sarwake
