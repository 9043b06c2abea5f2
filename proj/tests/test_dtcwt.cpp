#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "sarwake/dtcwt.hpp"

using namespace sarwake;

namespace {
Grid random_grid(int w, int h, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Grid g(w, h);
    for (double& v : g.data) v = double(rng() >> 11) * 0x1.0p-52 - 1.0;
    return g;
}

double max_roundtrip_error(const Grid& x, int levels) {
    Grid back = dtcwt_inverse(dtcwt_forward(x, levels));
    double m = 0.0;
    for (size_t i = 0; i < x.data.size(); ++i) m = std::max(m, std::abs(back.data[i] - x.data[i]));
    return m;
}

// per-level energies of the six oriented bands
std::vector<std::array<double, 6>> band_energies(const WaveletPyramid& p) {
    std::vector<std::array<double, 6>> e(p.levels);
    for (int l = 0; l < p.levels; ++l)
        for (int b = 0; b < 6; ++b) {
            double s = 0.0;
            for (const auto& c : p.bands[l][b].data) s += std::norm(c);
            e[l][b] = s;
        }
    return e;
}

// Critically-sampled single-tree DWT energies recovered from the dual tree:
// the band order pairs orientations (105,75), (165,15), (135,45) per raw
// direction, and the real-real tree coefficient is (Re plus + Re minus)/sqrt2.
std::vector<std::array<double, 3>> dwt_energies(const WaveletPyramid& p) {
    const int pairs[3][2] = {{3, 2}, {5, 0}, {4, 1}};
    std::vector<std::array<double, 3>> e(p.levels);
    for (int l = 0; l < p.levels; ++l)
        for (int d = 0; d < 3; ++d) {
            const CGrid& a = p.bands[l][pairs[d][0]];
            const CGrid& b = p.bands[l][pairs[d][1]];
            double s = 0.0;
            for (size_t i = 0; i < a.data.size(); ++i) {
                double w11 = (a.data[i].real() + b.data[i].real()) / std::numbers::sqrt2;
                s += w11 * w11;
            }
            e[l][d] = s;
        }
    return e;
}

template <size_t N>
double rel_l2(const std::array<double, N>& a, const std::array<double, N>& b) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < N; ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += a[i] * a[i];
    }
    return std::sqrt(num / den);
}

Grid grating(int n, double theta_deg, double freq = 0.25) {
    Grid g(n, n);
    double th = theta_deg * std::numbers::pi / 180.0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
            g.at(x, y) = std::cos(2.0 * std::numbers::pi * freq * (-std::sin(th) * x + std::cos(th) * y));
    return g;
}
}  // namespace

TEST_CASE("filter bank pairs reconstruct an impulse") {
    Grid delta(32, 32);
    delta.at(13, 17) = 1.0;
    CHECK(max_roundtrip_error(delta, 1) <= 1e-10);
    CHECK(max_roundtrip_error(delta, 2) <= 1e-10);
}

TEST_CASE("perfect reconstruction across sizes and depths") {
    for (int n : {64, 128, 256})
        for (int levels : {1, 2, 3}) {
            Grid x = random_grid(n, n, 1000 + n + levels);
            CHECK(max_roundtrip_error(x, levels) <= 1e-8);
        }
}

TEST_CASE("constant input lives entirely in the lowpass bands") {
    WaveletPyramid p = dtcwt_forward(Grid(64, 64, 1.0), 3);
    double lp_energy = 0.0;
    for (const auto& lp : p.lowpass)
        for (double v : lp.data) lp_energy += v * v;
    double max_dir = 0.0;
    for (const auto& lev : p.bands)
        for (const auto& band : lev)
            for (const auto& c : band.data) max_dir = std::max(max_dir, std::abs(c));
    CHECK(lp_energy > 0.0);
    CHECK(max_dir <= 1e-10 * lp_energy);
}

TEST_CASE("oriented sinusoid concentrates in the matching subband") {
    // orientation order of the six bands: 15, 45, 75, 105, 135, 165 degrees
    const double orientations[6] = {15, 45, 75, 105, 135, 165};
    for (int b = 0; b < 6; ++b) {
        WaveletPyramid p = dtcwt_forward(grating(64, orientations[b]), 2);
        auto e = band_energies(p);
        // pick the level holding the most directional energy
        int best_level = 0;
        double best_total = 0.0;
        for (int l = 0; l < p.levels; ++l) {
            double t = 0.0;
            for (double v : e[l]) t += v;
            if (t > best_total) {
                best_total = t;
                best_level = l;
            }
        }
        double total = 0.0;
        for (double v : e[best_level]) total += v;
        int argmax = 0;
        for (int k = 1; k < 6; ++k)
            if (e[best_level][k] > e[best_level][argmax]) argmax = k;
        CHECK(argmax == b);
        if (b == 1)  // the +45-degree case of the energy-share claim
            CHECK(e[best_level][b] / total >= 0.6);
    }
}

TEST_CASE("near tight frame: energy ratio stable across random inputs") {
    double lo = 1e300, hi = 0.0;
    for (int t = 0; t < 10; ++t) {
        Grid x = random_grid(64, 64, 500 + t);
        WaveletPyramid p = dtcwt_forward(x, 3);
        double ex = 0.0, ew = 0.0;
        for (double v : x.data) ex += v * v;
        for (const auto& lev : p.bands)
            for (const auto& band : lev)
                for (const auto& c : band.data) ew += std::norm(c);
        for (const auto& lp : p.lowpass)
            for (double v : lp.data) ew += v * v;
        double ratio = ew / ex;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo - 1.0 <= 0.01);
}

TEST_CASE("inverse is linear and maps the zero pyramid to zero") {
    WaveletPyramid z = dtcwt_forward(Grid(64, 64), 2);
    Grid back = dtcwt_inverse(z);
    for (double v : back.data) CHECK(v == 0.0);

    Grid x1 = random_grid(64, 64, 600), x2 = random_grid(64, 64, 601);
    WaveletPyramid p1 = dtcwt_forward(x1, 2), p2 = dtcwt_forward(x2, 2);
    const double a = 2.3, b = -0.8;
    WaveletPyramid pc = p1;
    pc *= a;
    WaveletPyramid p2b = p2;
    p2b *= b;
    pc += p2b;
    Grid lhs = dtcwt_inverse(pc);
    Grid r1 = dtcwt_inverse(p1), r2 = dtcwt_inverse(p2);
    double err = 0.0, ref = 0.0;
    for (size_t i = 0; i < lhs.data.size(); ++i) {
        double want = a * r1.data[i] + b * r2.data[i];
        err += (lhs.data[i] - want) * (lhs.data[i] - want);
        ref += want * want;
    }
    CHECK(std::sqrt(err / ref) <= 1e-10);
}

TEST_CASE("pyramid l1 and coefficient count") {
    WaveletPyramid p = dtcwt_forward(Grid(64, 64), 2);
    CHECK(pyramid_l1(p) == 0.0);
    CHECK(p.coefficient_count() == 4u * 64u * 64u);

    p.bands[1][3].at(2, 2) = {3.0, 4.0};
    CHECK(pyramid_l1(p) == doctest::Approx(5.0).epsilon(1e-14));

    Grid x = random_grid(64, 64, 700);
    WaveletPyramid q = dtcwt_forward(x, 2);
    double expect = 0.0;
    for (const auto& lev : q.bands)
        for (const auto& band : lev)
            for (const auto& c : band.data) expect += std::abs(c);
    CHECK(pyramid_l1(q) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("shift sensitivity is below the critically-sampled DWT baseline") {
    // band-limited random texture versus its one-pixel circular shift
    const int n = 128, levels = 3;
    Grid g0 = random_grid(n, n, 17);
    for (int pass = 0; pass < 3; ++pass) {
        Grid b(n, n);
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                double s = 0.0;
                for (int dy = -2; dy <= 2; ++dy)
                    for (int dx = -2; dx <= 2; ++dx) s += g0.at((x + dx + n) % n, (y + dy + n) % n);
                b.at(x, y) = s / 25.0;
            }
        g0 = b;
    }
    Grid g1(n, n);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) g1.at(x, y) = g0.at((x - 1 + n) % n, y);
    WaveletPyramid p0 = dtcwt_forward(g0, levels);
    WaveletPyramid p1 = dtcwt_forward(g1, levels);
    auto e0 = band_energies(p0), e1 = band_energies(p1);
    auto d0 = dwt_energies(p0), d1 = dwt_energies(p1);
    for (int l = 0; l < levels; ++l) {
        double dt = rel_l2(e0[l], e1[l]);
        double dwt = rel_l2(d0[l], d1[l]);
        CHECK(dt <= 0.05);
        CHECK(dt < dwt);
    }
}

TEST_CASE("invalid shapes and depths rejected") {
    CHECK_THROWS(dtcwt_forward(Grid(60, 64), 3));  // 60 not divisible by 8
    CHECK_THROWS(dtcwt_forward(Grid(16, 16), 1));  // too small
    CHECK_THROWS(dtcwt_forward(Grid(64, 64), 0));
    CHECK_THROWS(dtcwt_forward(Grid(64, 64), 6));
}
