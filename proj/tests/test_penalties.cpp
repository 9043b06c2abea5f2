#include <doctest.h>

#include <random>

#include "sarwake/dtcwt.hpp"
#include "sarwake/penalties.hpp"

using namespace sarwake;

namespace {
Grid random_grid(int w, int h, uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    Grid g(w, h);
    for (double& v : g.data) v = scale * (double(rng() >> 11) * 0x1.0p-52 - 1.0);
    return g;
}
}  // namespace

TEST_CASE("cauchy penalty analytic values") {
    CHECK(cauchy_penalty(Grid(8, 8), CauchyParams(1.0)) == doctest::Approx(0.0).epsilon(1e-15));

    double gamma = 0.7;
    Grid one(1, 1, gamma);
    CHECK(cauchy_penalty(one, CauchyParams(gamma)) == doctest::Approx(std::log(2.0 * gamma)).epsilon(1e-12));

    Grid g = random_grid(8, 8, 3);
    double expect = 0.0;
    for (double v : g.data) expect += -std::log(0.5 / (v * v + 0.25));
    CHECK(cauchy_penalty(g, CauchyParams(0.5)) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS(CauchyParams(0.0));
    CHECK_THROWS(CauchyParams(-1.0));
}

TEST_CASE("cauchy gradient analytic values and bound") {
    double gamma = 0.8;
    Grid z(4, 4);
    Grid gz = cauchy_gradient(z, CauchyParams(gamma));
    for (double v : gz.data) CHECK(v == 0.0);

    Grid at(1, 1, gamma);
    CHECK(cauchy_gradient(at, CauchyParams(gamma)).data[0] == doctest::Approx(1.0 / gamma).epsilon(1e-12));

    Grid g = random_grid(16, 16, 5, 3.0);
    Grid grad = cauchy_gradient(g, CauchyParams(gamma));
    for (double v : grad.data) CHECK(std::abs(v) <= 1.0 / gamma + 1e-12);
}

TEST_CASE("cauchy gradient matches finite differences") {
    double gamma = 0.6;
    Grid g = random_grid(8, 8, 9, 2.0);
    Grid grad = cauchy_gradient(g, CauchyParams(gamma));
    const double h = 1e-6;
    for (size_t i = 0; i < g.data.size(); i += 7) {
        Grid p = g, m = g;
        p.data[i] += h;
        m.data[i] -= h;
        double fd = (cauchy_penalty(p, CauchyParams(gamma)) - cauchy_penalty(m, CauchyParams(gamma))) / (2 * h);
        CHECK(grad.data[i] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("cauchy gradient is odd and penalty minimized at zero") {
    Grid g = random_grid(8, 8, 13, 4.0);
    Grid neg = g;
    neg *= -1.0;
    Grid a = cauchy_gradient(g, CauchyParams(0.9));
    Grid b = cauchy_gradient(neg, CauchyParams(0.9));
    for (size_t i = 0; i < a.data.size(); ++i) CHECK(a.data[i] == -b.data[i]);

    double p0 = cauchy_penalty(Grid(8, 8), CauchyParams(0.9));
    CHECK(cauchy_penalty(g, CauchyParams(0.9)) >= p0);
}

namespace {
WaveletPyramid single_coeff_pyramid(std::complex<double> w) {
    WaveletPyramid p = dtcwt_forward(Grid(32, 32), 1);
    p.bands[0][2].at(3, 4) = w;
    return p;
}
}  // namespace

TEST_CASE("soft threshold analytic cases") {
    auto p = single_coeff_pyramid({1.5, 0.0});
    CHECK(std::abs(soft_threshold(p, 2.0).bands[0][2].at(3, 4)) == 0.0);

    p = single_coeff_pyramid({5.0, 0.0});
    CHECK(soft_threshold(p, 2.0).bands[0][2].at(3, 4).real() == doctest::Approx(3.0).epsilon(1e-14));

    p = single_coeff_pyramid({3.0, 4.0});
    auto out = soft_threshold(p, 2.5).bands[0][2].at(3, 4);
    CHECK(out.real() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(out.imag() == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS(soft_threshold(p, -0.1));
}

TEST_CASE("soft threshold leaves lowpass untouched and is identity at T=0") {
    Grid g = random_grid(32, 32, 21);
    WaveletPyramid p = dtcwt_forward(g, 2);
    WaveletPyramid s = soft_threshold(p, 0.8);
    for (int t = 0; t < 4; ++t)
        for (size_t i = 0; i < p.lowpass[t].data.size(); ++i)
            CHECK(s.lowpass[t].data[i] == p.lowpass[t].data[i]);

    WaveletPyramid id = soft_threshold(p, 0.0);
    for (size_t l = 0; l < p.bands.size(); ++l)
        for (int b = 0; b < 6; ++b)
            for (size_t i = 0; i < p.bands[l][b].data.size(); ++i)
                CHECK(id.bands[l][b].data[i] == p.bands[l][b].data[i]);
}

TEST_CASE("soft threshold is non-expansive") {
    std::mt19937_64 rng(33);
    Grid a = random_grid(32, 32, 34), b = random_grid(32, 32, 35);
    WaveletPyramid pa = dtcwt_forward(a, 2), pb = dtcwt_forward(b, 2);
    WaveletPyramid sa = soft_threshold(pa, 0.4), sb = soft_threshold(pb, 0.4);
    double din = 0.0, dout = 0.0;
    for (size_t l = 0; l < pa.bands.size(); ++l)
        for (int k = 0; k < 6; ++k)
            for (size_t i = 0; i < pa.bands[l][k].data.size(); ++i) {
                din += std::norm(pa.bands[l][k].data[i] - pb.bands[l][k].data[i]);
                dout += std::norm(sa.bands[l][k].data[i] - sb.bands[l][k].data[i]);
            }
    CHECK(dout <= din + 1e-12);
}

TEST_CASE("tv gradient: constant grid gives zero, weight is linear") {
    Grid c(16, 16, 2.5);
    Grid g = tv_gradient_step(c, 1.3);
    for (double v : g.data) CHECK(v == 0.0);

    Grid x = random_grid(16, 16, 41);
    Grid g1 = tv_gradient_step(x, 1.0);
    Grid g2 = tv_gradient_step(x, 2.0);
    for (size_t i = 0; i < g1.data.size(); ++i) CHECK(g2.data[i] == doctest::Approx(2.0 * g1.data[i]).epsilon(1e-14));
}

TEST_CASE("tv gradient matches finite differences") {
    Grid x = random_grid(16, 16, 43);
    double w = 0.7;
    Grid grad = tv_gradient_step(x, w);
    const double h = 1e-6;
    for (size_t i = 0; i < x.data.size(); i += 11) {
        Grid p = x, m = x;
        p.data[i] += h;
        m.data[i] -= h;
        double fd = (tv_value(p, w) - tv_value(m, w)) / (2 * h);
        CHECK(grad.data[i] == doctest::Approx(fd).epsilon(1e-5));
    }
}
