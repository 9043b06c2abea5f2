#include "sarwake/penalties.hpp"

namespace sarwake {

double cauchy_penalty(const Grid& x, const CauchyParams& p) {
    const double g = p.gamma;
    double s = 0.0;
    for (double v : x.data) s += -std::log(g / (v * v + g * g));
    return s;
}

Grid cauchy_gradient(const Grid& x, const CauchyParams& p) {
    const double g2 = p.gamma * p.gamma;
    Grid out(x.width, x.height);
    for (size_t i = 0; i < x.data.size(); ++i) {
        double v = x.data[i];
        out.data[i] = 2.0 * v / (g2 + v * v);
    }
    return out;
}

WaveletPyramid soft_threshold(WaveletPyramid w, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("soft_threshold: threshold must be >= 0");
    if (threshold == 0.0) return w;
    for (auto& lev : w.bands) {
        for (auto& band : lev) {
            for (auto& c : band.data) {
                double mag = std::abs(c);
                c = (mag <= threshold) ? std::complex<double>{0.0, 0.0} : c * (1.0 - threshold / mag);
            }
        }
    }
    return w;
}

namespace {
constexpr double kTvEps = 1e-8;

inline double dxf(const Grid& g, int x, int y) { return (x + 1 < g.width) ? g.at(x + 1, y) - g.at(x, y) : 0.0; }
inline double dyf(const Grid& g, int x, int y) { return (y + 1 < g.height) ? g.at(x, y + 1) - g.at(x, y) : 0.0; }
}  // namespace

double tv_value(const Grid& x, double weight) {
    double s = 0.0;
    for (int y = 0; y < x.height; ++y)
        for (int xx = 0; xx < x.width; ++xx) {
            double gx = dxf(x, xx, y), gy = dyf(x, xx, y);
            s += std::sqrt(gx * gx + gy * gy + kTvEps * kTvEps);
        }
    return weight * s;
}

Grid tv_gradient_step(const Grid& x, double weight) {
    if (weight < 0.0) throw std::invalid_argument("tv weight must be >= 0");
    Grid out(x.width, x.height);
    // d/dX sum_p sqrt(gx^2 + gy^2 + eps^2): scatter each difference's
    // contribution back to the two pixels that formed it.
    for (int y = 0; y < x.height; ++y) {
        for (int xx = 0; xx < x.width; ++xx) {
            double gx = dxf(x, xx, y), gy = dyf(x, xx, y);
            double denom = std::sqrt(gx * gx + gy * gy + kTvEps * kTvEps);
            if (xx + 1 < x.width) {
                double c = weight * gx / denom;
                out.at(xx + 1, y) += c;
                out.at(xx, y) -= c;
            }
            if (y + 1 < x.height) {
                double c = weight * gy / denom;
                out.at(xx, y + 1) += c;
                out.at(xx, y) -= c;
            }
        }
    }
    return out;
}

}  // namespace sarwake
