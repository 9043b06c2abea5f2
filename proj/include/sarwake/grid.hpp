#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sarwake {

/// Dense row-major 2-D grid. Index order is (x, y) with x the column.
template <class T>
struct Grid2 {
    int width = 0;
    int height = 0;
    std::vector<T> data;

    Grid2() = default;
    Grid2(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 0 || h < 0) throw std::invalid_argument("grid dims must be non-negative");
    }

    T& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    const T& at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    size_t size() const { return data.size(); }
    bool same_shape(const Grid2& o) const { return width == o.width && height == o.height; }

    Grid2& operator+=(const Grid2& o) {
        assert(same_shape(o));
        for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
        return *this;
    }
    Grid2& operator-=(const Grid2& o) {
        assert(same_shape(o));
        for (size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
        return *this;
    }
    Grid2& operator*=(T s) {
        for (auto& v : data) v *= s;
        return *this;
    }
};

using Grid = Grid2<double>;
using CGrid = Grid2<std::complex<double>>;

inline double dot(const Grid& a, const Grid& b) {
    assert(a.same_shape(b));
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
    return s;
}

inline double norm2(const Grid& g) { return std::sqrt(dot(g, g)); }

/// Bilinear sample with zero outside the grid.
inline double bilinear(const Grid& g, double x, double y) {
    if (x < 0.0 || y < 0.0 || x > g.width - 1 || y > g.height - 1) return 0.0;
    int x0 = static_cast<int>(x);
    int y0 = static_cast<int>(y);
    if (x0 == g.width - 1) x0--;
    if (y0 == g.height - 1) y0--;
    if (x0 < 0 || y0 < 0) return 0.0;
    double fx = x - x0, fy = y - y0;
    const double* p = &g.data[static_cast<size_t>(y0) * g.width + x0];
    return (1 - fy) * ((1 - fx) * p[0] + fx * p[1]) +
           fy * ((1 - fx) * p[g.width] + fx * p[g.width + 1]);
}

inline double nearest_sample(const Grid& g, double x, double y) {
    int xi = static_cast<int>(std::lround(x));
    int yi = static_cast<int>(std::lround(y));
    if (xi < 0 || yi < 0 || xi >= g.width || yi >= g.height) return 0.0;
    return g.at(xi, yi);
}

}  // namespace sarwake
