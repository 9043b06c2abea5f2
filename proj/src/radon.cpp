#include "sarwake/radon.hpp"

#include <fftw3.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>

namespace sarwake {

namespace {
constexpr double kPi = std::numbers::pi;

double deg2rad(double d) { return d * kPi / 180.0; }
}  // namespace

RadonGeometry RadonGeometry::for_image(int w, int h, int num_angles) {
    RadonGeometry g;
    g.image_width = w;
    g.image_height = h;
    g.num_angles = num_angles;
    int half = static_cast<int>(std::ceil(std::hypot(w, h) / 2.0));
    g.num_offsets = 2 * half + 1;
    g.validate();
    return g;
}

void RadonGeometry::validate() const {
    if (image_width <= 0 || image_height <= 0) throw std::invalid_argument("radon: empty image geometry");
    if (num_angles < 1) throw std::invalid_argument("radon: need at least one angle");
    if (num_offsets < 1 || num_offsets % 2 == 0)
        throw std::invalid_argument("radon: offset count must be odd so r = 0 exists");
    if (2 * offset_center() < static_cast<int>(std::floor(std::hypot(image_width, image_height) / 2.0)))
        throw std::invalid_argument("radon: offset range must cover the image diagonal");
}

Sinogram forward_radon(const Grid& img, const RadonGeometry& geo) {
    geo.validate();
    if (img.width != geo.image_width || img.height != geo.image_height)
        throw std::invalid_argument("forward_radon: image shape does not match geometry");
    Sinogram out(geo);
    const double cx = (geo.image_width - 1) / 2.0;
    const double cy = (geo.image_height - 1) / 2.0;
    const int half = geo.offset_center();
    for (int j = 0; j < geo.num_angles; ++j) {
        const double th = deg2rad(geo.angle_deg(j));
        const double nx = std::cos(th), ny = std::sin(th);
        const double dx = -std::sin(th), dy = std::cos(th);
        double* row = &out.data.at(0, j);
        for (int i = 0; i < geo.num_offsets; ++i) {
            const double r = geo.offset(i);
            const double px = cx + r * nx, py = cy + r * ny;
            double sum = 0.0;
            for (int t = -half; t <= half; ++t) {
                const double x = px + t * dx, y = py + t * dy;
                sum += (geo.interp == Interp::Linear) ? bilinear(img, x, y) : nearest_sample(img, x, y);
            }
            row[i] = sum;
        }
    }
    return out;
}

namespace {

// Cached FFTW state for the discrete ramp filter at one offset count.
// The frequency response is the DFT of the band-limited spatial ramp
// kernel (the linear-interpolation-matched construction), which is real
// and even, so the filtering step is exactly self-adjoint.
struct RampContext {
    int n = 0;        // profile length
    int padded = 0;   // power-of-two working length
    std::vector<double> freq_response;
    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<double> re;
    std::vector<std::complex<double>> spec;

    fftw_complex* spec_ptr() { return reinterpret_cast<fftw_complex*>(spec.data()); }

    explicit RampContext(int n_offsets) : n(n_offsets) {
        padded = 64;
        while (padded < 2 * n) padded *= 2;
        re.resize(padded);
        spec.resize(padded / 2 + 1);
        fwd = fftw_plan_dft_r2c_1d(padded, re.data(), spec_ptr(), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(padded, spec_ptr(), re.data(), FFTW_ESTIMATE);
        // spatial kernel: f[0] = 1/4, f[+-k odd] = -1/(pi k)^2, else 0
        std::fill(re.begin(), re.end(), 0.0);
        re[0] = 0.25;
        for (int k = 1; k < padded / 2; k += 2) {
            double v = -1.0 / (kPi * k * kPi * k);
            re[k] = v;
            re[padded - k] = v;
        }
        fftw_execute(fwd);
        freq_response.resize(padded / 2 + 1);
        for (int k = 0; k <= padded / 2; ++k) freq_response[k] = 2.0 * spec[k].real();
    }
    ~RampContext() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    RampContext(const RampContext&) = delete;

    void filter_row(double* row) {
        std::memcpy(re.data(), row, n * sizeof(double));
        std::memset(re.data() + n, 0, (padded - n) * sizeof(double));
        fftw_execute(fwd);
        for (int k = 0; k <= padded / 2; ++k) spec[k] *= freq_response[k] / padded;
        fftw_execute(bwd);
        std::memcpy(row, re.data(), n * sizeof(double));
    }
};

std::mutex g_ramp_mutex;

void ramp_filter(Grid& sino) {
    std::lock_guard<std::mutex> lock(g_ramp_mutex);
    static std::map<int, std::unique_ptr<RampContext>> cache;
    auto& ctx = cache[sino.width];
    if (!ctx) ctx = std::make_unique<RampContext>(sino.width);
    for (int j = 0; j < sino.height; ++j) ctx->filter_row(&sino.at(0, j));
}

// Pixel-driven backprojection (gather). Linear interpolation along r.
Grid backproject(const Grid& sino, const RadonGeometry& geo) {
    Grid out(geo.image_width, geo.image_height);
    const double cx = (geo.image_width - 1) / 2.0;
    const double cy = (geo.image_height - 1) / 2.0;
    const double c0 = geo.offset_center();
    for (int j = 0; j < geo.num_angles; ++j) {
        const double th = deg2rad(geo.angle_deg(j));
        const double ct = std::cos(th), st = std::sin(th);
        const double* row = &sino.at(0, j);
        for (int y = 0; y < geo.image_height; ++y) {
            double ridx = -cx * ct + (y - cy) * st + c0;
            double* orow = &out.at(0, y);
            if (geo.interp == Interp::Linear) {
                for (int x = 0; x < geo.image_width; ++x, ridx += ct) {
                    if (ridx >= 0.0 && ridx <= sino.width - 1) {
                        int i0 = static_cast<int>(ridx);
                        if (i0 == sino.width - 1) i0--;
                        double f = ridx - i0;
                        orow[x] += (1 - f) * row[i0] + f * row[i0 + 1];
                    }
                }
            } else {
                for (int x = 0; x < geo.image_width; ++x, ridx += ct) {
                    int i0 = static_cast<int>(std::lround(ridx));
                    if (i0 >= 0 && i0 < sino.width) orow[x] += row[i0];
                }
            }
        }
    }
    return out;
}

// Exact transpose of backproject (scatter into sinogram bins).
Grid project_transpose(const Grid& img, const RadonGeometry& geo) {
    Grid out(geo.num_offsets, geo.num_angles);
    const double cx = (geo.image_width - 1) / 2.0;
    const double cy = (geo.image_height - 1) / 2.0;
    const double c0 = geo.offset_center();
    for (int j = 0; j < geo.num_angles; ++j) {
        const double th = deg2rad(geo.angle_deg(j));
        const double ct = std::cos(th), st = std::sin(th);
        double* row = &out.at(0, j);
        for (int y = 0; y < geo.image_height; ++y) {
            double ridx = -cx * ct + (y - cy) * st + c0;
            const double* irow = &img.at(0, y);
            if (geo.interp == Interp::Linear) {
                for (int x = 0; x < geo.image_width; ++x, ridx += ct) {
                    if (ridx >= 0.0 && ridx <= geo.num_offsets - 1) {
                        int i0 = static_cast<int>(ridx);
                        if (i0 == geo.num_offsets - 1) i0--;
                        double f = ridx - i0;
                        row[i0] += (1 - f) * irow[x];
                        row[i0 + 1] += f * irow[x];
                    }
                }
            } else {
                for (int x = 0; x < geo.image_width; ++x, ridx += ct) {
                    int i0 = static_cast<int>(std::lround(ridx));
                    if (i0 >= 0 && i0 < geo.num_offsets) row[i0] += irow[x];
                }
            }
        }
    }
    return out;
}

}  // namespace

Grid inverse_radon(const Sinogram& sino) {
    const RadonGeometry& geo = sino.geo;
    geo.validate();
    if (sino.data.width != geo.num_offsets || sino.data.height != geo.num_angles)
        throw std::invalid_argument("inverse_radon: sinogram grid does not match geometry");
    Grid work = sino.data;
    if (geo.ramp) ramp_filter(work);
    Grid img = backproject(work, geo);
    img *= kPi / (2.0 * geo.num_angles);
    return img;
}

Sinogram adjoint_inverse_radon(const Grid& img, const RadonGeometry& geo) {
    geo.validate();
    if (img.width != geo.image_width || img.height != geo.image_height)
        throw std::invalid_argument("adjoint_inverse_radon: image shape does not match geometry");
    Sinogram out(geo);
    out.data = project_transpose(img, geo);
    if (geo.ramp) ramp_filter(out.data);
    out.data *= kPi / (2.0 * geo.num_angles);
    return out;
}

double power_iteration(const std::function<std::vector<double>(const std::vector<double>&)>& op,
                       size_t dim, int iterations, uint64_t seed) {
    if (iterations < 10) throw std::invalid_argument("power_iteration: need at least 10 iterations");
    std::mt19937_64 rng(seed);
    std::vector<double> v(dim);
    for (auto& x : v) x = double(rng() >> 11) * 0x1.0p-52 - 1.0;  // uniform [-1, 1)
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) return 0.0;
        for (auto& x : v) x /= nrm;
        std::vector<double> w = op(v);
        lambda = 0.0;
        for (size_t i = 0; i < dim; ++i) lambda += v[i] * w[i];
        v = std::move(w);
    }
    return lambda;
}

double estimate_operator_norm(const RadonGeometry& geo, int iterations, uint64_t seed) {
    const size_t dim = static_cast<size_t>(geo.num_offsets) * geo.num_angles;
    auto op = [&geo](const std::vector<double>& v) {
        Sinogram s(geo);
        s.data.data = v;
        Grid img = inverse_radon(s);
        Sinogram back = adjoint_inverse_radon(img, geo);
        return back.data.data;
    };
    return power_iteration(op, dim, iterations, seed);
}

void save_sinogram(const Sinogram& s, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        uint32_t hdr[4] = {static_cast<uint32_t>(s.geo.image_width), static_cast<uint32_t>(s.geo.image_height),
                           static_cast<uint32_t>(s.geo.num_offsets), static_cast<uint32_t>(s.geo.num_angles)};
        out.write(reinterpret_cast<char*>(hdr), sizeof hdr);
        std::vector<double> grids;
        for (int i = 0; i < s.geo.num_offsets; ++i) grids.push_back(s.geo.offset(i));
        for (int j = 0; j < s.geo.num_angles; ++j) grids.push_back(s.geo.angle_deg(j));
        out.write(reinterpret_cast<char*>(grids.data()), grids.size() * 8);
        out.write(reinterpret_cast<const char*>(s.data.data.data()), s.data.size() * 8);
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Sinogram load_sinogram(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    uint32_t hdr[4];
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    RadonGeometry geo;
    geo.image_width = static_cast<int>(hdr[0]);
    geo.image_height = static_cast<int>(hdr[1]);
    geo.num_offsets = static_cast<int>(hdr[2]);
    geo.num_angles = static_cast<int>(hdr[3]);
    geo.validate();
    in.seekg((geo.num_offsets + geo.num_angles) * 8, std::ios::cur);  // grids are derivable
    Sinogram s(geo);
    in.read(reinterpret_cast<char*>(s.data.data.data()), s.data.size() * 8);
    if (!in) throw std::runtime_error(path + ": truncated sinogram");
    return s;
}

}  // namespace sarwake
