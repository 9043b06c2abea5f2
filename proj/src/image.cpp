#include "sarwake/image.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sarwake/types.hpp"

namespace sarwake {

SarImage::SarImage(Grid g, double spacing) : pixels(std::move(g)), pixel_spacing(spacing) {
    if (pixels.width < 32 || pixels.height < 32)
        throw std::invalid_argument("image dimensions must be at least 32x32, got " +
                                    std::to_string(pixels.width) + "x" + std::to_string(pixels.height));
    if (pixels.width % 2 != 0 || pixels.height % 2 != 0)
        throw std::invalid_argument("image dimensions must be even (wavelet decimation), got " +
                                    std::to_string(pixels.width) + "x" + std::to_string(pixels.height) +
                                    "; crop the raster to even dimensions");
    for (double v : pixels.data)
        if (!std::isfinite(v)) throw std::invalid_argument("image contains non-finite intensities");
}

namespace {

uint32_t read_u32le(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 | uint32_t(b[3]) << 24;
}

void write_u32le(std::ostream& out, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff), static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<char*>(b), 4);
}

int pgm_next_int(std::istream& in) {
    // skips whitespace and '#' comments
    int c;
    while ((c = in.peek()) != EOF) {
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v;
    if (!(in >> v)) throw std::runtime_error("malformed PGM header");
    return v;
}

Grid load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (m0 != 'P' || (m1 != '2' && m1 != '5')) throw std::runtime_error(path + ": not a PGM file");
    bool binary = (m1 == '5');
    int w = pgm_next_int(in);
    int h = pgm_next_int(in);
    int maxval = pgm_next_int(in);
    if (maxval <= 0 || maxval > 65535) throw std::runtime_error(path + ": bad PGM maxval");
    Grid g(w, h);
    if (binary) {
        in.get();  // single whitespace after maxval
        if (maxval < 256) {
            std::vector<unsigned char> buf(g.size());
            in.read(reinterpret_cast<char*>(buf.data()), buf.size());
            if (!in) throw std::runtime_error(path + ": truncated PGM data");
            for (size_t i = 0; i < buf.size(); ++i) g.data[i] = buf[i];
        } else {
            std::vector<unsigned char> buf(g.size() * 2);
            in.read(reinterpret_cast<char*>(buf.data()), buf.size());
            if (!in) throw std::runtime_error(path + ": truncated PGM data");
            for (size_t i = 0; i < g.size(); ++i)
                g.data[i] = double(buf[2 * i]) * 256.0 + double(buf[2 * i + 1]);
        }
    } else {
        for (auto& v : g.data) v = pgm_next_int(in);
    }
    return g;
}

}  // namespace

Grid load_grid_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    uint32_t w = read_u32le(in), h = read_u32le(in);
    if (!in) throw std::runtime_error(path + ": malformed raw header");
    if (w == 0 || h == 0 || double(w) * double(h) > 1e9)
        throw std::runtime_error(path + ": implausible raw dimensions");
    Grid g(static_cast<int>(w), static_cast<int>(h));
    static_assert(sizeof(double) == 8);
    in.read(reinterpret_cast<char*>(g.data.data()), g.size() * 8);
    if (!in) throw std::runtime_error(path + ": truncated raw data");
    return g;
}

void save_grid_raw(const Grid& g, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        write_u32le(out, static_cast<uint32_t>(g.width));
        write_u32le(out, static_cast<uint32_t>(g.height));
        out.write(reinterpret_cast<const char*>(g.data.data()), g.size() * 8);
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

SarImage load_image(const std::string& path, ImageFormat format) {
    if (!std::filesystem::exists(path)) throw std::runtime_error("no such file: " + path);
    if (format == ImageFormat::Auto) {
        if (path.ends_with(".raw")) format = ImageFormat::RawF64;
        else if (path.ends_with(".pgm")) format = ImageFormat::Pgm;
        else throw std::runtime_error("cannot infer format of " + path + " (use .pgm or .raw)");
    }
    Grid g = (format == ImageFormat::Pgm) ? load_pgm(path) : load_grid_raw(path);
    for (double v : g.data)
        if (!std::isfinite(v) || v < 0.0)
            throw std::runtime_error(path + ": intensities must be finite and non-negative");
    return SarImage(std::move(g));
}

void save_image_raw(const SarImage& img, const std::string& path) { save_grid_raw(img.pixels, path); }

void save_image_pgm(const SarImage& img, const std::string& path) {
    double lo = img.pixels.data[0], hi = lo;
    for (double v : img.pixels.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double scale = (hi > lo) ? 255.0 / (hi - lo) : 0.0;
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << "P5\n" << img.width() << " " << img.height() << "\n255\n";
        for (double v : img.pixels.data)
            out.put(static_cast<char>(static_cast<unsigned char>((v - lo) * scale + 0.5)));
    }
    std::filesystem::rename(tmp, path);
}

double image_mean(const SarImage& img, const Grid2<unsigned char>* mask) {
    if (mask && !(mask->width == img.width() && mask->height == img.height()))
        throw std::invalid_argument("mask shape mismatch");
    double sum = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < img.pixels.size(); ++i) {
        if (mask && !mask->data[i]) continue;
        sum += img.pixels.data[i];
        ++n;
    }
    if (n == 0) throw std::invalid_argument("image_mean: all pixels masked");
    return sum / double(n);
}

void atomic_write_text(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace sarwake
