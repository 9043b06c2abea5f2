#pragma once

#include <optional>
#include <string>

#include "sarwake/grid.hpp"

namespace sarwake {

/// Observed intensity image. Values are linear-scale 64-bit reals.
/// Dimensions must be even and at least 32 in each direction.
struct SarImage {
    Grid pixels;
    double pixel_spacing = 1.0;  // metres/pixel, metadata only

    SarImage() = default;
    explicit SarImage(Grid g, double spacing = 1.0);

    int width() const { return pixels.width; }
    int height() const { return pixels.height; }
};

enum class ImageFormat { Auto, Pgm, RawF64 };

/// Loads a raster and maps it to a linear real-valued image.
/// PGM (8/16-bit, binary or ASCII) and the raw float format are supported.
/// Odd dimensions are rejected with an actionable message.
SarImage load_image(const std::string& path, ImageFormat format = ImageFormat::Auto);

void save_image_raw(const SarImage& img, const std::string& path);
void save_image_pgm(const SarImage& img, const std::string& path);

Grid load_grid_raw(const std::string& path);
void save_grid_raw(const Grid& g, const std::string& path);

/// Arithmetic mean over unmasked pixels (mask true = keep).
double image_mean(const SarImage& img, const Grid2<unsigned char>* mask = nullptr);

/// Writes `content` to `path` via a temp file + rename.
void atomic_write_text(const std::string& path, const std::string& content);

}  // namespace sarwake
