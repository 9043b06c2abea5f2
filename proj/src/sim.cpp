#include "sarwake/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

namespace sarwake {

void SceneParams::validate() const {
    if (width < 32 || height < 32 || width % 2 || height % 2)
        throw std::invalid_argument("scene dims must be even and >= 32");
    if (!(background_mean > 0.0)) throw std::invalid_argument("background mean must be positive");
    if (looks < 1) throw std::invalid_argument("looks must be >= 1");
    if (!(turbulent_contrast > 0.0 && turbulent_contrast <= 1.0))
        throw std::invalid_argument("turbulent contrast must be in (0, 1]");
    if (!(narrow_contrast >= 1.0) || !(kelvin_contrast >= 1.0))
        throw std::invalid_argument("arm contrasts must be >= 1");
    if (!(wake_width > 0.0)) throw std::invalid_argument("wake width must be positive");
    if (turbulent_theta < 0.0 || turbulent_theta >= 180.0)
        throw std::invalid_argument("turbulent angle must lie in [0, 180)");
    if (!(narrow_half_angle > 0.0 && kelvin_half_angle > narrow_half_angle && kelvin_half_angle < 90.0))
        throw std::invalid_argument("half-angles must satisfy 0 < narrow < kelvin < 90");
    if (!(gaussian_sigma >= 0.0)) throw std::invalid_argument("gaussian sigma must be >= 0");
}

namespace {

inline double unit_uniform(std::mt19937_64& rng) {
    // in (0, 1]: safe for log()
    return (double(rng() >> 11) + 1.0) * 0x1.0p-53;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Line angles live in [0, 180); pushing an arm past the range flips the
/// direction vector, so the trailing side flips with it.
void wrap_line(double& theta, HalfLineSide& side) {
    while (theta >= 180.0) {
        theta -= 180.0;
        side = (side == HalfLineSide::Positive) ? HalfLineSide::Negative : HalfLineSide::Positive;
    }
    while (theta < 0.0) {
        theta += 180.0;
        side = (side == HalfLineSide::Positive) ? HalfLineSide::Negative : HalfLineSide::Positive;
    }
}

}  // namespace

Grid speckle_field(int width, int height, int looks, uint64_t seed) {
    if (looks < 1) throw std::invalid_argument("looks must be >= 1");
    std::mt19937_64 rng(seed);
    Grid out(width, height);
    for (double& v : out.data) {
        double s = 0.0;
        for (int k = 0; k < looks; ++k) s -= std::log(unit_uniform(rng));
        v = s / looks;
    }
    return out;
}

std::pair<SarImage, GroundTruthAnnotation> simulate_scene(const SceneParams& p) {
    p.validate();

    struct Arm {
        WakeType kind;
        double theta;
        HalfLineSide side;
        double contrast;
    };
    std::vector<Arm> arms;
    arms.push_back({WakeType::Turbulent, p.turbulent_theta, p.side, p.turbulent_contrast});
    arms.push_back({WakeType::NarrowV1, p.turbulent_theta + p.narrow_half_angle, p.side, p.narrow_contrast});
    arms.push_back({WakeType::NarrowV2, p.turbulent_theta - p.narrow_half_angle, p.side, p.narrow_contrast});
    arms.push_back({WakeType::Kelvin1, p.turbulent_theta + p.kelvin_half_angle, p.side, p.kelvin_contrast});
    arms.push_back({WakeType::Kelvin2, p.turbulent_theta - p.kelvin_half_angle, p.side, p.kelvin_contrast});

    GroundTruthAnnotation ann;
    ann.flags = p.visibility;

    Grid refl(p.width, p.height, p.background_mean);
    const double cx = (p.width - 1) / 2.0, cy = (p.height - 1) / 2.0;
    const double hw = p.wake_width / 2.0;

    for (auto arm : arms) {
        int slot = static_cast<int>(arm.kind);
        wrap_line(arm.theta, arm.side);
        if (!p.visibility[slot]) continue;
        ann.wakes.push_back({arm.kind, 0.0, arm.theta, arm.side, arm.contrast});

        const double th = arm.theta * std::numbers::pi / 180.0;
        const double nx = std::cos(th), ny = std::sin(th);
        const double dx = -std::sin(th), dy = std::cos(th);
        const double sgn = (arm.side == HalfLineSide::Positive) ? 1.0 : -1.0;
        for (int y = 0; y < p.height; ++y) {
            for (int x = 0; x < p.width; ++x) {
                double vx = x - cx, vy = y - cy;
                double q = vx * nx + vy * ny;   // perpendicular distance (line passes the centre)
                double t = vx * dx + vy * dy;   // position along the line
                if (std::abs(q) <= hw && sgn * t >= 0.0) refl.at(x, y) *= arm.contrast;
            }
        }
    }

    Grid img = refl;
    if (p.noise == NoiseModel::Speckle) {
        Grid sp = speckle_field(p.width, p.height, p.looks, p.seed);
        for (size_t i = 0; i < img.data.size(); ++i) img.data[i] *= sp.data[i];
    } else {
        std::mt19937_64 rng(p.seed);
        for (double& v : img.data) {
            double u1 = unit_uniform(rng), u2 = unit_uniform(rng);
            v += p.gaussian_sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }
    }
    return {SarImage(std::move(img)), std::move(ann)};
}

void make_corpus(const CorpusParams& cp, const std::string& dir) {
    if (cp.count < 1) throw std::invalid_argument("corpus needs at least one scene");
    cp.base.validate();
    std::filesystem::create_directories(dir);

    std::ostringstream summary;
    summary << "# id T N1 N2 K1 K2\n";

    for (int i = 0; i < cp.count; ++i) {
        std::mt19937_64 rng(splitmix64(cp.master_seed ^ (0xc0ffeeULL + i)));
        auto uni = [&rng](double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); };

        SceneParams p = cp.base;
        p.seed = splitmix64(cp.master_seed * 0x10001ULL + i);
        p.turbulent_theta = uni(cp.theta_min, cp.theta_max);
        p.turbulent_contrast = uni(cp.turbulent_contrast_min, cp.turbulent_contrast_max);
        p.narrow_contrast = uni(cp.narrow_contrast_min, cp.narrow_contrast_max);
        p.kelvin_contrast = uni(cp.kelvin_contrast_min, cp.kelvin_contrast_max);
        p.side = (unit_uniform(rng) < 0.5) ? HalfLineSide::Positive : HalfLineSide::Negative;
        p.visibility = {1, 1, 0, 0, 0};
        if (unit_uniform(rng) < cp.narrow2_prob) p.visibility[2] = 1;
        if (unit_uniform(rng) < cp.kelvin1_prob) p.visibility[3] = 1;
        if (unit_uniform(rng) < cp.kelvin2_prob) p.visibility[4] = 1;

        auto [img, ann] = simulate_scene(p);
        char name[32];
        std::snprintf(name, sizeof name, "scene_%03d", i);
        ann.id = name;
        save_image_raw(img, dir + "/" + name + ".raw");
        save_annotation(ann, dir + "/" + name + ".ann");

        summary << name;
        for (int f : ann.flags) summary << ' ' << f;
        summary << '\n';
    }
    atomic_write_text(dir + "/summary.txt", summary.str());
}

}  // namespace sarwake
