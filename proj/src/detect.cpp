#include "sarwake/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sarwake {

void DetectConfig::validate() const {
    auto window_ok = [](double lo, double hi) { return lo > 0.0 && hi < 90.0 && lo < hi; };
    if (!window_ok(narrow_min_deg, narrow_max_deg)) throw std::invalid_argument("narrow-V window must satisfy 0 < lo < hi < 90");
    if (!window_ok(kelvin_min_deg, kelvin_max_deg)) throw std::invalid_argument("Kelvin window must satisfy 0 < lo < hi < 90");
    if (narrow_max_deg >= kelvin_min_deg && kelvin_max_deg >= narrow_min_deg)
        throw std::invalid_argument("narrow-V and Kelvin windows must not overlap");
    if (merit_margin < 0.0) throw std::invalid_argument("merit margin must be >= 0");
    if (!(mask_radius_frac > 0.0)) throw std::invalid_argument("mask radius must be positive");
    if (!(peak_prominence_sigma >= 0.0)) throw std::invalid_argument("peak prominence must be >= 0");
}

SarImage preprocess(const SarImage& img, const DetectConfig& cfg) {
    cfg.validate();
    const int w = img.width(), h = img.height();
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double radius = cfg.mask_radius_frac * std::min(w, h);
    if (radius >= std::min(w, h) / 2.0) throw std::invalid_argument("mask radius covers half the image");

    Grid2<unsigned char> keep(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (std::hypot(x - cx, y - cy) <= radius) keep.at(x, y) = 0;

    double fill = image_mean(img, &keep);
    Grid out = img.pixels;
    for (size_t i = 0; i < out.data.size(); ++i)
        if (!keep.data[i]) out.data[i] = fill;

    double mean = 0.0;
    for (double v : out.data) mean += v;
    mean /= out.data.size();
    for (double& v : out.data) v -= mean;
    return SarImage(std::move(out), img.pixel_spacing);
}

namespace {

/// Signed angular distance in degrees, wrapped into (-90, 90].
double wrap_delta(double d) {
    while (d > 90.0) d -= 180.0;
    while (d <= -90.0) d += 180.0;
    return d;
}

struct Peak {
    int i, j;
    double value;
};

/// 3x3-dominant prominent local maxima. The angle axis wraps with the
/// offset axis mirrored (the line (r, 179°+1°) is the line (-r, 0°)).
std::vector<Peak> local_maxima(const Sinogram& s, double prominence_sigma) {
    const int nr = s.geo.num_offsets, na = s.geo.num_angles;
    double mean = 0.0;
    for (double v : s.data.data) mean += v;
    mean /= s.data.data.size();
    double var = 0.0;
    for (double v : s.data.data) var += (v - mean) * (v - mean);
    double sigma = std::sqrt(var / s.data.data.size());
    const double floor = mean + prominence_sigma * sigma;

    std::vector<Peak> peaks;
    for (int j = 0; j < na; ++j) {
        for (int i = 0; i < nr; ++i) {
            double v = s.data.at(i, j);
            if (v < floor) continue;
            bool dominant = true;
            for (int dj = -1; dj <= 1 && dominant; ++dj) {
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (jj < 0) {
                        jj += na;
                        ii = nr - 1 - ii;
                    } else if (jj >= na) {
                        jj -= na;
                        ii = nr - 1 - ii;
                    }
                    if (ii < 0 || ii >= nr) continue;
                    if (s.data.at(ii, jj) >= v) {
                        dominant = false;
                        break;
                    }
                }
            }
            if (dominant) peaks.push_back({i, j, v});
        }
    }
    return peaks;
}

/// Best candidate inside [lo, hi] degrees from the turbulent angle on one
/// side (positive = counter-clockwise). Prominent peaks win; otherwise the
/// largest raw bin in the window.
bool window_best(const Sinogram& s, const std::vector<Peak>& peaks, double theta_t, bool positive_side,
                 double lo, double hi, WakeHypothesis& out) {
    auto in_window = [&](int j) {
        double d = wrap_delta(s.geo.angle_deg(j) - theta_t);
        if (positive_side ? d <= 0.0 : d >= 0.0) return false;
        double a = std::abs(d);
        return a >= lo && a <= hi;
    };

    const Peak* best = nullptr;
    for (const auto& p : peaks)
        if (in_window(p.j) && (!best || p.value > best->value)) best = &p;
    if (best) {
        out.r = s.geo.offset(best->i);
        out.theta = s.geo.angle_deg(best->j);
        return true;
    }
    // fallback: strongest bin in the window, no peak requirement
    bool found = false;
    double bv = 0.0;
    for (int j = 0; j < s.geo.num_angles; ++j) {
        if (!in_window(j)) continue;
        for (int i = 0; i < s.geo.num_offsets; ++i) {
            double v = s.data.at(i, j);
            if (!found || v > bv) {
                found = true;
                bv = v;
                out.r = s.geo.offset(i);
                out.theta = s.geo.angle_deg(j);
            }
        }
    }
    return found;
}

}  // namespace

std::array<WakeHypothesis, kWakeSlots> find_hypotheses(const Sinogram& x, const DetectConfig& cfg) {
    cfg.validate();
    for (double v : x.data.data)
        if (!std::isfinite(v)) throw std::invalid_argument("sinogram contains non-finite values");

    std::array<WakeHypothesis, kWakeSlots> out;
    for (int k = 0; k < kWakeSlots; ++k) out[k].kind = kWakeOrder[k];

    // turbulent wake: global trough (dark line after mean-centering)
    int bi = 0, bj = 0;
    double bv = x.data.at(0, 0);
    for (int j = 0; j < x.geo.num_angles; ++j)
        for (int i = 0; i < x.geo.num_offsets; ++i)
            if (x.data.at(i, j) < bv) {
                bv = x.data.at(i, j);
                bi = i;
                bj = j;
            }
    out[0].r = x.geo.offset(bi);
    out[0].theta = x.geo.angle_deg(bj);

    auto peaks = local_maxima(x, cfg.peak_prominence_sigma);
    const double tt = out[0].theta;
    window_best(x, peaks, tt, true, cfg.narrow_min_deg, cfg.narrow_max_deg, out[1]);
    window_best(x, peaks, tt, false, cfg.narrow_min_deg, cfg.narrow_max_deg, out[2]);
    window_best(x, peaks, tt, true, cfg.kelvin_min_deg, cfg.kelvin_max_deg, out[3]);
    window_best(x, peaks, tt, false, cfg.kelvin_min_deg, cfg.kelvin_max_deg, out[4]);
    return out;
}

std::vector<double> sample_halfline(const SarImage& img, double r, double theta_deg, HalfLineSide side) {
    const int w = img.width(), h = img.height();
    const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
    const double th = theta_deg * std::numbers::pi / 180.0;
    const double nx = std::cos(th), ny = std::sin(th);   // line normal
    const double dx = -std::sin(th), dy = std::cos(th);  // along the line
    const double fx = cx + r * nx, fy = cy + r * ny;     // perpendicular foot
    const double sgn = (side == HalfLineSide::Positive) ? 1.0 : -1.0;
    const int tmax = static_cast<int>(std::ceil(std::hypot(w, h)));

    std::vector<double> samples;
    for (int t = 0; t <= tmax; ++t) {
        double px = fx + sgn * t * dx, py = fy + sgn * t * dy;
        if (px < 0.0 || py < 0.0 || px > w - 1 || py > h - 1) continue;
        samples.push_back(bilinear(img.pixels, px, py));
    }
    if (samples.empty()) throw std::invalid_argument("half-line lies entirely outside the image");
    return samples;
}

double merit_index(const std::vector<double>& samples, double image_mean) {
    if (!(image_mean > 0.0)) throw std::invalid_argument("merit index needs a positive image mean");
    if (samples.empty()) throw std::invalid_argument("merit index needs at least one sample");
    double m = 0.0;
    for (double v : samples) m += v;
    m /= samples.size();
    return m / image_mean - 1.0;
}

bool validate(WakeType kind, double merit, const DetectConfig& cfg) {
    if (kind == WakeType::Turbulent)
        return cfg.turbulent_accept_any || merit < cfg.turbulent_threshold;
    return merit > cfg.merit_margin;
}

DetectionReport detect_pipeline(const SarImage& img, const SolverConfig& scfg, const DetectConfig& dcfg,
                                const std::string& id, Sinogram* solution_out) {
    dcfg.validate();
    SarImage pre = preprocess(img, dcfg);
    RadonGeometry geo = RadonGeometry::for_image(img.width(), img.height());
    RadonOperator op(geo);
    SolveResult sol = fb_solve(pre.pixels, op, scfg);

    Sinogram sino(geo);
    sino.data = sol.x;
    if (solution_out) *solution_out = sino;

    DetectionReport rep;
    rep.id = id;
    rep.slots = find_hypotheses(sino, dcfg);

    const double ibar = image_mean(img);
    for (auto& slot : rep.slots) {
        auto pos = sample_halfline(img, slot.r, slot.theta, HalfLineSide::Positive);
        auto neg = sample_halfline(img, slot.r, slot.theta, HalfLineSide::Negative);
        double mpos = merit_index(pos, ibar), mneg = merit_index(neg, ibar);
        if (std::abs(mpos) >= std::abs(mneg)) {
            slot.side = HalfLineSide::Positive;
            slot.merit = mpos;
        } else {
            slot.side = HalfLineSide::Negative;
            slot.merit = mneg;
        }
        slot.validated = validate(slot.kind, slot.merit, dcfg);
    }

    rep.diag.iterations = static_cast<int>(sol.trace.rows.size());
    if (!sol.trace.rows.empty()) {
        rep.diag.final_epsilon = sol.trace.rows.back().epsilon;
        rep.diag.final_cost = sol.trace.rows.back().cost;
    }
    return rep;
}

SarImage render_overlay(const SarImage& img, const DetectionReport& report) {
    double lo = img.pixels.data[0], hi = lo;
    for (double v : img.pixels.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double scale = (hi > lo) ? 180.0 / (hi - lo) : 0.0;
    Grid out(img.width(), img.height());
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] = (img.pixels.data[i] - lo) * scale;

    auto burn = [&](const WakeHypothesis& hyp, double level) {
        const double cx = (img.width() - 1) / 2.0, cy = (img.height() - 1) / 2.0;
        const double th = hyp.theta * std::numbers::pi / 180.0;
        const double dx = -std::sin(th), dy = std::cos(th);
        const double fx = cx + hyp.r * std::cos(th), fy = cy + hyp.r * std::sin(th);
        const double sgn = (hyp.side == HalfLineSide::Positive) ? 1.0 : -1.0;
        const int tmax = static_cast<int>(std::ceil(std::hypot(img.width(), img.height())));
        for (int t = 0; t <= tmax; ++t) {
            int px = static_cast<int>(std::lround(fx + sgn * t * dx));
            int py = static_cast<int>(std::lround(fy + sgn * t * dy));
            if (px < 0 || py < 0 || px >= out.width || py >= out.height) continue;
            out.at(px, py) = level;
        }
    };
    for (const auto& slot : report.slots) {
        if (!slot.validated) continue;
        double level = 255.0;
        if (slot.kind == WakeType::NarrowV1 || slot.kind == WakeType::NarrowV2) level = 230.0;
        if (slot.kind == WakeType::Kelvin1 || slot.kind == WakeType::Kelvin2) level = 210.0;
        burn(slot, level);
    }
    return SarImage(std::move(out), img.pixel_spacing);
}

}  // namespace sarwake
