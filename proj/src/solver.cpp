#include "sarwake/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sarwake {

double ForwardOperator::norm_squared(int iterations, uint64_t seed) const {
    const int w = domain_width(), h = domain_height();
    auto ctc = [this, w, h](const std::vector<double>& v) {
        Grid g(w, h);
        g.data = v;
        return adjoint(apply(g)).data;
    };
    return power_iteration(ctc, size_t(w) * size_t(h), iterations, seed);
}

Grid RadonOperator::apply(const Grid& x) const {
    Sinogram s;
    s.geo = geo_;
    s.data = x;
    if (x.width != geo_.num_offsets || x.height != geo_.num_angles)
        throw std::invalid_argument("RadonOperator::apply: grid does not match geometry");
    return inverse_radon(s);
}

Grid RadonOperator::adjoint(const Grid& y) const {
    if (y.width != geo_.image_width || y.height != geo_.image_height)
        throw std::invalid_argument("RadonOperator::adjoint: grid does not match geometry");
    return adjoint_inverse_radon(y, geo_).data;
}

const char* penalty_mode_name(PenaltyMode m) {
    switch (m) {
        case PenaltyMode::CauchyDtcwt: return "cauchy_dtcwt";
        case PenaltyMode::CauchyOnly: return "cauchy_only";
        case PenaltyMode::TvOnly: return "tv_only";
    }
    throw std::logic_error("bad penalty mode");
}

PenaltyMode parse_penalty_mode(const std::string& s) {
    if (s == "cauchy_dtcwt") return PenaltyMode::CauchyDtcwt;
    if (s == "cauchy_only") return PenaltyMode::CauchyOnly;
    if (s == "tv_only") return PenaltyMode::TvOnly;
    throw std::invalid_argument("unknown penalty mode: " + s);
}

std::string SolverTrace::to_csv() const {
    std::ostringstream os;
    os << "iteration,cost,epsilon,seconds\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.10e,%.10e,%.6f\n", r.iteration, r.cost, r.epsilon, r.seconds);
        os << buf;
    }
    return os.str();
}

namespace {

int padded_dim(int d, int levels) {
    int block = 1 << levels;
    int min_dim = (levels >= 2) ? 14 * (1 << (levels - 1)) : 20;
    int target = std::max(d, min_dim);
    return ((target + block - 1) / block) * block;
}

double max_abs(const Grid& g) {
    double m = 0.0;
    for (double v : g.data) m = std::max(m, std::abs(v));
    return m;
}

double max_band_magnitude(const WaveletPyramid& p) {
    double m = 0.0;
    for (const auto& lev : p.bands)
        for (const auto& band : lev)
            for (const auto& c : band.data) m = std::max(m, std::abs(c));
    return m;
}

bool all_finite(const Grid& g) {
    for (double v : g.data)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

Grid pad_for_dtcwt(const Grid& x, int levels) {
    int pw = padded_dim(x.width, levels), ph = padded_dim(x.height, levels);
    if (pw == x.width && ph == x.height) return x;
    Grid out(pw, ph);
    for (int y = 0; y < x.height; ++y)
        for (int xx = 0; xx < x.width; ++xx) out.at(xx, y) = x.at(xx, y);
    return out;
}

Grid crop_from_dtcwt(const Grid& padded, int width, int height) {
    if (padded.width == width && padded.height == height) return padded;
    if (padded.width < width || padded.height < height)
        throw std::invalid_argument("crop_from_dtcwt: target larger than source");
    Grid out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) out.at(x, y) = padded.at(x, y);
    return out;
}

SolverConfig resolve_config(const Grid& y, const ForwardOperator& op, SolverConfig cfg) {
    if (cfg.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(cfg.tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");
    if (cfg.levels < 1 || cfg.levels > 5) throw std::invalid_argument("levels must be in [1,5]");

    Grid cty = op.adjoint(y);
    if (cfg.gamma <= 0.0) {
        double m = 0.1 * max_abs(cty);
        cfg.gamma = (m > 0.0) ? m : 1.0;
    }
    if (cfg.lambda < 0.0) {
        if (cfg.mode == PenaltyMode::CauchyDtcwt) {
            double m = 0.05 * max_band_magnitude(dtcwt_forward(pad_for_dtcwt(cty, cfg.levels), cfg.levels));
            cfg.lambda = (m > 0.0) ? m : 0.0;
        } else if (cfg.mode == PenaltyMode::TvOnly) {
            double m = 0.05 * max_abs(cty);
            cfg.lambda = (m > 0.0) ? m : 0.0;
        } else {
            cfg.lambda = 0.0;
        }
    }
    const bool auto_mu = cfg.mu <= 0.0;
    if (auto_mu) {
        double lc = op.norm_squared(cfg.norm_iterations, cfg.norm_seed);
        cfg.mu = 0.9 / (2.0 * lc + 2.0 / (cfg.gamma * cfg.gamma));
    } else if (cfg.gamma < std::sqrt(cfg.mu) / 2.0) {
        throw std::invalid_argument("explicit step size requires gamma >= sqrt(mu)/2");
    }
    if (!std::isfinite(cfg.mu) || cfg.mu <= 0.0) throw NumericalFailure("resolved step size is not positive");
    return cfg;
}

Grid grad_g(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg) {
    Grid resid = op.apply(x);
    resid -= y;
    Grid g = op.adjoint(resid);
    g *= 2.0;
    if (cfg.mode == PenaltyMode::TvOnly) {
        g += tv_gradient_step(x, cfg.lambda);
    } else {
        g += cauchy_gradient(x, CauchyParams(cfg.gamma));
    }
    return g;
}

double cost(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg) {
    Grid resid = op.apply(x);
    resid -= y;
    double f = norm2(resid);
    f = f * f;
    switch (cfg.mode) {
        case PenaltyMode::CauchyDtcwt:
            f += cauchy_penalty(x, CauchyParams(cfg.gamma));
            if (cfg.lambda > 0.0) f += cfg.lambda * pyramid_l1(dtcwt_forward(pad_for_dtcwt(x, cfg.levels), cfg.levels));
            break;
        case PenaltyMode::CauchyOnly:
            f += cauchy_penalty(x, CauchyParams(cfg.gamma));
            break;
        case PenaltyMode::TvOnly:
            f += tv_value(x, cfg.lambda);
            break;
    }
    return f;
}

Grid fb_step(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg) {
    Grid g = grad_g(x, y, op, cfg);
    Grid z = x;
    g *= cfg.mu;
    z -= g;
    if (cfg.mode != PenaltyMode::CauchyDtcwt || cfg.lambda <= 0.0) return z;
    WaveletPyramid w = dtcwt_forward(pad_for_dtcwt(z, cfg.levels), cfg.levels);
    w = soft_threshold(std::move(w), cfg.mu * cfg.lambda);
    return crop_from_dtcwt(dtcwt_inverse(w), x.width, x.height);
}

SolveResult fb_solve(const Grid& y, const ForwardOperator& op, SolverConfig cfg) {
    cfg = resolve_config(y, op, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&t0]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    SolveResult res;
    res.resolved = cfg;
    Grid x(op.domain_width(), op.domain_height());
    Grid cx(y.width, y.height);  // C applied to the zero start
    const bool shrink = cfg.mode == PenaltyMode::CauchyDtcwt && cfg.lambda > 0.0;
    for (int iter = 1; iter <= cfg.max_iter; ++iter) {
        Grid resid = cx;
        resid -= y;
        Grid g = op.adjoint(resid);
        g *= 2.0;
        if (cfg.mode == PenaltyMode::TvOnly)
            g += tv_gradient_step(x, cfg.lambda);
        else
            g += cauchy_gradient(x, CauchyParams(cfg.gamma));
        g *= cfg.mu;
        Grid xn = x;
        xn -= g;
        if (shrink) {
            WaveletPyramid w = dtcwt_forward(pad_for_dtcwt(xn, cfg.levels), cfg.levels);
            w = soft_threshold(std::move(w), cfg.mu * cfg.lambda);
            xn = crop_from_dtcwt(dtcwt_inverse(w), x.width, x.height);
        }
        if (!all_finite(xn)) throw NumericalFailure("non-finite iterate; reduce the step size");
        Grid d = xn;
        d -= x;
        double diff = norm2(d);
        double prev = norm2(x);
        double eps = (diff == 0.0) ? 0.0 : (prev == 0.0 ? std::numeric_limits<double>::infinity() : diff / prev);
        x = std::move(xn);
        cx = op.apply(x);
        Grid r2 = cx;
        r2 -= y;
        double c = norm2(r2);
        c = c * c;
        switch (cfg.mode) {
            case PenaltyMode::CauchyDtcwt:
                c += cauchy_penalty(x, CauchyParams(cfg.gamma));
                if (cfg.lambda > 0.0)
                    c += cfg.lambda * pyramid_l1(dtcwt_forward(pad_for_dtcwt(x, cfg.levels), cfg.levels));
                break;
            case PenaltyMode::CauchyOnly:
                c += cauchy_penalty(x, CauchyParams(cfg.gamma));
                break;
            case PenaltyMode::TvOnly:
                c += tv_value(x, cfg.lambda);
                break;
        }
        if (!std::isfinite(c)) throw NumericalFailure("non-finite cost; reduce the step size");
        res.trace.rows.push_back({iter, c, eps, elapsed()});
        if (diff == 0.0 || (prev > 0.0 && eps <= cfg.tol)) break;
    }
    res.x = std::move(x);
    return res;
}

}  // namespace sarwake
