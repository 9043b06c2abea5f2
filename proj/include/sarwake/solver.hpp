#pragma once

#include <cstdint>
#include <string>

#include "sarwake/dtcwt.hpp"
#include "sarwake/grid.hpp"
#include "sarwake/penalties.hpp"
#include "sarwake/radon.hpp"

namespace sarwake {

/// Thrown when an iteration produces non-finite values (step size too large).
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear forward model mapping the Radon-domain unknown to image space.
class ForwardOperator {
public:
    virtual ~ForwardOperator() = default;
    virtual Grid apply(const Grid& x) const = 0;
    virtual Grid adjoint(const Grid& y) const = 0;
    virtual int domain_width() const = 0;
    virtual int domain_height() const = 0;
    /// ||C||^2 estimate via power iteration on C^T C.
    double norm_squared(int iterations, uint64_t seed) const;
};

class RadonOperator : public ForwardOperator {
public:
    explicit RadonOperator(const RadonGeometry& geo) : geo_(geo) { geo_.validate(); }
    Grid apply(const Grid& x) const override;
    Grid adjoint(const Grid& y) const override;
    int domain_width() const override { return geo_.num_offsets; }
    int domain_height() const override { return geo_.num_angles; }
    const RadonGeometry& geometry() const { return geo_; }

private:
    RadonGeometry geo_;
};

/// Test hook: C = identity on a w x h grid.
class IdentityOperator : public ForwardOperator {
public:
    IdentityOperator(int w, int h) : w_(w), h_(h) {}
    Grid apply(const Grid& x) const override { return x; }
    Grid adjoint(const Grid& y) const override { return y; }
    int domain_width() const override { return w_; }
    int domain_height() const override { return h_; }

private:
    int w_, h_;
};

enum class PenaltyMode { CauchyDtcwt, CauchyOnly, TvOnly };

const char* penalty_mode_name(PenaltyMode m);
PenaltyMode parse_penalty_mode(const std::string& s);

struct SolverConfig {
    double gamma = 0.0;    // <= 0: auto, 0.1 * max|C^T Y|
    double lambda = -1.0;  // < 0: auto, 0.05 * max |B(C^T Y)| coefficient magnitude
    double mu = 0.0;       // <= 0: auto from the Lipschitz bound of grad g
    int max_iter = 500;
    double tol = 5e-3;
    PenaltyMode mode = PenaltyMode::CauchyDtcwt;
    int levels = 3;
    int norm_iterations = 30;
    uint64_t norm_seed = 0x5a17;
};

struct SolverTrace {
    struct Row {
        int iteration;
        double cost;
        double epsilon;
        double seconds;
    };
    std::vector<Row> rows;
    std::string to_csv() const;
};

struct SolveResult {
    Grid x;
    SolverTrace trace;
    SolverConfig resolved;  // auto fields replaced by the values used
};

/// Fills in auto gamma/lambda/mu from the observation and operator.
SolverConfig resolve_config(const Grid& y, const ForwardOperator& op, SolverConfig cfg);

/// grad of g(X) = ||Y - CX||^2 + (Cauchy or smoothed-TV penalty term).
Grid grad_g(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg);

/// Full composite objective for the configured penalty mode.
double cost(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg);

/// One forward-backward update from x (gradient step, then the wavelet
/// shrinkage backward step where the mode uses it).
Grid fb_step(const Grid& x, const Grid& y, const ForwardOperator& op, const SolverConfig& cfg);

/// Forward-backward iteration from X = 0; cfg must be resolved or resolvable.
SolveResult fb_solve(const Grid& y, const ForwardOperator& op, SolverConfig cfg);

/// Zero-pads a grid to wavelet-friendly dimensions for the given level count.
Grid pad_for_dtcwt(const Grid& x, int levels);
Grid crop_from_dtcwt(const Grid& padded, int width, int height);

}  // namespace sarwake
