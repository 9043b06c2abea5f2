#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sarwake {

/// The five per-image wake slots, in annotation column order.
enum class WakeType { Turbulent = 0, NarrowV1, NarrowV2, Kelvin1, Kelvin2 };

constexpr int kWakeSlots = 5;
constexpr std::array<WakeType, kWakeSlots> kWakeOrder = {
    WakeType::Turbulent, WakeType::NarrowV1, WakeType::NarrowV2,
    WakeType::Kelvin1, WakeType::Kelvin2};

const char* wake_name(WakeType t);

enum class HalfLineSide { Positive = 0, Negative };

struct WakeHypothesis {
    WakeType kind = WakeType::Turbulent;
    double r = 0.0;          // signed perpendicular offset from image centre, pixels
    double theta = 0.0;      // degrees in [0, 180)
    HalfLineSide side = HalfLineSide::Positive;
    double merit = 0.0;      // intensity merit index of the chosen half-line
    bool validated = false;
};

struct TrueWake {
    WakeType kind;
    double r;
    double theta;
    HalfLineSide side;
    double contrast;
};

struct GroundTruthAnnotation {
    std::string id;
    std::array<int, kWakeSlots> flags{};  // 1 = visible
    std::vector<TrueWake> wakes;          // only for simulated scenes
};

struct SolverDiagnostics {
    int iterations = 0;
    double final_epsilon = 0.0;
    double final_cost = 0.0;
};

struct DetectionReport {
    std::string id;
    std::array<WakeHypothesis, kWakeSlots> slots{};
    SolverDiagnostics diag;
};

GroundTruthAnnotation load_annotation(const std::string& path);
void save_annotation(const GroundTruthAnnotation& a, const std::string& path);

std::string format_report(const DetectionReport& r);
DetectionReport parse_report(const std::string& text);

}  // namespace sarwake
