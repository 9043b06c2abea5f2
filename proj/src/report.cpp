#include <fstream>
#include <sstream>

#include "sarwake/image.hpp"
#include "sarwake/types.hpp"

namespace sarwake {

const char* wake_name(WakeType t) {
    switch (t) {
        case WakeType::Turbulent: return "T";
        case WakeType::NarrowV1: return "N1";
        case WakeType::NarrowV2: return "N2";
        case WakeType::Kelvin1: return "K1";
        case WakeType::Kelvin2: return "K2";
    }
    return "?";
}

namespace {
const char* side_name(HalfLineSide s) { return s == HalfLineSide::Positive ? "pos" : "neg"; }

HalfLineSide parse_side(const std::string& s) {
    if (s == "pos") return HalfLineSide::Positive;
    if (s == "neg") return HalfLineSide::Negative;
    throw std::runtime_error("bad half-line side: " + s);
}

WakeType parse_kind(const std::string& s) {
    for (WakeType t : kWakeOrder)
        if (s == wake_name(t)) return t;
    throw std::runtime_error("bad wake type: " + s);
}
}  // namespace

GroundTruthAnnotation load_annotation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    GroundTruthAnnotation a;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "id") {
            ls >> a.id;
        } else if (key == "flags") {
            for (int& f : a.flags)
                if (!(ls >> f) || (f != 0 && f != 1))
                    throw std::runtime_error(path + ": flags must be five 0/1 values");
        } else if (key == "wake") {
            TrueWake w{};
            std::string kind, side;
            if (!(ls >> kind >> w.r >> w.theta >> side >> w.contrast))
                throw std::runtime_error(path + ": malformed wake line");
            w.kind = parse_kind(kind);
            w.side = parse_side(side);
            a.wakes.push_back(w);
        } else {
            throw std::runtime_error(path + ": unknown annotation key '" + key + "'");
        }
    }
    return a;
}

void save_annotation(const GroundTruthAnnotation& a, const std::string& path) {
    std::ostringstream out;
    out << "id " << a.id << "\n";
    out << "flags";
    for (int f : a.flags) out << " " << f;
    out << "\n";
    char buf[160];
    for (const TrueWake& w : a.wakes) {
        std::snprintf(buf, sizeof buf, "wake %s %.6f %.6f %s %.6f\n", wake_name(w.kind), w.r,
                      w.theta, side_name(w.side), w.contrast);
        out << buf;
    }
    atomic_write_text(path, out.str());
}

std::string format_report(const DetectionReport& r) {
    std::ostringstream out;
    out << "image " << r.id << "\n";
    char buf[200];
    for (const WakeHypothesis& h : r.slots) {
        std::snprintf(buf, sizeof buf, "slot %s %.4f %.4f %s %.6f %d\n", wake_name(h.kind), h.r,
                      h.theta, side_name(h.side), h.merit, h.validated ? 1 : 0);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "diag %d %.8e %.8e\n", r.diag.iterations, r.diag.final_epsilon,
                  r.diag.final_cost);
    out << buf;
    return out.str();
}

DetectionReport parse_report(const std::string& text) {
    std::istringstream in(text);
    DetectionReport r;
    std::string line;
    int slot = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "image") {
            ls >> r.id;
        } else if (key == "slot") {
            if (slot >= kWakeSlots) throw std::runtime_error("report has more than five slots");
            WakeHypothesis h;
            std::string kind, side;
            int valid = 0;
            if (!(ls >> kind >> h.r >> h.theta >> side >> h.merit >> valid))
                throw std::runtime_error("malformed report slot line");
            h.kind = parse_kind(kind);
            h.side = parse_side(side);
            h.validated = valid != 0;
            r.slots[slot++] = h;
        } else if (key == "diag") {
            ls >> r.diag.iterations >> r.diag.final_epsilon >> r.diag.final_cost;
        }
    }
    if (slot != kWakeSlots) throw std::runtime_error("report must have exactly five slots");
    return r;
}

}  // namespace sarwake
