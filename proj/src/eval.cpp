#include "sarwake/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <future>
#include <sstream>

namespace sarwake {

ConfusionCounts confusion(const DetectionReport& report, const GroundTruthAnnotation& truth) {
    if (report.id != truth.id)
        throw std::invalid_argument("confusion: report id '" + report.id + "' does not match truth id '" + truth.id + "'");
    ConfusionCounts c;
    for (int k = 0; k < kWakeSlots; ++k) {
        bool pred = report.slots[k].validated;
        bool vis = truth.flags[k] != 0;
        if (pred && vis)
            c.tp += 1;
        else if (!pred && !vis)
            c.tn += 1;
        else if (pred)
            c.fp += 1;
        else
            c.fn += 1;
    }
    return c;
}

MetricSet metrics(const ConfusionCounts& c) {
    if (!(c.total() > 0)) throw std::invalid_argument("metrics: empty counts");
    if (c.tp < 0 || c.tn < 0 || c.fp < 0 || c.fn < 0) throw std::invalid_argument("metrics: negative counts");
    MetricSet m;
    m.accuracy = (c.tp + c.tn) / c.total();
    if (c.tp + c.fn > 0) m.sensitivity = c.tp / (c.tp + c.fn);
    if (c.tn + c.fp > 0) m.specificity = c.tn / (c.tn + c.fp);
    if (2 * c.tp + c.fp + c.fn > 0) m.f1 = 2 * c.tp / (2 * c.tp + c.fp + c.fn);
    if (m.sensitivity && m.specificity && *m.specificity < 1.0)
        m.lr_plus = *m.sensitivity / (1.0 - *m.specificity);
    if (m.sensitivity && m.specificity) m.youden_j = *m.sensitivity + *m.specificity - 1.0;
    return m;
}

namespace {

struct Scene {
    std::string stem;
    std::string image_path;
    GroundTruthAnnotation truth;
};

std::vector<Scene> load_scenes(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw std::invalid_argument("corpus directory not found: " + dir);
    std::vector<Scene> scenes;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (!e.is_regular_file() || e.path().extension() != ".ann") continue;
        Scene s;
        s.stem = e.path().stem().string();
        fs::path img = e.path();
        img.replace_extension(".raw");
        if (!fs::exists(img)) {
            img.replace_extension(".pgm");
            if (!fs::exists(img)) throw std::invalid_argument("no image next to annotation " + e.path().string());
        }
        s.image_path = img.string();
        s.truth = load_annotation(e.path().string());
        scenes.push_back(std::move(s));
    }
    if (scenes.empty()) throw std::invalid_argument("corpus directory has no .ann annotations: " + dir);
    std::sort(scenes.begin(), scenes.end(), [](const Scene& a, const Scene& b) { return a.stem < b.stem; });
    return scenes;
}

}  // namespace

std::vector<CorpusResult> run_corpus(const std::string& dir, const SolverConfig& scfg, const DetectConfig& dcfg,
                                     const std::vector<PenaltyMode>& modes, int jobs) {
    if (modes.empty()) throw std::invalid_argument("run_corpus: no modes requested");
    if (jobs < 1) jobs = 1;
    auto scenes = load_scenes(dir);

    std::vector<CorpusResult> results;
    for (PenaltyMode mode : modes) {
        SolverConfig mcfg = scfg;
        mcfg.mode = mode;

        CorpusResult res;
        res.mode = mode;
        res.reports.resize(scenes.size());

        size_t next = 0;
        while (next < scenes.size()) {
            size_t batch = std::min<size_t>(jobs, scenes.size() - next);
            std::vector<std::future<DetectionReport>> futs;
            for (size_t b = 0; b < batch; ++b) {
                const Scene& sc = scenes[next + b];
                futs.push_back(std::async(std::launch::async, [&sc, &mcfg, &dcfg]() {
                    SarImage img = load_image(sc.image_path);
                    return detect_pipeline(img, mcfg, dcfg, sc.truth.id);
                }));
            }
            for (size_t b = 0; b < batch; ++b) res.reports[next + b] = futs[b].get();
            next += batch;
        }

        for (size_t i = 0; i < scenes.size(); ++i) res.counts += confusion(res.reports[i], scenes[i].truth);
        res.metric_set = metrics(res.counts);
        results.push_back(std::move(res));
    }
    return results;
}

namespace {
std::string opt_str(const std::optional<double>& v, const char* fmt) {
    if (!v) return "undefined";
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, *v);
    return buf;
}
}  // namespace

std::string comparison_csv(const std::vector<CorpusResult>& results) {
    std::ostringstream os;
    os << "mode,tp,tn,fp,fn,accuracy,f1,lr_plus,youden_j\n";
    for (const auto& r : results) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s,%.4f,%.4f,%.4f,%.4f,%.6f,", penalty_mode_name(r.mode),
                      r.counts.tp, r.counts.tn, r.counts.fp, r.counts.fn, r.metric_set.accuracy);
        os << buf << opt_str(r.metric_set.f1, "%.6f") << ',' << opt_str(r.metric_set.lr_plus, "%.6f") << ','
           << opt_str(r.metric_set.youden_j, "%.6f") << '\n';
    }
    return os.str();
}

std::string comparison_table(const std::vector<CorpusResult>& results) {
    std::ostringstream os;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%-14s %8s %8s %8s %8s %10s %10s %10s %10s\n", "mode", "TP", "TN", "FP",
                  "FN", "accuracy", "F1", "LR+", "J");
    os << buf;
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%-14s %8.2f %8.2f %8.2f %8.2f %10.4f %10s %10s %10s\n",
                      penalty_mode_name(r.mode), r.counts.tp, r.counts.tn, r.counts.fp, r.counts.fn,
                      r.metric_set.accuracy, opt_str(r.metric_set.f1, "%.4f").c_str(),
                      opt_str(r.metric_set.lr_plus, "%.4f").c_str(),
                      opt_str(r.metric_set.youden_j, "%.4f").c_str());
        os << buf;
    }
    return os.str();
}

}  // namespace sarwake
