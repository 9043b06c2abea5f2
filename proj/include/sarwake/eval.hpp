#pragma once

#include <optional>

#include "sarwake/detect.hpp"
#include "sarwake/types.hpp"

namespace sarwake {

/// Per-slot confusion totals. Stored as reals so published percentage rows
/// can be fed in directly as fractional pseudo-counts.
struct ConfusionCounts {
    double tp = 0, tn = 0, fp = 0, fn = 0;

    double total() const { return tp + tn + fp + fn; }
    ConfusionCounts& operator+=(const ConfusionCounts& o) {
        tp += o.tp;
        tn += o.tn;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

struct MetricSet {
    double accuracy = 0.0;
    std::optional<double> sensitivity, specificity, f1, lr_plus, youden_j;
};

/// Per-slot comparison of validated flags against ground-truth visibility.
ConfusionCounts confusion(const DetectionReport& report, const GroundTruthAnnotation& truth);

/// Ratio metrics with division-by-zero cases flagged undefined.
MetricSet metrics(const ConfusionCounts& c);

struct CorpusResult {
    PenaltyMode mode;
    ConfusionCounts counts;
    MetricSet metric_set;
    std::vector<DetectionReport> reports;  // in sorted scene order
};

/// Runs detection over every annotated scene in `dir` for each mode and
/// aggregates per-slot confusion counts. `jobs` scenes run concurrently.
std::vector<CorpusResult> run_corpus(const std::string& dir, const SolverConfig& scfg, const DetectConfig& dcfg,
                                     const std::vector<PenaltyMode>& modes, int jobs = 1);

std::string comparison_csv(const std::vector<CorpusResult>& results);
std::string comparison_table(const std::vector<CorpusResult>& results);

}  // namespace sarwake
