#include <doctest.h>

#include <filesystem>

#include "sarwake/eval.hpp"
#include "sarwake/sim.hpp"

using namespace sarwake;

namespace {
DetectionReport make_report(const std::string& id, std::array<int, 5> validated) {
    DetectionReport r;
    r.id = id;
    for (int k = 0; k < kWakeSlots; ++k) {
        r.slots[k].kind = kWakeOrder[k];
        r.slots[k].validated = validated[k] != 0;
    }
    return r;
}

GroundTruthAnnotation make_truth(const std::string& id, std::array<int, 5> flags) {
    GroundTruthAnnotation a;
    a.id = id;
    a.flags = flags;
    return a;
}
}  // namespace

TEST_CASE("confusion counting over the five slots") {
    auto c = confusion(make_report("x", {1, 1, 0, 0, 0}), make_truth("x", {1, 1, 0, 0, 1}));
    CHECK(c.tp == 2);
    CHECK(c.tn == 2);
    CHECK(c.fn == 1);
    CHECK(c.fp == 0);

    c = confusion(make_report("x", {1, 1, 0, 0, 0}), make_truth("x", {1, 1, 0, 0, 0}));
    CHECK(c.tp == 2);
    CHECK(c.tn == 3);
    CHECK(c.fp == 0);
    CHECK(c.fn == 0);

    c = confusion(make_report("x", {1, 1, 1, 1, 1}), make_truth("x", {1, 1, 0, 0, 0}));
    CHECK(c.tp == 2);
    CHECK(c.fp == 3);

    CHECK_THROWS(confusion(make_report("a", {1, 0, 0, 0, 0}), make_truth("b", {1, 0, 0, 0, 0})));
}

TEST_CASE("metric formulas on simple counts") {
    ConfusionCounts c{9, 9, 1, 1};
    MetricSet m = metrics(c);
    CHECK(m.accuracy == doctest::Approx(0.9));
    CHECK(*m.f1 == doctest::Approx(0.9));
    CHECK(*m.lr_plus == doctest::Approx(9.0));
    CHECK(*m.youden_j == doctest::Approx(0.8));
}

TEST_CASE("published percentage row reproduces the derived metrics") {
    // fractional pseudo-counts straight from the reported percentage split
    ConfusionCounts c{41.82, 48.18, 5.45, 5.45};
    MetricSet m = metrics(c);
    CHECK(std::abs(*m.f1 - 0.88) <= 0.01);
    CHECK(std::abs(*m.lr_plus - 8.70) <= 0.01);
    CHECK(std::abs(*m.youden_j - 0.78) <= 0.01);
    // the reported headline accuracy (90.91%) is not consistent with the
    // percentage row itself, which sums to 100.90 and yields 90.00/100.90
    CHECK(m.accuracy == doctest::Approx(90.00 / 100.90).epsilon(1e-6));
}

TEST_CASE("undefined metric guards") {
    MetricSet m = metrics(ConfusionCounts{3, 5, 0, 2});
    CHECK_FALSE(m.lr_plus.has_value());  // specificity is exactly 1
    CHECK(m.f1.has_value());

    m = metrics(ConfusionCounts{0, 5, 0, 0});
    CHECK_FALSE(m.sensitivity.has_value());
    CHECK_FALSE(m.f1.has_value());
    CHECK_FALSE(m.youden_j.has_value());

    CHECK_THROWS(metrics(ConfusionCounts{}));
}

TEST_CASE("ratio metrics are scale invariant") {
    ConfusionCounts raw{9, 9, 1, 1};
    ConfusionCounts pct{45, 45, 5, 5};
    MetricSet a = metrics(raw), b = metrics(pct);
    CHECK(a.accuracy == doctest::Approx(b.accuracy));
    CHECK(*a.f1 == doctest::Approx(*b.f1));
    CHECK(*a.lr_plus == doctest::Approx(*b.lr_plus));
    CHECK(*a.youden_j == doctest::Approx(*b.youden_j));
}

TEST_CASE("confusion counts add over corpus partitions") {
    ConfusionCounts a{1, 2, 0, 2}, b{3, 1, 1, 0};
    ConfusionCounts sum = a;
    sum += b;
    CHECK(sum.tp == 4);
    CHECK(sum.tn == 3);
    CHECK(sum.fp == 1);
    CHECK(sum.fn == 2);
    CHECK(sum.total() == a.total() + b.total());
}

TEST_CASE("run_corpus aggregates per-image counts and is deterministic") {
    auto dir = (std::filesystem::temp_directory_path() / "eval_corpus").string();
    std::filesystem::remove_all(dir);
    CorpusParams cp;
    cp.count = 2;
    cp.base.width = cp.base.height = 64;
    cp.base.looks = 16;
    cp.master_seed = 31;
    make_corpus(cp, dir);

    SolverConfig scfg;
    scfg.tol = 5e-3;
    DetectConfig dcfg;
    auto res = run_corpus(dir, scfg, dcfg, {PenaltyMode::CauchyOnly}, 1);
    REQUIRE(res.size() == 1);
    REQUIRE(res[0].reports.size() == 2);
    CHECK(res[0].counts.total() == 10.0);

    ConfusionCounts manual;
    for (int i = 0; i < 2; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "scene_%03d", i);
        auto truth = load_annotation(dir + "/" + name + ".ann");
        manual += confusion(res[0].reports[i], truth);
    }
    CHECK(manual.tp == res[0].counts.tp);
    CHECK(manual.tn == res[0].counts.tn);
    CHECK(manual.fp == res[0].counts.fp);
    CHECK(manual.fn == res[0].counts.fn);

    auto res2 = run_corpus(dir, scfg, dcfg, {PenaltyMode::CauchyOnly}, 2);
    CHECK(comparison_csv(res) == comparison_csv(res2));
    CHECK(comparison_table(res) == comparison_table(res2));

    auto empty = (std::filesystem::temp_directory_path() / "eval_empty").string();
    std::filesystem::remove_all(empty);
    std::filesystem::create_directories(empty);
    CHECK_THROWS(run_corpus(empty, scfg, dcfg, {PenaltyMode::CauchyOnly}, 1));
}

TEST_CASE("comparison outputs carry all four headline metrics") {
    CorpusResult r;
    r.mode = PenaltyMode::CauchyDtcwt;
    r.counts = {9, 9, 1, 1};
    r.metric_set = metrics(r.counts);
    std::string csv = comparison_csv({r});
    CHECK(csv.find("mode,tp,tn,fp,fn,accuracy,f1,lr_plus,youden_j") == 0);
    CHECK(csv.find("cauchy_dtcwt") != std::string::npos);
    std::string table = comparison_table({r});
    for (const char* col : {"accuracy", "F1", "LR+", "J"}) CHECK(table.find(col) != std::string::npos);
}
