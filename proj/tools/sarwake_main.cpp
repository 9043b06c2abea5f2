#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "sarwake/detect.hpp"
#include "sarwake/eval.hpp"
#include "sarwake/image.hpp"
#include "sarwake/sim.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct SolverFlags {
    sarwake::SolverConfig cfg;
    std::string penalty = "cauchy_dtcwt";

    void attach(CLI::App* app) {
        app->add_option("--gamma", cfg.gamma, "Cauchy scale; <= 0 selects 0.1 * max|C^T Y|")->capture_default_str();
        app->add_option("--lambda", cfg.lambda, "wavelet sparsity weight; < 0 selects 0.05 * max coefficient magnitude")
            ->capture_default_str();
        app->add_option("--mu", cfg.mu, "step size; <= 0 selects 0.9 / Lipschitz bound")->capture_default_str();
        app->add_option("--max-iter", cfg.max_iter, "iteration cap")->capture_default_str();
        app->add_option("--tol", cfg.tol, "relative-change stopping threshold")->capture_default_str();
        app->add_option("--levels", cfg.levels, "wavelet decomposition levels")->capture_default_str();
        app->add_option("--penalty", penalty, "cauchy_dtcwt | cauchy_only | tv_only")->capture_default_str();
    }
    sarwake::SolverConfig resolve() const {
        sarwake::SolverConfig c = cfg;
        c.mode = sarwake::parse_penalty_mode(penalty);
        return c;
    }
};

struct DetectFlags {
    sarwake::DetectConfig cfg;

    void attach(CLI::App* app) {
        app->add_option("--mask-radius", cfg.mask_radius_frac, "ship mask radius as a fraction of min dim")
            ->capture_default_str();
        app->add_option("--margin", cfg.merit_margin, "merit threshold for bright wake arms")->capture_default_str();
        app->add_option("--turbulent-threshold", cfg.turbulent_threshold, "turbulent merit must fall below this")
            ->capture_default_str();
        app->add_flag("--turbulent-accept-any", cfg.turbulent_accept_any, "accept the turbulent slot at any merit");
        app->add_option("--prominence", cfg.peak_prominence_sigma, "peak prominence in sinogram standard deviations")
            ->capture_default_str();
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radon-domain ship wake detector"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from an INI/TOML file");

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a ground-truthed synthetic scene corpus");
    sarwake::CorpusParams cp;
    std::string sim_out;
    sim->add_option("--out", sim_out, "output directory")->required();
    sim->add_option("-n,--count", cp.count, "number of scenes")->capture_default_str();
    sim->add_option("--seed", cp.master_seed, "master seed")->capture_default_str();
    sim->add_option("--width", cp.base.width, "scene width")->capture_default_str();
    sim->add_option("--height", cp.base.height, "scene height")->capture_default_str();
    sim->add_option("--looks", cp.base.looks, "speckle looks")->capture_default_str();
    sim->add_option("--wake-width", cp.base.wake_width, "wake band width, pixels")->capture_default_str();
    sim->add_option("--turbulent-contrast", cp.turbulent_contrast_min, "lower turbulent contrast bound")
        ->capture_default_str();
    sim->add_option("--turbulent-contrast-max", cp.turbulent_contrast_max, "upper turbulent contrast bound")
        ->capture_default_str();
    sim->add_option("--narrow-contrast", cp.narrow_contrast_min, "lower narrow-V contrast bound")->capture_default_str();
    sim->add_option("--narrow-contrast-max", cp.narrow_contrast_max, "upper narrow-V contrast bound")
        ->capture_default_str();
    sim->add_option("--kelvin-contrast", cp.kelvin_contrast_min, "lower Kelvin contrast bound")->capture_default_str();
    sim->add_option("--kelvin-contrast-max", cp.kelvin_contrast_max, "upper Kelvin contrast bound")
        ->capture_default_str();
    sim->add_option("--kelvin1-prob", cp.kelvin1_prob, "probability a scene shows the first Kelvin arm")
        ->capture_default_str();
    sim->add_option("--kelvin2-prob", cp.kelvin2_prob, "probability a scene shows the second Kelvin arm")
        ->capture_default_str();

    // detect
    auto* det = app.add_subcommand("detect", "run the wake detection pipeline on one image");
    std::string det_image, det_report, det_overlay, det_radon;
    SolverFlags det_solver;
    DetectFlags det_detect;
    det->add_option("image", det_image, "input image (.raw or .pgm)")->required();
    det->add_option("--report", det_report, "write the detection report here (default: stdout only)");
    det->add_option("--overlay", det_overlay, "write a PGM with detected lines burned in");
    det->add_option("--debug-radon", det_radon, "write the solved sinogram here");
    det_solver.attach(det);
    det_detect.attach(det);

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "detect over a corpus and compare penalty modes");
    std::string ev_dir, ev_csv;
    std::vector<std::string> ev_modes = {"cauchy_dtcwt", "cauchy_only", "tv_only"};
    int ev_jobs = 1;
    SolverFlags ev_solver;
    DetectFlags ev_detect;
    ev->add_option("corpus", ev_dir, "corpus directory")->required();
    ev->add_option("--modes", ev_modes, "penalty modes to compare")->capture_default_str();
    ev->add_option("--out", ev_csv, "write the comparison table as CSV here");
    ev->add_option("--jobs", ev_jobs, "scenes processed concurrently")->capture_default_str();
    ev_solver.attach(ev);
    ev_detect.attach(ev);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (sim->parsed()) {
            sarwake::make_corpus(cp, sim_out);
            std::cout << "wrote " << cp.count << " scenes to " << sim_out << "\n";
            return 0;
        }
        if (det->parsed()) {
            sarwake::SarImage img = sarwake::load_image(det_image);
            sarwake::Sinogram sino;
            std::string id = std::filesystem::path(det_image).stem().string();
            sarwake::DetectionReport rep = sarwake::detect_pipeline(img, det_solver.resolve(), det_detect.cfg, id,
                                                                    det_radon.empty() ? nullptr : &sino);
            std::string text = sarwake::format_report(rep);
            std::cout << text;
            if (!det_report.empty()) sarwake::atomic_write_text(det_report, text);
            if (!det_overlay.empty()) sarwake::save_image_pgm(sarwake::render_overlay(img, rep), det_overlay);
            if (!det_radon.empty()) sarwake::save_sinogram(sino, det_radon);
            return 0;
        }
        if (ev->parsed()) {
            std::vector<sarwake::PenaltyMode> modes;
            for (const auto& m : ev_modes) modes.push_back(sarwake::parse_penalty_mode(m));
            auto results = sarwake::run_corpus(ev_dir, ev_solver.resolve(), ev_detect.cfg, modes, ev_jobs);
            std::cout << sarwake::comparison_table(results);
            if (!ev_csv.empty()) sarwake::atomic_write_text(ev_csv, sarwake::comparison_csv(results));
            return 0;
        }
    } catch (const sarwake::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
