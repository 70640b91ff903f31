#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "fde/config.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    int workers = 0;
    std::string log_level = "info";
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
    sub->add_option("--workers", opts.workers, "worker thread count (overrides config)");
    sub->add_option("--log-level", opts.log_level, "quiet|info|debug")
        ->check(CLI::IsMember({"quiet", "info", "debug"}));
}

int run(const CommonOpts& opts, fde::Pipeline pipeline) {
    try {
        fde::ExperimentConfig cfg = fde::load_config(opts.config_path);
        cfg.pipeline = pipeline;
        if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
        if (opts.workers > 0) cfg.workers = opts.workers;
        if (opts.log_level == "debug") {
            std::printf("config: %s\n", opts.config_path.c_str());
            std::printf("out_dir: %s  workers: %d  taus: %zu\n", cfg.out_dir.c_str(),
                        cfg.workers, cfg.tau_schedule.size());
        }
        return fde::run_experiment(cfg);
    } catch (const fde::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enclosure-method toolkit for variable-order fractional diffusion"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* sweep = app.add_subcommand("sweep", "compute indicator samples over a tau schedule");
    auto* reconstruct =
        app.add_subcommand("reconstruct", "sweep plus distance and jump-sign extraction");
    auto* threshold =
        app.add_subcommand("threshold", "reconstruct plus threshold classification");
    auto* verify =
        app.add_subcommand("verify-oracles", "cross-check closed forms against quadrature");
    auto* roundtrip = app.add_subcommand(
        "roundtrip", "synthesize time-domain data and compare both indicator paths");
    for (auto* sub : {sweep, reconstruct, threshold, verify, roundtrip}) add_common(sub, opts);

    CLI11_PARSE(app, argc, argv);

    if (sweep->parsed()) return run(opts, fde::Pipeline::sweep);
    if (reconstruct->parsed()) return run(opts, fde::Pipeline::reconstruct);
    if (threshold->parsed()) return run(opts, fde::Pipeline::threshold);
    if (verify->parsed()) return run(opts, fde::Pipeline::verify_oracles);
    return run(opts, fde::Pipeline::roundtrip);
}
