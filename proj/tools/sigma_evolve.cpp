#include <iostream>

#include "CLI11.hpp"
#include "sevo/cli.hpp"

int main(int argc, char** argv) {
    using namespace sevo::cli;
    CLI::App app{"sigma_evolve: linear and semilinear damped sigma-evolution experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;
    app.add_option("--config", config_path, "JSON experiment configuration")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed for random data");
    app.add_option("--threads", threads, "worker threads (default: SIGMA_EVOLVE_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app.fallthrough();
    for (const auto& name : command_names()) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    RunContext ctx;
    ctx.out_dir = out_dir;
    ctx.seed = seed;
    nlohmann::json cfg;
    try {
        ctx.threads = resolve_threads(threads);
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    return dispatch(command, cfg, ctx, std::cout, std::cerr);
}
