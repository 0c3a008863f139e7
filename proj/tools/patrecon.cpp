// Command-line driver: data generation, reconstruction, metrics, datasets.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pat/errors.hpp"
#include "pat/experiment.hpp"
#include "pat/field_io.hpp"
#include "pat/metrics.hpp"
#include "pat/spectral.hpp"
#include "pat/time_reversal.hpp"

using namespace pat;
namespace fs = std::filesystem;

namespace {

std::string read_text(const std::string& path)
{
    std::ifstream is(path);
    require(static_cast<bool>(is), "cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// --case N with an optional override file
ExperimentConfig resolve_config(const std::string& path, int case_number)
{
    nlohmann::json j = nlohmann::json::object();
    if (!path.empty()) {
        try {
            j = nlohmann::json::parse(read_text(path));
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("config: malformed JSON: ") + e.what());
        }
    }
    if (case_number > 0) {
        j["case"] = case_number;
    }
    require(!j.empty(), "need --config or --case");
    return parse_config(j.dump());
}

void apply_common(ExperimentConfig& cfg, const CLI::Option* seed_opt, std::uint64_t seed, const std::string& out)
{
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (!out.empty()) cfg.output_dir = out;
}

void print_report(const ExperimentReport& rep, const ExperimentConfig& cfg)
{
    std::cout << metrics_table(rep);
    if (rep.sqh) {
        std::fprintf(stderr, "sqh: %d accepted, %d rejected, J %.6e -> %.6e, max eps %.3g%s\n", rep.sqh->accepted_steps,
                     rep.sqh->inner_rejections, rep.sqh->initial_J, rep.sqh->final_J, rep.sqh->max_eps,
                     rep.sqh->converged ? "" : " (k_max reached)");
    }
    std::fprintf(stderr, "wrote %s\n", cfg.output_dir.string().c_str());
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Photoacoustic initial-pressure reconstruction in damped media"};
    app.require_subcommand(1);

    std::string config_path, out;
    std::uint64_t seed = 0;
    int case_number = 0;

    auto* sim = app.add_subcommand("simulate", "Generate noisy boundary data for a config");
    sim->add_option("--config", config_path, "Experiment config (JSON)");
    sim->add_option("--case", case_number, "Start from test case 1..6")->check(CLI::Range(1, 6));
    auto* sim_seed = sim->add_option("--seed", seed, "Noise seed");
    sim->add_option("--out", out, "Output directory");

    std::string method, data_path, init_path, out_file;
    auto* rec = app.add_subcommand("reconstruct", "Reconstruct p0 from a boundary record");
    rec->add_option("--method", method, "tr | spectral | sqh")->required()->check(CLI::IsMember({"tr", "spectral", "sqh"}));
    rec->add_option("--data", data_path, "Boundary record FieldFile")->required();
    rec->add_option("--config", config_path, "Config supplying medium, SQH and spectral settings");
    rec->add_option("--case", case_number, "Use the settings of test case 1..6")->check(CLI::Range(1, 6));
    rec->add_option("--init", init_path, "Initial guess FieldFile for sqh (default: time reversal)");
    rec->add_option("--out", out_file, "Output FieldFile header")->required();

    std::string a_path, b_path;
    auto* met = app.add_subcommand("metrics", "MSE, PSNR and SSIM between two FieldFiles");
    met->add_option("reconstruction", a_path)->required();
    met->add_option("truth", b_path)->required();

    int n_samples = 750;
    auto* gen = app.add_subcommand("gen-dataset", "Export noiseless (g, p0) training pairs");
    gen->add_option("--config", config_path, "Config supplying grids and medium");
    gen->add_option("--case", case_number, "Use the grids of test case 1..6")->check(CLI::Range(1, 6));
    gen->add_option("-n,--samples", n_samples, "Number of samples")->check(CLI::PositiveNumber);
    auto* gen_seed = gen->add_option("--seed", seed, "Sampling seed");
    gen->add_option("--out", out, "Output directory")->required();

    auto* run = app.add_subcommand("run-testcase", "Run a full test case and write fields and metrics");
    run->add_option("--case", case_number, "Test case 1..6")->check(CLI::Range(1, 6));
    run->add_option("--config", config_path, "Config or overrides for --case");
    auto* run_seed = run->add_option("--seed", seed, "Noise seed");
    run->add_option("--out", out, "Output directory");

    std::string guess_a, guess_b;
    auto* comb = app.add_subcommand("combine-guess", "Sum two FieldFiles (time reversal + learned guess)");
    comb->add_option("first", guess_a)->required();
    comb->add_option("second", guess_b)->required();
    comb->add_option("--out", out_file, "Output FieldFile header")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim) {
            ExperimentConfig cfg = resolve_config(config_path, case_number);
            apply_common(cfg, sim_seed, seed, out);
            const Medium medium = make_medium(cfg, cfg.grid);
            const auto g = generate_observations(cfg.phantom, medium, cfg.data_grid, cfg.data_times, cfg.grid,
                                                 cfg.times, cfg.noise, cfg.seed);
            fs::create_directories(cfg.output_dir);
            std::ofstream(cfg.output_dir / "config.json") << dump_config(cfg);
            write_field(cfg.output_dir / "truth.json", build_phantom(cfg.phantom, cfg.grid), "truth");
            write_record(cfg.output_dir / "data.json", g, "g");
            std::fprintf(stderr, "wrote %s\n", cfg.output_dir.string().c_str());
        } else if (*rec) {
            const BoundaryRecord g = read_record(data_path);
            ExperimentConfig cfg = config_path.empty() && case_number == 0 ? ExperimentConfig{}
                                                                           : resolve_config(config_path, case_number);
            require(cfg.grid.dim == g.grid.dim, "reconstruct: config and data dimensions differ");
            cfg.grid = g.grid;
            cfg.times = g.times;
            const Medium medium = make_medium(cfg, g.grid);
            ScalarField p0;
            if (method == "tr") {
                p0 = time_reverse(g, medium, g.times, g.grid);
            } else if (method == "spectral") {
                require(cfg.damping.is_constant(), "reconstruct: spectral needs a constant damping coefficient");
                const int K = cfg.spectral_modes > 0 ? cfg.spectral_modes : default_modes(g.grid);
                p0 = reconstruct_series(g, cfg.damping.value, medium, g.grid, K);
            } else {
                ScalarField init = init_path.empty() ? time_reverse(g, medium, g.times, g.grid) : read_field(init_path);
                require(init.grid == g.grid, "reconstruct: initial guess is not on the data grid");
                for (double& v : init.values) v = std::clamp(v, cfg.sqh.p_lo, cfg.sqh.p_hi);
                const SqhRun r = sqh_solve(g, medium, cfg.sqh, init);
                std::fprintf(stderr, "sqh: %d accepted, J %.6e -> %.6e%s\n", r.accepted_steps, r.initial_J, r.final_J,
                             r.converged ? "" : " (k_max reached)");
                p0 = r.final_p0;
            }
            write_field(out_file, p0, method);
        } else if (*met) {
            const ScalarField a = read_field(a_path);
            const ScalarField b = read_field(b_path);
            std::printf("mse,psnr,ssim\n%.17g,%.17g,%.17g\n", mse(a, b), psnr(a, b), ssim(a, b));
        } else if (*gen) {
            ExperimentConfig cfg = resolve_config(config_path, case_number > 0 || !config_path.empty() ? case_number : 1);
            const auto fam = export_training_pairs(cfg, n_samples, out, gen_seed->count() ? seed : cfg.seed);
            std::fprintf(stderr, "wrote %zu samples to %s\n", fam.size(), out.c_str());
        } else if (*run) {
            ExperimentConfig cfg = resolve_config(config_path, case_number);
            apply_common(cfg, run_seed, seed, out);
            print_report(run_testcase(cfg), cfg);
        } else if (*comb) {
            const ScalarField a = read_field(guess_a);
            const ScalarField b = read_field(guess_b);
            require(a.grid == b.grid, "combine-guess: fields live on different grids");
            write_field(out_file, a + b, "guess");
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
