#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pat/boundary.hpp"
#include "pat/medium.hpp"
#include "pat/phantom.hpp"
#include "pat/sqh.hpp"

namespace pat {

enum class Method { TR, Spectral, SQH, CNN };

std::string method_name(Method m);
Method parse_method(const std::string& name);

/// One reconstruction experiment. JSON schema: see README ("Configuration").
struct ExperimentConfig {
    std::string name = "experiment";
    PhantomSpec phantom;
    SoundSpeedPreset sound_speed = SoundSpeedPreset::one_d();
    DampingSpec damping = DampingSpec::exp_decay(1.0);
    GridSpec grid = GridSpec::line(-1.0, 1.0, 200);  ///< reconstruction grid
    TimeGrid times{1.0, 200};
    GridSpec data_grid = GridSpec::line(-1.0, 1.0, 50);  ///< free-space data simulation
    TimeGrid data_times{1.0, 50};
    double noise = 0.1;  ///< relative to the RMS of the clean record
    std::uint64_t seed = 2024;
    SqhParams sqh;
    std::vector<Method> methods{Method::TR, Method::SQH};
    bool sqh_init_tr = true;         ///< seed SQH with TR (+ CNN guess); false = zeros
    std::string cnn_guess;           ///< FieldFile with a learned guess on `grid` (optional)
    int spectral_modes = 0;          ///< 0 = default_modes(grid)
    std::filesystem::path output_dir = "out";

    /// Presets exist, grids agree, method prerequisites hold.
    void validate() const;
};

/// Test cases 1-6 (1D: Gaussian, characteristic, mixed; 2D: Gaussian, disk, heart-lung).
ExperimentConfig preset_case(int number);

/// Parses JSON text. A "case" key starts from that preset; other keys override it.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string dump_config(const ExperimentConfig& cfg);

PhantomSpec parse_phantom(const std::string& json_text);

Medium make_medium(const ExperimentConfig& cfg, const GridSpec& grid);

struct MethodResult {
    Method method = Method::TR;
    ScalarField p0;
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

struct ExperimentReport {
    ScalarField truth;
    BoundaryRecord data;
    std::vector<MethodResult> results;
    std::optional<SqhRun> sqh;

    const MethodResult& result(Method m) const;
};

/// Reconstructs with every requested method and writes into cfg.output_dir:
/// config.json, truth/data/<method> FieldFiles, metrics.csv, sqh_log.csv, profile.dat.
ExperimentReport run_testcase(const ExperimentConfig& cfg, bool write_files = true);

/// Same formatting as metrics.csv.
std::string metrics_table(const ExperimentReport& report);

enum class PhantomFamily { Gaussian, Characteristic, Mixed };

/// Noiseless (g, p0) pairs for learned initial guesses on cfg.grid / cfg.times.
/// Families in the ratio 150 : 350 : 250; Gaussian inverse widths w give sigma = 1/sqrt(2w).
/// Writes sample_NNNN_{g,p0}.json/.bin and manifest.json; returns the family of each sample.
std::vector<PhantomFamily> export_training_pairs(const ExperimentConfig& cfg, int n_samples,
                                                 const std::filesystem::path& out_dir, std::uint64_t seed);

}  // namespace pat
