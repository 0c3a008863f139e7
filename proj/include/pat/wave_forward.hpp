#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pat/boundary.hpp"
#include "pat/kernels.hpp"
#include "pat/medium.hpp"
#include "pat/phantom.hpp"

namespace pat {

struct SolverOptions {
    double cfl_safety = 0.5;  ///< c_max dt / dx <= cfl_safety / sqrt(dim) on the internal step
    int substeps = 0;         ///< internal steps per TimeGrid interval; 0 = smallest CFL-stable count
    kernels::Backend backend = kernels::Backend::OpenMP;
    bool store_history = false;  ///< keep p restricted to Omega at every TimeGrid sample
};

/// Omega embedded in a padded computational grid with homogeneous Dirichlet outer boundary.
/// The padding keeps the spacing of Omega, so Omega nodes are padded-grid nodes.
/// pad_width == 0 gives the bounded (Dirichlet on dOmega) problem.
struct Domain {
    GridSpec omega;
    GridSpec grid;  ///< computational grid
    std::array<int, 2> offset{0, 0};
    Medium medium;  ///< medium on `grid`; c = 1 outside Omega
    SensorLayout sensors;  ///< on omega
    std::vector<std::size_t> sensor_nodes;  ///< sensor indices in `grid`

    std::size_t to_grid(std::size_t omega_idx) const;
    ScalarField embed(const ScalarField& on_omega) const;
    ScalarField restrict_to_omega(const ScalarField& on_grid) const;
};

/// Throws ConfigError when 0 < pad_width < c_max T (reflections would re-enter Omega).
Domain make_domain(const Medium& medium, double pad_width, double t_final);

/// Internal steps per TimeGrid interval for the given grid and speed bound.
int choose_substeps(const TimeGrid& tg, double c_max, const GridSpec& grid, const SolverOptions& opt);

struct WaveState {
    ScalarField p_prev;
    ScalarField p_curr;
    int step_index = 0;  ///< internal step of p_curr
    double time = 0.0;
    double dt = 0.0;     ///< internal step size
};

using StepObserver = std::function<void(const WaveState&)>;

struct ForwardResult {
    std::vector<ScalarField> history;  ///< on Omega, one per TimeGrid sample (if requested)
    BoundaryRecord g;
    int substeps = 1;
};

/// Leapfrog integration of p_tt + gamma(t) p_t - c^2 Lap p = 0, p(0) = p0, p_t(0) = 0,
/// on the padded domain. The observer (optional) sees every internal step starting at step 1.
ForwardResult simulate_forward(const ScalarField& p0, const Medium& medium, const TimeGrid& tg, double pad_width,
                               const SolverOptions& opt = {}, const StepObserver& observer = {});

/// Simulates on (data_grid, data_tg), interpolates the sensor traces onto the sensors of
/// target_grid (along dOmega) and onto target_tg (in time), then adds noise.
/// The medium's speed is resampled onto data_grid.
BoundaryRecord generate_observations(const PhantomSpec& p0_spec, const Medium& medium, const GridSpec& data_grid,
                                     const TimeGrid& data_tg, const GridSpec& target_grid, const TimeGrid& target_tg,
                                     double noise_level, std::uint64_t seed, const SolverOptions& opt = {});

/// g + level * RMS(g) * N(0, 1), i.i.d. per sample.
BoundaryRecord add_noise(const BoundaryRecord& g, double level, std::uint64_t seed);

/// 1/2 sum [c^-2 ((p^n - p^{n-1})/dt)^2 + grad_h p^n . grad_h p^{n-1}] * cell_volume.
/// The staggered product makes this exactly non-increasing under the damped leapfrog step
/// (positive under the CFL limit); |grad_h (p^n + p^{n-1})/2|^2 is not, for rough data.
/// `medium` must live on the state's grid (use Domain::medium for padded runs).
double discrete_energy(const WaveState& state, const Medium& medium);

}  // namespace pat
