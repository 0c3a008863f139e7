#include "pat/wave_forward.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "pat/errors.hpp"
#include "pat/resample.hpp"

namespace pat {

std::size_t Domain::to_grid(std::size_t omega_idx) const
{
    if (omega.dim == 1) {
        return omega_idx + offset[0];
    }
    const int i0 = static_cast<int>(omega_idx / omega.n[1]);
    const int i1 = static_cast<int>(omega_idx % omega.n[1]);
    return grid.index(i0 + offset[0], i1 + offset[1]);
}

ScalarField Domain::embed(const ScalarField& on_omega) const
{
    require(on_omega.grid == omega, "domain: field is not on the Omega grid");
    ScalarField out(grid, 0.0);
    for (std::size_t i = 0; i < on_omega.size(); ++i) out[to_grid(i)] = on_omega[i];
    return out;
}

ScalarField Domain::restrict_to_omega(const ScalarField& on_grid) const
{
    require(on_grid.grid == grid, "domain: field is not on the computational grid");
    ScalarField out(omega);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = on_grid[to_grid(i)];
    return out;
}

Domain make_domain(const Medium& medium, double pad_width, double t_final)
{
    const GridSpec& omega = medium.sound_speed.grid;
    omega.validate();
    require(pad_width >= 0.0, "domain: pad_width must be non-negative");
    if (pad_width > 0.0) {
        require(pad_width >= medium.c_max * t_final * (1.0 - 1e-12),
                "domain: pad_width " + std::to_string(pad_width) + " < c_max*T = " +
                    std::to_string(medium.c_max * t_final) + "; reflections would re-enter Omega");
    }

    Domain d;
    d.omega = omega;
    d.grid = omega;
    for (int a = 0; a < omega.dim; ++a) {
        const double h = omega.spacing(a);
        const int cells = pad_width > 0.0 ? static_cast<int>(std::ceil(pad_width / h - 1e-9)) : 0;
        d.offset[a] = cells;
        d.grid.lo[a] = omega.lo[a] - cells * h;
        d.grid.hi[a] = omega.hi[a] + cells * h;
        d.grid.n[a] = omega.n[a] + 2 * cells;
    }

    ScalarField c(d.grid, 1.0);
    for (std::size_t i = 0; i < omega.size(); ++i) c[d.to_grid(i)] = medium.sound_speed[i];
    d.medium = Medium::make(std::move(c), medium.damping);

    d.sensors = boundary_sensors(omega);
    d.sensor_nodes.reserve(d.sensors.size());
    for (std::size_t node : d.sensors.nodes) d.sensor_nodes.push_back(d.to_grid(node));
    return d;
}

int choose_substeps(const TimeGrid& tg, double c_max, const GridSpec& grid, const SolverOptions& opt)
{
    tg.validate();
    require(opt.cfl_safety > 0.0, "solver: cfl_safety must be positive");
    const double limit = opt.cfl_safety / std::sqrt(static_cast<double>(grid.dim));
    const double ratio = c_max * tg.dt() / grid.min_spacing();
    if (opt.substeps > 0) {
        if (ratio / opt.substeps > limit * (1.0 + 1e-12)) {
            throw ConfigError("solver: CFL violated (c_max dt/dx = " + std::to_string(ratio / opt.substeps) +
                              " > " + std::to_string(limit) + ")");
        }
        return opt.substeps;
    }
    return std::max(1, static_cast<int>(std::ceil(ratio / limit - 1e-12)));
}

ForwardResult simulate_forward(const ScalarField& p0, const Medium& medium, const TimeGrid& tg, double pad_width,
                               const SolverOptions& opt, const StepObserver& observer)
{
    tg.validate();
    require(p0.grid == medium.sound_speed.grid, "forward: p0 and sound speed live on different grids");
    require(p0.all_finite(), "forward: p0 has non-finite entries");
    medium.validate(tg.t_final);

    const Domain dom = make_domain(medium, pad_width, tg.t_final);
    const GridSpec& grid = dom.grid;
    const int m = choose_substeps(tg, dom.medium.c_max, grid, opt);
    const double dt = tg.dt() / m;
    const int total = (tg.n_steps - 1) * m;

    std::vector<double> c2(grid.size());
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] = dom.medium.sound_speed[i] * dom.medium.sound_speed[i];

    ForwardResult res;
    res.substeps = m;
    res.g = BoundaryRecord(dom.omega, tg);
    auto record = [&](const ScalarField& p, int j) {
        for (std::size_t s = 0; s < dom.sensor_nodes.size(); ++s) res.g.at(s, j) = p[dom.sensor_nodes[s]];
        if (opt.store_history) {
            res.history.push_back(dom.restrict_to_omega(p));
        }
    };

    WaveState st;
    st.dt = dt;
    st.p_curr = dom.embed(p0);
    st.p_prev = st.p_curr;
    ScalarField next(grid);
    record(st.p_curr, 0);

    for (int n = 0; n < total; ++n) {
        kernels::StepCoefficients k;
        k.dt2 = dt * dt;
        if (n == 0) {
            k.a_inv = 0.5;
            k.b = 0.0;
        } else {
            const double half = 0.5 * medium.damping(n * dt) * dt;
            k.a_inv = 1.0 / (1.0 + half);
            k.b = 1.0 - half;
        }
        kernels::leapfrog_step(opt.backend, grid, kernels::Operator::ScaledLaplacian, c2, st.p_prev.values,
                               st.p_curr.values, next.values, k);
        std::swap(st.p_prev.values, st.p_curr.values);
        std::swap(st.p_curr.values, next.values);
        st.step_index = n + 1;
        st.time = (n + 1) * dt;
        if (observer) {
            observer(st);
        }
        if ((n + 1) % m == 0) {
            if (!st.p_curr.all_finite()) {
                throw NumericalError("forward: non-finite pressure (blow-up) at internal step " +
                                     std::to_string(n + 1));
            }
            record(st.p_curr, (n + 1) / m);
        }
    }
    return res;
}

BoundaryRecord generate_observations(const PhantomSpec& p0_spec, const Medium& medium, const GridSpec& data_grid,
                                     const TimeGrid& data_tg, const GridSpec& target_grid, const TimeGrid& target_tg,
                                     double noise_level, std::uint64_t seed, const SolverOptions& opt)
{
    data_grid.validate();
    target_grid.validate();
    require(data_grid.dim == target_grid.dim && data_grid.lo == target_grid.lo && data_grid.hi == target_grid.hi,
            "observations: data and target grids must cover the same domain");

    const Medium data_medium = Medium::make(resample(medium.sound_speed, data_grid), medium.damping);
    const ScalarField p0 = build_phantom(p0_spec, data_grid);
    SolverOptions o = opt;
    o.store_history = true;
    const ForwardResult fwd = simulate_forward(p0, data_medium, data_tg, data_medium.c_max * data_tg.t_final, o);

    // along dOmega: the target sensors lie on the data grid's boundary
    BoundaryRecord on_target(target_grid, data_tg);
    for (int j = 0; j < data_tg.n_steps; ++j) {
        for (std::size_t s = 0; s < on_target.n_sensors(); ++s) {
            on_target.at(s, j) = interpolate(fwd.history[j], on_target.sensor_locations[s]);
        }
    }
    return add_noise(retime(on_target, target_tg), noise_level, seed);
}

BoundaryRecord add_noise(const BoundaryRecord& g, double level, std::uint64_t seed)
{
    require(level >= 0.0 && std::isfinite(level), "noise: level must be non-negative");
    if (level == 0.0) {
        return g;
    }
    BoundaryRecord out = g;
    const double sigma = level * g.rms();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out.values) v += sigma * normal(rng);
    return out;
}

double discrete_energy(const WaveState& state, const Medium& medium)
{
    const GridSpec& g = state.p_curr.grid;
    require(state.p_prev.grid == g && medium.sound_speed.grid == g, "energy: state and medium grids differ");
    require(state.dt > 0.0, "energy: state has no time step");

    const auto& a = state.p_prev.values;
    const auto& b = state.p_curr.values;
    const auto& c = medium.sound_speed.values;
    double kinetic = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double v = (b[i] - a[i]) / state.dt;
        kinetic += v * v / (c[i] * c[i]);
    }

    double potential = 0.0;
    const std::size_t s0 = static_cast<std::size_t>(g.n[1]);
    const double h0 = g.spacing(0);
    for (int i0 = 0; i0 + 1 < g.n[0]; ++i0) {
        for (int i1 = 0; i1 < g.n[1]; ++i1) {
            const std::size_t i = g.index(i0, i1);
            potential += (b[i + s0] - b[i]) * (a[i + s0] - a[i]) / (h0 * h0);
        }
    }
    if (g.dim == 2) {
        const double h1 = g.spacing(1);
        for (int i0 = 0; i0 < g.n[0]; ++i0) {
            for (int i1 = 0; i1 + 1 < g.n[1]; ++i1) {
                const std::size_t i = g.index(i0, i1);
                potential += (b[i + 1] - b[i]) * (a[i + 1] - a[i]) / (h1 * h1);
            }
        }
    }
    return 0.5 * (kinetic + potential) * g.cell_volume();
}

}  // namespace pat
