#include "pat/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pat/errors.hpp"

namespace pat {

AdjointTraces simulate_adjoint(const BoundaryRecord& residual, const Medium& medium, const TimeGrid& tg,
                               double pad_width, const SolverOptions& opt)
{
    tg.validate();
    medium.validate(tg.t_final);
    require(residual.grid == medium.sound_speed.grid, "adjoint: residual and medium live on different grids");
    require(residual.times == tg, "adjoint: residual is not sampled on the time grid");
    require(residual.all_finite(), "adjoint: residual has non-finite samples");

    const Domain dom = make_domain(medium, pad_width, tg.t_final);
    const GridSpec& grid = dom.grid;
    const int m = choose_substeps(tg, dom.medium.c_max, grid, opt);
    const double ds = tg.dt() / m;
    const int total = (tg.n_steps - 1) * m;
    require(total >= 2, "adjoint: need at least two internal steps for the t = 0 derivative");
    const double T = tg.t_final;

    std::vector<double> c2(grid.size());
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] = dom.medium.sound_speed[i] * dom.medium.sound_speed[i];

    const double inv_vol = 1.0 / grid.cell_volume();
    std::vector<double> src_scale(dom.sensor_nodes.size());
    for (std::size_t s = 0; s < src_scale.size(); ++s) src_scale[s] = -dom.sensors.weights[s] * inv_vol;

    std::vector<double> older(grid.size(), 0.0), prev(grid.size(), 0.0), cur(grid.size(), 0.0), next(grid.size());
    for (int n = 0; n < total; ++n) {
        const double s_n = n * ds;
        const double t_n = T - s_n;
        kernels::StepCoefficients k;
        k.dt2 = ds * ds;
        // reversed-time coefficients: gamma~(s) = gamma(T - s), d gamma~/ds = -gamma'(T - s)
        k.reaction = -medium.damping.derivative(t_n);
        if (n == 0) {
            k.a_inv = 0.5;
            k.b = 0.0;
        } else {
            const double half = 0.5 * medium.damping(t_n) * ds;
            k.a_inv = 1.0 / (1.0 + half);
            k.b = 1.0 - half;
        }
        kernels::leapfrog_step(opt.backend, grid, kernels::Operator::LaplacianOfScaled, c2, n == 0 ? cur : prev, cur,
                               next, k);
        for (std::size_t s = 0; s < dom.sensor_nodes.size(); ++s) {
            next[dom.sensor_nodes[s]] += k.a_inv * k.dt2 * src_scale[s] * residual.sample(s, t_n);
        }
        std::swap(older, prev);
        std::swap(prev, cur);
        std::swap(cur, next);
        if ((n + 1) % m == 0 && !std::all_of(cur.begin(), cur.end(), [](double v) { return std::isfinite(v); })) {
            throw NumericalError("adjoint: non-finite state (blow-up) at internal step " + std::to_string(n + 1));
        }
    }

    // cur = q at t = 0, prev/older one and two steps later in t
    AdjointTraces tr;
    tr.gamma0 = medium.damping(0.0);
    tr.q0 = dom.restrict_to_omega(ScalarField(grid, cur));
    tr.dq0 = ScalarField(dom.omega);
    const double inv = 1.0 / (2.0 * ds);
    for (std::size_t i = 0; i < tr.dq0.size(); ++i) {
        const std::size_t j = dom.to_grid(i);
        // d_t q = -d_s q, one-sided second order at s = T
        tr.dq0[i] = -(3.0 * cur[j] - 4.0 * prev[j] + older[j]) * inv;
    }
    return tr;
}

AdjointTraces discrete_adjoint(const BoundaryRecord& residual, const Medium& medium, const TimeGrid& tg,
                               double pad_width, const SolverOptions& opt)
{
    tg.validate();
    medium.validate(tg.t_final);
    require(residual.grid == medium.sound_speed.grid, "adjoint: residual and medium live on different grids");
    require(residual.times == tg, "adjoint: residual is not sampled on the time grid");
    require(residual.all_finite(), "adjoint: residual has non-finite samples");
    require(pad_width > 0.0, "discrete adjoint: needs a padded domain");

    const Domain dom = make_domain(medium, pad_width, tg.t_final);
    const GridSpec& grid = dom.grid;
    const int m = choose_substeps(tg, dom.medium.c_max, grid, opt);
    const double dt = tg.dt() / m;
    const int total = (tg.n_steps - 1) * m;

    std::vector<double> c2(grid.size());
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] = dom.medium.sound_speed[i] * dom.medium.sound_speed[i];

    // forward step n: x^{n+1} = a_n Z[(2 + dt^2 L) x^n - b_n x^{n-1}]
    auto a = [&](int n) { return n == 0 ? 0.5 : 1.0 / (1.0 + 0.5 * medium.damping(n * dt) * dt); };
    auto b = [&](int n) { return n == 0 ? 0.0 : 1.0 - 0.5 * medium.damping(n * dt) * dt; };

    const auto trap = trapezoid_weights(tg);
    auto add_source = [&](std::vector<double>& lam, int n) {
        if (n % m != 0) return;
        const int j = n / m;
        for (std::size_t s = 0; s < dom.sensor_nodes.size(); ++s) {
            lam[dom.sensor_nodes[s]] += trap[j] * dom.sensors.weights[s] * residual.at(s, j);
        }
    };

    // lambda^n = e^n + (2 + dt^2 L^T) a_n lambda^{n+1} - a_{n+1} b_{n+1} lambda^{n+2}
    std::vector<double> later(grid.size(), 0.0), cur(grid.size(), 0.0), next(grid.size());
    add_source(cur, total);
    for (int n = total - 1; n >= 0; --n) {
        kernels::StepCoefficients k;
        k.dt2 = dt * dt;
        k.a_inv = a(n);
        k.b = a(n + 1) * b(n + 1) / a(n);
        kernels::leapfrog_step(opt.backend, grid, kernels::Operator::LaplacianOfScaled, c2, later, cur, next, k);
        add_source(next, n);
        std::swap(later, cur);
        std::swap(cur, next);
        if (n % m == 0 && !std::all_of(cur.begin(), cur.end(), [](double v) { return std::isfinite(v); })) {
            throw NumericalError("adjoint: non-finite state (blow-up) at internal step " + std::to_string(n));
        }
    }

    AdjointTraces tr;
    tr.gamma0 = medium.damping(0.0);
    tr.kernel = dom.restrict_to_omega(ScalarField(grid, cur));
    tr.kernel *= 1.0 / dom.omega.cell_volume();
    return tr;
}

ScalarField hamiltonian_kernel(const AdjointTraces& traces)
{
    if (!traces.kernel.values.empty()) {
        return traces.kernel;
    }
    require(traces.q0.grid == traces.dq0.grid, "hamiltonian kernel: trace grids differ");
    ScalarField k = traces.dq0;
    for (std::size_t i = 0; i < k.size(); ++i) k[i] -= traces.gamma0 * traces.q0[i];
    return k;
}

}  // namespace pat
