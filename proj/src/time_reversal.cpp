#include "pat/time_reversal.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "pat/errors.hpp"
#include "pat/resample.hpp"

namespace pat {

ScalarField time_reverse(const BoundaryRecord& g, const Medium& medium, const TimeGrid& tg, const GridSpec& grid,
                         const SolverOptions& opt)
{
    tg.validate();
    grid.validate();
    require(g.grid == grid, "time reversal: data sensors do not match the grid");
    require(!g.values.empty() && g.values.size() == g.n_sensors() * static_cast<std::size_t>(g.times.n_steps),
            "time reversal: missing samples");
    require(std::abs(g.times.t_final - tg.t_final) <= 1e-12 * tg.t_final, "time reversal: data horizon differs from T");
    require(g.all_finite(), "time reversal: data has non-finite samples");
    medium.validate(tg.t_final);

    const Medium local =
        medium.sound_speed.grid == grid ? medium : Medium::make(resample(medium.sound_speed, grid), medium.damping);
    const auto sensors = boundary_sensors(grid);
    const int m = choose_substeps(tg, local.c_max, grid, opt);
    const double ds = tg.dt() / m;
    const int total = (tg.n_steps - 1) * m;
    const double T = tg.t_final;

    std::vector<double> c2(grid.size());
    for (std::size_t i = 0; i < c2.size(); ++i) c2[i] = local.sound_speed[i] * local.sound_speed[i];

    std::vector<double> prev(grid.size(), 0.0), cur(grid.size(), 0.0), next(grid.size());
    auto impose = [&](std::vector<double>& p, double t) {
        for (std::size_t s = 0; s < sensors.size(); ++s) p[sensors.nodes[s]] = g.sample(s, t);
    };
    impose(cur, T);

    for (int n = 0; n < total; ++n) {
        const double t_n = T - n * ds;
        kernels::StepCoefficients k;
        k.dt2 = ds * ds;
        if (n == 0) {
            k.a_inv = 0.5;
            k.b = 0.0;
        } else {
            const double half = 0.5 * local.damping(t_n) * ds;
            k.a_inv = 1.0 / (1.0 + half);
            k.b = 1.0 - half;
        }
        kernels::leapfrog_step(opt.backend, grid, kernels::Operator::ScaledLaplacian, c2, n == 0 ? cur : prev, cur,
                               next, k);
        impose(next, std::max(0.0, T - (n + 1) * ds));
        std::swap(prev, cur);
        std::swap(cur, next);
        if ((n + 1) % m == 0 && !std::all_of(cur.begin(), cur.end(), [](double v) { return std::isfinite(v); })) {
            throw NumericalError("time reversal: non-finite state (blow-up) at internal step " +
                                 std::to_string(n + 1));
        }
    }
    return ScalarField(grid, std::move(cur));
}

}  // namespace pat
