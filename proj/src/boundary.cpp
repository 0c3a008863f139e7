#include "pat/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "pat/errors.hpp"

namespace pat {

SensorLayout boundary_sensors(const GridSpec& grid)
{
    grid.validate();
    SensorLayout layout;
    auto add = [&](int i0, int i1, double weight, int in0, int in1, double spacing) {
        const std::size_t idx = grid.index(i0, i1);
        layout.nodes.push_back(idx);
        layout.points.push_back(grid.point(idx));
        layout.weights.push_back(weight);
        layout.inward.push_back(grid.index(in0, in1));
        layout.normal_spacing.push_back(spacing);
    };

    if (grid.dim == 1) {
        const double h = grid.spacing(0);
        add(0, 0, 1.0, 1, 0, h);
        add(grid.n[0] - 1, 0, 1.0, grid.n[0] - 2, 0, h);
        return layout;
    }

    const int n0 = grid.n[0];
    const int n1 = grid.n[1];
    const double h0 = grid.spacing(0);
    const double h1 = grid.spacing(1);
    const double corner = 0.5 * (h0 + h1);
    // bottom edge (x2 = lo), x1 increasing
    add(0, 0, corner, 0, 0, 0.0);
    for (int i = 1; i < n0 - 1; ++i) add(i, 0, h0, i, 1, h1);
    // right edge (x1 = hi), x2 increasing
    add(n0 - 1, 0, corner, n0 - 1, 0, 0.0);
    for (int j = 1; j < n1 - 1; ++j) add(n0 - 1, j, h1, n0 - 2, j, h0);
    // top edge (x2 = hi), x1 decreasing
    add(n0 - 1, n1 - 1, corner, n0 - 1, n1 - 1, 0.0);
    for (int i = n0 - 2; i >= 1; --i) add(i, n1 - 1, h0, i, n1 - 2, h1);
    // left edge (x1 = lo), x2 decreasing
    add(0, n1 - 1, corner, 0, n1 - 1, 0.0);
    for (int j = n1 - 2; j >= 1; --j) add(0, j, h1, 1, j, h0);
    return layout;
}

BoundaryRecord::BoundaryRecord(const GridSpec& g, const TimeGrid& tg) : grid(g), times(tg)
{
    tg.validate();
    sensor_locations = boundary_sensors(g).points;
    values.assign(sensor_locations.size() * static_cast<std::size_t>(tg.n_steps), 0.0);
}

double BoundaryRecord::sample(std::size_t s, double t) const
{
    const double pos = std::clamp(t / times.dt(), 0.0, static_cast<double>(times.n_steps - 1));
    const int j = std::min(static_cast<int>(pos), times.n_steps - 2);
    const double f = pos - j;
    return (1.0 - f) * at(s, j) + f * at(s, j + 1);
}

double BoundaryRecord::rms() const
{
    if (values.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return std::sqrt(acc / static_cast<double>(values.size()));
}

bool BoundaryRecord::all_finite() const
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

BoundaryRecord& BoundaryRecord::operator+=(const BoundaryRecord& other)
{
    require(grid == other.grid && times == other.times, "boundary record: layout mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
    return *this;
}

BoundaryRecord& BoundaryRecord::operator-=(const BoundaryRecord& other)
{
    require(grid == other.grid && times == other.times, "boundary record: layout mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
    return *this;
}

BoundaryRecord& BoundaryRecord::operator*=(double s)
{
    for (double& v : values) v *= s;
    return *this;
}

BoundaryRecord operator-(BoundaryRecord a, const BoundaryRecord& b) { return a -= b; }
BoundaryRecord operator+(BoundaryRecord a, const BoundaryRecord& b) { return a += b; }

std::vector<double> trapezoid_weights(const TimeGrid& tg)
{
    std::vector<double> w(tg.n_steps, tg.dt());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

double boundary_time_integral_sq(const BoundaryRecord& f)
{
    const auto sensors = boundary_sensors(f.grid);
    const auto wt = trapezoid_weights(f.times);
    double acc = 0.0;
    for (std::size_t s = 0; s < f.n_sensors(); ++s) {
        double row = 0.0;
        for (int j = 0; j < f.times.n_steps; ++j) {
            const double v = f.at(s, j);
            row += wt[j] * v * v;
        }
        acc += sensors.weights[s] * row;
    }
    return acc;
}

BoundaryRecord retime(const BoundaryRecord& g, const TimeGrid& target)
{
    target.validate();
    require(std::abs(target.t_final - g.times.t_final) <= 1e-12 * g.times.t_final,
            "boundary record: retime requires the same horizon T");
    BoundaryRecord out(g.grid, target);
    for (std::size_t s = 0; s < g.n_sensors(); ++s) {
        for (int j = 0; j < target.n_steps; ++j) out.at(s, j) = g.sample(s, target.time(j));
    }
    return out;
}

}  // namespace pat
