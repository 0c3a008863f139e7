#include "pat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pat/errors.hpp"

namespace pat {

GridSpec GridSpec::line(double lo, double hi, int n_points)
{
    GridSpec g;
    g.dim = 1;
    g.lo = {lo, 0.0};
    g.hi = {hi, 0.0};
    g.n = {n_points, 1};
    g.validate();
    return g;
}

GridSpec GridSpec::rect(double lo0, double hi0, int n0, double lo1, double hi1, int n1)
{
    GridSpec g;
    g.dim = 2;
    g.lo = {lo0, lo1};
    g.hi = {hi0, hi1};
    g.n = {n0, n1};
    g.validate();
    return g;
}

void GridSpec::validate() const
{
    require(dim == 1 || dim == 2, "grid: dim must be 1 or 2");
    for (int a = 0; a < dim; ++a) {
        require(n[a] >= 3, "grid: need at least 3 points per axis, axis " + std::to_string(a));
        require(hi[a] > lo[a], "grid: extent_hi must exceed extent_lo on axis " + std::to_string(a));
    }
    if (dim == 1) {
        require(n[1] == 1, "grid: 1D grid must have n[1] == 1");
    }
}

double GridSpec::min_spacing() const
{
    return dim == 1 ? spacing(0) : std::min(spacing(0), spacing(1));
}

double GridSpec::cell_volume() const
{
    return dim == 1 ? spacing(0) : spacing(0) * spacing(1);
}

Point GridSpec::point(std::size_t idx) const
{
    if (dim == 1) {
        return {coord(0, static_cast<int>(idx)), 0.0};
    }
    const int i0 = static_cast<int>(idx / n[1]);
    const int i1 = static_cast<int>(idx % n[1]);
    return {coord(0, i0), coord(1, i1)};
}

bool GridSpec::is_boundary(int i0, int i1) const
{
    if (i0 == 0 || i0 == n[0] - 1) {
        return true;
    }
    return dim == 2 && (i1 == 0 || i1 == n[1] - 1);
}

void TimeGrid::validate() const
{
    require(n_steps >= 2, "time grid: need at least 2 samples");
    require(t_final > 0.0, "time grid: t_final must be positive");
}

ScalarField::ScalarField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v))
{
    require(values.size() == grid.size(), "field: value count does not match grid");
}

double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }
double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }

bool ScalarField::all_finite() const
{
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other)
{
    require(grid == other.grid, "field: grid mismatch in +=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += other.values[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other)
{
    require(grid == other.grid, "field: grid mismatch in -=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= other.values[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s)
{
    for (double& v : values) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

double inner_product(const ScalarField& a, const ScalarField& b)
{
    require(a.grid == b.grid, "field: grid mismatch in inner product");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc * a.grid.cell_volume();
}

double l2_norm(const ScalarField& a) { return std::sqrt(inner_product(a, a)); }

}  // namespace pat
