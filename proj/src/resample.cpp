#include "pat/resample.hpp"

#include <algorithm>
#include <cmath>

#include "pat/errors.hpp"

namespace pat {
namespace {

// Cell index and local coordinate along one axis, clamped to the last cell.
void locate(const GridSpec& g, int axis, double x, int& cell, double& frac)
{
    const double s = (x - g.lo[axis]) / g.spacing(axis);
    cell = std::clamp(static_cast<int>(std::floor(s)), 0, g.n[axis] - 2);
    frac = std::clamp(s - cell, 0.0, 1.0);
}

bool contains(const GridSpec& g, const Point& x)
{
    for (int a = 0; a < g.dim; ++a) {
        const double tol = 1e-12 * std::max(1.0, g.hi[a] - g.lo[a]);
        if (x[a] < g.lo[a] - tol || x[a] > g.hi[a] + tol) {
            return false;
        }
    }
    return true;
}

}  // namespace

double interpolate(const ScalarField& field, const Point& x)
{
    const GridSpec& g = field.grid;
    require(contains(g, x), "resample: point outside source extent");
    int i0 = 0;
    double f0 = 0.0;
    locate(g, 0, x[0], i0, f0);
    if (g.dim == 1) {
        return (1.0 - f0) * field[i0] + f0 * field[i0 + 1];
    }
    int i1 = 0;
    double f1 = 0.0;
    locate(g, 1, x[1], i1, f1);
    const double v00 = field[g.index(i0, i1)];
    const double v01 = field[g.index(i0, i1 + 1)];
    const double v10 = field[g.index(i0 + 1, i1)];
    const double v11 = field[g.index(i0 + 1, i1 + 1)];
    return (1.0 - f0) * ((1.0 - f1) * v00 + f1 * v01) + f0 * ((1.0 - f1) * v10 + f1 * v11);
}

ScalarField resample(const ScalarField& field, const GridSpec& dst)
{
    dst.validate();
    require(dst.dim == field.grid.dim, "resample: dimension mismatch");
    require(contains(field.grid, dst.lo) && contains(field.grid, dst.hi), "resample: destination extent exceeds source");
    if (dst == field.grid) {
        return field;
    }
    return ScalarField::from_function(dst, [&](const Point& x) { return interpolate(field, x); });
}

}  // namespace pat
