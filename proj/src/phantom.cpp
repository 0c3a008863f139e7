#include "pat/phantom.hpp"

#include <cmath>

#include "pat/errors.hpp"

namespace pat {
namespace {

struct Evaluator {
    const Point& x;

    double operator()(const GaussianPhantom& g) const
    {
        const double dx = x[0] - g.center[0];
        const double dy = x[1] - g.center[1];
        return g.peak * std::exp(-(dx * dx + dy * dy) / (2.0 * g.sigma * g.sigma));
    }

    double operator()(const CharacteristicPhantom& c) const
    {
        const double half = 0.5 * c.width;
        const bool inside = std::abs(x[0] - c.center[0]) <= half && std::abs(x[1] - c.center[1]) <= half;
        return inside ? c.value : 0.0;
    }

    double operator()(const DiskPhantom& d) const
    {
        const double dx = x[0] - d.center[0];
        const double dy = x[1] - d.center[1];
        return dx * dx + dy * dy <= d.radius * d.radius ? d.value : 0.0;
    }

    double operator()(const EllipsePhantom& e) const
    {
        const double dx = x[0] - e.center[0];
        const double dy = x[1] - e.center[1];
        const double cs = std::cos(e.angle);
        const double sn = std::sin(e.angle);
        const double u = (cs * dx + sn * dy) / e.semi_axes[0];
        const double v = (-sn * dx + cs * dy) / e.semi_axes[1];
        return u * u + v * v <= 1.0 ? e.value : 0.0;
    }

    double operator()(const PhantomSum& s) const
    {
        double acc = 0.0;
        for (const auto& part : s.parts) acc += phantom_value(part, x);
        return acc;
    }
};

void check(const PhantomSpec& spec, int dim)
{
    std::visit(
        [dim](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianPhantom>) {
                require(p.peak >= 0.0, "phantom: negative Gaussian peak");
                require(p.sigma > 0.0, "phantom: Gaussian sigma must be positive");
            } else if constexpr (std::is_same_v<T, CharacteristicPhantom>) {
                require(p.value >= 0.0, "phantom: negative characteristic value");
                require(p.width > 0.0, "phantom: characteristic width must be positive");
            } else if constexpr (std::is_same_v<T, DiskPhantom>) {
                require(p.value >= 0.0, "phantom: negative disk value");
                require(p.radius > 0.0, "phantom: disk radius must be positive");
                require(dim == 2, "phantom: disks need a 2D grid");
            } else if constexpr (std::is_same_v<T, EllipsePhantom>) {
                require(p.value >= 0.0, "phantom: negative ellipse value");
                require(p.semi_axes[0] > 0.0 && p.semi_axes[1] > 0.0, "phantom: ellipse semi-axes must be positive");
                require(dim == 2, "phantom: ellipses need a 2D grid");
            } else {
                for (const auto& part : p.parts) check(part, dim);
            }
        },
        spec.shape);
}

}  // namespace

double phantom_value(const PhantomSpec& spec, const Point& x)
{
    return std::visit(Evaluator{x}, spec.shape);
}

ScalarField build_phantom(const PhantomSpec& spec, const GridSpec& grid)
{
    grid.validate();
    check(spec, grid.dim);
    return ScalarField::from_function(grid, [&](const Point& x) { return phantom_value(spec, x); });
}

PhantomSpec heart_lung_phantom()
{
    PhantomSum sum;
    sum.parts.push_back({EllipsePhantom{{-0.35, -0.1}, {0.25, 0.45}, 0.0, 0.8}});
    sum.parts.push_back({EllipsePhantom{{0.35, -0.1}, {0.25, 0.45}, 0.0, 0.8}});
    sum.parts.push_back({DiskPhantom{{0.0, 0.25}, 0.12, 1.0}});
    return {sum};
}

}  // namespace pat
