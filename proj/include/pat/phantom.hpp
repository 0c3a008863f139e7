#pragma once

#include <variant>
#include <vector>

#include "pat/grid.hpp"

namespace pat {

struct PhantomSpec;

/// peak * exp(-|x - c|^2 / (2 sigma^2))
struct GaussianPhantom {
    Point center{};
    double peak = 1.0;
    double sigma = 0.25;
};

/// value on the closed box |x - c|_inf <= width / 2 (width is the full side length)
struct CharacteristicPhantom {
    Point center{};
    double value = 1.0;
    double width = 0.3;
};

struct DiskPhantom {
    Point center{};
    double radius = 0.1;
    double value = 1.0;
};

/// value inside the ellipse with semi-axes (a, b) rotated by `angle` radians
struct EllipsePhantom {
    Point center{};
    std::array<double, 2> semi_axes{0.25, 0.45};
    double angle = 0.0;
    double value = 1.0;
};

struct PhantomSum {
    std::vector<PhantomSpec> parts;
};

struct PhantomSpec {
    std::variant<GaussianPhantom, CharacteristicPhantom, DiskPhantom, EllipsePhantom, PhantomSum> shape;
};

/// Pointwise evaluation; Sum evaluates to the sum of its parts.
double phantom_value(const PhantomSpec& spec, const Point& x);

/// Samples the phantom on the grid. Rejects negative peaks/values.
ScalarField build_phantom(const PhantomSpec& spec, const GridSpec& grid);

/// Two ellipses (lungs) and a disk (heart) inside (-1,1)^2.
PhantomSpec heart_lung_phantom();

}  // namespace pat
