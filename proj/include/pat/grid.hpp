#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pat {

using Point = std::array<double, 2>;

/// Vertex-centered tensor-product grid on [lo, hi] (1D) or [lo0, hi0] x [lo1, hi1] (2D).
/// Both endpoints are grid nodes, so sensors sit exactly on the domain boundary.
/// Storage is row-major with axis 0 slowest: index = i0 * n[1] + i1. In 1D n[1] == 1.
struct GridSpec {
    int dim = 1;
    Point lo{-1.0, 0.0};
    Point hi{1.0, 0.0};
    std::array<int, 2> n{3, 1};

    static GridSpec line(double lo, double hi, int n_points);
    static GridSpec rect(double lo0, double hi0, int n0, double lo1, double hi1, int n1);
    static GridSpec square(double lo, double hi, int n_points) { return rect(lo, hi, n_points, lo, hi, n_points); }

    /// Throws ConfigError unless dim in {1,2}, n >= 3 and hi > lo on every active axis.
    void validate() const;

    double spacing(int axis) const { return (hi[axis] - lo[axis]) / (n[axis] - 1); }
    double min_spacing() const;
    double cell_volume() const;
    std::size_t size() const { return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]); }
    std::size_t index(int i0, int i1 = 0) const { return static_cast<std::size_t>(i0) * n[1] + i1; }
    double coord(int axis, int i) const { return lo[axis] + i * spacing(axis); }
    Point point(std::size_t idx) const;
    bool is_boundary(int i0, int i1 = 0) const;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Uniform time samples t_j = j * dt, j = 0..n_steps-1, dt = t_final / (n_steps - 1).
struct TimeGrid {
    double t_final = 1.0;
    int n_steps = 2;

    void validate() const;
    double dt() const { return t_final / (n_steps - 1); }
    double time(int j) const { return j * dt(); }

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Real samples on a GridSpec.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}
    ScalarField(const GridSpec& g, std::vector<double> v);

    template <class Fn>
    static ScalarField from_function(const GridSpec& g, Fn&& fn)
    {
        ScalarField f(g);
        for (std::size_t i = 0; i < g.size(); ++i) {
            f.values[i] = fn(g.point(i));
        }
        return f;
    }

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
    std::span<const double> span() const { return values; }

    double max() const;
    double min() const;
    bool all_finite() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Cell-volume weighted L2 inner product over all grid nodes.
double inner_product(const ScalarField& a, const ScalarField& b);
double l2_norm(const ScalarField& a);

}  // namespace pat
