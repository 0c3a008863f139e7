#pragma once

#include <cstddef>
#include <vector>

#include "pat/grid.hpp"

namespace pat {

/// Sensor nodes on the boundary of an Omega grid.
///
/// 1D: the two end nodes (x = lo, x = hi), unit quadrature weights (point measure).
/// 2D: every boundary node, counter-clockwise starting at the lower-left corner
/// (bottom edge left->right, right edge bottom->top, top edge right->left, left edge top->bottom).
/// Weights are the trapezoid rule along each edge; a corner collects half a cell from each edge.
struct SensorLayout {
    std::vector<std::size_t> nodes;    ///< grid indices
    std::vector<Point> points;
    std::vector<double> weights;       ///< surface quadrature weights
    std::vector<std::size_t> inward;   ///< interior neighbour along the inward normal (corners: the node itself)
    std::vector<double> normal_spacing;  ///< distance to `inward` (0 for corners)

    std::size_t size() const { return nodes.size(); }
};

SensorLayout boundary_sensors(const GridSpec& grid);

/// Pressure time series at the boundary sensors of `grid`.
/// values are stored sensor-major: values[s * times.n_steps + j].
struct BoundaryRecord {
    GridSpec grid;
    TimeGrid times;
    std::vector<Point> sensor_locations;
    std::vector<double> values;

    BoundaryRecord() = default;
    BoundaryRecord(const GridSpec& g, const TimeGrid& tg);

    std::size_t n_sensors() const { return sensor_locations.size(); }
    double& at(std::size_t s, int j) { return values[s * times.n_steps + j]; }
    double at(std::size_t s, int j) const { return values[s * times.n_steps + j]; }

    /// Linear interpolation in time for sensor s; t is clamped to [0, T].
    double sample(std::size_t s, double t) const;

    /// Root mean square over all samples.
    double rms() const;
    bool all_finite() const;

    BoundaryRecord& operator+=(const BoundaryRecord& other);
    BoundaryRecord& operator-=(const BoundaryRecord& other);
    BoundaryRecord& operator*=(double s);
};

BoundaryRecord operator-(BoundaryRecord a, const BoundaryRecord& b);
BoundaryRecord operator+(BoundaryRecord a, const BoundaryRecord& b);

/// Quadrature of the data-misfit integral  int_0^T int_dOmega f^2 ds dt
/// (trapezoid in time, sensor weights on the boundary).
double boundary_time_integral_sq(const BoundaryRecord& f);

/// Trapezoid weights for the uniform time grid.
std::vector<double> trapezoid_weights(const TimeGrid& tg);

/// Resamples a record onto a new time grid (linear interpolation).
BoundaryRecord retime(const BoundaryRecord& g, const TimeGrid& target);

}  // namespace pat
