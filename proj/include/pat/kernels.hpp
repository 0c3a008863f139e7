#pragma once

#include <algorithm>
#include <span>

#include "pat/grid.hpp"

// Stencil kernels shared by the forward, adjoint and time-reversal steppers.
// `serial` is the reference implementation kept for testing; `omp` is the
// production path. Both must agree bit-for-bit (same per-node arithmetic, no reductions).
namespace pat::kernels {

enum class Backend { Serial, OpenMP };

/// Spatial operator applied to the current level.
///   ScaledLaplacian:    c^2 * Lap_h(u)   (forward equation)
///   LaplacianOfScaled:  Lap_h(c^2 * u)   (adjoint equation)
enum class Operator { ScaledLaplacian, LaplacianOfScaled };

/// next = a_inv * (2 cur - b prev + dt2 * (Op(cur) - reaction * cur))
/// on interior nodes; boundary nodes of the grid are set to zero (Dirichlet).
/// Leapfrog with damping gamma: a_inv = 1/(1 + gamma dt/2), b = 1 - gamma dt/2.
/// Start-up step from zero velocity: a_inv = 1/2, b = 0, prev = cur.
struct StepCoefficients {
    double a_inv = 1.0;
    double b = 1.0;
    double dt2 = 0.0;
    double reaction = 0.0;
};

struct PointwiseParams {
    double alpha = 0.0;
    double beta = 0.0;
    double lo = 0.0;
    double hi = 1.0;
    double eps = 1.0;
};

/// argmin over v in [lo, hi] of (alpha/2) v^2 + beta |v| + b0 v + eps (v - prev)^2.
/// Requires alpha/2 + eps > 0.
inline double pointwise_argmin(double b0, double prev, const PointwiseParams& p)
{
    const double a = 0.5 * p.alpha + p.eps;
    const double b = b0 - 2.0 * p.eps * prev;
    double v = 0.0;
    if (b > p.beta) {
        v = -(b - p.beta) / (2.0 * a);
    } else if (b < -p.beta) {
        v = -(b + p.beta) / (2.0 * a);
    }
    return std::clamp(v, p.lo, p.hi);
}

namespace serial {

void laplacian(const GridSpec& g, std::span<const double> u, std::span<double> out);
void leapfrog_step(const GridSpec& g, Operator op, std::span<const double> c2, std::span<const double> prev,
                   std::span<const double> cur, std::span<double> next, const StepCoefficients& k);
void pointwise_sweep(std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out);

}  // namespace serial

namespace omp {

void laplacian(const GridSpec& g, std::span<const double> u, std::span<double> out);
void leapfrog_step(const GridSpec& g, Operator op, std::span<const double> c2, std::span<const double> prev,
                   std::span<const double> cur, std::span<double> next, const StepCoefficients& k);
void pointwise_sweep(std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out);

}  // namespace omp

// backend dispatch
void laplacian(Backend be, const GridSpec& g, std::span<const double> u, std::span<double> out);
void leapfrog_step(Backend be, const GridSpec& g, Operator op, std::span<const double> c2,
                   std::span<const double> prev, std::span<const double> cur, std::span<double> next,
                   const StepCoefficients& k);
void pointwise_sweep(Backend be, std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out);

}  // namespace pat::kernels
