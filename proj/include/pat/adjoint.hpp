#pragma once

#include "pat/boundary.hpp"
#include "pat/medium.hpp"
#include "pat/wave_forward.hpp"

namespace pat {

/// q(., 0) and d_t q(., 0) on the Omega grid, plus gamma(0) for the Hamiltonian.
struct AdjointTraces {
    ScalarField q0;
    ScalarField dq0;
    double gamma0 = 0.0;
    /// Set by the discrete adjoint only (q0, dq0 are then empty): the exact gradient density.
    ScalarField kernel;
};

/// Solves q_tt - d_t(gamma q) - Lap(c^2 q) = -r chi_dOmega,  q(T) = q_t(T) = 0,
/// backwards via s = T - t on the padded domain. The boundary source is a discrete
/// delta: r * (sensor weight) / cell_volume at each sensor node, linear in time between samples.
AdjointTraces simulate_adjoint(const BoundaryRecord& residual, const Medium& medium, const TimeGrid& tg,
                               double pad_width, const SolverOptions& opt = {});

/// Transpose of the leapfrog scheme applied to the residual: returns traces whose kernel is
/// (1/cell_volume) dJ/dp0 for J = 1/2 sum_j sum_s trap_j w_s (p - g)^2 and residual = p - g,
/// i.e. the exact gradient of the discrete data term. Needs pad_width > 0.
AdjointTraces discrete_adjoint(const BoundaryRecord& residual, const Medium& medium, const TimeGrid& tg,
                               double pad_width, const SolverOptions& opt = {});

/// d_t q(x, 0) - gamma(0) q(x, 0): the factor multiplying p0 in the Hamiltonian.
ScalarField hamiltonian_kernel(const AdjointTraces& traces);

}  // namespace pat
