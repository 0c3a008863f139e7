#pragma once

#include "pat/boundary.hpp"
#include "pat/medium.hpp"
#include "pat/wave_forward.hpp"

namespace pat {

/// Integrates p_tt + gamma(t) p_t - c^2 Lap p = 0 backwards from t = T on Omega only,
/// with p(T) = p_t(T) = 0 inside and p = g on dOmega at every step. The damping keeps
/// its sign in reversed time (the field is damped in both directions). Returns p(., 0).
/// The medium is resampled onto `grid` when needed; g must use the sensors of `grid`.
ScalarField time_reverse(const BoundaryRecord& g, const Medium& medium, const TimeGrid& tg, const GridSpec& grid,
                         const SolverOptions& opt = {});

}  // namespace pat
