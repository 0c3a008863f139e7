#pragma once

#include "pat/grid.hpp"

namespace pat {

// Figures of merit between a reconstruction and the truth. All require identical grids.

/// (1/n) sum (a - b)^2
double mse(const ScalarField& a, const ScalarField& b);

/// 10 log10(M^2 / mse), M = max over both fields. Identical fields give `cap`.
/// Throws ConfigError when both fields are identically zero.
double psnr(const ScalarField& a, const ScalarField& b, double cap = 200.0);

/// Global (single-window) SSIM with population statistics,
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2, L = max(a, b) - min(a, b) floored at 1e-12.
double ssim(const ScalarField& a, const ScalarField& b);

}  // namespace pat
