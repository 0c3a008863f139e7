#pragma once

#include "pat/grid.hpp"

namespace pat {

/// Multilinear value of `field` at x. x must lie inside the field's extent (tolerance 1e-12 relative).
double interpolate(const ScalarField& field, const Point& x);

/// Multilinear interpolation onto `dst`. Exact for fields affine along each axis.
/// Throws ConfigError when dst is not contained in the source extent or dims differ.
ScalarField resample(const ScalarField& field, const GridSpec& dst);

}  // namespace pat
