#pragma once

#include "pat/grid.hpp"

namespace pat {

/// Time-dependent damping coefficient gamma(t).
struct DampingSpec {
    enum class Kind { Constant, ExpDecay };

    Kind kind = Kind::Constant;
    double value = 0.0;  ///< gamma for Constant, decay scale s for ExpDecay (gamma = exp(-t/s))

    static DampingSpec constant(double gamma);
    static DampingSpec exp_decay(double scale);

    double operator()(double t) const;
    double derivative(double t) const;
    bool is_constant() const { return kind == Kind::Constant; }

    friend bool operator==(const DampingSpec&, const DampingSpec&) = default;
};

struct Medium {
    ScalarField sound_speed;
    DampingSpec damping;
    double c_min = 1.0;
    double c_max = 1.0;

    /// Caches the speed bounds; throws ConfigError on non-positive speed.
    static Medium make(ScalarField sound_speed, DampingSpec damping);

    /// Damping must stay non-negative on [0, t_final]. A zero constant is accepted for
    /// conservative (undamped) verification runs.
    void validate(double t_final) const;
};

struct SoundSpeedPreset {
    enum class Kind { OneD, TwoD, Constant };
    Kind kind = Kind::Constant;
    double constant = 1.0;

    static SoundSpeedPreset one_d() { return {Kind::OneD, 1.0}; }
    static SoundSpeedPreset two_d() { return {Kind::TwoD, 1.0}; }
    static SoundSpeedPreset uniform(double c) { return {Kind::Constant, c}; }
};

/// Smooth compactly supported bump exp(1 - 1/(1 - r^2)), r = |x - center| / radius, peak 1.
double mollifier_value(const Point& x, const Point& center, double radius);

/// c(x) = 1 + w(x) * 0.1 cos(2 pi x)                          (OneD)
/// c(x) = 1 + w(x) * [0.1 cos(2 pi x1) + 0.05 sin(2 pi x2)]    (TwoD)
/// with w the mollifier at the domain midpoint, radius sqrt(0.5).
ScalarField build_sound_speed(const GridSpec& grid, const SoundSpeedPreset& preset);

}  // namespace pat
