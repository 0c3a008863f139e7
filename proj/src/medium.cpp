#include "pat/medium.hpp"

#include <cmath>
#include <numbers>

#include "pat/errors.hpp"

namespace pat {

DampingSpec DampingSpec::constant(double gamma)
{
    require(gamma >= 0.0 && std::isfinite(gamma), "damping: constant gamma must be >= 0");
    return {Kind::Constant, gamma};
}

DampingSpec DampingSpec::exp_decay(double scale)
{
    require(scale > 0.0 && std::isfinite(scale), "damping: exp-decay scale must be > 0");
    return {Kind::ExpDecay, scale};
}

double DampingSpec::operator()(double t) const
{
    return kind == Kind::Constant ? value : std::exp(-t / value);
}

double DampingSpec::derivative(double t) const
{
    return kind == Kind::Constant ? 0.0 : -std::exp(-t / value) / value;
}

Medium Medium::make(ScalarField sound_speed, DampingSpec damping)
{
    sound_speed.grid.validate();
    require(sound_speed.all_finite(), "medium: sound speed has non-finite entries");
    Medium m;
    m.c_min = sound_speed.min();
    m.c_max = sound_speed.max();
    require(m.c_min > 0.0, "medium: sound speed must be positive everywhere");
    m.sound_speed = std::move(sound_speed);
    m.damping = damping;
    return m;
}

void Medium::validate(double t_final) const
{
    require(c_min > 0.0, "medium: sound speed must be positive everywhere");
    // ExpDecay is positive for every finite t; only the constant needs checking.
    require(damping.kind == DampingSpec::Kind::ExpDecay || damping.value >= 0.0,
            "medium: damping must be non-negative on [0, T]");
    (void)t_final;
}

double mollifier_value(const Point& x, const Point& center, double radius)
{
    require(radius > 0.0, "mollifier: radius must be positive");
    const double dx = x[0] - center[0];
    const double dy = x[1] - center[1];
    const double r2 = (dx * dx + dy * dy) / (radius * radius);
    if (r2 >= 1.0) {
        return 0.0;
    }
    return std::exp(1.0 - 1.0 / (1.0 - r2));
}

ScalarField build_sound_speed(const GridSpec& grid, const SoundSpeedPreset& preset)
{
    grid.validate();
    if (preset.kind == SoundSpeedPreset::Kind::Constant) {
        require(preset.constant > 0.0, "sound speed: constant preset must be positive");
        return ScalarField(grid, preset.constant);
    }
    const Point mid{0.5 * (grid.lo[0] + grid.hi[0]), 0.5 * (grid.lo[1] + grid.hi[1])};
    const double radius = std::sqrt(0.5);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const bool two_d = preset.kind == SoundSpeedPreset::Kind::TwoD;
    return ScalarField::from_function(grid, [&](const Point& x) {
        const double w = mollifier_value(x, mid, radius);
        double bump = 0.1 * std::cos(two_pi * x[0]);
        if (two_d) {
            bump += 0.05 * std::sin(two_pi * x[1]);
        }
        return 1.0 + w * bump;
    });
}

}  // namespace pat
