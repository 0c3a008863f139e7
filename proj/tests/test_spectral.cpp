#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "pat/errors.hpp"
#include "pat/phantom.hpp"
#include "pat/spectral.hpp"
#include "pat/wave_forward.hpp"

using namespace pat;
using std::numbers::pi;

namespace {

Medium unit_medium(const GridSpec& g, double gamma = 1.0)
{
    return Medium::make(ScalarField(g, 1.0), DampingSpec::constant(gamma));
}

EigenBasis truncated(EigenBasis b, int K)
{
    b.lambdas.resize(K);
    b.modes.resize(K);
    b.normal_derivs.resize(K);
    return b;
}

}  // namespace

TEST_CASE("eigenbasis: interval and square")
{
    const auto g1 = GridSpec::line(-1.0, 1.0, 200);
    const auto b1 = dirichlet_eigs(unit_medium(g1), g1, 20);
    CHECK(std::abs(b1.lambdas[0] / (pi / 2.0) - 1.0) < 1e-3);
    for (int k = 1; k < b1.count(); ++k) CHECK(b1.lambdas[k] > b1.lambdas[k - 1]);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            worst = std::max(worst, std::abs(b1.weighted_inner(b1.modes[i], b1.modes[j]) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-8);
    CHECK(b1.modes[2][0] == 0.0);
    CHECK(b1.modes[2][199] == 0.0);
    // psi_3 proportional to sin(3 pi (x + 1) / 2)
    const auto s3 = ScalarField::from_function(g1, [](const Point& x) { return std::sin(1.5 * pi * (x[0] + 1.0)); });
    const double cosang = std::abs(inner_product(b1.modes[2], s3)) / (l2_norm(b1.modes[2]) * l2_norm(s3));
    CHECK(cosang > 1.0 - 1e-10);

    const auto g2 = GridSpec::square(-1.0, 1.0, 100);
    const auto b2 = dirichlet_eigs(unit_medium(g2), g2, 20);
    CHECK(std::abs(b2.lambdas[0] / (pi / std::sqrt(2.0)) - 1.0) < 5e-3);
    // (1,2) and (2,1) are degenerate: both found
    CHECK(b2.lambdas[1] == doctest::Approx(b2.lambdas[2]).epsilon(1e-9));
    worst = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            worst = std::max(worst, std::abs(b2.weighted_inner(b2.modes[i], b2.modes[j]) - (i == j ? 1.0 : 0.0)));
    CHECK(worst < 1e-8);

    CHECK(max_modes(g1) == 49);
    CHECK(default_modes(g1) == 40);
    CHECK_THROWS_AS(dirichlet_eigs(unit_medium(g1), g1, 50), ConfigError);
}

TEST_CASE("eigenbasis: Lanczos agrees with the dense oracle")
{
    const auto g = GridSpec::square(-1.0, 1.0, 30);
    const auto m = Medium::make(build_sound_speed(g, SoundSpeedPreset::two_d()), DampingSpec::constant(1.0));
    const auto dense = dirichlet_eigs(m, g, 40, EigenMethod::Dense);
    const auto lanczos = dirichlet_eigs(m, g, 40, EigenMethod::Lanczos);
    for (int k = 0; k < 40; ++k) {
        CHECK(lanczos.lambdas[k] == doctest::Approx(dense.lambdas[k]).epsilon(1e-10));
    }
    // non-degenerate modes agree up to sign convention, which is shared
    const double overlap = lanczos.weighted_inner(lanczos.modes[0], dense.modes[0]);
    CHECK(overlap == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("harmonic extension")
{
    const auto g1 = GridSpec::line(-1.0, 1.0, 41);
    const auto c = harmonic_extension({2.5, 2.5}, g1);
    for (double v : c.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-15));
    const auto aff = harmonic_extension({1.0, 3.0}, g1);
    for (std::size_t i = 0; i < g1.size(); ++i) {
        CHECK(aff[i] == doctest::Approx(2.0 + g1.point(i)[0]).epsilon(1e-14));
    }

    const auto g2 = GridSpec::square(-1.0, 1.0, 40);
    const auto sensors = boundary_sensors(g2);
    std::vector<double> x1(sensors.size()), cst(sensors.size(), -0.7);
    for (std::size_t s = 0; s < sensors.size(); ++s) x1[s] = sensors.points[s][0];
    const auto ux = harmonic_extension(x1, g2);
    const auto uc = harmonic_extension(cst, g2);
    double err = 0.0;
    for (std::size_t i = 0; i < g2.size(); ++i) {
        err = std::max(err, std::abs(ux[i] - g2.point(i)[0]));
        err = std::max(err, std::abs(uc[i] + 0.7));
    }
    CHECK(err < 1e-10);
    CHECK_THROWS_AS(harmonic_extension({1.0}, g1), ConfigError);
}

TEST_CASE("modal coefficient algebra")
{
    const auto mc = modal_coefficients(3.0, {1.0});
    CHECK(mc.A[0].real() == doctest::Approx(std::sqrt(5.0)));
    CHECK(mc.B_plus[0].real() == doctest::Approx((-3.0 + std::sqrt(5.0)) / 2.0));
    CHECK(mc.B_minus[0].real() == doctest::Approx(-2.618034).epsilon(1e-6));
    for (const auto& B : {mc.B_plus[0], mc.B_minus[0]}) CHECK(std::abs(B * B + 3.0 * B + 1.0) < 1e-12);

    // branch independence: flipping the sign of A leaves the kernel unchanged
    for (double lam : {0.3, 1.0, 4.0}) {
        const double gamma = 1.0;
        const std::complex<double> A = std::sqrt(std::complex<double>(gamma * gamma - 4.0 * lam * lam));
        const double t = 0.7;
        auto kern = [&](std::complex<double> a) {
            return (std::exp(-0.5 * (-gamma + a) * t) - std::exp(-0.5 * (-gamma - a) * t)) / a;
        };
        CHECK(std::abs(kern(A) - kern(-A)) < 1e-12);
        CHECK(std::abs(modal_kernel(gamma, lam, t) - kern(A)) < 1e-12);
        CHECK(std::abs(modal_kernel(gamma, lam, t).imag()) < 1e-12);
    }
    // critical damping: continuous limit -t exp(gamma t / 2)
    const double t = 1.3;
    const auto crit = modal_kernel(2.0, 1.0, t);
    CHECK(crit.real() == doctest::Approx(-t * std::exp(t)).epsilon(1e-12));
    const auto near = modal_kernel(2.0, 1.0 + 1e-6, t);
    CHECK(near.real() == doctest::Approx(crit.real()).epsilon(1e-5));
    CHECK(series_decay_factor(1.0, 1.5, 4.0) == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("modal sources and discrete Green identity")
{
    const auto g = GridSpec::line(-1.0, 1.0, 101);
    const auto basis = dirichlet_eigs(unit_medium(g), g, 10);
    const TimeGrid tg{1.0, 21};

    BoundaryRecord cst(g, tg);
    for (double& v : cst.values) v = 0.8;
    for (double v : modal_source(cst, 1.0, basis, 0)) CHECK(v == doctest::Approx(0.0).scale(1.0));

    // g(y, t) = phi(y) t with gamma = 1: only gamma g_t survives
    BoundaryRecord lin(g, tg);
    const double phi[2] = {0.4, -1.3};
    for (std::size_t s = 0; s < 2; ++s)
        for (int j = 0; j < tg.n_steps; ++j) lin.at(s, j) = phi[s] * tg.time(j);
    for (int k = 0; k < 3; ++k) {
        const double expect =
            (phi[0] * basis.normal_derivs[k][0] + phi[1] * basis.normal_derivs[k][1]) / std::pow(basis.lambdas[k], 2);
        for (double v : modal_source(lin, 1.0, basis, k)) CHECK(v == doctest::Approx(expect).epsilon(1e-9));
    }

    BoundaryRecord zero(g, tg);
    CHECK(series_coefficient(zero, 1.0, basis, 3) == 0.0);
    CHECK(l2_norm(reconstruct_series(zero, 1.0, basis)) == 0.0);

    // <E g, psi_k>_{c^-2} = lambda_k^-2 int g d_nu psi_k (inward normal), exactly in the discrete setting
    const auto g2 = GridSpec::square(-1.0, 1.0, 30);
    const auto m2 = Medium::make(build_sound_speed(g2, SoundSpeedPreset::two_d()), DampingSpec::constant(1.0));
    const auto b2 = dirichlet_eigs(m2, g2, 30);
    const auto sensors = boundary_sensors(g2);
    std::vector<double> vals(sensors.size());
    for (std::size_t s = 0; s < vals.size(); ++s) vals[s] = std::cos(2.0 * sensors.points[s][0]) + sensors.points[s][1];
    const auto E = harmonic_extension(vals, g2);
    double prev_err = 1e300;
    ScalarField partial(g2);
    for (int k = 0; k < b2.count(); ++k) {
        double flux = 0.0;
        for (std::size_t s = 0; s < vals.size(); ++s) flux += b2.sensors.weights[s] * b2.normal_derivs[k][s] * vals[s];
        const double coef = flux / (b2.lambdas[k] * b2.lambdas[k]);
        CHECK(coef == doctest::Approx(b2.weighted_inner(E, b2.modes[k])).epsilon(1e-9));
        partial += coef * b2.modes[k];
        const auto d = E - partial;
        const double err = b2.weighted_inner(d, d);
        CHECK(err <= prev_err * (1.0 + 1e-12));  // Parseval: monotone in K
        prev_err = err;
    }
}

TEST_CASE("modal ODE oracle for the bounded problem")
{
    const auto g = GridSpec::line(-1.0, 1.0, 200);
    const auto m = unit_medium(g, 1.0);
    const auto basis = dirichlet_eigs(m, g, 10);
    SolverOptions opt;
    opt.store_history = true;
    const TimeGrid tg{4.0, 400};
    const auto res = simulate_forward(basis.modes[2], m, tg, 0.0, opt);
    const double lam = basis.lambdas[2];
    const double w = std::sqrt(lam * lam - 0.25);
    double err = 0.0, ref = 0.0;
    for (int j = 0; j < tg.n_steps; ++j) {
        const double t = tg.time(j);
        const double u = basis.weighted_inner(res.history[j], basis.modes[2]);
        const double ue = std::exp(-0.5 * t) * (std::cos(w * t) + std::sin(w * t) / (2.0 * w));
        err += (u - ue) * (u - ue);
        ref += ue * ue;
    }
    CHECK(std::sqrt(err / ref) < 0.02);
}

TEST_CASE("series reconstruction from free-space data")
{
    const auto g = GridSpec::line(-1.0, 1.0, 200);
    const auto m = unit_medium(g, 1.0);
    const auto basis = dirichlet_eigs(m, g, 40);
    const TimeGrid tg{4.0, 3201};

    const auto psi3 = ScalarField::from_function(g, [](const Point& x) { return std::sin(1.5 * pi * (x[0] + 1.0)); });
    const auto data = simulate_forward(psi3, m, tg, 4.0).g;
    const double truth = basis.lambdas[2] * basis.lambdas[2] * basis.weighted_inner(psi3, basis.modes[2]);
    CHECK(series_coefficient(data, 1.0, basis, 2) == doctest::Approx(truth).epsilon(0.03));
    const auto rec = reconstruct_series(data, 1.0, truncated(basis, 20));
    const auto d = rec - psi3;
    CHECK(std::sqrt(basis.weighted_inner(d, d) / basis.weighted_inner(psi3, psi3)) < 0.05);

    const auto gauss = build_phantom(PhantomSpec{GaussianPhantom{{0.5, 0.0}, 1.0, 0.25}}, g);
    const auto rg = reconstruct_series(simulate_forward(gauss, m, tg, 4.0).g, 1.0, basis);
    const auto dg = rg - gauss;
    CHECK(std::sqrt(basis.weighted_inner(dg, dg) / basis.weighted_inner(gauss, gauss)) < 0.10);
}
