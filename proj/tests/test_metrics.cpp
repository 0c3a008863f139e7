#include <cmath>

#include "doctest.h"
#include "pat/errors.hpp"
#include "pat/metrics.hpp"

using namespace pat;

namespace {

ScalarField field(std::vector<double> v)
{
    const auto g = GridSpec::line(0.0, 1.0, static_cast<int>(v.size()));
    return ScalarField(g, std::move(v));
}

}  // namespace

TEST_CASE("mse")
{
    CHECK(mse(field({1, 2, 3}), field({1, 2, 3})) == 0.0);
    CHECK(mse(field({0, 0, 0}), field({1, 1, 1})) == 1.0);
    CHECK(mse(field({1, 2, 3}), field({1, 1, 5})) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(mse(field({1, 2, 3}), field({1, 2, 3, 4})), ConfigError);
}

TEST_CASE("psnr")
{
    CHECK(psnr(field({1, 2, 3}), field({1, 2, 3})) == 200.0);
    // M = 1, mse = 0.01
    CHECK(psnr(field({1.0, 0.0, 0.0, 0.0}), field({1.0, 0.2, 0.0, 0.0})) == doctest::Approx(20.0).epsilon(1e-14));
    const auto a = field({0.3, 0.9, 0.1});
    const auto b = field({0.2, 1.0, 0.4});
    CHECK(psnr(2.0 * a, 2.0 * b) == doctest::Approx(psnr(a, b)).epsilon(1e-14));
    CHECK_THROWS_AS(psnr(field({0, 0, 0}), field({0, 0, 0})), ConfigError);
}

TEST_CASE("ssim")
{
    const auto a = field({0.3, 0.9, 0.1, 0.5});
    CHECK(ssim(a, a) == 1.0);
    CHECK(ssim(a, field({0.1, 0.2, 0.8, 0.4})) == ssim(field({0.1, 0.2, 0.8, 0.4}), a));
    const auto z = field({-1.0, 1.0, -2.0, 2.0});
    const double anti = ssim(z, -1.0 * z);
    CHECK(anti <= 0.0);
    CHECK(anti >= -1.0);

    // a = [0,1,0,1], b = [0,0.5,0,0.5], L = 1: mu = (0.5, 0.25), var = (0.25, 0.0625), cov = 0.125
    const double c1 = 1e-4, c2 = 9e-4;
    const double expect = (2 * 0.5 * 0.25 + c1) * (2 * 0.125 + c2) / ((0.25 + 0.0625 + c1) * (0.25 + 0.0625 + c2));
    CHECK(ssim(field({0.0, 1.0, 0.0, 1.0}), field({0.0, 0.5, 0.0, 0.5})) == doctest::Approx(expect).epsilon(1e-14));
    CHECK_THROWS_AS(ssim(field({0.0, 1.0, 2.0}), field({0.0, 1.0, 2.0, 3.0})), ConfigError);
}
