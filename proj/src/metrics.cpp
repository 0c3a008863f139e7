#include "pat/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "pat/errors.hpp"

namespace pat {
namespace {

void check_same(const ScalarField& a, const ScalarField& b)
{
    require(a.grid == b.grid && a.size() == b.size(), "metrics: fields live on different grids");
    require(a.size() > 0, "metrics: empty field");
}

}  // namespace

double mse(const ScalarField& a, const ScalarField& b)
{
    check_same(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double psnr(const ScalarField& a, const ScalarField& b, double cap)
{
    check_same(a, b);
    const bool zero_a = std::all_of(a.values.begin(), a.values.end(), [](double v) { return v == 0.0; });
    const bool zero_b = std::all_of(b.values.begin(), b.values.end(), [](double v) { return v == 0.0; });
    require(!(zero_a && zero_b), "psnr: undefined for two zero fields");
    const double e = mse(a, b);
    if (e == 0.0) {
        return cap;
    }
    const double peak = std::max(a.max(), b.max());
    return 10.0 * std::log10(peak * peak / e);
}

double ssim(const ScalarField& a, const ScalarField& b)
{
    check_same(a, b);
    const double n = static_cast<double>(a.size());
    double mu_a = 0.0;
    double mu_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mu_a += a[i];
        mu_b += b[i];
    }
    mu_a /= n;
    mu_b /= n;
    double var_a = 0.0;
    double var_b = 0.0;
    double cov = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mu_a;
        const double db = b[i] - mu_b;
        var_a += da * da;
        var_b += db * db;
        cov += da * db;
    }
    var_a /= n;
    var_b /= n;
    cov /= n;

    const double L = std::max(std::max(a.max(), b.max()) - std::min(a.min(), b.min()), 1e-12);
    const double c1 = (0.01 * L) * (0.01 * L);
    const double c2 = (0.03 * L) * (0.03 * L);
    return ((2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)) / ((mu_a * mu_a + mu_b * mu_b + c1) * (var_a + var_b + c2));
}

}  // namespace pat
