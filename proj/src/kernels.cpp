#include "pat/kernels.hpp"

#include <cstddef>

namespace pat::kernels {
namespace {

struct Stencil {
    int n0;
    int n1;
    bool two_d;
    double ih0;  // 1/h0^2
    double ih1;  // 1/h1^2 (unused in 1D)

    explicit Stencil(const GridSpec& g)
        : n0(g.n[0]), n1(g.n[1]), two_d(g.dim == 2), ih0(1.0 / (g.spacing(0) * g.spacing(0))),
          ih1(g.dim == 2 ? 1.0 / (g.spacing(1) * g.spacing(1)) : 0.0)
    {
    }

    // Lap_h(w * u) at interior node idx; w == nullptr means w = 1.
    double apply(const double* u, const double* w, std::size_t idx) const
    {
        const std::size_t s0 = static_cast<std::size_t>(n1);
        auto at = [&](std::size_t j) { return w ? w[j] * u[j] : u[j]; };
        const double centre = at(idx);
        double r = (at(idx - s0) - 2.0 * centre + at(idx + s0)) * ih0;
        if (two_d) {
            r += (at(idx - 1) - 2.0 * centre + at(idx + 1)) * ih1;
        }
        return r;
    }

    int first_col() const { return two_d ? 1 : 0; }
    int last_col() const { return two_d ? n1 - 1 : 1; }  // exclusive
};

void zero_row(const Stencil& s, int i0, double* out)
{
    for (int i1 = 0; i1 < s.n1; ++i1) out[static_cast<std::size_t>(i0) * s.n1 + i1] = 0.0;
}

void laplacian_row(const Stencil& s, int i0, const double* u, double* out)
{
    if (i0 == 0 || i0 == s.n0 - 1) {
        zero_row(s, i0, out);
        return;
    }
    const std::size_t base = static_cast<std::size_t>(i0) * s.n1;
    if (s.two_d) {
        out[base] = 0.0;
        out[base + s.n1 - 1] = 0.0;
    }
    for (int i1 = s.first_col(); i1 < s.last_col(); ++i1) out[base + i1] = s.apply(u, nullptr, base + i1);
}

void step_row(const Stencil& s, int i0, Operator op, const double* c2, const double* prev, const double* cur,
              double* next, const StepCoefficients& k)
{
    if (i0 == 0 || i0 == s.n0 - 1) {
        zero_row(s, i0, next);
        return;
    }
    const std::size_t base = static_cast<std::size_t>(i0) * s.n1;
    if (s.two_d) {
        next[base] = 0.0;
        next[base + s.n1 - 1] = 0.0;
    }
    for (int i1 = s.first_col(); i1 < s.last_col(); ++i1) {
        const std::size_t idx = base + i1;
        const double lap = op == Operator::ScaledLaplacian ? c2[idx] * s.apply(cur, nullptr, idx)
                                                           : s.apply(cur, c2, idx);
        next[idx] = k.a_inv * (2.0 * cur[idx] - k.b * prev[idx] + k.dt2 * (lap - k.reaction * cur[idx]));
    }
}

}  // namespace

namespace serial {

void laplacian(const GridSpec& g, std::span<const double> u, std::span<double> out)
{
    const Stencil s(g);
    for (int i0 = 0; i0 < s.n0; ++i0) laplacian_row(s, i0, u.data(), out.data());
}

void leapfrog_step(const GridSpec& g, Operator op, std::span<const double> c2, std::span<const double> prev,
                   std::span<const double> cur, std::span<double> next, const StepCoefficients& k)
{
    const Stencil s(g);
    for (int i0 = 0; i0 < s.n0; ++i0) step_row(s, i0, op, c2.data(), prev.data(), cur.data(), next.data(), k);
}

void pointwise_sweep(std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out)
{
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = pointwise_argmin(b0[i], prev[i], p);
}

}  // namespace serial

namespace omp {

void laplacian(const GridSpec& g, std::span<const double> u, std::span<double> out)
{
    const Stencil s(g);
#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < s.n0; ++i0) laplacian_row(s, i0, u.data(), out.data());
}

void leapfrog_step(const GridSpec& g, Operator op, std::span<const double> c2, std::span<const double> prev,
                   std::span<const double> cur, std::span<double> next, const StepCoefficients& k)
{
    const Stencil s(g);
#pragma omp parallel for schedule(static)
    for (int i0 = 0; i0 < s.n0; ++i0) step_row(s, i0, op, c2.data(), prev.data(), cur.data(), next.data(), k);
}

void pointwise_sweep(std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out)
{
    const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = pointwise_argmin(b0[i], prev[i], p);
}

}  // namespace omp

void laplacian(Backend be, const GridSpec& g, std::span<const double> u, std::span<double> out)
{
    if (be == Backend::Serial) {
        serial::laplacian(g, u, out);
    } else {
        omp::laplacian(g, u, out);
    }
}

void leapfrog_step(Backend be, const GridSpec& g, Operator op, std::span<const double> c2,
                   std::span<const double> prev, std::span<const double> cur, std::span<double> next,
                   const StepCoefficients& k)
{
    if (be == Backend::Serial) {
        serial::leapfrog_step(g, op, c2, prev, cur, next, k);
    } else {
        omp::leapfrog_step(g, op, c2, prev, cur, next, k);
    }
}

void pointwise_sweep(Backend be, std::span<const double> b0, std::span<const double> prev, const PointwiseParams& p,
                     std::span<double> out)
{
    if (be == Backend::Serial) {
        serial::pointwise_sweep(b0, prev, p, out);
    } else {
        omp::pointwise_sweep(b0, prev, p, out);
    }
}

}  // namespace pat::kernels
