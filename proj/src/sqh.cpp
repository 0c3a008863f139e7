#include "pat/sqh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pat/errors.hpp"

namespace pat {
namespace {

kernels::PointwiseParams pointwise_params(const SqhParams& p, double eps)
{
    return {p.alpha, p.beta, p.p_lo, p.p_hi, eps};
}

double hamiltonian(double v, double b0, const SqhParams& p)
{
    return 0.5 * p.alpha * v * v + p.beta * std::abs(v) + b0 * v;
}

double weighted_sq_distance(const ScalarField& a, const ScalarField& b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc * a.grid.cell_volume();
}

}  // namespace

void SqhParams::validate() const
{
    require(alpha >= 0.0 && beta >= 0.0, "sqh: alpha and beta must be non-negative");
    require(0.0 <= p_lo && p_lo <= p_hi, "sqh: need 0 <= p_lo <= p_hi");
    require(eps0 > 0.0, "sqh: eps0 must be positive");
    require(inc_factor > 1.0, "sqh: inc_factor must exceed 1");
    require(dec_factor > 0.0 && dec_factor < 1.0, "sqh: dec_factor must lie in (0, 1)");
    require(eta > 0.0 && kappa > 0.0, "sqh: eta and kappa must be positive");
    require(k_max >= 1, "sqh: k_max must be at least 1");
    require(eps_max > eps0, "sqh: eps_max must exceed eps0");
    require(data_weight > 0.0, "sqh: data_weight must be positive");
}

double SqhParams::pad_for(const Medium& medium, double t_final) const
{
    return pad_width >= 0.0 ? pad_width : std::max(1.0, medium.c_max) * t_final;
}

CostValue cost_functional(const ScalarField& p0, const BoundaryRecord& g, const Medium& medium,
                          const SqhParams& params, const SolverOptions& opt)
{
    params.validate();
    require(p0.grid == g.grid, "cost: p0 and data live on different grids");
    CostValue out;
    ScalarField p = p0;
    for (double& v : p.values) {
        const double c = std::clamp(v, params.p_lo, params.p_hi);
        out.clamped = out.clamped || c != v;
        v = c;
    }
    const ForwardResult fwd = simulate_forward(p, medium, g.times, params.pad_for(medium, g.times.t_final), opt);
    out.data_term = 0.5 * params.data_weight * boundary_time_integral_sq(fwd.g - g);
    double l2 = 0.0;
    double l1 = 0.0;
    for (double v : p.values) {
        l2 += v * v;
        l1 += std::abs(v);
    }
    const double vol = p.grid.cell_volume();
    out.regularizer = (0.5 * params.alpha * l2 + params.beta * l1) * vol;
    out.J = out.data_term + out.regularizer;
    out.trace = fwd.g;
    return out;
}

double pointwise_min(double b0, double p_prev, const SqhParams& params, double eps)
{
    require(eps >= 0.0, "pointwise_min: eps must be non-negative");
    if (0.5 * params.alpha + eps > 0.0) {
        return kernels::pointwise_argmin(b0, p_prev, pointwise_params(params, eps));
    }
    // linear in v on each sign branch: the minimum sits at an end point or at the kink
    const double candidates[] = {params.p_lo, params.p_hi, std::clamp(0.0, params.p_lo, params.p_hi)};
    double best = candidates[0];
    for (double v : candidates) {
        if (hamiltonian(v, b0, params) < hamiltonian(best, b0, params)) {
            best = v;
        }
    }
    return best;
}

AdjointTraces adjoint_for(const CostValue& cost, const BoundaryRecord& g, const Medium& medium,
                          const SqhParams& params, const SolverOptions& opt)
{
    BoundaryRecord residual = cost.trace - g;
    residual *= params.data_weight;
    const double pad = params.pad_for(medium, g.times.t_final);
    if (params.gradient == GradientScheme::Discrete) {
        return discrete_adjoint(residual, medium, g.times, pad, opt);
    }
    return simulate_adjoint(residual, medium, g.times, pad, opt);
}

ScalarField smooth_gradient(const ScalarField& p0, const AdjointTraces& traces, const SqhParams& params)
{
    ScalarField grad = hamiltonian_kernel(traces);
    require(grad.grid == p0.grid, "gradient: traces and p0 live on different grids");
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += params.alpha * p0[i];
    return grad;
}

SqhRun sqh_solve(const BoundaryRecord& g, const Medium& medium, const SqhParams& params, const ScalarField& p0_init,
                 const SolverOptions& opt, const SqhLogger& log)
{
    params.validate();
    require(p0_init.grid == g.grid, "sqh: initial guess and data live on different grids");
    for (double v : p0_init.values) {
        require(v >= params.p_lo - 1e-12 && v <= params.p_hi + 1e-12, "sqh: initial guess outside the box");
    }

    SqhRun run;
    ScalarField p = p0_init;
    for (double& v : p.values) v = std::clamp(v, params.p_lo, params.p_hi);
    CostValue cur = cost_functional(p, g, medium, params, opt);
    run.initial_J = cur.J;
    double eps = params.eps0;
    run.max_eps = eps;
    ScalarField trial(p.grid);

    int k = 0;
    while (k < params.k_max) {
        // (a) adjoint at the current iterate
        const ScalarField b0 = hamiltonian_kernel(adjoint_for(cur, g, medium, params, opt));
        double tau = 0.0;
        while (true) {
            // (b) pointwise minimisation of the augmented Hamiltonian
            kernels::pointwise_sweep(opt.backend, b0.values, p.values, pointwise_params(params, eps), trial.values);
            // (c) forward solve, (d) step size
            CostValue next = cost_functional(trial, g, medium, params, opt);
            tau = weighted_sq_distance(trial, p);
            SqhIterate it{k + 1, next.J, eps, tau, false};
            // (e) sufficient decrease
            if (next.J - cur.J <= -params.eta * tau) {
                it.accepted = true;
                run.iterates.push_back(it);
                if (log) log(it);
                eps *= params.dec_factor;
                p = trial;
                cur = std::move(next);
                ++k;
                ++run.accepted_steps;
                break;
            }
            run.iterates.push_back(it);
            if (log) log(it);
            ++run.inner_rejections;
            eps *= params.inc_factor;
            run.max_eps = std::max(run.max_eps, eps);
            if (eps > params.eps_max) {
                std::ostringstream msg;
                msg << "sqh: epsilon exceeded eps_max (" << params.eps_max << ") at iteration " << k + 1
                    << " with tau = " << tau << "; stationary point or inconsistent gradient";
                throw NumericalError(msg.str());
            }
        }
        if (tau <= params.kappa) {
            run.converged = true;
            break;
        }
    }
    run.final_p0 = p;
    run.final_J = cur.J;
    return run;
}

double pmp_residual(const ScalarField& p0, const AdjointTraces& traces, const SqhParams& params)
{
    const ScalarField kernel = hamiltonian_kernel(traces);
    require(kernel.grid == p0.grid, "pmp residual: traces and p0 live on different grids");
    double worst = 0.0;
    for (std::size_t i = 0; i < p0.size(); ++i) {
        const double vmin = pointwise_min(kernel[i], p0[i], params, 0.0);
        worst = std::max(worst, hamiltonian(p0[i], kernel[i], params) - hamiltonian(vmin, kernel[i], params));
    }
    return worst;
}

}  // namespace pat
