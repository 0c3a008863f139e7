#pragma once

#include <functional>
#include <vector>

#include "pat/adjoint.hpp"
#include "pat/boundary.hpp"
#include "pat/medium.hpp"
#include "pat/wave_forward.hpp"

namespace pat {

/// Continuous: discretised adjoint PDE (gradient accurate to discretisation error).
/// Discrete: transpose of the forward scheme (gradient of the discrete J to round-off).
enum class GradientScheme { Continuous, Discrete };

/// J(p0) = (w/2) int_0^T int_dOmega (p - g)^2 + (alpha/2) ||p0||^2 + beta ||p0||_1 over the box [p_lo, p_hi].
struct SqhParams {
    double alpha = 0.2;
    double beta = 0.005;
    double p_lo = 0.0;
    double p_hi = 2.0;
    double eps0 = 1.0;
    double inc_factor = 5.0;  ///< epsilon growth on rejection
    double dec_factor = 0.9;  ///< epsilon shrink on acceptance
    double eta = 1e-3;        ///< sufficient decrease constant
    double kappa = 1e-8;      ///< stop when tau <= kappa
    int k_max = 300;
    double eps_max = 1e12;
    double data_weight = 1.0;  ///< w above; (n_t - 1)/T turns the time integral into a sample sum
    double pad_width = -1.0;   ///< free-space padding; negative = max(1, c_max) * T
    GradientScheme gradient = GradientScheme::Continuous;

    void validate() const;
    double pad_for(const Medium& medium, double t_final) const;
};

struct CostValue {
    double J = 0.0;
    double data_term = 0.0;
    double regularizer = 0.0;
    BoundaryRecord trace;  ///< forward trace, reused for the adjoint residual
    bool clamped = false;  ///< p0 had to be projected onto the box
};

CostValue cost_functional(const ScalarField& p0, const BoundaryRecord& g, const Medium& medium,
                          const SqhParams& params, const SolverOptions& opt = {});

/// argmin over [p_lo, p_hi] of (alpha/2) v^2 + beta |v| + b0 v + eps (v - p_prev)^2.
/// eps = 0 with alpha = 0 is the linear program solved over the box end points and 0.
double pointwise_min(double b0, double p_prev, const SqhParams& params, double eps);

/// Adjoint traces for the residual w (trace - g).
AdjointTraces adjoint_for(const CostValue& cost, const BoundaryRecord& g, const Medium& medium,
                          const SqhParams& params, const SolverOptions& opt = {});

/// Gradient of the smooth part: kernel + alpha p0 (the L1 term is not differentiated).
ScalarField smooth_gradient(const ScalarField& p0, const AdjointTraces& traces, const SqhParams& params);

struct SqhIterate {
    int k = 0;
    double J = 0.0;
    double eps = 0.0;
    double tau = 0.0;
    bool accepted = false;
};

struct SqhRun {
    std::vector<SqhIterate> iterates;  ///< every trial of step (b), accepted or not
    ScalarField final_p0;
    double final_J = 0.0;
    double initial_J = 0.0;
    int accepted_steps = 0;
    int inner_rejections = 0;
    double max_eps = 0.0;
    bool converged = false;  ///< tau <= kappa reached before k_max
};

using SqhLogger = std::function<void(const SqhIterate&)>;

/// Sequential quadratic Hamiltonian iteration with adaptive epsilon.
SqhRun sqh_solve(const BoundaryRecord& g, const Medium& medium, const SqhParams& params, const ScalarField& p0_init,
                 const SolverOptions& opt = {}, const SqhLogger& log = {});

/// sup_x [H(x, p0(x)) - min_{v in box} H(x, v)] with H(v) = (alpha/2) v^2 + beta |v| + kernel(x) v.
double pmp_residual(const ScalarField& p0, const AdjointTraces& traces, const SqhParams& params);

}  // namespace pat
