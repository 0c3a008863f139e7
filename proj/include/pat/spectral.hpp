#pragma once

#include <complex>
#include <vector>

#include "pat/boundary.hpp"
#include "pat/medium.hpp"

namespace pat {

/// Dirichlet eigenpairs of -c^2 Lap_h: (-Lap_h) psi = lambda^2 c^-2 psi on interior nodes,
/// psi = 0 on dOmega, orthonormal in sum psi_j psi_k c^-2 * cell_volume.
struct EigenBasis {
    GridSpec grid;
    SensorLayout sensors;
    ScalarField weight;                 ///< c^-2
    std::vector<double> lambdas;        ///< ascending, > 0
    std::vector<ScalarField> modes;
    /// Inward normal derivative at each sensor: psi(inward neighbour) / h (exact discrete flux),
    /// zero at 2D corners.
    std::vector<std::vector<double>> normal_derivs;

    int count() const { return static_cast<int>(lambdas.size()); }
    double weighted_inner(const ScalarField& a, const ScalarField& b) const;
};

enum class EigenMethod { Auto, Dense, Lanczos };

/// interior_points / 4: modes beyond this are under-resolved.
int max_modes(const GridSpec& grid);
/// min(40, max_modes)
int default_modes(const GridSpec& grid);

/// Dense: full symmetric eigensolver. Lanczos: shift-invert block Krylov subspace with full
/// reorthogonalisation on a sparse Cholesky factor. Auto picks dense below 2000 unknowns.
/// The medium's speed is resampled onto `grid` when needed.
EigenBasis dirichlet_eigs(const Medium& medium, const GridSpec& grid, int K, EigenMethod method = EigenMethod::Auto);

/// Discrete harmonic function with the given values at boundary_sensors(grid).
ScalarField harmonic_extension(const std::vector<double>& boundary_values, const GridSpec& grid);

struct ModalCoefficients {
    double gamma = 0.0;
    std::vector<std::complex<double>> A;        ///< sqrt(gamma^2 - 4 lambda^2), principal branch
    std::vector<std::complex<double>> B_plus;   ///< (-gamma + A) / 2
    std::vector<std::complex<double>> B_minus;  ///< (-gamma - A) / 2
};

ModalCoefficients modal_coefficients(double gamma, const std::vector<double>& lambdas);

/// (exp(-B+ t) - exp(-B- t)) / A, with the critical limit -t exp(gamma t / 2) when |A| is tiny.
std::complex<double> modal_kernel(double gamma, double lambda, double t);

/// G_k(t_j) = lambda_k^-2 int_dOmega (g_tt + gamma g_t) d_nu psi_k ds at every sample of g.
std::vector<double> modal_source(const BoundaryRecord& g, double gamma, const EigenBasis& basis, int k);

/// p_{0,k} = int g(., 0) d_nu psi_k ds + A_k^-1 int_0^T int_dOmega (e^{-B+ t} - e^{-B- t})(g_tt + gamma g_t) d_nu psi_k.
double series_coefficient(const BoundaryRecord& g, double gamma, const EigenBasis& basis, int k);

/// exp(Re(B_{1,+}) T): size of the slowest modal decay at the data horizon.
double series_decay_factor(double gamma, double lambda1, double t_final);

/// sum_{k < K} lambda_k^-2 p_{0,k} psi_k.
ScalarField reconstruct_series(const BoundaryRecord& g, double gamma, const EigenBasis& basis);
ScalarField reconstruct_series(const BoundaryRecord& g, double gamma, const Medium& medium, const GridSpec& grid,
                               int K);

}  // namespace pat
