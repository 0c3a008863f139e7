#include "pat/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <string>

#include "pat/errors.hpp"
#include "pat/resample.hpp"

namespace pat {
namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Interior nodes in grid order, and grid index -> interior index (-1 on dOmega).
struct InteriorMap {
    std::vector<std::size_t> nodes;
    std::vector<long> slot;

    explicit InteriorMap(const GridSpec& g) : slot(g.size(), -1)
    {
        for (std::size_t i = 0; i < g.size(); ++i) {
            const int i0 = g.dim == 1 ? static_cast<int>(i) : static_cast<int>(i / g.n[1]);
            const int i1 = g.dim == 1 ? 0 : static_cast<int>(i % g.n[1]);
            if (!g.is_boundary(i0, i1)) {
                slot[i] = static_cast<long>(nodes.size());
                nodes.push_back(i);
            }
        }
    }
};

// -Lap_h restricted to interior nodes (Dirichlet), optionally scaled as C A C.
SpMat neg_laplacian(const GridSpec& g, const InteriorMap& map, const std::vector<double>* scale = nullptr)
{
    std::vector<Eigen::Triplet<double>> trip;
    const long n = static_cast<long>(map.nodes.size());
    trip.reserve(static_cast<std::size_t>(n) * (g.dim == 1 ? 3 : 5));
    const double ih0 = 1.0 / (g.spacing(0) * g.spacing(0));
    const double ih1 = g.dim == 2 ? 1.0 / (g.spacing(1) * g.spacing(1)) : 0.0;
    const std::size_t s0 = static_cast<std::size_t>(g.n[1]);
    auto sc = [&](long r) { return scale ? (*scale)[static_cast<std::size_t>(r)] : 1.0; };
    for (long r = 0; r < n; ++r) {
        const std::size_t idx = map.nodes[r];
        trip.emplace_back(r, r, 2.0 * (ih0 + ih1) * sc(r) * sc(r));
        auto couple = [&](std::size_t nb, double w) {
            const long c = map.slot[nb];
            if (c >= 0) {
                trip.emplace_back(r, c, -w * sc(r) * sc(c));
            }
        };
        couple(idx - s0, ih0);
        couple(idx + s0, ih0);
        if (g.dim == 2) {
            couple(idx - 1, ih1);
            couple(idx + 1, ih1);
        }
    }
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns
};

EigenPairs dense_smallest(const SpMat& B, int K)
{
    const Eigen::MatrixXd dense(B);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    if (es.info() != Eigen::Success) {
        throw NumericalError("eigensolver: dense symmetric solver failed");
    }
    return {es.eigenvalues().head(K), es.eigenvectors().leftCols(K)};
}

// Orthonormalise column j of Q against columns [0, j) twice (classical Gram-Schmidt with reorthogonalisation).
double orthonormalise(Eigen::MatrixXd& Q, Eigen::Index j)
{
    for (int pass = 0; pass < 2; ++pass) {
        if (j > 0) {
            const Eigen::VectorXd coef = Q.leftCols(j).transpose() * Q.col(j);
            Q.col(j) -= Q.leftCols(j) * coef;
        }
    }
    const double nrm = Q.col(j).norm();
    if (nrm > 0.0) {
        Q.col(j) /= nrm;
    }
    return nrm;
}

// Smallest K eigenpairs of SPD B via Rayleigh-Ritz on the block Krylov space of B^{-1}.
// The block start (size 4) resolves eigenvalue multiplicities up to 4, which the square domain produces.
EigenPairs lanczos_smallest(const SpMat& B, int K)
{
    const Eigen::Index n = B.rows();
    Eigen::SimplicialLLT<SpMat> chol(B);
    if (chol.info() != Eigen::Success) {
        throw NumericalError("eigensolver: sparse Cholesky factorisation failed");
    }
    constexpr Eigen::Index block = 4;
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    auto random_fill = [&](Eigen::MatrixXd& M, Eigen::Index col) {
        for (Eigen::Index i = 0; i < n; ++i) M(i, col) = normal(rng);
    };

    Eigen::Index m = std::min<Eigen::Index>(n, ((3 * K + 40 + block - 1) / block) * block);
    while (true) {
        Eigen::MatrixXd Q(n, m);
        Eigen::MatrixXd W(n, m);  // B^{-1} Q
        Eigen::Index filled = 0;
        for (Eigen::Index j = 0; j < std::min(block, m); ++j) {
            random_fill(Q, j);
            orthonormalise(Q, j);
            ++filled;
        }
        Eigen::Index applied = 0;
        while (applied < filled) {
            W.col(applied) = chol.solve(Q.col(applied));
            if (filled < m) {
                Q.col(filled) = W.col(applied);
                const double ref = W.col(applied).norm();
                if (orthonormalise(Q, filled) <= 1e-10 * ref) {
                    // invariant subspace reached: continue from a fresh random direction
                    random_fill(Q, filled);
                    orthonormalise(Q, filled);
                }
                ++filled;
            }
            ++applied;
        }

        Eigen::MatrixXd H = Q.transpose() * W;
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        if (es.info() != Eigen::Success) {
            throw NumericalError("eigensolver: projected problem failed");
        }
        // largest Ritz values of B^{-1} are the smallest of B; SelfAdjointEigenSolver sorts ascending
        EigenPairs out{Eigen::VectorXd(K), Eigen::MatrixXd(n, K)};
        double worst = 0.0;
        for (int k = 0; k < K; ++k) {
            const Eigen::Index col = m - 1 - k;
            Eigen::VectorXd y = Q * es.eigenvectors().col(col);
            y.normalize();
            const Eigen::VectorXd By = B * y;
            const double mu = y.dot(By);
            out.values(k) = mu;
            out.vectors.col(k) = y;
            worst = std::max(worst, (By - mu * y).norm() / mu);
        }
        if (worst <= 1e-8) {
            return out;
        }
        if (m == n) {
            throw NumericalError("eigensolver: Lanczos did not converge (residual " + std::to_string(worst) + ")");
        }
        m = std::min<Eigen::Index>(n, 2 * m);
    }
}

Medium medium_on(const Medium& medium, const GridSpec& grid)
{
    if (medium.sound_speed.grid == grid) {
        return medium;
    }
    return Medium::make(resample(medium.sound_speed, grid), medium.damping);
}

// Central second-order derivatives in time, one-sided second order at the ends.
void time_derivatives(const std::vector<double>& f, double dt, std::vector<double>& d1, std::vector<double>& d2)
{
    const std::size_t n = f.size();
    d1.assign(n, 0.0);
    d2.assign(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        d1[j] = (f[j + 1] - f[j - 1]) / (2.0 * dt);
        d2[j] = (f[j + 1] - 2.0 * f[j] + f[j - 1]) / (dt * dt);
    }
    d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
    d1[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
    if (n >= 4) {
        d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (dt * dt);
        d2[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (dt * dt);
    } else {
        d2[0] = d2[1];
        d2[n - 1] = d2[n - 2];
    }
}

void check_basis_matches(const BoundaryRecord& g, const EigenBasis& basis, int k)
{
    require(g.grid == basis.grid, "spectral: data sensors do not match the eigenbasis grid");
    require(k >= 0 && k < basis.count(), "spectral: mode index out of range");
    require(g.times.n_steps >= 3, "spectral: need at least 3 time samples");
    require(g.all_finite(), "spectral: data has non-finite samples");
}

// Boundary integral int_dOmega f d_nu psi_k ds for every time sample of f.
std::vector<double> project_boundary(const std::vector<std::vector<double>>& f, const EigenBasis& basis, int k)
{
    const auto& dn = basis.normal_derivs[k];
    const std::size_t nt = f.front().size();
    std::vector<double> out(nt, 0.0);
    for (std::size_t s = 0; s < f.size(); ++s) {
        const double w = basis.sensors.weights[s] * dn[s];
        if (w == 0.0) continue;
        for (std::size_t j = 0; j < nt; ++j) out[j] += w * f[s][j];
    }
    return out;
}

// (g_tt + gamma g_t) per sensor
std::vector<std::vector<double>> source_traces(const BoundaryRecord& g, double gamma)
{
    const int nt = g.times.n_steps;
    std::vector<std::vector<double>> out(g.n_sensors());
    std::vector<double> row(nt), d1, d2;
    for (std::size_t s = 0; s < g.n_sensors(); ++s) {
        for (int j = 0; j < nt; ++j) row[j] = g.at(s, j);
        time_derivatives(row, g.times.dt(), d1, d2);
        out[s].resize(nt);
        for (int j = 0; j < nt; ++j) out[s][j] = d2[j] + gamma * d1[j];
    }
    return out;
}

double coefficient_from_sources(const BoundaryRecord& g, const std::vector<std::vector<double>>& src, double gamma,
                                const EigenBasis& basis, int k)
{
    double initial = 0.0;
    for (std::size_t s = 0; s < g.n_sensors(); ++s) {
        initial += basis.sensors.weights[s] * basis.normal_derivs[k][s] * g.at(s, 0);
    }
    const std::vector<double> flux = project_boundary(src, basis, k);
    const auto wt = trapezoid_weights(g.times);
    std::complex<double> acc = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.times.n_steps; ++j) {
        const std::complex<double> term = wt[j] * modal_kernel(gamma, basis.lambdas[k], g.times.time(j)) * flux[j];
        acc += term;
        scale += std::abs(term);
    }
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) {
        throw NumericalError("spectral: non-finite modal integral for mode " + std::to_string(k));
    }
    if (std::abs(acc.imag()) > 1e-8 * std::max(scale, 1e-300)) {
        throw NumericalError("spectral: modal integral has a non-negligible imaginary part for mode " +
                             std::to_string(k));
    }
    return initial + acc.real();
}

}  // namespace

double EigenBasis::weighted_inner(const ScalarField& a, const ScalarField& b) const
{
    require(a.grid == grid && b.grid == grid, "eigenbasis: field on a different grid");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i] * weight[i];
    return acc * grid.cell_volume();
}

int max_modes(const GridSpec& grid)
{
    grid.validate();
    const int interior = grid.dim == 1 ? grid.n[0] - 2 : (grid.n[0] - 2) * (grid.n[1] - 2);
    return interior / 4;
}

int default_modes(const GridSpec& grid)
{
    return std::min(40, max_modes(grid));
}

EigenBasis dirichlet_eigs(const Medium& medium, const GridSpec& grid, int K, EigenMethod method)
{
    grid.validate();
    require(K >= 1, "eigenbasis: K must be positive");
    require(K <= max_modes(grid), "eigenbasis: K = " + std::to_string(K) + " exceeds the resolvable maximum " +
                                      std::to_string(max_modes(grid)));
    const Medium med = medium_on(medium, grid);
    const InteriorMap map(grid);
    const long n = static_cast<long>(map.nodes.size());

    std::vector<double> c(n);
    for (long r = 0; r < n; ++r) c[r] = med.sound_speed[map.nodes[r]];
    const SpMat B = neg_laplacian(grid, map, &c);

    if (method == EigenMethod::Auto) {
        method = n <= 2000 ? EigenMethod::Dense : EigenMethod::Lanczos;
    }
    const EigenPairs pairs = method == EigenMethod::Dense ? dense_smallest(B, K) : lanczos_smallest(B, K);

    EigenBasis basis;
    basis.grid = grid;
    basis.sensors = boundary_sensors(grid);
    basis.weight = ScalarField(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        basis.weight[i] = 1.0 / (med.sound_speed[i] * med.sound_speed[i]);
    }
    const double inv_sqrt_vol = 1.0 / std::sqrt(grid.cell_volume());
    for (int k = 0; k < K; ++k) {
        const double mu = pairs.values(k);
        if (!(mu > 0.0)) {
            throw NumericalError("eigenbasis: non-positive eigenvalue");
        }
        basis.lambdas.push_back(std::sqrt(mu));
        // psi = C y, scaled so that sum psi^2 c^-2 vol = |y|^2 = 1
        ScalarField psi(grid);
        for (long r = 0; r < n; ++r) psi[map.nodes[r]] = c[r] * pairs.vectors(r, k) * inv_sqrt_vol;
        // deterministic sign: largest-magnitude entry positive
        std::size_t arg = 0;
        for (std::size_t i = 1; i < psi.size(); ++i) {
            if (std::abs(psi[i]) > std::abs(psi[arg]) * (1.0 + 1e-9)) arg = i;
        }
        if (psi[arg] < 0.0) psi *= -1.0;

        std::vector<double> dn(basis.sensors.size(), 0.0);
        for (std::size_t s = 0; s < dn.size(); ++s) {
            const double h = basis.sensors.normal_spacing[s];
            dn[s] = h > 0.0 ? psi[basis.sensors.inward[s]] / h : 0.0;
        }
        basis.modes.push_back(std::move(psi));
        basis.normal_derivs.push_back(std::move(dn));
    }
    return basis;
}

ScalarField harmonic_extension(const std::vector<double>& boundary_values, const GridSpec& grid)
{
    grid.validate();
    const SensorLayout sensors = boundary_sensors(grid);
    require(boundary_values.size() == sensors.size(), "harmonic extension: expected one value per boundary node");
    for (double v : boundary_values) require(std::isfinite(v), "harmonic extension: non-finite boundary value");

    if (grid.dim == 1) {
        const double a = boundary_values[0];
        const double b = boundary_values[1];
        const double len = grid.hi[0] - grid.lo[0];
        ScalarField u = ScalarField::from_function(grid, [&](const Point& x) { return a + (b - a) * (x[0] - grid.lo[0]) / len; });
        u[0] = a;
        u[grid.size() - 1] = b;
        return u;
    }

    const InteriorMap map(grid);
    const SpMat A = neg_laplacian(grid, map);
    ScalarField u(grid);
    for (std::size_t s = 0; s < sensors.size(); ++s) u[sensors.nodes[s]] = boundary_values[s];

    // move the Dirichlet couplings to the right-hand side
    const long n = static_cast<long>(map.nodes.size());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    const double ih0 = 1.0 / (grid.spacing(0) * grid.spacing(0));
    const double ih1 = 1.0 / (grid.spacing(1) * grid.spacing(1));
    const std::size_t s0 = static_cast<std::size_t>(grid.n[1]);
    for (long r = 0; r < n; ++r) {
        const std::size_t idx = map.nodes[r];
        auto add = [&](std::size_t nb, double w) {
            if (map.slot[nb] < 0) rhs(r) += w * u[nb];
        };
        add(idx - s0, ih0);
        add(idx + s0, ih0);
        add(idx - 1, ih1);
        add(idx + 1, ih1);
    }
    Eigen::SimplicialLDLT<SpMat> solver(A);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("harmonic extension: factorisation failed");
    }
    const Eigen::VectorXd x = solver.solve(rhs);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("harmonic extension: solve failed");
    }
    const double res = (A * x - rhs).lpNorm<Eigen::Infinity>();
    if (res > 1e-10 * std::max(1.0, rhs.lpNorm<Eigen::Infinity>())) {
        throw NumericalError("harmonic extension: residual " + std::to_string(res) + " too large");
    }
    for (long r = 0; r < n; ++r) u[map.nodes[r]] = x(r);
    return u;
}

ModalCoefficients modal_coefficients(double gamma, const std::vector<double>& lambdas)
{
    ModalCoefficients mc;
    mc.gamma = gamma;
    for (double lam : lambdas) {
        const std::complex<double> A = std::sqrt(std::complex<double>(gamma * gamma - 4.0 * lam * lam, 0.0));
        mc.A.push_back(A);
        mc.B_plus.push_back(0.5 * (-gamma + A));
        mc.B_minus.push_back(0.5 * (-gamma - A));
    }
    return mc;
}

std::complex<double> modal_kernel(double gamma, double lambda, double t)
{
    const std::complex<double> A = std::sqrt(std::complex<double>(gamma * gamma - 4.0 * lambda * lambda, 0.0));
    if (std::abs(A) < 1e-8 * std::max(gamma, lambda)) {
        return -t * std::exp(0.5 * gamma * t);
    }
    const std::complex<double> bp = 0.5 * (-gamma + A);
    const std::complex<double> bm = 0.5 * (-gamma - A);
    return (std::exp(-bp * t) - std::exp(-bm * t)) / A;
}

std::vector<double> modal_source(const BoundaryRecord& g, double gamma, const EigenBasis& basis, int k)
{
    check_basis_matches(g, basis, k);
    std::vector<double> G = project_boundary(source_traces(g, gamma), basis, k);
    const double inv = 1.0 / (basis.lambdas[k] * basis.lambdas[k]);
    for (double& v : G) v *= inv;
    return G;
}

double series_coefficient(const BoundaryRecord& g, double gamma, const EigenBasis& basis, int k)
{
    check_basis_matches(g, basis, k);
    return coefficient_from_sources(g, source_traces(g, gamma), gamma, basis, k);
}

double series_decay_factor(double gamma, double lambda1, double t_final)
{
    const auto mc = modal_coefficients(gamma, {lambda1});
    return std::exp(mc.B_plus[0].real() * t_final);
}

ScalarField reconstruct_series(const BoundaryRecord& g, double gamma, const EigenBasis& basis)
{
    require(gamma >= 0.0, "spectral: gamma must be non-negative");
    check_basis_matches(g, basis, 0);
    const double decay = series_decay_factor(gamma, basis.lambdas.front(), g.times.t_final);
    if (decay > 0.05) {
        std::clog << "warning: slowest mode decays only to " << decay
                  << " of its amplitude by T; series truncation error may dominate\n";
    }
    const auto src = source_traces(g, gamma);
    ScalarField p0(basis.grid);
    for (int k = 0; k < basis.count(); ++k) {
        const double amp = coefficient_from_sources(g, src, gamma, basis, k) / (basis.lambdas[k] * basis.lambdas[k]);
        for (std::size_t i = 0; i < p0.size(); ++i) p0[i] += amp * basis.modes[k][i];
    }
    return p0;
}

ScalarField reconstruct_series(const BoundaryRecord& g, double gamma, const Medium& medium, const GridSpec& grid,
                               int K)
{
    return reconstruct_series(g, gamma, dirichlet_eigs(medium, grid, K));
}

}  // namespace pat
