// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "pat/experiment.hpp"
#include "pat/metrics.hpp"
#include "pat/spectral.hpp"
#include "pat/sqh.hpp"
#include "pat/time_reversal.hpp"
#include "pat/wave_forward.hpp"

using namespace pat;
namespace fs = std::filesystem;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string slurp(const fs::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

double rel_weighted(const EigenBasis& b, const ScalarField& rec, const ScalarField& truth)
{
    const auto d = rec - truth;
    return std::sqrt(b.weighted_inner(d, d) / b.weighted_inner(truth, truth));
}

// 1: energy never increases under exp(-t) damping
Outcome energy()
{
    const auto g = GridSpec::line(-1.0, 1.0, 400);
    const auto m = Medium::make(build_sound_speed(g, SoundSpeedPreset::one_d()), DampingSpec::exp_decay(1.0));
    const TimeGrid tg{1.0, 200};
    const auto dom = make_domain(m, m.c_max, tg.t_final);
    double worst = -1e300;
    int steps = 0;
    // smooth pulse, and a Gaussian cut off at the edge of Omega (rough in the padded run)
    for (const auto& spec : {PhantomSpec{GaussianPhantom{{0.0, 0.0}, 1.0, 0.1}},
                             PhantomSpec{GaussianPhantom{{0.5, 0.0}, 1.0, 0.25}}}) {
        double prev = 1e300;
        simulate_forward(build_phantom(spec, g), m, tg, m.c_max, {}, [&](const WaveState& st) {
            const double e = discrete_energy(st, dom.medium);
            worst = std::max(worst, e - prev);
            prev = e;
            ++steps;
        });
    }
    return {worst <= 1e-9, fmt("max per-step change %.3e over %d steps, two initial data (slack 1e-9)", worst, steps)};
}

// 2: projected coefficient of psi_3 follows the damped oscillator
Outcome modal_ode()
{
    const auto g = GridSpec::line(-1.0, 1.0, 200);
    const auto m = Medium::make(ScalarField(g, 1.0), DampingSpec::constant(1.0));
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
    const double rel = std::sqrt(err / ref);
    return {rel < 0.02, fmt("relative RMS error %.3e (< 2e-2)", rel)};
}

// 3: truncated series inversion from free-space data
Outcome series()
{
    const auto g = GridSpec::line(-1.0, 1.0, 200);
    const auto m = Medium::make(ScalarField(g, 1.0), DampingSpec::constant(1.0));
    const auto basis = dirichlet_eigs(m, g, 40);
    const TimeGrid tg{4.0, 3201};
    const auto gauss = build_phantom(PhantomSpec{GaussianPhantom{{0.5, 0.0}, 1.0, 0.25}}, g);
    const double eg = rel_weighted(basis, reconstruct_series(simulate_forward(gauss, m, tg, 4.0).g, 1.0, basis), gauss);
    const auto psi3 = ScalarField::from_function(g, [](const Point& x) { return std::sin(1.5 * pi * (x[0] + 1.0)); });
    const double em = rel_weighted(basis, reconstruct_series(simulate_forward(psi3, m, tg, 4.0).g, 1.0, basis), psi3);
    return {eg < 0.10 && em < 0.05, fmt("Gaussian %.3e (< 0.10), single mode %.3e (< 0.05), K = 40", eg, em)};
}

// 4: B^2 + gamma B + lambda^2 = 0 in every damping regime
Outcome b_algebra()
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(0.01, 10.0);
    double worst = 0.0;
    int under = 0, over = 0, crit = 0;
    for (int i = 0; i < 1000; ++i) {
        double gamma = U(rng);
        double lam = U(rng);
        if (i % 10 == 0) {
            lam = 0.5 * gamma;  // critical
        }
        const double disc = gamma * gamma - 4.0 * lam * lam;
        (disc == 0.0 ? crit : disc < 0.0 ? under : over)++;
        const auto mc = modal_coefficients(gamma, {lam});
        for (const auto& B : {mc.B_plus[0], mc.B_minus[0]}) {
            const double scale = std::max({std::norm(B), gamma * std::abs(B), lam * lam});
            worst = std::max(worst, std::abs(B * B + gamma * B + lam * lam) / scale);
        }
    }
    return {worst < 1e-10 && under > 0 && over > 0 && crit > 0,
            fmt("max relative residual %.3e over %d under / %d over / %d critical pairs", worst, under, over, crit)};
}

// 5: closed-form pointwise minimiser against a 10^4-point grid search
Outcome pointwise()
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int bad = 0;
    double worst_gap = 0.0;
    for (int i = 0; i < 10000; ++i) {
        SqhParams p;
        p.alpha = 0.5 * U(rng);
        p.beta = 0.05 * U(rng);
        p.p_lo = 0.5 * U(rng);
        p.p_hi = p.p_lo + 0.1 + 3.0 * U(rng);
        const double eps = 1e-3 + 5.0 * U(rng);
        const double b0 = 10.0 * (U(rng) - 0.5);
        const double prev = 4.0 * (U(rng) - 0.5);
        auto f = [&](double v) {
            return 0.5 * p.alpha * v * v + p.beta * std::abs(v) + b0 * v + eps * (v - prev) * (v - prev);
        };
        const double v = pointwise_min(b0, prev, p, eps);
        const int n = 10000;
        const double h = (p.p_hi - p.p_lo) / n;
        double best = p.p_lo, fbest = f(p.p_lo);
        for (int k = 1; k <= n; ++k) {
            const double x = p.p_lo + k * h;
            if (f(x) < fbest) {
                fbest = f(x);
                best = x;
            }
        }
        worst_gap = std::max(worst_gap, f(v) - fbest);
        if (v < p.p_lo || v > p.p_hi || f(v) > fbest + 1e-12 || std::abs(v - best) > h) {
            ++bad;
        }
    }
    return {bad == 0, fmt("%d of 10000 tuples off-grid; max f(v) - f(grid best) = %.2e", bad, worst_gap)};
}

// 7: adjoint directional derivative against central differences
Outcome gradient()
{
    const auto g = GridSpec::line(-1.0, 1.0, 200);
    const auto m = Medium::make(build_sound_speed(g, SoundSpeedPreset::one_d()), DampingSpec::exp_decay(1.0));
    const TimeGrid tg{1.0, 400};
    SqhParams p;
    p.beta = 0.0;
    p.p_hi = 1e3;
    const auto data =
        generate_observations(PhantomSpec{GaussianPhantom{{0.5, 0.0}, 1.0, 0.25}}, m, GridSpec::line(-1.0, 1.0, 50),
                              TimeGrid{1.0, 50}, g, tg, 0.1, 7);
    const auto p0 = ScalarField::from_function(g, [](const Point& x) { return 0.6 + 0.3 * std::cos(2.0 * x[0]); });
    const auto cost = cost_functional(p0, data, m, p);
    const auto grad = smooth_gradient(p0, adjoint_for(cost, data, m, p), p);

    // smooth random directions: random Fourier sums of low order
    std::mt19937_64 rng(77);
    std::normal_distribution<double> N;
    double worst = 0.0;
    for (int d = 0; d < 5; ++d) {
        std::array<double, 6> a{};
        for (double& v : a) v = N(rng);
        const auto dir = ScalarField::from_function(g, [&](const Point& x) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[2 * k] * std::cos(k * pi * x[0]) + a[2 * k + 1] * std::sin((k + 1) * pi * x[0]);
            return s;
        });
        const double h = 1e-3;
        const double fd = (cost_functional(p0 + h * dir, data, m, p).J - cost_functional(p0 - (h * dir), data, m, p).J) /
                          (2.0 * h);
        const double ad = inner_product(grad, dir);
        worst = std::max(worst, std::abs(ad - fd) / std::abs(fd));
    }
    return {worst < 0.05, fmt("max relative mismatch %.3e over 5 directions (< 5e-2)", worst)};
}

// 9: metric regression constants
Outcome metrics_constants()
{
    auto field = [](std::vector<double> v) {
        const auto g = GridSpec::line(0.0, 1.0, static_cast<int>(v.size()));
        return ScalarField(g, std::move(v));
    };
    bool ok = true;
    std::string why;
    auto near = [&](double got, double want, const char* what) {
        if (!(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)))) {
            ok = false;
            why += fmt(" %s=%.17g (want %.17g)", what, got, want);
        }
    };
    near(mse(field({0, 0, 0}), field({1, 1, 1})), 1.0, "mse1");
    near(mse(field({1, 2, 3}), field({1, 1, 5})), 5.0 / 3.0, "mse2");
    near(psnr(field({1, 0, 0, 0}), field({1, 0.2, 0, 0})), 20.0, "psnr");
    near(psnr(field({1, 2, 3}), field({1, 2, 3})), 200.0, "cap");
    const auto a = field({0.3, 0.9, 0.1, 0.5});
    const auto b = field({0.2, 1.0, 0.4, 0.5});
    near(psnr(2.0 * a, 2.0 * b), psnr(a, b), "psnr-scale");
    const double c1 = 1e-4, c2 = 9e-4;
    near(ssim(field({0, 1, 0, 1}), field({0, 0.5, 0, 0.5})),
         (0.25 + c1) * (0.25 + c2) / ((0.3125 + c1) * (0.3125 + c2)), "ssim");
    if (ssim(a, a) != 1.0 || mse(a, a) != 0.0 || ssim(a, b) != ssim(b, a)) {
        ok = false;
        why += " identity/symmetry";
    }
    return {ok, ok ? "MSE, PSNR, SSIM hand values to 1e-12; ssim(a,a) = 1, mse(a,a) = 0 exactly" : why};
}

// 10: same config and seed give identical files
Outcome determinism()
{
    const fs::path root = fs::temp_directory_path() / "pat_acceptance_det";
    fs::remove_all(root);
    auto cfg = preset_case(3);
    cfg.seed = 99;
    cfg.output_dir = root / "a";
    run_testcase(cfg);
    cfg.output_dir = root / "b";
    run_testcase(cfg);
    int files = 0, diffs = 0;
    for (const auto& e : fs::directory_iterator(root / "a")) {
        const auto name = e.path().filename();
        if (name == "config.json") continue;  // records its own output directory
        ++files;
        if (!fs::exists(root / "b" / name) || slurp(e.path()) != slurp(root / "b" / name)) ++diffs;
    }
    fs::remove_all(root);
    return {diffs == 0 && files >= 8, fmt("%d files compared byte-for-byte, %d differ", files, diffs)};
}

}  // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s  %2d  %-28s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };

    report(1, "energy dissipation", energy);
    report(2, "modal ODE oracle", modal_ode);
    report(3, "series inversion", series);
    report(4, "B algebra", b_algebra);
    report(5, "pointwise minimiser", pointwise);

    // 6 and 8 share the test-case runs
    std::vector<ExperimentReport> runs;
    std::vector<ExperimentConfig> cfgs;
    std::vector<double> secs;
    std::string run_error;
    for (int c = 1; c <= 6; ++c) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cfgs.push_back(preset_case(c));
            runs.push_back(run_testcase(cfgs.back(), false));
        } catch (const std::exception& e) {
            run_error = fmt("case %d: %s", c, e.what());
            break;
        }
        secs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }

    report(6, "SQH monotone and bounded", [&]() -> Outcome {
        if (runs.size() < 3) return {false, run_error};
        std::string d;
        bool ok = true;
        for (int c = 0; c < 3; ++c) {
            const auto& r = *runs[c].sqh;
            const auto& p = cfgs[c].sqh;
            double last = r.initial_J;
            int violations = 0;
            for (const auto& it : r.iterates) {
                if (!it.accepted) continue;
                if (it.J - last > -p.eta * it.tau) ++violations;
                last = it.J;
            }
            const bool case_ok = violations == 0 && r.max_eps <= p.eps_max && r.converged && secs[c] < 120.0;
            ok = ok && case_ok;
            d += fmt("case %d: %d steps, %d violations, max eps %.3g, %s; ", c + 1, r.accepted_steps, violations,
                     r.max_eps, r.converged ? "tau <= kappa" : "k_max reached");
        }
        return {ok, d};
    });
    report(7, "gradient consistency", gradient);
    report(8, "trend reproduction", [&]() -> Outcome {
        if (runs.size() < 6) return {false, run_error};
        std::string d;
        bool ok = true;
        double t1 = 0.0, t2 = 0.0;
        for (int c = 0; c < 6; ++c) {
            const auto& tr = runs[c].result(Method::TR);
            const auto& sq = runs[c].result(Method::SQH);
            const bool case_ok = sq.mse < tr.mse && sq.ssim > tr.ssim && (c >= 3 || sq.ssim >= 0.8);
            ok = ok && case_ok;
            (c < 3 ? t1 : t2) += secs[c];
            d += fmt("%d: SSIM %.3f>%.3f MSE %.1e<%.1e%s; ", c + 1, sq.ssim, tr.ssim, sq.mse, tr.mse, case_ok ? "" : " !");
        }
        ok = ok && t1 < 600.0 && t2 < 3600.0;
        return {ok, d + fmt("1D %.0fs, 2D %.0fs", t1, t2)};
    });
    report(9, "metrics regression", metrics_constants);
    report(10, "determinism", determinism);

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
