#include "pat/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pat/errors.hpp"
#include "pat/field_io.hpp"
#include "pat/metrics.hpp"
#include "pat/spectral.hpp"
#include "pat/time_reversal.hpp"

namespace pat {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    require(j.is_object(), where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        require(allowed.count(key) > 0, where + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const json& j, const char* key, const std::string& where)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

Point point_of(const json& j, const std::string& where)
{
    require(j.is_array() && (j.size() == 1 || j.size() == 2), where + ": expected [x] or [x, y]");
    Point p{0.0, 0.0};
    for (std::size_t a = 0; a < j.size(); ++a) p[a] = j[a].get<double>();
    return p;
}

json phantom_json(const PhantomSpec& spec)
{
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianPhantom>) {
                return {{"kind", "gaussian"}, {"center", s.center}, {"peak", s.peak}, {"sigma", s.sigma}};
            } else if constexpr (std::is_same_v<T, CharacteristicPhantom>) {
                return {{"kind", "characteristic"}, {"center", s.center}, {"value", s.value}, {"width", s.width}};
            } else if constexpr (std::is_same_v<T, DiskPhantom>) {
                return {{"kind", "disk"}, {"center", s.center}, {"radius", s.radius}, {"value", s.value}};
            } else if constexpr (std::is_same_v<T, EllipsePhantom>) {
                return {{"kind", "ellipse"},
                        {"center", s.center},
                        {"semi_axes", s.semi_axes},
                        {"angle", s.angle},
                        {"value", s.value}};
            } else {
                json parts = json::array();
                for (const auto& p : s.parts) parts.push_back(phantom_json(p));
                return {{"kind", "sum"}, {"parts", parts}};
            }
        },
        spec.shape);
}

PhantomSpec phantom_from(const json& j)
{
    const std::string w = "phantom";
    require(j.is_object() && j.contains("kind"), w + ": needs a 'kind'");
    const auto kind = get<std::string>(j, "kind", w);
    if (kind == "gaussian") {
        check_keys(j, {"kind", "center", "peak", "sigma"}, w);
        GaussianPhantom p;
        p.center = point_of(j.at("center"), w);
        p.peak = j.value("peak", p.peak);
        p.sigma = j.value("sigma", p.sigma);
        return {p};
    }
    if (kind == "characteristic") {
        check_keys(j, {"kind", "center", "value", "width"}, w);
        CharacteristicPhantom p;
        p.center = point_of(j.at("center"), w);
        p.value = j.value("value", p.value);
        p.width = j.value("width", p.width);
        return {p};
    }
    if (kind == "disk") {
        check_keys(j, {"kind", "center", "radius", "value"}, w);
        DiskPhantom p;
        p.center = point_of(j.at("center"), w);
        p.radius = j.value("radius", p.radius);
        p.value = j.value("value", p.value);
        return {p};
    }
    if (kind == "ellipse") {
        check_keys(j, {"kind", "center", "semi_axes", "angle", "value"}, w);
        EllipsePhantom p;
        p.center = point_of(j.at("center"), w);
        if (j.contains("semi_axes")) p.semi_axes = get<std::array<double, 2>>(j, "semi_axes", w);
        p.angle = j.value("angle", p.angle);
        p.value = j.value("value", p.value);
        return {p};
    }
    if (kind == "sum") {
        check_keys(j, {"kind", "parts"}, w);
        PhantomSum s;
        for (const auto& part : j.at("parts")) s.parts.push_back(phantom_from(part));
        return {s};
    }
    if (kind == "heart_lung") {
        check_keys(j, {"kind"}, w);
        return heart_lung_phantom();
    }
    throw ConfigError("phantom: unknown kind '" + kind + "'");
}

json grid_json(const GridSpec& g)
{
    json lo = json::array(), hi = json::array(), n = json::array();
    for (int a = 0; a < g.dim; ++a) {
        lo.push_back(g.lo[a]);
        hi.push_back(g.hi[a]);
        n.push_back(g.n[a]);
    }
    return {{"lo", lo}, {"hi", hi}, {"n", n}};
}

GridSpec grid_from(const json& j, const std::string& w)
{
    check_keys(j, {"lo", "hi", "n"}, w);
    const auto lo = get<std::vector<double>>(j, "lo", w);
    const auto hi = get<std::vector<double>>(j, "hi", w);
    const auto n = get<std::vector<int>>(j, "n", w);
    require(lo.size() == hi.size() && lo.size() == n.size() && (n.size() == 1 || n.size() == 2),
            w + ": lo, hi and n need one entry per axis (1 or 2 axes)");
    return n.size() == 1 ? GridSpec::line(lo[0], hi[0], n[0]) : GridSpec::rect(lo[0], hi[0], n[0], lo[1], hi[1], n[1]);
}

json times_json(const TimeGrid& t) { return {{"t_final", t.t_final}, {"n_t", t.n_steps}}; }

TimeGrid times_from(const json& j, const std::string& w)
{
    check_keys(j, {"t_final", "n_t"}, w);
    TimeGrid t{get<double>(j, "t_final", w), get<int>(j, "n_t", w)};
    t.validate();
    return t;
}

json sqh_json(const SqhParams& p)
{
    return {{"alpha", p.alpha},
            {"beta", p.beta},
            {"p_lo", p.p_lo},
            {"p_hi", p.p_hi},
            {"eps0", p.eps0},
            {"inc_factor", p.inc_factor},
            {"dec_factor", p.dec_factor},
            {"eta", p.eta},
            {"kappa", p.kappa},
            {"k_max", p.k_max},
            {"eps_max", p.eps_max},
            {"data_weight", p.data_weight},
            {"pad_width", p.pad_width},
            {"gradient", p.gradient == GradientScheme::Discrete ? "discrete" : "continuous"}};
}

void sqh_update(SqhParams& p, const json& j)
{
    const std::string w = "sqh";
    check_keys(j,
               {"alpha", "beta", "p_lo", "p_hi", "eps0", "inc_factor", "dec_factor", "eta", "kappa", "k_max",
                "eps_max", "data_weight", "pad_width", "gradient"},
               w);
    p.alpha = j.value("alpha", p.alpha);
    p.beta = j.value("beta", p.beta);
    p.p_lo = j.value("p_lo", p.p_lo);
    p.p_hi = j.value("p_hi", p.p_hi);
    p.eps0 = j.value("eps0", p.eps0);
    p.inc_factor = j.value("inc_factor", p.inc_factor);
    p.dec_factor = j.value("dec_factor", p.dec_factor);
    p.eta = j.value("eta", p.eta);
    p.kappa = j.value("kappa", p.kappa);
    p.k_max = j.value("k_max", p.k_max);
    p.eps_max = j.value("eps_max", p.eps_max);
    p.data_weight = j.value("data_weight", p.data_weight);
    p.pad_width = j.value("pad_width", p.pad_width);
    if (j.contains("gradient")) {
        const auto g = get<std::string>(j, "gradient", w);
        require(g == "continuous" || g == "discrete", "sqh.gradient: 'continuous' or 'discrete'");
        p.gradient = g == "discrete" ? GradientScheme::Discrete : GradientScheme::Continuous;
    }
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream os(path);
    require(static_cast<bool>(os), "cannot write " + path.string());
    os << text;
}

double sample(std::mt19937_64& rng, std::initializer_list<std::pair<double, double>> intervals)
{
    double total = 0.0;
    for (const auto& [a, b] : intervals) total += b - a;
    double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    for (const auto& [a, b] : intervals) {
        if (u < b - a) return a + u;
        u -= b - a;
    }
    return intervals.begin()->first;
}

}  // namespace

std::string method_name(Method m)
{
    switch (m) {
    case Method::TR: return "tr";
    case Method::Spectral: return "spectral";
    case Method::SQH: return "sqh";
    case Method::CNN: return "cnn";
    }
    return "?";
}

Method parse_method(const std::string& name)
{
    for (Method m : {Method::TR, Method::Spectral, Method::SQH, Method::CNN}) {
        if (method_name(m) == name) return m;
    }
    throw ConfigError("unknown method '" + name + "' (tr, spectral, sqh, cnn)");
}

void ExperimentConfig::validate() const
{
    grid.validate();
    data_grid.validate();
    times.validate();
    data_times.validate();
    sqh.validate();
    require(grid.dim == data_grid.dim && grid.lo == data_grid.lo && grid.hi == data_grid.hi,
            "config: data grid must cover the reconstruction domain");
    require(data_times.t_final == times.t_final, "config: data and reconstruction time grids need the same T");
    require(std::isfinite(noise) && noise >= 0.0, "config: noise must be non-negative");
    require(!methods.empty(), "config: no methods requested");
    require(sound_speed.kind != SoundSpeedPreset::Kind::OneD || grid.dim == 1, "config: 'one_d' speed needs a 1D grid");
    require(sound_speed.kind != SoundSpeedPreset::Kind::TwoD || grid.dim == 2, "config: 'two_d' speed needs a 2D grid");
    for (Method m : methods) {
        if (m == Method::Spectral) {
            require(damping.is_constant(), "config: the spectral method needs a constant damping coefficient");
        }
        if (m == Method::CNN) {
            require(!cnn_guess.empty(), "config: method 'cnn' needs a cnn_guess file");
        }
    }
    require(spectral_modes >= 0, "config: spectral_modes must be non-negative");
}

ExperimentConfig preset_case(int number)
{
    require(number >= 1 && number <= 6, "case must be 1..6");
    ExperimentConfig c;
    c.name = "case" + std::to_string(number);
    if (number <= 3) {
        c.sound_speed = SoundSpeedPreset::one_d();
        c.grid = GridSpec::line(-1.0, 1.0, 200);
        c.times = {1.0, 200};
        c.data_grid = GridSpec::line(-1.0, 1.0, 50);
        c.data_times = {1.0, 50};
    } else {
        c.sound_speed = SoundSpeedPreset::two_d();
        c.grid = GridSpec::square(-1.0, 1.0, 100);
        c.times = {2.0, 200};
        c.data_grid = GridSpec::square(-1.0, 1.0, 50);
        c.data_times = {2.0, 50};
    }
    switch (number) {
    case 1: c.phantom = {GaussianPhantom{{0.5, 0.0}, 1.0, 0.25}}; break;
    case 2: c.phantom = {CharacteristicPhantom{{-0.2, 0.0}, 1.0, 0.3}}; break;
    case 3:
        c.phantom = {PhantomSum{{PhantomSpec{GaussianPhantom{{0.5, 0.0}, 0.5, 0.25}},
                                 PhantomSpec{CharacteristicPhantom{{-0.2, 0.0}, 1.0, 0.2}}}}};
        break;
    case 4: c.phantom = {GaussianPhantom{{-0.3, -0.3}, 1.0, 0.5}}; break;
    case 5: c.phantom = {DiskPhantom{{-0.2, -0.2}, 0.1, 1.0}}; break;
    default: c.phantom = heart_lung_phantom(); break;
    }
    c.damping = DampingSpec::exp_decay(1.0);
    c.noise = 0.1;
    c.sqh.p_hi = 2.0 * build_phantom(c.phantom, c.grid).max();
    c.sqh.data_weight = (c.times.n_steps - 1) / c.times.t_final;
    c.output_dir = c.name;
    return c;
}

ExperimentConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    const std::string w = "config";
    check_keys(j,
               {"case", "name", "phantom", "sound_speed", "damping", "grid", "times", "data_grid", "data_times",
                "noise", "seed", "sqh", "methods", "sqh_init", "cnn_guess", "spectral_modes", "output_dir"},
               w);
    ExperimentConfig c;
    const bool preset = j.contains("case");
    if (preset) {
        c = preset_case(get<int>(j, "case", w));
    }
    c.name = j.value("name", c.name);
    if (j.contains("phantom")) c.phantom = phantom_from(j.at("phantom"));
    if (j.contains("sound_speed")) {
        const json& s = j.at("sound_speed");
        if (s.is_string() && s == "one_d") {
            c.sound_speed = SoundSpeedPreset::one_d();
        } else if (s.is_string() && s == "two_d") {
            c.sound_speed = SoundSpeedPreset::two_d();
        } else if (s.is_object() && s.contains("constant")) {
            check_keys(s, {"constant"}, "sound_speed");
            c.sound_speed = SoundSpeedPreset::uniform(get<double>(s, "constant", "sound_speed"));
        } else {
            throw ConfigError("sound_speed: 'one_d', 'two_d' or {\"constant\": c}");
        }
    }
    if (j.contains("damping")) {
        const json& d = j.at("damping");
        check_keys(d, {"kind", "gamma", "scale"}, "damping");
        const auto kind = get<std::string>(d, "kind", "damping");
        if (kind == "constant") {
            c.damping = DampingSpec::constant(get<double>(d, "gamma", "damping"));
        } else if (kind == "exp_decay") {
            c.damping = DampingSpec::exp_decay(d.value("scale", 1.0));
        } else {
            throw ConfigError("damping.kind: 'constant' or 'exp_decay'");
        }
    }
    if (j.contains("grid")) c.grid = grid_from(j.at("grid"), "grid");
    if (j.contains("times")) c.times = times_from(j.at("times"), "times");
    if (j.contains("data_grid")) c.data_grid = grid_from(j.at("data_grid"), "data_grid");
    if (j.contains("data_times")) c.data_times = times_from(j.at("data_times"), "data_times");
    c.noise = j.value("noise", c.noise);
    c.seed = j.value("seed", c.seed);
    if (!preset && !(j.contains("sqh") && j.at("sqh").contains("data_weight"))) {
        c.sqh.data_weight = (c.times.n_steps - 1) / c.times.t_final;
    }
    if (j.contains("sqh")) sqh_update(c.sqh, j.at("sqh"));
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto& m : get<std::vector<std::string>>(j, "methods", w)) c.methods.push_back(parse_method(m));
    }
    if (j.contains("sqh_init")) {
        const auto init = get<std::string>(j, "sqh_init", w);
        require(init == "tr" || init == "zero", "sqh_init: 'tr' or 'zero'");
        c.sqh_init_tr = init == "tr";
    }
    c.cnn_guess = j.value("cnn_guess", c.cnn_guess);
    c.spectral_modes = j.value("spectral_modes", c.spectral_modes);
    if (j.contains("output_dir")) c.output_dir = get<std::string>(j, "output_dir", w);
    c.validate();
    return c;
}

ExperimentConfig load_config(const fs::path& path)
{
    std::ifstream is(path);
    require(static_cast<bool>(is), "cannot open config " + path.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

PhantomSpec parse_phantom(const std::string& json_text)
{
    try {
        return phantom_from(json::parse(json_text));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("phantom: malformed JSON: ") + e.what());
    }
}

std::string dump_config(const ExperimentConfig& c)
{
    json j;
    j["name"] = c.name;
    j["phantom"] = phantom_json(c.phantom);
    switch (c.sound_speed.kind) {
    case SoundSpeedPreset::Kind::OneD: j["sound_speed"] = "one_d"; break;
    case SoundSpeedPreset::Kind::TwoD: j["sound_speed"] = "two_d"; break;
    case SoundSpeedPreset::Kind::Constant: j["sound_speed"] = {{"constant", c.sound_speed.constant}}; break;
    }
    j["damping"] = c.damping.is_constant() ? json{{"kind", "constant"}, {"gamma", c.damping.value}}
                                           : json{{"kind", "exp_decay"}, {"scale", c.damping.value}};
    j["grid"] = grid_json(c.grid);
    j["times"] = times_json(c.times);
    j["data_grid"] = grid_json(c.data_grid);
    j["data_times"] = times_json(c.data_times);
    j["noise"] = c.noise;
    j["seed"] = c.seed;
    j["sqh"] = sqh_json(c.sqh);
    json methods = json::array();
    for (Method m : c.methods) methods.push_back(method_name(m));
    j["methods"] = methods;
    j["sqh_init"] = c.sqh_init_tr ? "tr" : "zero";
    if (!c.cnn_guess.empty()) j["cnn_guess"] = c.cnn_guess;
    j["spectral_modes"] = c.spectral_modes;
    j["output_dir"] = c.output_dir.string();
    return j.dump(2) + "\n";
}

Medium make_medium(const ExperimentConfig& cfg, const GridSpec& grid)
{
    return Medium::make(build_sound_speed(grid, cfg.sound_speed), cfg.damping);
}

const MethodResult& ExperimentReport::result(Method m) const
{
    for (const auto& r : results) {
        if (r.method == m) return r;
    }
    throw ConfigError("report: method '" + method_name(m) + "' was not run");
}

std::string metrics_table(const ExperimentReport& report)
{
    std::string out = "method,mse,psnr,ssim\n";
    for (const auto& r : report.results) {
        out += method_name(r.method) + "," + num(r.mse) + "," + num(r.psnr) + "," + num(r.ssim) + "\n";
    }
    return out;
}

ExperimentReport run_testcase(const ExperimentConfig& cfg, bool write_files)
{
    cfg.validate();
    auto wants = [&](Method m) { return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end(); };

    ExperimentReport rep;
    const Medium medium = make_medium(cfg, cfg.grid);
    rep.truth = build_phantom(cfg.phantom, cfg.grid);
    rep.data = generate_observations(cfg.phantom, medium, cfg.data_grid, cfg.data_times, cfg.grid, cfg.times, cfg.noise,
                                     cfg.seed);

    std::optional<ScalarField> tr, cnn;
    if (wants(Method::TR) || (wants(Method::SQH) && cfg.sqh_init_tr)) {
        tr = time_reverse(rep.data, medium, cfg.times, cfg.grid);
    }
    if (!cfg.cnn_guess.empty()) {
        cnn = read_field(cfg.cnn_guess);
        require(cnn->grid == cfg.grid, "cnn guess is not on the reconstruction grid");
    }

    auto add = [&](Method m, ScalarField p0) {
        MethodResult r;
        r.method = m;
        r.p0 = std::move(p0);
        r.mse = mse(r.p0, rep.truth);
        const bool both_zero = r.p0.max() == 0.0 && r.p0.min() == 0.0 && rep.truth.max() == 0.0 && rep.truth.min() == 0.0;
        r.psnr = both_zero ? std::nan("") : psnr(r.p0, rep.truth);
        r.ssim = ssim(r.p0, rep.truth);
        rep.results.push_back(std::move(r));
    };

    for (Method m : cfg.methods) {
        switch (m) {
        case Method::TR: add(m, *tr); break;
        case Method::CNN: add(m, *cnn); break;
        case Method::Spectral: {
            const int K = cfg.spectral_modes > 0 ? cfg.spectral_modes : default_modes(cfg.grid);
            add(m, reconstruct_series(rep.data, cfg.damping.value, medium, cfg.grid, K));
            break;
        }
        case Method::SQH: {
            ScalarField init(cfg.grid, 0.0);
            if (cfg.sqh_init_tr) {
                init = *tr;
                if (cnn) init += *cnn;
            }
            for (double& v : init.values) v = std::clamp(v, cfg.sqh.p_lo, cfg.sqh.p_hi);
            rep.sqh = sqh_solve(rep.data, medium, cfg.sqh, init);
            add(m, rep.sqh->final_p0);
            break;
        }
        }
    }

    if (!write_files) {
        return rep;
    }
    const fs::path& dir = cfg.output_dir;
    fs::create_directories(dir);
    write_text(dir / "config.json", dump_config(cfg));
    write_field(dir / "truth.json", rep.truth, "truth");
    write_record(dir / "data.json", rep.data, "g");
    for (const auto& r : rep.results) write_field(dir / (method_name(r.method) + ".json"), r.p0, method_name(r.method));
    write_text(dir / "metrics.csv", metrics_table(rep));
    if (rep.sqh) {
        std::string log = "k,J,eps,tau,accepted\n";
        for (const auto& it : rep.sqh->iterates) {
            log += std::to_string(it.k) + "," + num(it.J) + "," + num(it.eps) + "," + num(it.tau) + "," +
                   (it.accepted ? "1" : "0") + "\n";
        }
        write_text(dir / "sqh_log.csv", log);
    }

    // 1D: every node; 2D: the row through the node nearest x2 = mid-height
    std::string prof = "# x truth";
    for (const auto& r : rep.results) prof += " " + method_name(r.method);
    prof += "\n";
    const GridSpec& g = cfg.grid;
    const int row = g.dim == 2 ? g.n[1] / 2 : 0;
    for (int i0 = 0; i0 < g.n[0]; ++i0) {
        const std::size_t idx = g.index(i0, row);
        prof += num(g.coord(0, i0)) + " " + num(rep.truth[idx]);
        for (const auto& r : rep.results) prof += " " + num(r.p0[idx]);
        prof += "\n";
    }
    write_text(dir / "profile.dat", prof);
    return rep;
}

std::vector<PhantomFamily> export_training_pairs(const ExperimentConfig& cfg, int n_samples, const fs::path& out_dir,
                                                 std::uint64_t seed)
{
    require(n_samples >= 1, "dataset: need at least one sample");
    cfg.grid.validate();
    cfg.times.validate();
    const Medium medium = make_medium(cfg, cfg.grid);
    const bool two_d = cfg.grid.dim == 2;

    // 150 : 350 : 250 of the total
    const int n_gauss = static_cast<int>(std::lround(n_samples * 150.0 / 750.0));
    const int n_char = static_cast<int>(std::lround(n_samples * 350.0 / 750.0));
    std::mt19937_64 rng(seed);
    auto centre = [&](std::initializer_list<std::pair<double, double>> iv) {
        Point c{sample(rng, iv), 0.0};
        if (two_d) c[1] = sample(rng, iv);
        return c;
    };
    auto sigma = [](double w) { return 1.0 / std::sqrt(2.0 * w); };

    fs::create_directories(out_dir);
    json manifest = json::array();
    std::vector<PhantomFamily> families;
    for (int i = 0; i < n_samples; ++i) {
        PhantomSpec spec;
        PhantomFamily fam;
        if (i < n_gauss) {
            fam = PhantomFamily::Gaussian;
            const Point c = two_d ? centre({{-0.9, 0.9}}) : centre({{-0.5, 0.1}, {0.3, 0.7}});
            const double w = two_d ? sample(rng, {{50.0, 150.0}}) : sample(rng, {{50.0, 70.0}, {120.0, 150.0}});
            spec = {GaussianPhantom{c, 1.0, sigma(w)}};
        } else if (i < n_gauss + n_char) {
            fam = PhantomFamily::Characteristic;
            const Point c = two_d ? centre({{-0.9, 0.9}}) : centre({{-0.7, -0.1}});
            const double width = two_d ? sample(rng, {{0.1, 0.5}}) : sample(rng, {{0.1, 0.7}});
            spec = {CharacteristicPhantom{c, 1.0, width}};
        } else {
            fam = PhantomFamily::Mixed;
            const Point cg = centre({{-0.9, 0.9}});
            const double w = two_d ? sample(rng, {{10.0, 60.0}}) : sample(rng, {{50.0, 150.0}});
            const Point cc = centre({{-0.9, 0.9}});
            const double width = two_d ? sample(rng, {{0.1, 0.5}}) : sample(rng, {{0.1, 0.3}});
            spec = {PhantomSum{{PhantomSpec{GaussianPhantom{cg, 1.0, sigma(w)}},
                                PhantomSpec{CharacteristicPhantom{cc, 1.0, width}}}}};
        }
        const ScalarField p0 = build_phantom(spec, cfg.grid);
        require(p0.min() >= cfg.sqh.p_lo && p0.max() <= cfg.sqh.p_hi, "dataset: phantom leaves the admissible box");
        const BoundaryRecord g =
            generate_observations(spec, medium, cfg.grid, cfg.times, cfg.grid, cfg.times, 0.0, seed);

        char stem[32];
        std::snprintf(stem, sizeof stem, "sample_%04d", i);
        write_field(out_dir / (std::string(stem) + "_p0.json"), p0, "p0");
        write_record(out_dir / (std::string(stem) + "_g.json"), g, "g");
        static const char* names[] = {"gaussian", "characteristic", "mixed"};
        manifest.push_back({{"index", i},
                            {"family", names[static_cast<int>(fam)]},
                            {"p0", std::string(stem) + "_p0.json"},
                            {"g", std::string(stem) + "_g.json"},
                            {"phantom", phantom_json(spec)}});
        families.push_back(fam);
    }
    write_text(out_dir / "manifest.json", json{{"seed", seed}, {"samples", manifest}}.dump(2) + "\n");
    return families;
}

}  // namespace pat
