#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "sevo/admissibility.hpp"
#include "sevo/analysis.hpp"
#include "sevo/hankel.hpp"
#include "sevo/propagator.hpp"
#include "sevo/semilinear.hpp"
#include "sevo/symbols.hpp"

namespace sevo::cli {

using nlohmann::json;

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kViscoHighZone = 3,
    kGateViolation = 4,
    kBlowUp = 10,
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for delta = sigma requests that need a high-frequency kernel.
struct ViscoHighZoneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads one JSON object; every key must be consumed before finish().
class ConfigReader {
public:
    ConfigReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": expected a JSON object");
    }

    bool has(const std::string& k) const { return j_.contains(k); }

    double real(const std::string& k) { return real_of(take(k), k); }
    double real(const std::string& k, double def) { return has(k) ? real(k) : def; }

    Rational rational(const std::string& k) {
        const json& v = take(k);
        try {
            if (v.is_string()) return Rational::parse(v.get<std::string>());
            if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
        } catch (const std::exception& e) {
            throw ConfigError(where_ + "." + k + ": " + e.what());
        }
        throw ConfigError(where_ + "." + k + ": expected an integer or a \"num/den\" string");
    }
    std::optional<Rational> opt_rational(const std::string& k) {
        if (!has(k)) return std::nullopt;
        return rational(k);
    }

    int integer(const std::string& k) {
        const json& v = take(k);
        if (!v.is_number_integer()) throw ConfigError(where_ + "." + k + ": expected an integer");
        return v.get<int>();
    }
    int integer(const std::string& k, int def) { return has(k) ? integer(k) : def; }

    std::string str(const std::string& k) {
        const json& v = take(k);
        if (!v.is_string()) throw ConfigError(where_ + "." + k + ": expected a string");
        return v.get<std::string>();
    }
    std::string str(const std::string& k, const std::string& def) { return has(k) ? str(k) : def; }

    std::vector<double> reals(const std::string& k) {
        const json& v = take(k);
        if (!v.is_array()) throw ConfigError(where_ + "." + k + ": expected an array");
        std::vector<double> out;
        for (const auto& e : v) out.push_back(real_of(e, k));
        return out;
    }

    ConfigReader object(const std::string& k) { return ConfigReader(take(k), where_ + "." + k); }
    std::optional<ConfigReader> opt_object(const std::string& k) {
        if (!has(k)) return std::nullopt;
        return object(k);
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key())) throw ConfigError(where_ + ": unknown key '" + it.key() + "'");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> used_;

    const json& take(const std::string& k) {
        if (!j_.contains(k)) throw ConfigError(where_ + ": missing key '" + k + "'");
        used_.insert(k);
        return j_.at(k);
    }
    double real_of(const json& v, const std::string& k) const {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            try {
                return Rational::parse(s).to_double();
            } catch (const std::exception&) {
            }
        }
        throw ConfigError(where_ + "." + k + ": expected a number");
    }
};

struct RunContext {
    std::filesystem::path out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
};

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json metadata(const std::string& command, const json& config, const RunContext& ctx) {
    return json{{"command", command}, {"config", config}, {"seed", ctx.seed}, {"tool", "sigma_evolve"}};
}

class CsvWriter {
public:
    CsvWriter(const json& meta, std::vector<std::string> columns) : cols_(std::move(columns)) {
        for (auto it = meta.begin(); it != meta.end(); ++it) os_ << "# " << it.key() << "=" << it.value().dump() << "\n";
        for (std::size_t i = 0; i < cols_.size(); ++i) os_ << (i ? "," : "") << cols_[i];
        os_ << "\n";
    }
    void row(const std::vector<double>& v) {
        if (v.size() != cols_.size()) throw std::logic_error("csv: row width mismatch");
        for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << fmt17(v[i]);
        os_ << "\n";
    }
    std::string str() const { return os_.str(); }

private:
    std::vector<std::string> cols_;
    std::ostringstream os_;
};

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- parsing

inline ModelParams read_params(ConfigReader& c) {
    const double sigma = c.real("sigma"), delta = c.real("delta");
    const int n = c.integer("n", 1);
    try {
        return ModelParams(sigma, delta, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

inline Grid read_grid(ConfigReader& c, int n) {
    auto g = c.opt_object("grid");
    if (!g) return Grid::default_for(n);
    const int pts = g->integer("points", Grid::default_for(n).points_per_axis());
    const double box = g->real("box", Grid::kDefaultBox);
    g->finish();
    try {
        return Grid(n, pts, box);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

struct DataSpec {
    std::string kind = "gaussian"; // gaussian | random_smooth | zero
    double u0_amplitude = 1.0;
    double u1_amplitude = 1.0;
    double width = 1.0;
};

inline DataSpec read_data(ConfigReader& c) {
    DataSpec d;
    auto o = c.opt_object("data");
    if (!o) return d;
    d.kind = o->str("kind", d.kind);
    d.u0_amplitude = o->real("u0_amplitude", d.u0_amplitude);
    d.u1_amplitude = o->real("u1_amplitude", d.u1_amplitude);
    d.width = o->real("width", d.width);
    o->finish();
    if (d.kind != "gaussian" && d.kind != "random_smooth" && d.kind != "zero")
        throw ConfigError("data.kind must be gaussian, random_smooth or zero");
    if (!(d.width > 0.0)) throw ConfigError("data.width must be positive");
    return d;
}

// Smooth random field: white noise filtered by exp(-|xi|^2 w^2 / 2), scaled to unit max.
inline SpectralField random_smooth_field(const Grid& g, double width, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> v(g.size());
    for (auto& x : v) x = nd(rng);
    const auto noise = SpectralField::from_values(g, std::move(v));
    SpectralField::Coeffs c(noise.coefficients());
    const auto& xi = g.xi_abs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= g.is_nyquist(i) ? 0.0 : std::exp(-0.5 * xi[i] * xi[i] * width * width);
    auto f = SpectralField::from_coefficients(g, std::move(c));
    const double m = f.max_abs();
    return m > 0.0 ? f.scaled(1.0 / m) : f;
}

inline StatePair make_data(const Grid& g, const DataSpec& d, std::uint64_t seed) {
    if (d.kind == "zero") return make_state(SpectralField::zeros(g), SpectralField::zeros(g));
    if (d.kind == "gaussian")
        return make_state(gaussian_field(g, d.u0_amplitude, d.width), gaussian_field(g, d.u1_amplitude, d.width));
    std::mt19937_64 rng(seed);
    auto a = random_smooth_field(g, d.width, rng).scaled(d.u0_amplitude);
    auto b = random_smooth_field(g, d.width, rng).scaled(d.u1_amplitude);
    return make_state(std::move(a), std::move(b));
}

// ---------------------------------------------------------------- commands

struct CommandResult {
    int exit_code = kOk;
    json summary; // echoed on stdout
};

inline CommandResult cmd_roots(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    const ModelParams p = read_params(c);
    const auto xi = c.reals("xi");
    c.finish();
    CsvWriter csv(metadata("roots", cfg, ctx), {"xi_abs", "re_l1", "im_l1", "re_l2", "im_l2", "discriminant", "coalesced"});
    for (double x : xi) {
        if (!(x >= 0.0)) throw ConfigError("xi values must be >= 0");
        const CharRoots r = characteristic_roots(p, x);
        csv.row({x, r.lambda1.real(), r.lambda1.imag(), r.lambda2.real(), r.lambda2.imag(), r.discriminant,
                 r.coalesced ? 1.0 : 0.0});
    }
    write_file(ctx.out_dir / "roots.csv", csv.str());
    return {kOk, json{{"rows", xi.size()}, {"written", {"roots.csv"}}}};
}

inline Zone zone_from_string(const std::string& s) {
    if (s == "low") return Zone::Low;
    if (s == "high") return Zone::High;
    if (s == "all") return Zone::All;
    throw ConfigError("zone must be low, high or all");
}

inline EstimateId l1_estimate_for(Zone z) {
    return z == Zone::Low ? EstimateId::L1Low : (z == Zone::High ? EstimateId::L1High : EstimateId::L1Total);
}

inline CommandResult cmd_kernel_norms(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    const ModelParams p = read_params(c);
    const double a = c.real("a", 0.0);
    const std::string kernel = c.str("kernel");
    const Zone zone = zone_from_string(c.str("zone", "low"));
    const auto times = c.reals("times");
    c.finish();
    if (kernel != "K0" && kernel != "K1") throw ConfigError("kernel must be K0 or K1");
    if (!(a >= 0.0)) throw ConfigError("a must be >= 0");
    if (times.empty()) throw ConfigError("times must be non-empty");
    for (std::size_t i = 0; i < times.size(); ++i)
        if (!(times[i] > 0.0) || (i && !(times[i] > times[i - 1]))) throw ConfigError("times must be positive and ascending");
    if (zone != Zone::Low && p.regime() == Regime::ViscoElastic)
        throw ViscoHighZoneError("delta = sigma has no high-frequency L1 kernel estimate");
    const Which which = kernel == "K0" ? Which::K0 : Which::K1;

    // contiguous chunks of times per worker; results are independent of the split
    const std::size_t workers = std::clamp<std::size_t>(ctx.threads, 1, times.size());
    std::vector<KernelNormSeries> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                const std::size_t lo = w * times.size() / workers, hi = (w + 1) * times.size() / workers;
                parts[w] = kernel_norms(p, a, which, zone, std::vector<double>(times.begin() + lo, times.begin() + hi));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    CsvWriter csv(metadata("kernel-norms", cfg, ctx), {"t", "l1", "linf", "theoretical_exponent", "bound_ratio"});
    const DataChannel ch = which == Which::K0 ? DataChannel::U0 : DataChannel::U1;
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < part.times.size(); ++i) {
            const double t = part.times[i];
            const auto e = theoretical_exponent(
                EstimateSpec{l1_estimate_for(zone), ch, t < 1.0 ? TimeRegime::SmallT : TimeRegime::LargeT}, p, a);
            csv.row({t, part.l1_values[i], part.linf_values[i], e.value, part.l1_values[i] / std::pow(t, e.value)});
        }
    }
    write_file(ctx.out_dir / "kernel-norms.csv", csv.str());
    return {kOk, json{{"rows", times.size()}, {"written", {"kernel-norms.csv"}}}};
}

struct DecayChannelResult {
    std::string name;
    std::vector<double> values;
    double theoretical = 0.0;
    std::optional<DecayFit> fit;
    std::string note;
};

struct LinearDecayResult {
    std::vector<double> times;
    std::vector<double> spread;
    double validity_time = 0.0;
    std::pair<double, double> window;
    std::vector<DecayChannelResult> channels;
};

inline double inv_r_from(double q, double m) {
    if (!(q >= 1.0) || !(m >= 1.0)) throw ConfigError("q and m must be >= 1");
    if (m > q) throw ConfigError("m must not exceed q");
    return m == q ? 1.0 : 1.0 + 1.0 / q - 1.0 / m;
}

// Linear evolution of the configured data with decay fits per channel.
inline LinearDecayResult linear_decay(const ModelParams& p, const Grid& g, const StatePair& data, double q, double m,
                                      const std::vector<double>& times, std::optional<std::pair<double, double>> window,
                                      const std::vector<std::string>& channel_names, double slack = kDefaultSlack) {
    const double inv_r = inv_r_from(q, m);
    LinearDecayResult res;
    res.times = times;
    res.validity_time = times.empty() ? 0.0 : times.back();
    bool valid_set = false;
    for (const auto& name : channel_names) {
        if (name != "u" && name != "u_t" && name != "D^sigma u") throw ConfigError("unknown channel '" + name + "'");
        res.channels.push_back({name, {}, 0.0, std::nullopt, ""});
    }
    const bool has_u0 = data.u.max_abs() > 0.0, has_u1 = data.ut.max_abs() > 0.0;
    for (auto& ch : res.channels) {
        const bool ut = ch.name == "u_t";
        const double a = ch.name == "D^sigma u" ? p.sigma() : 0.0;
        const EstimateId id = ut ? EstimateId::CombinedUt : EstimateId::CombinedU;
        double e = -std::numeric_limits<double>::infinity();
        if (has_u0) e = std::max(e, theoretical_exponent({id, DataChannel::U0, TimeRegime::LargeT}, p, a, inv_r).value);
        if (has_u1) e = std::max(e, theoretical_exponent({id, DataChannel::U1, TimeRegime::LargeT}, p, a, inv_r).value);
        ch.theoretical = e;
    }
    for (double t : times) {
        const StatePair st = evolve_linear(p, data, t);
        const double sr = spread_radius(st.u);
        res.spread.push_back(sr);
        if (!valid_set && sr > 0.25 * g.box_length()) {
            res.validity_time = t;
            valid_set = true;
        }
        for (auto& ch : res.channels) {
            if (ch.name == "u") ch.values.push_back(lq_norm(st.u, q));
            else if (ch.name == "u_t") ch.values.push_back(lq_norm(st.ut, q));
            else ch.values.push_back(lq_norm(fractional_derivative(st.u, p.sigma()), q));
        }
    }
    res.window = window.value_or(std::make_pair(10.0, res.validity_time));
    for (auto& ch : res.channels) {
        if (!has_u0 && !has_u1) {
            ch.note = "zero data";
            continue;
        }
        try {
            ch.fit = fit_decay_exponent(res.times, ch.values, res.window, ch.theoretical, slack);
        } catch (const std::invalid_argument& e) {
            ch.note = e.what();
        }
    }
    return res;
}

inline json to_json(const DecayFit& f) {
    return json{{"fitted_exponent", f.fitted_exponent},
                {"window", {f.window.first, f.window.second}},
                {"residual_rms", f.residual_rms},
                {"theoretical_exponent", f.theoretical_exponent},
                {"verdict", to_string(f.verdict)},
                {"samples", f.samples}};
}

inline std::vector<double> log_times(double t0, double t1, int count) {
    if (!(t0 > 0.0) || !(t1 > t0) || count < 2) throw ConfigError("time sampling needs 0 < t_min < t_max and samples >= 2");
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) t[i] = t0 * std::pow(t1 / t0, static_cast<double>(i) / (count - 1));
    return t;
}

inline CommandResult cmd_linear_decay(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    const ModelParams p = read_params(c);
    const double q = c.real("q", 2.0), m = c.real("m", 1.0);
    const Grid g = read_grid(c, p.n());
    const DataSpec ds = read_data(c);
    const double t_min = c.real("t_min", 1.0), t_max = c.real("t_max", 400.0);
    const int samples = c.integer("samples", 60);
    std::optional<std::pair<double, double>> window;
    if (c.has("window")) {
        const auto w = c.reals("window");
        if (w.size() != 2 || !(w[1] > w[0])) throw ConfigError("window must be [t0, t1] with t1 > t0");
        window = std::make_pair(w[0], w[1]);
    }
    std::vector<std::string> names{"u", "u_t", "D^sigma u"};
    const double slack = c.real("slack", kDefaultSlack);
    c.finish();
    inv_r_from(q, m);
    const auto data = make_data(g, ds, ctx.seed);
    const auto res = linear_decay(p, g, data, q, m, log_times(t_min, t_max, samples), window, names, slack);

    const json meta = metadata("linear-decay", cfg, ctx);
    std::vector<std::string> cols{"t", "spread_radius"};
    for (const auto& ch : res.channels) cols.push_back(ch.name);
    CsvWriter csv(meta, cols);
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        std::vector<double> row{res.times[i], res.spread[i]};
        for (const auto& ch : res.channels) row.push_back(ch.values[i]);
        csv.row(row);
    }
    json fits = json::object();
    for (const auto& ch : res.channels) {
        json f = ch.fit ? to_json(*ch.fit) : json{{"verdict", to_string(Verdict::Inconclusive)}, {"note", ch.note}};
        f["theoretical_exponent"] = ch.theoretical;
        fits[ch.name] = f;
    }
    json report{{"metadata", meta},
                {"channels", fits},
                {"validity_time", res.validity_time},
                {"window", {res.window.first, res.window.second}}};
    write_file(ctx.out_dir / "linear-decay.csv", csv.str());
    write_file(ctx.out_dir / "linear-decay.json", dump_json(report));
    return {kOk, json{{"channels", fits}, {"written", {"linear-decay.csv", "linear-decay.json"}}}};
}

inline CommandResult cmd_semilinear(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    const ModelParams p = read_params(c);
    const Rational q = c.rational("q"), m = c.rational("m");
    const double s = c.real("s");
    Theorem th;
    try {
        th = theorem_from_string(c.str("theorem", "T2_1"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto nlc = c.object("nonlinearity");
    const std::string kind = nlc.str("kind", "power_u");
    const double power = nlc.real("p");
    nlc.finish();
    const Grid g = read_grid(c, p.n());
    const DataSpec ds = read_data(c);
    RunOptions opt;
    const double horizon = c.real("horizon");
    opt.dt_max = c.real("dt_max", opt.dt_max);
    opt.tol = c.real("tol", opt.tol);
    opt.record_every = c.real("record_every", opt.record_every);
    c.finish();
    if (kind != "power_u" && kind != "power_ut") throw ConfigError("nonlinearity.kind must be power_u or power_ut");
    std::optional<NormSetup> ns;
    std::optional<Nonlinearity> nl;
    try {
        ns.emplace(q, m);
        nl.emplace(kind == "power_u" ? NonlinearityKind::PowerU : NonlinearityKind::PowerUt, power);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(opt.dt_max > 0.0 && opt.dt_max <= 0.5)) throw ConfigError("dt_max must lie in (0, 0.5]");
    if (!(horizon > 0.0)) throw ConfigError("horizon must be positive");
    if (!(opt.record_every > 0.0)) throw ConfigError("record_every must be positive");

    const auto data = make_data(g, ds, ctx.seed);
    const RunReport rep = run(p, data, *nl, *ns, s, horizon, th, opt);

    const json meta = metadata("semilinear", cfg, ctx);
    std::vector<std::string> cols{"t"};
    for (int k = 0; k < kChannelCount; ++k) cols.push_back(channel_name(k));
    cols.push_back("x_norm");
    cols.push_back("dt");
    CsvWriter csv(meta, cols);
    for (std::size_t i = 0; i < rep.times.size(); ++i) {
        std::vector<double> row{rep.times[i]};
        for (int k = 0; k < kChannelCount; ++k) row.push_back(rep.channels[k][i]);
        row.push_back(rep.x_norm[i]);
        row.push_back(rep.step_size[i]);
        csv.row(row);
    }
    json weights = json::object();
    for (int k = 0; k < kChannelCount; ++k)
        weights[channel_name(k)] = {{"exponent", rep.weights.exponent[k]}, {"active", rep.weights.active[k]}};
    json report{{"metadata", meta},
                {"blow_up", rep.blow_up},
                {"blow_up_time", rep.blow_up_time},
                {"steps", rep.steps},
                {"rejected_steps", rep.rejected},
                {"x_norm_final", rep.x_norm.empty() ? 0.0 : rep.x_norm.back()},
                {"data_norm", data_norm(data, p, q.to_double(), m.to_double(), s)},
                {"weights", weights}};
    write_file(ctx.out_dir / "semilinear.csv", csv.str());
    write_file(ctx.out_dir / "semilinear.json", dump_json(report));
    return {rep.blow_up ? kBlowUp : kOk,
            json{{"blow_up", rep.blow_up}, {"written", {"semilinear.csv", "semilinear.json"}}}};
}

inline CommandResult cmd_admissible_p(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    Theorem th;
    try {
        th = theorem_from_string(c.str("theorem"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const Rational sigma = c.rational("sigma"), delta = c.rational("delta"), q = c.rational("q"), m = c.rational("m");
    const int n = c.integer("n");
    const auto s = c.opt_rational("s");
    c.finish();
    std::optional<ModelParams> p;
    std::optional<NormSetup> ns;
    try {
        p.emplace(ModelParams::exact(sigma, delta, n));
        ns.emplace(q, m);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const TheoremReport rep = admissible_p(th, *p, *ns, s);
    json report{{"metadata", metadata("admissible-p", cfg, ctx)}, {"report", rep}};
    write_file(ctx.out_dir / "admissible-p.json", dump_json(report));
    return {kOk, json{{"result", rep.result.str()}, {"written", {"admissible-p.json"}}}};
}

inline CommandResult cmd_gevrey(const json& cfg, const RunContext& ctx) {
    ConfigReader c(cfg, "config");
    const ModelParams p = read_params(c);
    const auto times = c.reals("times");
    const auto xi = c.reals("xi");
    c.finish();
    if (p.regime() == Regime::ViscoElastic) throw ViscoHighZoneError("gevrey fit requires delta < sigma");
    GevreyFit f;
    try {
        f = gevrey_fit(p, times, xi);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    json report{{"metadata", metadata("gevrey", cfg, ctx)},
                {"c", f.c},
                {"stderr", f.stderr_c},
                {"lower_bound", f.lower_bound},
                {"intercept", f.intercept},
                {"samples", f.samples}};
    write_file(ctx.out_dir / "gevrey.json", dump_json(report));
    return {kOk, json{{"c", f.c}, {"written", {"gevrey.json"}}}};
}

inline const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"roots", "kernel-norms", "linear-decay", "semilinear", "admissible-p", "gevrey"};
    return names;
}

// Runs one subcommand and maps failures onto the exit-code contract.
inline int dispatch(const std::string& command, const json& cfg, const RunContext& ctx, std::ostream& out,
                    std::ostream& err) {
    try {
        CommandResult r;
        if (command == "roots") r = cmd_roots(cfg, ctx);
        else if (command == "kernel-norms") r = cmd_kernel_norms(cfg, ctx);
        else if (command == "linear-decay") r = cmd_linear_decay(cfg, ctx);
        else if (command == "semilinear") r = cmd_semilinear(cfg, ctx);
        else if (command == "admissible-p") r = cmd_admissible_p(cfg, ctx);
        else if (command == "gevrey") r = cmd_gevrey(cfg, ctx);
        else throw ConfigError("unknown command '" + command + "'");
        out << r.summary.dump() << "\n";
        return r.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ViscoHighZoneError& e) {
        err << "unsupported: " << e.what() << "\n";
        return kViscoHighZone;
    } catch (const GateViolation& e) {
        err << "gate violation: " << e.what() << "\n";
        return kGateViolation;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

inline json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

// Thread count: flag, then SIGMA_EVOLVE_THREADS, then 1.
inline int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SIGMA_EVOLVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
        throw ConfigError("SIGMA_EVOLVE_THREADS must be a positive integer");
    }
    return 1;
}

} // namespace sevo::cli
