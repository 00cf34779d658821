#include "adiavac/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adiavac/io.hpp"
#include "adiavac/probe.hpp"
#include "adiavac/sweep.hpp"

namespace adiavac {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Options {
    // model
    std::string model;
    std::string model_file;
    double A = 1.0, H = 0.0, B = 0.0, tau = 1.0, p = 0.0, t_offset = 0.0;
    std::string knots;
    // mode
    int kappa = 0;
    double k = 1.0;
    double m = 1.0;
    std::string k_list;
    // run
    double t0 = 0.0, t1 = 0.0;
    int order = 0;
    double tol = 1e-10;
    int samples = 201;
    int trials = 1000;
    int threads = 0;
    std::string h3_scan;
    // output
    std::string output = "-";
    std::string format;  // per-command default applied later
    std::string config_path;
};

void require_finite(const Options& opt) {
    for (double v : {opt.A, opt.H, opt.B, opt.tau, opt.p, opt.t_offset, opt.k, opt.m, opt.t0,
                     opt.t1, opt.tol})
        if (!std::isfinite(v))
            throw Error(ErrorKind::ParseError, "all numeric options must be finite");
}

ScaleFactorModel build_model(const Options& opt) {
    if (!opt.model_file.empty()) {
        if (!opt.model.empty())
            throw Error(ErrorKind::ParseError, "--model and --model-file are exclusive");
        return ScaleFactorModel::from_file(opt.model_file);
    }
    if (opt.model.empty())
        throw Error(ErrorKind::ParseError, "one of --model / --model-file is required");

    std::map<std::string, std::string> kv;
    kv["kind"] = opt.model;
    kv["A"] = fmt_g17(opt.A);
    kv["H"] = fmt_g17(opt.H);
    kv["B"] = fmt_g17(opt.B);
    kv["tau"] = fmt_g17(opt.tau);
    kv["p"] = fmt_g17(opt.p);
    kv["t_offset"] = fmt_g17(opt.t_offset);
    if (!opt.knots.empty()) kv["knots"] = opt.knots;
    return ScaleFactorModel::from_key_values(kv);
}

std::vector<double> parse_k_list(const Options& opt) {
    if (opt.k_list.empty()) return {opt.k};
    std::vector<double> ks;
    for (const std::string& cell : split_csv_line(opt.k_list))
        ks.push_back(parse_double(cell, "--k-list entry"));
    if (ks.empty()) throw Error(ErrorKind::ParseError, "--k-list is empty");
    return ks;
}

struct ScanGrid {
    double start, end;
    int count;
};

std::optional<ScanGrid> parse_scan(const std::string& s) {
    if (s.empty()) return std::nullopt;
    const size_t p1 = s.find(':');
    const size_t p2 = s.find(':', p1 == std::string::npos ? p1 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
        throw Error(ErrorKind::ParseError, "--h3-scan wants start:end:count");
    ScanGrid g{parse_double(s.substr(0, p1), "scan start"),
               parse_double(s.substr(p1 + 1, p2 - p1 - 1), "scan end"),
               static_cast<int>(parse_double(s.substr(p2 + 1), "scan count"))};
    if (g.count < 2 || !(g.end > g.start))
        throw Error(ErrorKind::ParseError, "--h3-scan wants end > start and count >= 2");
    return g;
}

void write_text(const std::string& path, const std::string& body) {
    if (path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << body;
}

std::string json_body(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json mode_json(const ModeSpec& spec) {
    return ordered_json{{"kappa", spec.kappa}, {"k", spec.k}, {"m", spec.m}};
}

ordered_json failure_json(const std::optional<TowerFailure>& failure) {
    if (!failure) return nullptr;
    ordered_json f{{"kind", error_kind_name(failure->kind)}, {"n", failure->order_n}};
    if (failure->kind == ErrorKind::HadamardViolation)
        f["value"] = failure->omega_sq;
    else
        f["demanded_order"] = failure->demanded_order;
    return f;
}

int exit_code_for_failure(const std::optional<TowerFailure>& failure) {
    return failure ? exit_code_for(failure->kind) : 0;
}

// ---------------------------------------------------------------- tower ---

int cmd_tower(const Options& opt) {
    const ScaleFactorModel model = build_model(opt);
    const ModeSpec spec(opt.kappa, opt.k, opt.m);
    const OmegaTower tower = omega_tower(model, spec, opt.t0, opt.order);
    const auto scan = parse_scan(opt.h3_scan);

    // optional (H3) grid scan: fresh towers at each grid point, per-order min
    constexpr double unset = std::numeric_limits<double>::infinity();
    std::vector<double> scan_min;
    if (scan) {
        scan_min.assign(static_cast<size_t>(opt.order) + 1, unset);
        for (int i = 0; i < scan->count; ++i) {
            const double t =
                scan->start + (scan->end - scan->start) * (static_cast<double>(i) / (scan->count - 1));
            const OmegaTower local = omega_tower(model, spec, t, opt.order);
            for (size_t n = 0; n < local.orders.size(); ++n) {
                const double osq =
                    local.orders[n].omega.value() * local.orders[n].omega.value();
                scan_min[n] = std::min(scan_min[n], osq);
            }
            if (local.failure && local.failure->kind == ErrorKind::HadamardViolation) {
                const size_t n = static_cast<size_t>(local.failure->order_n);
                if (n < scan_min.size()) scan_min[n] = std::min(scan_min[n], local.failure->omega_sq);
            }
        }
    }

    const bool scan_violation =
        scan && std::any_of(scan_min.begin(), scan_min.end(),
                            [](double v) { return v != unset && v <= 0.0; });

    std::ostringstream csv;
    ordered_json j;
    if (opt.format == "csv") {
        csv << "n,omega,omega_sq,jet_order,status";
        if (scan) csv << ",min_omega_sq_scan";
        csv << "\n";
        for (const auto& f : tower.orders) {
            const double om = f.omega.value();
            csv << f.order_n << "," << fmt_g17(om) << "," << fmt_g17(om * om) << ","
                << f.omega.order() << ",ok";
            if (scan) {
                const double v = scan_min[static_cast<size_t>(f.order_n)];
                csv << "," << (v == unset ? "" : fmt_g17(v));
            }
            csv << "\n";
        }
        if (tower.failure) {
            const auto& f = *tower.failure;
            csv << f.order_n << ",,";
            if (f.kind == ErrorKind::HadamardViolation) csv << fmt_g17(f.omega_sq);
            csv << ",," << error_kind_name(f.kind);
            if (scan) csv << ",";
            csv << "\n";
        }
        write_text(opt.output, csv.str());
    } else {
        j["command"] = "tower";
        j["model"] = model.describe();
        j["mode"] = mode_json(spec);
        j["t0"] = opt.t0;
        j["order_requested"] = opt.order;
        j["orders"] = ordered_json::array();
        for (const auto& f : tower.orders) {
            const double om = f.omega.value();
            j["orders"].push_back(ordered_json{{"n", f.order_n},
                                               {"omega", om},
                                               {"omega_sq", om * om},
                                               {"jet_order", f.omega.order()}});
        }
        j["failure"] = failure_json(tower.failure);
        if (scan) {
            ordered_json s{{"t_start", scan->start}, {"t_end", scan->end}, {"points", scan->count}};
            s["min_omega_sq"] = ordered_json::array();
            for (double v : scan_min)
                s["min_omega_sq"].push_back(v == unset ? ordered_json(nullptr) : ordered_json(v));
            j["h3_scan"] = s;
        }
        write_text(opt.output, json_body(j));
    }

    const int code = exit_code_for_failure(tower.failure);
    if (code != 0) return code;
    return scan_violation ? 2 : 0;
}

// ---------------------------------------------------------------- modes ---

// Tower that must reach order n, or the failure is thrown as an error.
AdiabaticFrequency demand_order(const ScaleFactorModel& model, const ModeSpec& spec, double t0,
                                int order) {
    const OmegaTower tower = omega_tower(model, spec, t0, order);
    if (static_cast<int>(tower.orders.size()) > order) return tower.orders.back();
    const TowerFailure f = tower.failure.value_or(
        TowerFailure{ErrorKind::OrderExhausted, order, 0.0, 2 * order + 2});
    if (f.kind == ErrorKind::HadamardViolation)
        throw HadamardError(f.order_n, f.omega_sq,
                            "(Omega^[" + std::to_string(f.order_n) + "])^2 = " +
                                fmt_g17(f.omega_sq) + " at t0");
    throw OrderError(f.order_n, f.demanded_order,
                     "order " + std::to_string(f.order_n) + " needs an order-" +
                         std::to_string(f.demanded_order) + " jet");
}

int cmd_modes(const Options& opt) {
    if (opt.t1 == opt.t0) throw Error(ErrorKind::ParseError, "modes needs --t1 != --t0");
    const ScaleFactorModel model = build_model(opt);
    const ModeSpec spec(opt.kappa, opt.k, opt.m);

    const AdiabaticFrequency freq = demand_order(model, spec, opt.t0, opt.order);
    const AdiabaticInitialData data =
        adiabatic_initial_data(freq, model.jet(opt.t0, 1), opt.t0);
    const ModeSolution sol = integrate_mode(model, spec, data, opt.t1, opt.tol, opt.samples);

    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "t,Re T,Im T,Re Tdot,Im Tdot,wronskian_error\n";
        for (size_t i = 0; i < sol.times.size(); ++i) {
            const double werr = std::abs(std::imag(std::conj(sol.T[i]) * sol.p[i]) + 0.5);
            csv << fmt_g17(sol.times[i]) << "," << fmt_g17(sol.T[i].real()) << ","
                << fmt_g17(sol.T[i].imag()) << "," << fmt_g17(sol.T_dot[i].real()) << ","
                << fmt_g17(sol.T_dot[i].imag()) << "," << fmt_g17(werr) << "\n";
        }
        write_text(opt.output, csv.str());
    } else {
        ordered_json j;
        j["command"] = "modes";
        j["model"] = model.describe();
        j["mode"] = mode_json(spec);
        j["t0"] = opt.t0;
        j["t1"] = opt.t1;
        j["order"] = opt.order;
        j["tol"] = opt.tol;
        j["max_wronskian_error"] = sol.max_wronskian_error;
        j["rows"] = ordered_json::array();
        for (size_t i = 0; i < sol.times.size(); ++i) {
            const double werr = std::abs(std::imag(std::conj(sol.T[i]) * sol.p[i]) + 0.5);
            j["rows"].push_back(ordered_json{{"t", sol.times[i]},
                                             {"re_T", sol.T[i].real()},
                                             {"im_T", sol.T[i].imag()},
                                             {"re_Tdot", sol.T_dot[i].real()},
                                             {"im_Tdot", sol.T_dot[i].imag()},
                                             {"wronskian_error", werr}});
        }
        write_text(opt.output, json_body(j));
    }
    return 0;
}

// ----------------------------------------------------------- bogoliubov ---

int cmd_bogoliubov(const Options& opt) {
    if (opt.t1 == opt.t0) throw Error(ErrorKind::ParseError, "bogoliubov needs --t1 != --t0");
    const ScaleFactorModel model = build_model(opt);
    const std::vector<double> ks = parse_k_list(opt);

    const std::vector<BogoliubovSweepRow> rows = bogoliubov_sweep(
        model, opt.kappa, ks, opt.m, opt.t0, opt.t1, opt.order, opt.tol, opt.threads);

    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "k,alpha_re,alpha_im,beta_re,beta_im,beta_sq,norm_residual\n";
        for (const auto& r : rows)
            csv << fmt_g17(r.k) << "," << fmt_g17(r.pair.alpha.real()) << ","
                << fmt_g17(r.pair.alpha.imag()) << "," << fmt_g17(r.pair.beta.real()) << ","
                << fmt_g17(r.pair.beta.imag()) << "," << fmt_g17(r.beta_sq) << ","
                << fmt_g17(r.norm_residual) << "\n";
        write_text(opt.output, csv.str());
    } else {
        ordered_json j;
        j["command"] = "bogoliubov";
        j["model"] = model.describe();
        j["kappa"] = opt.kappa;
        j["m"] = opt.m;
        j["t0"] = opt.t0;
        j["t1"] = opt.t1;
        j["order"] = opt.order;
        j["rows"] = ordered_json::array();
        for (const auto& r : rows)
            j["rows"].push_back(ordered_json{{"k", r.k},
                                             {"alpha_re", r.pair.alpha.real()},
                                             {"alpha_im", r.pair.alpha.imag()},
                                             {"beta_re", r.pair.beta.real()},
                                             {"beta_im", r.pair.beta.imag()},
                                             {"beta_sq", r.beta_sq},
                                             {"norm_residual", r.norm_residual}});
        write_text(opt.output, json_body(j));
    }
    return 0;
}

// ---------------------------------------------------------------- probe ---

int cmd_probe(const Options& opt) {
    if (opt.format == "csv")
        throw Error(ErrorKind::ParseError, "probe reports are JSON only");
    const ScaleFactorModel model = build_model(opt);
    const ModeSpec spec(opt.kappa, opt.k, opt.m);

    const MaxOrderReport report = max_adiabatic_order(model, spec, opt.t0, opt.order);
    const int chain_n = std::max(2, opt.order);
    const FnChain chain = fn_chain(model, spec, opt.t0, chain_n);

    const Jet a1 = model.jet(opt.t0, 1);
    const double a = a1.value();
    const AffineDecomposition affine = affine_decompose(a, a1.derivative(1), spec);

    const double E = energy_eigenvalue(spec);
    const double osq = omega_squared_value(a, spec);
    const double a3 = a * a * a;

    ordered_json j;
    j["command"] = "probe";
    j["model"] = model.describe();
    j["mode"] = mode_json(spec);
    j["t0"] = opt.t0;
    j["max_order"] = report.max_order;
    j["failure"] = failure_json(report.failure);
    j["fn_chain"] = chain.recursion;
    j["fn_closed_form"] = chain.closed_form;
    j["omega_sq_tower"] = chain.omega_sq;
    j["slope"] = affine.slope;
    j["intercept"] = affine.intercept;
    j["slope_closed_form"] = closed_form_slope(a, spec);
    // the two circulated closed forms for f_2, recorded verbatim for comparison
    j["f2_alternatives"] = ordered_json{
        {"product_form", osq * (3.0 * a3 * a * a - E * a3)},
        {"ratio_form", -(3.0 * a3 * a * a + E * a3) / (2.0 * a3 * a3)}};
    write_text(opt.output, json_body(j));
    return 0;
}

// ---------------------------------------------------------------- check ---

struct CheckContext {
    std::ostringstream log;
    bool all_ok = true;

    void record(const std::string& name, bool ok, const std::string& detail) {
        log << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        all_ok = all_ok && ok;
    }
};

int cmd_check(const Options& opt) {
    if (opt.t1 == opt.t0) throw Error(ErrorKind::ParseError, "check needs --t1 != --t0");
    const ScaleFactorModel model = build_model(opt);
    const ModeSpec spec(opt.kappa, opt.k, opt.m);
    CheckContext ctx;

    // jet ring axioms on random inputs
    {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> cx(7), cy(7), cz(7);
            for (int i = 0; i < 7; ++i) {
                cx[static_cast<size_t>(i)] = uni(rng);
                cy[static_cast<size_t>(i)] = uni(rng);
                cz[static_cast<size_t>(i)] = uni(rng);
            }
            const Jet x(0.0, cx), y(0.0, cy), z(0.0, cz);
            const Jet lhs = mul(x, add(y, z));
            const Jet rhs = add(mul(x, y), mul(x, z));
            const Jet assoc_l = mul(mul(x, y), z);
            const Jet assoc_r = mul(x, mul(y, z));
            for (int i = 0; i <= 6; ++i) {
                worst = std::max(worst, std::abs(lhs.coeff(i) - rhs.coeff(i)));
                worst = std::max(worst, std::abs(assoc_l.coeff(i) - assoc_r.coeff(i)));
            }
        }
        ctx.record("jet_ring_axioms", worst <= 1e-13, "max defect " + fmt_g17(worst));
    }

    // tower construction, order budget, positivity
    const AdiabaticFrequency top = demand_order(model, spec, opt.t0, opt.order);
    {
        const OmegaTower tower = omega_tower(model, spec, opt.t0, opt.order);
        const int a_order = std::min(2 * opt.order + 2, model.smoothness_class());
        bool budget_ok = true;
        bool positive_ok = true;
        for (const auto& f : tower.orders) {
            budget_ok = budget_ok && (f.omega.order() == a_order - 2 * f.order_n);
            positive_ok = positive_ok && (f.omega.value() > 0.0);
        }
        ctx.record("tower_order_budget", budget_ok, "a-jet order " + std::to_string(a_order));
        ctx.record("tower_positive", positive_ok,
                   std::to_string(tower.orders.size()) + " orders built");
    }

    // initial data Wronskian at every order
    {
        double worst = 0.0;
        const Jet a1 = model.jet(opt.t0, 1);
        const OmegaTower tower = omega_tower(model, spec, opt.t0, opt.order);
        for (const auto& f : tower.orders) {
            const AdiabaticInitialData d = adiabatic_initial_data(f, a1, opt.t0);
            const double a3 = std::pow(model.value(opt.t0), 3.0);
            worst = std::max(worst, std::abs(wronskian_defect(d.T0, a3 * d.T0_dot)));
        }
        ctx.record("initial_data_wronskian", worst <= 1e-12, "max defect " + fmt_g17(worst));
    }

    // integration drift and time reversal
    const AdiabaticInitialData data =
        adiabatic_initial_data(top, model.jet(opt.t0, 1), opt.t0);
    const ModeSolution sol = integrate_mode(model, spec, data, opt.t1, opt.tol, opt.samples);
    ctx.record("wronskian_drift", sol.max_wronskian_error <= 10.0 * opt.tol,
               "max drift " + fmt_g17(sol.max_wronskian_error) + " vs 10*tol " +
                   fmt_g17(10.0 * opt.tol));
    {
        const size_t end = sol.index_of_time(opt.t1);
        const AdiabaticInitialData back{sol.T[end], sol.T_dot[end], opt.t1, opt.order};
        const ModeSolution rsol = integrate_mode(model, spec, back, opt.t0, opt.tol, opt.samples);
        const size_t start = rsol.index_of_time(opt.t0);
        const double err = std::abs(rsol.T[start] - data.T0) +
                           std::abs(rsol.T_dot[start] - data.T0_dot);
        ctx.record("time_reversal", err <= 100.0 * opt.tol, "return error " + fmt_g17(err));
    }

    // S(k) invariants at every sample
    {
        bool ok = true;
        double worst_det = 0.0;
        for (size_t i = 0; i < sol.times.size(); ++i) {
            const TwoPointMatrix S = two_point_matrix(sol.T[i], sol.p[i]);
            const double det = std::abs(S.det());
            worst_det = std::max(worst_det, det);
            ok = ok && S.s10 == std::conj(S.s01) && S.s00.real() >= 0.0 &&
                 S.s11.real() >= 0.0 && S.trace() > 0.0 && det <= 1e-12;
        }
        ctx.record("two_point_matrix", ok, "max |det| " + fmt_g17(worst_det));
    }

    // quasifree positivity
    {
        const size_t end = sol.index_of_time(opt.t1);
        const PositivityReport rep =
            quasifree_positivity_check(two_point_matrix(sol.T[end], sol.p[end]), opt.trials);
        ctx.record("quasifree_positivity", rep.violations == 0,
                   std::to_string(rep.trials) + " trials, max violation " +
                       fmt_g17(rep.max_violation));
    }

    // Bogoliubov identity: exact on machine-normalized data; the evolved
    // solution only owes the 1e-8 norm bound (it carries integration drift)
    {
        const double a3 = std::pow(model.value(opt.t0), 3.0);
        const ModeSolution wrapped{{opt.t0}, {data.T0}, {data.T0_dot}, {a3 * data.T0_dot},
                                   spec,     opt.order, opt.t0,        0.0,
                                   0};
        const BogoliubovPair id = bogoliubov(wrapped, wrapped, opt.t0);
        const double err = std::abs(id.alpha - cplx(1.0, 0.0)) + std::abs(id.beta);
        const BogoliubovPair evolved = bogoliubov(sol, sol, opt.t1);
        const double norm_err =
            std::abs(std::norm(evolved.alpha) - std::norm(evolved.beta) - 1.0);
        ctx.record("bogoliubov_identity", err <= 1e-12 && norm_err <= 1e-8,
                   "identity error " + fmt_g17(err) + ", evolved norm error " +
                       fmt_g17(norm_err));
    }

    write_text(opt.output, ctx.log.str());
    return ctx.all_ok ? 0 : 5;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{
        "adiabatic vacuum states of a Klein-Gordon field on Robertson-Walker "
                 "backgrounds: frequency towers, mode integration, Bogoliubov sweeps "
                 "and consistency probes"};
    app.require_subcommand(1);

    Options opt;
    std::string command;

    const auto add_common = [&](CLI::App* sub, bool needs_t1) {
        // repeated flags keep the last value, so config-file tokens injected
        // ahead of the explicit flags are overridden by them
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--config", opt.config_path,
                        "key=value file supplying any long option (flags win)");
        sub->add_option("--model", opt.model,
                        "constant|desitter|powerlaw|tanh|spline (with the matching "
                        "parameter flags)");
        sub->add_option("--model-file", opt.model_file, "key=value scale factor definition");
        sub->add_option("--A", opt.A, "constant value / tanh baseline");
        sub->add_option("--H", opt.H, "de Sitter expansion rate");
        sub->add_option("--B", opt.B, "tanh step amplitude");
        sub->add_option("--tau", opt.tau, "tanh time scale");
        sub->add_option("--p", opt.p, "power-law exponent");
        sub->add_option("--t-offset", opt.t_offset, "power-law time offset");
        sub->add_option("--knots", opt.knots, "spline knot CSV (t,a)");
        sub->add_option("--kappa", opt.kappa, "spatial curvature sign (-1, 0, +1)")
            ->check(CLI::IsMember({-1, 0, 1}));
        sub->add_option("--k", opt.k, "mode number");
        sub->add_option("--m", opt.m, "field mass");
        sub->add_option("--t0", opt.t0, "initial time");
        if (needs_t1) sub->add_option("--t1", opt.t1, "final time");
        sub->add_option("--order", opt.order, "adiabatic order n")->check(CLI::NonNegativeNumber);
        sub->add_option("--tol", opt.tol, "integration tolerance");
        sub->add_option("--output", opt.output, "output path ('-' for stdout)");
        sub->add_option("--format", opt.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        sub->callback([&command, sub] { command = sub->get_name(); });
    };

    CLI::App* tower = app.add_subcommand("tower", "frequency iterates at t0");
    add_common(tower, false);
    tower->add_option("--h3-scan", opt.h3_scan,
                      "start:end:count grid on which (H3) positivity is probed");

    CLI::App* modes = app.add_subcommand("modes", "integrate one mode from adiabatic data");
    add_common(modes, true);
    modes->add_option("--samples", opt.samples, "output grid size")->check(CLI::PositiveNumber);

    CLI::App* bogo = app.add_subcommand("bogoliubov", "particle content per mode");
    add_common(bogo, true);
    bogo->add_option("--k-list", opt.k_list, "comma-separated mode numbers");
    bogo->add_option("--threads", opt.threads, "worker pool size (0 = auto/ADIAVAC_THREADS)");

    CLI::App* probe = app.add_subcommand("probe", "affine decomposition and f_n chain report");
    add_common(probe, false);

    CLI::App* check = app.add_subcommand("check", "run the invariant suite on this configuration");
    add_common(check, true);
    check->add_option("--samples", opt.samples, "integration grid size")
        ->check(CLI::PositiveNumber);
    check->add_option("--trials", opt.trials, "positivity trials")->check(CLI::PositiveNumber);

    // expand --config <path> into its key=value pairs, injected right after
    // the subcommand so explicit flags (parsed later, TakeLast) win
    std::vector<std::string> tokens;
    for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);
    std::string config_path;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i] == "--config" && i + 1 < tokens.size()) config_path = tokens[i + 1];
        if (tokens[i].rfind("--config=", 0) == 0) config_path = tokens[i].substr(9);
    }
    if (!config_path.empty() && !tokens.empty()) {
        try {
            std::vector<std::string> expanded{tokens.front()};
            for (const auto& [key, value] : read_key_value_file(config_path))
                expanded.push_back("--" + key + "=" + value);
            expanded.insert(expanded.end(), tokens.begin() + 1, tokens.end());
            tokens = std::move(expanded);
        } catch (const Error& e) {
            std::cerr << "adiavac: " << e.what() << "\n";
            return 4;
        }
    }

    try {
        std::reverse(tokens.begin(), tokens.end());  // CLI11 vector convention
        app.parse(std::move(tokens));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 4;
    }

    if (opt.format.empty()) opt.format = (command == "probe") ? "json" : "csv";

    try {
        require_finite(opt);
        if (command == "tower") return cmd_tower(opt);
        if (command == "modes") return cmd_modes(opt);
        if (command == "bogoliubov") return cmd_bogoliubov(opt);
        if (command == "probe") return cmd_probe(opt);
        if (command == "check") return cmd_check(opt);
        throw Error(ErrorKind::ParseError, "no command selected");
    } catch (const Error& e) {
        std::cerr << "adiavac: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "adiavac: " << e.what() << "\n";
        return 5;
    }
}

} // namespace adiavac
