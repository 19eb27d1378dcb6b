#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "hyperent/box_hamiltonian.hpp"
#include "hyperent/entanglement.hpp"
#include "hyperent/experiments.hpp"
#include "hyperent/oracle.hpp"
#include "output.hpp"

namespace hyperent::cli {

using nlohmann::ordered_json;

std::string to_string(Command command) {
    switch (command) {
        case Command::Evolve: return "evolve";
        case Command::Tau: return "tau";
        case Command::Sweep: return "sweep";
        case Command::OracleCheck: return "oracle-check";
        case Command::Couplings: return "couplings";
        case Command::Plot: return "plot";
    }
    return "unknown";
}

namespace {

constexpr std::array kCommands{Command::Evolve, Command::Tau, Command::Sweep,
                               Command::OracleCheck, Command::Couplings, Command::Plot};

bool uses_physics(Command c) { return c != Command::Couplings && c != Command::Plot; }
bool uses_tau(Command c) { return c == Command::Tau || c == Command::Sweep; }

void add_physics(CLI::App* s, RunConfig& c) {
    s->add_option("--n", c.n, "number of nuclear spins")->capture_default_str();
    s->add_option("--f", c.f, "nuclear spin F (half-integer)")->capture_default_str();
    s->add_option("--alpha", c.alpha, "qubit amplitude on |up>, beta = sqrt(1 - alpha^2) e^{i phase}")
        ->capture_default_str();
    s->add_option("--phase,--phase_rad", c.phase_rad, "relative phase of beta [rad]")->capture_default_str();
    s->add_option("--bfield,--bfield_T", c.bfield_T, "magnetic field [T]")->capture_default_str();
    s->add_option("--a-coupling,--a_coupling_ueV", c.a_coupling_ueV, "box-model hyperfine coupling A [ueV]")
        ->capture_default_str();
    s->add_option("--g-factor,--g_factor", c.g_factor, "electron g-factor")->capture_default_str();
    s->add_option("--t-end,--t_end_ns", c.t_end_ns, "time window [ns]; 0 selects the command default")
        ->capture_default_str();
    s->add_option("--points", c.points, "time grid points; 0 selects the command default")->capture_default_str();
}

void add_tau(CLI::App* s, RunConfig& c) {
    s->add_option("--method", c.method, "first-return or threshold")->capture_default_str();
    s->add_option("--epsilon", c.epsilon, "zero threshold for negativity")->capture_default_str();
    s->add_option("--max-doublings,--max_doublings", c.max_doublings,
                  "window doublings when the default window shows no return to zero")
        ->capture_default_str();
}

// Builds the parser with every option bound to `c`.
void build(CLI::App& app, RunConfig& c) {
    app.set_config("--config", "", "INI config file with one section per subcommand");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.add_option("--jobs", c.jobs, "worker threads for sweeps (0: all processors)")->capture_default_str();

    for (const Command cmd : kCommands) {
        CLI::App* s = nullptr;
        switch (cmd) {
            case Command::Evolve: s = app.add_subcommand("evolve", "negativity trace N(t) to CSV"); break;
            case Command::Tau: s = app.add_subcommand("tau", "disentanglement time as JSON"); break;
            case Command::Sweep: s = app.add_subcommand("sweep", "sweep F, n, B or alpha; CSV plus fit report"); break;
            case Command::OracleCheck:
                s = app.add_subcommand("oracle-check", "compare against the product-basis reference");
                break;
            case Command::Couplings: s = app.add_subcommand("couplings", "box-model A from dot geometry"); break;
            case Command::Plot: s = app.add_subcommand("plot", "render a trace or sweep CSV as SVG"); break;
        }
        s->fallthrough();
        s->callback([&c, cmd] { c.command = cmd; });
        if (uses_physics(cmd)) add_physics(s, c);
        if (uses_tau(cmd)) add_tau(s, c);
        if (cmd == Command::Sweep) {
            s->add_option("--axis", c.axis, "F, n, B or alpha")->capture_default_str();
            s->add_option("--values", c.values, "axis values (default grid per axis)")->delimiter(',');
            s->add_option("--fit", c.fit, "linear, log or exponential")->capture_default_str();
            s->add_option("--fit-target,--fit_target", c.fit_target, "tau or max_negativity")->capture_default_str();
        }
        if (cmd == Command::Couplings) {
            s->add_option("--l-perp,--l_perp_nm", c.l_perp_nm, "in-plane envelope width [nm]")->capture_default_str();
            s->add_option("--l-z,--l_z_nm", c.l_z_nm, "growth-axis envelope width [nm]")->capture_default_str();
            s->add_option("--materials", c.materials, "material table CSV (default: GaAs)");
        }
        if (cmd == Command::Plot) {
            s->add_option("--input,-i", c.input, "CSV written by evolve or sweep")->required();
            s->add_option("--fit-target,--fit_target", c.fit_target, "sweep column to plot: tau or max_negativity")
                ->capture_default_str();
        }
        s->add_option("--output,-o", c.output, "output file (default: standard output)");
        if (cmd == Command::Evolve || cmd == Command::Sweep) {
            s->add_option("--json", c.json, cmd == Command::Evolve ? "JSON provenance sidecar" : "JSON fit report");
            s->add_option("--svg", c.svg, "SVG plot");
        }
    }
}

std::string quoted(const std::string& s) {
    return s.find('"') == std::string::npos ? '"' + s + '"' : '\'' + s + '\'';
}

BathSpec spec_of(const RunConfig& c) { return {c.n, HalfInt::from_double(c.f)}; }

PhysicalParams params_of(const RunConfig& c) {
    PhysicalParams p;
    p.A = c.a_coupling_ueV;
    p.B = c.bfield_T;
    p.g = c.g_factor;
    return p;
}

QubitState qubit_of(const RunConfig& c) { return QubitState::from_alpha(c.alpha, c.phase_rad); }

TauOptions tau_of(const RunConfig& c) {
    TauOptions t;
    t.method = c.method == "threshold" ? TauMethod::ThresholdCrossing : TauMethod::FirstReturnToZero;
    t.epsilon = c.epsilon;
    return t;
}

// An explicit window is taken literally; only the default window grows.
AnalysisOptions analysis_of(const RunConfig& c) {
    AnalysisOptions a;
    a.window_ns = c.t_end_ns;
    a.points = c.points > 0 ? c.points : 2000;
    a.max_doublings = c.t_end_ns > 0.0 ? 0 : c.max_doublings;
    a.tau = tau_of(c);
    return a;
}

FitModel fit_model_of(const std::string& name) {
    if (name == "linear") return FitModel::Linear;
    if (name == "log") return FitModel::Log;
    if (name == "exponential") return FitModel::Exponential;
    throw std::invalid_argument("unknown fit model '" + name + "' (expected linear, log or exponential)");
}

ordered_json params_json(const RunConfig& c) {
    const PhysicalParams p = params_of(c);
    return ordered_json{{"n", c.n},
                        {"F", c.f},
                        {"alpha", c.alpha},
                        {"phase_rad", c.phase_rad},
                        {"bfield_T", c.bfield_T},
                        {"a_coupling_ueV", c.a_coupling_ueV},
                        {"g_factor", c.g_factor},
                        {"mu_B_ueV_per_T", p.mu_B},
                        {"hbar_ueV_ns", p.hbar}};
}

// Result text goes to `path` when set, else to `out`.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

std::string csv_text(const CsvTable& t) {
    std::ostringstream s;
    write_csv(s, t);
    return s.str();
}

std::string optional_number(double v) { return std::isfinite(v) ? format_double(v) : std::string{}; }

void validate_axis_value(const RunConfig& c, SweepAxis axis, double v) {
    RunConfig probe = c;
    switch (axis) {
        case SweepAxis::F: probe.f = v; break;
        case SweepAxis::n:
            if (v != std::floor(v)) throw std::invalid_argument("n values must be integers");
            if (std::abs(v) > 1e6) throw std::invalid_argument("n value out of range");
            probe.n = static_cast<int>(v);
            break;
        case SweepAxis::B: probe.bfield_T = v; break;
        case SweepAxis::alpha: probe.alpha = v; break;
    }
    spec_of(probe).validate();
    params_of(probe).validate();
    if (!std::isfinite(probe.bfield_T)) throw std::invalid_argument("bfield_T must be finite");
    qubit_of(probe);
}

// ---------------------------------------------------------------------------

int cmd_evolve(const RunConfig& c, std::ostream& out) {
    const PhysicalParams p = params_of(c);
    TimeGrid grid = default_grid(p);
    if (c.t_end_ns > 0.0) grid.t_end = c.t_end_ns;
    if (c.points > 0) grid.points = c.points;
    const auto trace = trace_negativity(spec_of(c), p, qubit_of(c), grid);

    CsvTable t{{"t_ns", "negativity"}, {}};
    t.rows.reserve(trace.times.size());
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        t.rows.push_back({format_double(trace.times[i]), format_double(trace.values[i])});
    const std::string csv = csv_text(t);

    std::string json;
    if (!c.json.empty()) {
        ordered_json j{{"command", "evolve"},
                       {"columns", {"t_ns", "negativity"}},
                       {"engine", trace.params.engine},
                       {"params", params_json(c)},
                       {"grid", {{"t_begin_ns", grid.t_begin}, {"t_end_ns", grid.t_end}, {"points", grid.points}}},
                       {"max_negativity_on_grid", *std::max_element(trace.values.begin(), trace.values.end())},
                       {"isotropic_bound", isotropic_bound().value()}};
        if (!c.output.empty()) j["csv"] = c.output;
        json = j.dump(2) + "\n";
    }
    std::string svg;
    if (!c.svg.empty()) {
        PlotSpec plot;
        std::ostringstream title;
        title << "n = " << c.n << ", F = " << c.f << ", alpha = " << c.alpha << ", B = " << c.bfield_T << " T";
        plot.title = title.str();
        plot.x_label = "t [ns]";
        plot.y_label = "negativity";
        plot.series.push_back({"", trace.times, trace.values, false});
        svg = render_svg(plot);
    }
    emit(c.output, csv, out);
    if (!c.json.empty()) write_file(c.json, json);
    if (!c.svg.empty()) write_file(c.svg, svg);
    return exit_code::ok;
}

int cmd_tau(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto opts = analysis_of(c);
    const auto a = analyze(spec_of(c), params_of(c), qubit_of(c), opts);
    ordered_json j;
    j["tau_ns"] = a.tau ? ordered_json(a.tau->tau) : ordered_json(nullptr);
    j["method"] = to_string(opts.tau.method);
    j["epsilon"] = opts.tau.epsilon;
    if (a.tau) j["value_at_tau"] = a.tau->value_at_tau;
    j["max_negativity"] = a.max_negativity;
    j["window_ns"] = a.trace.times.back();
    j["params"] = params_json(c);
    if (!a.tau) j["error"] = a.error;
    emit(c.output, j.dump(2) + "\n", out);
    if (a.tau) return exit_code::ok;
    err << "error: " << a.error << '\n';
    return exit_code::runtime;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SweepRequest req;
    req.axis = parse_sweep_axis(c.axis);
    req.values = c.values.empty() ? default_sweep_values(c.axis) : c.values;
    req.bath = spec_of(c);
    req.params = params_of(c);
    req.alpha = c.alpha;
    req.phase = c.phase_rad;
    req.analysis = analysis_of(c);
    req.jobs = c.jobs;
    const auto points = sweep(req);

    CsvTable t{{"axis_value", "max_negativity", "tau_ns", "errors"}, {}};
    std::vector<double> x, y;
    int failures = 0;
    const bool tau_target = c.fit_target == "tau";
    for (const auto& pt : points) {
        t.rows.push_back({format_double(pt.value), optional_number(pt.max_negativity),
                          pt.tau_ns ? format_double(*pt.tau_ns) : std::string{}, pt.error});
        if (!pt.error.empty()) ++failures;
        const double target = tau_target ? (pt.tau_ns ? *pt.tau_ns : NAN) : pt.max_negativity;
        if (std::isfinite(target)) {
            x.push_back(pt.value);
            y.push_back(target);
        }
    }

    ordered_json report{{"axis", to_string(req.axis)}, {"target", c.fit_target}, {"model", c.fit}};
    std::optional<FitReport> fitted;
    try {
        fitted = fit(fit_model_of(c.fit), x, y);
        report["intercept"] = fitted->intercept;
        report["slope"] = fitted->slope;
        report["r_squared"] = fitted->r_squared;
        report["degenerate"] = fitted->degenerate;
        report["points"] = fitted->points;
    } catch (const std::invalid_argument& e) {
        report["points"] = x.size();
        report["error"] = e.what();
    }
    report["failed_points"] = failures;
    report["params"] = params_json(c);
    const std::string json = report.dump(2) + "\n";

    std::string svg;
    if (!c.svg.empty()) {
        PlotSpec plot;
        plot.title = "sweep over " + to_string(req.axis);
        plot.x_label = to_string(req.axis);
        plot.y_label = tau_target ? "tau [ns]" : "max negativity";
        plot.series.push_back({"computed", x, y, true});
        if (fitted && !x.empty()) {
            Series line{to_string(fitted->model) + " fit", {}, {}, false};
            const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
            for (int i = 0; i <= 100; ++i) {
                const double xv = *lo + (*hi - *lo) * i / 100.0;
                const double u = fitted->model == FitModel::Log ? std::log(xv) : xv;
                const double v = fitted->intercept + fitted->slope * u;
                line.x.push_back(xv);
                line.y.push_back(fitted->model == FitModel::Exponential ? std::exp(v) : v);
            }
            plot.series.push_back(std::move(line));
        }
        svg = render_svg(plot);
    }

    emit(c.output, csv_text(t), out);
    if (c.json.empty()) {
        err << report.dump() << '\n';
    } else {
        write_file(c.json, json);
    }
    if (!c.svg.empty()) write_file(c.svg, svg);
    if (failures == 0) return exit_code::ok;
    err << "warning: " << failures << " of " << points.size() << " sweep points failed\n";
    return failures == static_cast<int>(points.size()) ? exit_code::runtime : exit_code::partial;
}

int cmd_oracle_check(const RunConfig& c, std::ostream& out) {
    const BathSpec spec = spec_of(c);
    const PhysicalParams p = params_of(c);
    const QubitState q = qubit_of(c);
    const double omega = std::hypot(p.A, p.zeeman());
    TimeGrid grid{0.0, c.t_end_ns > 0.0 ? c.t_end_ns : 9.0 * p.hbar / omega, c.points > 0 ? c.points : 200};
    const auto times = grid.times();

    const auto reference = oracle::oracle_negativity_trace(spec, p, q, times);
    const auto fast = trace_negativity(NegativityEvaluator(spec, p, q), times);
    double neg_dev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        neg_dev = std::max(neg_dev, std::abs(reference.values[i] - fast.values[i]));

    const auto full = oracle::full_spectrum(spec, p);
    std::vector<double> blocks;
    blocks.reserve(full.size());
    for (const auto& s : enumerate_sectors(spec).entries)
        for (BigCount k = 0; k < s.multiplicity; ++k)
            for (const double e : sector_spectrum(p, s.K)) blocks.push_back(e);
    std::sort(blocks.begin(), blocks.end());
    double spec_dev = blocks.size() == full.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(full.size(), blocks.size()); ++i)
        spec_dev = std::max(spec_dev, std::abs(full[i] - blocks[i]));

    constexpr double tol = 1e-8;
    const bool pass = neg_dev < tol && spec_dev < tol;
    ordered_json j{{"pass", pass},
                   {"tolerance", tol},
                   {"max_negativity_deviation", neg_dev},
                   {"max_spectrum_deviation", spec_dev},
                   {"product_dim", full.size()},
                   {"points", grid.points},
                   {"window_ns", grid.t_end},
                   {"params", params_json(c)}};
    emit(c.output, j.dump(2) + "\n", out);
    return pass ? exit_code::ok : exit_code::runtime;
}

int cmd_couplings(const RunConfig& c, std::ostream& out) {
    DotGeometry dot;
    dot.l_perp_nm = c.l_perp_nm;
    dot.l_z_nm = c.l_z_nm;
    const MaterialTable table = c.materials.empty() ? MaterialTable::gaas_defaults() : load_material_table(c.materials);
    const double a = average_coupling(dot, table);
    ordered_json rows = ordered_json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"species", r.species},
                        {"abundance", r.abundance},
                        {"F", r.F.value()},
                        {"A0_ueV", r.A0_ueV},
                        {"gamma_1e7", r.gamma_1e7}});
    ordered_json j{{"a_coupling_ueV", a},
                   {"cell_coupling_ueV", table.cell_coupling()},
                   {"reference_ueV", units::kBoxCouplingA},
                   {"l_perp_nm", dot.l_perp_nm},
                   {"l_z_nm", dot.l_z_nm},
                   {"cell_volume_nm3", dot.cell_volume_nm3},
                   {"materials", rows}};
    emit(c.output, j.dump(2) + "\n", out);
    return exit_code::ok;
}

int cmd_plot(const RunConfig& c, std::ostream& out) {
    std::ifstream in(c.input, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + c.input + "'");
    const CsvTable t = read_csv(in);
    auto column = [&](std::size_t k) {
        std::vector<double> v;
        v.reserve(t.rows.size());
        for (const auto& r : t.rows) v.push_back(r[k].empty() ? NAN : parse_double(r[k]));
        return v;
    };
    PlotSpec plot;
    const auto has = [&](const char* name) { return std::find(t.header.begin(), t.header.end(), name) != t.header.end(); };
    if (has("t_ns") && has("negativity")) {
        plot.title = "negativity trace";
        plot.x_label = "t [ns]";
        plot.y_label = "negativity";
        plot.series.push_back({"", column(t.column("t_ns")), column(t.column("negativity")), false});
    } else if (has("axis_value")) {
        const bool tau = c.fit_target == "tau";
        plot.title = "sweep";
        plot.x_label = "axis value";
        plot.y_label = tau ? "tau [ns]" : "max negativity";
        plot.series.push_back(
            {"", column(t.column("axis_value")), column(t.column(tau ? "tau_ns" : "max_negativity")), true});
    } else {
        throw std::runtime_error("'" + c.input + "' is neither an evolve nor a sweep CSV");
    }
    emit(c.output, render_svg(plot), out);
    return exit_code::ok;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> default_sweep_values(const std::string& axis) {
    switch (parse_sweep_axis(axis)) {
        case SweepAxis::F: return {0.5, 1.0, 1.5, 2.0, 2.5};
        case SweepAxis::n: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
        case SweepAxis::B: return {0.0, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0};
        case SweepAxis::alpha: return {1.0, 0.9, 0.8, 1.0 / std::numbers::sqrt2};
    }
    return {};
}

RunConfig parse_command_line(const std::vector<std::string>& args, std::string* help) {
    RunConfig c;
    CLI::App app{"Electron-spin qubit entanglement with a nuclear spin bath (box model)", "hyperent"};
    build(app, c);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream o, e_out;
        app.exit(e, o, e_out);
        if (help) *help = o.str();
        return c;
    } catch (const CLI::CallForAllHelp& e) {
        std::ostringstream o, e_out;
        app.exit(e, o, e_out);
        if (help) *help = o.str();
        return c;
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (CLI::App* s : app.get_subcommands()) {
        const auto* values = s->get_option_no_throw("--values");
        if (values && values->count() > 0 && c.values.empty()) throw UsageError("empty value list for --values");
    }
    validate(c);
    return c;
}

void validate(const RunConfig& c) {
    try {
        if (c.jobs < 0) throw std::invalid_argument("jobs must be >= 0");
        if (uses_physics(c.command)) {
            spec_of(c).validate();
            params_of(c).validate();
            qubit_of(c);
            for (const double v : {c.bfield_T, c.phase_rad, c.g_factor, c.t_end_ns})
                if (!std::isfinite(v)) throw std::invalid_argument("parameters must be finite");
            if (c.t_end_ns < 0.0) throw std::invalid_argument("t_end_ns must be >= 0");
            if (c.points != 0 && (c.points < 2 || c.points > 10'000'000))
                throw std::invalid_argument("points must be 0 (default) or in [2, 1e7]");
            if (c.t_end_ns == 0.0 && !(c.a_coupling_ueV > 0.0))
                throw std::invalid_argument("a_coupling_ueV = 0 needs an explicit t_end_ns");
        }
        if (uses_tau(c.command)) {
            if (c.method != "first-return" && c.method != "threshold")
                throw std::invalid_argument("method must be first-return or threshold");
            if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) throw std::invalid_argument("epsilon must be > 0");
            if (c.max_doublings < 0 || c.max_doublings > 20)
                throw std::invalid_argument("max_doublings must be in [0, 20]");
        }
        if (c.command == Command::Sweep) {
            const SweepAxis axis = parse_sweep_axis(c.axis);
            fit_model_of(c.fit);
            if (c.fit_target != "tau" && c.fit_target != "max_negativity")
                throw std::invalid_argument("fit_target must be tau or max_negativity");
            for (const double v : c.values.empty() ? default_sweep_values(c.axis) : c.values)
                validate_axis_value(c, axis, v);
        }
        if (c.command == Command::OracleCheck) {
            const BathSpec spec = spec_of(c);
            const oracle::OracleLimits limits;
            if (2 * spec.bath_dim() > static_cast<BigCount>(limits.max_dim))
                throw std::invalid_argument("oracle-check: product-basis dimension 2(2F+1)^n = " +
                                            hyperent::to_string(2 * spec.bath_dim()) + " exceeds cap of " +
                                            std::to_string(limits.max_dim));
        }
        if (c.command == Command::Couplings) {
            if (!(c.l_perp_nm > 0.0) || !(c.l_z_nm > 0.0) || !std::isfinite(c.l_perp_nm) || !std::isfinite(c.l_z_nm))
                throw std::invalid_argument("envelope widths must be positive");
        }
        if (c.command == Command::Plot) {
            if (c.input.empty()) throw std::invalid_argument("plot needs --input");
            if (c.fit_target != "tau" && c.fit_target != "max_negativity")
                throw std::invalid_argument("fit_target must be tau or max_negativity");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string to_config_text(const RunConfig& c) {
    std::ostringstream o;
    o << "jobs = " << c.jobs << "\n\n[" << to_string(c.command) << "]\n";
    auto num = [&](const char* key, double v) { o << key << " = " << format_double(v) << '\n'; };
    auto str = [&](const char* key, const std::string& v) { o << key << " = " << quoted(v) << '\n'; };
    if (uses_physics(c.command)) {
        o << "n = " << c.n << '\n';
        num("f", c.f);
        num("alpha", c.alpha);
        num("phase_rad", c.phase_rad);
        num("bfield_T", c.bfield_T);
        num("a_coupling_ueV", c.a_coupling_ueV);
        num("g_factor", c.g_factor);
        num("t_end_ns", c.t_end_ns);
        o << "points = " << c.points << '\n';
    }
    if (uses_tau(c.command)) {
        str("method", c.method);
        num("epsilon", c.epsilon);
        o << "max_doublings = " << c.max_doublings << '\n';
    }
    if (c.command == Command::Sweep) {
        str("axis", c.axis);
        if (!c.values.empty()) {
            o << "values = [";
            for (std::size_t i = 0; i < c.values.size(); ++i) o << (i ? ", " : "") << format_double(c.values[i]);
            o << "]\n";
        }
        str("fit", c.fit);
        str("fit_target", c.fit_target);
    }
    if (c.command == Command::Couplings) {
        num("l_perp_nm", c.l_perp_nm);
        num("l_z_nm", c.l_z_nm);
        if (!c.materials.empty()) str("materials", c.materials);
    }
    if (c.command == Command::Plot) {
        str("input", c.input);
        str("fit_target", c.fit_target);
    }
    if (!c.output.empty()) str("output", c.output);
    if (c.command == Command::Evolve || c.command == Command::Sweep) {
        if (!c.json.empty()) str("json", c.json);
        if (!c.svg.empty()) str("svg", c.svg);
    }
    return o.str();
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    switch (c.command) {
        case Command::Evolve: return cmd_evolve(c, out);
        case Command::Tau: return cmd_tau(c, out, err);
        case Command::Sweep: return cmd_sweep(c, out, err);
        case Command::OracleCheck: return cmd_oracle_check(c, out);
        case Command::Couplings: return cmd_couplings(c, out);
        case Command::Plot: return cmd_plot(c, out);
    }
    return exit_code::usage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        std::string help;
        config = parse_command_line(args, &help);
        if (!help.empty()) {
            out << help;
            return exit_code::ok;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\nrun 'hyperent --help' for usage\n";
        return exit_code::usage;
    }
    try {
        return run(config, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::runtime;
    }
}

}  // namespace hyperent::cli
