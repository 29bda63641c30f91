// cohspec command-line front end: scan, analyze, validate.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>

#include "cohspec/errors.hpp"
#include "cohspec/oracles.hpp"
#include "cohspec/probe_response.hpp"
#include "cohspec/scan.hpp"

using namespace cohspec;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

struct ScanOptions {
    std::string config_path;
    std::optional<double> fg, fe, branching, gamma, beta_g, beta_e;
    std::optional<std::string> normalization;
    std::optional<double> pump_rabi, pump_detuning, probe_rabi, bfield, delta;
    std::optional<std::string> pump_pol, probe_pol, dispersion_axis, scan, projection;
    std::vector<double> range;
    std::optional<int> points;
    bool log = false;
    std::vector<std::string> observables;
    std::string output;
    std::string format = "csv";
};

struct AnalyzeOptions {
    std::string table_path;
    std::string column;
    std::vector<double> window;
    bool json_out = false;
};

struct ValidateOptions {
    bool quick = false;
    double tolerance = 1e-4;
};

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open config '" + path + "'");
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw InputError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

ScanConfig build_config(const ScanOptions& o) {
    json raw = o.config_path.empty() ? json::object() : load_json(o.config_path);
    ScanConfig cfg = config_from_json(raw);
    TransitionSpec& t = cfg.transition;
    if (o.fg) t.fg = HalfInt::from_double(*o.fg);
    if (o.fe) t.fe = HalfInt::from_double(*o.fe);
    if (o.branching) t.branching = *o.branching;
    if (o.gamma) t.gamma = *o.gamma;
    if (o.beta_g) {
        t.beta_g = *o.beta_g;
        const bool explicit_beta_e = raw.contains("transition") && raw["transition"].contains("beta_e");
        if (!o.beta_e && !explicit_beta_e) t.beta_e = *o.beta_g;
    }
    if (o.beta_e) t.beta_e = *o.beta_e;
    if (o.normalization) t.normalization = parse_rabi_normalization(*o.normalization);
    if (o.pump_rabi) cfg.pump.rabi = *o.pump_rabi;
    if (o.pump_detuning) cfg.pump.detuning = *o.pump_detuning;
    if (o.pump_pol) cfg.pump.polarization = parse_polarization(*o.pump_pol);
    if (o.probe_rabi) cfg.probe.rabi = *o.probe_rabi;
    if (o.probe_pol) cfg.probe.polarization = parse_polarization(*o.probe_pol);
    if (o.dispersion_axis) cfg.dispersion_axis = parse_polarization(*o.dispersion_axis);
    if (o.bfield) cfg.bfield = *o.bfield;
    if (o.delta) cfg.delta = *o.delta;
    if (o.scan) cfg.variable = parse_scan_variable(*o.scan);
    if (!o.range.empty()) {
        cfg.lo = o.range[0];
        cfg.hi = o.range[1];
    }
    if (o.points) cfg.points = *o.points;
    if (o.log) cfg.log_spacing = true;
    if (!o.observables.empty()) {
        cfg.observables.clear();
        for (const auto& name : o.observables) cfg.observables.push_back(parse_observable(name));
    }
    if (o.projection) {
        if (*o.projection == "conjugate") cfg.projection = Projection::conjugate;
        else if (*o.projection == "literal") cfg.projection = Projection::literal;
        else throw InputError("projection must be 'conjugate' or 'literal'");
    }
    if (!o.output.empty()) cfg.output_path = o.output;
    cfg.validate();
    return cfg;
}

json table_to_json(const SpectrumTable& t) {
    json rows = json::array();
    for (std::size_t i = 0; i < t.scan.size(); ++i) {
        json row = {{t.scan_variable, t.scan[i]}};
        for (std::size_t c = 0; c < t.columns.size(); ++c) row[t.columns[c]] = t.values[i][c];
        rows.push_back(row);
    }
    return {{"version", t.version}, {"config", t.config}, {"max_residual", t.max_residual}, {"rows", rows}};
}

int run_scan_command(const ScanOptions& o) {
    if (o.format != "csv" && o.format != "json") throw InputError("format must be csv or json");
    const ScanConfig cfg = build_config(o);
    const auto start = std::chrono::steady_clock::now();
    const SpectrumTable table = run_scan(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ofstream file;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) throw InputError("cannot open output file '" + cfg.output_path + "'");
    }
    std::ostream& os = cfg.output_path.empty() ? std::cout : file;
    if (o.format == "json") os << table_to_json(table).dump(2) << "\n";
    else write_csv(table, os);

    std::cerr << table.scan.size() << " points, max residual " << std::scientific << std::setprecision(2)
              << table.max_residual << ", " << std::fixed << seconds << " s\n";
    return kExitOk;
}

int run_analyze_command(const AnalyzeOptions& o) {
    const SpectrumTable table = read_csv_file(o.table_path);
    if (table.scan.empty()) throw InputError("table has no rows");
    const std::string column = o.column.empty() ? table.columns.at(0) : o.column;
    const double lo = o.window.empty() ? table.scan.front() : o.window[0];
    const double hi = o.window.empty() ? table.scan.back() : o.window[1];
    const PeakReport r = find_peak_and_width(table, column, lo, hi);
    if (o.json_out) {
        std::cout << json{{"column", column},     {"center", r.center},     {"height", r.height},
                          {"fwhm", r.fwhm},       {"baseline", r.baseline}, {"extremum", r.extremum_value}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << std::setprecision(10) << "column    " << column << "\n"
                  << "center    " << r.center << "\n"
                  << "height    " << r.height << (r.height > 0 ? "  (peak)" : "  (dip)") << "\n"
                  << "fwhm      " << r.fwhm << "\n"
                  << "baseline  " << r.baseline << "\n"
                  << "extremum  " << r.extremum_value << "\n";
    }
    return kExitOk;
}

SphericalVector random_polarization(std::mt19937_64& rng) {
    std::normal_distribution<double> n01;
    std::array<cplx, 3> c;
    for (auto& z : c) z = {n01(rng), n01(rng)};
    return cartesian_to_spherical(c[0], c[1], c[2]).normalized();
}

int run_validate_command(const ValidateOptions& o) {
    struct Pair {
        int fg, fe;
    };
    const Pair pairs[] = {{0, 2}, {2, 4}, {2, 2}, {4, 2}};
    const int polarization_pairs = o.quick ? 1 : 3;
    const std::vector<double> deltas = o.quick ? std::vector<double>{-0.35, 0.12} : std::vector<double>{-0.6, -0.15, 0.04, 0.2, 0.9};
    const double t_end = o.quick ? 300.0 : 500.0;

    std::mt19937_64 rng(7);
    double worst = 0.0;
    int failures = 0;
    std::cout << "time-domain oracle vs frequency-domain solver (relative sideband error, tol "
              << std::scientific << std::setprecision(1) << o.tolerance << ")\n";
    for (const auto& p : pairs) {
        TransitionSpec t;
        t.fg = HalfInt{p.fg};
        t.fe = HalfInt{p.fe};
        t.gamma = 0.05;
        for (int k = 0; k < polarization_pairs; ++k) {
            const FieldSpec pump{0.4, random_polarization(rng), 0.0};
            const FieldSpec probe{1e-3, random_polarization(rng), 0.0};
            const OperatorSet ops = make_operator_set(t, pump, probe, 0.01);
            const DensityState s0 = solve_steady_state(ops, t);
            const ProbeSolver solver(ops, t, s0);
            for (double d : deltas) {
                const CMatrix sigma = solver.solve(d).sigma;
                const auto td = oracles::integrate_master_equation(ops, t, probe, d, t_end, 0.01);
                const double err = (td.fourier_plus - sigma).norm() / sigma.norm();
                const bool ok = err <= o.tolerance;
                worst = std::max(worst, err);
                if (!ok) ++failures;
                std::cout << "  " << to_string(t.fg) << " -> " << to_string(t.fe) << "  pol " << k << "  delta "
                          << std::showpos << std::fixed << std::setprecision(3) << d << std::noshowpos
                          << "  error " << std::scientific << std::setprecision(2) << err << (ok ? "  ok" : "  FAIL")
                          << "\n";
            }
        }
    }

    std::cout << "closed-form two-level probe absorption\n";
    double worst_mollow = 0.0;
    for (double rabi : {0.3, 1.0, 3.0}) {
        TransitionSpec t;
        t.fg = HalfInt{0};
        t.fe = HalfInt{2};
        t.gamma = 0.01;
        t.normalization = RabiNormalization::unit_q;
        const SphericalVector sp{0, 0, 1};
        const FieldSpec probe{1e-3, sp, 0.0};
        const OperatorSet ops = make_operator_set(t, {rabi, sp, 0.0}, probe, 0.0);
        const ProbeSolver solver(ops, t, solve_steady_state(ops, t));
        for (double d : {-2.0, -0.5, 0.0, 0.3, 1.5}) {
            const double ref = oracles::mollow_probe_absorption(rabi, 0.0, d, t.gamma);
            const double got = absorption(solver.solve(d), ops, probe);
            worst_mollow = std::max(worst_mollow, std::abs(got - ref) / std::max(std::abs(ref), 1e-12));
        }
    }
    const bool mollow_ok = worst_mollow <= o.tolerance;
    if (!mollow_ok) ++failures;
    std::cout << "  max relative error " << std::scientific << std::setprecision(2) << worst_mollow
              << (mollow_ok ? "  ok" : "  FAIL") << "\n";
    std::cout << (failures == 0 ? "PASS" : "FAIL") << "  worst oracle error " << worst << "\n";
    return failures == 0 ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent pump-probe spectra of degenerate two-level atoms"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    ScanOptions so;
    auto* scan = app.add_subcommand("scan", "Compute a spectrum and write it as CSV or JSON");
    scan->add_option("config", so.config_path, "JSON configuration file (optional)");
    scan->add_option("--fg", so.fg, "Ground angular momentum F_g");
    scan->add_option("--fe", so.fe, "Excited angular momentum F_e");
    scan->add_option("--branching", so.branching, "Fraction b of decays returning to the ground level");
    scan->add_option("--gamma", so.gamma, "Transit relaxation rate gamma/Gamma");
    scan->add_option("--beta-g", so.beta_g, "Ground Zeeman factor");
    scan->add_option("--beta-e", so.beta_e, "Excited Zeeman factor (defaults to beta_g)");
    scan->add_option("--rabi-normalization", so.normalization, "reduced_element or unit_q");
    scan->add_option("--pump-rabi", so.pump_rabi, "Pump Rabi frequency Omega_1/Gamma");
    scan->add_option("--pump-pol", so.pump_pol, "Pump polarization: preset or x,y,z components");
    scan->add_option("--pump-detuning", so.pump_detuning, "Pump detuning");
    scan->add_option("--probe-rabi", so.probe_rabi, "Probe Rabi frequency Omega_2/Gamma");
    scan->add_option("--probe-pol", so.probe_pol, "Probe polarization: preset or x,y,z components");
    scan->add_option("--dispersion-axis", so.dispersion_axis, "Projection axis for the dispersion column");
    scan->add_option("--bfield", so.bfield, "Magnetic field (Zeeman step beta_g B in units of Gamma)");
    scan->add_option("--delta", so.delta, "Fixed probe detuning for bfield and saturation scans");
    scan->add_option("--scan", so.scan, "Scan variable: delta, bfield or saturation");
    scan->add_option("--range", so.range, "Scan range lo hi")->expected(2);
    scan->add_option("--points", so.points, "Number of grid points");
    scan->add_flag("--log", so.log, "Log-spaced grid");
    scan->add_option("--observables", so.observables, "Observable columns")->delimiter(',');
    scan->add_option("--projection", so.projection, "conjugate or literal probe projection");
    scan->add_option("-o,--output", so.output, "Output file (default stdout)");
    scan->add_option("--format", so.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Locate the extremum of a spectrum column and its FWHM");
    analyze->add_option("table", ao.table_path, "CSV table written by scan")->required();
    analyze->add_option("--column", ao.column, "Column to analyze (default: first observable)");
    analyze->add_option("--window", ao.window, "Analysis window lo hi")->expected(2);
    analyze->add_flag("--json", ao.json_out, "Print the report as JSON");

    ValidateOptions vo;
    auto* validate = app.add_subcommand("validate", "Cross-check the solver against the reference oracles");
    validate->add_flag("--quick", vo.quick, "Reduced set of transitions, polarizations and detunings");
    validate->add_option("--tolerance", vo.tolerance, "Relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*scan) return run_scan_command(so);
        if (*analyze) return run_analyze_command(ao);
        if (*validate) return run_validate_command(vo);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    }
    return kExitInput;
}
