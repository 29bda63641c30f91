#include "cohspec/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <omp.h>

#include "cohspec/errors.hpp"

namespace cohspec {

std::string_view to_string(ScanVariable v) {
    switch (v) {
        case ScanVariable::delta: return "delta";
        case ScanVariable::bfield: return "bfield";
        case ScanVariable::saturation: return "saturation";
    }
    return "unknown";
}

ScanVariable parse_scan_variable(std::string_view name) {
    if (name == "delta") return ScanVariable::delta;
    if (name == "bfield") return ScanVariable::bfield;
    if (name == "saturation") return ScanVariable::saturation;
    throw InputError("unknown scan variable '" + std::string(name) + "' (expected delta, bfield or saturation)");
}

void ScanConfig::validate() const {
    transition.validate();
    if (!(lo < hi)) throw InputError("scan range must satisfy lo < hi");
    if (points < 2 || points > 1000000) throw InputError("scan points must lie in [2, 1e6]");
    if (observables.empty()) throw InputError("at least one observable must be requested");
    if (log_spacing && !(lo > 0.0)) throw InputError("log-spaced scans need a positive range");
    if (variable == ScanVariable::saturation && lo < 0.0) throw InputError("saturation parameter must be >= 0");
    if (!(pump.rabi >= 0.0) || !(probe.rabi >= 0.0)) throw InputError("Rabi frequencies must be >= 0");
    if (pump.polarization.norm_squared() == 0.0) throw InputError("pump polarization is the zero vector");
    if (probe.polarization.norm_squared() == 0.0) throw InputError("probe polarization is the zero vector");
    if (dispersion_axis && dispersion_axis->norm_squared() == 0.0) {
        throw InputError("dispersion axis is the zero vector");
    }
}

std::vector<double> ScanConfig::grid() const {
    std::vector<double> g(static_cast<std::size_t>(points));
    const double n = static_cast<double>(points - 1);
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / n;
        g[static_cast<std::size_t>(i)] =
            log_spacing ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> SpectrumTable::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InputError("table has no column '" + name + "'");
    const auto c = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& row : values) out.push_back(row[c]);
    return out;
}

// ---------------------------------------------------------------------------

struct ScanEvaluator::Prepared {
    OperatorSet ops;
    DensityState state;
    std::optional<ProbeSolver> coherent;
    std::optional<ProbeSolver> incoherent;
    std::optional<LinearReference> linear_ref;
    std::optional<ProbeSolver> linear;
};

namespace {

bool wants(const ScanConfig& cfg, ObservableKind k) {
    return std::find(cfg.observables.begin(), cfg.observables.end(), k) != cfg.observables.end();
}

bool wants_coherent(const ScanConfig& cfg) {
    for (auto k : cfg.observables) {
        if (k != ObservableKind::linear_absorption && k != ObservableKind::incoherent_absorption) return true;
    }
    return false;
}

}  // namespace

std::shared_ptr<const ScanEvaluator::Prepared> ScanEvaluator::prepare(const ScanConfig& cfg, double scan_value) {
    FieldSpec pump = cfg.pump;
    double bfield = cfg.bfield;
    if (cfg.variable == ScanVariable::bfield) bfield = scan_value;
    if (cfg.variable == ScanVariable::saturation) pump.rabi = std::sqrt(0.5 * scan_value);

    const auto strategy =
        cfg.variable == ScanVariable::delta ? ProbeSolver::Strategy::shifted : ProbeSolver::Strategy::direct;
    auto p = std::make_shared<Prepared>();
    p->ops = make_operator_set(cfg.transition, pump, cfg.probe, bfield);
    const bool need_state = wants_coherent(cfg) || wants(cfg, ObservableKind::incoherent_absorption);
    if (need_state) {
        p->state = solve_steady_state(p->ops, cfg.transition);
        if (wants_coherent(cfg)) p->coherent.emplace(p->ops, cfg.transition, p->state, PumpCoupling::include, strategy);
        if (wants(cfg, ObservableKind::incoherent_absorption)) {
            p->incoherent.emplace(p->ops, cfg.transition, p->state, PumpCoupling::exclude, strategy);
        }
    }
    if (wants(cfg, ObservableKind::linear_absorption)) {
        p->linear_ref.emplace(linear_reference(p->ops, cfg.transition, cfg.probe));
        p->linear.emplace(p->linear_ref->ops, cfg.transition, p->linear_ref->state, PumpCoupling::include,
                          strategy);
    }
    return p;
}

ScanEvaluator::ScanEvaluator(const ScanConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    if (cfg_.variable == ScanVariable::delta) shared_ = prepare(cfg_, 0.0);
}

std::vector<double> ScanEvaluator::evaluate_with(const Prepared& p, double delta, double& residual) const {
    residual = p.state.residual;
    std::optional<ProbeResponse> coherent;
    if (p.coherent) {
        coherent = p.coherent->solve(delta);
        residual = std::max(residual, coherent->residual);
    }
    const SphericalVector axis = cfg_.dispersion_axis.value_or(cfg_.probe.polarization);

    std::vector<double> out;
    out.reserve(cfg_.observables.size());
    for (auto kind : cfg_.observables) {
        switch (kind) {
            case ObservableKind::absorption:
                out.push_back(absorption(*coherent, p.ops, cfg_.probe, cfg_.projection));
                break;
            case ObservableKind::dispersion:
                out.push_back(dispersion(*coherent, p.ops, cfg_.probe, axis));
                break;
            case ObservableKind::fwm_power:
                out.push_back(fwm_power(*coherent, p.ops));
                break;
            case ObservableKind::fluorescence_mod:
                out.push_back(fluorescence_modulation(*coherent, cfg_.transition));
                break;
            case ObservableKind::mag_dipole_modulus:
                out.push_back(magnetic_dipole(*coherent, p.ops, cfg_.transition));
                break;
            case ObservableKind::linear_absorption: {
                const ProbeResponse lin = p.linear->solve(delta);
                residual = std::max(residual, lin.residual);
                out.push_back(absorption(lin, p.linear_ref->ops, cfg_.probe, cfg_.projection));
                break;
            }
            case ObservableKind::incoherent_absorption: {
                const ProbeResponse inc = p.incoherent->solve(delta);
                residual = std::max(residual, inc.residual);
                out.push_back(absorption(inc, p.ops, cfg_.probe, cfg_.projection));
                break;
            }
        }
    }
    return out;
}

std::vector<double> ScanEvaluator::evaluate(double scan_value, double& residual) const {
    if (shared_) return evaluate_with(*shared_, scan_value, residual);
    const auto p = prepare(cfg_, scan_value);
    return evaluate_with(*p, cfg_.delta, residual);
}

namespace {

SpectrumTable make_table(const ScanConfig& cfg, const std::vector<double>& grid) {
    SpectrumTable t;
    t.scan_variable = std::string(to_string(cfg.variable));
    for (auto k : cfg.observables) t.columns.emplace_back(to_string(k));
    t.scan = grid;
    t.values.resize(grid.size());
    t.config = config_to_json(cfg);
    return t;
}

std::string point_context(const ScanConfig& cfg, std::size_t i, double value, const std::string& what) {
    std::ostringstream os;
    os << std::setprecision(17) << "scan point " << i << " (" << to_string(cfg.variable) << " = " << value
       << "): " << what;
    return os.str();
}

}  // namespace

SpectrumTable run_scan_serial(const ScanConfig& cfg) {
    const ScanEvaluator eval(cfg);
    SpectrumTable table = make_table(cfg, cfg.grid());
    for (std::size_t i = 0; i < table.scan.size(); ++i) {
        double residual = 0.0;
        try {
            table.values[i] = eval.evaluate(table.scan[i], residual);
        } catch (const SolverError& e) {
            throw SolverError(point_context(cfg, i, table.scan[i], e.what()));
        }
        table.max_residual = std::max(table.max_residual, residual);
    }
    return table;
}

SpectrumTable run_scan(const ScanConfig& cfg) {
    const ScanEvaluator eval(cfg);
    SpectrumTable table = make_table(cfg, cfg.grid());
    const auto n = static_cast<std::int64_t>(table.scan.size());
    std::vector<double> residuals(table.scan.size(), 0.0);
    std::vector<std::string> errors(table.scan.size());

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            table.values[k] = eval.evaluate(table.scan[k], residuals[k]);
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }

    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!errors[k].empty()) throw SolverError(point_context(cfg, k, table.scan[k], errors[k]));
    }
    for (double r : residuals) table.max_residual = std::max(table.max_residual, r);
    return table;
}

// CSV -----------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const SpectrumTable& table, std::ostream& os) {
    os << "# cohspec " << table.version << "\n";
    os << "# config: " << table.config.dump() << "\n";
    os << "# max_residual: " << format_double(table.max_residual) << "\n";
    os << table.scan_variable;
    for (const auto& c : table.columns) os << "," << c;
    os << "\n";
    for (std::size_t i = 0; i < table.scan.size(); ++i) {
        os << format_double(table.scan[i]);
        for (double v : table.values[i]) os << "," << format_double(v);
        os << "\n";
    }
}

void write_csv(const SpectrumTable& table, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot open output file '" + path + "'");
    write_csv(table, os);
}

SpectrumTable read_csv(std::istream& is) {
    SpectrumTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            const auto colon = body.find(':');
            if (colon != std::string::npos) {
                const std::string key = body.substr(1, colon - 1);
                const std::string value = body.substr(colon + 1);
                if (key == "config") t.config = nlohmann::json::parse(value, nullptr, false);
                if (key == "max_residual") t.max_residual = std::stod(value);
            } else if (body.rfind(" cohspec ", 0) == 0) {
                t.version = body.substr(9);
            }
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            if (cells.empty()) throw InputError("CSV header is empty");
            t.scan_variable = cells[0];
            t.columns.assign(cells.begin() + 1, cells.end());
            have_header = true;
            continue;
        }
        if (cells.size() != t.columns.size() + 1) throw InputError("CSV row has the wrong number of columns");
        t.scan.push_back(std::stod(cells[0]));
        std::vector<double> row;
        for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(std::stod(cells[c]));
        t.values.push_back(std::move(row));
    }
    if (!have_header) throw InputError("CSV input has no header line");
    return t;
}

SpectrumTable read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot open table '" + path + "'");
    return read_csv(is);
}

// Peak analysis -------------------------------------------------------------

PeakReport find_peak_and_width(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    if (x.size() != y.size()) throw InputError("peak analysis: x and y differ in length");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] >= lo && x[i] <= hi) idx.push_back(i);
    }
    if (idx.size() < 5) throw InputError("peak analysis window holds fewer than 5 points");

    const std::size_t edge = std::max<std::size_t>(1, idx.size() / 20);
    std::vector<double> edges;
    for (std::size_t k = 0; k < edge; ++k) {
        edges.push_back(y[idx[k]]);
        edges.push_back(y[idx[idx.size() - 1 - k]]);
    }
    std::sort(edges.begin(), edges.end());
    const double baseline = (edges.size() % 2 == 1)
                                ? edges[edges.size() / 2]
                                : 0.5 * (edges[edges.size() / 2 - 1] + edges[edges.size() / 2]);

    std::size_t best = 0;
    double best_dev = -1.0;
    double scale = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        const double dev = std::abs(y[idx[k]] - baseline);
        scale = std::max(scale, std::abs(y[idx[k]]));
        if (dev > best_dev) {
            best_dev = dev;
            best = k;
        }
    }
    if (!(best_dev > 1e-8 * scale) || best_dev == 0.0) throw InputError("no extremum found in the analysis window");
    if (best == 0 || best + 1 == idx.size()) throw InputError("extremum lies on the edge of the analysis window");

    PeakReport r;
    r.baseline = baseline;

    // Parabola through the three samples around the extremum.
    const double x0 = x[idx[best - 1]], x1 = x[idx[best]], x2 = x[idx[best + 1]];
    const double y0 = y[idx[best - 1]], y1 = y[idx[best]], y2 = y[idx[best + 1]];
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a != 0.0) {
        const double b = d01 - a * (x0 + x1);
        r.center = std::clamp(-b / (2.0 * a), x0, x2);
        r.extremum_value = y0 + d01 * (r.center - x0) + a * (r.center - x0) * (r.center - x1);
    } else {
        r.center = x1;
        r.extremum_value = y1;
    }
    r.height = r.extremum_value - baseline;

    const double half = 0.5 * std::abs(r.height);
    auto deviation = [&](std::size_t k) { return std::abs(y[idx[k]] - baseline); };
    auto crossing = [&](std::size_t inner, std::size_t outer) {
        const double di = deviation(inner) - half;
        const double d_o = deviation(outer) - half;
        const double f = di / (di - d_o);
        return x[idx[inner]] + f * (x[idx[outer]] - x[idx[inner]]);
    };

    std::optional<double> left, right;
    for (std::size_t k = best; k > 0; --k) {
        if (deviation(k - 1) < half) {
            left = crossing(k, k - 1);
            break;
        }
    }
    for (std::size_t k = best; k + 1 < idx.size(); ++k) {
        if (deviation(k + 1) < half) {
            right = crossing(k, k + 1);
            break;
        }
    }
    if (!left || !right) throw InputError("half-height crossings lie outside the analysis window");
    r.fwhm = *right - *left;
    return r;
}

PeakReport find_peak_and_width(const SpectrumTable& table, const std::string& column, double lo, double hi) {
    return find_peak_and_width(table.scan, table.column(column), lo, hi);
}

}  // namespace cohspec
