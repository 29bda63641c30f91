#pragma once

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohspec/observables.hpp"

namespace cohspec {

inline constexpr const char* kVersion = "0.1.0";

enum class ScanVariable { delta, bfield, saturation };

std::string_view to_string(ScanVariable v);
ScanVariable parse_scan_variable(std::string_view name);

/// One sweep. For delta scans the pump-dressed steady state is computed once;
/// bfield and saturation scans rebuild everything per point and use the fixed
/// `delta`. Saturation values are S = 2 (Omega_1/Gamma)^2.
struct ScanConfig {
    TransitionSpec transition;
    FieldSpec pump{0.4, cartesian_to_spherical(1.0, 0.0, 0.0), 0.0};
    FieldSpec probe{1e-3, cartesian_to_spherical(0.0, 1.0, 0.0), 0.0};
    double bfield = 0.0;
    double delta = 0.0;
    ScanVariable variable = ScanVariable::delta;
    double lo = -0.05;
    double hi = 0.05;
    int points = 201;
    bool log_spacing = false;
    std::vector<ObservableKind> observables{ObservableKind::absorption};
    std::optional<SphericalVector> dispersion_axis;  ///< defaults to the probe polarization
    Projection projection = Projection::conjugate;
    std::string output_path;

    void validate() const;  // throws InputError
    std::vector<double> grid() const;
};

struct SpectrumTable {
    std::string scan_variable;
    std::vector<std::string> columns;        ///< observable names
    std::vector<double> scan;                ///< scan coordinate per row
    std::vector<std::vector<double>> values; ///< values[row][column]
    double max_residual = 0.0;
    std::string version = kVersion;
    nlohmann::json config;                   ///< echo of the configuration

    std::vector<double> column(const std::string& name) const;
};

/// Evaluate the requested observables at one scan point; a parameter set that
/// is shared by all points of a delta scan is assembled once.
class ScanEvaluator {
public:
    explicit ScanEvaluator(const ScanConfig& cfg);

    /// Observables at one scan coordinate; `residual` receives the largest solver residual used.
    std::vector<double> evaluate(double scan_value, double& residual) const;

private:
    struct Prepared;
    static std::shared_ptr<const Prepared> prepare(const ScanConfig& cfg, double scan_value);
    std::vector<double> evaluate_with(const Prepared& p, double delta, double& residual) const;

    ScanConfig cfg_;
    std::shared_ptr<const Prepared> shared_;  // delta scans only
};

/// Points are evaluated concurrently with OpenMP; rows come back in grid order
/// and are bit-identical to run_scan_serial.
SpectrumTable run_scan(const ScanConfig& cfg);

/// Single-threaded reference path.
SpectrumTable run_scan_serial(const ScanConfig& cfg);

void write_csv(const SpectrumTable& table, std::ostream& os);
void write_csv(const SpectrumTable& table, const std::string& path);
SpectrumTable read_csv(std::istream& is);
SpectrumTable read_csv_file(const std::string& path);

struct PeakReport {
    double center = 0.0;
    double height = 0.0;    ///< signed, relative to baseline: > 0 peak, < 0 dip
    double fwhm = 0.0;
    double baseline = 0.0;
    double extremum_value = 0.0;
};

/// Locate the single extremum of `column` inside [lo, hi] relative to the local
/// baseline (median of the window-edge samples). The center comes from a parabola
/// through the three points around the extremum; the FWHM from linear
/// interpolation of the half-height crossings. Throws InputError when no
/// extremum rises above 1e-8 relative noise or a crossing lies outside the window.
PeakReport find_peak_and_width(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi);
PeakReport find_peak_and_width(const SpectrumTable& table, const std::string& column, double lo, double hi);

// Configuration (JSON) -------------------------------------------------------

/// Presets lin_x, lin_y, pi, sigma+, sigma-, or three comma-separated complex
/// Cartesian components such as "1,1i,0" or "0.6,0.8i,0".
SphericalVector parse_polarization(const std::string& text);
SphericalVector polarization_from_json(const nlohmann::json& j);
nlohmann::json polarization_to_json(const SphericalVector& v);

ScanConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScanConfig& cfg);

}  // namespace cohspec
