#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cohspec/errors.hpp"
#include "cohspec/scan.hpp"
#include "support.hpp"

using namespace cohspec;
using nlohmann::json;

namespace {

ScanConfig small_config() {
    ScanConfig cfg;
    cfg.transition.fg = HalfInt{2};
    cfg.transition.fe = HalfInt{4};
    cfg.lo = -0.04;
    cfg.hi = 0.04;
    cfg.points = 41;
    cfg.bfield = 0.01;
    cfg.observables = {ObservableKind::absorption, ObservableKind::dispersion, ObservableKind::fwm_power,
                       ObservableKind::fluorescence_mod, ObservableKind::mag_dipole_modulus,
                       ObservableKind::linear_absorption, ObservableKind::incoherent_absorption};
    return cfg;
}

bool identical(const SpectrumTable& a, const SpectrumTable& b) {
    if (a.scan != b.scan || a.columns != b.columns || a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.values[i] != b.values[i]) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("scan_engine") {

TEST_CASE("config parsing") {
    const json j = json::parse(R"({
        "transition": {"fg": 1, "fe": 2, "branching": 0.5, "gamma": 0.002, "beta_g": 0.7,
                       "rabi_normalization": "unit_q"},
        "pump": {"rabi": 0.4, "polarization": "lin_x"},
        "probe": {"rabi": 0.001, "polarization": ["0", "1i", 0]},
        "bfield": 0.01,
        "scan": {"variable": "bfield", "range": [-0.03, 0.03], "points": 11},
        "observables": ["absorption", "fwm_power"]
    })");
    const ScanConfig cfg = config_from_json(j);
    CHECK(cfg.transition.fg == HalfInt{2});
    CHECK(cfg.transition.fe == HalfInt{4});
    CHECK(cfg.transition.branching == 0.5);
    CHECK(cfg.transition.beta_e == 0.7);
    CHECK(cfg.transition.normalization == RabiNormalization::unit_q);
    CHECK(cfg.variable == ScanVariable::bfield);
    CHECK(cfg.points == 11);
    CHECK(cfg.observables.size() == 2);
    CHECK(std::abs(cfg.probe.polarization.q_zero) == 0.0);
    CHECK(cfg.probe.polarization.norm_squared() == doctest::Approx(1.0));
    CHECK_NOTHROW(cfg.validate());

    const ScanConfig again = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(again) == config_to_json(cfg));

    CHECK(config_from_json(json::parse(R"({"transition": {"fg": 1.5, "fe": 2.5}})")).transition.fg == HalfInt{3});
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"transition": {"fg": 1, "fee": 2}})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"pump": {"rabi": "big"}})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"scan": {"range": [1]}})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"observables": ["absorbance"]})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"transition": {"fg": 0.3}})")), InputError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"projection": "sideways"})")), InputError);

    ScanConfig cfg;
    cfg.lo = 1.0;
    cfg.hi = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = ScanConfig{};
    cfg.observables.clear();
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = ScanConfig{};
    cfg.points = 1;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = ScanConfig{};
    cfg.log_spacing = true;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = ScanConfig{};
    cfg.transition.fe = HalfInt{8};
    CHECK_THROWS_AS(cfg.validate(), InputError);
}

TEST_CASE("polarization parsing") {
    const SphericalVector x = parse_polarization("lin_x");
    CHECK(std::abs(x.q_minus - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(x.q_plus + 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(parse_polarization("sigma+").q_plus - 1.0) == 0.0);
    CHECK(std::abs(parse_polarization("sigma-").q_minus - 1.0) == 0.0);
    CHECK(std::abs(parse_polarization("pi").q_zero - 1.0) < 1e-15);

    // (x + i y)/sqrt2 = -e_{+1}
    const SphericalVector circ = parse_polarization("1,1i,0");
    CHECK(std::abs(circ.q_plus + 1.0) < 1e-15);
    CHECK(std::abs(circ.q_minus) < 1e-15);

    const SphericalVector ell = parse_polarization("0.6, 0.8i, 0");
    CHECK(ell.norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(parse_polarization("0,0,0"), InputError);
    CHECK_THROWS_AS(parse_polarization("diagonal"), InputError);
    CHECK_THROWS_AS(parse_polarization("1,2"), InputError);
}

TEST_CASE("grids") {
    ScanConfig cfg;
    cfg.lo = -1.0;
    cfg.hi = 1.0;
    cfg.points = 5;
    const auto g = cfg.grid();
    CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});

    cfg.lo = 1e-3;
    cfg.hi = 10.0;
    cfg.log_spacing = true;
    const auto lg = cfg.grid();
    CHECK(lg.front() == 1e-3);
    CHECK(lg.back() == 10.0);
    CHECK(lg[1] == doctest::Approx(1e-2));
    CHECK(lg[2] == doctest::Approx(1e-1));
}

TEST_CASE("CSV round trip") {
    const SpectrumTable t = run_scan(small_config());
    std::stringstream ss;
    write_csv(t, ss);
    const SpectrumTable back = read_csv(ss);
    CHECK(identical(t, back));
    CHECK(back.scan_variable == "delta");
    CHECK(back.max_residual == t.max_residual);
    CHECK(back.version == kVersion);
    CHECK(back.config == t.config);

    std::stringstream bad("delta,absorption\n0.1,2,3\n");
    CHECK_THROWS_AS(read_csv(bad), InputError);
    std::stringstream empty("# nothing\n");
    CHECK_THROWS_AS(read_csv(empty), InputError);
}

TEST_CASE("peak analysis on a synthetic Lorentzian") {
    const double hw = 1e-3;
    std::vector<double> x, y;
    for (int k = -500; k <= 500; ++k) {
        const double d = 2e-4 + 0.1 * hw * k;
        x.push_back(d);
        y.push_back(0.3 + 2.0 * hw * hw / ((d - 2e-4) * (d - 2e-4) + hw * hw));
    }
    const PeakReport r = find_peak_and_width(x, y, x.front(), x.back());
    CHECK(r.fwhm == doctest::Approx(2 * hw).epsilon(0.01));
    CHECK(std::abs(r.center - 2e-4) < 0.1 * hw);
    CHECK(r.height > 0.0);

    for (auto& v : y) v = 1.0 - v;
    const PeakReport dip = find_peak_and_width(x, y, x.front(), x.back());
    CHECK(dip.height < 0.0);
    CHECK(dip.fwhm == doctest::Approx(2 * hw).epsilon(0.01));

    const std::vector<double> flat(x.size(), 1.0);
    CHECK_THROWS_AS(find_peak_and_width(x, flat, x.front(), x.back()), InputError);
    CHECK_THROWS_AS(find_peak_and_width(x, y, 0.0, 1e-4), InputError);
}

TEST_CASE("parallel scans are bit-identical to the serial path") {
    ScanConfig cfg = small_config();
    CHECK(identical(run_scan(cfg), run_scan_serial(cfg)));
    CHECK(identical(run_scan(cfg), run_scan(cfg)));

    cfg.variable = ScanVariable::bfield;
    cfg.points = 9;
    CHECK(identical(run_scan(cfg), run_scan_serial(cfg)));

    cfg.variable = ScanVariable::saturation;
    cfg.lo = 1e-3;
    cfg.hi = 1.0;
    cfg.log_spacing = true;
    cfg.points = 7;
    CHECK(identical(run_scan(cfg), run_scan_serial(cfg)));
}

TEST_CASE("steady-state reuse matches recomputation") {
    const ScanConfig cfg = small_config();
    const SpectrumTable table = run_scan(cfg);
    for (std::size_t i : {0u, 7u, 20u, 33u, 40u}) {
        ScanConfig single = cfg;
        single.variable = ScanVariable::bfield;
        single.delta = table.scan[i];
        single.lo = cfg.bfield;
        single.hi = cfg.bfield + 1.0;
        single.points = 2;
        const SpectrumTable naive = run_scan_serial(single);
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const double a = table.values[i][c];
            const double b = naive.values[0][c];
            CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
        }
    }
}

TEST_CASE("solver failures name the scan point") {
    ScanConfig cfg;
    cfg.transition.gamma = 1e-8;
    cfg.pump.rabi = 1e7;
    cfg.variable = ScanVariable::bfield;
    cfg.lo = 0.0;
    cfg.hi = 0.01;
    cfg.points = 3;
    try {
        run_scan(cfg);
        FAIL("expected a solver error");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("scan point 0 (bfield = 0)") != std::string::npos);
    }
}

}
