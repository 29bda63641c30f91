#include <cmath>
#include <set>
#include <sstream>

#include "cohspec/errors.hpp"
#include "cohspec/scan.hpp"

namespace cohspec {

using nlohmann::json;

namespace {

cplx parse_complex(std::string text) {
    std::erase_if(text, [](unsigned char c) { return std::isspace(c) != 0; });
    if (text.empty()) throw InputError("empty polarization component");
    auto to_double = [&](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw InputError("cannot parse polarization component '" + text + "'");
        }
        if (used != s.size()) throw InputError("cannot parse polarization component '" + text + "'");
        return v;
    };
    if (text.back() != 'i' && text.back() != 'j') return {to_double(text), 0.0};
    const std::string body = text.substr(0, text.size() - 1);
    // Split "a+b" / "a-b" at the last sign that is not an exponent sign or the leading sign.
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            return {to_double(body.substr(0, k)), to_double(body.substr(k))};
        }
    }
    return {0.0, to_double(body)};
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    if (j.is_string()) return parse_complex(j.get<std::string>());
    throw InputError("polarization component must be a number, [re, im] or a complex string");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key)) throw InputError("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("config field '") + key + "' has the wrong type");
    }
}

HalfInt half_int_from_json(const json& j, const char* key, HalfInt fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw InputError(std::string("config field '") + key + "' must be a number");
    return HalfInt::from_double(j.at(key).get<double>());
}

FieldSpec field_from_json(const json& j, FieldSpec base, const std::string& where) {
    check_keys(j, {"rabi", "polarization", "detuning"}, where);
    base.rabi = get_or(j, "rabi", base.rabi);
    base.detuning = get_or(j, "detuning", base.detuning);
    if (j.contains("polarization")) base.polarization = polarization_from_json(j.at("polarization"));
    return base;
}

json field_to_json(const FieldSpec& f) {
    return {{"rabi", f.rabi}, {"polarization", polarization_to_json(f.polarization)}, {"detuning", f.detuning}};
}

}  // namespace

SphericalVector parse_polarization(const std::string& text) {
    if (text == "lin_x" || text == "x") return cartesian_to_spherical(1.0, 0.0, 0.0);
    if (text == "lin_y" || text == "y") return cartesian_to_spherical(0.0, 1.0, 0.0);
    if (text == "pi" || text == "lin_z" || text == "z") return cartesian_to_spherical(0.0, 0.0, 1.0);
    if (text == "sigma+" || text == "sigma_plus") return {0.0, 0.0, 1.0};
    if (text == "sigma-" || text == "sigma_minus") return {1.0, 0.0, 0.0};

    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(part);
    if (parts.size() != 3) {
        throw InputError("polarization '" + text +
                         "' is neither a preset (lin_x, lin_y, pi, sigma+, sigma-) nor three x,y,z components");
    }
    const SphericalVector v = cartesian_to_spherical(parse_complex(parts[0]), parse_complex(parts[1]),
                                                     parse_complex(parts[2]));
    if (v.norm_squared() == 0.0) throw InputError("polarization '" + text + "' is the zero vector");
    return v.normalized();
}

SphericalVector polarization_from_json(const json& j) {
    if (j.is_string()) return parse_polarization(j.get<std::string>());
    if (j.is_array() && j.size() == 3) {
        const SphericalVector v =
            cartesian_to_spherical(complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2]));
        if (v.norm_squared() == 0.0) throw InputError("polarization is the zero vector");
        return v.normalized();
    }
    throw InputError("polarization must be a preset name or an array of three Cartesian components");
}

json polarization_to_json(const SphericalVector& v) {
    const auto c = spherical_to_cartesian(v);
    json out = json::array();
    for (const auto& z : c) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

ScanConfig config_from_json(const json& j) {
    check_keys(j,
               {"transition", "pump", "probe", "bfield", "delta", "scan", "observables", "dispersion_axis",
                "projection", "output"},
               "config");
    ScanConfig cfg;
    if (j.contains("transition")) {
        const json& t = j.at("transition");
        check_keys(t, {"fg", "fe", "branching", "gamma", "beta_g", "beta_e", "rabi_normalization"}, "transition");
        cfg.transition.fg = half_int_from_json(t, "fg", cfg.transition.fg);
        cfg.transition.fe = half_int_from_json(t, "fe", cfg.transition.fe);
        cfg.transition.branching = get_or(t, "branching", cfg.transition.branching);
        cfg.transition.gamma = get_or(t, "gamma", cfg.transition.gamma);
        cfg.transition.beta_g = get_or(t, "beta_g", cfg.transition.beta_g);
        // beta_e follows beta_g unless given explicitly.
        cfg.transition.beta_e = get_or(t, "beta_e", cfg.transition.beta_g);
        if (t.contains("rabi_normalization")) {
            cfg.transition.normalization = parse_rabi_normalization(get_or<std::string>(t, "rabi_normalization", ""));
        }
    }
    if (j.contains("pump")) cfg.pump = field_from_json(j.at("pump"), cfg.pump, "pump");
    if (j.contains("probe")) cfg.probe = field_from_json(j.at("probe"), cfg.probe, "probe");
    cfg.bfield = get_or(j, "bfield", cfg.bfield);
    cfg.delta = get_or(j, "delta", cfg.delta);
    if (j.contains("scan")) {
        const json& s = j.at("scan");
        check_keys(s, {"variable", "range", "points", "log"}, "scan");
        if (s.contains("variable")) cfg.variable = parse_scan_variable(get_or<std::string>(s, "variable", ""));
        if (s.contains("range")) {
            const json& r = s.at("range");
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
                throw InputError("scan range must be [lo, hi]");
            }
            cfg.lo = r[0].get<double>();
            cfg.hi = r[1].get<double>();
        }
        cfg.points = get_or(s, "points", cfg.points);
        cfg.log_spacing = get_or(s, "log", cfg.log_spacing);
    }
    if (j.contains("observables")) {
        const json& o = j.at("observables");
        if (!o.is_array()) throw InputError("observables must be a list");
        cfg.observables.clear();
        for (const auto& name : o) {
            if (!name.is_string()) throw InputError("observable names must be strings");
            cfg.observables.push_back(parse_observable(name.get<std::string>()));
        }
    }
    if (j.contains("dispersion_axis")) cfg.dispersion_axis = polarization_from_json(j.at("dispersion_axis"));
    if (j.contains("projection")) {
        const auto p = get_or<std::string>(j, "projection", "conjugate");
        if (p == "conjugate") cfg.projection = Projection::conjugate;
        else if (p == "literal") cfg.projection = Projection::literal;
        else throw InputError("projection must be 'conjugate' or 'literal'");
    }
    cfg.output_path = get_or<std::string>(j, "output", "");
    return cfg;
}

json config_to_json(const ScanConfig& cfg) {
    json j;
    j["transition"] = {{"fg", cfg.transition.fg.value()},           {"fe", cfg.transition.fe.value()},
                       {"branching", cfg.transition.branching},     {"gamma", cfg.transition.gamma},
                       {"beta_g", cfg.transition.beta_g},           {"beta_e", cfg.transition.beta_e},
                       {"rabi_normalization", std::string(to_string(cfg.transition.normalization))}};
    j["pump"] = field_to_json(cfg.pump);
    j["probe"] = field_to_json(cfg.probe);
    j["bfield"] = cfg.bfield;
    j["delta"] = cfg.delta;
    j["scan"] = {{"variable", std::string(to_string(cfg.variable))},
                 {"range", {cfg.lo, cfg.hi}},
                 {"points", cfg.points},
                 {"log", cfg.log_spacing}};
    json obs = json::array();
    for (auto k : cfg.observables) obs.push_back(std::string(to_string(k)));
    j["observables"] = obs;
    if (cfg.dispersion_axis) j["dispersion_axis"] = polarization_to_json(*cfg.dispersion_axis);
    j["projection"] = cfg.projection == Projection::conjugate ? "conjugate" : "literal";
    if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
    return j;
}

}  // namespace cohspec
