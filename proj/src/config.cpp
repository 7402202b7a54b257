#include "adlab/config.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>

#include "adlab/errors.hpp"
#include "json.hpp"

namespace adlab {

namespace {

using nlohmann::json;

// Best-effort line number of a key in the raw document, for error messages.
int line_of_key(const std::string& text, const std::string& key) {
    const std::string needle = "\"" + key + "\"";
    const std::size_t pos = text.find(needle);
    if (pos == std::string::npos) return -1;
    int line = 1;
    for (std::size_t i = 0; i < pos; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

struct Ctx {
    const std::string& text;

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        std::ostringstream os;
        os << "config error";
        const int ln = line_of_key(text, key);
        if (ln > 0) os << " (line " << ln << ")";
        os << ": '" << key << "': " << msg;
        throw ConfigError(os.str());
    }

    void check_keys(const json& obj, const std::string& block,
                    std::initializer_list<const char*> allowed) const {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool ok = false;
            for (const char* a : allowed)
                if (it.key() == a) ok = true;
            if (!ok) fail(it.key(), "unknown key in '" + block + "' block");
        }
    }

    double num(const json& obj, const std::string& key, double fallback, bool required = false) const {
        if (!obj.contains(key)) {
            if (required) fail(key, "missing required key");
            return fallback;
        }
        if (!obj[key].is_number()) fail(key, "expected a number");
        return obj[key].get<double>();
    }

    std::string str(const json& obj, const std::string& key, const std::string& fallback) const {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_string()) fail(key, "expected a string");
        return obj[key].get<std::string>();
    }

    bool boolean(const json& obj, const std::string& key, bool fallback) const {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_boolean()) fail(key, "expected a boolean");
        return obj[key].get<bool>();
    }

    std::vector<double> num_list(const json& obj, const std::string& key,
                                 std::vector<double> fallback) const {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_array()) fail(key, "expected an array");
        std::vector<double> out;
        for (const auto& v : obj[key]) {
            if (v.is_number()) {
                out.push_back(v.get<double>());
            } else if (v.is_string() && (v.get<std::string>() == "inf")) {
                out.push_back(p_inf);
            } else {
                fail(key, "entries must be numbers or \"inf\"");
            }
        }
        return out;
    }
};

FieldKind parse_field_kind(const Ctx& ctx, const std::string& s) {
    if (s == "zero") return FieldKind::zero;
    if (s == "constant") return FieldKind::constant;
    if (s == "cosine") return FieldKind::cosine;
    if (s == "monotone_tanh") return FieldKind::monotone_tanh;
    if (s == "modulated_cosine") return FieldKind::modulated_cosine;
    ctx.fail("kind", "unknown field kind '" + s + "'");
}

ProfileKind parse_profile_kind(const Ctx& ctx, const std::string& s) {
    if (s == "gaussian") return ProfileKind::gaussian;
    if (s == "box") return ProfileKind::box;
    if (s == "bimodal_signed") return ProfileKind::bimodal_signed;
    if (s == "trig_poly") return ProfileKind::trig_poly;
    ctx.fail("kind", "unknown profile kind '" + s + "'");
}

Normalization parse_normalization(const Ctx& ctx, const std::string& s) {
    if (s == "none") return Normalization::none;
    if (s == "unit_l1") return Normalization::unit_l1;
    if (s == "unit_sup") return Normalization::unit_sup;
    ctx.fail("normalization", "unknown normalization '" + s + "'");
}

const char* to_string(FieldKind k) {
    switch (k) {
        case FieldKind::zero: return "zero";
        case FieldKind::constant: return "constant";
        case FieldKind::cosine: return "cosine";
        case FieldKind::monotone_tanh: return "monotone_tanh";
        case FieldKind::modulated_cosine: return "modulated_cosine";
    }
    return "?";
}

const char* to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::gaussian: return "gaussian";
        case ProfileKind::box: return "box";
        case ProfileKind::bimodal_signed: return "bimodal_signed";
        case ProfileKind::trig_poly: return "trig_poly";
    }
    return "?";
}

const char* to_string(Normalization n) {
    switch (n) {
        case Normalization::none: return "none";
        case Normalization::unit_l1: return "unit_l1";
        case Normalization::unit_sup: return "unit_sup";
    }
    return "?";
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // recover the line from the byte offset
        int line = 1;
        for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i)
            if (json_text[i] == '\n') ++line;
        std::ostringstream os;
        os << "config error (line " << line << "): " << e.what();
        throw ConfigError(os.str());
    }
    const Ctx ctx{json_text};
    if (!doc.is_object()) throw ConfigError("config error: top level must be an object");
    ctx.check_keys(doc, "top-level",
                   {"grid", "field", "initial", "scheme", "run", "checks", "output"});

    ExperimentConfig cfg;

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        ctx.check_keys(g, "grid", {"x_min", "x_max", "n_cells"});
        cfg.x_min = ctx.num(g, "x_min", cfg.x_min, true);
        cfg.x_max = ctx.num(g, "x_max", cfg.x_max, true);
        const double n = ctx.num(g, "n_cells", cfg.n_cells, true);
        if (n != std::floor(n)) ctx.fail("n_cells", "must be an integer");
        cfg.n_cells = static_cast<int>(n);
    }

    if (doc.contains("field")) {
        const json& f = doc["field"];
        ctx.check_keys(f, "field", {"kind", "amplitude", "wavenumber", "offset", "omega"});
        cfg.field.kind = parse_field_kind(ctx, ctx.str(f, "kind", "zero"));
        cfg.field.amplitude = ctx.num(f, "amplitude", 0.0);
        cfg.field.wavenumber = ctx.num(f, "wavenumber", 0.0);
        cfg.field.offset = ctx.num(f, "offset", 0.0);
        cfg.field.omega = ctx.num(f, "omega", 0.0);
        for (double v : {cfg.field.amplitude, cfg.field.wavenumber, cfg.field.offset,
                         cfg.field.omega})
            if (!std::isfinite(v)) ctx.fail("field", "parameters must be finite");
    }

    if (doc.contains("initial")) {
        const json& p = doc["initial"];
        ctx.check_keys(p, "initial",
                       {"kind", "centers", "widths", "amplitudes", "coefficients",
                        "normalization"});
        cfg.initial.kind = parse_profile_kind(ctx, ctx.str(p, "kind", "gaussian"));
        cfg.initial.centers = ctx.num_list(p, "centers", cfg.initial.centers);
        cfg.initial.widths = ctx.num_list(p, "widths", cfg.initial.widths);
        cfg.initial.amplitudes = ctx.num_list(p, "amplitudes", cfg.initial.amplitudes);
        cfg.initial.coefficients = ctx.num_list(p, "coefficients", cfg.initial.coefficients);
        cfg.initial.normalization = parse_normalization(ctx, ctx.str(p, "normalization", "none"));
    }

    if (doc.contains("scheme")) {
        const json& s = doc["scheme"];
        ctx.check_keys(s, "scheme", {"cfl_safety", "max_dt", "advection", "diffusion"});
        cfg.scheme.cfl_safety = ctx.num(s, "cfl_safety", cfg.scheme.cfl_safety);
        cfg.scheme.max_dt = ctx.num(s, "max_dt", cfg.scheme.max_dt);
        const std::string adv = ctx.str(s, "advection", "upwind");
        if (adv == "upwind") cfg.scheme.advection = AdvectionScheme::upwind;
        else if (adv == "central") cfg.scheme.advection = AdvectionScheme::central;
        else ctx.fail("advection", "must be 'upwind' or 'central'");
        const std::string dif = ctx.str(s, "diffusion", "crank_nicolson");
        if (dif == "backward_euler") cfg.scheme.diffusion = DiffusionScheme::backward_euler;
        else if (dif == "crank_nicolson") cfg.scheme.diffusion = DiffusionScheme::crank_nicolson;
        else ctx.fail("diffusion", "must be 'backward_euler' or 'crank_nicolson'");
    }

    if (doc.contains("run")) {
        const json& r = doc["run"];
        ctx.check_keys(r, "run", {"t_end", "sample_dt", "p_list"});
        cfg.t_end = ctx.num(r, "t_end", cfg.t_end);
        cfg.sample_dt = ctx.num(r, "sample_dt", cfg.sample_dt);
        cfg.p_list = ctx.num_list(r, "p_list", cfg.p_list);
    }

    if (doc.contains("checks")) {
        const json& c = doc["checks"];
        ctx.check_keys(c, "checks",
                       {"enabled", "tol_disc", "tol_exact", "tol_decay", "window_fraction",
                        "deadband", "lattice", "p0", "fit_from", "fit_to", "energy_q",
                        "energy_tol"});
        if (c.contains("enabled")) {
            if (!c["enabled"].is_array()) ctx.fail("enabled", "expected an array of check names");
            cfg.checks.enabled.clear();
            for (const auto& v : c["enabled"]) {
                if (!v.is_string()) ctx.fail("enabled", "check names must be strings");
                const std::string name = v.get<std::string>();
                static const char* known[] = {"l1_contraction", "gronwall",   "growth_time",
                                              "bootstrap",      "supnorm",    "asymptotic",
                                              "monotone_decay", "energy"};
                bool ok = false;
                for (const char* k : known)
                    if (name == k) ok = true;
                if (!ok) ctx.fail("enabled", "unknown check name '" + name + "'");
                cfg.checks.enabled.push_back(name);
            }
        }
        cfg.checks.tol_disc = ctx.num(c, "tol_disc", cfg.checks.tol_disc);
        cfg.checks.tol_exact = ctx.num(c, "tol_exact", cfg.checks.tol_exact);
        cfg.checks.tol_decay = ctx.num(c, "tol_decay", cfg.checks.tol_decay);
        cfg.checks.window_fraction = ctx.num(c, "window_fraction", cfg.checks.window_fraction);
        cfg.checks.deadband = ctx.num(c, "deadband", cfg.checks.deadband);
        cfg.checks.lattice = static_cast<int>(ctx.num(c, "lattice", cfg.checks.lattice));
        cfg.checks.p0 = ctx.num(c, "p0", cfg.checks.p0);
        cfg.checks.fit_from = ctx.num(c, "fit_from", cfg.checks.fit_from);
        cfg.checks.fit_to = ctx.num(c, "fit_to", cfg.checks.fit_to);
        cfg.checks.energy_q = ctx.num(c, "energy_q", cfg.checks.energy_q);
        cfg.checks.energy_tol = ctx.num(c, "energy_tol", cfg.checks.energy_tol);
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        ctx.check_keys(o, "output", {"directory", "emit_svg"});
        cfg.out_dir = ctx.str(o, "directory", cfg.out_dir);
        cfg.emit_svg = ctx.boolean(o, "emit_svg", cfg.emit_svg);
    }

    // cross-field validation with config-flavoured messages
    if (!(cfg.x_max > cfg.x_min)) ctx.fail("x_max", "domain extent must be positive");
    if (cfg.n_cells < 8) ctx.fail("n_cells", "must be >= 8");
    if (!(cfg.t_end > 0.0)) ctx.fail("t_end", "must be positive");
    if (!(cfg.sample_dt > 0.0)) ctx.fail("sample_dt", "must be positive");
    bool has1 = false, hasinf = false;
    for (double p : cfg.p_list) {
        if (std::isinf(p)) hasinf = true;
        else if (p == 1.0) has1 = true;
        if (!std::isinf(p) && !(p >= 1.0)) ctx.fail("p_list", "entries must be >= 1 or \"inf\"");
    }
    if (!has1 || !hasinf) ctx.fail("p_list", "must contain 1 and \"inf\" at minimum");
    if (!(cfg.scheme.cfl_safety > 0.0 && cfg.scheme.cfl_safety <= 1.0))
        ctx.fail("cfl_safety", "must be in (0, 1]");
    if (!(cfg.scheme.max_dt > 0.0)) ctx.fail("max_dt", "must be positive");
    if (!(cfg.checks.window_fraction > 0.0 && cfg.checks.window_fraction <= 1.0))
        ctx.fail("window_fraction", "must be in (0, 1]");

    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return parse_config(os.str());
}

namespace {

json config_to_json(const ExperimentConfig& cfg) {
    json doc;
    doc["grid"] = {{"x_min", cfg.x_min}, {"x_max", cfg.x_max}, {"n_cells", cfg.n_cells}};
    doc["field"] = {{"kind", to_string(cfg.field.kind)},
                    {"amplitude", cfg.field.amplitude},
                    {"wavenumber", cfg.field.wavenumber},
                    {"offset", cfg.field.offset},
                    {"omega", cfg.field.omega}};
    doc["initial"] = {{"kind", to_string(cfg.initial.kind)},
                      {"centers", cfg.initial.centers},
                      {"widths", cfg.initial.widths},
                      {"amplitudes", cfg.initial.amplitudes},
                      {"coefficients", cfg.initial.coefficients},
                      {"normalization", to_string(cfg.initial.normalization)}};
    doc["scheme"] = {{"cfl_safety", cfg.scheme.cfl_safety},
                     {"max_dt", cfg.scheme.max_dt},
                     {"advection", to_string(cfg.scheme.advection)},
                     {"diffusion", to_string(cfg.scheme.diffusion)}};
    json plist = json::array();
    for (double p : cfg.p_list) {
        if (std::isinf(p)) plist.push_back("inf");
        else plist.push_back(p);
    }
    doc["run"] = {{"t_end", cfg.t_end}, {"sample_dt", cfg.sample_dt}, {"p_list", plist}};
    doc["checks"] = {{"enabled", cfg.checks.enabled},
                     {"tol_disc", cfg.checks.tol_disc},
                     {"tol_exact", cfg.checks.tol_exact},
                     {"tol_decay", cfg.checks.tol_decay},
                     {"window_fraction", cfg.checks.window_fraction},
                     {"deadband", cfg.checks.deadband},
                     {"lattice", cfg.checks.lattice},
                     {"p0", cfg.checks.p0},
                     {"fit_from", cfg.checks.fit_from},
                     {"fit_to", cfg.checks.fit_to},
                     {"energy_q", cfg.checks.energy_q},
                     {"energy_tol", cfg.checks.energy_tol}};
    doc["output"] = {{"directory", cfg.out_dir}, {"emit_svg", cfg.emit_svg}};
    return doc;
}

}  // namespace

std::string dump_config(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

std::string config_hash(const ExperimentConfig& cfg) {
    // the hash identifies the experiment; where its artifacts land does not
    // belong in it
    json doc = config_to_json(cfg);
    doc.erase("output");
    const std::string s = doc.dump(2);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

ExperimentConfig base_preset() {
    ExperimentConfig cfg;
    cfg.scheme.cfl_safety = 0.5;
    cfg.scheme.max_dt = 0.05;
    cfg.scheme.advection = AdvectionScheme::upwind;
    cfg.scheme.diffusion = DiffusionScheme::backward_euler;
    cfg.initial.kind = ProfileKind::gaussian;
    cfg.initial.normalization = Normalization::unit_l1;
    return cfg;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"heat", "constant_b", "fig1", "monotone", "modulated"};
}

ExperimentConfig preset(const std::string& name) {
    const double pi = std::numbers::pi;
    if (name == "heat") {
        ExperimentConfig cfg = base_preset();
        cfg.x_min = -40.0;
        cfg.x_max = 40.0;
        cfg.n_cells = 4096;
        cfg.field.kind = FieldKind::zero;
        cfg.initial.centers = {0.0};
        cfg.initial.widths = {0.5};
        cfg.initial.amplitudes = {1.0};
        cfg.scheme.max_dt = 0.01;
        cfg.t_end = 10.0;
        cfg.sample_dt = 0.05;
        cfg.p_list = {1.0, 2.0, p_inf};
        cfg.checks.fit_from = 5.0;
        cfg.checks.fit_to = 10.0;
        cfg.out_dir = "out/heat";
        return cfg;
    }
    if (name == "constant_b") {
        ExperimentConfig cfg = base_preset();
        cfg.x_min = -40.0;
        cfg.x_max = 40.0;
        cfg.n_cells = 4096;
        cfg.field.kind = FieldKind::constant;
        cfg.field.offset = 1.0;
        cfg.initial.centers = {0.0};
        cfg.initial.widths = {0.5};
        cfg.initial.amplitudes = {1.0};
        cfg.scheme.max_dt = 0.01;
        cfg.t_end = 8.0;
        cfg.sample_dt = 0.05;
        cfg.p_list = {1.0, 2.0, p_inf};
        cfg.checks.fit_from = 4.0;
        cfg.checks.fit_to = 8.0;
        cfg.out_dir = "out/constant_b";
        return cfg;
    }
    if (name == "fig1") {
        ExperimentConfig cfg = base_preset();
        cfg.x_min = -40.0 * pi;
        cfg.x_max = 40.0 * pi;
        cfg.n_cells = 16384;
        cfg.field.kind = FieldKind::cosine;
        cfg.field.amplitude = 5.0;
        cfg.field.wavenumber = 1.0;
        cfg.field.offset = 0.0;
        cfg.initial.centers = {0.0};
        cfg.initial.widths = {1.0};
        cfg.initial.amplitudes = {1.0};
        cfg.t_end = 50.0;
        cfg.sample_dt = 0.05;
        // q = 4 margins are part of the check suite, so track p = 4 as well
        cfg.p_list = {1.0, 2.0, 4.0, p_inf};
        cfg.out_dir = "out/fig1";
        return cfg;
    }
    if (name == "monotone") {
        ExperimentConfig cfg = base_preset();
        cfg.x_min = -60.0 * pi;
        cfg.x_max = 60.0 * pi;
        cfg.n_cells = 24576;
        cfg.field.kind = FieldKind::monotone_tanh;
        cfg.field.amplitude = 1.0;
        cfg.field.wavenumber = 1.0;
        cfg.initial.centers = {0.0};
        cfg.initial.widths = {1.0};
        cfg.initial.amplitudes = {1.0};
        cfg.t_end = 80.0;
        cfg.sample_dt = 0.1;
        cfg.p_list = {1.0, 2.0, p_inf};
        cfg.checks.fit_from = 40.0;
        cfg.checks.fit_to = 80.0;
        cfg.out_dir = "out/monotone";
        return cfg;
    }
    if (name == "modulated") {
        ExperimentConfig cfg = base_preset();
        cfg.x_min = -40.0 * pi;
        cfg.x_max = 40.0 * pi;
        cfg.n_cells = 8192;
        cfg.field.kind = FieldKind::modulated_cosine;
        cfg.field.amplitude = 2.0;
        cfg.field.wavenumber = 1.0;
        cfg.field.offset = 0.0;
        cfg.field.omega = 1.0;
        cfg.initial.centers = {0.0};
        cfg.initial.widths = {1.0};
        cfg.initial.amplitudes = {1.0};
        cfg.t_end = 50.0;
        cfg.sample_dt = 0.05;
        cfg.p_list = {1.0, 2.0, 4.0, p_inf};
        cfg.out_dir = "out/modulated";
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "' (expected one of: heat, constant_b, fig1, "
                      "monotone, modulated)");
}

ExperimentConfig fig1_scenario() { return preset("fig1"); }

}  // namespace adlab
