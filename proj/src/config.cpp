#include "heatctl/config.hpp"

#include <cmath>
#include <set>

namespace heatctl {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::string& path,
                 const std::set<std::string>& allowed) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError(path.empty() ? it.key() : path + "." + it.key(),
                              "unknown field");
}

const json& require(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw ConfigError(path.empty() ? key : path + "." + key, "missing field");
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ConfigError(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::vector<double> as_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix as_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw ConfigError(path, "expected a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        rows.push_back(as_vector(j[r], path + "[" + std::to_string(r) + "]"));
        if (rows.back().size() != rows.front().size())
            throw ConfigError(path + "[" + std::to_string(r) + "]",
                              "rows have unequal lengths");
        if (rows.back().empty())
            throw ConfigError(path + "[" + std::to_string(r) + "]", "empty row");
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

Profile parse_profile(const json& j, const std::string& path) {
    Profile p;
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    if (j.contains("coefficients")) {
        expect_keys(j, path, {"coefficients"});
        const json& rows = j["coefficients"];
        if (!rows.is_array() || rows.empty())
            throw ConfigError(path + ".coefficients", "expected a nonempty array");
        p.kind = Profile::Kind::coefficients;
        for (std::size_t r = 0; r < rows.size(); ++r)
            p.coefficients.push_back(
                as_vector(rows[r], path + ".coefficients[" + std::to_string(r) + "]"));
        return p;
    }
    const std::string kind =
        require(j, path, "profile").is_string()
            ? j["profile"].get<std::string>()
            : throw ConfigError(path + ".profile", "expected a string");
    if (kind == "zero") {
        expect_keys(j, path, {"profile"});
        p.kind = Profile::Kind::zero;
    } else if (kind == "single-mode") {
        expect_keys(j, path, {"profile", "mode", "amplitude"});
        p.kind = Profile::Kind::single_mode;
        p.mode = as_count(require(j, path, "mode"), path + ".mode");
        if (p.mode < 1) throw ConfigError(path + ".mode", "modes are 1-based");
        p.amplitude = as_vector(require(j, path, "amplitude"), path + ".amplitude");
    } else if (kind == "constant") {
        expect_keys(j, path, {"profile", "amplitude"});
        p.kind = Profile::Kind::constant;
        p.amplitude = as_vector(require(j, path, "amplitude"), path + ".amplitude");
    } else if (kind == "bump") {
        expect_keys(j, path, {"profile", "center", "width", "amplitude"});
        p.kind = Profile::Kind::bump;
        p.center = as_number(require(j, path, "center"), path + ".center");
        p.width = as_number(require(j, path, "width"), path + ".width");
        if (!(p.width > 0.0)) throw ConfigError(path + ".width", "must be positive");
        p.amplitude = as_vector(require(j, path, "amplitude"), path + ".amplitude");
    } else {
        throw ConfigError(path + ".profile",
                          "unknown profile '" + kind +
                              "' (expected zero | single-mode | constant | bump)");
    }
    return p;
}

json profile_to_json(const Profile& p) {
    json j;
    switch (p.kind) {
        case Profile::Kind::zero:
            j["profile"] = "zero";
            break;
        case Profile::Kind::single_mode:
            j["profile"] = "single-mode";
            j["mode"] = p.mode;
            j["amplitude"] = p.amplitude;
            break;
        case Profile::Kind::constant:
            j["profile"] = "constant";
            j["amplitude"] = p.amplitude;
            break;
        case Profile::Kind::bump:
            j["profile"] = "bump";
            j["center"] = p.center;
            j["width"] = p.width;
            j["amplitude"] = p.amplitude;
            break;
        case Profile::Kind::coefficients:
            j["coefficients"] = p.coefficients;
            break;
    }
    return j;
}

}  // namespace

std::string task_name(Task t) {
    switch (t) {
        case Task::analyze: return "analyze";
        case Task::simulate: return "simulate";
        case Task::steer_approx: return "steer-approx";
        case Task::steer_null: return "steer-null";
        case Task::steer_ode: return "steer-ode";
        case Task::reproduce: return "reproduce";
    }
    return "analyze";
}

Matrix Profile::realize(const DomainSpec& domain, std::size_t components,
                        const std::string& path) const {
    Matrix out(domain.modes, components);
    switch (kind) {
        case Kind::zero:
            break;
        case Kind::single_mode: {
            if (mode > domain.modes)
                throw ConfigError(path + ".mode",
                                  "exceeds the domain truncation of " +
                                      std::to_string(domain.modes) + " modes");
            if (amplitude.size() != components)
                throw ConfigError(path + ".amplitude",
                                  "needs " + std::to_string(components) + " entries");
            for (std::size_t c = 0; c < components; ++c)
                out(mode - 1, c) = amplitude[c];
            break;
        }
        case Kind::constant: {
            if (amplitude.size() != components)
                throw ConfigError(path + ".amplitude",
                                  "needs " + std::to_string(components) + " entries");
            const std::vector<double> profile = constant_profile_coeffs(domain);
            for (std::size_t j = 0; j < domain.modes; ++j)
                for (std::size_t c = 0; c < components; ++c)
                    out(j, c) = profile[j] * amplitude[c];
            break;
        }
        case Kind::bump: {
            if (amplitude.size() != components)
                throw ConfigError(path + ".amplitude",
                                  "needs " + std::to_string(components) + " entries");
            // Composite Simpson projection of the Gaussian bump onto each mode.
            const std::size_t panels = 4096;
            const double h = domain.length / static_cast<double>(panels);
            for (std::size_t j = 1; j <= domain.modes; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i <= panels; ++i) {
                    const double x = static_cast<double>(i) * h;
                    const double arg = (x - center) / width;
                    const double f = std::exp(-arg * arg) * basis_value(domain, j, x);
                    const double w = (i == 0 || i == panels) ? 1.0
                                     : (i % 2 == 1)          ? 4.0
                                                             : 2.0;
                    acc += w * f;
                }
                acc *= h / 3.0;
                for (std::size_t c = 0; c < components; ++c)
                    out(j - 1, c) = acc * amplitude[c];
            }
            break;
        }
        case Kind::coefficients: {
            if (coefficients.size() != domain.modes)
                throw ConfigError(path + ".coefficients",
                                  "needs one row per mode (" +
                                      std::to_string(domain.modes) + ")");
            for (std::size_t j = 0; j < domain.modes; ++j) {
                if (coefficients[j].size() != components)
                    throw ConfigError(
                        path + ".coefficients[" + std::to_string(j) + "]",
                        "needs " + std::to_string(components) + " entries");
                for (std::size_t c = 0; c < components; ++c)
                    out(j, c) = coefficients[j][c];
            }
            break;
        }
    }
    out.require_finite(path);
    return out;
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("", "config root must be an object");
    expect_keys(doc, "",
                {"task", "system", "domain", "schedule", "initial", "target",
                 "controls", "ode", "reproduce", "tolerances", "output", "seed"});

    ScenarioConfig cfg;

    const json& taskj = require(doc, "", "task");
    if (!taskj.is_string()) throw ConfigError("task", "expected a string");
    const std::string task = taskj.get<std::string>();
    if (task == "analyze") cfg.task = Task::analyze;
    else if (task == "simulate") cfg.task = Task::simulate;
    else if (task == "steer-approx") cfg.task = Task::steer_approx;
    else if (task == "steer-null") cfg.task = Task::steer_null;
    else if (task == "steer-ode") cfg.task = Task::steer_ode;
    else if (task == "reproduce") cfg.task = Task::reproduce;
    else
        throw ConfigError("task", "unknown task '" + task +
                                      "' (expected analyze | simulate | steer-approx "
                                      "| steer-null | steer-ode | reproduce)");

    if (doc.contains("system")) {
        const json& sys = doc["system"];
        if (!sys.is_object()) throw ConfigError("system", "expected an object");
        expect_keys(sys, "system", {"A", "B"});
        ControlPair pair;
        pair.A = as_matrix(require(sys, "system", "A"), "system.A");
        pair.B = as_matrix(require(sys, "system", "B"), "system.B");
        if (!pair.A.square())
            throw ConfigError("system.A", "must be square (got " +
                                              std::to_string(pair.A.rows()) + "x" +
                                              std::to_string(pair.A.cols()) + ")");
        if (pair.B.rows() != pair.A.rows())
            throw ConfigError("system.B", "must have as many rows as A");
        cfg.system = std::move(pair);
    }

    if (doc.contains("domain")) {
        const json& dom = doc["domain"];
        if (!dom.is_object()) throw ConfigError("domain", "expected an object");
        expect_keys(dom, "domain", {"length", "omega", "modes"});
        if (dom.contains("length"))
            cfg.domain.length = as_number(dom["length"], "domain.length");
        if (dom.contains("modes"))
            cfg.domain.modes = as_count(dom["modes"], "domain.modes");
        if (dom.contains("omega")) {
            const json& om = dom["omega"];
            if (!om.is_array()) throw ConfigError("domain.omega", "expected an array");
            cfg.domain.omega.clear();
            for (std::size_t i = 0; i < om.size(); ++i) {
                const std::string p = "domain.omega[" + std::to_string(i) + "]";
                const std::vector<double> iv = as_vector(om[i], p);
                if (iv.size() != 2) throw ConfigError(p, "expected [a, b]");
                cfg.domain.omega.push_back({iv[0], iv[1]});
            }
        }
        try {
            cfg.domain.validate();
        } catch (const ValidationError& e) {
            throw ConfigError("domain", e.what());
        }
    }

    if (doc.contains("schedule")) {
        const json& sch = doc["schedule"];
        if (!sch.is_object()) throw ConfigError("schedule", "expected an object");
        expect_keys(sch, "schedule", {"T", "instants"});
        ImpulseSchedule schedule;
        schedule.horizon = as_number(require(sch, "schedule", "T"), "schedule.T");
        schedule.instants =
            as_vector(require(sch, "schedule", "instants"), "schedule.instants");
        try {
            schedule.validate();
        } catch (const ValidationError& e) {
            throw ConfigError("schedule", e.what());
        }
        cfg.schedule = std::move(schedule);
    }

    if (doc.contains("initial")) cfg.initial = parse_profile(doc["initial"], "initial");
    if (doc.contains("target")) cfg.target = parse_profile(doc["target"], "target");
    if (doc.contains("controls")) {
        const json& cs = doc["controls"];
        if (!cs.is_array()) throw ConfigError("controls", "expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i)
            cfg.controls.push_back(
                parse_profile(cs[i], "controls[" + std::to_string(i) + "]"));
    }

    if (doc.contains("ode")) {
        const json& ode = doc["ode"];
        if (!ode.is_object()) throw ConfigError("ode", "expected an object");
        expect_keys(ode, "ode", {"z0", "z1"});
        cfg.z0 = as_vector(require(ode, "ode", "z0"), "ode.z0");
        cfg.z1 = as_vector(require(ode, "ode", "z1"), "ode.z1");
    }

    if (doc.contains("reproduce")) {
        const json& rep = doc["reproduce"];
        if (!rep.is_object()) throw ConfigError("reproduce", "expected an object");
        expect_keys(rep, "reproduce",
                    {"name", "a", "b", "c", "d", "T", "modes", "random_controls"});
        const json& namej = require(rep, "reproduce", "name");
        if (!namej.is_string()) throw ConfigError("reproduce.name", "expected a string");
        cfg.reproduce_name = namej.get<std::string>();
        auto& p = cfg.reproduce_params;
        if (rep.contains("a")) p.a = as_number(rep["a"], "reproduce.a");
        if (rep.contains("b")) p.b = as_number(rep["b"], "reproduce.b");
        if (rep.contains("c")) p.c = as_number(rep["c"], "reproduce.c");
        if (rep.contains("d")) p.d = as_number(rep["d"], "reproduce.d");
        if (rep.contains("T")) p.horizon = as_number(rep["T"], "reproduce.T");
        if (rep.contains("modes")) p.modes = as_count(rep["modes"], "reproduce.modes");
        if (rep.contains("random_controls"))
            p.random_controls =
                as_count(rep["random_controls"], "reproduce.random_controls");
    }

    if (doc.contains("tolerances")) {
        const json& tols = doc["tolerances"];
        if (!tols.is_object()) throw ConfigError("tolerances", "expected an object");
        expect_keys(tols, "tolerances", {"rank_absolute"});
        if (tols.contains("rank_absolute")) {
            const double v = as_number(tols["rank_absolute"], "tolerances.rank_absolute");
            if (!(v > 0.0))
                throw ConfigError("tolerances.rank_absolute", "must be positive");
            cfg.rank_absolute = v;
        }
    }

    if (doc.contains("output")) {
        const json& outj = doc["output"];
        if (!outj.is_object()) throw ConfigError("output", "expected an object");
        expect_keys(outj, "output", {"csv_samples"});
        if (outj.contains("csv_samples")) {
            cfg.csv_samples = as_count(outj["csv_samples"], "output.csv_samples");
            if (cfg.csv_samples < 2)
                throw ConfigError("output.csv_samples", "at least 2 samples");
        }
    }

    if (doc.contains("seed")) cfg.seed = as_count(doc["seed"], "seed");

    // Cross-field requirements per task.
    const auto need_system = [&] {
        if (!cfg.system) throw ConfigError("system", "required for this task");
    };
    const auto need_schedule = [&] {
        if (!cfg.schedule) throw ConfigError("schedule", "required for this task");
    };
    switch (cfg.task) {
        case Task::analyze:
            need_system();
            need_schedule();
            break;
        case Task::simulate:
        case Task::steer_null:
            need_system();
            need_schedule();
            if (!cfg.initial) throw ConfigError("initial", "required for this task");
            break;
        case Task::steer_approx:
            need_system();
            need_schedule();
            if (!cfg.initial) throw ConfigError("initial", "required for this task");
            if (!cfg.target) throw ConfigError("target", "required for this task");
            break;
        case Task::steer_ode: {
            need_system();
            need_schedule();
            if (cfg.z0.empty()) throw ConfigError("ode.z0", "required for this task");
            if (cfg.z1.empty()) throw ConfigError("ode.z1", "required for this task");
            const std::size_t n = cfg.system->n();
            if (cfg.z0.size() != n)
                throw ConfigError("ode.z0", "needs " + std::to_string(n) + " entries");
            if (cfg.z1.size() != n)
                throw ConfigError("ode.z1", "needs " + std::to_string(n) + " entries");
            break;
        }
        case Task::reproduce:
            if (cfg.reproduce_name.empty())
                throw ConfigError("reproduce.name", "required for this task");
            break;
    }
    if (cfg.task == Task::simulate && !cfg.controls.empty() && cfg.schedule &&
        cfg.controls.size() != cfg.schedule->count())
        throw ConfigError("controls", "needs one entry per schedule instant");

    return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::json config_to_json(const ScenarioConfig& cfg) {
    json doc;
    doc["task"] = task_name(cfg.task);
    if (cfg.system) {
        json a = json::array();
        for (std::size_t r = 0; r < cfg.system->A.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < cfg.system->A.cols(); ++c)
                row.push_back(cfg.system->A(r, c));
            a.push_back(row);
        }
        json b = json::array();
        for (std::size_t r = 0; r < cfg.system->B.rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < cfg.system->B.cols(); ++c)
                row.push_back(cfg.system->B(r, c));
            b.push_back(row);
        }
        doc["system"] = {{"A", a}, {"B", b}};
    }
    json om = json::array();
    for (const auto& iv : cfg.domain.omega) om.push_back({iv.a, iv.b});
    doc["domain"] = {{"length", cfg.domain.length},
                     {"omega", om},
                     {"modes", cfg.domain.modes}};
    if (cfg.schedule)
        doc["schedule"] = {{"T", cfg.schedule->horizon},
                           {"instants", cfg.schedule->instants}};
    if (cfg.initial) doc["initial"] = profile_to_json(*cfg.initial);
    if (cfg.target) doc["target"] = profile_to_json(*cfg.target);
    if (!cfg.controls.empty()) {
        json cs = json::array();
        for (const auto& p : cfg.controls) cs.push_back(profile_to_json(p));
        doc["controls"] = cs;
    }
    if (!cfg.z0.empty()) doc["ode"] = {{"z0", cfg.z0}, {"z1", cfg.z1}};
    if (cfg.task == Task::reproduce) {
        const auto& p = cfg.reproduce_params;
        doc["reproduce"] = {{"name", cfg.reproduce_name},
                            {"a", p.a},
                            {"b", p.b},
                            {"c", p.c},
                            {"d", p.d},
                            {"T", p.horizon},
                            {"modes", p.modes},
                            {"random_controls", p.random_controls}};
    }
    if (cfg.rank_absolute) doc["tolerances"] = {{"rank_absolute", *cfg.rank_absolute}};
    doc["output"] = {{"csv_samples", cfg.csv_samples}};
    doc["seed"] = cfg.seed;
    return doc;
}

}  // namespace heatctl
