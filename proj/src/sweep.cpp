#include "nopo/sweep.hpp"

#include "nopo/analytic.hpp"
#include "nopo/liouvillian.hpp"
#include "nopo/steady_state.hpp"
#include "nopo/weak_drive.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>

namespace nopo {

namespace {

constexpr int kCutoffCap = 12;

const std::set<std::string>& allowed_axis_names() {
    static const std::set<std::string> names = {
        "delta_a", "delta_b", "delta_c", "delta_bc_sum", "g", "E", "kappa", "kappa_a"};
    return names;
}

struct PointOutcome {
    CorrelationReport report;
    std::optional<double> residual;
    ModeCutoffs cutoffs_used;
};

PointOutcome evaluate_master_equation(const SystemParams& p, const ModeCutoffs& cutoffs) {
    const HilbertSpace space = build_space(cutoffs);
    const Superoperator l = liouvillian(space, p);
    const DensityMatrix rho = steady_state(l);
    PointOutcome out;
    out.report = report(rho, space);
    out.residual = residual(l, rho);
    out.cutoffs_used = cutoffs;
    return out;
}

PointOutcome evaluate_point(const SystemParams& p, Engine engine,
                            const ModeCutoffs& cutoffs) {
    PointOutcome out;
    out.cutoffs_used = cutoffs;
    switch (engine) {
    case Engine::master_equation:
        return evaluate_master_equation(p, cutoffs);
    case Engine::weak_drive: {
        const WeakDriveAmplitudes amps = solve_amplitudes(p);
        const WeakDriveObservables obs = observables_from_amplitudes(amps);
        out.report.n_D = obs.n_D;
        out.report.g2_D = obs.g2_D;
        out.report.n_a = std::norm(amps.c100);
        return out;
    }
    case Engine::analytic:
    default:
        out.report.n_D = pair_number_analytic(p);
        out.report.g2_D = g2_pair_analytic(p);
        return out;
    }
}

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

void append_field(std::string& out, const std::optional<double>& v) {
    if (v.has_value()) {
        append_double(out, *v);
    }
}

std::string sanitize_csv(const std::string& text) {
    std::string clean = text;
    for (char& ch : clean) {
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    }
    return clean;
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (char ch : text) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += ch;
        }
    }
    return out;
}

void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (allowed.find(it.key()) == allowed.end()) {
            throw InvalidConfig("config: unknown key \"" + it.key() + "\" in " + where);
        }
    }
}

} // namespace

std::string engine_name(Engine engine) {
    switch (engine) {
    case Engine::master_equation: return "master-equation";
    case Engine::weak_drive: return "weak-drive";
    default: return "analytic";
    }
}

Engine parse_engine(const std::string& name) {
    if (name == "master-equation") return Engine::master_equation;
    if (name == "weak-drive") return Engine::weak_drive;
    if (name == "analytic") return Engine::analytic;
    throw InvalidConfig("unknown engine \"" + name + "\"");
}

void validate(const SweepConfig& config) {
    validate(config.base);
    if (config.axes.empty() || config.axes.size() > 2) {
        throw InvalidConfig("config: need 1 or 2 sweep axes");
    }
    for (const SweepAxis& axis : config.axes) {
        if (allowed_axis_names().find(axis.name) == allowed_axis_names().end()) {
            throw InvalidConfig("config: unknown axis name \"" + axis.name + "\"");
        }
        if (axis.count < 2) {
            throw InvalidConfig("config: axis count must be >= 2");
        }
        if (!(axis.min < axis.max)) {
            throw InvalidConfig("config: axis min must be < max");
        }
        if (axis.scale == AxisScale::log && !(axis.min > 0.0)) {
            throw InvalidConfig("config: log axis requires min > 0");
        }
    }
    if (config.axes.size() == 2 && config.axes[0].name == config.axes[1].name) {
        throw InvalidConfig("config: the two axes sweep the same parameter");
    }
    if (config.cutoffs.n_a_max < 1 || config.cutoffs.n_b_max < 1 || config.cutoffs.n_c_max < 1) {
        throw InvalidConfig("config: cutoffs must be >= 1");
    }
    if (config.convergence.enabled) {
        if (!(config.convergence.rel_tol > 0.0)) {
            throw InvalidConfig("config: convergence rel_tol must be positive");
        }
        if (config.engine != Engine::master_equation) {
            throw InvalidConfig("config: cutoff convergence applies to the "
                                "master-equation engine only");
        }
    }
}

namespace {

SweepConfig extract_config(const nlohmann::json& doc) {
    require_keys(doc, {"base", "axes", "constraint", "engine", "cutoffs", "convergence"},
                 "top level");

    SweepConfig config;
    if (doc.contains("base")) {
        const auto& base = doc["base"];
        require_keys(base, {"delta_a", "delta_b", "delta_c", "g", "E",
                            "kappa_a", "kappa_b", "kappa_c"}, "base");
        config.base.delta_a = base.value("delta_a", config.base.delta_a);
        config.base.delta_b = base.value("delta_b", config.base.delta_b);
        config.base.delta_c = base.value("delta_c", config.base.delta_c);
        config.base.g = base.value("g", config.base.g);
        config.base.E = base.value("E", config.base.E);
        config.base.kappa_a = base.value("kappa_a", config.base.kappa_a);
        config.base.kappa_b = base.value("kappa_b", config.base.kappa_b);
        config.base.kappa_c = base.value("kappa_c", config.base.kappa_c);
    }
    if (!doc.contains("axes") || !doc["axes"].is_array()) {
        throw InvalidConfig("config: \"axes\" array is required");
    }
    for (const auto& axis_doc : doc["axes"]) {
        require_keys(axis_doc, {"name", "min", "max", "count", "scale"}, "axes[]");
        SweepAxis axis;
        axis.name = axis_doc.value("name", "");
        if (!axis_doc.contains("min") || !axis_doc.contains("max") ||
            !axis_doc.contains("count")) {
            throw InvalidConfig("config: axis needs min, max and count");
        }
        axis.min = axis_doc["min"].get<double>();
        axis.max = axis_doc["max"].get<double>();
        axis.count = axis_doc["count"].get<int>();
        const std::string scale = axis_doc.value("scale", "linear");
        if (scale == "linear") {
            axis.scale = AxisScale::linear;
        } else if (scale == "log") {
            axis.scale = AxisScale::log;
        } else {
            throw InvalidConfig("config: axis scale must be linear or log");
        }
        config.axes.push_back(axis);
    }
    if (doc.contains("constraint")) {
        if (doc["constraint"].is_null()) {
            config.optimal_curve = false;
        } else if (doc["constraint"].is_string() &&
                   doc["constraint"].get<std::string>() == "optimal-curve") {
            config.optimal_curve = true;
        } else {
            throw InvalidConfig("config: constraint must be \"optimal-curve\" or null");
        }
    }
    if (doc.contains("engine")) {
        config.engine = parse_engine(doc["engine"].get<std::string>());
    }
    if (doc.contains("cutoffs")) {
        const auto& cut = doc["cutoffs"];
        require_keys(cut, {"n_a_max", "n_b_max", "n_c_max"}, "cutoffs");
        config.cutoffs.n_a_max = cut.value("n_a_max", config.cutoffs.n_a_max);
        config.cutoffs.n_b_max = cut.value("n_b_max", config.cutoffs.n_b_max);
        config.cutoffs.n_c_max = cut.value("n_c_max", config.cutoffs.n_c_max);
    }
    if (doc.contains("convergence")) {
        const auto& conv = doc["convergence"];
        require_keys(conv, {"enabled", "rel_tol"}, "convergence");
        config.convergence.enabled = conv.value("enabled", false);
        config.convergence.rel_tol = conv.value("rel_tol", config.convergence.rel_tol);
    }
    validate(config);
    return config;
}

} // namespace

SweepConfig parse_config(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& err) {
        throw InvalidConfig(std::string("config: JSON parse error: ") + err.what());
    }
    if (!doc.is_object()) {
        throw InvalidConfig("config: top level must be an object");
    }
    try {
        return extract_config(doc);
    } catch (const nlohmann::json::exception& err) {
        throw InvalidConfig(std::string("config: ") + err.what());
    }
}

void apply_axis_value(SystemParams& p, const std::string& name, double value) {
    if (name == "delta_a") {
        p.delta_a = value;
    } else if (name == "delta_b") {
        p.delta_b = value;
    } else if (name == "delta_c") {
        p.delta_c = value;
    } else if (name == "delta_bc_sum") {
        p.delta_b = 0.5 * value;
        p.delta_c = 0.5 * value;
    } else if (name == "g") {
        p.g = value;
    } else if (name == "E") {
        p.E = value;
    } else if (name == "kappa") {
        p.kappa_b = value;
        p.kappa_c = value;
    } else if (name == "kappa_a") {
        p.kappa_a = value;
    } else {
        throw InvalidConfig("unknown swept parameter \"" + name + "\"");
    }
}

CorrelationReport run_point(const SystemParams& p, Engine engine,
                            const ModeCutoffs& cutoffs) {
    validate(p);
    return evaluate_point(p, engine, cutoffs).report;
}

ModeCutoffs converge_cutoffs(const SystemParams& p, const ModeCutoffs& start,
                             double rel_tol) {
    validate(p);
    if (!(rel_tol > 0.0)) {
        throw InvalidConfig("converge_cutoffs: rel_tol must be positive");
    }
    if (start.n_a_max > kCutoffCap || start.n_b_max > kCutoffCap ||
        start.n_c_max > kCutoffCap) {
        throw NoConvergence("converge_cutoffs: start cutoffs already beyond the cap");
    }

    auto bump = [](const ModeCutoffs& c) {
        return ModeCutoffs{c.n_a_max + 2, c.n_b_max + 2, c.n_c_max + 2};
    };
    auto changed = [rel_tol](const std::optional<double>& prev,
                             const std::optional<double>& next) {
        if (!prev.has_value() && !next.has_value()) return false;
        if (prev.has_value() != next.has_value()) return true;
        return std::abs(*next - *prev) >= rel_tol * std::max(std::abs(*next), 1e-300);
    };

    ModeCutoffs current = start;
    std::optional<PointOutcome> here;
    while (true) {
        const ModeCutoffs next = bump(current);
        if (next.n_a_max > kCutoffCap || next.n_b_max > kCutoffCap ||
            next.n_c_max > kCutoffCap) {
            // The comparison against the next round can never run, so the
            // round at `current` is not worth computing.
            throw NoConvergence("converge_cutoffs: cap of 12 per mode reached without "
                                "meeting rel_tol");
        }
        if (!here.has_value()) {
            here = evaluate_master_equation(p, current);
        }
        PointOutcome there = evaluate_master_equation(p, next);
        if (!changed(here->report.n_D, there.report.n_D) &&
            !changed(here->report.g2_D, there.report.g2_D)) {
            return current;
        }
        current = next;
        here = std::move(there);
    }
}

namespace {

std::vector<double> axis_values(const SweepAxis& axis) {
    std::vector<double> values(axis.count);
    for (int i = 0; i < axis.count; ++i) {
        const double frac = static_cast<double>(i) / (axis.count - 1);
        if (axis.scale == AxisScale::linear) {
            values[i] = axis.min + frac * (axis.max - axis.min);
        } else {
            values[i] = std::exp(std::log(axis.min) +
                                 frac * (std::log(axis.max) - std::log(axis.min)));
        }
    }
    return values;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config, int workers) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<std::vector<double>> grids;
    grids.reserve(config.axes.size());
    for (const SweepAxis& axis : config.axes) {
        grids.push_back(axis_values(axis));
    }
    std::size_t total = 1;
    for (const auto& grid : grids) {
        total *= grid.size();
    }

    SweepResult result;
    result.config = config;
    result.rows.resize(total);

    auto compute_row = [&](std::size_t flat) {
        SweepRow& row = result.rows[flat];
        row.cutoffs_used = config.cutoffs;
        std::vector<std::size_t> idx(grids.size());
        std::size_t rest = flat;
        for (std::size_t ax = grids.size(); ax-- > 0;) {
            idx[ax] = rest % grids[ax].size();
            rest /= grids[ax].size();
        }
        SystemParams p = config.base;
        row.swept.resize(grids.size());
        for (std::size_t ax = 0; ax < grids.size(); ++ax) {
            row.swept[ax] = grids[ax][idx[ax]];
            apply_axis_value(p, config.axes[ax].name, row.swept[ax]);
        }
        try {
            if (config.optimal_curve) {
                const double delta = optimal_delta(p.delta_a, p.g);
                p.delta_b = delta;
                p.delta_c = delta;
            }
            ModeCutoffs cutoffs = config.cutoffs;
            if (config.convergence.enabled) {
                cutoffs = converge_cutoffs(p, cutoffs, config.convergence.rel_tol);
            }
            PointOutcome outcome = evaluate_point(p, config.engine, cutoffs);
            row.report = outcome.report;
            row.residual = outcome.residual;
            row.cutoffs_used = outcome.cutoffs_used;
        } catch (const std::exception& err) {
            row.error = err.what();
        }
    };

    int thread_count = workers;
    if (thread_count <= 0) {
        thread_count = static_cast<int>(std::thread::hardware_concurrency());
        if (thread_count <= 0) thread_count = 1;
    }
    thread_count = static_cast<int>(std::min<std::size_t>(thread_count, total));

    if (thread_count <= 1) {
        for (std::size_t i = 0; i < total; ++i) {
            compute_row(i);
        }
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int w = 0; w < thread_count; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = cursor.fetch_add(1);
                    if (i >= total) break;
                    compute_row(i);
                }
            });
        }
        for (std::thread& worker : pool) {
            worker.join();
        }
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

void emit_csv(const SweepResult& result, std::ostream& out) {
    std::string line;
    for (const SweepAxis& axis : result.config.axes) {
        line += axis.name;
        line += ',';
    }
    line += "n_a,n_b,n_c,n_D,g2_a,g2_b,g2_c,g2_D,g2_bc,g2_ab,g2_ac,"
            "residual,cutoff_a,cutoff_b,cutoff_c,error\n";
    out << line;

    for (const SweepRow& row : result.rows) {
        line.clear();
        for (double v : row.swept) {
            append_double(line, v);
            line += ',';
        }
        const CorrelationReport& r = row.report;
        for (const auto* field : {&r.n_a, &r.n_b, &r.n_c, &r.n_D, &r.g2_a, &r.g2_b,
                                  &r.g2_c, &r.g2_D, &r.g2_bc, &r.g2_ab, &r.g2_ac}) {
            append_field(line, *field);
            line += ',';
        }
        append_field(line, row.residual);
        line += ',';
        line += std::to_string(row.cutoffs_used.n_a_max);
        line += ',';
        line += std::to_string(row.cutoffs_used.n_b_max);
        line += ',';
        line += std::to_string(row.cutoffs_used.n_c_max);
        line += ',';
        line += sanitize_csv(row.error);
        line += '\n';
        out << line;
    }
}

namespace {

void emit_json_report_field(std::string& out, const char* name,
                            const std::optional<double>& value) {
    out += '"';
    out += name;
    out += "\":";
    if (value.has_value()) {
        append_double(out, *value);
    } else {
        out += "null";
    }
}

std::string config_to_json(const SweepConfig& config) {
    std::string out = "{\"base\":{";
    const SystemParams& p = config.base;
    const auto field = [&out](const char* name, double v, bool comma = true) {
        out += '"';
        out += name;
        out += "\":";
        append_double(out, v);
        if (comma) out += ',';
    };
    field("delta_a", p.delta_a);
    field("delta_b", p.delta_b);
    field("delta_c", p.delta_c);
    field("g", p.g);
    field("E", p.E);
    field("kappa_a", p.kappa_a);
    field("kappa_b", p.kappa_b);
    field("kappa_c", p.kappa_c, false);
    out += "},\"axes\":[";
    for (std::size_t i = 0; i < config.axes.size(); ++i) {
        const SweepAxis& axis = config.axes[i];
        if (i > 0) out += ',';
        out += "{\"name\":\"" + json_escape(axis.name) + "\",";
        field("min", axis.min);
        field("max", axis.max);
        out += "\"count\":" + std::to_string(axis.count) + ",";
        out += std::string("\"scale\":\"") +
               (axis.scale == AxisScale::linear ? "linear" : "log") + "\"}";
    }
    out += "],\"constraint\":";
    out += config.optimal_curve ? "\"optimal-curve\"" : "null";
    out += ",\"engine\":\"" + engine_name(config.engine) + "\"";
    out += ",\"cutoffs\":{\"n_a_max\":" + std::to_string(config.cutoffs.n_a_max) +
           ",\"n_b_max\":" + std::to_string(config.cutoffs.n_b_max) +
           ",\"n_c_max\":" + std::to_string(config.cutoffs.n_c_max) + "}";
    out += ",\"convergence\":{\"enabled\":";
    out += config.convergence.enabled ? "true" : "false";
    out += ",\"rel_tol\":";
    append_double(out, config.convergence.rel_tol);
    out += "}}";
    return out;
}

} // namespace

void emit_json(const SweepResult& result, std::ostream& out) {
    std::string text = "{\"metadata\":{\"version\":\"";
    text += json_escape(result.version);
    text += "\",\"wall_seconds\":";
    append_double(text, result.wall_seconds);
    text += ",\"config\":";
    text += config_to_json(result.config);
    text += "},\"rows\":[";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const SweepRow& row = result.rows[i];
        if (i > 0) text += ',';
        text += "{\"swept\":{";
        for (std::size_t ax = 0; ax < row.swept.size(); ++ax) {
            if (ax > 0) text += ',';
            text += '"';
            text += json_escape(result.config.axes[ax].name);
            text += "\":";
            append_double(text, row.swept[ax]);
        }
        text += "},";
        const CorrelationReport& r = row.report;
        const struct { const char* name; const std::optional<double>* value; } fields[] = {
            {"n_a", &r.n_a},   {"n_b", &r.n_b},   {"n_c", &r.n_c},   {"n_D", &r.n_D},
            {"g2_a", &r.g2_a}, {"g2_b", &r.g2_b}, {"g2_c", &r.g2_c}, {"g2_D", &r.g2_D},
            {"g2_bc", &r.g2_bc}, {"g2_ab", &r.g2_ab}, {"g2_ac", &r.g2_ac},
            {"residual", &row.residual}};
        for (const auto& f : fields) {
            emit_json_report_field(text, f.name, *f.value);
            text += ',';
        }
        text += "\"cutoffs\":[" + std::to_string(row.cutoffs_used.n_a_max) + ',' +
                std::to_string(row.cutoffs_used.n_b_max) + ',' +
                std::to_string(row.cutoffs_used.n_c_max) + "],";
        text += "\"error\":";
        if (row.error.empty()) {
            text += "null";
        } else {
            text += '"' + json_escape(row.error) + '"';
        }
        text += '}';
    }
    text += "]}\n";
    out << text;
}

void emit_to_file(const SweepResult& result, const std::string& format,
                  const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("emit: cannot open \"" + path + "\" for writing");
    }
    if (format == "csv") {
        emit_csv(result, file);
    } else if (format == "json") {
        emit_json(result, file);
    } else {
        throw InvalidConfig("emit: format must be csv or json");
    }
    if (!file.good()) {
        throw std::runtime_error("emit: write to \"" + path + "\" failed");
    }
}

} // namespace nopo
