#include "imc/cli/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace imc::cli {

using nlohmann::json;
using nlohmann::ordered_json;

double report_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

Distribution numbers(const json& j, const std::string& where) {
    if (!j.is_array()) {
        parse_fail(where + ": expected an array of numbers");
    }
    Distribution out;
    for (const auto& v : j) {
        if (!v.is_number()) {
            parse_fail(where + ": expected an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<Distribution> number_lists(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) {
        parse_fail(where + ": expected a non-empty array of arrays");
    }
    std::vector<Distribution> out;
    for (const auto& v : j) {
        out.push_back(numbers(v, where));
    }
    return out;
}

std::vector<std::string> label_list(const json& j, const std::string& where) {
    if (!j.is_array()) {
        parse_fail(where + ": expected an array of state labels");
    }
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) {
            parse_fail(where + ": expected an array of state labels");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

CredalRow parse_row(const json& spec, const std::string& label, std::size_t n) {
    const std::string where = "row '" + label + "'";
    if (!spec.is_object() || spec.size() != 1) {
        parse_fail(where + ": expected exactly one of \"vertices\" or \"interval\"");
    }
    try {
        if (spec.contains("vertices")) {
            auto v = number_lists(spec["vertices"], where);
            for (const auto& p : v) {
                if (p.size() != n) {
                    parse_fail(where + ": vertex length differs from the state count");
                }
            }
            return CredalRow::from_vertices(std::move(v), 1e-9);
        }
        if (spec.contains("interval")) {
            const auto& iv = spec["interval"];
            if (!iv.is_object() || !iv.contains("lower") || !iv.contains("upper")) {
                parse_fail(where + ": interval needs \"lower\" and \"upper\"");
            }
            auto lo = numbers(iv["lower"], where);
            auto hi = numbers(iv["upper"], where);
            if (lo.size() != n || hi.size() != n) {
                parse_fail(where + ": bound length differs from the state count");
            }
            return CredalRow::from_interval(std::move(lo), std::move(hi));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) {
            throw;
        }
        throw Error(e.kind(), where + ": " + e.what());
    }
    parse_fail(where + ": expected \"vertices\" or \"interval\"");
}

Distribution rounded(const Distribution& v) {
    Distribution out;
    for (double x : v) {
        out.push_back(report_number(x));
    }
    return out;
}

std::vector<Distribution> rounded(const std::vector<Distribution>& vs) {
    std::vector<Distribution> out;
    for (const auto& v : vs) {
        out.push_back(rounded(v));
    }
    return out;
}

ordered_json row_to_json(const CredalRow& row) {
    ordered_json out;
    if (const auto* v = std::get_if<VertexRow>(&row.form())) {
        out["vertices"] = rounded(v->vertices);
    } else {
        const auto& r = std::get<IntervalRow>(row.form());
        out["interval"] = {{"lower", rounded(r.lower)}, {"upper", rounded(r.upper)}};
    }
    return out;
}

} // namespace

void apply_config(Config& cfg, const json& overrides) {
    if (!overrides.is_object()) {
        parse_fail("config: expected an object");
    }
    for (const auto& [key, value] : overrides.items()) {
        auto real = [&]() {
            if (!value.is_number()) {
                parse_fail("config." + key + ": expected a number");
            }
            return value.get<double>();
        };
        auto count = [&]() -> std::size_t {
            if (!value.is_number_integer() || value.get<long long>() <= 0) {
                parse_fail("config." + key + ": expected a positive integer");
            }
            return value.get<std::size_t>();
        };
        if (key == "eps_pos") {
            cfg.eps_pos = real();
        } else if (key == "eps_one") {
            cfg.eps_one = real();
        } else if (key == "eps_conv") {
            cfg.eps_conv = real();
        } else if (key == "max_iter") {
            cfg.max_iter = count();
        } else if (key == "max_strong_states") {
            cfg.max_strong_states = count();
        } else if (key == "max_power_r") {
            cfg.max_power_r = count();
        } else if (key == "max_vertices") {
            cfg.max_vertices = count();
        } else {
            parse_fail("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
}

ordered_json config_to_json(const Config& cfg) {
    return ordered_json{
        {"eps_pos", cfg.eps_pos},
        {"eps_one", cfg.eps_one},
        {"eps_conv", cfg.eps_conv},
        {"max_iter", cfg.max_iter},
        {"max_strong_states", cfg.max_strong_states},
        {"max_power_r", cfg.max_power_r},
        {"max_vertices", cfg.max_vertices},
    };
}

IefHandle parse_initial_json(const StateSpace& space, const json& spec) {
    const std::size_t n = space.size();
    if (!spec.is_object() || spec.size() != 1) {
        parse_fail("initial: expected exactly one of precise, vertices, interval, vacuous_on");
    }
    if (spec.contains("precise")) {
        auto m = numbers(spec["precise"], "initial.precise");
        if (m.size() != n) {
            parse_fail("initial.precise: length differs from the state count");
        }
        return IefHandle::precise(std::move(m));
    }
    if (spec.contains("vertices")) {
        auto v = number_lists(spec["vertices"], "initial.vertices");
        for (const auto& p : v) {
            if (p.size() != n) {
                parse_fail("initial.vertices: length differs from the state count");
            }
        }
        return IefHandle::vertex_set(std::move(v));
    }
    if (spec.contains("interval")) {
        const auto& iv = spec["interval"];
        if (!iv.is_object() || !iv.contains("lower") || !iv.contains("upper")) {
            parse_fail("initial.interval: needs \"lower\" and \"upper\"");
        }
        auto lo = numbers(iv["lower"], "initial.interval");
        auto hi = numbers(iv["upper"], "initial.interval");
        if (lo.size() != n || hi.size() != n) {
            parse_fail("initial.interval: length differs from the state count");
        }
        return IefHandle::interval_set(std::move(lo), std::move(hi));
    }
    if (spec.contains("vacuous_on")) {
        return IefHandle::vacuous_on(n, space.subset(label_list(spec["vacuous_on"], "initial.vacuous_on")));
    }
    parse_fail("initial: unknown form");
}

namespace {

ordered_json initial_to_json(const StateSpace& space, const IefHandle& e) {
    ordered_json out;
    if (const auto* p = std::get_if<PreciseIef>(&e.form())) {
        out["precise"] = rounded(p->mass);
    } else if (const auto* v = std::get_if<VertexSetIef>(&e.form())) {
        out["vertices"] = rounded(v->set.vertices);
    } else if (const auto* iv = std::get_if<IntervalSetIef>(&e.form())) {
        out["interval"] = {{"lower", rounded(iv->set.lower)}, {"upper", rounded(iv->set.upper)}};
    } else if (const auto* vac = std::get_if<VacuousIef>(&e.form())) {
        out["vacuous_on"] = space.labels_of(vac->on);
    } else {
        parse_fail("initial: only explicit functionals can be serialized");
    }
    return out;
}

} // namespace

IefHandle parse_initial(const StateSpace& space, const std::string& spec) {
    if (!spec.empty() && spec.front() == '{') {
        json doc;
        try {
            doc = json::parse(spec);
        } catch (const json::exception& e) {
            parse_fail(std::string("initial: ") + e.what());
        }
        return parse_initial_json(space, doc);
    }
    if (spec == "vacuous") {
        return IefHandle::vacuous_on(space.size(), space.full_set());
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        parse_fail("initial: expected vacuous, vacuous_on:<labels>, point:<label> or precise:<values>");
    }
    const auto kind = spec.substr(0, colon);
    const auto rest = spec.substr(colon + 1);
    if (kind == "vacuous_on") {
        return IefHandle::vacuous_on(space.size(), space.subset(split(rest, ',')));
    }
    if (kind == "point") {
        return IefHandle::point_mass(space.size(), space.index_of(rest));
    }
    if (kind == "precise") {
        Distribution m;
        for (const auto& item : split(rest, ',')) {
            char* end = nullptr;
            m.push_back(std::strtod(item.c_str(), &end));
            if (end == item.c_str() || *end != '\0') {
                parse_fail("initial: bad number '" + item + "'");
            }
        }
        if (m.size() != space.size()) {
            parse_fail("initial: length differs from the state count");
        }
        return IefHandle::precise(std::move(m));
    }
    parse_fail("initial: unknown form '" + kind + "'");
}

Gamble parse_gamble(const StateSpace& space, const std::string& spec) {
    const std::string prefix = "indicator:";
    if (spec.rfind(prefix, 0) == 0) {
        return indicator(space, split(spec.substr(prefix.size()), ','));
    }
    std::vector<double> values;
    for (const auto& item : split(spec, ',')) {
        char* end = nullptr;
        values.push_back(std::strtod(item.c_str(), &end));
        if (end == item.c_str() || *end != '\0') {
            parse_fail("gamble: bad number '" + item + "'");
        }
    }
    if (values.size() != space.size()) {
        parse_fail("gamble: expected " + std::to_string(space.size()) + " values");
    }
    return Gamble(std::move(values));
}

Model parse_model(const json& doc) {
    if (!doc.is_object()) {
        parse_fail("model: expected a JSON object");
    }
    if (doc.contains("schema") && doc["schema"] != kModelSchema) {
        parse_fail("model: unsupported schema");
    }
    if (!doc.contains("states") || !doc.contains("rows")) {
        parse_fail("model: \"states\" and \"rows\" are required");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "schema" && key != "states" && key != "rows" && key != "initial" && key != "config") {
            parse_fail("model: unknown key '" + key + "'");
        }
    }
    StateSpace space = [&] {
        try {
            return StateSpace(label_list(doc["states"], "states"));
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError) {
                throw;
            }
            parse_fail(std::string("states: ") + e.what());
        }
    }();
    const auto& rows = doc["rows"];
    if (!rows.is_object()) {
        parse_fail("rows: expected an object keyed by state label");
    }
    for (const auto& [key, value] : rows.items()) {
        space.index_of(key); // UnknownState for stray labels
    }
    std::vector<CredalRow> parsed;
    for (const auto& label : space.labels()) {
        if (!rows.contains(label)) {
            parse_fail("rows: missing row for state '" + label + "'");
        }
        parsed.push_back(parse_row(rows[label], label, space.size()));
    }
    Model model{Ito(space, std::move(parsed)), std::nullopt, nullptr};
    if (doc.contains("initial")) {
        model.initial = parse_initial_json(space, doc["initial"]);
        model.initial_spec = initial_to_json(space, *model.initial);
    }
    if (doc.contains("config")) {
        Config probe;
        apply_config(probe, doc["config"]);
        model.config_overrides = doc["config"];
    }
    return model;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        parse_fail("cannot open model file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        parse_fail(std::string("model: ") + e.what());
    }
    return parse_model(doc);
}

ordered_json model_to_json(const Model& model) {
    const auto& space = model.ito.space();
    ordered_json out;
    out["schema"] = kModelSchema;
    out["states"] = space.labels();
    ordered_json rows = ordered_json::object();
    for (std::size_t x = 0; x < space.size(); ++x) {
        rows[space.label(x)] = row_to_json(model.ito.row(x));
    }
    out["rows"] = rows;
    if (model.initial) {
        out["initial"] = model.initial_spec;
    }
    if (!model.config_overrides.empty()) {
        out["config"] = model.config_overrides;
    }
    return out;
}

} // namespace imc::cli
