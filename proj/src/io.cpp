#include "adjpair/io.hpp"

#include <fstream>
#include <sstream>

#include "adjpair/error.hpp"

namespace adjpair {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::SchemaError, "cli", path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, "missing field '" + key + "'");
    return *it;
}

const json* optional_field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) schema_error(path, "expected an object");
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_real(const json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<std::int64_t>();
}

std::size_t as_index(const json& j, const std::string& path) {
    const auto v = as_integer(j, path);
    if (v < 1) schema_error(path, "expected an integer >= 1");
    return static_cast<std::size_t>(v);
}

// A number or [re, im].
cplx as_complex(const json& j, const std::string& path) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    schema_error(path, "expected a number or [re, im]");
}

PowerRule as_rule(const json* j, const std::string& path) {
    PowerRule r;
    if (!j) return r;
    if (auto* v = optional_field(*j, "offset", path)) r.offset = as_real(*v, path + ".offset");
    if (auto* v = optional_field(*j, "scale", path)) r.scale = as_real(*v, path + ".scale");
    if (auto* v = optional_field(*j, "power", path)) r.power = as_real(*v, path + ".power");
    return r;
}

AtomGenerator parse_generator(const json& g) {
    const std::string path = "generator";
    const json& kind_j = field(g, "kind", path);
    if (!kind_j.is_string()) schema_error(path + ".kind", "expected a string");
    const auto kind = kind_j.get<std::string>();
    const double eps = as_real(field(g, "eps", path), path + ".eps");
    std::optional<double> growth;
    if (auto* v = optional_field(g, "growth", path)) growth = as_real(*v, path + ".growth");

    if (kind == "line") {
        const json& tj = field(g, "t", path);
        ExtendedReal t = ExtendedReal::infinity();
        if (tj.is_string()) {
            if (tj.get<std::string>() != "inf") schema_error(path + ".t", "expected a number or \"inf\"");
        } else {
            t = ExtendedReal::finite(as_real(tj, path + ".t"));
        }
        const double s = as_real(field(g, "s", path), path + ".s");
        return AtomGenerator(LineRule{t, s, as_rule(optional_field(g, "free", path), path + ".free")}, eps, growth);
    }
    if (kind == "shifted_real") {
        const cplx shift = as_complex(field(g, "shift", path), path + ".shift");
        return AtomGenerator(ShiftedRealRule{shift, as_rule(optional_field(g, "abscissa", path), path + ".abscissa")},
                             eps, growth);
    }
    if (kind == "generic") {
        GenericRule r;
        r.re = as_rule(&field(g, "re", path), path + ".re");
        r.im = as_rule(&field(g, "im", path), path + ".im");
        if (auto* v = optional_field(g, "rotation", path)) r.rotation = as_real(*v, path + ".rotation");
        return AtomGenerator(r, eps, growth);
    }
    schema_error(path + ".kind", "unknown generator kind '" + kind + "'");
}

ModelVector parse_xi(const json& x) {
    const std::string path = "xi";
    ModelVector v;
    const json* finite = optional_field(x, "finite", path);
    const json* tails = optional_field(x, "tails", path);
    if (!finite && !tails) schema_error(path, "needs 'finite' or 'tails'");
    if (finite) {
        if (!finite->is_array()) schema_error(path + ".finite", "expected an array");
        for (std::size_t i = 0; i < finite->size(); ++i) {
            const std::string p = path + ".finite[" + std::to_string(i) + "]";
            const json& e = (*finite)[i];
            const std::size_t k = as_index(field(e, "k", p), p + ".k");
            v.set_finite(k, as_complex(field(e, "value", p), p + ".value"));
        }
    }
    if (tails) {
        if (!tails->is_array()) schema_error(path + ".tails", "expected an array");
        for (std::size_t i = 0; i < tails->size(); ++i) {
            const std::string p = path + ".tails[" + std::to_string(i) + "]";
            const json& e = (*tails)[i];
            TailTerm t;
            t.coeff = as_complex(field(e, "coeff", p), p + ".coeff");
            t.decay = as_real(field(e, "decay", p), p + ".decay");
            if (auto* s = optional_field(e, "start", p)) t.start = as_index(*s, p + ".start");
            if (auto* d = optional_field(e, "degree", p)) t.degree = static_cast<int>(as_integer(*d, p + ".degree"));
            if (auto* w = optional_field(e, "winding", p)) t.winding = static_cast<int>(as_integer(*w, p + ".winding"));
            v.add_tail(t);
        }
    }
    return v.normalize();
}

Tolerance parse_tolerance(const json* t) {
    Tolerance tol;
    if (!t) return tol;
    const std::string path = "tolerance";
    if (auto* v = optional_field(*t, "inner_product", path)) tol.inner_product = as_real(*v, path + ".inner_product");
    if (auto* v = optional_field(*t, "residual", path)) tol.residual = as_real(*v, path + ".residual");
    if (auto* v = optional_field(*t, "subspace", path)) tol.subspace = as_real(*v, path + ".subspace");
    if (auto* v = optional_field(*t, "n_max", path)) tol.n_max = as_index(*v, path + ".n_max");
    return tol;
}

CMatrix parse_subspace(const json& s) {
    const std::string path = "subspace";
    const json& cols = field(s, "basis", path);
    if (!cols.is_array() || cols.empty()) schema_error(path + ".basis", "expected a non-empty array of columns");
    const std::size_t rows = cols[0].is_array() ? cols[0].size() : 0;
    if (rows == 0) schema_error(path + ".basis", "columns must be non-empty arrays");
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const std::string p = path + ".basis[" + std::to_string(c) + "]";
        if (!cols[c].is_array() || cols[c].size() != rows) schema_error(p, "columns must have equal length");
        for (std::size_t r = 0; r < rows; ++r)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                as_complex(cols[c][r], p + "[" + std::to_string(r) + "]");
    }
    return m;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "cli", e.what());
    }
}

}  // namespace

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

ModelFile parse_model(std::string_view text) {
    const json root = parse_json(text);
    if (!root.is_object()) schema_error("$", "expected an object");
    const auto version = as_integer(field(root, "schema_version", "$"), "schema_version");
    if (version != kSchemaVersion)
        schema_error("schema_version", "unsupported version " + std::to_string(version));

    ModelFile f{"", parse_generator(field(root, "generator", "$")), parse_xi(field(root, "xi", "$")),
                parse_tolerance(optional_field(root, "tolerance", "$")), 42, std::nullopt};
    if (auto* n = optional_field(root, "name", "$")) {
        if (!n->is_string()) schema_error("name", "expected a string");
        f.name = n->get<std::string>();
    }
    if (auto* s = optional_field(root, "seed", "$")) {
        if (!s->is_number_unsigned()) schema_error("seed", "expected a non-negative integer");
        f.seed = s->get<std::uint64_t>();
    }
    if (auto* s = optional_field(root, "subspace", "$")) f.subspace = parse_subspace(*s);
    return f;
}

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cli", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

json to_json(const RunReport& r) {
    json j;
    j["tool_version"] = r.tool_version;
    j["command"] = r.command;
    j["model"] = {{"name", r.model_name}, {"digest", r.model_digest}};
    j["status"] = r.status;
    j["verdicts"] = r.verdicts;
    j["residuals"] = json::array();
    for (const auto& res : r.residuals)
        j["residuals"].push_back({{"name", res.name}, {"value", res.value}, {"bound", res.bound}});
    if (r.timings_ms) j["timings_ms"] = *r.timings_ms;
    if (r.error) j["error"] = {{"kind", r.error->kind}, {"module", r.error->module}, {"message", r.error->message}};
    return j;
}

RunReport report_from_json(const json& j) {
    auto str = [](const json& obj, const char* key, const std::string& path) {
        const json& v = field(obj, key, path);
        if (!v.is_string()) schema_error(path + "." + key, "expected a string");
        return v.get<std::string>();
    };
    RunReport r;
    r.tool_version = str(j, "tool_version", "$");
    r.command = str(j, "command", "$");
    const json& model = field(j, "model", "$");
    r.model_name = str(model, "name", "model");
    r.model_digest = str(model, "digest", "model");
    r.status = str(j, "status", "$");
    r.verdicts = field(j, "verdicts", "$");
    const json& res = field(j, "residuals", "$");
    if (!res.is_array()) schema_error("residuals", "expected an array");
    for (std::size_t i = 0; i < res.size(); ++i) {
        const std::string p = "residuals[" + std::to_string(i) + "]";
        r.residuals.push_back({str(res[i], "name", p), as_real(field(res[i], "value", p), p + ".value"),
                               as_real(field(res[i], "bound", p), p + ".bound")});
    }
    if (auto* t = optional_field(j, "timings_ms", "$")) {
        std::map<std::string, double> timings;
        if (!t->is_object()) schema_error("timings_ms", "expected an object");
        for (const auto& [k, v] : t->items()) timings[k] = as_real(v, "timings_ms." + k);
        r.timings_ms = std::move(timings);
    }
    if (auto* e = optional_field(j, "error", "$"))
        r.error = ErrorInfo{str(*e, "kind", "error"), str(*e, "module", "error"), str(*e, "message", "error")};
    return r;
}

std::string emit_report(const RunReport& report) { return to_json(report).dump(2) + "\n"; }

RunReport parse_report(std::string_view text) { return report_from_json(parse_json(text)); }

}  // namespace adjpair
