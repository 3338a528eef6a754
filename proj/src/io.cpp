#include "phaseforge/io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace phaseforge {

namespace {

using nlohmann::json;

json require_field(const json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return doc.at(key);
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + " must be a number");
    return v.get<double>();
}

Vector as_vector(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) throw ParseError(where + " must be a non-empty array of numbers");
    Vector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix as_matrix(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) throw ParseError(where + " must be a non-empty array of rows");
    std::vector<Vector> rows;
    rows.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back(as_vector(v[i], where + "[" + std::to_string(i) + "]"));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw ParseError(where + " rows have unequal lengths");
    return Matrix::from_rows(rows);
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

json vector_to_json(const Vector& v) { return json(v); }

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

RealizationDocument parse_realization_document(const std::string& json_text) {
    const json doc = parse_json(json_text);
    if (!doc.is_object()) throw ParseError("realization document must be a JSON object");

    const json kind_field = require_field(doc, "kind");
    if (!kind_field.is_string()) throw ParseError("\"kind\" must be \"continuous\" or \"discrete\"");
    const std::string kind_name = kind_field.get<std::string>();
    RealizationDocument out;
    if (kind_name == "continuous")
        out.kind = SystemKind::continuous;
    else if (kind_name == "discrete")
        out.kind = SystemKind::discrete;
    else
        throw ParseError("\"kind\" must be \"continuous\" or \"discrete\", got \"" + kind_name + "\"");

    out.A = as_matrix(require_field(doc, "A"), "A");
    out.B = as_vector(require_field(doc, "B"), "B");
    out.C = as_vector(require_field(doc, "C"), "C");
    if (!out.A.square() || out.A.rows() != out.B.size() || out.B.size() != out.C.size())
        throw ParseError("A must be n x n with B and C of length n");
    return out;
}

Realization parse_realization(const std::string& json_text) {
    const RealizationDocument doc = parse_realization_document(json_text);
    return Realization(doc.kind, doc.A, doc.B, doc.C);
}

std::string realization_to_json(const Realization& r) {
    json doc;
    doc["kind"] = r.kind() == SystemKind::continuous ? "continuous" : "discrete";
    doc["A"] = matrix_to_json(r.A());
    doc["B"] = vector_to_json(r.B());
    doc["C"] = vector_to_json(r.C());
    return doc.dump(2) + "\n";
}

std::string transform_to_json(const TransformResult& tr) {
    const bool continuous = tr.kind == SystemKind::continuous;
    json doc;
    doc["psi"] = tr.psi;
    doc["alpha_raw"] = vector_to_json(tr.alpha_raw);
    doc["alpha_star"] = vector_to_json(tr.alpha_star);
    doc["T"] = matrix_to_json(tr.T);
    doc["t"] = vector_to_json(tr.exit);
    json sim;
    if (continuous) {
        sim["U"] = vector_to_json(tr.scale);
        sim["nu"] = vector_to_json(tr.nu);
    } else {
        sim["M"] = vector_to_json(tr.scale);
        sim["z"] = vector_to_json(tr.z);
    }
    doc["similarity"] = sim;
    json checks;
    checks[continuous ? "metzler" : "nonneg"] = tr.checks.structure;
    checks["excitable"] = tr.checks.excitable;
    checks["stable"] = tr.checks.stable;
    checks["exit_identity_residual"] = tr.checks.exit_identity_residual;
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

TransformResult parse_transform(const std::string& json_text) {
    const json doc = parse_json(json_text);
    if (!doc.is_object()) throw ParseError("transform document must be a JSON object");

    TransformResult tr;
    const json sim = require_field(doc, "similarity");
    if (sim.contains("U") && sim.contains("nu")) {
        tr.kind = SystemKind::continuous;
        tr.scale = as_vector(sim.at("U"), "similarity.U");
        tr.nu = as_vector(sim.at("nu"), "similarity.nu");
    } else if (sim.contains("M") && sim.contains("z")) {
        tr.kind = SystemKind::discrete;
        tr.scale = as_vector(sim.at("M"), "similarity.M");
        tr.z = as_vector(sim.at("z"), "similarity.z");
    } else {
        throw ParseError("similarity must carry either U/nu or M/z");
    }

    tr.psi = as_number(require_field(doc, "psi"), "psi");
    tr.alpha_raw = as_vector(require_field(doc, "alpha_raw"), "alpha_raw");
    tr.alpha_star = as_vector(require_field(doc, "alpha_star"), "alpha_star");
    tr.T = as_matrix(require_field(doc, "T"), "T");
    tr.exit = as_vector(require_field(doc, "t"), "t");

    const json checks = require_field(doc, "checks");
    const char* structure_key = tr.kind == SystemKind::continuous ? "metzler" : "nonneg";
    tr.checks.structure = require_field(checks, structure_key).get<bool>();
    tr.checks.excitable = require_field(checks, "excitable").get<bool>();
    tr.checks.stable = require_field(checks, "stable").get<bool>();
    tr.checks.exit_identity_residual =
        as_number(require_field(checks, "exit_identity_residual"), "checks.exit_identity_residual");

    const std::size_t n = tr.alpha_raw.size();
    if (tr.alpha_star.size() != n || tr.exit.size() != n || !tr.T.square() || tr.T.rows() != n)
        throw ParseError("transform document dimensions disagree");

    try {
        if (tr.kind == SystemKind::continuous)
            tr.cph.emplace(tr.alpha_star, tr.T, tr.exit);
        else
            tr.dph.emplace(tr.alpha_star, tr.T, tr.exit);
    } catch (const Error& e) {
        throw ParseError(std::string("transform document is not a valid phase-type representation: ") + e.what());
    }
    return tr;
}

std::string csv_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string transform_to_csv(const TransformResult& tr) {
    const bool continuous = tr.kind == SystemKind::continuous;
    std::ostringstream out;
    out << "key,value\n";
    out << "psi," << csv_number(tr.psi) << "\n";
    const std::size_t n = tr.alpha_raw.size();
    for (std::size_t i = 0; i < n; ++i)
        out << "alpha_raw." << (i + 1) << "," << csv_number(tr.alpha_raw[i]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        out << "alpha_star." << (i + 1) << "," << csv_number(tr.alpha_star[i]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out << "T." << (i + 1) << "." << (j + 1) << "," << csv_number(tr.T(i, j)) << "\n";
    for (std::size_t i = 0; i < n; ++i) out << "t." << (i + 1) << "," << csv_number(tr.exit[i]) << "\n";
    const char* scale_name = continuous ? "U" : "M";
    for (std::size_t i = 0; i < n; ++i)
        out << "similarity." << scale_name << "." << (i + 1) << "," << csv_number(tr.scale[i]) << "\n";
    const Vector& direction = continuous ? tr.nu : tr.z;
    const char* direction_name = continuous ? "nu" : "z";
    for (std::size_t i = 0; i < direction.size(); ++i)
        out << "similarity." << direction_name << "." << (i + 1) << "," << csv_number(direction[i]) << "\n";
    out << "checks." << (continuous ? "metzler" : "nonneg") << "," << (tr.checks.structure ? 1 : 0) << "\n";
    out << "checks.excitable," << (tr.checks.excitable ? 1 : 0) << "\n";
    out << "checks.stable," << (tr.checks.stable ? 1 : 0) << "\n";
    out << "checks.exit_identity_residual," << csv_number(tr.checks.exit_identity_residual) << "\n";
    return out.str();
}

}  // namespace phaseforge
