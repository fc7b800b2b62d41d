#include "posred/cli/system_io.hpp"

#include <fstream>
#include <sstream>

namespace posred::cli {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) {
        throw ParseError(what + ": expected a 2-D array");
    }
    const auto rows = static_cast<Index>(j.size());
    if (rows == 0) {
        return Matrix(0, 0);
    }
    if (!j[0].is_array()) {
        throw ParseError(what + ": expected a 2-D array");
    }
    const auto cols = static_cast<Index>(j[0].size());
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ParseError(what + ": rows have inconsistent lengths");
        }
        for (Index c = 0; c < cols; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) {
                throw ParseError(what + ": entries must be numbers");
            }
            m(i, c) = v.get<double>();
        }
    }
    return m;
}

std::string_view to_string(TimeDomain td) noexcept {
    return td == TimeDomain::Discrete ? "discrete" : "continuous";
}

TimeDomain time_domain_from_string(const std::string& s) {
    if (s == "discrete") {
        return TimeDomain::Discrete;
    }
    if (s == "continuous") {
        return TimeDomain::Continuous;
    }
    throw ParseError("time_domain must be \"discrete\" or \"continuous\"");
}

StateSpace state_space_from_json(const json& j) {
    if (!j.is_object()) {
        throw ParseError("system file must be a JSON object");
    }
    if (!j.contains("A") || !j.contains("B")) {
        throw ParseError("system file requires fields A and B");
    }
    StateSpace s;
    s.A = matrix_from_json(j.at("A"), "A");
    s.B = matrix_from_json(j.at("B"), "B");
    if (j.contains("C") && !j.at("C").is_null()) {
        s.C = matrix_from_json(j.at("C"), "C");
    } else {
        s.C = Matrix::Identity(s.A.rows(), s.A.rows());
    }
    if (j.contains("time_domain") && !j.at("time_domain").is_null()) {
        if (!j.at("time_domain").is_string()) {
            throw ParseError("time_domain must be a string");
        }
        s.time_domain = time_domain_from_string(j.at("time_domain").get<std::string>());
    }
    // An n x 0 matrix serializes as n empty rows; an empty B parses as 0 x 0.
    if (s.B.rows() == 0 && s.A.rows() > 0) {
        throw ParseError("B must have one row per state");
    }
    try {
        s.validate_shapes();
    } catch (const Error& e) {
        throw ParseError(std::string("inconsistent system: ") + e.what());
    }
    return s;
}

json state_space_to_json(const StateSpace& s) {
    return json{{"A", matrix_to_json(s.A)},
                {"B", matrix_to_json(s.B)},
                {"C", matrix_to_json(s.C)},
                {"time_domain", std::string(to_string(s.time_domain))}};
}

PositiveLtiSystem system_from_json(const json& j, const Tolerances& tol) {
    return PositiveLtiSystem(state_space_from_json(j), tol);
}

json report_to_json(const ReductionReport& r) {
    json out;
    out["schema_version"] = kReportSchemaVersion;
    out["method"] = std::string(to_string(r.method));
    out["space"] = std::string(to_string(r.space));
    out["original_dim"] = r.original_dim;
    out["reduced_dim"] = r.reduced_dim;
    out["J"] = r.factorization ? matrix_to_json(r.factorization->J) : json(nullptr);
    out["Jdag"] = r.factorization ? matrix_to_json(r.factorization->Jdag) : json(nullptr);
    out["reduced_system"] = r.reduced_system ? state_space_to_json(*r.reduced_system) : json(nullptr);
    out["verification"] = json{{"markov_match", r.verification.markov_match},
                               {"positivity", r.verification.positivity},
                               {"horizon", r.verification.horizon}};
    out["diagnostics"] = r.diagnostics;
    return out;
}

json certificate_to_json(const MonotoneCertificate& c, std::string_view method) {
    json out;
    out["monotone"] = c.monotone;
    out["method"] = std::string(method);
    out["left_inverse"] = c.nonneg_left_inverse ? matrix_to_json(*c.nonneg_left_inverse) : json(nullptr);
    out["orthogonal_rows"] = c.orthogonal_row_set ? json(*c.orthogonal_row_set) : json(nullptr);
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ParseError("cannot write " + path.string());
    }
    out << text;
}

}  // namespace posred::cli
