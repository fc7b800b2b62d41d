#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "posred/monotone.hpp"
#include "posred/pipeline.hpp"
#include "posred/possys.hpp"

namespace posred::cli {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

/// Malformed JSON or a document that does not match the expected schema.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json matrix_to_json(const Matrix& m);
/// Row-major nested array; every row must have the same length.
Matrix matrix_from_json(const json& j, const std::string& what);

std::string_view to_string(TimeDomain td) noexcept;
TimeDomain time_domain_from_string(const std::string& s);

/// System file: {"A": [[..]], "B": [[..]], "C": [[..]]?, "time_domain": "discrete"?}.
/// A missing C defaults to the identity; shapes are checked, signs are not.
StateSpace state_space_from_json(const json& j);
json state_space_to_json(const StateSpace& s);

/// Parses and enforces positivity (NotPositive propagates as posred::Error).
PositiveLtiSystem system_from_json(const json& j, const Tolerances& tol);

json report_to_json(const ReductionReport& r);
json certificate_to_json(const MonotoneCertificate& c, std::string_view method);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace posred::cli
