#pragma once

// File formats: operator/channel/algebra JSON, subgroup text files,
// character-matrix CSV, and certificate JSON.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "privsub/algebra.hpp"
#include "privsub/channel.hpp"
#include "privsub/constructions.hpp"
#include "privsub/group.hpp"
#include "privsub/privacy.hpp"

namespace privsub {

using Json = nlohmann::ordered_json;

/// {"n": N, "re": [[...]], "im": [[...]]}
Json operator_to_json(const DenseOperator& m);
DenseOperator operator_from_json(const Json& j);

/// {"kraus": [operator, ...]}
Json channel_to_json(const Channel& phi);
Channel channel_from_json(const Json& j);

/// {"basis": [operator, ...]}
Json algebra_to_json(const OperatorAlgebra& a);
OperatorAlgebra algebra_from_json(const Json& j);

/// Header "d=<d> n=<n>" followed by one Pauli string per line. Phases are
/// dropped on read; the listed classes are closed into a subgroup.
void write_subgroup(std::ostream& os, const PauliSubgroup& g);
PauliSubgroup read_subgroup(std::istream& is);

/// Parses "d=<d> n=<n>".
std::pair<int, int> parse_header(std::string_view line);

/// Exponents k of w^k; header row holds the class strings.
void write_character_csv(std::ostream& os, const CharacterMatrix& m);

Json structure_to_json(const StructureType& type);
Json certificate_to_json(const PrivacyCertificate& cert, const Json& inputs);
Json quasiorth_report_to_json(const QuasiorthReport& report);
Json demo_report_to_json(const QutritDemoReport& report);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string content_hash(std::string_view bytes);

/// Reads a whole file into a JSON value; throws InputError.
Json read_json_file(const std::string& path);

}  // namespace privsub
