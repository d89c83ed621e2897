#pragma once

#include "rtorsion/symplectic.hpp"
#include "rtorsion/torsion.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace rtorsion {

// Malformed input: bad JSON, bad rational literal, shape mismatch. The CLI
// maps this to exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json matrix_to_json(const Matrix& m);
// Shape recovered from the nesting; a 0-row matrix needs expected_cols.
Matrix matrix_from_json(const nlohmann::json& j, const std::string& context);
Matrix matrix_from_json(const nlohmann::json& j, std::size_t expected_rows,
                        std::size_t expected_cols, const std::string& context);

struct InstanceFile {
  std::string format_version = "1";
  ChainComplex complex;
  std::optional<std::vector<Matrix>> pairings;  // present => symplectic
  std::optional<BasisFamily> chain_bases;
  std::optional<BasisFamily> homology_bases;

  bool is_symplectic() const { return pairings.has_value(); }
  SymplecticComplex symplectic() const;
};

nlohmann::json instance_to_json(const InstanceFile& f);
// Accepts "pairings" of length n+1, or n/2+1 with the rest derived from
// antisymmetry. Validates the payload (throws ParseError on shape problems;
// validator violations are left to the caller).
InstanceFile instance_from_json(const nlohmann::json& j);

std::string canonical_dump(const nlohmann::json& j);  // sorted keys, compact

nlohmann::json ses_to_json(const ShortExactSequence& s);
ShortExactSequence ses_from_json(const nlohmann::json& j);

nlohmann::json torsion_report_to_json(const TorsionReport& r);

// FNV-1a 64-bit content digest used in run reports.
std::string digest(const std::string& bytes);

}  // namespace rtorsion
