#ifndef EULER_GAUSS_SCHEMA_HPP
#define EULER_GAUSS_SCHEMA_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace euler_gauss {

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Published schemas: run_config, sequence, gamma_report, gamma_scan, certificate, classify,
/// mc_verify, evolve, mc_manifest.
const nlohmann::json& schema(std::string_view name);
std::vector<std::string> schema_names();

/// Validates against the draft-07 subset used by the published schemas: type, enum, const,
/// properties, required, additionalProperties, items, minItems, maxItems, minimum, maximum,
/// exclusiveMinimum, pattern, oneOf, anyOf and local $ref. Returns "path: message" strings.
std::vector<std::string> validate(const nlohmann::json& instance, const nlohmann::json& schema);

/// Throws SchemaError listing every violation.
void require_valid(const nlohmann::json& instance, std::string_view schema_name);

}  // namespace euler_gauss

#endif  // EULER_GAUSS_SCHEMA_HPP
