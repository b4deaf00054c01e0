#ifndef QMES_JSON_IO_H_
#define QMES_JSON_IO_H_

#include <string>

#include <json.hpp>

#include "qmes/classify.h"
#include "qmes/protocol.h"
#include "qmes/sep.h"

namespace qmes {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// Malformed input file; the message names the offending field.
class InputError : public DomainError {
 public:
  using DomainError::DomainError;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);
Json matrix_to_json(const Mat3& m);
Mat3 matrix_from_json(const Json& j, const std::string& field);
Json coords_to_json(const Coords& c);
Json weights_to_json(const ProbabilityVector& p);
Json seed_to_json(const SeedParams& p);
SeedParams seed_from_json(const Json& j, const std::string& field = "seed");

/// {"schema_version": "1", "seed": {...}, "g": [three matrices], "metadata": {...}}
Json state_to_json(const GenericState& s, const Json& metadata = Json::object());
/// Validates schema and the GenericState invariants (invertible factors).
GenericState state_from_json(const Json& j);

GenericState read_state_file(const std::string& path);
void write_state_file(const std::string& path, const GenericState& s, const Json& metadata = Json::object());
Json read_json_file(const std::string& path);

Json to_json(const GenericityReport& r);
Json to_json(const StandardForm& f);
Json to_json(const SepFeasibility& f);
Json to_json(const Classification& c);
Json to_json(const AuditReport& r);
Json to_json(const KrausSet& k);
Json to_json(const LoccProtocol& p);
Json to_json(const SepMap& m);
Json to_json(const BranchReport& r, bool include_vectors = false);

/// Protocol JSON as written by to_json(LoccProtocol).
LoccProtocol protocol_from_json(const Json& j);
SepMap sep_map_from_json(const Json& j);

}  // namespace qmes

#endif  // QMES_JSON_IO_H_
