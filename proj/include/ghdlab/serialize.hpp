#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ghdlab/bitstring.hpp"
#include "ghdlab/concentration.hpp"
#include "ghdlab/evaluation.hpp"
#include "ghdlab/protocol.hpp"
#include "ghdlab/reductions.hpp"
#include "ghdlab/round_elim.hpp"
#include "ghdlab/sphere.hpp"
#include "ghdlab/streaming.hpp"

namespace ghdlab {

using json = nlohmann::json;

inline constexpr const char* kResultSchema = "ghdlab.result/1";

/// Library version, with the git revision when the build knew it.
const char* version();

std::string base64_encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

void to_json(json& j, const BitString& x);          // {"n": n, "hex": "..."}
void from_json(const json& j, BitString& x);
json sphere_to_json(const SphereVector& x);          // coordinate array
SphereVector sphere_from_json(const json& j);
void to_json(json& j, const HyperplaneSketchSeed& s);
void from_json(const json& j, HyperplaneSketchSeed& s);

void to_json(json& j, const Rational& r);
void to_json(json& j, const ErrorReport& r);
void to_json(json& j, const EliminationReport& r);
void to_json(json& j, const BoundCheck& c);
void to_json(json& j, const GapTransferReport& r);
void to_json(json& j, const C0Calibration& c);
void to_json(json& j, const PassRun& r);
void to_json(json& j, const AccuracyReport& r);

class ProtocolFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Table protocol as JSON: name, domain_size, output_party, rounds with
/// speaker/bits and a base64 table of little-endian uint32 messages, and a
/// base64 output table of bytes.
json table_protocol_to_json(const TableProtocol& p);
TableProtocol table_protocol_from_json(const json& j);

/// A protocol file: either a table protocol or a named builtin
/// {"builtin": "trivial" | "constant0" | "sampling", "n": .., "gamma": .., "m": ..}.
struct ProtocolSpec {
  std::optional<TableProtocol> table;
  std::optional<PublicCoinProtocol<BitString>> coin;
  std::size_t n = 0;  // cube dimension
};
ProtocolSpec protocol_from_json(const json& j);

/// Self-describing output record.
json result_record(const std::string& kind, const json& config, const json& payload);

// CSV rows.
std::string error_reports_csv(const std::vector<ErrorReport>& reports);
std::string bound_checks_csv(const std::vector<BoundCheck>& checks);
std::string calibration_csv(const C0Calibration& c);
std::string accuracy_csv(const AccuracyReport& r);

}  // namespace ghdlab
