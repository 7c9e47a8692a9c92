#pragma once

#include "dcyc/circle_geometry.hpp"
#include "dcyc/cyclicity.hpp"
#include "dcyc/energy.hpp"
#include "dcyc/outer.hpp"
#include "dcyc/regularize.hpp"
#include "dcyc/weights.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcyc {

using Json = nlohmann::ordered_json;

/// Malformed descriptor; location is a JSON pointer or a shorthand field name.
class DescriptorError : public std::invalid_argument {
 public:
  DescriptorError(const std::string& what, std::string location)
      : std::invalid_argument(what + " (at " + location + ")"), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SetDescriptor {
  /// canonical descriptor, embedded in reports
  Json json;
  CircleSet set;
  std::optional<CantorSpec> cantor;
  int generation = 0;
};

SetDescriptor parse_set_descriptor(const Json& j);
/// Inline JSON text or a path to a JSON file.
SetDescriptor load_set_descriptor(const std::string& text_or_path);

/// "geometric:lambda=0.3333", "double_exp:rate=1,power=0", "explicit:lengths=1.5;0.5;0.1"; optional l0=, base=.
CantorSpec parse_cantor_shorthand(const std::string& s);
/// "inverse_log_squared:scale=0.5,count=1000" or "power:scale=1,exponent=2,count=1000".
GapSequenceSpec parse_gap_sequence_shorthand(const std::string& s);
/// "power:p=0.3", "constant:c=1", "exp_power:k=-1,q=-0.5"; optional c=.
WeightProfile parse_weight_shorthand(const std::string& s);

/// Finite numbers as numbers, ±inf and nan as strings.
Json number(double v);
double number_from(const Json& j);

Json to_json(const CantorSpec& spec);
CantorSpec cantor_from_json(const Json& j, const std::string& where = "");
Json to_json(const WeightProfile& w);
WeightProfile weight_from_json(const Json& j);

Json to_json(const GrowthEvidence& g);
Json to_json(const MuEstimate& m);
Json to_json(const CapcondReport& c);
Json to_json(const CarlesonSetReport& c);
Json to_json(const SeriesEnergy& s);
Json to_json(const CarlesonEnergy& c);
Json to_json(const ModulusAtZero& m);
Json to_json(const EnergyReport& r);
Json to_json(const PowerCriterion& p);
/// Summary without the node arrays (those go to CSV).
Json to_json(const PsiResult& r);
Json to_json(const Certificate& c);
Json to_json(const CyclicityReport& r);
Json to_json(const FusionResult& f);

/// Stable two-space-indented text with a trailing newline.
std::string dump(const Json& j);
Json parse_json_text(const std::string& text);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_number(double v);
std::string to_csv(const CsvTable& t);
/// Lines starting with '#' are skipped.
CsvTable parse_csv(const std::string& text);

/// Per-δ certificate table.
CsvTable delta_table(const Certificate& c);
/// t, N_E(t), |E_t| on a log grid of t in (0, π).
CsvTable sweep_table(const CircleSet& set, int points_per_decade = 10, int decades = 12);
/// x, log t, log φ, u, ũ, log ψ per grid node.
CsvTable psi_table(const PsiResult& r);

std::string read_text_file(const std::string& path);
/// Throws IoError when the path is not writable.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace dcyc
