// Copyright 2026 The qframes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFRAMES_CONFIG_HPP
#define QFRAMES_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qframes/errors.hpp"
#include "qframes/tensor.hpp"

namespace qframes {

enum class ScenarioKind { kEpr, kBell, kExtended, kChshScan, kVerify };
enum class AngleUnit { kRad, kDeg };
enum class OutputFormat { kRecords, kCsv };

const char* to_string(ScenarioKind kind);
const char* to_string(AngleUnit unit);
const char* to_string(OutputFormat format);
std::optional<ScenarioKind> parse_kind(const std::string& s);
std::optional<AngleUnit> parse_angle_unit(const std::string& s);
std::optional<OutputFormat> parse_format(const std::string& s);

/// Converts to radians; degrees use value / 180 * pi so multiples of 45 are exact.
double to_radians(double value, AngleUnit unit);

inline constexpr std::uint64_t kDefaultSeed = 20260101;

struct GridSpec {
  double start;  // in the config's angle unit
  double stop;
  std::size_t steps;
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// A scenario run as read from a config file. Angles are stored in `unit`.
struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::kBell;
  /// Whether `kind` came from the file.
  bool kind_explicit = false;
  /// epr: (a, b); bell, extended, chsh-scan: (c1, c2).
  std::vector<Complex> amplitudes;
  AngleUnit unit = AngleUnit::kRad;
  /// Whether the unit came from the file (as opposed to the default).
  bool unit_explicit = false;
  double delta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::optional<GridSpec> grid;
  std::string model = "quantum";
  std::size_t shots = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string output_path;
  OutputFormat format = OutputFormat::kRecords;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parse failure; message carries the field and line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ParsedConfig {
  ScenarioConfig config;
  std::vector<std::string> warnings;
};

/// Defaults for a kind, expressed in `unit`: singlet amplitudes (epr:
/// a = b = 1/sqrt2), theta = (0, pi/4), delta = 0, grid [0, 2pi) with 25 steps.
ScenarioConfig default_config(ScenarioKind kind, AngleUnit unit = AngleUnit::kRad);

/// Settings fixed outside the file, typically on the command line.
struct ParseOptions {
  /// Scenario being run; a different `kind` in the file is an error.
  std::optional<ScenarioKind> kind;
  /// Unit for untagged angles; a different unit tag in the file is an error.
  std::optional<AngleUnit> unit;
};

/// Strict parse: unknown keys, wrong types and non-finite angles are errors.
ParsedConfig parse_config(const std::string& text, const std::string& source = "<config>",
                          const ParseOptions& options = {});
ParsedConfig load_config(const std::string& path, const ParseOptions& options = {});
std::string serialize_config(const ScenarioConfig& config);

}  // namespace qframes

#endif  // QFRAMES_CONFIG_HPP
