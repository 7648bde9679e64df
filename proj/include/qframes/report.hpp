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

#ifndef QFRAMES_REPORT_HPP
#define QFRAMES_REPORT_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qframes/config.hpp"
#include "qframes/correlations.hpp"
#include "qframes/scenarios.hpp"

namespace qframes {

/// Collects the result records of one run. Records are emitted one JSON
/// object per line; the timestamp lives alone in the first line so that two
/// runs with the same seed differ only there.
class Report {
 public:
  Report(const ScenarioConfig& config, std::vector<std::string> warnings);

  /// `basis` names the basis each axis is resolved in, one entry per axis.
  void add_distribution(const std::string& name, const JointDistribution& jd,
                        const std::vector<std::string>& basis);
  void add_checks(const std::vector<Check>& checks);
  void add_value(const std::string& name, double value);
  void add_state(const std::string& name, const std::vector<std::string>& subsystems,
                 std::span<const Complex> amplitudes);
  void add_chsh(const std::string& name, const ChshReport& report);
  void add_samples(const std::string& name, const JointDistribution& jd,
                   const std::vector<std::size_t>& counts);
  /// A free-form record, `fields` holding a JSON object as text.
  void add_raw(const std::string& type, const std::string& name, const std::string& fields);

  bool passed() const;
  std::vector<std::string> failed_checks() const;
  const std::vector<Check>& checks() const { return checks_; }

  /// Line-delimited records; `timestamp` goes into the leading meta line.
  std::string records(const std::string& timestamp) const;
  /// Distributions only: table,axis_labels,probability.
  std::string csv() const;

 private:
  std::vector<std::string> lines_;
  std::vector<std::string> csv_rows_;
  std::vector<Check> checks_;
  std::string kind_;
};

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace qframes

#endif  // QFRAMES_REPORT_HPP
