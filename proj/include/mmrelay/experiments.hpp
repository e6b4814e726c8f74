// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "mmrelay/scenario.hpp"
#include "mmrelay/simulator.hpp"
#include "mmrelay/throughput.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmrelay {

/// Malformed configuration file; carries the 1-based line (0 if not tied to one).
class ConfigFileError : public std::runtime_error
{
public:
    ConfigFileError(const std::string& source, int line, const std::string& what);

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Canonical names of the sweepable ScenarioConfig fields.
const std::vector<std::string>& scenario_field_names();

/// Accepts canonical names and unit-less aliases (d_ur, theta_rd, gamma, ...).
/// Returns the canonical name; throws std::invalid_argument when unknown.
std::string canonical_field_name(std::string_view name);

void set_field(ScenarioConfig& cfg, std::string_view name, double value);
double get_field(const ScenarioConfig& cfg, std::string_view name);

/// One sweep axis. Several parameters may move together (zipped), e.g. the
/// (d_ur, d_ud) pairs of a distance study.
struct SweepAxis
{
    std::vector<std::string> params;
    std::vector<std::vector<double>> points; ///< points[i].size() == params.size()
};

struct SimulationSpec
{
    bool enabled = false;
    std::uint64_t slots = 1'000'000;
    std::uint64_t seed = 1;
    LosMode mode = LosMode::Decoupled;
    int batches = 40;
};

struct SweepSpec
{
    ScenarioConfig base;
    std::vector<SweepAxis> axes; ///< zero, one or two
    std::vector<std::string> outputs;
    SimulationSpec simulation;
};

/// Metrics a sweep can emit, in default column order.
const std::vector<std::string>& default_outputs();
const std::vector<std::string>& available_outputs();

/// Plain-text key = value format with [scenario], [sweep] and [simulation]
/// sections and '#' comments. Unspecified scenario fields keep their defaults.
SweepSpec parse_config(std::string_view text, const std::string& source = "<config>");
SweepSpec load_config(const std::filesystem::path& path);

struct GridPoint
{
    std::vector<double> coords; ///< one value per swept parameter, axis-major
    ScenarioConfig cfg;
};

/// Cartesian product of the axes, first axis outermost.
std::vector<GridPoint> plan_sweep(const SweepSpec& spec);

std::vector<std::string> sweep_header(const SweepSpec& spec);

/// Evaluates every grid point (in parallel when jobs > 1) and returns CSV
/// text. Row order and bytes do not depend on jobs.
std::string run_sweep(const SweepSpec& spec, int jobs = 1);

/// %.9g
std::string format_number(double v);

/// Command-line entry point: analyze | simulate | sweep | compare.
/// Exit codes: 0 ok, 1 usage, 2 model error, 3 comparison failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int model = 2;
inline constexpr int comparison = 3;
} // namespace exit_code

} // namespace mmrelay
