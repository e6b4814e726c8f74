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

#include "mmrelay/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

namespace mmrelay {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

std::string output_cell(const std::string& name, const ThroughputReport& r)
{
    const auto& q = r.queue;
    if (name == "regime")
        return std::string(to_string(r.regime));
    if (name == "q_r_min")
        return format_number(q.q_r_min);
    if (name == "lambda0")
        return format_number(q.lambda0);
    if (name == "lambda1")
        return format_number(q.lambda1);
    if (name == "mu_r")
        return format_number(q.mu_r);
    if (name == "p_empty")
        return format_number(q.p_empty);
    if (name == "T_ud")
        return format_number(r.t_ud);
    if (name == "T_ur")
        return format_number(r.t_ur);
    if (name == "T")
        return format_number(r.t_aggregate);
    if (name == "T_d")
        return format_number(r.t_d);
    if (name == "T_r")
        return format_number(r.t_r);
    if (name == "a_r")
        return format_number(q.a_r);
    if (name == "b_r")
        return format_number(q.b_r);
    if (name == "lambda")
        return format_number(analytic_arrival_rate(q));
    throw std::invalid_argument("unknown output metric '" + name + "'");
}

std::string evaluate_row(const SweepSpec& spec, const GridPoint& point, std::size_t index)
{
    std::vector<std::string> cells;
    for (double c : point.coords)
        cells.push_back(format_number(c));

    const std::size_t n_metrics = spec.outputs.size() + (spec.simulation.enabled ? 3 : 0);
    std::string error;
    try {
        const auto report = aggregate_throughput(point.cfg);
        for (const auto& o : spec.outputs)
            cells.push_back(output_cell(o, report));
        if (spec.simulation.enabled) {
            SimOptions opts{spec.simulation.slots, spec.simulation.seed + index, spec.simulation.mode,
                            spec.simulation.batches};
            const auto stats = simulate(point.cfg, opts);
            const auto cmp = compare(report, stats);
            cells.push_back(format_number(stats.t_sim.value));
            cells.push_back(format_number(stats.t_sim.std_error));
            cells.push_back(format_number(cmp.metrics.front().z));
        }
    } catch (const std::exception& e) {
        error = e.what();
        cells.resize(point.coords.size());
        cells.resize(point.coords.size() + n_metrics);
    }
    cells.push_back(csv_escape(error));

    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i)
            row += ',';
        row += cells[i];
    }
    return row + '\n';
}

} // namespace

std::vector<std::string> sweep_header(const SweepSpec& spec)
{
    std::vector<std::string> h;
    for (const auto& ax : spec.axes)
        for (const auto& p : ax.params)
            h.push_back(p);
    for (const auto& o : spec.outputs)
        h.push_back(o);
    if (spec.simulation.enabled) {
        h.push_back("t_sim");
        h.push_back("se");
        h.push_back("z");
    }
    h.push_back("error");
    return h;
}

std::string run_sweep(const SweepSpec& spec, int jobs)
{
    const auto grid = plan_sweep(spec);
    std::vector<std::string> rows(grid.size());

    const auto workers = static_cast<std::size_t>(std::max(1, jobs));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++)
            rows[i] = evaluate_row(spec, grid[i], i);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, grid.size()); ++w)
            pool.emplace_back(work);
    }

    std::string out;
    const auto header = sweep_header(spec);
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& r : rows)
        out += r;
    return out;
}

} // namespace mmrelay
