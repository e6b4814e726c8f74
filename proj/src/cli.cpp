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

#include "mmrelay/geometry_channel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace mmrelay {

namespace {

void print_kv(std::ostream& out, const std::string& key, const std::string& value)
{
    out << key << " = " << value << '\n';
}

void print_kv(std::ostream& out, const std::string& key, double value) { print_kv(out, key, format_number(value)); }

void print_scenario(std::ostream& out, const ScenarioConfig& cfg)
{
    out << "[scenario]\n";
    for (const auto& f : scenario_field_names())
        print_kv(out, f, get_field(cfg, f));
    print_kv(out, "d_rd_m", relay_mmap_distance(cfg.d_ur_m, cfg.d_ud_m, cfg.theta_rd_deg));
}

void print_report(std::ostream& out, const ThroughputReport& r)
{
    const auto& q = r.queue;
    out << "[queue]\n";
    print_kv(out, "lambda0", q.lambda0);
    print_kv(out, "lambda1", q.lambda1);
    print_kv(out, "a_r", q.a_r);
    print_kv(out, "b_r", q.b_r);
    print_kv(out, "mu_r", q.mu_r);
    print_kv(out, "q_r_min", q.q_r_min);
    print_kv(out, "never_stable", q.never_stable ? "true" : "false");
    print_kv(out, "stable", q.stable ? "true" : "false");
    print_kv(out, "p_empty", q.p_empty);
    out << "[throughput]\n";
    print_kv(out, "regime", std::string(to_string(r.regime)));
    print_kv(out, "t_ud0", r.t_ud0);
    print_kv(out, "t_ud1", r.t_ud1);
    print_kv(out, "t_ur_fd", r.t_ur_fd);
    print_kv(out, "t_ur0", r.t_ur0);
    print_kv(out, "t_ur1", r.t_ur1);
    print_kv(out, "t_ud", r.t_ud);
    print_kv(out, "t_ur", r.t_ur);
    print_kv(out, "t_d", r.t_d);
    print_kv(out, "t_r", r.t_r);
    print_kv(out, "T", r.t_aggregate);
}

void print_stats(std::ostream& out, const SimStats& s)
{
    auto est = [&](const std::string& k, const Estimate& e) {
        print_kv(out, k, e.value);
        print_kv(out, k + "_se", e.std_error);
    };
    out << "[simulation]\n";
    print_kv(out, "mode", std::string(to_string(s.mode)));
    print_kv(out, "seed", std::to_string(s.seed));
    print_kv(out, "slots", std::to_string(s.slots));
    print_kv(out, "warmup_slots", std::to_string(s.warmup_slots));
    print_kv(out, "batches", std::to_string(s.batches));
    print_kv(out, "delivered_direct", std::to_string(s.delivered_direct));
    print_kv(out, "delivered_relay", std::to_string(s.delivered_relay));
    est("t_sim", s.t_sim);
    est("lambda_sim", s.lambda_sim);
    est("mu_sim", s.mu_sim);
    est("p_empty_sim", s.p_empty_sim);
    est("drift_sim", s.drift_sim);
    print_kv(out, "mean_queue", s.mean_queue);
    print_kv(out, "max_queue", std::to_string(s.max_queue));
    print_kv(out, "final_queue", std::to_string(s.final_queue));
    print_kv(out, "enqueued_total", std::to_string(s.enqueued_total));
    print_kv(out, "dequeued_total", std::to_string(s.dequeued_total));
}

void print_comparison(std::ostream& out, const Comparison& c)
{
    out << "metric,analytic,empirical,se,z,pass\n";
    for (const auto& m : c.metrics) {
        out << m.name << ',' << format_number(m.analytic) << ',' << format_number(m.empirical) << ','
            << format_number(m.std_error) << ',' << format_number(m.z) << ','
            << (m.observed ? (m.pass ? "pass" : "FAIL") : "unobserved") << '\n';
    }
    if (c.regime_mismatch)
        out << "# warning: analytic regime disagrees with the empirical queue drift\n";
}

SimOptions sim_options(const SweepSpec& spec, const CLI::App& cmd, std::uint64_t slots, std::uint64_t seed,
                       const std::string& mode)
{
    SimOptions o{spec.simulation.slots, spec.simulation.seed, spec.simulation.mode, spec.simulation.batches};
    if (cmd.count("--slots"))
        o.n_slots = slots;
    if (cmd.count("--seed"))
        o.seed = seed;
    if (cmd.count("--mode"))
        o.mode = parse_los_mode(mode);
    return o;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Throughput analysis and simulation of relay-assisted mm-wave random access"};
    app.name("mmrelay");
    app.require_subcommand(1);

    std::string cfg_path;
    std::string out_path;
    std::uint64_t slots = 0;
    std::uint64_t seed = 0;
    std::string mode = "decoupled";
    int jobs = 1;

    auto* analyze = app.add_subcommand("analyze", "Print the queue solution and throughput report");
    analyze->add_option("config", cfg_path, "Configuration file")->required();

    auto add_sim_flags = [&](CLI::App* cmd) {
        cmd->add_option("config", cfg_path, "Configuration file")->required();
        cmd->add_option("--slots", slots, "Number of slots")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--mode", mode, "LOS sampling mode")->check(CLI::IsMember({"decoupled", "physical"}));
    };
    auto* simulate_cmd = app.add_subcommand("simulate", "Run the slot-level Monte Carlo simulator");
    add_sim_flags(simulate_cmd);
    auto* compare_cmd = app.add_subcommand("compare", "Compare analysis and simulation with z-scores");
    add_sim_flags(compare_cmd);

    auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter grid and write CSV");
    sweep->add_option("spec", cfg_path, "Sweep specification file")->required();
    sweep->add_option("-o,--output", out_path, "CSV output path (stdout if omitted)");
    sweep->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? exit_code::ok : exit_code::usage;
    }

    SweepSpec spec;
    try {
        spec = load_config(cfg_path);
    } catch (const ConfigFileError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }

    try {
        if (*analyze) {
            if (!spec.axes.empty())
                err << "note: sweep axes ignored by analyze; evaluating the base scenario\n";
            const auto report = aggregate_throughput(spec.base);
            print_scenario(out, spec.base);
            print_report(out, report);
            return exit_code::ok;
        }
        if (*simulate_cmd) {
            const auto opts = sim_options(spec, *simulate_cmd, slots, seed, mode);
            print_stats(out, simulate(spec.base, opts));
            return exit_code::ok;
        }
        if (*compare_cmd) {
            const auto opts = sim_options(spec, *compare_cmd, slots, seed, mode);
            const auto report = aggregate_throughput(spec.base);
            const auto cmp = compare(report, simulate(spec.base, opts));
            print_comparison(out, cmp);
            return cmp.all_pass() ? exit_code::ok : exit_code::comparison;
        }
        if (*sweep) {
            const auto csv = run_sweep(spec, jobs);
            if (out_path.empty()) {
                out << csv;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f) {
                    err << "error: cannot write " << out_path << '\n';
                    return exit_code::usage;
                }
                f << csv;
            }
            return exit_code::ok;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::model;
    }
    return exit_code::usage;
}

} // namespace mmrelay
