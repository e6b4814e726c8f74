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

#include "mmrelay/throughput.hpp"

#include "mmrelay/numeric.hpp"

namespace mmrelay {

std::string_view to_string(Regime r) { return r == Regime::Stable ? "stable" : "unstable"; }

// The tagged UE's N-1 peers are drawn from the same multinomial the queue
// analysis uses: j FD-to-relay, i-j FD-to-AP and m-i BR peers.

double per_user_direct(const ScenarioConfig& cfg, const SuccessTable& table, bool relay_interfering)
{
    KahanSum<long double> fd;
    KahanSum<long double> br;
    for (const auto& peers : enumerate_configurations(cfg, cfg.n_ues - 1, relay_interfering)) {
        fd += static_cast<long double>(peers.weight) * table.fd_to_ap(peers.n_fd, peers.n_b, relay_interfering);
        br += static_cast<long double>(peers.weight) * table.br_at_ap(peers.n_fd, peers.n_b, relay_interfering);
    }
    const long double t = cfg.q_u * cfg.q_uf * cfg.q_ud() * fd.value() + cfg.q_u * cfg.q_ub() * br.value();
    return static_cast<double>(t);
}

RelayedTerms per_user_relayed_terms(const ScenarioConfig& cfg, const SuccessTable& table)
{
    KahanSum<long double> fd;
    KahanSum<long double> br_silent;
    KahanSum<long double> br_busy;
    for (const auto& peers : enumerate_configurations(cfg, cfg.n_ues - 1, false)) {
        const long double w = peers.weight;
        fd += w * table.fd_to_relay(peers.n_fr, peers.n_b);
        const double at_relay = table.br_at_relay(peers.n_fr, peers.n_b);
        br_silent += w * at_relay * (1.0 - table.br_at_ap(peers.n_fd, peers.n_b, false));
        br_busy += w * at_relay * (1.0 - table.br_at_ap(peers.n_fd, peers.n_b, true));
    }
    RelayedTerms out;
    out.fd = static_cast<double>(cfg.q_u * cfg.q_uf * cfg.q_ur * fd.value());
    out.br_silent = static_cast<double>(cfg.q_u * cfg.q_ub() * br_silent.value());
    out.br_busy = static_cast<double>(cfg.q_u * cfg.q_ub() * br_busy.value());
    return out;
}

ThroughputReport assemble_report(const ScenarioConfig& cfg, const QueueSolution& queue, double t_ud0, double t_ud1,
                                 const RelayedTerms& relayed)
{
    ThroughputReport r;
    r.queue = queue;
    r.t_ud0 = t_ud0;
    r.t_ud1 = t_ud1;
    r.t_ur_fd = relayed.fd;
    r.t_ur0 = relayed.br_silent;
    r.t_ur1 = relayed.br_busy;
    r.regime = queue.stable ? Regime::Stable : Regime::Unstable;

    // Unstable: the queue is almost surely nonempty, so the relay transmits
    // with probability q_r in every slot.
    const double nonempty = queue.stable ? 1.0 - queue.p_empty : 1.0;
    r.relay_busy = cfg.q_r * nonempty;

    r.t_ud = (1.0 - r.relay_busy) * t_ud0 + r.relay_busy * t_ud1;
    r.t_ur = relayed.mix(r.relay_busy);

    const double n = cfg.n_ues;
    r.t_d = n * r.t_ud;
    r.t_r = queue.stable ? n * r.t_ur : queue.mu_r;
    r.t_aggregate = r.t_d + r.t_r;
    return r;
}

ThroughputReport aggregate_throughput(const ScenarioConfig& cfg, const SuccessTable& table)
{
    const auto queue = solve_queue(cfg, table);
    return assemble_report(cfg, queue, per_user_direct(cfg, table, false), per_user_direct(cfg, table, true),
                           per_user_relayed_terms(cfg, table));
}

ThroughputReport aggregate_throughput(const ScenarioConfig& cfg)
{
    const SuccessTable table(cfg);
    return aggregate_throughput(cfg, table);
}

double per_user_relayed(const ScenarioConfig& cfg, const SuccessTable& table)
{
    const auto queue = solve_queue(cfg, table);
    const double busy = cfg.q_r * (queue.stable ? 1.0 - queue.p_empty : 1.0);
    return per_user_relayed_terms(cfg, table).mix(busy);
}

} // namespace mmrelay
