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

#include "mmrelay/relay_queue.hpp"
#include "mmrelay/two_ue.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace mmrelay;

namespace {

TwoUeTerms engine_terms(const ScenarioConfig& cfg, const SuccessTable& table)
{
    const auto q = solve_queue(cfg, table);
    const auto net = net_change_distribution(cfg, table);
    return {q.lambda0,        q.a_r,          q.b_r,          net.empty(1),
            net.empty(2),     net.nonempty(-1), net.nonempty(1), net.nonempty(2)};
}

void check_close(const TwoUeTerms& a, const TwoUeTerms& b, double tol)
{
    CHECK(std::abs(a.lambda0 - b.lambda0) < tol);
    CHECK(std::abs(a.a_r - b.a_r) < tol);
    CHECK(std::abs(a.b_r - b.b_r) < tol);
    CHECK(std::abs(a.p1_empty - b.p1_empty) < tol);
    CHECK(std::abs(a.p2_empty - b.p2_empty) < tol);
    CHECK(std::abs(a.pm1_nonempty - b.pm1_nonempty) < tol);
    CHECK(std::abs(a.p1_nonempty - b.p1_nonempty) < tol);
    CHECK(std::abs(a.p2_nonempty - b.p2_nonempty) < tol);
}

} // namespace

TEST_CASE("two-UE closed forms agree with the engine at the defaults")
{
    ScenarioConfig cfg;
    cfg.n_ues = 2;
    cfg.q_r = 0.9;
    const SuccessTable table(cfg);
    const auto closed = two_ue_closed_forms(cfg, table);
    check_close(closed, engine_terms(cfg, table), 1e-12);

    // threshold and empty probability straight from the closed forms
    const auto q = solve_queue(cfg, table);
    CHECK(std::abs(q.q_r_min - closed.lambda0 / (closed.lambda0 + closed.b_r - closed.a_r)) < 1e-12);
    REQUIRE(q.stable);
    const double down = closed.pm1_nonempty - closed.p1_nonempty - 2 * closed.p2_nonempty;
    CHECK(std::abs(q.p_empty - down / (down + closed.lambda0)) < 1e-12);
}

TEST_CASE("two-UE closed forms agree with the engine on random scenarios")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 30; ++i) {
        const auto cfg = oracle::random_scenario(rng, 2);
        const SuccessTable table(cfg);
        CAPTURE(i);
        check_close(two_ue_closed_forms(cfg, table), engine_terms(cfg, table), 1e-12);
    }
}

TEST_CASE("literal transcriptions differ where a reconciliation is listed")
{
    ScenarioConfig cfg;
    cfg.n_ues = 2;
    cfg.q_u = 0.6;
    cfg.q_r = 0.7;
    cfg.alpha = 0.02;
    const SuccessTable table(cfg);
    const auto lit = two_ue_literal(cfg, table);
    const auto fixed = two_ue_closed_forms(cfg, table);
    CHECK(std::abs(lit.lambda0 - fixed.lambda0) > 1e-9);
    CHECK(std::abs(lit.b_r - fixed.b_r) > 1e-9);

    const auto& notes = two_ue_reconciliations();
    CHECK(notes.size() >= 8);
    for (const auto& n : notes) {
        CHECK_FALSE(n.term.empty());
        CHECK(n.as_printed != n.reading);
    }
}

TEST_CASE("two-UE forms reject other population sizes")
{
    ScenarioConfig cfg;
    cfg.n_ues = 3;
    const SuccessTable table(cfg);
    CHECK_THROWS_AS(two_ue_closed_forms(cfg, table), std::invalid_argument);
    CHECK_THROWS_AS(two_ue_literal(cfg, table), std::invalid_argument);
}
