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
#include "mmrelay/sinr_success.hpp"

#include <string>
#include <vector>

namespace mmrelay {

/// Hand-expanded relay queue quantities for exactly two UEs.
struct TwoUeTerms
{
    double lambda0 = 0.0;
    double a_r = 0.0;
    double b_r = 0.0;
    double p1_empty = 0.0;     ///< p_1^0
    double p2_empty = 0.0;     ///< p_2^0
    double pm1_nonempty = 0.0; ///< p_{-1}^1
    double p1_nonempty = 0.0;  ///< p_1^1
    double p2_nonempty = 0.0;  ///< p_2^1
};

/// Published two-UE expressions read symbol for symbol, with only the
/// symmetric-UE renaming (q_1, q_1f, q_2f -> q_u, q_uf) applied. Several of
/// them carry typesetting slips; see two_ue_reconciliations().
TwoUeTerms two_ue_literal(const ScenarioConfig& cfg, const SuccessTable& table);

/// The same expressions with every slip corrected. Must agree with the
/// enumeration engine at N = 2.
TwoUeTerms two_ue_closed_forms(const ScenarioConfig& cfg, const SuccessTable& table);

struct Reconciliation
{
    std::string term;
    std::string as_printed;
    std::string reading;
};

/// Every place where two_ue_closed_forms departs from two_ue_literal.
const std::vector<Reconciliation>& two_ue_reconciliations();

} // namespace mmrelay
