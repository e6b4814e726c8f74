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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mmrelay {

ConfigFileError::ConfigFileError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what), line_(line)
{
}

const std::vector<std::string>& scenario_field_names()
{
    static const std::vector<std::string> names = {
        "n_ues",   "q_u",     "q_uf",    "q_ur",   "q_r",    "gamma_db",     "alpha",           "p_t_dbm",
        "p_n_dbm", "f_c_ghz", "h_ap_m",  "h_ue_m", "d_ur_m", "d_ud_m",       "theta_rd_deg",    "theta_bw_fd_deg",
        "theta_bw_br_deg"};
    return names;
}

std::string canonical_field_name(std::string_view name)
{
    static const std::map<std::string, std::string, std::less<>> aliases = {
        {"n", "n_ues"},         {"gamma", "gamma_db"},        {"p_t", "p_t_dbm"},         {"p_n", "p_n_dbm"},
        {"f_c", "f_c_ghz"},     {"h_ap", "h_ap_m"},           {"h_ue", "h_ue_m"},         {"d_ur", "d_ur_m"},
        {"d_ud", "d_ud_m"},     {"theta_rd", "theta_rd_deg"}, {"theta_bw_fd", "theta_bw_fd_deg"},
        {"theta_bw_br", "theta_bw_br_deg"}};
    const auto& names = scenario_field_names();
    if (std::find(names.begin(), names.end(), name) != names.end())
        return std::string(name);
    if (auto it = aliases.find(name); it != aliases.end())
        return it->second;
    throw std::invalid_argument("unknown scenario field '" + std::string(name) + "'");
}

namespace {

double* field_ptr(ScenarioConfig& c, std::string_view n)
{
    if (n == "q_u") return &c.q_u;
    if (n == "q_uf") return &c.q_uf;
    if (n == "q_ur") return &c.q_ur;
    if (n == "q_r") return &c.q_r;
    if (n == "gamma_db") return &c.gamma_db;
    if (n == "alpha") return &c.alpha;
    if (n == "p_t_dbm") return &c.p_t_dbm;
    if (n == "p_n_dbm") return &c.p_n_dbm;
    if (n == "f_c_ghz") return &c.f_c_ghz;
    if (n == "h_ap_m") return &c.h_ap_m;
    if (n == "h_ue_m") return &c.h_ue_m;
    if (n == "d_ur_m") return &c.d_ur_m;
    if (n == "d_ud_m") return &c.d_ud_m;
    if (n == "theta_rd_deg") return &c.theta_rd_deg;
    if (n == "theta_bw_fd_deg") return &c.theta_bw_fd_deg;
    return nullptr;
}

} // namespace

void set_field(ScenarioConfig& cfg, std::string_view name, double value)
{
    const auto canon = canonical_field_name(name);
    if (canon == "n_ues") {
        if (value != std::floor(value) || value < 1 || value > 100000)
            throw ConfigError("n_ues", "must be a positive integer");
        cfg.n_ues = static_cast<int>(value);
    } else if (canon == "theta_bw_br_deg") {
        cfg.theta_bw_br_deg = value;
    } else {
        *field_ptr(cfg, canon) = value;
    }
}

double get_field(const ScenarioConfig& cfg, std::string_view name)
{
    const auto canon = canonical_field_name(name);
    if (canon == "n_ues")
        return cfg.n_ues;
    if (canon == "theta_bw_br_deg")
        return cfg.br_beamwidth_deg();
    return *field_ptr(const_cast<ScenarioConfig&>(cfg), canon);
}

const std::vector<std::string>& default_outputs()
{
    static const std::vector<std::string> v = {"regime", "q_r_min", "lambda0", "lambda1", "mu_r",
                                               "p_empty", "T_ud",   "T_ur",    "T"};
    return v;
}

const std::vector<std::string>& available_outputs()
{
    static const std::vector<std::string> v = {"regime", "q_r_min", "lambda0", "lambda1", "mu_r", "p_empty",
                                               "T_ud",   "T_ur",    "T",       "T_d",     "T_r",  "a_r",
                                               "b_r",    "lambda"};
    return v;
}

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s)
{
    const std::string t = trim(s);
    if (t.empty())
        return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<std::uint64_t> parse_unsigned(std::string_view s)
{
    const std::string t = trim(s);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        return std::nullopt;
    return v;
}

/// "a, b, c" or "start:stop" or "start:stop:step" (inclusive).
std::vector<double> parse_value_list(std::string_view text)
{
    const std::string t = trim(text);
    if (t.find(':') != std::string::npos) {
        const auto parts = split(t, ':');
        if (parts.size() < 2 || parts.size() > 3)
            throw std::invalid_argument("range must be start:stop or start:stop:step");
        const auto a = parse_double(parts[0]);
        const auto b = parse_double(parts[1]);
        const auto step = parts.size() == 3 ? parse_double(parts[2]) : std::optional<double>(1.0);
        if (!a || !b || !step)
            throw std::invalid_argument("malformed range '" + t + "'");
        if (!(*step > 0.0) || *b < *a)
            throw std::invalid_argument("range needs step > 0 and stop >= start");
        std::vector<double> out;
        const double tol = 1e-9 * *step;
        for (long i = 0;; ++i) {
            double v = *a + static_cast<double>(i) * *step;
            if (v > *b + tol)
                break;
            v = std::round(v * 1e12) / 1e12;
            out.push_back(v);
            if (out.size() > 100000)
                throw std::invalid_argument("range too long");
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(t, ',')) {
        const auto v = parse_double(item);
        if (!v)
            throw std::invalid_argument("malformed number '" + item + "'");
        out.push_back(*v);
    }
    return out;
}

/// Tuples for zipped axes: "20 40; 30 50" (components separated by spaces or commas).
std::vector<std::vector<double>> parse_tuples(std::string_view text, std::size_t width)
{
    std::vector<std::vector<double>> out;
    for (const auto& tuple : split(text, ';')) {
        std::string norm = tuple;
        std::replace(norm.begin(), norm.end(), ',', ' ');
        std::istringstream is(norm);
        std::vector<double> vals;
        std::string tok;
        while (is >> tok) {
            const auto v = parse_double(tok);
            if (!v)
                throw std::invalid_argument("malformed number '" + tok + "'");
            vals.push_back(*v);
        }
        if (vals.size() != width)
            throw std::invalid_argument("tuple '" + tuple + "' must have " + std::to_string(width) + " values");
        out.push_back(std::move(vals));
    }
    return out;
}

void check_field_domain(const std::string& canon, double v)
{
    auto bad = [&](const char* what) { throw ConfigError(canon, what); };
    if (canon == "n_ues") {
        if (v < 1 || v != std::floor(v))
            bad("must be a positive integer");
    } else if (canon == "q_u" || canon == "q_uf" || canon == "q_ur" || canon == "q_r" || canon == "alpha") {
        if (!(v >= 0.0 && v <= 1.0))
            bad("must lie in [0, 1]");
    } else if (canon == "theta_rd_deg") {
        if (!(v > 0.0 && v < 180.0))
            bad("must lie in (0, 180) degrees");
    } else if (canon == "theta_bw_fd_deg" || canon == "theta_bw_br_deg") {
        if (!(v > 0.0 && v <= 360.0))
            bad("must lie in (0, 360] degrees");
    } else if (canon == "gamma_db" || canon == "p_t_dbm" || canon == "p_n_dbm") {
        // any finite value
    } else if (!(v > 0.0)) {
        bad("must be strictly positive");
    }
}

bool parse_bool(std::string_view s, bool& out)
{
    const std::string t = trim(s);
    if (t == "true" || t == "yes" || t == "on" || t == "1") {
        out = true;
        return true;
    }
    if (t == "false" || t == "no" || t == "off" || t == "0") {
        out = false;
        return true;
    }
    return false;
}

} // namespace

SweepSpec parse_config(std::string_view text, const std::string& source)
{
    SweepSpec spec;
    std::map<std::string, int> field_lines;
    std::map<int, std::pair<std::string, int>> axis_names; // axis -> (text, line)
    std::map<int, std::pair<std::string, int>> axis_values;
    std::string section;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto fail = [&](const std::string& what) { throw ConfigFileError(source, line_no, what); };
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail("malformed section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (section != "scenario" && section != "sweep" && section != "simulation")
                fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            fail("missing key");
        if (section.empty())
            fail("key '" + key + "' outside of any section");

        if (section == "scenario") {
            std::string canon;
            try {
                canon = canonical_field_name(key);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
            const auto v = parse_double(value);
            if (!v)
                fail(canon + ": malformed number '" + value + "'");
            try {
                check_field_domain(canon, *v);
                set_field(spec.base, canon, *v);
            } catch (const ConfigError& e) {
                fail(e.what());
            }
            field_lines[canon] = line_no;
        } else if (section == "sweep") {
            if (key == "axis1" || key == "axis2")
                axis_names[key.back() - '0'] = {value, line_no};
            else if (key == "values1" || key == "values2")
                axis_values[key.back() - '0'] = {value, line_no};
            else if (key == "outputs") {
                spec.outputs.clear();
                for (const auto& o : split(value, ',')) {
                    const auto& avail = available_outputs();
                    if (std::find(avail.begin(), avail.end(), o) == avail.end())
                        fail("unknown output metric '" + o + "'");
                    spec.outputs.push_back(o);
                }
            } else
                fail("unknown sweep key '" + key + "'");
        } else {
            if (key == "enabled") {
                if (!parse_bool(value, spec.simulation.enabled))
                    fail("enabled: expected true or false");
            } else if (key == "slots") {
                const auto v = parse_unsigned(value);
                if (!v || *v < 1)
                    fail("slots: expected a positive integer");
                spec.simulation.slots = *v;
            } else if (key == "seed") {
                const auto v = parse_unsigned(value);
                if (!v)
                    fail("seed: expected a non-negative integer");
                spec.simulation.seed = *v;
            } else if (key == "mode") {
                try {
                    spec.simulation.mode = parse_los_mode(value);
                } catch (const std::invalid_argument& e) {
                    fail(e.what());
                }
            } else if (key == "batches") {
                const auto v = parse_unsigned(value);
                if (!v || *v < 30 || *v > 10000)
                    fail("batches: expected an integer in [30, 10000]");
                spec.simulation.batches = static_cast<int>(*v);
            } else
                fail("unknown simulation key '" + key + "'");
        }
    }

    for (int a = 1; a <= 2; ++a) {
        const bool has_name = axis_names.count(a) != 0;
        const bool has_values = axis_values.count(a) != 0;
        if (!has_name && !has_values)
            continue;
        if (!has_name || !has_values)
            throw ConfigFileError(source, (has_name ? axis_names : axis_values)[a].second,
                                  "axis" + std::to_string(a) + " and values" + std::to_string(a) + " go together");
        if (a == 2 && axis_names.count(1) == 0)
            throw ConfigFileError(source, axis_names[2].second, "axis2 requires axis1");
        SweepAxis axis;
        const int name_line = axis_names[a].second;
        const int values_line = axis_values[a].second;
        for (const auto& p : split(axis_names[a].first, ',')) {
            try {
                axis.params.push_back(canonical_field_name(p));
            } catch (const std::invalid_argument& e) {
                throw ConfigFileError(source, name_line, e.what());
            }
        }
        try {
            if (axis.params.size() == 1) {
                for (double v : parse_value_list(axis_values[a].first))
                    axis.points.push_back({v});
            } else {
                axis.points = parse_tuples(axis_values[a].first, axis.params.size());
            }
            if (axis.points.empty())
                throw std::invalid_argument("empty value list");
            for (const auto& pt : axis.points)
                for (std::size_t i = 0; i < pt.size(); ++i)
                    check_field_domain(axis.params[i], pt[i]);
        } catch (const std::invalid_argument& e) {
            throw ConfigFileError(source, values_line, e.what());
        }
        spec.axes.push_back(std::move(axis));
    }
    if (spec.axes.size() == 2)
        for (const auto& p : spec.axes[1].params)
            if (std::find(spec.axes[0].params.begin(), spec.axes[0].params.end(), p) != spec.axes[0].params.end())
                throw ConfigFileError(source, axis_names[2].second, "parameter '" + p + "' swept on both axes");

    if (spec.outputs.empty())
        spec.outputs = default_outputs();

    // Cross-field constraints. With axes, a swept value may repair the base,
    // so violations are reported per grid point instead.
    if (spec.axes.empty()) {
        try {
            validate(spec.base);
        } catch (const ConfigError& e) {
            const auto it = field_lines.find(e.field());
            throw ConfigFileError(source, it == field_lines.end() ? 0 : it->second, e.what());
        }
    }
    return spec;
}

SweepSpec load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigFileError(path.string(), 0, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::vector<GridPoint> plan_sweep(const SweepSpec& spec)
{
    std::vector<GridPoint> out;
    if (spec.axes.empty()) {
        out.push_back({{}, spec.base});
        return out;
    }
    const auto& a1 = spec.axes[0];
    const SweepAxis empty_axis{{}, {{}}};
    const auto& a2 = spec.axes.size() > 1 ? spec.axes[1] : empty_axis;
    for (const auto& p1 : a1.points) {
        for (const auto& p2 : a2.points) {
            GridPoint g{{}, spec.base};
            for (std::size_t i = 0; i < p1.size(); ++i) {
                set_field(g.cfg, a1.params[i], p1[i]);
                g.coords.push_back(p1[i]);
            }
            for (std::size_t i = 0; i < p2.size(); ++i) {
                set_field(g.cfg, a2.params[i], p2[i]);
                g.coords.push_back(p2[i]);
            }
            out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace mmrelay
