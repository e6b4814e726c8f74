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

#include <algorithm>
#include <cmath>
#include <vector>

namespace mmrelay {

/// Compensated (Neumaier) summation.
template <typename T>
class KahanSum
{
public:
    KahanSum& operator+=(T x)
    {
        const T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

/// Exact for n <= 60 or so; the model never needs more.
inline double binomial_coefficient(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

/// P(X = k) for X ~ Binomial(n, p), k = 0..n. Uses exact zeros at p in {0, 1}.
inline std::vector<double> binomial_pmf(int n, double p)
{
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        const double a = k == 0 ? 1.0 : std::pow(p, k);
        const double b = n - k == 0 ? 1.0 : std::pow(1.0 - p, n - k);
        pmf[static_cast<std::size_t>(k)] = binomial_coefficient(n, k) * a * b;
    }
    return pmf;
}

/// Distribution of the sum of two independent count variables.
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

inline double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace mmrelay
