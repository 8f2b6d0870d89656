// SPDX-License-Identifier: Apache-2.0
//
// riscc - RIS-assisted multi-antenna coded caching toolkit
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

#ifndef riscc_combinatorics_H
#define riscc_combinatorics_H

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace riscc
{

// Binomial coefficient C(n,k) in exact 64-bit arithmetic.
inline long long binomial(int n, int k)
{
    if (n < 0)
        throw std::invalid_argument("binomial: n must be non-negative, got " + std::to_string(n));
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i; // exact at every step: r*(n-k+i) is divisible by i
    return r;
}

inline long long factorial(int n)
{
    if (n < 0 || n > 20)
        throw std::invalid_argument("factorial: n out of range, got " + std::to_string(n));
    long long r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// All k-element subsets of {1,...,n} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k)
{
    if (n < 0 || k < 0)
        throw std::invalid_argument("k_subsets: negative argument");
    std::vector<std::vector<int>> out;
    if (k > n)
        return out;
    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 1);
    while (true)
    {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + 1 + i)
            --i;
        if (i < 0)
            break;
        ++s[i];
        for (int j = i + 1; j < k; ++j)
            s[j] = s[j - 1] + 1;
    }
    if (k == 0)
        out.assign(1, {});
    return out;
}

// Zero-based lexicographic rank of a sorted k-subset of {1,...,n}.
inline long long subset_lex_rank(const std::vector<int> &s, int n)
{
    int k = (int)s.size();
    for (int i = 0; i < k; ++i)
    {
        if (s[i] < 1 || s[i] > n)
            throw std::out_of_range("subset_lex_rank: element " + std::to_string(s[i]) + " outside [1," + std::to_string(n) + "]");
        if (i > 0 && s[i] <= s[i - 1])
            throw std::invalid_argument("subset_lex_rank: subset must be strictly increasing");
    }
    long long rank = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i)
    {
        for (int x = prev + 1; x < s[i]; ++x)
            rank += binomial(n - x, k - 1 - i);
        prev = s[i];
    }
    return rank;
}

// Partitions of `total` into exactly `parts` positive integers, non-increasing order.
inline std::vector<std::vector<int>> integer_partitions(int total, int parts)
{
    std::vector<std::vector<int>> out;
    if (parts <= 0 || total < parts)
        return out;
    std::vector<int> cur(parts);
    // recursive descent without recursion depth concerns (parts <= total <= small)
    struct Rec
    {
        std::vector<std::vector<int>> &out;
        std::vector<int> &cur;
        void go(int remaining, int idx, int maxPart)
        {
            int parts_left = (int)cur.size() - idx;
            if (parts_left == 0)
            {
                if (remaining == 0)
                    out.push_back(cur);
                return;
            }
            for (int v = std::min(maxPart, remaining - (parts_left - 1)); v >= 1; --v)
            {
                if ((long long)v * parts_left < remaining)
                    break; // even v everywhere cannot reach the total
                cur[idx] = v;
                go(remaining - v, idx + 1, v);
            }
        }
    } rec{out, cur};
    rec.go(total, 0, total);
    return out;
}

// Partitions of a sorted pool into unordered blocks of equal size `block`.
// Canonical form: each block sorted, blocks ordered by smallest element; the
// enumeration order is deterministic (companions of the smallest free element
// are chosen in lexicographic order).
inline std::vector<std::vector<std::vector<int>>> equal_block_partitions(const std::vector<int> &pool, int block)
{
    if (block <= 0)
        throw std::invalid_argument("equal_block_partitions: block size must be positive");
    if (pool.size() % block != 0)
        throw std::invalid_argument("equal_block_partitions: pool size not divisible by block size");
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    struct Rec
    {
        int block;
        std::vector<std::vector<std::vector<int>>> &out;
        std::vector<std::vector<int>> &cur;
        void go(std::vector<int> pool)
        {
            if (pool.empty())
            {
                out.push_back(cur);
                return;
            }
            int head = pool.front();
            std::vector<int> rest(pool.begin() + 1, pool.end());
            for (auto &comp : k_subsets((int)rest.size(), block - 1))
            {
                std::vector<int> grp{head};
                for (int ix : comp)
                    grp.push_back(rest[ix - 1]);
                std::vector<int> next;
                for (int v : rest)
                    if (std::find(grp.begin(), grp.end(), v) == grp.end())
                        next.push_back(v);
                cur.push_back(grp);
                go(next);
                cur.pop_back();
            }
        }
    } rec{block, out, cur};
    std::vector<int> p = pool;
    std::sort(p.begin(), p.end());
    rec.go(p);
    return out;
}

// Exact fraction with reduced representation, denominator kept positive.
struct Rational
{
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d)
    {
        if (den == 0)
            throw std::invalid_argument("Rational: zero denominator");
        if (den < 0)
            num = -num, den = -den;
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1)
            num /= g, den /= g;
    }

    double value() const { return (double)num / (double)den; }
    bool operator==(const Rational &o) const { return num == o.num && den == o.den; }
    bool operator<(long long v) const { return num < v * den; }
};

} // namespace riscc

#endif
