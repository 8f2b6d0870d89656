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
//
// Antenna grouping for the caching gain t. A plan splits L0 active antennas
// (out of L available) into r groups of sizes L_1..L_r; the sum DoF is
// g = L0 + t*r and the RIS has to null 2 * sum_i (L_i + t) * (L0 - L_i)
// path coefficients per delivery slot (the cost counts RIS units, two per
// nulled path). Everything here is exact integer or rational arithmetic.

#ifndef riscc_grouping_H
#define riscc_grouping_H

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"

namespace riscc
{

struct GroupingPlan
{
    std::vector<int> sizes; // antennas per group, all >= 1
    int t = 1;              // caching gain
};

namespace detail
{

inline void check_plan(const GroupingPlan &plan)
{
    if (plan.t < 1)
        throw std::invalid_argument("grouping: t must be >= 1, got " + std::to_string(plan.t));
    if (plan.sizes.empty())
        throw std::invalid_argument("grouping: plan has no groups");
    for (int s : plan.sizes)
        if (s < 1)
            throw std::invalid_argument("grouping: group sizes must be >= 1, got " + std::to_string(s));
}

} // namespace detail

// Sum DoF delivered by a plan: every group of size L_i serves L_i + t users
// at once, one antenna is pooled per served stream.
inline long long dof_of_plan(const GroupingPlan &plan)
{
    detail::check_plan(plan);
    long long L0 = std::accumulate(plan.sizes.begin(), plan.sizes.end(), 0LL);
    return L0 + (long long)plan.t * (long long)plan.sizes.size();
}

// RIS units needed to silence all cross-group paths: group i's L_i + t
// served users each hear the L0 - L_i antennas of the other groups.
inline long long ris_cost(const GroupingPlan &plan)
{
    detail::check_plan(plan);
    long long L0 = std::accumulate(plan.sizes.begin(), plan.sizes.end(), 0LL);
    long long acc = 0;
    for (int s : plan.sizes)
        acc += (long long)(s + plan.t) * (L0 - s);
    return 2 * acc;
}

// Cost of the star plan: one group of L0 - r + 1 antennas plus r - 1
// singleton groups. This is the cheapest arrangement of L0 antennas in r
// groups (see the exhaustive checks in the test suite).
inline long long star_plan_cost(int L0, int r, int t)
{
    if (t < 1)
        throw std::invalid_argument("star_plan_cost: t must be >= 1");
    if (r < 1 || r > L0)
        throw std::invalid_argument("star_plan_cost: need 1 <= r <= L0, got r=" + std::to_string(r) +
                                    ", L0=" + std::to_string(L0));
    return 2LL * (r - 1) * ((long long)(t + 2) * L0 - r);
}

inline std::vector<int> star_sizes(int L0, int r)
{
    std::vector<int> s(r, 1);
    s[0] = L0 - r + 1;
    return s;
}

// Cost change when lam singleton groups are added while the big group
// shrinks by lam*t antennas (DoF is unchanged):
//   f(lam) = star_plan_cost(L0 - lam*t, r + lam, t) - star_plan_cost(L0, r, t)
//          = 2*lam*(N - D*lam),  D = (t+1)^2,  N = (t+2)*L0 - r - (r-1)*D.
inline long long lambda_gain(int L0, int r, int t, long long lam)
{
    long long D = (long long)(t + 1) * (t + 1);
    long long N = (long long)(t + 2) * L0 - r - (long long)(r - 1) * D;
    return 2 * lam * (N - D * lam);
}

// Stationary point N/D of the quadratic above; f is concave, so over an
// integer range the minimum sits at an endpoint regardless of the root.
inline Rational lambda_root(int L0, int r, int t)
{
    long long D = (long long)(t + 1) * (t + 1);
    long long N = (long long)(t + 2) * L0 - r - (long long)(r - 1) * D;
    return Rational(N, D);
}

struct GroupingSolution
{
    int L_opt = 0;                     // active antennas in the best plan
    int r_opt = 0;                     // number of groups
    long long G_opt = 0;               // RIS units needed
    int g_target = 0;                  // requested sum DoF
    int g_achieved = 0;                // first reachable DoF >= target
    std::vector<int> sizes;            // group sizes of the best plan
};

// Best plan for a target sum DoF. Scans g upward until some (L0, r) with
// L0 + t*r = g, 1 <= r <= L0 <= L exists, anchors at the largest such L0,
// then applies the lam-shift above when it strictly lowers the cost (on
// ties the anchor is kept: fewer groups, more antennas in the big group).
inline GroupingSolution optimal_grouping(int L, int t, int g_target)
{
    if (t < 1)
        throw std::invalid_argument("optimal_grouping: t must be >= 1, got " + std::to_string(t));
    if (L < 1)
        throw std::invalid_argument("optimal_grouping: L must be >= 1");
    if (g_target < t + 1)
        throw std::invalid_argument("optimal_grouping: target DoF " + std::to_string(g_target) +
                                    " below minimum " + std::to_string(t + 1));
    if (g_target > (long long)L * (t + 1))
        throw std::invalid_argument("optimal_grouping: target DoF " + std::to_string(g_target) +
                                    " unreachable with L=" + std::to_string(L) + ", max is " +
                                    std::to_string((long long)L * (t + 1)));
    int g = g_target, L0 = -1, r = -1;
    for (;; ++g)
    {
        int L_max = std::min(L, g - t);            // r >= 1
        int L_min = (g + t) / (t + 1);             // ceil(g/(t+1)), ensures r <= L0
        bool found = false;
        for (int cand = L_max; cand >= L_min; --cand)
            if ((g - cand) % t == 0 && (g - cand) / t >= 1)
            {
                L0 = cand, r = (g - cand) / t, found = true;
                break;
            }
        if (found)
            break; // largest L0 anchor for this g
    }
    long long cost = star_plan_cost(L0, r, t);
    long long lam_max = (L0 - r) / (t + 1);
    GroupingSolution sol;
    sol.g_target = g_target;
    sol.g_achieved = g;
    if (lam_max >= 1 && lambda_gain(L0, r, t, lam_max) < 0)
    {
        sol.L_opt = L0 - (int)lam_max * t;
        sol.r_opt = r + (int)lam_max;
        sol.G_opt = cost + lambda_gain(L0, r, t, lam_max);
    }
    else
    {
        sol.L_opt = L0;
        sol.r_opt = r;
        sol.G_opt = cost;
    }
    sol.sizes = star_sizes(sol.L_opt, sol.r_opt);
    return sol;
}

// Exhaustive reference: every multiset of group sizes with sum <= L is
// costed directly. Intended for small L only.
inline GroupingSolution brute_force_grouping(int L, int t, int g_target)
{
    if (L > 14)
        throw std::invalid_argument("brute_force_grouping: L=" + std::to_string(L) + " too large, limit is 14");
    if (t < 1 || L < 1 || g_target < t + 1 || g_target > (long long)L * (t + 1))
        throw std::invalid_argument("brute_force_grouping: infeasible arguments");
    for (int g = g_target;; ++g)
    {
        bool any = false;
        long long best = 0;
        GroupingPlan best_plan;
        for (int L0 = 1; L0 <= L; ++L0)
            for (int r = 1; r <= L0; ++r)
            {
                if (L0 + (long long)t * r != g)
                    continue;
                for (auto &part : integer_partitions(L0, r))
                {
                    GroupingPlan plan{part, t};
                    long long c = ris_cost(plan);
                    if (!any || c < best)
                        any = true, best = c, best_plan = plan;
                }
            }
        if (any)
        {
            GroupingSolution sol;
            sol.g_target = g_target;
            sol.g_achieved = g;
            sol.G_opt = best;
            sol.L_opt = (int)std::accumulate(best_plan.sizes.begin(), best_plan.sizes.end(), 0LL);
            sol.r_opt = (int)best_plan.sizes.size();
            sol.sizes = best_plan.sizes;
            return sol;
        }
    }
}

} // namespace riscc

#endif
