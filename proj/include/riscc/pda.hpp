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
// Placement delivery arrays and their multi-antenna and grouped variants.
// An array has one row per file packet and one column per user; a star
// cell means the user caches that packet, an integer cell is a delivery
// slot id. Slot ids are 1-based, rows run 1..F, users 1..K.

#ifndef riscc_pda_H
#define riscc_pda_H

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"

namespace riscc
{

enum class ArrayKind
{
    PDA,
    MAPDA,
    RMAPDA
};

struct ArrayParams
{
    int t = 0;  // caching gain, always set
    int L1 = 0; // antennas of the (big) group, MAPDA and RMAPDA
    int L0 = 0; // total active antennas, RMAPDA only
    int r = 0;  // number of groups, RMAPDA only
};

struct CacheArray
{
    static constexpr std::int32_t star = 0;

    ArrayKind kind = ArrayKind::PDA;
    int K = 0;             // users (columns), including virtual ones
    int F = 0;             // packets (rows)
    int Z = 0;             // stars per column
    int S = 0;             // distinct slot ids
    int virtual_users = 0; // trailing columns without a real receiver
    ArrayParams params;
    std::vector<std::int32_t> cells; // row-major, star or slot id

    std::int32_t cell(int f, int k) const
    {
        check_index(f, k);
        return cells[(std::size_t)(f - 1) * K + (k - 1)];
    }

    void set_cell(int f, int k, std::int32_t v)
    {
        check_index(f, k);
        cells[(std::size_t)(f - 1) * K + (k - 1)] = v;
    }

    bool is_star(int f, int k) const { return cell(f, k) == star; }

    int real_users() const { return K - virtual_users; }

  private:
    void check_index(int f, int k) const
    {
        if (f < 1 || f > F)
            throw std::out_of_range("CacheArray: row " + std::to_string(f) + " outside [1," + std::to_string(F) + "]");
        if (k < 1 || k > K)
            throw std::out_of_range("CacheArray: user " + std::to_string(k) + " outside [1," + std::to_string(K) + "]");
    }
};

// ---------- BASE CONSTRUCTIONS ----------

// Subset-indexed array: one row per t-subset T of the users, a star where
// k is in T, otherwise the slot labelled by the (t+1)-subset T + {k}.
// Parameters (K, C(K,t), C(K-1,t-1), C(K,t+1)); every slot spans t+1 users.
inline CacheArray mn_pda(int K, int t)
{
    if (K < 2 || t < 1 || t >= K)
        throw std::invalid_argument("mn_pda: need 1 <= t < K, got K=" + std::to_string(K) + ", t=" + std::to_string(t));
    CacheArray arr;
    arr.kind = ArrayKind::PDA;
    arr.K = K;
    arr.F = (int)binomial(K, t);
    arr.Z = (int)binomial(K - 1, t - 1);
    arr.S = (int)binomial(K, t + 1);
    arr.params.t = t;
    arr.cells.assign((std::size_t)arr.F * K, CacheArray::star);
    auto rows = k_subsets(K, t);
    for (int f = 1; f <= arr.F; ++f)
    {
        const auto &T = rows[f - 1];
        for (int k = 1; k <= K; ++k)
        {
            if (std::binary_search(T.begin(), T.end(), k))
                continue;
            std::vector<int> s = T;
            s.insert(std::lower_bound(s.begin(), s.end(), k), k);
            arr.set_cell(f, k, (std::int32_t)(1 + subset_lex_rank(s, K)));
        }
    }
    return arr;
}

namespace detail
{

struct MsBuild
{
    CacheArray array;
    std::vector<std::vector<int>> slot_sets; // slot id -> its (t+L1)-subset, index 0 unused
};

// Multi-antenna construction for one group of L1 antennas. Rows are pairs
// (selector, T): T a t-subset of users, the selector an (L1-1)-subset of
// positions into the users outside T + {k}. Rows are ordered selector-major
// to match the published layout. Every integer cell is tagged with the
// (t+L1)-subset it will serve; cells with the same tag in the same column
// are numbered by order of appearance, and slot ids pack (tag rank, number)
// so that each tag owns a contiguous id block of size C(t+L1-1, t).
inline MsBuild ms_mapda_build(int K, int t, int L1)
{
    if (t < 1 || L1 < 1 || t + L1 > K)
        throw std::invalid_argument("ms_mapda: need t >= 1, L1 >= 1, t + L1 <= K, got K=" + std::to_string(K) +
                                    ", t=" + std::to_string(t) + ", L1=" + std::to_string(L1));
    const int A = (int)binomial(t + L1 - 1, t); // replicas per tag and column
    MsBuild out;
    CacheArray &arr = out.array;
    arr.kind = ArrayKind::MAPDA;
    arr.K = K;
    arr.F = (int)(binomial(K, t) * binomial(K - t - 1, L1 - 1));
    arr.Z = (int)(binomial(K - 1, t - 1) * binomial(K - t - 1, L1 - 1));
    arr.S = (int)(binomial(K, t + L1) * A);
    arr.params.t = t;
    arr.params.L1 = L1;
    arr.cells.assign((std::size_t)arr.F * K, CacheArray::star);
    out.slot_sets.assign(arr.S + 1, {});

    auto selectors = k_subsets(K - t - 1, L1 - 1);
    auto bases = k_subsets(K, t);
    const int FB = (int)bases.size();

    std::vector<int> occurrence((std::size_t)binomial(K, t + L1), 0); // per column, reset below
    for (int k = 1; k <= K; ++k)
    {
        std::fill(occurrence.begin(), occurrence.end(), 0);
        for (std::size_t li = 0; li < selectors.size(); ++li)
            for (int bi = 0; bi < FB; ++bi)
            {
                const auto &T = bases[bi];
                if (std::binary_search(T.begin(), T.end(), k))
                    continue;
                std::vector<int> rem;
                rem.reserve(K - t - 1);
                for (int u = 1; u <= K; ++u)
                    if (u != k && !std::binary_search(T.begin(), T.end(), u))
                        rem.push_back(u);
                std::vector<int> tag = T;
                tag.push_back(k);
                for (int pos : selectors[li])
                    tag.push_back(rem[pos - 1]);
                std::sort(tag.begin(), tag.end());
                long long rank = subset_lex_rank(tag, K);
                int c = ++occurrence[rank];
                if (c > A)
                    throw std::logic_error("ms_mapda: tag appeared more than C(t+L1-1,t) times in a column");
                std::int32_t slot = (std::int32_t)(rank * A + c);
                int f = (int)(li * FB + bi + 1);
                arr.set_cell(f, k, slot);
                if (out.slot_sets[slot].empty())
                    out.slot_sets[slot] = tag;
            }
    }
    return out;
}

} // namespace detail

inline CacheArray ms_mapda(int K, int t, int L1)
{
    return detail::ms_mapda_build(K, t, L1).array;
}

// ---------- VALIDATION ----------

struct Violation
{
    std::string condition; // "stars-per-column", "slot-missing", ...
    int row = 0;
    int col = 0;
    std::int32_t slot = 0;
    std::string detail;
};

struct ValidationReport
{
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }

    std::string summary() const
    {
        if (ok())
            return "valid";
        std::string s = std::to_string(violations.size()) + " violation(s); first: " + violations.front().condition;
        if (!violations.front().detail.empty())
            s += " (" + violations.front().detail + ")";
        return s;
    }
};

namespace detail
{

struct SlotIndex
{
    // per slot id: occupied rows, columns, and cells
    std::vector<std::vector<int>> rows, cols;
    std::vector<std::vector<std::pair<int, int>>> cells;

    SlotIndex(const CacheArray &arr)
    {
        rows.assign(arr.S + 1, {});
        cols.assign(arr.S + 1, {});
        cells.assign(arr.S + 1, {});
        for (int f = 1; f <= arr.F; ++f)
            for (int k = 1; k <= arr.K; ++k)
            {
                std::int32_t v = arr.cell(f, k);
                if (v == CacheArray::star)
                    continue;
                if (rows[v].empty() || rows[v].back() != f)
                    rows[v].push_back(f);
                if (std::find(cols[v].begin(), cols[v].end(), k) == cols[v].end())
                    cols[v].push_back(k);
                cells[v].emplace_back(f, k);
            }
    }
};

// Conditions independent of the antenna budget: cell values in range, stars
// per column equal Z, every slot id occurs, no slot repeats within a column.
inline ValidationReport base_validation(const CacheArray &arr)
{
    ValidationReport rep;
    for (int f = 1; f <= arr.F; ++f)
        for (int k = 1; k <= arr.K; ++k)
        {
            std::int32_t v = arr.cell(f, k);
            if (v != CacheArray::star && (v < 1 || v > arr.S))
                rep.violations.push_back({"slot-out-of-range", f, k, v, "cell value " + std::to_string(v)});
        }
    if (!rep.ok())
        return rep; // indexing below assumes values in range

    for (int k = 1; k <= arr.K; ++k)
    {
        int stars = 0;
        for (int f = 1; f <= arr.F; ++f)
            stars += arr.is_star(f, k);
        if (stars != arr.Z)
            rep.violations.push_back({"stars-per-column", 0, k, 0,
                                      "column " + std::to_string(k) + " has " + std::to_string(stars) +
                                          " stars, expected " + std::to_string(arr.Z)});
    }

    detail::SlotIndex idx(arr);
    for (std::int32_t s = 1; s <= arr.S; ++s)
    {
        if (idx.cells[s].empty())
        {
            rep.violations.push_back({"slot-missing", 0, 0, s, "slot " + std::to_string(s) + " never occurs"});
            continue;
        }
        for (int k : idx.cols[s])
        {
            int cnt = 0;
            for (int f = 1; f <= arr.F; ++f)
                cnt += arr.cell(f, k) == s;
            if (cnt > 1)
                rep.violations.push_back({"slot-repeated-in-column", 0, k, s,
                                          "slot " + std::to_string(s) + " occurs " + std::to_string(cnt) +
                                              " times in column " + std::to_string(k)});
        }
    }
    return rep;
}

} // namespace detail

// Checks the four defining conditions of a multi-antenna array served by
// `antennas` transmit antennas:
//   stars per column equal Z; every slot id in [1,S] occurs; no slot id
//   repeats within a column; and for every slot, each row of the subarray
//   spanned by its rows and columns carries at most min(antennas, K)
//   integer cells (the streams a single transmission must separate).
inline ValidationReport validate_mapda(const CacheArray &arr, int antennas)
{
    if (antennas < 1)
        throw std::invalid_argument("validate_mapda: antennas must be >= 1");
    ValidationReport rep = detail::base_validation(arr);
    if (!rep.ok())
        return rep;

    detail::SlotIndex idx(arr);
    int bound = std::min(antennas, arr.K);
    for (std::int32_t s = 1; s <= arr.S; ++s)
        for (int f : idx.rows[s])
        {
            int integers = 0;
            for (int k : idx.cols[s])
                integers += !arr.is_star(f, k);
            if (integers > bound)
                rep.violations.push_back({"row-overload", f, 0, s,
                                          "row " + std::to_string(f) + " of slot " + std::to_string(s) + " carries " +
                                              std::to_string(integers) + " integer cells, bound " + std::to_string(bound)});
        }
    return rep;
}

inline ValidationReport validate_pda(const CacheArray &arr)
{
    return validate_mapda(arr, 1);
}

// ---------- GROUPED ARRAYS ----------

struct SlotGroup
{
    std::vector<int> users;    // 1-based user labels, sorted
    std::vector<int> antennas; // 1-based antenna labels
};

struct SlotGroupStructure
{
    int slot = 0;
    SlotGroup big;                // t + L1 users on L1 antennas
    std::vector<SlotGroup> small; // r - 1 groups of t + 1 users on 1 antenna each
};

struct ReplicationCounts
{
    long long n1 = 0; // partition vertices containing a fixed (t+1)-subset
    long long n2 = 0; // copies consumed per partition vertex
    long long m = 0;  // copies of the multi-antenna block
    long long F_total = 0;
    long long S_total = 0;
};

namespace detail
{

inline long long checked_mul(long long a, long long b, const char *what)
{
    __int128 p = (__int128)a * b;
    if (p > (__int128)4611686018427387903LL) // headroom for later sums
        throw std::overflow_error(std::string(what) + ": intermediate count overflows");
    return (long long)p;
}

// product of C(K - i*(t+1), t+1) for i in [lo, hi], exactly divided by d!
inline long long block_choices(int K, int t, int lo, int hi, int d)
{
    long long prod = 1;
    for (int i = lo; i <= hi; ++i)
        prod = checked_mul(prod, binomial(K - i * (t + 1), t + 1), "block_choices");
    long long f = factorial(d);
    if (prod % f != 0)
        throw std::logic_error("block_choices: count not divisible by symmetry factor");
    return prod / f;
}

} // namespace detail

// How often each base block must be replicated so the two stacked arrays
// can be merged slot for slot. Requires enough users for one big group
// plus r-1 disjoint single-antenna groups.
inline ReplicationCounts replication_counts(int K, int t, int L1, int r)
{
    if (t < 1 || L1 < 1 || r < 2)
        throw std::invalid_argument("replication_counts: need t >= 1, L1 >= 1, r >= 2");
    int need = (t + L1) + (r - 1) * (t + 1);
    if (K < need)
        throw std::invalid_argument("replication_counts: K=" + std::to_string(K) + " below " + std::to_string(need) +
                                    " users required; pad with virtual users first");
    ReplicationCounts c;
    c.n1 = detail::block_choices(K, t, 1, r - 2, r - 2);
    long long Y1 = detail::block_choices(K, t, 0, r - 2, r - 1);
    long long X2 = detail::checked_mul(binomial(t + L1 - 1, t), binomial(K, t + L1), "replication_counts");
    long long l = std::lcm(X2, Y1);
    c.m = l / X2;
    c.n2 = l / Y1;
    c.S_total = l; // = m * C(t+L1-1,t) * C(K,t+L1)
    c.F_total = detail::checked_mul(c.m, binomial(K - t - 1, L1 - 1), "replication_counts") * binomial(K, t) +
                detail::checked_mul(c.n1, c.n2, "replication_counts") * binomial(K, t);
    return c;
}

// Degrees in the compatibility graph between big-group user sets and
// partition vertices (collections of r-1 disjoint (t+1)-subsets), before
// and after replication. Replication is chosen to equalize the two sides.
struct MatchingDegrees
{
    long long dX1 = 0; // partition vertices avoiding a fixed (t+L1)-subset
    long long dY1 = 0; // (t+L1)-subsets avoiding a fixed partition vertex
    long long dX = 0;  // after replication, per big-group replica
    long long dY = 0;  // after replication, per partition replica
};

inline MatchingDegrees matching_degrees(int K, int t, int L1, int r)
{
    ReplicationCounts c = replication_counts(K, t, L1, r);
    MatchingDegrees d;
    long long prod = 1;
    for (int i = 0; i <= r - 2; ++i)
        prod = detail::checked_mul(prod, binomial(K - (t + L1) - i * (t + 1), t + 1), "matching_degrees");
    d.dX1 = prod / factorial(r - 1);
    d.dY1 = binomial(K - (r - 1) * (t + 1), t + L1);
    d.dX = detail::checked_mul(c.n2, d.dX1, "matching_degrees");
    d.dY = detail::checked_mul(c.m, binomial(t + L1 - 1, t), "matching_degrees") * d.dY1;
    return d;
}

namespace detail
{

// Deterministic Dinic max-flow; adjacency insertion order fixes the result.
class Dinic
{
  public:
    struct Edge
    {
        int to;
        long long cap;
        int rev;
    };

    explicit Dinic(int n) : g(n), level(n), iter(n) {}

    int add_edge(int a, int b, long long cap)
    {
        g[a].push_back({b, cap, (int)g[b].size()});
        g[b].push_back({a, 0, (int)g[a].size() - 1});
        return (int)g[a].size() - 1;
    }

    long long max_flow(int s, int t)
    {
        long long flow = 0;
        while (bfs(s, t))
        {
            std::fill(iter.begin(), iter.end(), 0);
            long long f;
            while ((f = dfs(s, t, (long long)4e18)) > 0)
                flow += f;
        }
        return flow;
    }

    const Edge &edge(int node, int idx) const { return g[node][idx]; }

  private:
    std::vector<std::vector<Edge>> g;
    std::vector<int> level, iter;

    bool bfs(int s, int t)
    {
        std::fill(level.begin(), level.end(), -1);
        std::vector<int> q{s};
        level[s] = 0;
        for (std::size_t h = 0; h < q.size(); ++h)
        {
            int v = q[h];
            for (auto &e : g[v])
                if (e.cap > 0 && level[e.to] < 0)
                {
                    level[e.to] = level[v] + 1;
                    q.push_back(e.to);
                }
        }
        return level[t] >= 0;
    }

    long long dfs(int v, int t, long long f)
    {
        if (v == t)
            return f;
        for (int &i = iter[v]; i < (int)g[v].size(); ++i)
        {
            Edge &e = g[v][i];
            if (e.cap > 0 && level[v] < level[e.to])
            {
                long long d = dfs(e.to, t, std::min(f, e.cap));
                if (d > 0)
                {
                    e.cap -= d;
                    g[e.to][e.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }
};

inline std::uint32_t subset_mask(const std::vector<int> &s)
{
    std::uint32_t m = 0;
    for (int v : s)
        m |= 1u << (v - 1);
    return m;
}

} // namespace detail

struct RmapdaBuild
{
    CacheArray array;
    std::vector<SlotGroupStructure> slot_groups; // index s-1 holds slot s
    ReplicationCounts counts;
};

// Combined array for r antenna groups: a stack of replicated single-antenna
// blocks (top) and replicated multi-antenna blocks (bottom), with slots
// merged so each combined slot schedules one big group of t+L1 users and
// r-1 disjoint single-antenna groups of t+1 users. The merge pairs big-group
// replicas with partition replicas through an exact transportation problem
// (supply m*C(t+L1-1,t) per big set, demand n2 per partition, edges on
// disjointness); the replication counts make it feasible, and full
// saturation plus replica exhaustion are asserted after the fact. When the
// schedule needs more users than K, the array is padded with virtual columns.
inline RmapdaBuild build_rmapda(int K, int t, int L0, int r)
{
    if (t < 1 || r < 1 || L0 < r)
        throw std::invalid_argument("build_rmapda: need t >= 1, 1 <= r <= L0, got t=" + std::to_string(t) +
                                    ", L0=" + std::to_string(L0) + ", r=" + std::to_string(r));
    if (K < 1)
        throw std::invalid_argument("build_rmapda: K must be >= 1");
    const int L1 = L0 - r + 1;
    const int g = L0 + t * r;
    const int K_eff = std::max(K, g);
    if (K_eff > 30)
        throw std::invalid_argument("build_rmapda: K=" + std::to_string(K_eff) + " too large, limit is 30");

    RmapdaBuild out;
    if (r == 1)
    {
        // single group, nothing to merge
        detail::MsBuild ms = detail::ms_mapda_build(K_eff, t, L1);
        out.array = std::move(ms.array);
        out.array.kind = ArrayKind::RMAPDA;
        out.array.params.L0 = L0;
        out.array.params.r = 1;
        out.array.virtual_users = K_eff - K;
        out.counts.m = 1;
        out.counts.F_total = out.array.F;
        out.counts.S_total = out.array.S;
        out.slot_groups.resize(out.array.S);
        for (int s = 1; s <= out.array.S; ++s)
        {
            SlotGroupStructure sg;
            sg.slot = s;
            sg.big.users = ms.slot_sets[s];
            sg.big.antennas.resize(L1);
            std::iota(sg.big.antennas.begin(), sg.big.antennas.end(), 1);
            out.slot_groups[s - 1] = std::move(sg);
        }
        return out;
    }

    out.counts = replication_counts(K_eff, t, L1, r);
    const ReplicationCounts &rc = out.counts;
    const int A = (int)binomial(t + L1 - 1, t);
    const long long mn_copies = rc.n1 * rc.n2;

    CacheArray P0 = mn_pda(K_eff, t);
    detail::MsBuild Q0 = detail::ms_mapda_build(K_eff, t, L1);

    // cell lists per base slot
    std::vector<std::vector<std::pair<int, int>>> p_cells(P0.S + 1), q_cells(Q0.array.S + 1);
    for (int f = 1; f <= P0.F; ++f)
        for (int k = 1; k <= K_eff; ++k)
            if (!P0.is_star(f, k))
                p_cells[P0.cell(f, k)].emplace_back(f, k);
    for (int f = 1; f <= Q0.array.F; ++f)
        for (int k = 1; k <= K_eff; ++k)
            if (!Q0.array.is_star(f, k))
                q_cells[Q0.array.cell(f, k)].emplace_back(f, k);

    // transportation instance
    auto big_sets = k_subsets(K_eff, t + L1);
    std::vector<std::vector<std::vector<int>>> parts; // partition vertices, canonical order
    std::vector<std::uint32_t> part_mask;
    for (auto &U : k_subsets(K_eff, (r - 1) * (t + 1)))
        for (auto &pt : equal_block_partitions(U, t + 1))
        {
            parts.push_back(pt);
            part_mask.push_back(detail::subset_mask(U));
        }
    const int NX = (int)big_sets.size(), NY = (int)parts.size();
    const int src = NX + NY, snk = NX + NY + 1;
    detail::Dinic din(NX + NY + 2);
    std::vector<std::vector<std::pair<int, int>>> xy_edge(NX); // (y index, edge idx at node x)
    for (int x = 0; x < NX; ++x)
        din.add_edge(src, x, (long long)rc.m * A);
    for (int y = 0; y < NY; ++y)
        din.add_edge(NX + y, snk, rc.n2);
    for (int x = 0; x < NX; ++x)
    {
        std::uint32_t xm = detail::subset_mask(big_sets[x]);
        for (int y = 0; y < NY; ++y)
            if ((xm & part_mask[y]) == 0)
                xy_edge[x].emplace_back(y, din.add_edge(x, NX + y, (long long)rc.m * A));
    }
    long long need = (long long)rc.m * A * NX;
    long long got = din.max_flow(src, snk);
    if (got != need)
        throw std::runtime_error("build_rmapda: slot pairing infeasible, matched " + std::to_string(got) + " of " +
                                 std::to_string(need) + " replicas");

    // assemble the stacked array
    CacheArray arr;
    arr.kind = ArrayKind::RMAPDA;
    arr.K = K_eff;
    arr.virtual_users = K_eff - K;
    arr.F = (int)rc.F_total;
    arr.S = (int)rc.S_total;
    arr.Z = (int)(mn_copies * P0.Z + rc.m * Q0.array.Z);
    arr.params = {t, L1, L0, r};
    arr.cells.assign((std::size_t)arr.F * K_eff, CacheArray::star);
    const long long q_base = mn_copies * P0.F; // rows above the multi-antenna block

    std::vector<long long> mn_used(P0.S + 1, 0), ms_used(NX, 0);
    out.slot_groups.resize(arr.S);
    int slot = 0;
    for (int x = 0; x < NX; ++x)
        for (auto [y, ei] : xy_edge[x])
        {
            long long used = (long long)rc.m * A - din.edge(x, ei).cap; // shipped units on this edge
            for (long long u = 0; u < used; ++u)
            {
                ++slot;
                SlotGroupStructure sg;
                sg.slot = slot;
                sg.big.users = big_sets[x];
                sg.big.antennas.resize(L1);
                std::iota(sg.big.antennas.begin(), sg.big.antennas.end(), 1);

                long long idx = ms_used[x]++;
                long long q_copy = idx / A;
                int c = (int)(idx % A) + 1;
                std::int32_t local = (std::int32_t)(subset_lex_rank(big_sets[x], K_eff) * A + c);
                for (auto [f, k] : q_cells[local])
                    arr.set_cell((int)(q_base + q_copy * Q0.array.F + f), k, slot);

                int ant = L1;
                for (auto &blk : parts[y])
                {
                    SlotGroup small;
                    small.users = blk;
                    small.antennas = {++ant};
                    sg.small.push_back(std::move(small));
                    std::int32_t bslot = (std::int32_t)(1 + subset_lex_rank(blk, K_eff));
                    long long p_copy = mn_used[bslot]++;
                    if (p_copy >= mn_copies)
                        throw std::logic_error("build_rmapda: single-antenna block over-consumed");
                    for (auto [f, k] : p_cells[bslot])
                        arr.set_cell((int)(p_copy * P0.F + f), k, slot);
                }
                out.slot_groups[slot - 1] = std::move(sg);
            }
        }
    if (slot != arr.S)
        throw std::logic_error("build_rmapda: produced " + std::to_string(slot) + " slots, expected " + std::to_string(arr.S));
    for (int x = 0; x < NX; ++x)
        if (ms_used[x] != (long long)rc.m * A)
            throw std::logic_error("build_rmapda: big-set replicas not exhausted");
    for (std::int32_t s = 1; s <= P0.S; ++s)
        if (mn_used[s] != mn_copies)
            throw std::logic_error("build_rmapda: single-antenna replicas not exhausted");
    out.array = std::move(arr);
    return out;
}

// Slot-level check of a grouped array: the base conditions, plus, per slot,
// that the stored groups tile exactly the columns carrying the slot and that
// the rows a group serves stay within its stream budget (L1 integer cells
// among the big group's columns, 1 among each singleton group's). Rows are
// judged per group: cross-group interference is removed by the surface, so
// only the columns inside one antenna group compete for its antennas.
inline ValidationReport validate_rmapda(const CacheArray &arr, const std::vector<SlotGroupStructure> &groups)
{
    int L1 = arr.params.L0 - arr.params.r + 1;
    ValidationReport rep = detail::base_validation(arr);
    if (!rep.ok())
        return rep;
    if ((int)groups.size() != arr.S)
    {
        rep.violations.push_back({"group-count", 0, 0, 0,
                                  std::to_string(groups.size()) + " slot groups for " + std::to_string(arr.S) + " slots"});
        return rep;
    }
    detail::SlotIndex idx(arr);
    for (std::int32_t s = 1; s <= arr.S; ++s)
    {
        const SlotGroupStructure &sg = groups[s - 1];
        if (sg.slot != s)
        {
            rep.violations.push_back({"group-slot-mismatch", 0, 0, s, "entry holds slot " + std::to_string(sg.slot)});
            continue;
        }
        if ((int)sg.big.users.size() != arr.params.t + L1)
            rep.violations.push_back({"big-group-size", 0, 0, s,
                                      "big group has " + std::to_string(sg.big.users.size()) + " users, expected " +
                                          std::to_string(arr.params.t + L1)});
        if ((int)sg.small.size() != arr.params.r - 1)
            rep.violations.push_back({"small-group-count", 0, 0, s,
                                      std::to_string(sg.small.size()) + " singleton groups, expected " +
                                          std::to_string(arr.params.r - 1)});
        for (auto &sm : sg.small)
            if ((int)sm.users.size() != arr.params.t + 1)
                rep.violations.push_back({"small-group-size", 0, 0, s,
                                          "singleton group has " + std::to_string(sm.users.size()) +
                                              " users, expected " + std::to_string(arr.params.t + 1)});
        std::vector<int> tiled = sg.big.users;
        for (auto &sm : sg.small)
            tiled.insert(tiled.end(), sm.users.begin(), sm.users.end());
        std::vector<int> sorted_tiled = tiled;
        std::sort(sorted_tiled.begin(), sorted_tiled.end());
        if (std::adjacent_find(sorted_tiled.begin(), sorted_tiled.end()) != sorted_tiled.end())
        {
            rep.violations.push_back({"groups-overlap", 0, 0, s, "a user appears in two groups"});
            continue;
        }
        std::vector<int> occ = idx.cols[s];
        std::sort(occ.begin(), occ.end());
        if (occ != sorted_tiled)
        {
            rep.violations.push_back({"groups-cover", 0, 0, s, "groups do not tile the slot's columns"});
            continue;
        }
        if ((int)sg.big.antennas.size() != L1)
            rep.violations.push_back({"big-antenna-count", 0, 0, s,
                                      "big group has " + std::to_string(sg.big.antennas.size()) +
                                          " antennas, expected " + std::to_string(L1)});
        for (auto &sm : sg.small)
            if (sm.antennas.size() != 1)
                rep.violations.push_back({"small-antenna-count", 0, 0, s,
                                          "singleton group has " + std::to_string(sm.antennas.size()) + " antennas"});

        // rows a group serves: rows where the slot sits in that group's columns
        auto check_group = [&](const std::vector<int> &users, int budget, const char *cond) {
            std::vector<int> rows;
            for (int k : users)
                for (int f = 1; f <= arr.F; ++f)
                    if (arr.cell(f, k) == s)
                        rows.push_back(f);
            std::sort(rows.begin(), rows.end());
            rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
            for (int f : rows)
            {
                int integers = 0;
                for (int k : users)
                    integers += !arr.is_star(f, k);
                if (integers > budget)
                    rep.violations.push_back({cond, f, 0, s,
                                              "row " + std::to_string(f) + " carries " + std::to_string(integers) +
                                                  " integer cells in a group with " + std::to_string(budget) +
                                                  " antenna(s)"});
            }
        };
        check_group(sg.big.users, L1, "big-row-overload");
        for (auto &sm : sg.small)
            check_group(sm.users, 1, "small-row-overload");
    }
    return rep;
}

} // namespace riscc

#endif
