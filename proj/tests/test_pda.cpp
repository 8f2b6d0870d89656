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

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <sstream>

#include <riscc/pda.hpp>

using namespace riscc;

namespace
{

// reference 7-user single-antenna array, slots labelled in lex order of pairs
const char *k7_t1_rows[7] = {
    "*,1,2,3,4,5,6", "1,*,7,8,9,10,11", "2,7,*,12,13,14,15", "3,8,12,*,16,17,18",
    "4,9,13,16,*,19,20", "5,10,14,17,19,*,21", "6,11,15,18,20,21,*",
};

// reference 7-user two-antenna array written as the 3-subset each cell serves
const char *k7_t1_L2_rows[35] = {
    "*,123,123,124,125,126,127", "123,*,123,124,125,126,127", "123,123,*,134,135,136,137",
    "124,124,134,*,145,146,147", "125,125,135,145,*,156,157", "126,126,136,146,156,*,167",
    "127,127,137,147,157,167,*", "*,124,134,134,135,136,137", "124,*,234,234,235,236,237",
    "134,234,*,234,235,236,237", "134,234,234,*,245,246,247", "135,235,235,245,*,256,257",
    "136,236,236,246,256,*,267", "137,237,237,247,257,267,*", "*,125,135,145,145,146,147",
    "125,*,235,245,245,246,247", "135,235,*,345,345,346,347", "145,245,345,*,345,346,347",
    "145,245,345,345,*,356,357", "146,246,346,346,356,*,367", "147,247,347,347,357,367,*",
    "*,126,136,146,156,156,157", "126,*,236,246,256,256,257", "136,236,*,346,356,356,357",
    "146,246,346,*,456,456,457", "156,256,356,456,*,456,457", "156,256,356,456,456,*,467",
    "157,257,357,457,457,467,*", "*,127,137,147,157,167,167", "127,*,237,247,257,267,267",
    "137,237,*,347,357,367,367", "147,247,347,*,457,467,467", "157,257,357,457,*,567,567",
    "167,267,367,467,567,*,567", "167,267,367,467,567,567,*",
};

std::vector<std::string> split_row(const std::string &row)
{
    std::vector<std::string> out;
    std::stringstream ss(row);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(tok);
    return out;
}

std::string set_to_digits(const std::vector<int> &s)
{
    std::string out;
    for (int v : s)
        out += std::to_string(v);
    return out;
}

} // namespace

TEST_CASE("single-antenna construction, smallest case", "[pda]")
{
    CacheArray arr = mn_pda(2, 1);
    CHECK(arr.F == 2);
    CHECK(arr.Z == 1);
    CHECK(arr.S == 1);
    CHECK(arr.is_star(1, 1));
    CHECK(arr.cell(1, 2) == 1);
    CHECK(arr.cell(2, 1) == 1);
    CHECK(arr.is_star(2, 2));
    CHECK(validate_pda(arr).ok());
}

TEST_CASE("single-antenna construction matches the 7-user reference", "[pda]")
{
    CacheArray arr = mn_pda(7, 1);
    REQUIRE(arr.F == 7);
    REQUIRE(arr.K == 7);
    CHECK(arr.Z == 1);
    CHECK(arr.S == 21);
    for (int f = 1; f <= 7; ++f)
    {
        auto cells = split_row(k7_t1_rows[f - 1]);
        for (int k = 1; k <= 7; ++k)
        {
            INFO("row " << f << " col " << k);
            if (cells[k - 1] == "*")
                REQUIRE(arr.is_star(f, k));
            else
                REQUIRE(arr.cell(f, k) == std::stoi(cells[k - 1]));
        }
    }
    CHECK(validate_pda(arr).ok());
}

TEST_CASE("single-antenna arrays validate across a parameter sweep", "[pda]")
{
    for (int K = 2; K <= 8; ++K)
        for (int t = 1; t < K; ++t)
        {
            CacheArray arr = mn_pda(K, t);
            INFO("K=" << K << " t=" << t);
            REQUIRE(arr.F == binomial(K, t));
            REQUIRE(arr.Z == binomial(K - 1, t - 1));
            REQUIRE(arr.S == binomial(K, t + 1));
            REQUIRE(validate_pda(arr).ok());
            // regularity: every slot occupies exactly t+1 cells
            std::vector<int> occ(arr.S + 1, 0);
            for (int f = 1; f <= arr.F; ++f)
                for (int k = 1; k <= K; ++k)
                    if (!arr.is_star(f, k))
                        ++occ[arr.cell(f, k)];
            for (int s = 1; s <= arr.S; ++s)
                REQUIRE(occ[s] == t + 1);
        }
    CHECK_THROWS_AS(mn_pda(4, 4), std::invalid_argument);
    CHECK_THROWS_AS(mn_pda(4, 0), std::invalid_argument);
}

TEST_CASE("two-antenna construction matches the 7-user reference served sets", "[pda]")
{
    detail::MsBuild ms = detail::ms_mapda_build(7, 1, 2);
    const CacheArray &arr = ms.array;
    REQUIRE(arr.F == 35);
    REQUIRE(arr.K == 7);
    CHECK(arr.Z == 5);
    CHECK(arr.S == 70);
    for (int f = 1; f <= 35; ++f)
    {
        auto cells = split_row(k7_t1_L2_rows[f - 1]);
        REQUIRE(cells.size() == 7);
        for (int k = 1; k <= 7; ++k)
        {
            INFO("row " << f << " col " << k);
            if (cells[k - 1] == "*")
                REQUIRE(arr.is_star(f, k));
            else
                REQUIRE(set_to_digits(ms.slot_sets[arr.cell(f, k)]) == cells[k - 1]);
        }
    }
    CHECK(validate_mapda(arr, 2).ok());

    // every slot occurs exactly 3 times, once per user it serves
    std::map<int, std::vector<int>> cols;
    for (int f = 1; f <= arr.F; ++f)
        for (int k = 1; k <= 7; ++k)
            if (!arr.is_star(f, k))
                cols[arr.cell(f, k)].push_back(k);
    REQUIRE((int)cols.size() == arr.S);
    for (auto &[s, ks] : cols)
    {
        REQUIRE(ks.size() == 3);
        std::vector<int> sorted = ks;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        REQUIRE(sorted.size() == 3);
        REQUIRE(sorted == ms.slot_sets[s]);
    }
}

TEST_CASE("two-antenna construction with one antenna reduces to the base array", "[pda]")
{
    CacheArray a = ms_mapda(6, 2, 1);
    CacheArray b = mn_pda(6, 2);
    CHECK(a.F == b.F);
    CHECK(a.Z == b.Z);
    CHECK(a.S == b.S);
    CHECK(a.cells == b.cells);
}

TEST_CASE("multi-antenna arrays validate across a sweep", "[pda]")
{
    for (int K = 4; K <= 8; ++K)
        for (int t = 1; t <= 3; ++t)
            for (int L1 = 1; L1 <= 3; ++L1)
            {
                if (t + L1 > K)
                    continue;
                CacheArray arr = ms_mapda(K, t, L1);
                INFO("K=" << K << " t=" << t << " L1=" << L1);
                REQUIRE(validate_mapda(arr, L1).ok());
                REQUIRE(arr.S == binomial(K, t + L1) * binomial(t + L1 - 1, t));
            }
    CHECK_THROWS_AS(ms_mapda(4, 2, 3), std::invalid_argument);
}

TEST_CASE("validators catch seeded defects", "[pda]")
{
    CacheArray arr = mn_pda(5, 2);

    SECTION("star count broken")
    {
        CacheArray bad = arr;
        for (int f = 1; f <= bad.F; ++f)
            if (bad.is_star(f, 1))
            {
                bad.set_cell(f, 1, 1);
                break;
            }
        auto rep = validate_pda(bad);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (auto &v : rep.violations)
            found |= v.condition == "stars-per-column";
        CHECK(found);
    }

    SECTION("slot repeated within a column")
    {
        CacheArray bad = arr;
        int first_f = 0, first_s = 0;
        for (int f = 1; f <= bad.F && !first_f; ++f)
            if (!bad.is_star(f, 1))
                first_f = f, first_s = bad.cell(f, 1);
        for (int f = first_f + 1; f <= bad.F; ++f)
            if (!bad.is_star(f, 1) && bad.cell(f, 1) != first_s)
            {
                bad.set_cell(f, 1, first_s);
                break;
            }
        auto rep = validate_pda(bad);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (auto &v : rep.violations)
            found |= v.condition == "slot-repeated-in-column" || v.condition == "slot-missing";
        CHECK(found);
    }

    SECTION("slot id outside the declared range")
    {
        CacheArray bad = arr;
        for (int f = 1; f <= bad.F; ++f)
            if (!bad.is_star(f, 2))
            {
                bad.set_cell(f, 2, bad.S + 5);
                break;
            }
        auto rep = validate_pda(bad);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.violations.front().condition == "slot-out-of-range");
    }

    SECTION("stream budget exceeded")
    {
        // two-antenna array judged against a single antenna must overload rows
        CacheArray two = ms_mapda(5, 1, 2);
        REQUIRE(validate_mapda(two, 2).ok());
        auto rep = validate_mapda(two, 1);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (auto &v : rep.violations)
            found |= v.condition == "row-overload";
        CHECK(found);
    }
}

TEST_CASE("replication counts for the worked 7-user grouped case", "[pda]")
{
    ReplicationCounts c = replication_counts(7, 1, 2, 3);
    CHECK(c.n1 == 10);
    CHECK(c.n2 == 2);
    CHECK(c.m == 3);
    CHECK(c.F_total == 245);
    CHECK(c.S_total == 210);
    CHECK_THROWS_AS(replication_counts(6, 1, 2, 3), std::invalid_argument); // needs 7 users
    CHECK_THROWS_AS(replication_counts(7, 1, 2, 1), std::invalid_argument);
}

TEST_CASE("replication equalizes the two matching degrees", "[pda]")
{
    MatchingDegrees d = matching_degrees(7, 1, 2, 3);
    CHECK(d.dX1 == 3);
    CHECK(d.dY1 == 1);
    CHECK(d.dX == 6);
    CHECK(d.dY == 6);
    for (int K = 7; K <= 9; ++K)
        for (int t = 1; t <= 2; ++t)
            for (int r = 2; r <= 3; ++r)
                for (int L1 = 1; L1 <= 3; ++L1)
                {
                    if (K < (t + L1) + (r - 1) * (t + 1))
                        continue;
                    MatchingDegrees dd = matching_degrees(K, t, L1, r);
                    INFO("K=" << K << " t=" << t << " L1=" << L1 << " r=" << r);
                    REQUIRE(dd.dX == dd.dY);
                }
}

TEST_CASE("grouped array for the worked 7-user case", "[pda]")
{
    RmapdaBuild b = build_rmapda(7, 1, 4, 3);
    const CacheArray &arr = b.array;
    CHECK(b.counts.n1 == 10);
    CHECK(b.counts.n2 == 2);
    CHECK(b.counts.m == 3);
    REQUIRE(arr.F == 245);
    REQUIRE(arr.S == 210);
    CHECK(arr.K == 7);
    CHECK(arr.Z == 35); // cache ratio 1/7
    CHECK(arr.virtual_users == 0);
    REQUIRE(validate_rmapda(arr, b.slot_groups).ok());

    // every slot serves 7 users split 3 + 2 + 2
    std::vector<int> occ(arr.S + 1, 0);
    for (int f = 1; f <= arr.F; ++f)
        for (int k = 1; k <= 7; ++k)
            if (!arr.is_star(f, k))
                ++occ[arr.cell(f, k)];
    for (int s = 1; s <= arr.S; ++s)
        REQUIRE(occ[s] == 7);
    for (auto &sg : b.slot_groups)
    {
        REQUIRE(sg.big.users.size() == 3);
        REQUIRE(sg.big.antennas == std::vector<int>{1, 2});
        REQUIRE(sg.small.size() == 2);
        REQUIRE(sg.small[0].users.size() == 2);
        REQUIRE(sg.small[1].users.size() == 2);
        REQUIRE(sg.small[0].antennas == std::vector<int>{3});
        REQUIRE(sg.small[1].antennas == std::vector<int>{4});
    }

    // the six slots of big set {1,2,3} use each partition of {4,5,6,7} twice
    std::map<std::string, int> part_use;
    int hits = 0;
    for (auto &sg : b.slot_groups)
        if (sg.big.users == std::vector<int>{1, 2, 3})
        {
            ++hits;
            part_use[set_to_digits(sg.small[0].users) + "|" + set_to_digits(sg.small[1].users)]++;
        }
    CHECK(hits == 6);
    REQUIRE(part_use.size() == 3);
    CHECK(part_use["45|67"] == 2);
    CHECK(part_use["46|57"] == 2);
    CHECK(part_use["47|56"] == 2);
}

TEST_CASE("grouped build pads with virtual users when the schedule is larger than K", "[pda]")
{
    RmapdaBuild b = build_rmapda(5, 1, 4, 3); // serves 7 users per slot
    CHECK(b.array.K == 7);
    CHECK(b.array.virtual_users == 2);
    CHECK(b.array.real_users() == 5);
    CHECK(validate_rmapda(b.array, b.slot_groups).ok());
}

TEST_CASE("grouped build with a single group is the plain multi-antenna array", "[pda]")
{
    RmapdaBuild b = build_rmapda(7, 1, 3, 1);
    CacheArray plain = ms_mapda(7, 1, 3);
    CHECK(b.array.cells == plain.cells);
    CHECK(b.array.kind == ArrayKind::RMAPDA);
    REQUIRE((int)b.slot_groups.size() == b.array.S);
    for (auto &sg : b.slot_groups)
    {
        CHECK(sg.big.users.size() == 4);
        CHECK(sg.small.empty());
    }
    CHECK(validate_rmapda(b.array, b.slot_groups).ok());
}

TEST_CASE("grouped build rejects bad shapes", "[pda]")
{
    CHECK_THROWS_AS(build_rmapda(7, 0, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_rmapda(7, 1, 2, 3), std::invalid_argument); // L0 < r
    CHECK_THROWS_AS(build_rmapda(0, 1, 4, 3), std::invalid_argument);
}
