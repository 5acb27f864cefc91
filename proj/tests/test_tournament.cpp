#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsapproval/tournament.hpp"

using namespace tsapproval;

namespace {

// a=0 b=1 c=2 d=3: a>b, b>c, b>d, c>a, c>d, d>a
Tournament t_star() {
    const Arc arcs[] = {{{0}, {1}}, {{1}, {2}}, {{1}, {3}}, {{2}, {0}}, {{2}, {3}}, {{3}, {0}}};
    return Tournament::build(4, arcs);
}

// x=0 y=1 z=2: x>y, y>z, z>x
Tournament triangle() {
    const Arc arcs[] = {{{0}, {1}}, {{1}, {2}}, {{2}, {0}}};
    return Tournament::build(3, arcs);
}

CandidateSet ids(std::initializer_list<std::size_t> xs) {
    CandidateSet out;
    for (auto x : xs) out.push_back({x});
    return out;
}

}  // namespace

TEST_CASE("build accepts exactly one orientation per pair") {
    CHECK(Tournament::build(1, {}).size() == 1);
    const Tournament t = triangle();
    CHECK(t.beats({0}, {1}));
    CHECK(t.beats({1}, {2}));
    CHECK(t.beats({2}, {0}));
    CHECK_FALSE(t.beats({1}, {0}));
    CHECK_FALSE(t.beats({0}, {0}));

    const Tournament s = t_star();
    CHECK(s.beats({0}, {1}));
    CHECK(s.beats({3}, {0}));
}

TEST_CASE("build rejects malformed arc sets with the offending pair") {
    SUBCASE("missing pair") {
        const Arc arcs[] = {{{0}, {1}}, {{1}, {2}}};
        CHECK_THROWS_WITH_AS(Tournament::build(3, arcs), "missing pair (0,2)", ConstructionError);
    }
    SUBCASE("duplicated pair") {
        const Arc arcs[] = {{{0}, {1}}, {{0}, {1}}};
        CHECK_THROWS_WITH_AS(Tournament::build(2, arcs), "duplicated pair (0,1)", ConstructionError);
    }
    SUBCASE("both orientations") {
        const Arc arcs[] = {{{0}, {1}}, {{1}, {0}}};
        CHECK_THROWS_WITH_AS(Tournament::build(2, arcs), "both orientations given for pair (0,1)",
                             ConstructionError);
    }
    SUBCASE("self-loop") {
        const Arc arcs[] = {{{1}, {1}}};
        CHECK_THROWS_WITH_AS(Tournament::build(2, arcs), "self-loop at candidate 1", ConstructionError);
    }
    SUBCASE("zero candidates") { CHECK_THROWS_AS(Tournament::build(0, {}), ConstructionError); }
}

TEST_CASE("neighborhoods") {
    CHECK(triangle().out_neighbors({0}) == ids({1}));
    CHECK(t_star().out_neighbors({1}) == ids({2, 3}));
    CHECK(t_star().out_neighbors({3}) == ids({0}));
    CHECK(t_star().in_neighbors({0}) == ids({2, 3}));
    CHECK_THROWS_AS((void)t_star().out_neighbors({4}), ConstructionError);

    const Tournament s = t_star();
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(s.out_neighbors({c}).size() + s.in_neighbors({c}).size() == 3);
        CHECK(s.outdegree({c}) == s.out_neighbors({c}).size());
    }
}

TEST_CASE("reverse_arc flips one pair and leaves the input untouched") {
    const Tournament t = triangle();
    const Tournament r = t.reverse_arc({0}, {1});
    CHECK(t.beats({0}, {1}));
    CHECK(r.beats({1}, {0}));
    CHECK(r.beats({1}, {2}));
    CHECK(r.beats({2}, {0}));
    CHECK(source(r) == CandidateId{1});
    CHECK(r.reverse_arc({1}, {0}) == t);
    CHECK(t.reverse_arc({1}, {0}) == r);

    const Tournament s = t_star().reverse_arc({3}, {0});
    CHECK(s.out_neighbors({0}) == ids({1, 3}));

    CHECK_THROWS_AS((void)t.reverse_arc({2}, {2}), ConstructionError);
}

TEST_CASE("induced subtournaments") {
    const Tournament s = t_star();
    CHECK(induced(s, all_candidates(4)).tournament == s);

    const auto abc = induced(s, ids({0, 1, 2}));
    CHECK(abc.original == ids({0, 1, 2}));
    CHECK(abc.tournament.beats({0}, {1}));
    CHECK(abc.tournament.beats({1}, {2}));
    CHECK(abc.tournament.beats({2}, {0}));

    const auto single = induced(triangle(), ids({0}));
    CHECK(single.tournament.size() == 1);

    const auto bd = induced(s, ids({3, 1}));
    CHECK(bd.original == ids({1, 3}));
    CHECK(bd.tournament.beats({0}, {1}));

    CHECK_THROWS_AS(induced(s, {}), ConstructionError);
}

TEST_CASE("source") {
    CHECK_FALSE(source(triangle()).has_value());
    CHECK_FALSE(source(t_star()).has_value());
    CHECK(source(transitive(ids({2, 0, 1}))) == CandidateId{2});
    CHECK(source(transitive(5)) == CandidateId{0});
}

TEST_CASE("condense examples") {
    const auto chain = condense(transitive(3)).components;
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == ids({0}));
    CHECK(chain[1] == ids({1}));
    CHECK(chain[2] == ids({2}));

    const auto whole = condense(t_star()).components;
    REQUIRE(whole.size() == 1);
    CHECK(whole[0] == ids({0, 1, 2, 3}));

    // p=0 q=1 r=2: r>p, p>q, r>q
    const Arc arcs[] = {{{2}, {0}}, {{0}, {1}}, {{2}, {1}}};
    const auto rpq = condense(Tournament::build(3, arcs)).components;
    REQUIRE(rpq.size() == 3);
    CHECK(rpq[0] == ids({2}));
    CHECK(rpq[1] == ids({0}));
    CHECK(rpq[2] == ids({1}));
}

namespace {

void check_condensation_against_reachability(const oracle::Matrix& beats) {
    const Tournament t = Tournament::from_matrix(beats);
    const auto reach = oracle::reachability(beats);
    const auto comps = condense(t).components;
    std::vector<int> where(beats.size(), -1);
    for (std::size_t k = 0; k < comps.size(); ++k) {
        REQUIRE_FALSE(comps[k].empty());
        for (auto c : comps[k]) {
            REQUIRE(where[c.index] == -1);
            where[c.index] = static_cast<int>(k);
        }
    }
    for (std::size_t a = 0; a < beats.size(); ++a) {
        REQUIRE(where[a] >= 0);
        for (std::size_t b = 0; b < beats.size(); ++b) {
            if (a == b) continue;
            if (where[a] == where[b]) {
                REQUIRE(reach[a][b]);  // strongly connected
            } else if (where[a] < where[b]) {
                REQUIRE(beats[a][b]);  // earlier components beat later ones
            }
        }
    }
}

}  // namespace

TEST_CASE("condense agrees with pairwise reachability") {
    for (std::size_t m = 1; m <= 6; ++m) {
        oracle::for_each_tournament(m, check_condensation_against_reachability);
    }
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20000; ++trial) check_condensation_against_reachability(oracle::random_tournament(7, rng));
}

TEST_CASE("degree sums and codes over all small tournaments") {
    for (std::size_t m = 1; m <= 5; ++m) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        for (std::uint64_t code = 0; code < total; ++code) {
            const Tournament t = Tournament::from_code(m, code);
            std::size_t sum = 0;
            for (std::size_t c = 0; c < m; ++c) sum += t.outdegree({c});
            REQUIRE(sum == m * (m - 1) / 2);
            REQUIRE(t.code() == code);
            REQUIRE(Tournament::from_matrix(oracle::matrix_of(t)) == t);
            const auto src = source(t);
            std::size_t full = 0;
            for (std::size_t c = 0; c < m; ++c) full += t.outdegree({c}) == m - 1 ? 1 : 0;
            REQUIRE(full <= 1);
            REQUIRE(src.has_value() == (full == 1));
        }
    }
}

TEST_CASE("canonical pair order") {
    CHECK(pair_index(4, 0, 1) == 0);
    CHECK(pair_index(4, 0, 3) == 2);
    CHECK(pair_index(4, 1, 2) == 3);
    CHECK(pair_index(4, 2, 3) == 5);
    for (std::size_t t = 0; t < pair_count(6); ++t) {
        const auto [i, j] = pair_at(6, t);
        CHECK(pair_index(6, i, j) == t);
    }
    // code 0 is transitive with 0 on top; bit 0 flips pair (0,1)
    CHECK(Tournament::from_code(3, 1).beats({1}, {0}));
}

TEST_CASE("regularity") {
    CHECK(is_regular(triangle()));
    CHECK_FALSE(is_regular(transitive(3)));
    CHECK(is_regular(cyclic_regular(5)));
    for (std::size_t c = 0; c < 5; ++c) CHECK(cyclic_regular(5).outdegree({c}) == 2);
    CHECK(cyclic_regular(1).size() == 1);
    CHECK(cyclic_regular(3).out_neighbors({0}) == ids({1}));
    CHECK_THROWS_AS(cyclic_regular(4), ConstructionError);
    CHECK_THROWS_AS(cyclic_regular(0), ConstructionError);

    for (std::size_t m = 1; m <= 12; ++m) {
        const Tournament r = regular_tournament(m);
        CHECK(r.size() == m);
        CHECK(is_regular(r));
        if (m >= 3) CHECK_FALSE(source(r).has_value());
    }
}

TEST_CASE("permute relabels arcs") {
    const Tournament s = t_star();
    const std::vector<CandidateId> perm = {{2}, {0}, {3}, {1}};
    const Tournament p = permute(s, perm);
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
            if (a != b) CHECK(p.beats(perm[a], perm[b]) == s.beats({a}, {b}));
}

TEST_CASE("ArcBuilder fills unconstrained pairs with the lower index winning") {
    ArcBuilder builder(4);
    builder.require({3}, {0}).require_all(ids({2}), ids({0, 1}));
    const Tournament t = builder.finish();
    CHECK(t.beats({3}, {0}));
    CHECK(t.beats({2}, {0}));
    CHECK(t.beats({2}, {1}));
    CHECK(t.beats({0}, {1}));
    CHECK(t.beats({1}, {3}));
    CHECK_THROWS_AS(builder.require({0}, {3}), ConstructionError);
}
