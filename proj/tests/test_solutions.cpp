#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tsapproval/solutions.hpp"

using namespace tsapproval;

namespace {

Tournament t_star() {
    const Arc arcs[] = {{{0}, {1}}, {{1}, {2}}, {{1}, {3}}, {{2}, {0}}, {{2}, {3}}, {{3}, {0}}};
    return Tournament::build(4, arcs);
}

Tournament triangle() { return cyclic_regular(3); }

CandidateSet ids(std::initializer_list<std::size_t> xs) {
    CandidateSet out;
    for (auto x : xs) out.push_back({x});
    return out;
}

bool subset(const CandidateSet& a, const CandidateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

TEST_CASE("Copeland set") {
    CHECK(copeland_set(t_star()) == ids({1, 2}));
    CHECK(copeland_set(triangle()) == ids({0, 1, 2}));
    CHECK(copeland_set(transitive(ids({3, 1, 0, 2}))) == ids({3}));
}

TEST_CASE("top cycle") {
    CHECK(top_cycle(transitive(ids({2, 1, 0}))) == ids({2}));
    CHECK(top_cycle(t_star()) == ids({0, 1, 2, 3}));
    const Arc arcs[] = {{{2}, {0}}, {{0}, {1}}, {{2}, {1}}};
    CHECK(top_cycle(Tournament::build(3, arcs)) == ids({2}));
}

TEST_CASE("uncovered set") {
    CHECK(uncovered_set(t_star()) == ids({0, 1, 2}));
    CHECK(uncovered_set(triangle()) == ids({0, 1, 2}));
    CHECK(uncovered_set(transitive(4)) == ids({0}));
}

TEST_CASE("apply dispatches on the rule") {
    CHECK(apply(SolutionRule::top_cycle, triangle()) == ids({0, 1, 2}));
    CHECK(apply(SolutionRule::copeland, t_star()) == ids({1, 2}));
    CHECK(apply(SolutionRule::uncovered, transitive(ids({1, 0, 2}))) == ids({1}));
    CHECK(apply_mask(SolutionRule::copeland, t_star()) == 0b0110);
    CHECK(parse_rule("uc") == SolutionRule::uncovered);
    CHECK_FALSE(parse_rule("banks").has_value());
}

TEST_CASE("rules match the reference definitions on every tournament up to 6 candidates") {
    for (std::size_t m = 1; m <= 6; ++m) {
        oracle::for_each_tournament(m, [](const oracle::Matrix& beats) {
            const Tournament t = Tournament::from_matrix(beats);
            REQUIRE(oracle::to_set(top_cycle(t)) == oracle::top_cycle_by_reachability(beats));
            REQUIRE(oracle::to_set(uncovered_set(t)) == oracle::kings_by_search(beats));
            REQUIRE(oracle::to_set(copeland_set(t)) == oracle::max_outdegree(beats));
        });
    }
}

TEST_CASE("containment, nonemptiness and Condorcet consistency up to 7 candidates") {
    for (std::size_t m = 1; m <= 7; ++m) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        for (std::uint64_t code = 0; code < total; ++code) {
            const Tournament t = Tournament::from_code(m, code);
            const CandidateSet tc = top_cycle(t);
            const CandidateSet co = copeland_set(t);
            const CandidateSet uc = uncovered_set(t);
            REQUIRE_FALSE(uc.empty());
            REQUIRE(subset(co, tc));
            REQUIRE(subset(uc, tc));
            if (auto s = source(t)) {
                REQUIRE(tc == CandidateSet{*s});
                REQUIRE(co == CandidateSet{*s});
                REQUIRE(uc == CandidateSet{*s});
            }
        }
    }
}

TEST_CASE("containment on random larger tournaments, including multi-word rows") {
    std::mt19937_64 rng(11);
    for (std::size_t m : {8, 13, 40, 64, 65, 130}) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto beats = oracle::random_tournament(m, rng);
            const Tournament t = Tournament::from_matrix(beats);
            const CandidateSet tc = top_cycle(t);
            REQUIRE(subset(copeland_set(t), tc));
            REQUIRE(subset(uncovered_set(t), tc));
            if (m <= 40) REQUIRE(oracle::to_set(uncovered_set(t)) == oracle::kings_by_search(beats));
            REQUIRE(oracle::to_set(tc) == oracle::top_cycle_by_reachability(beats));
        }
    }
}

TEST_CASE("TS-neutrality under random relabelling") {
    std::mt19937_64 rng(3);
    for (std::size_t m = 1; m <= 5; ++m) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        for (std::uint64_t code = 0; code < total; ++code) {
            const Tournament t = Tournament::from_code(m, code);
            std::vector<CandidateId> perm = all_candidates(m);
            std::shuffle(perm.begin(), perm.end(), rng);
            const Tournament moved = permute(t, perm);
            for (SolutionRule rule : kAllRules) {
                CandidateSet mapped;
                for (auto c : apply(rule, t)) mapped.push_back(perm[c.index]);
                std::sort(mapped.begin(), mapped.end());
                REQUIRE(apply(rule, moved) == mapped);
            }
        }
    }
}

TEST_CASE("TS-monotonicity: lifting a chosen candidate keeps it chosen") {
    for (std::size_t m = 1; m <= 5; ++m) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        for (std::uint64_t code = 0; code < total; ++code) {
            const Tournament t = Tournament::from_code(m, code);
            for (SolutionRule rule : kAllRules) {
                for (CandidateId c : apply(rule, t)) {
                    const CandidateSet in = t.in_neighbors(c);
                    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << in.size()); ++mask) {
                        Tournament lifted = t;
                        for (std::size_t b = 0; b < in.size(); ++b) {
                            if ((mask >> b) & 1U) lifted = lifted.reverse_arc(in[b], c);
                        }
                        const CandidateSet after = apply(rule, lifted);
                        REQUIRE(std::binary_search(after.begin(), after.end(), c));
                    }
                }
            }
        }
    }
}
