#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tsapproval/properties.hpp"

using namespace tsapproval;

namespace {

Tournament t_star() {
    const Arc arcs[] = {{{0}, {1}}, {{1}, {2}}, {{1}, {3}}, {{2}, {0}}, {{2}, {3}}, {{3}, {0}}};
    return Tournament::build(4, arcs);
}

std::set<std::size_t> reference_set(SolutionRule rule, const Tournament& t) {
    const auto beats = oracle::matrix_of(t);
    switch (rule) {
        case SolutionRule::top_cycle:
            return oracle::top_cycle_by_reachability(beats);
        case SolutionRule::copeland:
            return oracle::max_outdegree(beats);
        case SolutionRule::uncovered:
            return oracle::kings_by_search(beats);
    }
    return {};
}

// ENM re-check on plain matrices, independent of the library solutions.
bool reference_enm_violation(const TsCounterexample& w) {
    const auto s = reference_set(w.rule, w.before);
    const auto s2 = reference_set(w.rule, w.after);
    const bool grew = !std::includes(s.begin(), s.end(), s2.begin(), s2.end());
    return !s.count(w.candidate.index) && grew && !s2.count(w.candidate.index);
}

std::uint64_t expected_lifts(std::size_t m) {
    std::uint64_t three = 1;
    for (std::size_t i = 1; i < m; ++i) three *= 3;
    return m * three * (std::uint64_t{1} << pair_count(m - 1));
}

}  // namespace

TEST_CASE("top cycle satisfies both exclusive criteria up to 6 candidates") {
    for (TsCriterion criterion : {TsCriterion::exclusive_monotonicity, TsCriterion::enm}) {
        TsAuditConfig config;
        config.max_candidates = 6;
        config.jobs = 4;
        const auto report = audit_ts(SolutionRule::top_cycle, criterion, config);
        CHECK_FALSE(report.witness.has_value());
        CHECK(report.complete);
    }
}

TEST_CASE("every rule is TS-monotonic up to 5 candidates") {
    for (SolutionRule rule : kAllRules) CHECK_FALSE(audit_ts(rule, TsCriterion::ts_monotonicity, 5).has_value());
}

TEST_CASE("exhaustive audits visit the expected number of tournaments and lifts") {
    TsAuditConfig config;
    config.max_candidates = 5;
    config.stop_at_first = false;
    const auto report = audit_ts(SolutionRule::copeland, TsCriterion::enm, config);
    REQUIRE(report.complete);
    std::uint64_t lifts = 0;
    for (std::size_t m = 1; m <= 5; ++m) {
        CHECK(report.tournaments_per_size[m] == (std::uint64_t{1} << pair_count(m)));
        lifts += expected_lifts(m);
    }
    CHECK(report.lifts_checked == lifts);
    CHECK(report.witness.has_value());
}

TEST_CASE("Copeland and uncovered set fail ENM") {
    for (SolutionRule rule : {SolutionRule::copeland, SolutionRule::uncovered}) {
        const auto w = audit_ts(rule, TsCriterion::enm, 5);
        REQUIRE(w.has_value());
        CHECK(w->before.size() <= 5);
        CHECK(is_monotone_lift(w->before, w->after, w->candidate));
        CHECK(violates(*w));
        CHECK(reference_enm_violation(*w));
    }
}

TEST_CASE("parallel and serial audits return the same witness") {
    for (SolutionRule rule : {SolutionRule::copeland, SolutionRule::uncovered}) {
        for (TsCriterion criterion : {TsCriterion::enm, TsCriterion::exclusive_monotonicity}) {
            // Copeland has no exclusive-monotonicity witness here; both runs must agree on that too
            TsAuditConfig serial;
            serial.max_candidates = 5;
            TsAuditConfig parallel = serial;
            parallel.jobs = 7;
            CHECK(audit_ts(rule, criterion, serial).witness == audit_ts(rule, criterion, parallel).witness);
        }
    }
}

TEST_CASE("exhaustive bound and random mode") {
    TsAuditConfig config;
    config.max_candidates = 7;
    CHECK_THROWS_AS(audit_ts(SolutionRule::copeland, TsCriterion::enm, config), AuditError);

    config.exhaustive = false;
    config.max_candidates = 9;
    config.trials = 3000;
    config.seed = 42;
    const auto first = audit_ts(SolutionRule::top_cycle, TsCriterion::enm, config);
    CHECK_FALSE(first.witness.has_value());
    CHECK(first.lifts_checked == 3000);

    const auto a = audit_ts(SolutionRule::uncovered, TsCriterion::enm, config);
    const auto b = audit_ts(SolutionRule::uncovered, TsCriterion::enm, config);
    REQUIRE(a.witness.has_value());
    CHECK(a.witness == b.witness);
    CHECK(a.witness->seed == 42);
    CHECK(violates(*a.witness));
}

TEST_CASE("an uncovered set can grow from three to four under one reversal") {
    bool seen = false;
    for (std::size_t m = 4; m <= 5 && !seen; ++m) {
        for_each_ts_violation(SolutionRule::uncovered, TsCriterion::enm, m, [&](const TsCounterexample& w) {
            std::size_t flipped = 0;
            for (std::size_t b = 0; b < m; ++b)
                if (b != w.candidate.index) flipped += w.before.beats({b}, w.candidate) != w.after.beats({b}, w.candidate);
            if (flipped == 1 && uncovered_set(w.before).size() == 3 && uncovered_set(w.after).size() == 4) {
                seen = violates(w) && reference_enm_violation(w);
                return false;
            }
            return true;
        });
    }
    CHECK(seen);
}

TEST_CASE("Pareto witnesses on the one-vote T* election") {
    const Election e(default_roster(4), {t_star()});
    const auto co = find_pareto_violation(e, SolutionRule::copeland);
    REQUIRE(co.has_value());
    CHECK(co->candidate == CandidateId{0});
    CHECK(co->other == CandidateId{1});
    CHECK(violates(*co));

    const auto uc = find_pareto_violation(e, SolutionRule::uncovered);
    REQUIRE(uc.has_value());
    CHECK(uc->candidate == CandidateId{3});
    CHECK(uc->other == CandidateId{0});
    CHECK(violates(*uc));

    CHECK_FALSE(find_pareto_violation(e, SolutionRule::top_cycle).has_value());
}

TEST_CASE("monotonicity elections built from solution witnesses") {
    for (SolutionRule rule : {SolutionRule::copeland, SolutionRule::uncovered}) {
        const auto enm = audit_ts(rule, TsCriterion::enm, 5);
        REQUIRE(enm.has_value());
        const VcCounterexample vc = build_monotonicity_counterexample(*enm);
        CHECK(vc.before.vote_count() == 3);
        CHECK(violates(vc));
        const auto c = vc.candidate;
        const CandidateSet before = winners(vc.before, rule);
        const CandidateSet after = winners(vc.after, rule);
        CHECK(std::binary_search(before.begin(), before.end(), c));
        CHECK_FALSE(std::binary_search(after.begin(), after.end(), c));
    }

    const auto em = audit_ts(SolutionRule::uncovered, TsCriterion::exclusive_monotonicity, 5);
    REQUIRE(em.has_value());
    const VcCounterexample vc = build_monotonicity_counterexample(*em);
    CHECK(violates(vc));
    CHECK((vc.before.vote_count() == 1 || vc.before.vote_count() == 4));

    TsCounterexample bogus{SolutionRule::top_cycle, TsCriterion::enm, transitive(3), transitive(3), {2}, 0};
    CHECK_THROWS_AS(build_monotonicity_counterexample(bogus), AuditError);
}

TEST_CASE("exclusive-monotonicity witness where the solution grows gives four votes") {
    bool built = false;
    for (std::size_t m = 3; m <= 5 && !built; ++m) {
        for_each_ts_violation(SolutionRule::uncovered, TsCriterion::exclusive_monotonicity, m,
                              [&](const TsCounterexample& w) {
                                  const CandidateSet after = uncovered_set(w.after);
                                  if (!std::binary_search(after.begin(), after.end(), w.candidate)) return true;
                                  const VcCounterexample vc = build_monotonicity_counterexample(w);
                                  built = vc.before.vote_count() == 4 && violates(vc);
                                  return false;
                              });
    }
    CHECK(built);
}

TEST_CASE("randomized voting audits") {
    VcAuditConfig config;
    config.max_candidates = 5;
    config.max_votes = 5;
    config.trials = 2000;
    config.seed = 7;
    CHECK_FALSE(audit_vc_monotonicity(SolutionRule::top_cycle, config).has_value());
    for (SolutionRule rule : {SolutionRule::copeland, SolutionRule::uncovered}) {
        const auto w = audit_vc_monotonicity(rule, config);
        REQUIRE(w.has_value());
        CHECK(violates(*w));
    }
    CHECK_FALSE(audit_pareto(SolutionRule::top_cycle, config).has_value());
    for (SolutionRule rule : kAllRules) {
        CHECK_FALSE(audit_consistency(rule, config).has_value());
        CHECK_FALSE(audit_majority(rule, config).has_value());
        CHECK_FALSE(audit_anonymity(rule, config).has_value());
        CHECK_FALSE(audit_neutrality(rule, config).has_value());
    }
}

TEST_CASE("exhaustive voting audits on tiny elections") {
    VcAuditConfig config;
    config.exhaustive = true;
    config.max_candidates = 3;
    config.max_votes = 3;
    for (SolutionRule rule : kAllRules) {
        CHECK_FALSE(audit_consistency(rule, config).has_value());
        CHECK_FALSE(audit_majority(rule, config).has_value());
        CHECK_FALSE(audit_anonymity(rule, config).has_value());
        CHECK_FALSE(audit_neutrality(rule, config).has_value());
    }
    config.max_candidates = 4;
    config.max_votes = 2;
    CHECK_FALSE(audit_vc_monotonicity(SolutionRule::top_cycle, config).has_value());
    CHECK_FALSE(audit_pareto(SolutionRule::top_cycle, config).has_value());
    const auto co = audit_pareto(SolutionRule::copeland, config);
    REQUIRE(co.has_value());
    CHECK(violates(*co));
    const auto mono = audit_vc_monotonicity(SolutionRule::uncovered, config);
    REQUIRE(mono.has_value());
    CHECK(violates(*mono));

    config.max_candidates = 5;
    CHECK_THROWS_AS(audit_pareto(SolutionRule::copeland, config), AuditError);
}

TEST_CASE("criterion tags") {
    CHECK(parse_ts_criterion("enm") == TsCriterion::enm);
    CHECK(parse_ts_criterion(to_string(TsCriterion::exclusive_monotonicity)) == TsCriterion::exclusive_monotonicity);
    CHECK(parse_vc_criterion("pareto") == VcCriterion::pareto);
    CHECK_FALSE(parse_vc_criterion("banks").has_value());
    CHECK(default_roster(3) == std::vector<std::string>{"a", "b", "c"});
    CHECK(source(source_tournament(4, {2})) == CandidateId{2});
}
