#include "tsapproval/solutions.hpp"

#include <algorithm>
#include <vector>

namespace tsapproval {

std::string_view to_string(SolutionRule rule) {
    switch (rule) {
        case SolutionRule::top_cycle:
            return "tc";
        case SolutionRule::copeland:
            return "co";
        case SolutionRule::uncovered:
            return "uc";
    }
    return "?";
}

std::optional<SolutionRule> parse_rule(std::string_view tag) {
    if (tag == "tc" || tag == "TC") return SolutionRule::top_cycle;
    if (tag == "co" || tag == "CO") return SolutionRule::copeland;
    if (tag == "uc" || tag == "UC") return SolutionRule::uncovered;
    return std::nullopt;
}

CandidateSet copeland_set(const Tournament& t) {
    std::vector<std::size_t> score(t.size());
    for (std::size_t c = 0; c < t.size(); ++c) score[c] = t.outdegree({c});
    const std::size_t best = *std::max_element(score.begin(), score.end());
    CandidateSet out;
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (score[c] == best) out.push_back({c});
    }
    return out;
}

CandidateSet top_cycle(const Tournament& t) { return condense(t).components.front(); }

CandidateSet uncovered_set(const Tournament& t) {
    const std::size_t m = t.size();
    const std::size_t words = t.words_per_row();
    std::vector<std::uint64_t> full(words, ~std::uint64_t{0});
    if (m % 64 != 0) full.back() = (std::uint64_t{1} << (m % 64)) - 1;

    CandidateSet kings;
    std::vector<std::uint64_t> reach(words);
    for (std::size_t a = 0; a < m; ++a) {
        const auto own = t.row({a});
        std::copy(own.begin(), own.end(), reach.begin());
        reach[a / 64] |= std::uint64_t{1} << (a % 64);
        for (std::size_t c = 0; c < m; ++c) {
            if (!((own[c / 64] >> (c % 64)) & 1U)) continue;
            const auto next = t.row({c});
            for (std::size_t w = 0; w < words; ++w) reach[w] |= next[w];
        }
        if (reach == full) kings.push_back({a});
    }
    return kings;
}

CandidateSet apply(SolutionRule rule, const Tournament& t) {
    switch (rule) {
        case SolutionRule::top_cycle:
            return top_cycle(t);
        case SolutionRule::copeland:
            return copeland_set(t);
        case SolutionRule::uncovered:
            return uncovered_set(t);
    }
    return {};
}

std::uint64_t apply_mask(SolutionRule rule, const Tournament& t) {
    if (t.size() > kMaxExhaustiveCandidates) throw ConstructionError("mask form needs at most 64 candidates");
    std::uint64_t mask = 0;
    for (CandidateId c : apply(rule, t)) mask |= std::uint64_t{1} << c.index;
    return mask;
}

}  // namespace tsapproval
