#ifndef TSAPPROVAL_SOLUTIONS_HPP
#define TSAPPROVAL_SOLUTIONS_HPP

#include <optional>
#include <string>
#include <string_view>

#include "tsapproval/tournament.hpp"

namespace tsapproval {

/// Tournament solution: maps every tournament to a nonempty candidate subset.
enum class SolutionRule { top_cycle, copeland, uncovered };

inline constexpr SolutionRule kAllRules[] = {SolutionRule::top_cycle, SolutionRule::copeland,
                                             SolutionRule::uncovered};

/// Short tag: "tc", "co" or "uc".
std::string_view to_string(SolutionRule rule);
std::optional<SolutionRule> parse_rule(std::string_view tag);

/// Candidates of maximum outdegree.
CandidateSet copeland_set(const Tournament& t);

/// First component of the condensation.
CandidateSet top_cycle(const Tournament& t);

/// Kings: candidates reaching everyone in at most two steps.
CandidateSet uncovered_set(const Tournament& t);

CandidateSet apply(SolutionRule rule, const Tournament& t);

/// Bit mask form of apply() for tournaments with at most 64 candidates.
std::uint64_t apply_mask(SolutionRule rule, const Tournament& t);

}  // namespace tsapproval

#endif  // TSAPPROVAL_SOLUTIONS_HPP
