#ifndef TSAPPROVAL_ELECTION_HPP
#define TSAPPROVAL_ELECTION_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsapproval/solutions.hpp"
#include "tsapproval/tournament.hpp"

namespace tsapproval {

/// Roster mismatch, empty vote list, bad candidate name, unknown candidate.
class ElectionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Winning means being the only winner (unique) or any winner (nonunique).
enum class WinnerModel { unique, nonunique };

std::string_view to_string(WinnerModel model);
std::optional<WinnerModel> parse_model(std::string_view tag);

/**
 * @brief candidate roster plus a nonempty sequence of tournament votes
 *
 * Names are ASCII tokens without whitespace, unique within the roster;
 * index i of every vote refers to roster()[i].
 */
class Election {
   public:
    Election(std::vector<std::string> roster, std::vector<Tournament> votes);

    [[nodiscard]] const std::vector<std::string>& roster() const noexcept { return roster_; }
    [[nodiscard]] std::span<const Tournament> votes() const noexcept { return votes_; }
    [[nodiscard]] const Tournament& vote(std::size_t i) const { return votes_.at(i); }
    [[nodiscard]] std::size_t candidate_count() const noexcept { return roster_.size(); }
    [[nodiscard]] std::size_t vote_count() const noexcept { return votes_.size(); }

    [[nodiscard]] std::optional<CandidateId> find(std::string_view name) const;
    /// Like find() but throws ElectionError for unknown names.
    [[nodiscard]] CandidateId id_of(std::string_view name) const;
    [[nodiscard]] const std::string& name_of(CandidateId c) const;

    friend bool operator==(const Election&, const Election&) = default;

   private:
    std::vector<std::string> roster_;
    std::vector<Tournament> votes_;
};

/// Throws ElectionError unless `name` is a nonempty printable ASCII token.
void check_candidate_name(std::string_view name);

/// Per vote, the candidates implicitly approved (the vote's solution set).
struct ApprovalProfile {
    std::size_t candidate_count = 0;
    std::vector<CandidateSet> ballots;

    friend bool operator==(const ApprovalProfile&, const ApprovalProfile&) = default;
};

/**
 * @brief solution sets of every vote, computed once, plus the derived scores
 *
 * Everything is computed in the constructor, so concurrent reads are safe.
 */
class ElectionEvaluation {
   public:
    ElectionEvaluation(const Election& election, SolutionRule rule);

    [[nodiscard]] const CandidateSet& approved(std::size_t vote) const { return approved_.at(vote); }
    [[nodiscard]] std::span<const std::size_t> scores() const noexcept { return scores_; }
    [[nodiscard]] std::size_t score(CandidateId c) const { return scores_.at(c.index); }
    [[nodiscard]] CandidateSet winners() const;

   private:
    std::vector<CandidateSet> approved_;
    std::vector<std::size_t> scores_;
};

/// Number of votes whose solution set contains c.
std::size_t ts_score(const Election& e, SolutionRule rule, CandidateId c);

/// All candidates with the highest score.
CandidateSet winners(const Election& e, SolutionRule rule);

bool wins(const Election& e, SolutionRule rule, CandidateId p, WinnerModel model);

ApprovalProfile dichotomize(const Election& e, SolutionRule rule);

std::vector<std::size_t> approval_scores(const ApprovalProfile& profile);
CandidateSet approval_winners(const ApprovalProfile& profile);

/// Votes of `first` followed by votes of `second`; rosters must be identical.
Election concat(const Election& first, const Election& second);

/**
 * @brief the election restricted to `keep`
 *
 * Each vote becomes its induced subtournament; the roster keeps the original
 * names in ascending id order.
 */
Election restrict_candidates(const Election& e, const CandidateSet& keep);

/// argmax of a score vector.
CandidateSet top_scorers(std::span<const std::size_t> scores);

/// Whether p wins under `model` given final scores.
bool wins_with_scores(std::span<const std::size_t> scores, CandidateId p, WinnerModel model);

}  // namespace tsapproval

#endif  // TSAPPROVAL_ELECTION_HPP
