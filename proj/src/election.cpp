#include "tsapproval/election.hpp"

#include <algorithm>
#include <unordered_set>

namespace tsapproval {

std::string_view to_string(WinnerModel model) { return model == WinnerModel::unique ? "unique" : "nonunique"; }

std::optional<WinnerModel> parse_model(std::string_view tag) {
    if (tag == "unique") return WinnerModel::unique;
    if (tag == "nonunique") return WinnerModel::nonunique;
    return std::nullopt;
}

void check_candidate_name(std::string_view name) {
    if (name.empty()) throw ElectionError("empty candidate name");
    for (char ch : name) {
        const auto code = static_cast<unsigned char>(ch);
        if (code <= 0x20 || code >= 0x7f) {
            throw ElectionError("candidate name '" + std::string(name) + "' must be printable ASCII without spaces");
        }
    }
}

Election::Election(std::vector<std::string> roster, std::vector<Tournament> votes)
    : roster_(std::move(roster)), votes_(std::move(votes)) {
    if (roster_.empty()) throw ElectionError("election needs at least one candidate");
    if (votes_.empty()) throw ElectionError("election needs at least one vote");
    std::unordered_set<std::string> seen;
    for (const auto& name : roster_) {
        check_candidate_name(name);
        if (!seen.insert(name).second) throw ElectionError("duplicate candidate name '" + name + "'");
    }
    for (std::size_t i = 0; i < votes_.size(); ++i) {
        if (votes_[i].size() != roster_.size()) {
            throw ElectionError("vote " + std::to_string(i) + " has " + std::to_string(votes_[i].size()) +
                                " candidates, roster has " + std::to_string(roster_.size()));
        }
    }
}

std::optional<CandidateId> Election::find(std::string_view name) const {
    const auto it = std::find(roster_.begin(), roster_.end(), name);
    if (it == roster_.end()) return std::nullopt;
    return CandidateId{static_cast<std::size_t>(it - roster_.begin())};
}

CandidateId Election::id_of(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw ElectionError("unknown candidate '" + std::string(name) + "'");
}

const std::string& Election::name_of(CandidateId c) const {
    if (c.index >= roster_.size()) throw ElectionError("unknown candidate index " + std::to_string(c.index));
    return roster_[c.index];
}

ElectionEvaluation::ElectionEvaluation(const Election& election, SolutionRule rule)
    : scores_(election.candidate_count(), 0) {
    approved_.reserve(election.vote_count());
    for (const Tournament& vote : election.votes()) {
        approved_.push_back(apply(rule, vote));
        for (CandidateId c : approved_.back()) ++scores_[c.index];
    }
}

CandidateSet ElectionEvaluation::winners() const { return top_scorers(scores_); }

std::size_t ts_score(const Election& e, SolutionRule rule, CandidateId c) {
    if (c.index >= e.candidate_count()) throw ElectionError("unknown candidate index " + std::to_string(c.index));
    std::size_t score = 0;
    for (const Tournament& vote : e.votes()) {
        const CandidateSet chosen = apply(rule, vote);
        score += std::binary_search(chosen.begin(), chosen.end(), c) ? 1 : 0;
    }
    return score;
}

CandidateSet winners(const Election& e, SolutionRule rule) { return ElectionEvaluation(e, rule).winners(); }

bool wins(const Election& e, SolutionRule rule, CandidateId p, WinnerModel model) {
    if (p.index >= e.candidate_count()) throw ElectionError("unknown candidate index " + std::to_string(p.index));
    const ElectionEvaluation eval(e, rule);
    return wins_with_scores(eval.scores(), p, model);
}

ApprovalProfile dichotomize(const Election& e, SolutionRule rule) {
    ApprovalProfile profile{e.candidate_count(), {}};
    for (const Tournament& vote : e.votes()) profile.ballots.push_back(apply(rule, vote));
    return profile;
}

std::vector<std::size_t> approval_scores(const ApprovalProfile& profile) {
    std::vector<std::size_t> scores(profile.candidate_count, 0);
    for (const auto& ballot : profile.ballots) {
        for (CandidateId c : ballot) ++scores.at(c.index);
    }
    return scores;
}

CandidateSet approval_winners(const ApprovalProfile& profile) { return top_scorers(approval_scores(profile)); }

Election concat(const Election& first, const Election& second) {
    if (first.roster() != second.roster()) throw ElectionError("cannot concatenate elections with different rosters");
    std::vector<Tournament> votes(first.votes().begin(), first.votes().end());
    votes.insert(votes.end(), second.votes().begin(), second.votes().end());
    return Election(first.roster(), std::move(votes));
}

Election restrict_candidates(const Election& e, const CandidateSet& keep) {
    std::vector<Tournament> votes;
    votes.reserve(e.vote_count());
    CandidateSet ids;
    for (const Tournament& vote : e.votes()) {
        auto sub = induced(vote, keep);
        ids = sub.original;
        votes.push_back(std::move(sub.tournament));
    }
    std::vector<std::string> roster;
    for (CandidateId c : ids) roster.push_back(e.name_of(c));
    return Election(std::move(roster), std::move(votes));
}

CandidateSet top_scorers(std::span<const std::size_t> scores) {
    CandidateSet out;
    if (scores.empty()) return out;
    const std::size_t best = *std::max_element(scores.begin(), scores.end());
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (scores[c] == best) out.push_back({c});
    }
    return out;
}

bool wins_with_scores(std::span<const std::size_t> scores, CandidateId p, WinnerModel model) {
    const std::size_t own = scores[p.index];
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (c == p.index) continue;
        if (scores[c] > own) return false;
        if (model == WinnerModel::unique && scores[c] == own) return false;
    }
    return true;
}

}  // namespace tsapproval
