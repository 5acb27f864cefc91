#include "tsapproval/strategy.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace tsapproval {

namespace {

constexpr Problem kAllProblems[] = {Problem::ccav, Problem::ccdv, Problem::ccac, Problem::ccdc, Problem::dcav,
                                    Problem::dcdv, Problem::dcac, Problem::dcdc, Problem::cbra, Problem::dbra};

bool contains(const CandidateSet& s, CandidateId c) { return std::binary_search(s.begin(), s.end(), c); }

bool is_sorted_unique(const CandidateSet& s) { return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end(); }

// C(n, 0) + ... + C(n, k), saturating at UINT64_MAX.
std::uint64_t choose_upto(std::uint64_t n, std::size_t k) {
    constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max() / 2;
    std::uint64_t total = 0;
    std::uint64_t term = 1;
    for (std::size_t i = 0; i <= k && i <= n; ++i) {
        total = std::min(kCap, total + term);
        // term * (n - i) / (i + 1), kept exact while small
        if (term > kCap / std::max<std::uint64_t>(1, n - i)) {
            term = kCap;
        } else {
            term = term * (n - i) / (i + 1);
        }
    }
    return total;
}

// Visits subsets of {0..n-1} by size (0..kmax), then lexicographically; returns the first accepted one.
template <typename Accept>
std::optional<std::vector<std::size_t>> first_subset(std::size_t n, std::size_t kmax, Accept&& accept) {
    kmax = std::min(kmax, n);
    for (std::size_t size = 0; size <= kmax; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            if (accept(static_cast<const std::vector<std::size_t>&>(idx))) return idx;
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return std::nullopt;
}

// Solution masks of every tournament on m <= 6 candidates, indexed by canonical code.
const std::vector<std::uint64_t>& solution_table(SolutionRule rule, std::size_t m) {
    static std::mutex lock;
    static std::map<std::pair<int, std::size_t>, std::vector<std::uint64_t>> tables;
    const std::lock_guard guard(lock);
    auto& table = tables[{static_cast<int>(rule), m}];
    if (table.empty()) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        table.resize(total);
        for (std::uint64_t code = 0; code < total; ++code) table[code] = apply_mask(rule, Tournament::from_code(m, code));
    }
    return table;
}

constexpr std::size_t kTableCandidates = 6;

bool goal_from_scores(const StrategyInstance& inst, std::span<const std::size_t> scores, CandidateId p) {
    return wins_with_scores(scores, p, inst.model) == is_constructive(inst.problem);
}

std::vector<std::size_t> scores_on(const Election& e, SolutionRule rule, const CandidateSet& active) {
    std::vector<std::size_t> scores(active.size(), 0);
    for (const auto& v : e.votes()) {
        for (auto c : apply(rule, induced(v, active).tournament)) ++scores[c.index];
    }
    return scores;
}

std::size_t position_of(const CandidateSet& active, CandidateId c) {
    return static_cast<std::size_t>(std::lower_bound(active.begin(), active.end(), c) - active.begin());
}

void check_bound(std::uint64_t choices, std::uint64_t bound, const char* what, const SolverOptions& options) {
    if (!options.unsafe && choices > bound) {
        throw BoundError(std::string(what) + ": " + std::to_string(choices) + " choices exceed the bound of " +
                         std::to_string(bound));
    }
}

StrategyOutcome found(StrategyAction action) {
    const std::size_t cost = action.cost();
    return StrategyOutcome{true, std::move(action), cost};
}

StrategyOutcome brute_votes(const StrategyInstance& inst, const SolverOptions& options) {
    const bool adding = adds_votes(inst.problem);
    const ElectionEvaluation reg(inst.election, inst.rule);
    std::vector<std::size_t> base(reg.scores().begin(), reg.scores().end());
    std::vector<CandidateSet> option_sets;
    if (adding) {
        for (const auto& u : inst.unregistered_votes) option_sets.push_back(apply(inst.rule, u));
    } else {
        for (std::size_t i = 0; i < inst.election.vote_count(); ++i) option_sets.push_back(reg.approved(i));
    }
    const std::size_t n = option_sets.size();
    const std::size_t kmax = adding ? inst.budget : std::min(inst.budget, inst.election.vote_count() - 1);
    check_bound(choose_upto(n, kmax), kMaxSubsetChoices, "vote subsets", options);

    std::vector<std::size_t> scores;
    const auto hit = first_subset(n, kmax, [&](const std::vector<std::size_t>& chosen) {
        scores = base;
        for (auto i : chosen)
            for (auto c : option_sets[i]) adding ? ++scores[c.index] : --scores[c.index];
        return goal_from_scores(inst, scores, inst.distinguished);
    });
    if (!hit) return {};
    StrategyAction action;
    (adding ? action.added_votes : action.deleted_votes) = *hit;
    return found(std::move(action));
}

StrategyOutcome brute_candidates(const StrategyInstance& inst, const SolverOptions& options) {
    const bool adding = adds_candidates(inst.problem);
    const std::size_t m = inst.election.candidate_count();
    CandidateSet base;
    CandidateSet option_ids;
    for (std::size_t c = 0; c < m; ++c) {
        const CandidateId id{c};
        if (adding) {
            (contains(inst.unregistered_candidates, id) ? option_ids : base).push_back(id);
        } else {
            base.push_back(id);
            if (id != inst.distinguished) option_ids.push_back(id);
        }
    }
    const std::size_t kmax = std::min(inst.budget, option_ids.size());
    check_bound(choose_upto(option_ids.size(), kmax), kMaxSubsetChoices, "candidate subsets", options);

    const auto hit = first_subset(option_ids.size(), kmax, [&](const std::vector<std::size_t>& chosen) {
        CandidateSet active = base;
        if (adding) {
            for (auto i : chosen) active.push_back(option_ids[i]);
            std::sort(active.begin(), active.end());
        } else {
            for (auto i : chosen) active.erase(std::find(active.begin(), active.end(), option_ids[i]));
        }
        const auto scores = scores_on(inst.election, inst.rule, active);
        return goal_from_scores(inst, scores, CandidateId{position_of(active, inst.distinguished)});
    });
    if (!hit) return {};
    StrategyAction action;
    CandidateSet& target = adding ? action.added_candidates : action.deleted_candidates;
    for (auto i : *hit) target.push_back(option_ids[i]);
    return found(std::move(action));
}

StrategyOutcome brute_bribery(const StrategyInstance& inst, const SolverOptions& options) {
    const Election& e = inst.election;
    const std::size_t m = e.candidate_count();
    const std::size_t n = e.vote_count();
    const std::size_t pairs = pair_count(m);
    const std::size_t slots = n * pairs;
    if (!options.unsafe && inst.budget > kMaxBriberyBudget) {
        throw BoundError("bribery budget " + std::to_string(inst.budget) + " exceeds the bound of " +
                         std::to_string(kMaxBriberyBudget));
    }
    const std::size_t kmax = std::min(inst.budget, slots);
    check_bound(choose_upto(slots, kmax), kMaxBriberyChoices, "reversal sets", options);

    const ElectionEvaluation eval(e, inst.rule);
    const std::vector<std::size_t> base(eval.scores().begin(), eval.scores().end());
    const bool tabled = m <= kTableCandidates;
    const std::vector<std::uint64_t>* table = tabled ? &solution_table(inst.rule, m) : nullptr;
    std::vector<std::uint64_t> codes;
    if (tabled)
        for (const auto& v : e.votes()) codes.push_back(v.code());

    std::vector<std::size_t> scores;
    const auto hit = first_subset(slots, kmax, [&](const std::vector<std::size_t>& chosen) {
        scores = base;
        // chosen is sorted, so flips of one vote are consecutive
        for (std::size_t i = 0; i < chosen.size();) {
            const std::size_t vote = chosen[i] / pairs;
            const CandidateSet& old = eval.approved(vote);
            for (auto c : old) --scores[c.index];
            if (tabled) {
                std::uint64_t code = codes[vote];
                for (; i < chosen.size() && chosen[i] / pairs == vote; ++i) code ^= std::uint64_t{1} << (chosen[i] % pairs);
                const std::uint64_t mask = (*table)[code];
                for (std::size_t c = 0; c < m; ++c) scores[c] += (mask >> c) & 1U;
            } else {
                Tournament t = e.vote(vote);
                for (; i < chosen.size() && chosen[i] / pairs == vote; ++i) {
                    const auto [a, b] = pair_at(m, chosen[i] % pairs);
                    t = t.reverse_arc({a}, {b});
                }
                for (auto c : apply(inst.rule, t)) ++scores[c.index];
            }
        }
        return goal_from_scores(inst, scores, inst.distinguished);
    });
    if (!hit) return {};
    StrategyAction action;
    for (auto s : *hit) {
        const std::size_t vote = s / pairs;
        const auto [a, b] = pair_at(m, s % pairs);
        const bool a_wins = e.vote(vote).beats({a}, {b});
        action.reversals.push_back(a_wins ? Reversal{vote, {a}, {b}} : Reversal{vote, {b}, {a}});
    }
    return found(std::move(action));
}

long long signed_need(WinnerModel model, std::size_t score_p, std::size_t score_q) {
    const long long gap = static_cast<long long>(score_p) - static_cast<long long>(score_q);
    return std::max(0LL, model == WinnerModel::nonunique ? gap + 1 : gap);
}

// Shared by both fast paths: H[q] lists the votes that widen q's lead over p by one each.
StrategyOutcome per_rival(const StrategyInstance& inst, std::span<const std::size_t> scores,
                          const std::vector<std::vector<std::size_t>>& helpful, std::size_t cap, bool adding) {
    const CandidateId p = inst.distinguished;
    std::optional<std::pair<long long, std::size_t>> best;
    for (std::size_t q = 0; q < scores.size(); ++q) {
        if (q == p.index) continue;
        const long long need = signed_need(inst.model, scores[p.index], scores[q]);
        const long long room = static_cast<long long>(std::min({inst.budget, helpful[q].size(), cap}));
        if (need <= room && (!best || need < best->first)) best = {need, q};
    }
    if (!best) return {};
    StrategyAction action;
    const auto& votes = helpful[best->second];
    std::vector<std::size_t> chosen(votes.begin(), votes.begin() + best->first);
    (adding ? action.added_votes : action.deleted_votes) = std::move(chosen);
    return found(std::move(action));
}

void cross_check(const StrategyInstance& inst, const StrategyOutcome& fast, const SolverOptions& options) {
    if (!options.cross_check) return;
    StrategyOutcome oracle;
    try {
        SolverOptions bounded = options;
        bounded.unsafe = false;
        oracle = solve_bruteforce(inst, bounded);
    } catch (const BoundError&) {
        return;
    }
    if (oracle.feasible != fast.feasible || oracle.cost != fast.cost) {
        throw std::logic_error("fast path disagrees with brute force on " + std::string(to_string(inst.problem)));
    }
}

}  // namespace

std::string_view to_string(Problem problem) {
    switch (problem) {
        case Problem::ccav:
            return "ccav";
        case Problem::ccdv:
            return "ccdv";
        case Problem::ccac:
            return "ccac";
        case Problem::ccdc:
            return "ccdc";
        case Problem::dcav:
            return "dcav";
        case Problem::dcdv:
            return "dcdv";
        case Problem::dcac:
            return "dcac";
        case Problem::dcdc:
            return "dcdc";
        case Problem::cbra:
            return "cbra";
        case Problem::dbra:
            return "dbra";
    }
    return "?";
}

std::optional<Problem> parse_problem(std::string_view tag) {
    std::string lower(tag);
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    for (Problem p : kAllProblems)
        if (to_string(p) == lower) return p;
    return std::nullopt;
}

bool is_constructive(Problem problem) {
    switch (problem) {
        case Problem::ccav:
        case Problem::ccdv:
        case Problem::ccac:
        case Problem::ccdc:
        case Problem::cbra:
            return true;
        default:
            return false;
    }
}

bool is_bribery(Problem problem) { return problem == Problem::cbra || problem == Problem::dbra; }
bool adds_votes(Problem problem) { return problem == Problem::ccav || problem == Problem::dcav; }
bool deletes_votes(Problem problem) { return problem == Problem::ccdv || problem == Problem::dcdv; }
bool adds_candidates(Problem problem) { return problem == Problem::ccac || problem == Problem::dcac; }
bool deletes_candidates(Problem problem) { return problem == Problem::ccdc || problem == Problem::dcdc; }

std::size_t StrategyAction::cost() const {
    return added_votes.size() + deleted_votes.size() + added_candidates.size() + deleted_candidates.size() +
           reversals.size();
}

void validate(const StrategyInstance& inst) {
    const std::size_t m = inst.election.candidate_count();
    if (inst.budget == 0) throw StrategyError("budget must be at least 1");
    if (inst.distinguished.index >= m) throw StrategyError("distinguished candidate out of range");
    if (!adds_votes(inst.problem) && !inst.unregistered_votes.empty()) {
        throw StrategyError("unregistered votes are only allowed for ccav/dcav");
    }
    for (const auto& u : inst.unregistered_votes) {
        if (u.size() != m) throw StrategyError("unregistered vote does not cover the roster");
    }
    if (!adds_candidates(inst.problem) && !inst.unregistered_candidates.empty()) {
        throw StrategyError("unregistered candidates are only allowed for ccac/dcac");
    }
    const CandidateSet& d = inst.unregistered_candidates;
    if (!is_sorted_unique(d)) throw StrategyError("unregistered candidates must be sorted and distinct");
    for (auto c : d) {
        if (c.index >= m) throw StrategyError("unregistered candidate out of range");
        if (c == inst.distinguished) throw StrategyError("the distinguished candidate must be registered");
    }
}

Election registered_election(const StrategyInstance& inst) {
    if (!adds_candidates(inst.problem) || inst.unregistered_candidates.empty()) return inst.election;
    CandidateSet active;
    for (std::size_t c = 0; c < inst.election.candidate_count(); ++c)
        if (!contains(inst.unregistered_candidates, {c})) active.push_back({c});
    return restrict_candidates(inst.election, active);
}

Election apply_action(const StrategyInstance& inst, const StrategyAction& action) {
    validate(inst);
    const Election& e = inst.election;
    const std::size_t m = e.candidate_count();
    const Problem pr = inst.problem;
    if ((!action.added_votes.empty() && !adds_votes(pr)) || (!action.deleted_votes.empty() && !deletes_votes(pr)) ||
        (!action.added_candidates.empty() && !adds_candidates(pr)) ||
        (!action.deleted_candidates.empty() && !deletes_candidates(pr)) ||
        (!action.reversals.empty() && !is_bribery(pr))) {
        throw StrategyError("action does not match problem " + std::string(to_string(pr)));
    }
    auto check_distinct = [](std::vector<std::size_t> xs, std::size_t limit, const char* what) {
        std::sort(xs.begin(), xs.end());
        if (std::adjacent_find(xs.begin(), xs.end()) != xs.end()) throw StrategyError(std::string("repeated ") + what);
        if (!xs.empty() && xs.back() >= limit) throw StrategyError(std::string(what) + " index out of range");
    };

    if (adds_votes(pr)) {
        check_distinct(action.added_votes, inst.unregistered_votes.size(), "added vote");
        std::vector<Tournament> votes(e.votes().begin(), e.votes().end());
        for (auto i : action.added_votes) votes.push_back(inst.unregistered_votes[i]);
        return Election(e.roster(), std::move(votes));
    }
    if (deletes_votes(pr)) {
        check_distinct(action.deleted_votes, e.vote_count(), "deleted vote");
        std::vector<Tournament> votes;
        for (std::size_t i = 0; i < e.vote_count(); ++i) {
            if (std::find(action.deleted_votes.begin(), action.deleted_votes.end(), i) == action.deleted_votes.end()) {
                votes.push_back(e.vote(i));
            }
        }
        if (votes.empty()) throw StrategyError("deleting every vote is not allowed");
        return Election(e.roster(), std::move(votes));
    }
    if (adds_candidates(pr) || deletes_candidates(pr)) {
        const CandidateSet& chosen = adds_candidates(pr) ? action.added_candidates : action.deleted_candidates;
        CandidateSet sorted = chosen;
        std::sort(sorted.begin(), sorted.end());
        if (!is_sorted_unique(sorted)) throw StrategyError("repeated candidate in action");
        CandidateSet active;
        for (std::size_t c = 0; c < m; ++c) {
            const CandidateId id{c};
            if (adds_candidates(pr)) {
                if (!contains(inst.unregistered_candidates, id) || contains(sorted, id)) active.push_back(id);
            } else if (!contains(sorted, id)) {
                active.push_back(id);
            }
        }
        for (auto c : sorted) {
            if (c.index >= m) throw StrategyError("candidate out of range in action");
            if (adds_candidates(pr) && !contains(inst.unregistered_candidates, c)) {
                throw StrategyError("added candidate '" + e.name_of(c) + "' is not unregistered");
            }
            if (deletes_candidates(pr) && c == inst.distinguished) {
                throw StrategyError("the distinguished candidate cannot be deleted");
            }
        }
        return restrict_candidates(e, active);
    }
    // bribery
    std::vector<Tournament> votes(e.votes().begin(), e.votes().end());
    std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
    for (const auto& r : action.reversals) {
        if (r.vote >= votes.size()) throw StrategyError("reversal vote index out of range");
        if (r.from.index >= m || r.to.index >= m || r.from == r.to) throw StrategyError("reversal names a bad pair");
        if (!e.vote(r.vote).beats(r.from, r.to)) {
            throw StrategyError("vote " + std::to_string(r.vote) + " does not have " + e.name_of(r.from) + " over " +
                                e.name_of(r.to));
        }
        const auto key = std::tuple{r.vote, std::min(r.from.index, r.to.index), std::max(r.from.index, r.to.index)};
        if (!seen.insert(key).second) throw StrategyError("pair reversed twice in one vote");
        votes[r.vote] = votes[r.vote].reverse_arc(r.from, r.to);
    }
    return Election(e.roster(), std::move(votes));
}

bool goal_holds(const StrategyInstance& inst, const Election& modified) {
    const auto p = modified.find(inst.election.name_of(inst.distinguished));
    if (!p) throw StrategyError("distinguished candidate missing from the modified election");
    return wins(modified, inst.rule, *p, inst.model) == is_constructive(inst.problem);
}

bool replay(const StrategyInstance& inst, const StrategyAction& action) {
    return action.cost() <= inst.budget && goal_holds(inst, apply_action(inst, action));
}

StrategyOutcome solve_bruteforce(const StrategyInstance& inst, const SolverOptions& options) {
    validate(inst);
    if (is_bribery(inst.problem)) return brute_bribery(inst, options);
    if (adds_votes(inst.problem) || deletes_votes(inst.problem)) return brute_votes(inst, options);
    return brute_candidates(inst, options);
}

StrategyOutcome solve_dcav_fast(const StrategyInstance& inst) {
    if (inst.problem != Problem::dcav) throw StrategyError("solve_dcav_fast needs a dcav instance");
    validate(inst);
    const ElectionEvaluation reg(inst.election, inst.rule);
    const std::size_t m = inst.election.candidate_count();
    const CandidateId p = inst.distinguished;
    std::vector<std::vector<std::size_t>> helpful(m);
    for (std::size_t i = 0; i < inst.unregistered_votes.size(); ++i) {
        const CandidateSet approved = apply(inst.rule, inst.unregistered_votes[i]);
        if (contains(approved, p)) continue;
        for (auto q : approved) helpful[q.index].push_back(i);
    }
    return per_rival(inst, reg.scores(), helpful, inst.budget, true);
}

StrategyOutcome solve_dcdv_fast(const StrategyInstance& inst) {
    if (inst.problem != Problem::dcdv) throw StrategyError("solve_dcdv_fast needs a dcdv instance");
    validate(inst);
    const ElectionEvaluation reg(inst.election, inst.rule);
    const std::size_t m = inst.election.candidate_count();
    const CandidateId p = inst.distinguished;
    std::vector<std::vector<std::size_t>> helpful(m);
    for (std::size_t i = 0; i < inst.election.vote_count(); ++i) {
        const CandidateSet& approved = reg.approved(i);
        if (!contains(approved, p)) continue;
        for (std::size_t q = 0; q < m; ++q)
            if (!contains(approved, {q})) helpful[q].push_back(i);
    }
    return per_rival(inst, reg.scores(), helpful, inst.election.vote_count() - 1, false);
}

StrategyOutcome solve_dbra_tc_paper(const StrategyInstance& inst) {
    if (inst.problem != Problem::dbra || inst.rule != SolutionRule::top_cycle) {
        throw StrategyError("solve_dbra_tc_paper needs a dbra instance under tc");
    }
    validate(inst);
    const Election& e = inst.election;
    const std::size_t m = e.candidate_count();
    if (m < 3) return solve_bruteforce(inst);
    const ElectionEvaluation eval(e, inst.rule);
    const CandidateId p = inst.distinguished;
    std::optional<std::pair<long long, std::size_t>> best;
    for (std::size_t q = 0; q < m; ++q) {
        if (q == p.index) continue;
        std::size_t missing = 0;
        for (std::size_t v = 0; v < e.vote_count(); ++v) missing += contains(eval.approved(v), {q}) ? 0 : 1;
        const long long need = signed_need(inst.model, eval.score(p), eval.score({q}));
        if (need <= static_cast<long long>(std::min(inst.budget, missing)) && (!best || need < best->first)) {
            best = {need, q};
        }
    }
    if (!best) return {};
    const CandidateId q{best->second};
    StrategyAction action;
    for (std::size_t v = 0; v < e.vote_count() && static_cast<long long>(action.reversals.size()) < best->first; ++v) {
        if (contains(eval.approved(v), q)) continue;
        const CandidateId top = eval.approved(v).front();
        action.reversals.push_back({v, top, q});
    }
    return found(std::move(action));
}

TcEntryEffects tc_entry_effects(const Tournament& t, CandidateId p, CandidateId q) {
    const CandidateSet tc = top_cycle(t);
    if (contains(tc, q)) return {0, false};
    if (contains(tc, p)) return {1, false};
    bool all_admit_p = true;
    const std::size_t m = t.size();
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            const CandidateSet after = top_cycle(t.reverse_arc({a}, {b}));
            if (contains(after, q) && !contains(after, p)) all_admit_p = false;
        }
    }
    return {1, all_admit_p};
}

StrategyOutcome solve_control(const StrategyInstance& inst, const SolverOptions& options) {
    if (is_bribery(inst.problem)) throw StrategyError("solve_control needs a control problem");
    if (inst.problem == Problem::dcav || inst.problem == Problem::dcdv) {
        StrategyOutcome fast = inst.problem == Problem::dcav ? solve_dcav_fast(inst) : solve_dcdv_fast(inst);
        cross_check(inst, fast, options);
        return fast;
    }
    return solve_bruteforce(inst, options);
}

StrategyOutcome solve_bribery(const StrategyInstance& inst, const SolverOptions& options) {
    if (!is_bribery(inst.problem)) throw StrategyError("solve_bribery needs cbra or dbra");
    return solve_bruteforce(inst, options);
}

StrategyOutcome solve(const StrategyInstance& inst, const SolverOptions& options) {
    return is_bribery(inst.problem) ? solve_bribery(inst, options) : solve_control(inst, options);
}

}  // namespace tsapproval
