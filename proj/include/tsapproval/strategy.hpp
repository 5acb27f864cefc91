#ifndef TSAPPROVAL_STRATEGY_HPP
#define TSAPPROVAL_STRATEGY_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tsapproval/election.hpp"

namespace tsapproval {

/// Largest number of subsets a brute-force control search may visit.
inline constexpr std::uint64_t kMaxSubsetChoices = 1'000'000;
/// Largest bribery budget the brute-force search accepts.
inline constexpr std::size_t kMaxBriberyBudget = 4;
/// Largest number of reversal sets a brute-force bribery search may visit.
inline constexpr std::uint64_t kMaxBriberyChoices = 10'000'000;

/// Malformed instance or action.
class StrategyError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A brute-force search would exceed one of the bounds above.
class BoundError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

enum class Problem { ccav, ccdv, ccac, ccdc, dcav, dcdv, dcac, dcdc, cbra, dbra };

std::string_view to_string(Problem problem);
/// Accepts lower- or upper-case tags ("ccav", "DBRA", ...).
std::optional<Problem> parse_problem(std::string_view tag);

bool is_constructive(Problem problem);
bool is_bribery(Problem problem);
bool adds_votes(Problem problem);
bool deletes_votes(Problem problem);
bool adds_candidates(Problem problem);
bool deletes_candidates(Problem problem);

/**
 * @brief one control or bribery instance
 *
 * `election` holds the registered votes over the full candidate set C. For
 * candidate-adding problems, `unregistered_candidates` is the set D and the
 * registered election is restricted to C - D. Votes are always restricted with
 * induced() to the active candidates; they are never re-elicited.
 */
struct StrategyInstance {
    Problem problem = Problem::ccav;
    SolutionRule rule = SolutionRule::top_cycle;
    WinnerModel model = WinnerModel::unique;
    Election election;
    CandidateId distinguished;
    std::size_t budget = 1;
    std::vector<Tournament> unregistered_votes;
    CandidateSet unregistered_candidates;

    friend bool operator==(const StrategyInstance&, const StrategyInstance&) = default;
};

/// Throws StrategyError unless the instance fields fit its problem.
void validate(const StrategyInstance& inst);

/// Vote `vote` is modified so that `to` beats `from` (in the input, `from` beats `to`).
struct Reversal {
    std::size_t vote = 0;
    CandidateId from;
    CandidateId to;

    friend constexpr auto operator<=>(const Reversal&, const Reversal&) = default;
};

/// Indices refer to unregistered votes (added) or registered votes (deleted).
struct StrategyAction {
    std::vector<std::size_t> added_votes;
    std::vector<std::size_t> deleted_votes;
    CandidateSet added_candidates;
    CandidateSet deleted_candidates;
    std::vector<Reversal> reversals;

    [[nodiscard]] std::size_t cost() const;
    friend bool operator==(const StrategyAction&, const StrategyAction&) = default;
};

struct StrategyOutcome {
    bool feasible = false;
    std::optional<StrategyAction> action;
    std::size_t cost = 0;

    friend bool operator==(const StrategyOutcome&, const StrategyOutcome&) = default;
};

struct SolverOptions {
    /// Lifts the brute-force bounds.
    bool unsafe = false;
    /// Cross-check fast paths against brute force when the bounds allow.
    bool cross_check = true;
};

/// The election before any action (restricted to C - D for candidate-adding problems).
Election registered_election(const StrategyInstance& inst);

/// The election after `action`; throws StrategyError if the action does not fit the instance.
Election apply_action(const StrategyInstance& inst, const StrategyAction& action);

/// Constructive: p wins under the instance model. Destructive: p does not. p is located by name.
bool goal_holds(const StrategyInstance& inst, const Election& modified);

/// Replays the action: cost within budget and the goal holds afterwards.
bool replay(const StrategyInstance& inst, const StrategyAction& action);

/**
 * @brief exact search over every action within budget
 *
 * Actions are visited by cost, then lexicographically, so the first success
 * has minimum cost and is the lexicographically least such action. At most
 * one reversal per (vote, pair); vote deletions keep at least one vote; p is
 * never deleted. Throws BoundError when the search space exceeds the bounds
 * unless options.unsafe is set.
 */
StrategyOutcome solve_bruteforce(const StrategyInstance& inst, const SolverOptions& options = {});

/// Gap-per-rival algorithm on the dichotomized votes. Only DCAV.
StrategyOutcome solve_dcav_fast(const StrategyInstance& inst);
/// Gap-per-rival algorithm on the dichotomized votes. Only DCDV.
StrategyOutcome solve_dcdv_fast(const StrategyInstance& inst);

/**
 * @brief the published per-rival algorithm for DBRA under TC-Approval
 *
 * For each rival q, k' counts the votes whose top cycle misses q; the
 * instance is declared feasible when score(q) + min(k, k') reaches the
 * model threshold against score(p) (strictly above under nonunique, at least
 * equal under unique). The witness reverses, in each chosen vote, the arc
 * between q and the smallest first-component member. The answer is not
 * guaranteed to match solve_bruteforce; callers compare the two. With fewer
 * than 3 candidates the algorithm does not apply and brute force answers.
 */
StrategyOutcome solve_dbra_tc_paper(const StrategyInstance& inst);

struct TcEntryEffects {
    /// 0 when q already lies in the top cycle, 1 otherwise.
    std::size_t entry_cost = 0;
    /// p outside the top cycle and every single reversal admitting q also admits p.
    bool p_joins = false;

    friend bool operator==(const TcEntryEffects&, const TcEntryEffects&) = default;
};

TcEntryEffects tc_entry_effects(const Tournament& t, CandidateId p, CandidateId q);

/// DCAV/DCDV use the fast path (cross-checked when options allow); everything else is brute force.
StrategyOutcome solve_control(const StrategyInstance& inst, const SolverOptions& options = {});
/// Brute force for both bribery problems.
StrategyOutcome solve_bribery(const StrategyInstance& inst, const SolverOptions& options = {});
/// Dispatches on the problem family.
StrategyOutcome solve(const StrategyInstance& inst, const SolverOptions& options = {});

}  // namespace tsapproval

#endif  // TSAPPROVAL_STRATEGY_HPP
