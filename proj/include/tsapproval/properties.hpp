#ifndef TSAPPROVAL_PROPERTIES_HPP
#define TSAPPROVAL_PROPERTIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tsapproval/election.hpp"
#include "tsapproval/solutions.hpp"
#include "tsapproval/tournament.hpp"

namespace tsapproval {

/// Largest candidate count for exhaustive tournament-solution audits.
inline constexpr std::size_t kMaxExhaustiveTsCandidates = 6;
/// Exhaustive voting-correspondence audits: candidate and vote bounds.
inline constexpr std::size_t kMaxExhaustiveVcCandidates = 4;
inline constexpr std::size_t kMaxExhaustiveVcVotes = 3;

/// Bad audit configuration or a witness that does not falsify its criterion.
class AuditError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

enum class TsCriterion { exclusive_monotonicity, enm, ts_monotonicity };
enum class VcCriterion { monotonicity, pareto, consistency, majority, anonymity, neutrality };

std::string_view to_string(TsCriterion criterion);
std::string_view to_string(VcCriterion criterion);
std::optional<TsCriterion> parse_ts_criterion(std::string_view tag);
std::optional<VcCriterion> parse_vc_criterion(std::string_view tag);

/**
 * @brief (T, T', c) where T' strengthens c and `rule` misbehaves
 *
 * Stores inputs only; violates() recomputes every verdict.
 */
struct TsCounterexample {
    SolutionRule rule = SolutionRule::top_cycle;
    TsCriterion criterion = TsCriterion::enm;
    Tournament before;
    Tournament after;
    CandidateId candidate;
    std::uint64_t seed = 0;

    friend bool operator==(const TsCounterexample&, const TsCounterexample&) = default;
};

/// after[C - c] == before[C - c] and N+_before(c) is a subset of N+_after(c).
bool is_monotone_lift(const Tournament& before, const Tournament& after, CandidateId c);

/// Re-evaluates the witness from scratch.
bool violates(const TsCounterexample& w);

struct TsAuditConfig {
    std::size_t max_candidates = 5;
    bool exhaustive = true;
    std::uint64_t trials = 0;  // random mode only
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool stop_at_first = true;
};

struct TsAuditReport {
    std::optional<TsCounterexample> witness;
    /// Tournaments visited per candidate count (index m); complete only if `complete`.
    std::vector<std::uint64_t> tournaments_per_size;
    std::uint64_t lifts_checked = 0;
    bool complete = false;
};

/**
 * @brief searches for a tournament-solution counterexample
 *
 * Exhaustive mode visits every labeled tournament with 1..max_candidates
 * candidates in canonical code order, every candidate c, and every superset of
 * N+(c) (2^indegree lifts). The returned witness is the first in that order,
 * whatever `jobs` is. Random mode samples `trials` (tournament, candidate,
 * lift) triples from `seed`.
 */
TsAuditReport audit_ts(SolutionRule rule, TsCriterion criterion, const TsAuditConfig& config);

/// Exhaustive first-found search up to m_max candidates.
std::optional<TsCounterexample> audit_ts(SolutionRule rule, TsCriterion criterion, std::size_t m_max);

/// Visits every violation on exactly m candidates in canonical order until `visit` returns false.
void for_each_ts_violation(SolutionRule rule, TsCriterion criterion, std::size_t m,
                           const std::function<bool(const TsCounterexample&)>& visit);

/**
 * @brief an election (or election pair) falsifying a voting-correspondence axiom
 *
 * monotonicity: `after` lifts `candidate` in every vote of `before`, and
 * `candidate` wins before but not after. pareto: every vote of `before` ranks
 * `candidate` over `other`, `other` wins and `candidate` does not. consistency:
 * `before` and `after` share a winner yet their concatenation's winners differ
 * from the intersection. majority: `candidate` is the source of most votes and
 * loses. anonymity: `after` reorders the votes and the winners change.
 * neutrality: `after` relabels every vote by `relabel` and the winners are not
 * the relabelled winners.
 */
struct VcCounterexample {
    SolutionRule rule = SolutionRule::top_cycle;
    VcCriterion criterion = VcCriterion::monotonicity;
    Election before;
    Election after;
    CandidateId candidate;
    std::optional<CandidateId> other;
    std::vector<CandidateId> relabel;
    std::uint64_t seed = 0;

    friend bool operator==(const VcCounterexample&, const VcCounterexample&) = default;
};

bool violates(const VcCounterexample& w);

struct VcAuditConfig {
    std::size_t max_candidates = 4;
    std::size_t max_votes = 3;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    bool exhaustive = false;
};

/**
 * Random mode draws `trials` elections with 2..max_candidates candidates and
 * 1..max_votes votes. Exhaustive mode (at most 4 candidates, 3 votes) visits
 * every election of that size.
 */
std::optional<VcCounterexample> audit_vc(VcCriterion criterion, SolutionRule rule, const VcAuditConfig& config);

std::optional<VcCounterexample> audit_vc_monotonicity(SolutionRule rule, const VcAuditConfig& config);
std::optional<VcCounterexample> audit_pareto(SolutionRule rule, const VcAuditConfig& config);
std::optional<VcCounterexample> audit_consistency(SolutionRule rule, const VcAuditConfig& config);
std::optional<VcCounterexample> audit_majority(SolutionRule rule, const VcAuditConfig& config);
std::optional<VcCounterexample> audit_anonymity(SolutionRule rule, const VcAuditConfig& config);
std::optional<VcCounterexample> audit_neutrality(SolutionRule rule, const VcAuditConfig& config);

/// First unanimous pair (a over b, lexicographic) with b winning and a losing.
std::optional<VcCounterexample> find_pareto_violation(const Election& e, SolutionRule rule);

/**
 * @brief turns a solution-level witness into a monotonicity failure of the approval rule
 *
 * Exclusive-monotonicity witnesses where c drops out give the one-vote election
 * {T}. Those where the solution grows by some b (smallest such) give
 * {T, b-source, b-source, c-source}; ENM witnesses give {T, b-source,
 * c-source}. Replacing T by T' dethrones c. Throws AuditError when `w` does not
 * falsify its criterion.
 */
VcCounterexample build_monotonicity_counterexample(const TsCounterexample& w);

/// Transitive tournament on m candidates with `top` first, the rest ascending.
Tournament source_tournament(std::size_t m, CandidateId top);

/// Default roster names: a, b, c, ... (c0, c1, ... beyond 26 candidates).
std::vector<std::string> default_roster(std::size_t m);

}  // namespace tsapproval

#endif  // TSAPPROVAL_PROPERTIES_HPP
