#ifndef TSAPPROVAL_REDUCTIONS_HPP
#define TSAPPROVAL_REDUCTIONS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsapproval/strategy.hpp"

namespace tsapproval {

/// Largest kappa the exact-cover oracle accepts.
inline constexpr std::size_t kMaxX3cOracleKappa = 4;
/// Largest number of candidate sets the dominating-set oracle may visit.
inline constexpr std::uint64_t kMaxTdsOracleChoices = 1'000'000;

/// Invalid source instance, or a generated gadget failed its own structural check.
class ReductionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Exact cover by 3-sets: 3*kappa elements, 3*kappa sets, each element in exactly three sets.
struct X3cInstance {
    std::size_t kappa = 1;
    std::vector<std::string> universe;
    std::vector<std::array<std::size_t, 3>> sets;

    friend bool operator==(const X3cInstance&, const X3cInstance&) = default;
};

/// Elements named "1" .. "3*kappa".
std::vector<std::string> default_universe(std::size_t kappa);
void validate(const X3cInstance& inst);

/// Indices of kappa pairwise disjoint sets (lexicographically least), or nothing.
std::optional<std::vector<std::size_t>> x3c_oracle(const X3cInstance& inst);

/// Uniform pairing of three copies of each element into triples, retried until every triple is proper.
X3cInstance random_x3c(std::size_t kappa, std::mt19937_64& rng);

/// Tournament dominating set, with a designated vertex that is not a king.
struct TdsInstance {
    Tournament tournament;
    std::size_t k = 1;
    CandidateId non_king;
    /// Vertex names; empty means default_roster.
    std::vector<std::string> names;

    friend bool operator==(const TdsInstance&, const TdsInstance&) = default;
};

void validate(const TdsInstance& inst);
std::size_t tds_padded_size(std::size_t k);

/// Appends vertices beaten by every original vertex until |V| >= (k+1)(2k+4).
TdsInstance pad_tds(const TdsInstance& inst);

/// Every vertex outside `set` is beaten by some member.
bool dominates(const Tournament& t, const CandidateSet& set);

/// Smallest dominating set of size <= k (lexicographically least), or nothing.
std::optional<CandidateSet> tds_oracle(const TdsInstance& inst);

struct ReductionOptions {
    /// Unspecified arcs go to the lower index unless a seed asks for random orientation.
    std::optional<std::uint64_t> fill_seed;
    /**
     * Allows parameters outside the construction's assumptions: kappa < 4 for
     * x3c_to_cbra_co, k = 1 for tds_to_dbra_uc (blocks of two always have a
     * source; non-kings of T are placed where the extra king lands).
     */
    bool relaxed = false;
};

/**
 * @brief CCAV gadget
 *
 * Candidates: element i is index i, then p, then q. Registered votes: per
 * element kappa-1 (unique) or kappa (nonunique) votes with that element as
 * source, then one vote with p as source. Unregistered vote j belongs to set
 * j: its three elements with p and q form a regular block beating the rest.
 * Budget kappa.
 */
StrategyInstance x3c_to_ccav(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options = {});

/**
 * @brief CCDV gadget
 *
 * Candidates: elements, then p. Vote j < 3*kappa puts the elements of set j
 * in a cycle beating everyone else; then 3 (unique) or 2 (nonunique) votes
 * with p as source. Budget kappa.
 */
StrategyInstance x3c_to_ccdv(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options = {});

/**
 * @brief CBRA gadget for Copeland
 *
 * Candidates: elements 0..3k-1, set candidates 3k..6k-1, p = 6k. Votes: one
 * per set (sublist A), then k+2 (nonunique) or k+3 (unique) votes with p as
 * source (B), then k votes per element with that element as source (C).
 * The rest of each B and C vote is regular when its size is odd and
 * near-regular otherwise. Needs kappa >= 4 unless relaxed. Budget kappa.
 */
StrategyInstance x3c_to_cbra_co(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options = {});

/**
 * @brief DBRA gadget for the uncovered set
 *
 * The instance is padded first. Candidates: padded vertices, then q; p is the
 * non-king. Votes: T with every vertex beating q; 2k+3 (nonunique) or 2k+2
 * (unique) votes with q as source; then H_0 .. H_{2k+2}. k = 1 needs relaxed.
 * Budget k.
 */
StrategyInstance tds_to_dbra_uc(const TdsInstance& inst, WinnerModel model, const ReductionOptions& options = {});

/// Adds the unregistered votes of the cover sets.
StrategyAction ccav_cover_action(const std::vector<std::size_t>& cover);
/// Deletes the set votes of the cover.
StrategyAction ccdv_cover_action(const std::vector<std::size_t>& cover);
/// In each cover set's vote, lets the set candidate beat one of the two candidates that beat it.
StrategyAction cbra_cover_action(const StrategyInstance& gadget, const X3cInstance& inst,
                                 const std::vector<std::size_t>& cover);
/// In the first vote, lets q beat every member of the dominating set.
StrategyAction dbra_dominating_action(const StrategyInstance& gadget, const CandidateSet& dominating);

}  // namespace tsapproval

#endif  // TSAPPROVAL_REDUCTIONS_HPP
