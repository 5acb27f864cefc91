#ifndef TSAPPROVAL_TOURNAMENT_HPP
#define TSAPPROVAL_TOURNAMENT_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsapproval {

/// Index of a candidate (vertex) inside one roster.
struct CandidateId {
    std::size_t index = 0;

    friend constexpr auto operator<=>(CandidateId, CandidateId) = default;
};

/// Sorted, duplicate-free list of candidates.
using CandidateSet = std::vector<CandidateId>;

/// Largest candidate count accepted by exhaustive searches (bit masks fit one word).
inline constexpr std::size_t kMaxExhaustiveCandidates = 64;
/// Largest candidate count accepted anywhere.
inline constexpr std::size_t kMaxCandidates = 10'000;

/// Thrown when a relation is not a tournament or an argument is out of range.
class ConstructionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered pair (winner, loser).
struct Arc {
    CandidateId from;
    CandidateId to;

    friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

/**
 * @brief complete asymmetric relation over candidates 0..m-1,
 * stored as a dense bit matrix (row a holds the candidates a beats)
 *
 * Values are immutable once built; every modifying operation returns a new
 * tournament.
 */
class Tournament {
   public:
    /// The one-candidate tournament.
    Tournament();

    /**
     * @brief builds a tournament from an explicit arc list
     *
     * Every unordered pair must appear exactly once, in one orientation.
     * Throws ConstructionError naming the first offending pair otherwise.
     */
    static Tournament build(std::size_t m, std::span<const Arc> arcs);

    /// Builds from a row-major boolean matrix; validates as build() does.
    static Tournament from_matrix(const std::vector<std::vector<bool>>& beats);

    /**
     * @brief decodes the canonical enumeration code of a tournament
     *
     * Pairs (i, j), i < j, are ordered lexicographically; bit t of `code`
     * is 0 when the smaller index wins the t-th pair and 1 otherwise.
     * Code 0 is the transitive order 0 > 1 > ... > m-1.
     */
    static Tournament from_code(std::size_t m, std::uint64_t code);

    /// Inverse of from_code; requires pair_count(m) <= 64.
    [[nodiscard]] std::uint64_t code() const;

    [[nodiscard]] std::size_t size() const noexcept { return m_; }

    [[nodiscard]] bool beats(CandidateId a, CandidateId b) const;

    [[nodiscard]] CandidateSet out_neighbors(CandidateId c) const;
    [[nodiscard]] CandidateSet in_neighbors(CandidateId c) const;
    [[nodiscard]] std::size_t outdegree(CandidateId c) const;
    [[nodiscard]] std::size_t indegree(CandidateId c) const;

    /// Same tournament with the orientation of pair {a, b} flipped.
    [[nodiscard]] Tournament reverse_arc(CandidateId a, CandidateId b) const;

    /// Row of c as packed 64-bit words (bit j of word j/64 set iff c beats j).
    [[nodiscard]] std::span<const std::uint64_t> row(CandidateId c) const;
    [[nodiscard]] std::size_t words_per_row() const noexcept { return words_; }

    /// Lowest word of row c; valid only when size() <= 64.
    [[nodiscard]] std::uint64_t row_mask(CandidateId c) const;

    /// All arcs in canonical pair order.
    [[nodiscard]] std::vector<Arc> arcs() const;

    friend bool operator==(const Tournament&, const Tournament&) = default;

   private:
    explicit Tournament(std::size_t m);
    void set_arc(std::size_t from, std::size_t to);
    void check_id(CandidateId c) const;

    std::size_t m_ = 1;
    std::size_t words_ = 1;
    std::vector<std::uint64_t> bits_;
};

/// Number of unordered pairs among m candidates.
constexpr std::size_t pair_count(std::size_t m) noexcept { return m * (m - (m > 0 ? 1 : 0)) / 2; }

/// Position of pair {i, j} (i < j) in the canonical lexicographic order.
constexpr std::size_t pair_index(std::size_t m, std::size_t i, std::size_t j) noexcept {
    return i * (2 * m - i - 1) / 2 + (j - i - 1);
}

/// Inverse of pair_index.
std::pair<std::size_t, std::size_t> pair_at(std::size_t m, std::size_t index);

/// Subtournament with its index remapping (new index -> original id).
struct InducedTournament {
    Tournament tournament;
    std::vector<CandidateId> original;
};

/// Restriction of t to `keep` (any order, duplicates ignored); new indices follow ascending original ids.
InducedTournament induced(const Tournament& t, const CandidateSet& keep);

/// The candidate beating every other one, if any.
std::optional<CandidateId> source(const Tournament& t);

/// Maximal strongly connected components, earlier components beating later ones.
struct Condensation {
    std::vector<CandidateSet> components;
};

Condensation condense(const Tournament& t);

bool is_regular(const Tournament& t);

/**
 * @brief regular tournament on an odd number of candidates:
 * i beats i+1, ..., i+(m-1)/2 (mod m)
 *
 * Throws ConstructionError for even or zero m; see regular_tournament().
 */
Tournament cyclic_regular(std::size_t m);

/**
 * @brief regular tournament for any m >= 1
 *
 * Odd m gives cyclic_regular(m). Even m takes cyclic_regular(m-1) and adds a
 * last candidate that beats the even-indexed candidates and loses to the odd
 * ones, so every |out - in| is at most 1.
 */
Tournament regular_tournament(std::size_t m);

/// Transitive tournament in which `order[0]` beats everyone, `order[1]` everyone but order[0], ...
Tournament transitive(const std::vector<CandidateId>& order);
/// Transitive tournament 0 > 1 > ... > m-1.
Tournament transitive(std::size_t m);

/// Relabelling: result beats(perm[a], perm[b]) iff t.beats(a, b).
Tournament permute(const Tournament& t, const std::vector<CandidateId>& perm);

/**
 * @brief tournament assembled from partial constraints
 *
 * Constraints are added one arc at a time; a contradicting arc throws.
 * finish() orients every unconstrained pair so that the lower index wins.
 */
class ArcBuilder {
   public:
    explicit ArcBuilder(std::size_t m);

    /// Requires `from` to beat `to`; throws ConstructionError on contradiction.
    ArcBuilder& require(CandidateId from, CandidateId to);
    /// Requires every member of `from` to beat every member of `to` (shared members skipped).
    ArcBuilder& require_all(const CandidateSet& from, const CandidateSet& to);
    /// Copies the orientation of `block` onto the listed candidates (block index i -> members[i]).
    ArcBuilder& embed(const Tournament& block, const std::vector<CandidateId>& members);

    [[nodiscard]] bool is_set(CandidateId a, CandidateId b) const;
    [[nodiscard]] Tournament finish() const;

   private:
    std::size_t m_;
    // 0 unset, 1 lower index wins, 2 higher index wins
    std::vector<std::uint8_t> state_;
};

/// Sorted set of all candidates 0..m-1.
CandidateSet all_candidates(std::size_t m);

/// Human-readable arc list "0>1 2>0 ..." for diagnostics.
std::string describe(const Tournament& t);

}  // namespace tsapproval

#endif  // TSAPPROVAL_TOURNAMENT_HPP
