#include "tsapproval/properties.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

namespace tsapproval {

std::string_view to_string(TsCriterion criterion) {
    switch (criterion) {
        case TsCriterion::exclusive_monotonicity:
            return "exclusive-monotonicity";
        case TsCriterion::enm:
            return "enm";
        case TsCriterion::ts_monotonicity:
            return "ts-monotonicity";
    }
    return "?";
}

std::string_view to_string(VcCriterion criterion) {
    switch (criterion) {
        case VcCriterion::monotonicity:
            return "monotonicity";
        case VcCriterion::pareto:
            return "pareto";
        case VcCriterion::consistency:
            return "consistency";
        case VcCriterion::majority:
            return "majority";
        case VcCriterion::anonymity:
            return "anonymity";
        case VcCriterion::neutrality:
            return "neutrality";
    }
    return "?";
}

std::optional<TsCriterion> parse_ts_criterion(std::string_view tag) {
    for (auto c : {TsCriterion::exclusive_monotonicity, TsCriterion::enm, TsCriterion::ts_monotonicity})
        if (to_string(c) == tag) return c;
    if (tag == "em") return TsCriterion::exclusive_monotonicity;
    return std::nullopt;
}

std::optional<VcCriterion> parse_vc_criterion(std::string_view tag) {
    for (auto c : {VcCriterion::monotonicity, VcCriterion::pareto, VcCriterion::consistency, VcCriterion::majority,
                   VcCriterion::anonymity, VcCriterion::neutrality})
        if (to_string(c) == tag) return c;
    return std::nullopt;
}

namespace {

bool contains(const CandidateSet& s, CandidateId c) { return std::binary_search(s.begin(), s.end(), c); }

bool subset(const CandidateSet& a, const CandidateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool violation_mask(TsCriterion criterion, std::uint64_t before, std::uint64_t after, std::uint64_t cbit) {
    const bool grew = (after & ~before) != 0;
    switch (criterion) {
        case TsCriterion::exclusive_monotonicity:
            return (before & cbit) && (!(after & cbit) || grew);
        case TsCriterion::enm:
            return !(before & cbit) && grew && !(after & cbit);
        case TsCriterion::ts_monotonicity:
            return (before & cbit) && !(after & cbit);
    }
    return false;
}

std::vector<std::uint64_t> mask_table(SolutionRule rule, std::size_t m) {
    const std::uint64_t total = std::uint64_t{1} << pair_count(m);
    std::vector<std::uint64_t> table(total);
    for (std::uint64_t code = 0; code < total; ++code) table[code] = apply_mask(rule, Tournament::from_code(m, code));
    return table;
}

// For candidate c of the tournament with `code`: the pair bits of its in-arcs.
std::vector<std::uint64_t> in_arc_bits(std::size_t m, std::uint64_t code, std::size_t c) {
    std::vector<std::uint64_t> bits;
    for (std::size_t b = 0; b < m; ++b) {
        if (b == c) continue;
        const std::size_t lo = std::min(b, c);
        const std::size_t hi = std::max(b, c);
        const std::uint64_t bit = std::uint64_t{1} << pair_index(m, lo, hi);
        const bool lower_wins = (code & bit) == 0;
        if ((lower_wins && lo == b) || (!lower_wins && hi == b)) bits.push_back(bit);
    }
    return bits;
}

struct ScanHit {
    std::uint64_t code = 0;
    std::size_t candidate = 0;
    std::uint64_t lifted = 0;
};

// Scans codes [first, last) in order; visit returns false to stop.
template <typename Visit>
std::uint64_t scan_codes(const std::vector<std::uint64_t>& table, std::size_t m, TsCriterion criterion,
                         std::uint64_t first, std::uint64_t last, const std::atomic<bool>* cancel, Visit&& visit) {
    std::uint64_t lifts = 0;
    for (std::uint64_t code = first; code < last; ++code) {
        if (cancel != nullptr && (code & 0xff) == 0 && cancel->load(std::memory_order_relaxed)) return lifts;
        const std::uint64_t before = table[code];
        for (std::size_t c = 0; c < m; ++c) {
            const std::uint64_t cbit = std::uint64_t{1} << c;
            const auto in = in_arc_bits(m, code, c);
            const std::uint64_t subsets = std::uint64_t{1} << in.size();
            for (std::uint64_t s = 0; s < subsets; ++s) {
                std::uint64_t lifted = code;
                for (std::size_t i = 0; i < in.size(); ++i)
                    if ((s >> i) & 1U) lifted ^= in[i];
                ++lifts;
                if (violation_mask(criterion, before, table[lifted], cbit)) {
                    if (!visit(ScanHit{code, c, lifted})) return lifts;
                }
            }
        }
    }
    return lifts;
}

TsCounterexample make_ts_witness(SolutionRule rule, TsCriterion criterion, std::size_t m, const ScanHit& hit,
                                 std::uint64_t seed) {
    return TsCounterexample{rule,
                            criterion,
                            Tournament::from_code(m, hit.code),
                            Tournament::from_code(m, hit.lifted),
                            CandidateId{hit.candidate},
                            seed};
}

Tournament random_tournament(std::size_t m, std::mt19937_64& rng) {
    std::vector<std::vector<bool>> beats(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            const bool forward = (rng() & 1U) != 0;
            beats[i][j] = forward;
            beats[j][i] = !forward;
        }
    return Tournament::from_matrix(beats);
}

Tournament random_lift(const Tournament& t, CandidateId c, std::mt19937_64& rng) {
    Tournament out = t;
    for (CandidateId b : t.in_neighbors(c))
        if (rng() & 1U) out = out.reverse_arc(b, c);
    return out;
}

TsAuditReport audit_ts_exhaustive(SolutionRule rule, TsCriterion criterion, const TsAuditConfig& config) {
    TsAuditReport report;
    report.tournaments_per_size.assign(config.max_candidates + 1, 0);
    const unsigned jobs = std::max(1U, config.jobs);
    for (std::size_t m = 1; m <= config.max_candidates; ++m) {
        const auto table = mask_table(rule, m);
        const std::uint64_t total = table.size();
        const std::uint64_t chunks = std::min<std::uint64_t>(jobs, total);
        std::vector<std::optional<ScanHit>> found(chunks);
        std::vector<std::uint64_t> lifts(chunks, 0);
        // a chunk that finds a witness cancels every later chunk
        std::vector<std::atomic<bool>> cancel(chunks);

        auto work = [&](std::uint64_t k) {
            const std::uint64_t first = total * k / chunks;
            const std::uint64_t last = total * (k + 1) / chunks;
            lifts[k] = scan_codes(table, m, criterion, first, last, &cancel[k], [&](const ScanHit& hit) {
                if (!found[k]) found[k] = hit;
                if (!config.stop_at_first) return true;
                for (std::uint64_t j = k + 1; j < chunks; ++j) cancel[j].store(true);
                return false;
            });
        };

        if (chunks == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::uint64_t k = 0; k < chunks; ++k) pool.emplace_back(work, k);
        }

        for (std::uint64_t k = 0; k < chunks; ++k) report.lifts_checked += lifts[k];
        for (std::uint64_t k = 0; k < chunks; ++k) {
            if (found[k]) {
                report.witness = make_ts_witness(rule, criterion, m, *found[k], config.seed);
                break;
            }
        }
        if (report.witness && config.stop_at_first) {
            report.tournaments_per_size.resize(m + 1);
            return report;
        }
        report.tournaments_per_size[m] = total;
    }
    report.complete = true;
    return report;
}

TsAuditReport audit_ts_random(SolutionRule rule, TsCriterion criterion, const TsAuditConfig& config) {
    TsAuditReport report;
    report.tournaments_per_size.assign(config.max_candidates + 1, 0);
    std::mt19937_64 rng(config.seed);
    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        const std::size_t m = config.max_candidates < 2 ? 1 : 2 + rng() % (config.max_candidates - 1);
        const Tournament t = random_tournament(m, rng);
        const CandidateId c{rng() % m};
        TsCounterexample w{rule, criterion, t, random_lift(t, c, rng), c, config.seed};
        ++report.tournaments_per_size[m];
        ++report.lifts_checked;
        if (violates(w)) {
            report.witness = std::move(w);
            if (config.stop_at_first) return report;
        }
    }
    return report;
}

}  // namespace

bool is_monotone_lift(const Tournament& before, const Tournament& after, CandidateId c) {
    const std::size_t m = before.size();
    if (after.size() != m || c.index >= m) return false;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            if (a == c.index || b == c.index) continue;
            if (before.beats({a}, {b}) != after.beats({a}, {b})) return false;
        }
    }
    for (std::size_t b = 0; b < m; ++b) {
        if (b != c.index && before.beats(c, {b}) && !after.beats(c, {b})) return false;
    }
    return true;
}

bool violates(const TsCounterexample& w) {
    if (!is_monotone_lift(w.before, w.after, w.candidate)) return false;
    const CandidateSet s = apply(w.rule, w.before);
    const CandidateSet s2 = apply(w.rule, w.after);
    const bool in_before = contains(s, w.candidate);
    const bool in_after = contains(s2, w.candidate);
    switch (w.criterion) {
        case TsCriterion::exclusive_monotonicity:
            return in_before && (!in_after || !subset(s2, s));
        case TsCriterion::enm:
            return !in_before && !subset(s2, s) && !in_after;
        case TsCriterion::ts_monotonicity:
            return in_before && !in_after;
    }
    return false;
}

TsAuditReport audit_ts(SolutionRule rule, TsCriterion criterion, const TsAuditConfig& config) {
    if (config.max_candidates == 0) throw AuditError("max_candidates must be at least 1");
    if (config.exhaustive) {
        if (config.max_candidates > kMaxExhaustiveTsCandidates) {
            throw AuditError("exhaustive audit bound is " + std::to_string(kMaxExhaustiveTsCandidates) +
                             " candidates, got " + std::to_string(config.max_candidates) +
                             "; use random mode instead");
        }
        return audit_ts_exhaustive(rule, criterion, config);
    }
    if (config.max_candidates > kMaxCandidates) throw AuditError("max_candidates exceeds the evaluation bound");
    return audit_ts_random(rule, criterion, config);
}

std::optional<TsCounterexample> audit_ts(SolutionRule rule, TsCriterion criterion, std::size_t m_max) {
    TsAuditConfig config;
    config.max_candidates = m_max;
    return audit_ts(rule, criterion, config).witness;
}

void for_each_ts_violation(SolutionRule rule, TsCriterion criterion, std::size_t m,
                           const std::function<bool(const TsCounterexample&)>& visit) {
    if (m == 0 || m > kMaxExhaustiveTsCandidates) throw AuditError("candidate count outside the exhaustive bound");
    const auto table = mask_table(rule, m);
    scan_codes(table, m, criterion, 0, table.size(), nullptr,
               [&](const ScanHit& hit) { return visit(make_ts_witness(rule, criterion, m, hit, 0)); });
}

// ---------------------------------------------------------------------------
// voting correspondence axioms

namespace {

CandidateSet intersect(const CandidateSet& a, const CandidateSet& b) {
    CandidateSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool same_multiset(std::span<const Tournament> a, std::span<const Tournament> b) {
    return a.size() == b.size() && std::is_permutation(a.begin(), a.end(), b.begin(), b.end());
}

bool is_permutation_of_ids(const std::vector<CandidateId>& perm, std::size_t m) {
    if (perm.size() != m) return false;
    std::vector<bool> seen(m, false);
    for (auto c : perm) {
        if (c.index >= m || seen[c.index]) return false;
        seen[c.index] = true;
    }
    return true;
}

Election random_election(std::size_t m, std::size_t n, std::mt19937_64& rng) {
    std::vector<Tournament> votes;
    votes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) votes.push_back(random_tournament(m, rng));
    return Election(default_roster(m), std::move(votes));
}

Tournament with_arc(const Tournament& t, CandidateId a, CandidateId b) { return t.beats(a, b) ? t : t.reverse_arc(a, b); }

// Candidate a made to beat everyone in t.
Tournament make_source(Tournament t, CandidateId a) {
    for (std::size_t b = 0; b < t.size(); ++b)
        if (b != a.index) t = with_arc(t, a, {b});
    return t;
}

VcCounterexample make_vc(SolutionRule rule, VcCriterion criterion, Election before, Election after, CandidateId c,
                         std::uint64_t seed) {
    return VcCounterexample{rule, criterion, std::move(before), std::move(after), c, std::nullopt, {}, seed};
}

// Draws one random candidate instance for `criterion`; the result may or may not violate it.
VcCounterexample draw(VcCriterion criterion, SolutionRule rule, const VcAuditConfig& config, std::mt19937_64& rng) {
    const std::size_t max_m = std::max<std::size_t>(config.max_candidates, 2);
    const std::size_t max_n = std::max<std::size_t>(config.max_votes, 1);
    const std::size_t m = 2 + rng() % (max_m - 1);
    const std::size_t n = 1 + rng() % max_n;
    Election e = random_election(m, n, rng);
    switch (criterion) {
        case VcCriterion::monotonicity: {
            const CandidateSet w = winners(e, rule);
            const CandidateId c = w[rng() % w.size()];
            std::vector<Tournament> lifted;
            for (const auto& v : e.votes()) lifted.push_back(random_lift(v, c, rng));
            Election after(e.roster(), std::move(lifted));
            return make_vc(rule, criterion, std::move(e), std::move(after), c, config.seed);
        }
        case VcCriterion::pareto: {
            const CandidateId a{rng() % m};
            const CandidateId b{(a.index + 1 + rng() % (m - 1)) % m};
            std::vector<Tournament> votes;
            for (const auto& v : e.votes()) votes.push_back(with_arc(v, a, b));
            Election forced(e.roster(), std::move(votes));
            VcCounterexample w = make_vc(rule, criterion, forced, forced, a, config.seed);
            w.other = b;
            return w;
        }
        case VcCriterion::consistency: {
            Election second = random_election(m, 1 + rng() % max_n, rng);
            return make_vc(rule, criterion, std::move(e), std::move(second), CandidateId{0}, config.seed);
        }
        case VcCriterion::majority: {
            const CandidateId c{rng() % m};
            std::vector<Tournament> votes(e.votes().begin(), e.votes().end());
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t i = 0; i < n / 2 + 1; ++i) votes[order[i]] = make_source(votes[order[i]], c);
            Election forced(e.roster(), std::move(votes));
            return make_vc(rule, criterion, forced, forced, c, config.seed);
        }
        case VcCriterion::anonymity: {
            std::vector<Tournament> votes(e.votes().begin(), e.votes().end());
            std::shuffle(votes.begin(), votes.end(), rng);
            Election after(e.roster(), std::move(votes));
            return make_vc(rule, criterion, std::move(e), std::move(after), CandidateId{0}, config.seed);
        }
        case VcCriterion::neutrality: {
            std::vector<CandidateId> perm = all_candidates(m);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<Tournament> votes;
            for (const auto& v : e.votes()) votes.push_back(permute(v, perm));
            Election after(e.roster(), std::move(votes));
            VcCounterexample w = make_vc(rule, criterion, std::move(e), std::move(after), CandidateId{0}, config.seed);
            w.relabel = std::move(perm);
            return w;
        }
    }
    throw AuditError("unknown criterion");
}

// Exhaustive enumeration over every election with m <= 4 candidates and n <= 3 votes.
class SmallElections {
   public:
    SmallElections(SolutionRule rule, std::size_t m) : m_(m) {
        const std::uint64_t total = std::uint64_t{1} << pair_count(m);
        for (std::uint64_t code = 0; code < total; ++code) {
            votes_.push_back(Tournament::from_code(m, code));
            masks_.push_back(apply_mask(rule, votes_.back()));
        }
    }

    [[nodiscard]] std::uint64_t size() const { return votes_.size(); }
    [[nodiscard]] std::uint64_t mask(std::uint64_t code) const { return masks_[code]; }
    [[nodiscard]] const Tournament& vote(std::uint64_t code) const { return votes_[code]; }

    [[nodiscard]] std::uint64_t winner_mask(std::span<const std::uint64_t> codes) const {
        std::vector<std::size_t> score(m_, 0);
        for (auto code : codes)
            for (std::size_t c = 0; c < m_; ++c) score[c] += (masks_[code] >> c) & 1U;
        const std::size_t best = *std::max_element(score.begin(), score.end());
        std::uint64_t out = 0;
        for (std::size_t c = 0; c < m_; ++c)
            if (score[c] == best) out |= std::uint64_t{1} << c;
        return out;
    }

    [[nodiscard]] Election election(std::span<const std::uint64_t> codes) const {
        std::vector<Tournament> votes;
        for (auto code : codes) votes.push_back(votes_[code]);
        return Election(default_roster(m_), std::move(votes));
    }

    // Calls visit(codes) for every vote tuple of length n; stops when visit returns false.
    template <typename Visit>
    bool for_each(std::size_t n, Visit&& visit) const {
        std::vector<std::uint64_t> codes(n, 0);
        while (true) {
            if (!visit(std::span<const std::uint64_t>(codes))) return false;
            std::size_t i = 0;
            while (i < n && ++codes[i] == size()) codes[i++] = 0;
            if (i == n) return true;
        }
    }

   private:
    std::size_t m_;
    std::vector<Tournament> votes_;
    std::vector<std::uint64_t> masks_;
};

// Every winner c and every nonempty combination of per-vote lifts of c.
std::optional<VcCounterexample> exhaustive_monotonicity(SolutionRule rule, const SmallElections& space, std::size_t m,
                                                        std::size_t n, std::uint64_t seed) {
    std::optional<VcCounterexample> out;
    space.for_each(n, [&](std::span<const std::uint64_t> codes) {
        const std::uint64_t w = space.winner_mask(codes);
        for (std::size_t c = 0; c < m; ++c) {
            if (!((w >> c) & 1U)) continue;
            std::vector<std::vector<std::uint64_t>> in;
            std::size_t total_bits = 0;
            for (auto code : codes) {
                in.push_back(in_arc_bits(m, code, c));
                total_bits += in.back().size();
            }
            for (std::uint64_t s = 1; s < (std::uint64_t{1} << total_bits); ++s) {
                std::vector<std::uint64_t> lifted(codes.begin(), codes.end());
                std::size_t bit = 0;
                for (std::size_t v = 0; v < n; ++v)
                    for (auto pair_bit : in[v])
                        if ((s >> bit++) & 1U) lifted[v] ^= pair_bit;
                if (!((space.winner_mask(lifted) >> c) & 1U)) {
                    out = make_vc(rule, VcCriterion::monotonicity, space.election(codes), space.election(lifted),
                                  CandidateId{c}, seed);
                    return false;
                }
            }
        }
        return true;
    });
    return out;
}

std::optional<VcCounterexample> exhaustive_search(VcCriterion criterion, SolutionRule rule, const VcAuditConfig& config) {
    if (config.max_candidates > kMaxExhaustiveVcCandidates || config.max_votes > kMaxExhaustiveVcVotes) {
        throw AuditError("exhaustive voting audits are bounded by " + std::to_string(kMaxExhaustiveVcCandidates) +
                         " candidates and " + std::to_string(kMaxExhaustiveVcVotes) + " votes");
    }
    for (std::size_t m = 2; m <= config.max_candidates; ++m) {
        const SmallElections space(rule, m);
        for (std::size_t n = 1; n <= config.max_votes; ++n) {
            if (criterion == VcCriterion::monotonicity) {
                if (auto w = exhaustive_monotonicity(rule, space, m, n, config.seed)) return w;
                continue;
            }
            std::optional<VcCounterexample> out;
            space.for_each(n, [&](std::span<const std::uint64_t> codes) {
                const Election e = space.election(codes);
                std::vector<VcCounterexample> tries;
                switch (criterion) {
                    case VcCriterion::pareto:
                        if (auto w = find_pareto_violation(e, rule)) tries.push_back(*w);
                        break;
                    case VcCriterion::consistency:
                        for (std::size_t split = 1; split < n; ++split) {
                            const std::vector<Tournament> all(e.votes().begin(), e.votes().end());
                            Election first(e.roster(), {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(split)});
                            Election second(e.roster(), {all.begin() + static_cast<std::ptrdiff_t>(split), all.end()});
                            tries.push_back(make_vc(rule, criterion, std::move(first), std::move(second), {0}, config.seed));
                        }
                        break;
                    case VcCriterion::majority:
                        for (std::size_t c = 0; c < m; ++c) tries.push_back(make_vc(rule, criterion, e, e, {c}, config.seed));
                        break;
                    case VcCriterion::anonymity: {
                        std::vector<Tournament> votes(e.votes().begin(), e.votes().end());
                        std::vector<std::size_t> idx(n);
                        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
                        while (std::next_permutation(idx.begin(), idx.end())) {
                            std::vector<Tournament> shuffled;
                            for (auto i : idx) shuffled.push_back(votes[i]);
                            tries.push_back(make_vc(rule, criterion, e, Election(e.roster(), std::move(shuffled)), {0},
                                                    config.seed));
                        }
                        break;
                    }
                    case VcCriterion::neutrality: {
                        // a transposition and a full cycle generate every relabelling
                        std::vector<CandidateId> swap = all_candidates(m);
                        std::swap(swap[0], swap[1]);
                        std::vector<CandidateId> cycle;
                        for (std::size_t c = 0; c < m; ++c) cycle.push_back({(c + 1) % m});
                        for (const auto& perm : {swap, cycle}) {
                            std::vector<Tournament> votes;
                            for (const auto& v : e.votes()) votes.push_back(permute(v, perm));
                            VcCounterexample w =
                                make_vc(rule, criterion, e, Election(e.roster(), std::move(votes)), {0}, config.seed);
                            w.relabel = perm;
                            tries.push_back(std::move(w));
                        }
                        break;
                    }
                    case VcCriterion::monotonicity:
                        break;
                }
                for (auto& w : tries) {
                    if (violates(w)) {
                        out = std::move(w);
                        return false;
                    }
                }
                return true;
            });
            if (out) return out;
        }
    }
    return std::nullopt;
}

}  // namespace

bool violates(const VcCounterexample& w) {
    const Election& e = w.before;
    const std::size_t m = e.candidate_count();
    if (w.candidate.index >= m) return false;
    switch (w.criterion) {
        case VcCriterion::monotonicity: {
            const Election& lifted = w.after;
            if (lifted.roster() != e.roster() || lifted.vote_count() != e.vote_count()) return false;
            for (std::size_t i = 0; i < e.vote_count(); ++i)
                if (!is_monotone_lift(e.vote(i), lifted.vote(i), w.candidate)) return false;
            return contains(winners(e, w.rule), w.candidate) && !contains(winners(lifted, w.rule), w.candidate);
        }
        case VcCriterion::pareto: {
            if (!w.other || w.other->index >= m || *w.other == w.candidate) return false;
            for (const auto& v : e.votes())
                if (!v.beats(w.candidate, *w.other)) return false;
            const CandidateSet win = winners(e, w.rule);
            return contains(win, *w.other) && !contains(win, w.candidate);
        }
        case VcCriterion::consistency: {
            if (w.after.roster() != e.roster()) return false;
            const CandidateSet common = intersect(winners(e, w.rule), winners(w.after, w.rule));
            return !common.empty() && winners(concat(e, w.after), w.rule) != common;
        }
        case VcCriterion::majority: {
            std::size_t sourced = 0;
            for (const auto& v : e.votes()) sourced += source(v) == w.candidate ? 1 : 0;
            return 2 * sourced > e.vote_count() && !contains(winners(e, w.rule), w.candidate);
        }
        case VcCriterion::anonymity:
            return w.after.roster() == e.roster() && same_multiset(e.votes(), w.after.votes()) &&
                   winners(e, w.rule) != winners(w.after, w.rule);
        case VcCriterion::neutrality: {
            if (!is_permutation_of_ids(w.relabel, m) || w.after.vote_count() != e.vote_count() ||
                w.after.candidate_count() != m)
                return false;
            for (std::size_t i = 0; i < e.vote_count(); ++i)
                if (permute(e.vote(i), w.relabel) != w.after.vote(i)) return false;
            CandidateSet mapped;
            for (auto c : winners(e, w.rule)) mapped.push_back(w.relabel[c.index]);
            std::sort(mapped.begin(), mapped.end());
            return mapped != winners(w.after, w.rule);
        }
    }
    return false;
}

std::optional<VcCounterexample> audit_vc(VcCriterion criterion, SolutionRule rule, const VcAuditConfig& config) {
    if (config.exhaustive) return exhaustive_search(criterion, rule, config);
    if (config.max_candidates < 2) throw AuditError("random voting audits need at least 2 candidates");
    std::mt19937_64 rng(config.seed);
    for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
        VcCounterexample w = draw(criterion, rule, config, rng);
        if (violates(w)) return w;
    }
    return std::nullopt;
}

std::optional<VcCounterexample> audit_vc_monotonicity(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::monotonicity, rule, config);
}
std::optional<VcCounterexample> audit_pareto(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::pareto, rule, config);
}
std::optional<VcCounterexample> audit_consistency(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::consistency, rule, config);
}
std::optional<VcCounterexample> audit_majority(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::majority, rule, config);
}
std::optional<VcCounterexample> audit_anonymity(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::anonymity, rule, config);
}
std::optional<VcCounterexample> audit_neutrality(SolutionRule rule, const VcAuditConfig& config) {
    return audit_vc(VcCriterion::neutrality, rule, config);
}

std::optional<VcCounterexample> find_pareto_violation(const Election& e, SolutionRule rule) {
    const std::size_t m = e.candidate_count();
    const CandidateSet win = winners(e, rule);
    for (std::size_t a = 0; a < m; ++a) {
        if (contains(win, {a})) continue;
        for (std::size_t b = 0; b < m; ++b) {
            if (b == a || !contains(win, {b})) continue;
            const bool unanimous =
                std::all_of(e.votes().begin(), e.votes().end(), [&](const Tournament& v) { return v.beats({a}, {b}); });
            if (unanimous) {
                VcCounterexample w = make_vc(rule, VcCriterion::pareto, e, e, {a}, 0);
                w.other = CandidateId{b};
                return w;
            }
        }
    }
    return std::nullopt;
}

Tournament source_tournament(std::size_t m, CandidateId top) {
    if (top.index >= m) throw ConstructionError("source candidate out of range");
    std::vector<CandidateId> order{top};
    for (std::size_t c = 0; c < m; ++c)
        if (c != top.index) order.push_back({c});
    return transitive(order);
}

std::vector<std::string> default_roster(std::size_t m) {
    std::vector<std::string> names;
    names.reserve(m);
    for (std::size_t c = 0; c < m; ++c) {
        names.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + c)) : "c" + std::to_string(c));
    }
    return names;
}

VcCounterexample build_monotonicity_counterexample(const TsCounterexample& w) {
    if (w.criterion == TsCriterion::ts_monotonicity) {
        throw AuditError("monotonicity elections are built from exclusive-monotonicity or ENM witnesses");
    }
    if (!violates(w)) throw AuditError("witness does not falsify " + std::string(to_string(w.criterion)));
    const std::size_t m = w.before.size();
    const CandidateId c = w.candidate;
    const CandidateSet s = apply(w.rule, w.before);
    const CandidateSet s2 = apply(w.rule, w.after);

    std::vector<Tournament> before;
    std::optional<CandidateId> other;
    if (w.criterion == TsCriterion::exclusive_monotonicity && !contains(s2, c)) {
        before = {w.before};
    } else {
        CandidateSet grown;
        std::set_difference(s2.begin(), s2.end(), s.begin(), s.end(), std::back_inserter(grown));
        const CandidateId b = grown.front();
        other = b;
        if (w.criterion == TsCriterion::exclusive_monotonicity) {
            before = {w.before, source_tournament(m, b), source_tournament(m, b), source_tournament(m, c)};
        } else {
            before = {w.before, source_tournament(m, b), source_tournament(m, c)};
        }
    }
    std::vector<Tournament> after = before;
    after[0] = w.after;

    VcCounterexample out{w.rule,
                         VcCriterion::monotonicity,
                         Election(default_roster(m), std::move(before)),
                         Election(default_roster(m), std::move(after)),
                         c,
                         other,
                         {},
                         w.seed};
    if (!violates(out)) throw AuditError("constructed election does not dethrone the candidate");
    return out;
}

}  // namespace tsapproval
