#include "tsapproval/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "tsapproval/properties.hpp"
#include "tsapproval/solutions.hpp"

namespace tsapproval {

namespace {

void fail(const std::string& what) { throw ReductionError(what); }

void ensure(bool ok, const std::string& what) {
    if (!ok) fail("generated gadget failed its check: " + what);
}

class Filler {
   public:
    explicit Filler(const ReductionOptions& options) {
        if (options.fill_seed) rng_.emplace(*options.fill_seed);
    }

    Tournament finish(ArcBuilder& builder, std::size_t m) {
        if (rng_) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    if (builder.is_set({i}, {j})) continue;
                    if ((*rng_)() & 1U) {
                        builder.require({j}, {i});
                    } else {
                        builder.require({i}, {j});
                    }
                }
        }
        return builder.finish();
    }

   private:
    std::optional<std::mt19937_64> rng_;
};

Tournament source_vote(std::size_t m, CandidateId top, Filler& filler) {
    ArcBuilder b(m);
    for (std::size_t c = 0; c < m; ++c)
        if (c != top.index) b.require(top, {c});
    return filler.finish(b, m);
}

CandidateSet sorted(CandidateSet s) {
    std::sort(s.begin(), s.end());
    return s;
}

CandidateSet others(std::size_t m, const CandidateSet& drop) {
    CandidateSet rest;
    for (std::size_t c = 0; c < m; ++c)
        if (std::find(drop.begin(), drop.end(), CandidateId{c}) == drop.end()) rest.push_back({c});
    return rest;
}

// Outdegrees inside the subtournament differ by at most one (exactly regular when odd).
bool near_regular(const Tournament& t, const CandidateSet& keep) {
    const Tournament sub = induced(t, keep).tournament;
    std::size_t lo = sub.size(), hi = 0;
    for (std::size_t c = 0; c < sub.size(); ++c) {
        lo = std::min(lo, sub.outdegree({c}));
        hi = std::max(hi, sub.outdegree({c}));
    }
    return sub.size() % 2 == 1 ? lo == hi : hi - lo <= 1;
}

std::string fresh_name(const std::string& base, const std::unordered_set<std::string>& taken) {
    if (!taken.count(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string name = base + "_" + std::to_string(i);
        if (!taken.count(name)) return name;
    }
}

std::vector<std::string> element_names(const X3cInstance& inst) {
    std::vector<std::string> names;
    for (const auto& u : inst.universe) names.push_back("a" + u);
    return names;
}

std::uint64_t choose_upto(std::size_t n, std::size_t k) {
    std::uint64_t total = 0, term = 1;
    for (std::size_t s = 0; s <= k && s <= n; ++s) {
        total += term;
        if (total > kMaxTdsOracleChoices) return total;
        term = term * (n - s) / (s + 1);
    }
    return total;
}

}  // namespace

std::vector<std::string> default_universe(std::size_t kappa) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= 3 * kappa; ++i) names.push_back(std::to_string(i));
    return names;
}

void validate(const X3cInstance& inst) {
    const std::size_t n = 3 * inst.kappa;
    if (inst.kappa == 0) fail("x3c needs kappa >= 1");
    if (inst.universe.size() != n) {
        fail("x3c universe has " + std::to_string(inst.universe.size()) + " elements, expected " + std::to_string(n));
    }
    std::unordered_set<std::string> seen;
    for (const auto& name : inst.universe) {
        try {
            check_candidate_name(name);
        } catch (const ElectionError& e) {
            fail(std::string("x3c element: ") + e.what());
        }
        if (!seen.insert(name).second) fail("duplicate x3c element '" + name + "'");
    }
    if (inst.sets.size() != n) {
        fail("x3c has " + std::to_string(inst.sets.size()) + " sets, expected " + std::to_string(n));
    }
    std::vector<std::size_t> occurrences(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        const auto& set = inst.sets[s];
        for (std::size_t e : set)
            if (e >= n) fail("set " + std::to_string(s + 1) + " names element index " + std::to_string(e));
        if (set[0] == set[1] || set[0] == set[2] || set[1] == set[2]) {
            fail("set " + std::to_string(s + 1) + " repeats an element");
        }
        for (std::size_t e : set) ++occurrences[e];
    }
    for (std::size_t e = 0; e < n; ++e) {
        if (occurrences[e] != 3) {
            fail("element '" + inst.universe[e] + "' occurs in " + std::to_string(occurrences[e]) +
                 " sets, expected 3");
        }
    }
}

std::optional<std::vector<std::size_t>> x3c_oracle(const X3cInstance& inst) {
    validate(inst);
    if (inst.kappa > kMaxX3cOracleKappa) {
        fail("x3c oracle accepts kappa <= " + std::to_string(kMaxX3cOracleKappa));
    }
    const std::size_t n = 3 * inst.kappa;
    std::vector<std::uint32_t> masks;
    for (const auto& set : inst.sets) masks.push_back((1U << set[0]) | (1U << set[1]) | (1U << set[2]));
    const std::uint32_t full = (1U << n) - 1;

    std::vector<std::size_t> pick;
    // depth-first in lexicographic order over increasing index sequences
    auto search = [&](auto&& self, std::size_t from, std::uint32_t covered) -> bool {
        if (pick.size() == inst.kappa) return covered == full;
        for (std::size_t s = from; s < n; ++s) {
            if (covered & masks[s]) continue;
            pick.push_back(s);
            if (self(self, s + 1, covered | masks[s])) return true;
            pick.pop_back();
        }
        return false;
    };
    if (search(search, 0, 0)) return pick;
    return std::nullopt;
}

X3cInstance random_x3c(std::size_t kappa, std::mt19937_64& rng) {
    if (kappa == 0) fail("x3c needs kappa >= 1");
    const std::size_t n = 3 * kappa;
    std::vector<std::size_t> pool;
    for (std::size_t e = 0; e < n; ++e) pool.insert(pool.end(), 3, e);
    while (true) {
        std::shuffle(pool.begin(), pool.end(), rng);
        X3cInstance inst{kappa, default_universe(kappa), {}};
        bool proper = true;
        for (std::size_t s = 0; s < n && proper; ++s) {
            std::array<std::size_t, 3> set{pool[3 * s], pool[3 * s + 1], pool[3 * s + 2]};
            std::sort(set.begin(), set.end());
            proper = set[0] != set[1] && set[1] != set[2];
            inst.sets.push_back(set);
        }
        if (proper) return inst;
    }
}

void validate(const TdsInstance& inst) {
    const std::size_t n = inst.tournament.size();
    if (inst.k == 0) fail("tds needs k >= 1");
    if (!inst.names.empty() && inst.names.size() != n) {
        fail("tds has " + std::to_string(inst.names.size()) + " names for " + std::to_string(n) + " vertices");
    }
    if (inst.non_king.index >= n) fail("tds non_king " + std::to_string(inst.non_king.index) + " is out of range");
    const CandidateSet kings = uncovered_set(inst.tournament);
    if (std::binary_search(kings.begin(), kings.end(), inst.non_king)) {
        fail("tds vertex " + std::to_string(inst.non_king.index) + " is a king");
    }
}

std::size_t tds_padded_size(std::size_t k) { return (k + 1) * (2 * k + 4); }

TdsInstance pad_tds(const TdsInstance& inst) {
    validate(inst);
    const std::size_t n = inst.tournament.size();
    const std::size_t target = std::max(n, tds_padded_size(inst.k));
    std::vector<std::string> names = inst.names.empty() ? default_roster(n) : inst.names;
    if (target == n) return {inst.tournament, inst.k, inst.non_king, names};

    ArcBuilder b(target);
    b.embed(inst.tournament, all_candidates(n));
    CandidateSet originals = all_candidates(n), extra;
    for (std::size_t c = n; c < target; ++c) extra.push_back({c});
    b.require_all(originals, extra);
    std::unordered_set<std::string> taken(names.begin(), names.end());
    for (std::size_t c = n; c < target; ++c) {
        names.push_back(fresh_name("pad" + std::to_string(c - n + 1), taken));
        taken.insert(names.back());
    }
    return {b.finish(), inst.k, inst.non_king, names};
}

bool dominates(const Tournament& t, const CandidateSet& set) {
    for (std::size_t v = 0; v < t.size(); ++v) {
        const CandidateId c{v};
        const bool hit = std::any_of(set.begin(), set.end(), [&](CandidateId d) { return d == c || t.beats(d, c); });
        if (!hit) return false;
    }
    return true;
}

std::optional<CandidateSet> tds_oracle(const TdsInstance& inst) {
    const std::size_t n = inst.tournament.size();
    if (choose_upto(n, inst.k) > kMaxTdsOracleChoices) {
        throw BoundError("dominating-set search over " + std::to_string(n) + " vertices with k = " +
                         std::to_string(inst.k) + " exceeds the bound");
    }
    CandidateSet pick;
    auto search = [&](auto&& self, std::size_t from, std::size_t size) -> bool {
        if (pick.size() == size) return dominates(inst.tournament, pick);
        for (std::size_t v = from; v < n; ++v) {
            pick.push_back({v});
            if (self(self, v + 1, size)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (std::size_t size = 1; size <= std::min(inst.k, n); ++size)
        if (search(search, 0, size)) return pick;
    return std::nullopt;
}

StrategyInstance x3c_to_ccav(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options) {
    validate(inst);
    const std::size_t kappa = inst.kappa, n = 3 * kappa, m = n + 2;
    const CandidateId p{n}, q{n + 1};
    Filler filler(options);

    std::vector<std::string> roster = element_names(inst);
    roster.push_back("p");
    roster.push_back("q");

    const std::size_t per_element = model == WinnerModel::unique ? kappa - 1 : kappa;
    std::vector<Tournament> registered;
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t r = 0; r < per_element; ++r) registered.push_back(source_vote(m, {e}, filler));
    registered.push_back(source_vote(m, p, filler));

    const Tournament block = cyclic_regular(5);
    std::vector<Tournament> unregistered;
    std::vector<CandidateSet> blocks;
    for (const auto& set : inst.sets) {
        const CandidateSet members{{set[0]}, {set[1]}, {set[2]}, p, q};
        ArcBuilder b(m);
        b.embed(block, members);
        b.require_all(members, others(m, members));
        unregistered.push_back(filler.finish(b, m));
        blocks.push_back(sorted(members));
    }

    StrategyInstance out{Problem::ccav, SolutionRule::top_cycle, model,
                         Election(roster, registered), p, kappa, unregistered, {}};

    for (SolutionRule rule : kAllRules) {
        for (std::size_t j = 0; j < unregistered.size(); ++j) {
            ensure(apply(rule, unregistered[j]) == blocks[j],
                   std::string(to_string(rule)) + " of unregistered vote " + std::to_string(j) + " is not its block");
        }
        const ElectionEvaluation eval(out.election, rule);
        for (std::size_t e = 0; e < n; ++e)
            ensure(eval.score({e}) == per_element, "element score under " + std::string(to_string(rule)));
        ensure(eval.score(p) == 1 && eval.score(q) == 0, "p/q scores under " + std::string(to_string(rule)));
    }
    return out;
}

StrategyInstance x3c_to_ccdv(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options) {
    validate(inst);
    const std::size_t kappa = inst.kappa, n = 3 * kappa, m = n + 1;
    const CandidateId p{n};
    Filler filler(options);

    std::vector<std::string> roster = element_names(inst);
    roster.push_back("p");

    const Tournament triangle = cyclic_regular(3);
    std::vector<Tournament> votes;
    std::vector<CandidateSet> cycles;
    for (const auto& set : inst.sets) {
        const CandidateSet members{{set[0]}, {set[1]}, {set[2]}};
        ArcBuilder b(m);
        b.embed(triangle, members);
        b.require_all(members, others(m, members));
        votes.push_back(filler.finish(b, m));
        cycles.push_back(sorted(members));
    }
    const std::size_t p_votes = model == WinnerModel::unique ? 3 : 2;
    for (std::size_t r = 0; r < p_votes; ++r) votes.push_back(source_vote(m, p, filler));

    StrategyInstance out{Problem::ccdv, SolutionRule::top_cycle, model, Election(roster, votes), p, kappa, {}, {}};

    for (SolutionRule rule : kAllRules) {
        for (std::size_t j = 0; j < n; ++j) {
            ensure(apply(rule, votes[j]) == cycles[j],
                   std::string(to_string(rule)) + " of set vote " + std::to_string(j) + " is not its cycle");
        }
        const ElectionEvaluation eval(out.election, rule);
        for (std::size_t e = 0; e < n; ++e) ensure(eval.score({e}) == 3, "element score 3");
        ensure(eval.score(p) == p_votes, "p score");
    }
    return out;
}

StrategyInstance x3c_to_cbra_co(const X3cInstance& inst, WinnerModel model, const ReductionOptions& options) {
    validate(inst);
    const std::size_t k = inst.kappa, n = 3 * k, m = 6 * k + 1;
    if (k < 4 && !options.relaxed) {
        fail("cbra gadget assumes kappa >= 4, got " + std::to_string(k) + " (use the relaxed mode for validation)");
    }
    const CandidateId p{2 * n};
    Filler filler(options);

    std::vector<std::string> roster = element_names(inst);
    for (std::size_t s = 1; s <= n; ++s) roster.push_back("s" + std::to_string(s));
    roster.push_back("p");

    std::vector<Tournament> votes;
    for (std::size_t s = 0; s < n; ++s) {
        const auto& set = inst.sets[s];
        const CandidateId a_s{n + s};
        const CandidateSet triple{{set[0]}, {set[1]}, {set[2]}};
        CandidateSet core = triple;
        core.push_back(a_s);
        const CandidateSet rest = others(m, core);
        CandidateSet escapes;
        for (CandidateId c : rest)
            if (c != p && escapes.size() < 2) escapes.push_back(c);

        ArcBuilder b(m);
        b.embed(cyclic_regular(3), triple);
        b.require_all({a_s}, triple);
        b.require_all(triple, rest);
        for (CandidateId c : rest) {
            if (std::find(escapes.begin(), escapes.end(), c) != escapes.end()) {
                b.require(c, a_s);
            } else {
                b.require(a_s, c);
            }
        }
        b.embed(regular_tournament(rest.size()), rest);
        Tournament vote = filler.finish(b, m);

        const std::size_t top = 6 * k - 2, bound = (6 * k - 3 + 1) / 2 + 2;
        for (CandidateId c : core) ensure(vote.outdegree(c) == top, "A-vote Copeland score 6k-2");
        for (CandidateId c : rest) ensure(vote.outdegree(c) <= bound, "A-vote outsider Copeland score");
        ensure(copeland_set(vote) == sorted(core), "A-vote Copeland set");
        votes.push_back(std::move(vote));
    }

    auto source_over_regular = [&](CandidateId top) {
        const CandidateSet rest = others(m, {top});
        ArcBuilder b(m);
        b.require_all({top}, rest);
        b.embed(regular_tournament(rest.size()), rest);
        Tournament vote = filler.finish(b, m);
        ensure(source(vote) == top, "B/C-vote source");
        ensure(near_regular(vote, rest), "B/C-vote remainder regularity");
        return vote;
    };
    const std::size_t b_votes = model == WinnerModel::unique ? k + 3 : k + 2;
    for (std::size_t r = 0; r < b_votes; ++r) votes.push_back(source_over_regular(p));
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t r = 0; r < k; ++r) votes.push_back(source_over_regular({e}));

    StrategyInstance out{Problem::cbra, SolutionRule::copeland, model, Election(roster, votes), p, k, {}, {}};

    const ElectionEvaluation eval(out.election, SolutionRule::copeland);
    ensure(eval.score(p) == b_votes, "p score");
    for (std::size_t e = 0; e < n; ++e) ensure(eval.score({e}) == k + 3, "element score k+3");
    for (std::size_t s = 0; s < n; ++s) ensure(eval.score({n + s}) == 1, "set candidate score 1");
    return out;
}

StrategyInstance tds_to_dbra_uc(const TdsInstance& inst, WinnerModel model, const ReductionOptions& options) {
    const TdsInstance padded = pad_tds(inst);
    const std::size_t k = padded.k, nv = padded.tournament.size(), m = nv + 1;
    const std::size_t blocks = 2 * k + 3, width = k + 1;
    if (width < 3 && !options.relaxed) {
        fail("dbra gadget blocks of size " + std::to_string(width) +
             " always contain a source; k >= 2 is required (use the relaxed mode for k = 1)");
    }
    const CandidateId p = padded.non_king, q{nv};
    Filler filler(options);

    std::vector<std::string> roster = padded.names;
    roster.push_back(fresh_name("q", {roster.begin(), roster.end()}));

    // Partition A into blocks A_0 .. A_{2k+2}; f_i maps position j of A_i to position j of A_{i+1}.
    const Tournament block = width >= 3 ? regular_tournament(width) : transitive(width);
    const bool block_has_source = source(block).has_value();
    std::vector<CandidateSet> parts(blocks);
    std::vector<bool> used(nv, false);
    used[p.index] = true;
    if (block_has_source) {
        // the image of a block source becomes an extra king in the previous vote; keep it off the first vote's kings
        const CandidateSet kings = uncovered_set(padded.tournament);
        CandidateSet spare;
        for (std::size_t v = 0; v < nv; ++v)
            if (v != p.index && !std::binary_search(kings.begin(), kings.end(), CandidateId{v})) spare.push_back({v});
        if (spare.size() < blocks) {
            fail("relaxed dbra gadget needs " + std::to_string(blocks) + " non-kings besides p, found " +
                 std::to_string(spare.size()));
        }
        for (std::size_t i = 0; i < blocks; ++i) {
            parts[i].push_back(spare[i]);
            used[spare[i].index] = true;
        }
    }
    std::size_t next = 0;
    for (auto& part : parts) {
        while (part.size() < width) {
            while (used[next]) ++next;
            part.push_back({next});
            used[next] = true;
        }
    }

    std::vector<Tournament> votes;
    {
        ArcBuilder b(m);
        b.embed(padded.tournament, all_candidates(nv));
        b.require_all(all_candidates(nv), {q});
        votes.push_back(b.finish());
    }
    const std::size_t q_votes = model == WinnerModel::unique ? blocks - 1 : blocks;
    for (std::size_t r = 0; r < q_votes; ++r) votes.push_back(source_vote(m, q, filler));

    for (std::size_t i = 0; i < blocks; ++i) {
        const CandidateSet& a_i = parts[i];
        const CandidateSet& a_next = parts[(i + 1) % blocks];
        CandidateSet pair_blocks = a_i;
        pair_blocks.insert(pair_blocks.end(), a_next.begin(), a_next.end());

        ArcBuilder b(m);
        b.require_all({p}, others(m, a_i));
        for (std::size_t x = 0; x < width; ++x)
            for (std::size_t y = 0; y < width; ++y) {
                if (x == y) {
                    b.require(a_next[y], a_i[x]);
                } else {
                    b.require(a_i[x], a_next[y]);
                }
            }
        b.require_all(a_i, others(m, pair_blocks));
        b.require_all(others(m, {q}), {q});
        b.embed(block, a_i);
        b.embed(block, a_next);
        Tournament vote = filler.finish(b, m);

        CandidateSet expected = a_i;
        expected.push_back(p);
        if (block_has_source) expected.push_back(a_next[source(block)->index]);
        ensure(uncovered_set(vote) == sorted(expected), "H_" + std::to_string(i) + " uncovered set");
        votes.push_back(std::move(vote));
    }

    StrategyInstance out{Problem::dbra, SolutionRule::uncovered, model, Election(roster, votes), p, k, {}, {}};

    ensure(uncovered_set(votes[1]) == CandidateSet{q}, "q-vote uncovered set");
    const ElectionEvaluation eval(out.election, SolutionRule::uncovered);
    ensure(eval.score(p) == blocks, "p score 2k+3");
    ensure(eval.score(q) == q_votes, "q score");
    for (std::size_t c = 0; c < nv; ++c)
        if (c != p.index) ensure(eval.score({c}) <= 2, "rival score at most 2");
    return out;
}

StrategyAction ccav_cover_action(const std::vector<std::size_t>& cover) {
    StrategyAction action;
    action.added_votes = cover;
    return action;
}

StrategyAction ccdv_cover_action(const std::vector<std::size_t>& cover) {
    StrategyAction action;
    action.deleted_votes = cover;
    return action;
}

StrategyAction cbra_cover_action(const StrategyInstance& gadget, const X3cInstance& inst,
                                 const std::vector<std::size_t>& cover) {
    const std::size_t n = 3 * inst.kappa;
    StrategyAction action;
    for (std::size_t s : cover) {
        const CandidateId a_s{n + s};
        const CandidateSet above = gadget.election.vote(s).in_neighbors(a_s);
        if (above.empty()) fail("set vote " + std::to_string(s) + " has no candidate beating its set candidate");
        action.reversals.push_back({s, above.front(), a_s});
    }
    return action;
}

StrategyAction dbra_dominating_action(const StrategyInstance& gadget, const CandidateSet& dominating) {
    const CandidateId q{gadget.election.candidate_count() - 1};
    StrategyAction action;
    for (CandidateId v : dominating) action.reversals.push_back({0, v, q});
    return action;
}

}  // namespace tsapproval
