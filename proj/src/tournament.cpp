#include "tsapproval/tournament.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace tsapproval {

namespace {

std::string pair_text(std::size_t a, std::size_t b) {
    std::ostringstream os;
    os << "(" << a << "," << b << ")";
    return os.str();
}

}  // namespace

Tournament::Tournament() : Tournament(1) {}

Tournament::Tournament(std::size_t m) : m_(m), words_((m + 63) / 64), bits_(m * ((m + 63) / 64), 0) {
    if (m == 0) throw ConstructionError("tournament needs at least one candidate");
    if (m > kMaxCandidates) throw ConstructionError("tournament exceeds the candidate limit");
}

void Tournament::set_arc(std::size_t from, std::size_t to) {
    bits_[from * words_ + to / 64] |= std::uint64_t{1} << (to % 64);
    bits_[to * words_ + from / 64] &= ~(std::uint64_t{1} << (from % 64));
}

void Tournament::check_id(CandidateId c) const {
    if (c.index >= m_) {
        throw ConstructionError("candidate index " + std::to_string(c.index) + " out of range for " +
                                std::to_string(m_) + " candidates");
    }
}

Tournament Tournament::build(std::size_t m, std::span<const Arc> arcs) {
    Tournament t(m);
    std::vector<std::uint8_t> seen(m * m, 0);
    for (const Arc& arc : arcs) {
        const std::size_t a = arc.from.index;
        const std::size_t b = arc.to.index;
        if (a >= m || b >= m) throw ConstructionError("arc " + pair_text(a, b) + " names an unknown candidate");
        if (a == b) throw ConstructionError("self-loop at candidate " + std::to_string(a));
        const std::size_t lo = std::min(a, b);
        const std::size_t hi = std::max(a, b);
        auto& mark = seen[lo * m + hi];
        if (mark != 0) {
            const bool same = (mark == 1) == (a < b);
            throw ConstructionError((same ? "duplicated pair " : "both orientations given for pair ") +
                                    pair_text(lo, hi));
        }
        mark = a < b ? 1 : 2;
        t.set_arc(a, b);
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (seen[i * m + j] == 0) throw ConstructionError("missing pair " + pair_text(i, j));
        }
    }
    return t;
}

Tournament Tournament::from_matrix(const std::vector<std::vector<bool>>& beats) {
    const std::size_t m = beats.size();
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < m; ++i) {
        if (beats[i].size() != m) throw ConstructionError("matrix row " + std::to_string(i) + " has wrong length");
        if (beats[i][i]) throw ConstructionError("self-loop at candidate " + std::to_string(i));
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (beats[i][j] == beats[j][i]) {
                throw ConstructionError((beats[i][j] ? "both orientations given for pair " : "missing pair ") +
                                        pair_text(i, j));
            }
            arcs.push_back(beats[i][j] ? Arc{{i}, {j}} : Arc{{j}, {i}});
        }
    }
    return build(m, arcs);
}

Tournament Tournament::from_code(std::size_t m, std::uint64_t code) {
    if (pair_count(m) > 64) throw ConstructionError("tournament code needs at most 11 candidates");
    Tournament t(m);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j, ++bit) {
            if ((code >> bit) & 1U) {
                t.set_arc(j, i);
            } else {
                t.set_arc(i, j);
            }
        }
    }
    return t;
}

std::uint64_t Tournament::code() const {
    if (pair_count(m_) > 64) throw ConstructionError("tournament code needs at most 11 candidates");
    std::uint64_t code = 0;
    std::size_t bit = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j, ++bit) {
            if (beats({j}, {i})) code |= std::uint64_t{1} << bit;
        }
    }
    return code;
}

bool Tournament::beats(CandidateId a, CandidateId b) const {
    check_id(a);
    check_id(b);
    return (bits_[a.index * words_ + b.index / 64] >> (b.index % 64)) & 1U;
}

CandidateSet Tournament::out_neighbors(CandidateId c) const {
    check_id(c);
    CandidateSet out;
    for (std::size_t j = 0; j < m_; ++j) {
        if (beats(c, {j})) out.push_back({j});
    }
    return out;
}

CandidateSet Tournament::in_neighbors(CandidateId c) const {
    check_id(c);
    CandidateSet in;
    for (std::size_t j = 0; j < m_; ++j) {
        if (j != c.index && !beats(c, {j})) in.push_back({j});
    }
    return in;
}

std::size_t Tournament::outdegree(CandidateId c) const {
    std::size_t total = 0;
    for (std::uint64_t w : row(c)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t Tournament::indegree(CandidateId c) const { return m_ - 1 - outdegree(c); }

Tournament Tournament::reverse_arc(CandidateId a, CandidateId b) const {
    check_id(a);
    check_id(b);
    if (a == b) throw ConstructionError("cannot reverse a self-pair at candidate " + std::to_string(a.index));
    Tournament t = *this;
    if (beats(a, b)) {
        t.set_arc(b.index, a.index);
    } else {
        t.set_arc(a.index, b.index);
    }
    return t;
}

std::span<const std::uint64_t> Tournament::row(CandidateId c) const {
    check_id(c);
    return {bits_.data() + c.index * words_, words_};
}

std::uint64_t Tournament::row_mask(CandidateId c) const {
    check_id(c);
    return bits_[c.index * words_];
}

std::vector<Arc> Tournament::arcs() const {
    std::vector<Arc> out;
    out.reserve(pair_count(m_));
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) {
            out.push_back(beats({i}, {j}) ? Arc{{i}, {j}} : Arc{{j}, {i}});
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> pair_at(std::size_t m, std::size_t index) {
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t row_len = m - i - 1;
        if (index < row_len) return {i, i + 1 + index};
        index -= row_len;
    }
    throw ConstructionError("pair index out of range");
}

InducedTournament induced(const Tournament& t, const CandidateSet& keep) {
    CandidateSet ids = keep;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) throw ConstructionError("induced subtournament needs a nonempty candidate set");
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            arcs.push_back(t.beats(ids[i], ids[j]) ? Arc{{i}, {j}} : Arc{{j}, {i}});
        }
    }
    return {Tournament::build(ids.size(), arcs), ids};
}

std::optional<CandidateId> source(const Tournament& t) {
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (t.outdegree({c}) == t.size() - 1) return CandidateId{c};
    }
    return std::nullopt;
}

// In a tournament, the first i candidates by nonincreasing score form a
// dominant set exactly when their scores sum to C(i,2) + i(m-i).
Condensation condense(const Tournament& t) {
    const std::size_t m = t.size();
    std::vector<std::size_t> score(m);
    for (std::size_t c = 0; c < m; ++c) score[c] = t.outdegree({c});
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

    Condensation result;
    CandidateSet current;
    std::size_t prefix = 0;
    for (std::size_t i = 0; i < m; ++i) {
        prefix += score[order[i]];
        current.push_back({order[i]});
        const std::size_t taken = i + 1;
        if (prefix == taken * (taken - 1) / 2 + taken * (m - taken)) {
            std::sort(current.begin(), current.end());
            result.components.push_back(std::move(current));
            current.clear();
        }
    }
    return result;
}

bool is_regular(const Tournament& t) {
    for (std::size_t c = 0; c < t.size(); ++c) {
        const auto out = static_cast<long long>(t.outdegree({c}));
        const auto in = static_cast<long long>(t.indegree({c}));
        if (out - in > 1 || in - out > 1) return false;
    }
    return true;
}

Tournament cyclic_regular(std::size_t m) {
    if (m == 0 || m % 2 == 0) {
        throw ConstructionError("cyclic regular tournament needs an odd candidate count, got " + std::to_string(m));
    }
    std::vector<Arc> arcs;
    const std::size_t half = (m - 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t step = 1; step <= half; ++step) arcs.push_back({{i}, {(i + step) % m}});
    }
    return Tournament::build(m, arcs);
}

Tournament regular_tournament(std::size_t m) {
    if (m % 2 == 1) return cyclic_regular(m);
    if (m == 0) throw ConstructionError("regular tournament needs at least one candidate");
    const Tournament odd = cyclic_regular(m - 1);
    std::vector<Arc> arcs = odd.arcs();
    const CandidateId extra{m - 1};
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (i % 2 == 0) {
            arcs.push_back({extra, {i}});
        } else {
            arcs.push_back({{i}, extra});
        }
    }
    return Tournament::build(m, arcs);
}

Tournament transitive(const std::vector<CandidateId>& order) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) arcs.push_back({order[i], order[j]});
    }
    return Tournament::build(order.size(), arcs);
}

Tournament transitive(std::size_t m) { return Tournament::from_code(m, 0); }

Tournament permute(const Tournament& t, const std::vector<CandidateId>& perm) {
    if (perm.size() != t.size()) throw ConstructionError("permutation size does not match tournament");
    std::vector<Arc> arcs;
    for (const Arc& arc : t.arcs()) arcs.push_back({perm[arc.from.index], perm[arc.to.index]});
    return Tournament::build(t.size(), arcs);
}

ArcBuilder::ArcBuilder(std::size_t m) : m_(m), state_(m * m, 0) {
    if (m == 0) throw ConstructionError("tournament needs at least one candidate");
}

ArcBuilder& ArcBuilder::require(CandidateId from, CandidateId to) {
    if (from.index >= m_ || to.index >= m_) throw ConstructionError("arc names an unknown candidate");
    if (from == to) throw ConstructionError("self-loop at candidate " + std::to_string(from.index));
    const std::size_t lo = std::min(from.index, to.index);
    const std::size_t hi = std::max(from.index, to.index);
    const std::uint8_t want = from.index < to.index ? 1 : 2;
    auto& cell = state_[lo * m_ + hi];
    if (cell != 0 && cell != want) {
        throw ConstructionError("conflicting constraints on pair " + pair_text(lo, hi));
    }
    cell = want;
    return *this;
}

ArcBuilder& ArcBuilder::require_all(const CandidateSet& from, const CandidateSet& to) {
    for (CandidateId a : from) {
        for (CandidateId b : to) {
            if (a != b) require(a, b);
        }
    }
    return *this;
}

ArcBuilder& ArcBuilder::embed(const Tournament& block, const std::vector<CandidateId>& members) {
    if (members.size() != block.size()) throw ConstructionError("embedded block size mismatch");
    for (const Arc& arc : block.arcs()) require(members[arc.from.index], members[arc.to.index]);
    return *this;
}

bool ArcBuilder::is_set(CandidateId a, CandidateId b) const {
    const std::size_t lo = std::min(a.index, b.index);
    const std::size_t hi = std::max(a.index, b.index);
    return state_[lo * m_ + hi] != 0;
}

Tournament ArcBuilder::finish() const {
    std::vector<Arc> arcs;
    arcs.reserve(pair_count(m_));
    for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = i + 1; j < m_; ++j) {
            arcs.push_back(state_[i * m_ + j] == 2 ? Arc{{j}, {i}} : Arc{{i}, {j}});
        }
    }
    return Tournament::build(m_, arcs);
}

CandidateSet all_candidates(std::size_t m) {
    CandidateSet all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = {i};
    return all;
}

std::string describe(const Tournament& t) {
    std::ostringstream os;
    bool first = true;
    for (const Arc& arc : t.arcs()) {
        if (!first) os << ' ';
        first = false;
        os << arc.from.index << '>' << arc.to.index;
    }
    return os.str();
}

}  // namespace tsapproval
