#include "tsapproval/format.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace tsapproval {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + (column ? ", column " + std::to_string(column) : "") + ": " +
                         what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;
};

struct Line {
    std::size_t number = 0;
    std::string text;
    std::vector<Token> tokens;
};

std::vector<Token> split(const std::string& text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
        if (i == text.size()) break;
        const std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
        out.push_back({text.substr(start, i - start), start + 1});
    }
    return out;
}

class Reader {
   public:
    explicit Reader(std::string_view text) {
        std::size_t number = 0, start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            ++number;
            std::string raw(text.substr(start, end - start));
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            auto tokens = split(raw);
            if (!tokens.empty() && tokens.front().text[0] != '#') lines_.push_back({number, raw, std::move(tokens)});
            last_ = number;
            start = end + 1;
        }
    }

    [[nodiscard]] bool done() const { return pos_ == lines_.size(); }
    [[nodiscard]] const Line* peek() const { return done() ? nullptr : &lines_[pos_]; }

    const Line& next(const std::string& expected) {
        if (done()) throw ParseError(last_, 0, "unexpected end of input, expected " + expected);
        return lines_[pos_++];
    }

    void finish() const {
        if (!done()) throw ParseError(lines_[pos_].number, 1, "unexpected content '" + lines_[pos_].text + "'");
    }

   private:
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    std::size_t last_ = 0;
};

std::size_t number(const Line& line, const Token& tok, const std::string& what) {
    std::size_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line.number, tok.column, what + " must be a non-negative integer, got '" + tok.text + "'");
    }
    return value;
}

std::uint64_t number64(const Line& line, const Token& tok, const std::string& what) {
    std::uint64_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(line.number, tok.column, what + " must be a non-negative integer, got '" + tok.text + "'");
    }
    return value;
}

void expect_keyword(const Line& line, const std::string& keyword, std::size_t arity) {
    if (line.tokens.front().text != keyword) {
        throw ParseError(line.number, 1, "expected '" + keyword + "', got '" + line.tokens.front().text + "'");
    }
    if (line.tokens.size() != arity + 1) {
        throw ParseError(line.number, 0,
                         "'" + keyword + "' takes " + std::to_string(arity) + " fields, got " +
                             std::to_string(line.tokens.size() - 1));
    }
}

CandidateId lookup(const std::vector<std::string>& names, const Line& line, const Token& tok) {
    const auto it = std::find(names.begin(), names.end(), tok.text);
    if (it == names.end()) throw ParseError(line.number, tok.column, "unknown candidate '" + tok.text + "'");
    return {static_cast<std::size_t>(it - names.begin())};
}

std::vector<std::string> read_names(Reader& in, std::size_t m) {
    const Line& line = in.next("candidate names");
    if (line.tokens.size() != m) {
        throw ParseError(line.number, 0,
                         "roster has " + std::to_string(line.tokens.size()) + " names, header says " +
                             std::to_string(m));
    }
    std::vector<std::string> names;
    for (const auto& tok : line.tokens) {
        try {
            check_candidate_name(tok.text);
        } catch (const ElectionError& e) {
            throw ParseError(line.number, tok.column, e.what());
        }
        if (std::find(names.begin(), names.end(), tok.text) != names.end()) {
            throw ParseError(line.number, tok.column, "duplicate candidate name '" + tok.text + "'");
        }
        names.push_back(tok.text);
    }
    return names;
}

Tournament read_block(Reader& in, std::size_t m) {
    std::vector<std::vector<bool>> beats(m, std::vector<bool>(m, false));
    std::vector<std::size_t> rows(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Line& line = in.next("matrix row " + std::to_string(i + 1));
        rows[i] = line.number;
        if (line.tokens.size() != 1 || line.tokens[0].text.size() != m) {
            throw ParseError(line.number, 0, "matrix row must be " + std::to_string(m) + " characters from {0,1}");
        }
        const Token& tok = line.tokens[0];
        for (std::size_t j = 0; j < m; ++j) {
            const char ch = tok.text[j];
            if (ch != '0' && ch != '1') {
                throw ParseError(line.number, tok.column + j, std::string("unexpected character '") + ch + "'");
            }
            beats[i][j] = ch == '1';
        }
        const std::size_t column = tok.column;
        if (beats[i][i]) throw ParseError(line.number, column + i, "diagonal entry must be '0'");
        for (std::size_t j = 0; j < i; ++j) {
            if (beats[i][j] == beats[j][i]) {
                throw ParseError(line.number, column + j,
                                 std::string(beats[i][j] ? "both" : "neither") + " orientation of pair (" +
                                     std::to_string(j + 1) + "," + std::to_string(i + 1) + ") is set");
            }
        }
    }
    return Tournament::from_matrix(beats);
}

Election read_election(Reader& in) {
    const Line& header = in.next("'election <m> <n>' header");
    expect_keyword(header, "election", 2);
    const std::size_t m = number(header, header.tokens[1], "candidate count");
    const std::size_t n = number(header, header.tokens[2], "vote count");
    if (m == 0) throw ParseError(header.number, header.tokens[1].column, "election needs at least one candidate");
    if (n == 0) throw ParseError(header.number, header.tokens[2].column, "election needs at least one vote");
    std::vector<std::string> names = read_names(in, m);
    std::vector<Tournament> votes;
    for (std::size_t v = 0; v < n; ++v) votes.push_back(read_block(in, m));
    return Election(std::move(names), std::move(votes));
}

void write_block(std::ostringstream& out, const Tournament& t) {
    for (std::size_t i = 0; i < t.size(); ++i) {
        for (std::size_t j = 0; j < t.size(); ++j) out << (i != j && t.beats({i}, {j}) ? '1' : '0');
        out << '\n';
    }
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

template <class Parse>
auto parse_tag(const Line& line, const Token& tok, const std::string& what, Parse parse) {
    const auto value = parse(tok.text);
    if (!value) throw ParseError(line.number, tok.column, "unknown " + what + " '" + tok.text + "'");
    return *value;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            out += "\\r";
        } else {
            out += c;
        }
    }
    return out;
}

std::string unescape(const std::string& s, std::size_t line) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\') {
            out += s[i];
            continue;
        }
        if (++i == s.size()) throw ParseError(line, i, "dangling escape");
        if (s[i] == 'n') {
            out += '\n';
        } else if (s[i] == 'r') {
            out += '\r';
        } else if (s[i] == '\\') {
            out += '\\';
        } else {
            throw ParseError(line, i, std::string("unknown escape '\\") + s[i] + "'");
        }
    }
    return out;
}

}  // namespace

Election parse_election(std::string_view text) {
    Reader in(text);
    Election e = read_election(in);
    in.finish();
    return e;
}

std::string print_election(const Election& e) {
    std::ostringstream out;
    out << "election " << e.candidate_count() << ' ' << e.vote_count() << '\n' << join(e.roster()) << '\n';
    for (const auto& v : e.votes()) write_block(out, v);
    return out.str();
}

X3cInstance parse_x3c(std::string_view text) {
    Reader in(text);
    const Line& header = in.next("'x3c <kappa>' header");
    expect_keyword(header, "x3c", 1);
    const std::size_t kappa = number(header, header.tokens[1], "kappa");
    if (kappa == 0) throw ParseError(header.number, header.tokens[1].column, "kappa must be at least 1");

    std::vector<std::array<std::string, 3>> raw;
    for (std::size_t s = 0; s < 3 * kappa; ++s) {
        const Line& line = in.next("set line " + std::to_string(s + 1));
        if (line.tokens.size() != 3) throw ParseError(line.number, 0, "a set line holds exactly three elements");
        raw.push_back({line.tokens[0].text, line.tokens[1].text, line.tokens[2].text});
    }
    in.finish();

    std::vector<std::string> universe;
    for (const auto& set : raw)
        for (const auto& e : set)
            if (std::find(universe.begin(), universe.end(), e) == universe.end()) universe.push_back(e);
    if (std::all_of(universe.begin(), universe.end(), all_digits)) {
        std::sort(universe.begin(), universe.end(), [](const std::string& a, const std::string& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
    } else {
        std::sort(universe.begin(), universe.end());
    }

    X3cInstance inst{kappa, universe, {}};
    for (const auto& set : raw) {
        std::array<std::size_t, 3> ids{};
        for (std::size_t i = 0; i < 3; ++i)
            ids[i] = static_cast<std::size_t>(std::find(universe.begin(), universe.end(), set[i]) - universe.begin());
        inst.sets.push_back(ids);
    }
    try {
        validate(inst);
    } catch (const ReductionError& e) {
        throw ParseError(header.number, 0, e.what());
    }
    return inst;
}

std::string print_x3c(const X3cInstance& inst) {
    std::ostringstream out;
    out << "x3c " << inst.kappa << '\n';
    for (const auto& set : inst.sets)
        out << inst.universe[set[0]] << ' ' << inst.universe[set[1]] << ' ' << inst.universe[set[2]] << '\n';
    return out.str();
}

TdsInstance parse_tds(std::string_view text) {
    Reader in(text);
    const Line& header = in.next("'tds <k> <non_king>' header");
    expect_keyword(header, "tds", 2);
    const std::size_t k = number(header, header.tokens[1], "k");
    const Line* names_line = in.peek();
    if (!names_line) throw ParseError(header.number, 0, "missing vertex names");
    std::vector<std::string> names = read_names(in, names_line->tokens.size());
    TdsInstance inst{read_block(in, names.size()), k, lookup(names, header, header.tokens[2]), names};
    in.finish();
    try {
        validate(inst);
    } catch (const ReductionError& e) {
        throw ParseError(header.number, 0, e.what());
    }
    return inst;
}

std::string print_tds(const TdsInstance& inst) {
    const auto names = inst.names.empty() ? default_roster(inst.tournament.size()) : inst.names;
    std::ostringstream out;
    out << "tds " << inst.k << ' ' << names[inst.non_king.index] << '\n' << join(names) << '\n';
    write_block(out, inst.tournament);
    return out.str();
}

StrategyInstance parse_instance(std::string_view text) {
    Reader in(text);
    const Line& header = in.next("'instance' header");
    expect_keyword(header, "instance", 5);
    const Problem problem = parse_tag(header, header.tokens[1], "problem", parse_problem);
    const SolutionRule rule = parse_tag(header, header.tokens[2], "rule", parse_rule);
    const WinnerModel model = parse_tag(header, header.tokens[3], "model", parse_model);
    const std::size_t budget = number(header, header.tokens[5], "budget");

    std::optional<Line> spoilers;
    if (in.peek() && in.peek()->tokens.front().text == "spoilers") spoilers = in.next("spoilers");
    Election election = read_election(in);
    const auto& roster = election.roster();

    StrategyInstance inst{problem, rule, model, election, lookup(roster, header, header.tokens[4]), budget, {}, {}};
    if (spoilers) {
        for (std::size_t i = 1; i < spoilers->tokens.size(); ++i)
            inst.unregistered_candidates.push_back(lookup(roster, *spoilers, spoilers->tokens[i]));
    }
    if (in.peek() && in.peek()->tokens.front().text == "unregistered") {
        const Line& line = in.next("unregistered");
        expect_keyword(line, "unregistered", 1);
        const std::size_t count = number(line, line.tokens[1], "unregistered vote count");
        for (std::size_t v = 0; v < count; ++v) inst.unregistered_votes.push_back(read_block(in, roster.size()));
    }
    in.finish();
    try {
        validate(inst);
    } catch (const StrategyError& e) {
        throw ParseError(header.number, 0, e.what());
    }
    return inst;
}

std::string print_instance(const StrategyInstance& inst) {
    const auto& roster = inst.election.roster();
    std::ostringstream out;
    out << "instance " << to_string(inst.problem) << ' ' << to_string(inst.rule) << ' ' << to_string(inst.model)
        << ' ' << roster[inst.distinguished.index] << ' ' << inst.budget << '\n';
    if (adds_candidates(inst.problem)) {
        out << "spoilers";
        for (CandidateId c : inst.unregistered_candidates) out << ' ' << roster[c.index];
        out << '\n';
    }
    out << print_election(inst.election);
    if (adds_votes(inst.problem)) {
        out << "unregistered " << inst.unregistered_votes.size() << '\n';
        for (const auto& v : inst.unregistered_votes) write_block(out, v);
    }
    return out.str();
}

StrategyAction parse_action(std::string_view text, const StrategyInstance& inst) {
    Reader in(text);
    const Line& header = in.next("'action' header");
    expect_keyword(header, "action", 0);
    const auto& roster = inst.election.roster();
    StrategyAction action;
    while (!in.done()) {
        const Line& line = in.next("action entry");
        const std::string& key = line.tokens.front().text;
        if (key == "add-votes" || key == "delete-votes") {
            auto& target = key == "add-votes" ? action.added_votes : action.deleted_votes;
            for (std::size_t i = 1; i < line.tokens.size(); ++i)
                target.push_back(number(line, line.tokens[i], "vote index"));
        } else if (key == "add-candidates" || key == "delete-candidates") {
            auto& target = key == "add-candidates" ? action.added_candidates : action.deleted_candidates;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) target.push_back(lookup(roster, line, line.tokens[i]));
        } else if (key == "reverse") {
            expect_keyword(line, "reverse", 3);
            action.reversals.push_back({number(line, line.tokens[1], "vote index"),
                                        lookup(roster, line, line.tokens[2]), lookup(roster, line, line.tokens[3])});
        } else {
            throw ParseError(line.number, 1, "unknown action entry '" + key + "'");
        }
    }
    return action;
}

std::string print_action(const StrategyAction& action, const StrategyInstance& inst) {
    const auto& roster = inst.election.roster();
    std::ostringstream out;
    out << "action\n";
    auto indices = [&](const char* key, const std::vector<std::size_t>& list) {
        if (list.empty()) return;
        out << key;
        for (std::size_t i : list) out << ' ' << i;
        out << '\n';
    };
    auto names = [&](const char* key, const CandidateSet& list) {
        if (list.empty()) return;
        out << key;
        for (CandidateId c : list) out << ' ' << roster[c.index];
        out << '\n';
    };
    indices("add-votes", action.added_votes);
    indices("delete-votes", action.deleted_votes);
    names("add-candidates", action.added_candidates);
    names("delete-candidates", action.deleted_candidates);
    for (const auto& r : action.reversals)
        out << "reverse " << r.vote << ' ' << roster[r.from.index] << ' ' << roster[r.to.index] << '\n';
    return out.str();
}

TsCounterexample parse_ts_witness(std::string_view text) {
    Reader in(text);
    const Line& header = in.next("'ts-witness' header");
    expect_keyword(header, "ts-witness", 4);
    const SolutionRule rule = parse_tag(header, header.tokens[1], "rule", parse_rule);
    const TsCriterion criterion = parse_tag(header, header.tokens[2], "criterion", parse_ts_criterion);
    const std::uint64_t seed = number64(header, header.tokens[4], "seed");
    const Election pair = read_election(in);
    in.finish();
    if (pair.vote_count() != 2) throw ParseError(header.number, 0, "a ts witness holds exactly two tournaments");
    return {rule, criterion, pair.vote(0), pair.vote(1), lookup(pair.roster(), header, header.tokens[3]), seed};
}

std::string print_ts_witness(const TsCounterexample& w) {
    const Election pair(default_roster(w.before.size()), {w.before, w.after});
    std::ostringstream out;
    out << "ts-witness " << to_string(w.rule) << ' ' << to_string(w.criterion) << ' '
        << pair.name_of(w.candidate) << ' ' << w.seed << '\n'
        << print_election(pair);
    return out.str();
}

namespace {

bool has_after(VcCriterion c) { return c != VcCriterion::pareto && c != VcCriterion::majority; }

}  // namespace

VcCounterexample parse_vc_witness(std::string_view text) {
    Reader in(text);
    const Line& header = in.next("'vc-witness' header");
    expect_keyword(header, "vc-witness", 5);
    const SolutionRule rule = parse_tag(header, header.tokens[1], "rule", parse_rule);
    const VcCriterion criterion = parse_tag(header, header.tokens[2], "criterion", parse_vc_criterion);
    const std::uint64_t seed = number64(header, header.tokens[5], "seed");

    std::optional<Line> relabel_line;
    if (in.peek() && in.peek()->tokens.front().text == "relabel") relabel_line = in.next("relabel");
    Election before = read_election(in);
    Election after = has_after(criterion) ? read_election(in) : before;
    in.finish();

    const auto& roster = before.roster();
    std::optional<CandidateId> other;
    if (header.tokens[4].text != "-") other = lookup(roster, header, header.tokens[4]);
    std::vector<CandidateId> relabel;
    if (relabel_line) {
        for (std::size_t i = 1; i < relabel_line->tokens.size(); ++i)
            relabel.push_back(lookup(roster, *relabel_line, relabel_line->tokens[i]));
    }
    return {rule, criterion, before, after, lookup(roster, header, header.tokens[3]), other, relabel, seed};
}

std::string print_vc_witness(const VcCounterexample& w) {
    const auto& roster = w.before.roster();
    std::ostringstream out;
    out << "vc-witness " << to_string(w.rule) << ' ' << to_string(w.criterion) << ' ' << roster[w.candidate.index]
        << ' ' << (w.other ? roster[w.other->index] : "-") << ' ' << w.seed << '\n';
    if (!w.relabel.empty()) {
        out << "relabel";
        for (CandidateId c : w.relabel) out << ' ' << roster[c.index];
        out << '\n';
    }
    out << print_election(w.before);
    if (has_after(w.criterion)) out << print_election(w.after);
    return out.str();
}

std::string first_keyword(std::string_view text) {
    Reader in(text);
    return in.done() ? std::string() : in.peek()->tokens.front().text;
}

std::string print_report(const RunReport& report) {
    std::ostringstream out;
    out << "command=" << escape(report.command) << '\n'
        << "rule=" << escape(report.rule) << '\n'
        << "model=" << escape(report.model) << '\n';
    if (report.seed) out << "seed=" << *report.seed << '\n';
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, report.seconds);
    out << "seconds=" << std::string(buf, res.ptr) << '\n';
    for (const auto& [key, value] : report.result) out << "result." << key << '=' << escape(value) << '\n';
    return out.str();
}

RunReport parse_report(std::string_view text) {
    RunReport report;
    std::size_t number = 0, start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        const std::string line(text.substr(start, end - start));
        start = end + 1;
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(number, 0, "expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = unescape(line.substr(eq + 1), number);
        if (key == "command") {
            report.command = value;
        } else if (key == "rule") {
            report.rule = value;
        } else if (key == "model") {
            report.model = value;
        } else if (key == "seed") {
            std::uint64_t seed = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
            if (ec != std::errc() || ptr != value.data() + value.size()) throw ParseError(number, eq + 2, "bad seed");
            report.seed = seed;
        } else if (key == "seconds") {
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), report.seconds);
            if (ec != std::errc() || ptr != value.data() + value.size()) {
                throw ParseError(number, eq + 2, "bad seconds value");
            }
        } else if (key.rfind("result.", 0) == 0) {
            report.result.emplace_back(key.substr(7), value);
        } else {
            throw ParseError(number, 1, "unknown key '" + key + "'");
        }
    }
    return report;
}

}  // namespace tsapproval
