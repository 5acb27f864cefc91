#ifndef TSAPPROVAL_FORMAT_HPP
#define TSAPPROVAL_FORMAT_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tsapproval/properties.hpp"
#include "tsapproval/reductions.hpp"
#include "tsapproval/strategy.hpp"

namespace tsapproval {

/// Malformed input text; line and column are 1-based (column 0 when the whole line is at fault).
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

   private:
    std::size_t line_;
    std::size_t column_;
};

/**
 * @brief parses an election file
 *
 * Lines starting with '#' and blank lines are ignored. Header
 * `election <m> <n>`, then m names, then n blocks of m rows of m characters
 * from {0,1}; row i, column j is 1 iff candidate i beats j.
 */
Election parse_election(std::string_view text);
std::string print_election(const Election& e);

/// Header `x3c <kappa>`, then 3*kappa lines of three element tokens.
X3cInstance parse_x3c(std::string_view text);
std::string print_x3c(const X3cInstance& inst);

/// Header `tds <k> <non_king>`, then the names line and m rows.
TdsInstance parse_tds(std::string_view text);
std::string print_tds(const TdsInstance& inst);

/**
 * @brief parses a control or bribery instance file
 *
 * `instance <problem> <rule> <model> <distinguished> <budget>`, an optional
 * `spoilers <names...>` line, an election block, and for vote-adding
 * problems `unregistered <count>` followed by that many blocks of rows.
 */
StrategyInstance parse_instance(std::string_view text);
std::string print_instance(const StrategyInstance& inst);

/// Strategy witness: `action` header and one line per entry; candidates by name.
StrategyAction parse_action(std::string_view text, const StrategyInstance& inst);
std::string print_action(const StrategyAction& action, const StrategyInstance& inst);

/// `ts-witness <rule> <criterion> <candidate> <seed>` and a two-vote election (before, after).
TsCounterexample parse_ts_witness(std::string_view text);
std::string print_ts_witness(const TsCounterexample& w);

/// `vc-witness <rule> <criterion> <candidate> <other|-> <seed>`, optional `relabel`, then one or two elections.
VcCounterexample parse_vc_witness(std::string_view text);
std::string print_vc_witness(const VcCounterexample& w);

/// Leading keyword of the first content line ("action", "ts-witness", ...), empty if none.
std::string first_keyword(std::string_view text);

/// One command run; `result` holds ordered key/value payload entries.
struct RunReport {
    std::string command;
    std::string rule;
    std::string model;
    std::vector<std::pair<std::string, std::string>> result;
    double seconds = 0.0;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// `key=value` lines; backslash, newline and carriage return in values are escaped.
std::string print_report(const RunReport& report);
RunReport parse_report(std::string_view text);

}  // namespace tsapproval

#endif  // TSAPPROVAL_FORMAT_HPP
