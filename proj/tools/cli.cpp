#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tsapproval/format.hpp"

namespace tsapproval::cli {

namespace {

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

template <class T, class Parse>
T tag(const std::string& text, const char* what, Parse parse) {
    const auto value = parse(text);
    if (!value) throw UsageError(std::string("unknown ") + what + " '" + text + "'");
    return *value;
}

std::string join_names(const Election& e, const CandidateSet& set) {
    std::string out;
    for (CandidateId c : set) out += (out.empty() ? "" : " ") + e.name_of(c);
    return out;
}

struct Globals {
    bool kv = false;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
};

struct InstanceFlags {
    std::string instance;
    std::string problem;
    std::string rule = "tc";
    std::string model = "unique";
    std::string distinguished;
    std::size_t budget = 1;
    std::string election;
    std::string unregistered;
    std::vector<std::string> spoilers;
    std::string witness_out;
    bool unsafe = false;
    bool no_cross_check = false;
    bool paper = false;
};

StrategyInstance load_instance(const InstanceFlags& f) {
    if (!f.instance.empty()) {
        if (!f.election.empty() || !f.unregistered.empty() || !f.spoilers.empty()) {
            throw UsageError("--instance cannot be combined with --election, --unregistered or --spoilers");
        }
        return parse_instance(read_file(f.instance));
    }
    if (f.problem.empty() || f.election.empty() || f.distinguished.empty()) {
        throw UsageError("need --instance, or --problem, --election and --distinguished");
    }
    const Problem problem = tag<Problem>(f.problem, "problem", parse_problem);
    if (!f.unregistered.empty() && !adds_votes(problem)) {
        throw UsageError("--unregistered applies only to ccav and dcav");
    }
    if (!f.spoilers.empty() && !adds_candidates(problem)) {
        throw UsageError("--spoilers applies only to ccac and dcac");
    }
    Election e = parse_election(read_file(f.election));
    const auto p = e.find(f.distinguished);
    if (!p) throw UsageError("unknown distinguished candidate '" + f.distinguished + "'");
    StrategyInstance inst{problem, tag<SolutionRule>(f.rule, "rule", parse_rule),
                          tag<WinnerModel>(f.model, "model", parse_model), e, *p, f.budget, {}, {}};
    if (!f.unregistered.empty()) {
        const Election extra = parse_election(read_file(f.unregistered));
        if (extra.roster() != e.roster()) throw UsageError("unregistered votes must use the election's roster");
        inst.unregistered_votes.assign(extra.votes().begin(), extra.votes().end());
    }
    for (const auto& name : f.spoilers) {
        const auto c = e.find(name);
        if (!c) throw UsageError("unknown spoiler candidate '" + name + "'");
        inst.unregistered_candidates.push_back(*c);
    }
    validate(inst);
    return inst;
}

int solve_command(const InstanceFlags& f, bool bribery, RunReport& report, std::ostream& out) {
    const StrategyInstance inst = load_instance(f);
    if (is_bribery(inst.problem) != bribery) {
        throw UsageError(std::string(to_string(inst.problem)) + " belongs to the " +
                         (bribery ? "control" : "bribery") + " subcommand");
    }
    if (f.paper && !(inst.problem == Problem::dbra && inst.rule == SolutionRule::top_cycle)) {
        throw UsageError("--paper applies only to dbra with rule tc");
    }
    report.rule = to_string(inst.rule);
    report.model = to_string(inst.model);

    SolverOptions options;
    options.unsafe = f.unsafe;
    options.cross_check = !f.no_cross_check;
    const StrategyOutcome outcome = f.paper ? solve_dbra_tc_paper(inst) : solve(inst, options);

    report.result.emplace_back("problem", std::string(to_string(inst.problem)));
    report.result.emplace_back("feasible", outcome.feasible ? "yes" : "no");
    if (outcome.feasible) {
        const std::string action = outcome.action ? print_action(*outcome.action, inst) : "";
        report.result.emplace_back("cost", std::to_string(outcome.cost));
        report.result.emplace_back("action", action);
        if (!f.witness_out.empty()) write_file(f.witness_out, action);
        out << "feasible cost=" << outcome.cost << '\n' << action;
        return kExitOk;
    }
    out << "infeasible\n";
    return kExitNegative;
}

struct AuditFlags {
    std::string property;
    std::string rule = "tc";
    std::size_t max_candidates = 0;
    std::size_t max_votes = 3;
    std::size_t trials = 1000;
    bool exhaustive = false;
    std::string witness_out;
};

int audit_command(const AuditFlags& f, const Globals& g, RunReport& report, std::ostream& out) {
    const SolutionRule rule = tag<SolutionRule>(f.rule, "rule", parse_rule);
    report.rule = to_string(rule);
    if (!f.exhaustive && !g.seed) throw UsageError("randomized audits need --seed (or pass --exhaustive)");
    std::string witness;

    if (const auto ts = parse_ts_criterion(f.property)) {
        TsAuditConfig config;
        config.max_candidates = f.max_candidates ? f.max_candidates : 5;
        config.exhaustive = f.exhaustive;
        config.trials = f.trials;
        config.seed = g.seed.value_or(0);
        config.jobs = g.jobs;
        const TsAuditReport result = audit_ts(rule, *ts, config);
        report.result.emplace_back("criterion", std::string(to_string(*ts)));
        report.result.emplace_back("lifts_checked", std::to_string(result.lifts_checked));
        report.result.emplace_back("complete", result.complete ? "yes" : "no");
        if (result.witness) witness = print_ts_witness(*result.witness);
    } else if (const auto vc = parse_vc_criterion(f.property)) {
        VcAuditConfig config;
        config.max_candidates = f.max_candidates ? f.max_candidates : 4;
        config.max_votes = f.max_votes;
        config.trials = f.trials;
        config.seed = g.seed.value_or(0);
        config.exhaustive = f.exhaustive;
        const auto result = audit_vc(*vc, rule, config);
        report.result.emplace_back("criterion", std::string(to_string(*vc)));
        if (result) witness = print_vc_witness(*result);
    } else {
        throw UsageError("unknown property '" + f.property + "'");
    }

    report.result.emplace_back("violation", witness.empty() ? "no" : "yes");
    if (witness.empty()) {
        out << "no violation\n";
        return kExitOk;
    }
    report.result.emplace_back("witness", witness);
    if (!f.witness_out.empty()) write_file(f.witness_out, witness);
    out << "violation\n" << witness;
    return kExitNegative;
}

struct ReduceFlags {
    std::string input;
    std::string to;
    std::string model = "unique";
    std::string rule = "tc";
    bool relaxed = false;
    bool check = false;
    std::string out;
};

int reduce_command(const ReduceFlags& f, const Globals& g, RunReport& report, std::ostream& out) {
    const std::string text = read_file(f.input);
    const std::string source = first_keyword(text);
    const Problem target = tag<Problem>(f.to, "target problem", parse_problem);
    const WinnerModel model = tag<WinnerModel>(f.model, "model", parse_model);
    report.model = to_string(model);
    ReductionOptions options;
    options.fill_seed = g.seed;
    options.relaxed = f.relaxed;

    std::optional<bool> source_yes;
    auto build = [&]() -> StrategyInstance {
        if (source == "x3c") {
            const X3cInstance x = parse_x3c(text);
            if (f.check) source_yes = x3c_oracle(x).has_value();
            if (target == Problem::cbra) return x3c_to_cbra_co(x, model, options);
            if (target != Problem::ccav && target != Problem::ccdv) throw UsageError("x3c reduces to ccav, ccdv or cbra");
            StrategyInstance inst =
                target == Problem::ccav ? x3c_to_ccav(x, model, options) : x3c_to_ccdv(x, model, options);
            inst.rule = tag<SolutionRule>(f.rule, "rule", parse_rule);
            return inst;
        }
        if (source == "tds") {
            if (target != Problem::dbra) throw UsageError("tds reduces to dbra");
            const TdsInstance t = parse_tds(text);
            if (f.check) source_yes = tds_oracle(t).has_value();
            return tds_to_dbra_uc(t, model, options);
        }
        throw UsageError("input must start with an 'x3c' or 'tds' header");
    };
    const StrategyInstance inst = build();
    report.rule = to_string(inst.rule);

    const std::string printed = print_instance(inst);
    report.result.emplace_back("candidates", std::to_string(inst.election.candidate_count()));
    report.result.emplace_back("votes", std::to_string(inst.election.vote_count()));
    report.result.emplace_back("instance", printed);
    if (!f.out.empty()) {
        write_file(f.out, printed);
    } else if (!g.kv) {
        out << printed;
    }
    if (!source_yes) return kExitOk;

    const bool target_yes = solve_bruteforce(inst).feasible;
    report.result.emplace_back("source_feasible", *source_yes ? "yes" : "no");
    report.result.emplace_back("target_feasible", target_yes ? "yes" : "no");
    if (!g.kv) {
        out << "source " << (*source_yes ? "feasible" : "infeasible") << ", target "
            << (target_yes ? "feasible" : "infeasible") << '\n';
    }
    return *source_yes == target_yes ? kExitOk : kExitNegative;
}

int verify_command(const std::string& witness_path, const std::string& instance_path, RunReport& report,
                   std::ostream& out) {
    const std::string text = read_file(witness_path);
    const std::string kind = first_keyword(text);
    bool ok = false;
    if (kind == "action") {
        if (instance_path.empty()) throw UsageError("verifying an action needs --instance");
        const StrategyInstance inst = parse_instance(read_file(instance_path));
        report.rule = to_string(inst.rule);
        report.model = to_string(inst.model);
        try {
            ok = replay(inst, parse_action(text, inst));
        } catch (const StrategyError&) {
            ok = false;
        }
    } else if (kind == "ts-witness") {
        const TsCounterexample w = parse_ts_witness(text);
        report.rule = to_string(w.rule);
        ok = violates(w);
    } else if (kind == "vc-witness") {
        const VcCounterexample w = parse_vc_witness(text);
        report.rule = to_string(w.rule);
        ok = violates(w);
    } else {
        throw UsageError("witness must start with 'action', 'ts-witness' or 'vc-witness'");
    }
    report.result.emplace_back("kind", kind);
    report.result.emplace_back("valid", ok ? "yes" : "no");
    out << (ok ? "valid" : "invalid") << '\n';
    return ok ? kExitOk : kExitNegative;
}

void add_instance_flags(CLI::App* sub, InstanceFlags& f) {
    sub->add_option("--instance", f.instance, "instance file");
    sub->add_option("--problem", f.problem, "problem tag");
    sub->add_option("--rule", f.rule, "tc, co or uc");
    sub->add_option("--model", f.model, "unique or nonunique");
    sub->add_option("--distinguished", f.distinguished, "distinguished candidate");
    sub->add_option("--budget", f.budget, "budget k");
    sub->add_option("--election", f.election, "election file");
    sub->add_option("--witness-out", f.witness_out, "write the action here");
    sub->add_flag("--unsafe", f.unsafe, "lift brute-force bounds");
    sub->add_flag("--no-cross-check", f.no_cross_check, "skip brute-force cross-checks of fast paths");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TS-Approval elections, control, bribery, audits and reductions", "tsapproval"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--kv", g.kv, "print a key=value report");
    app.add_option("--seed", g.seed, "seed for randomized work");
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);

    std::string rule = "tc", election_path;
    auto* winners_cmd = app.add_subcommand("winners", "winning set");
    auto* score_cmd = app.add_subcommand("score", "scores of all candidates");
    for (auto* sub : {winners_cmd, score_cmd}) {
        sub->add_option("--rule", rule, "tc, co or uc");
        sub->add_option("--election", election_path, "election file")->required();
    }

    InstanceFlags control_flags, bribery_flags;
    auto* control_cmd = app.add_subcommand("control", "control by adding/deleting votes or candidates");
    add_instance_flags(control_cmd, control_flags);
    control_cmd->add_option("--unregistered", control_flags.unregistered, "election file of unregistered votes");
    control_cmd->add_option("--spoilers", control_flags.spoilers, "unregistered candidates")->delimiter(',');
    auto* bribery_cmd = app.add_subcommand("bribery", "bribery by reversing arcs");
    add_instance_flags(bribery_cmd, bribery_flags);
    bribery_cmd->add_flag("--paper", bribery_flags.paper, "dbra/tc: use the published per-rival formula");

    AuditFlags audit_flags;
    auto* audit_cmd = app.add_subcommand("audit", "search for axiom violations");
    audit_cmd->add_option("--property", audit_flags.property, "criterion tag")->required();
    audit_cmd->add_option("--rule", audit_flags.rule, "tc, co or uc");
    audit_cmd->add_option("--max-candidates", audit_flags.max_candidates, "largest candidate count");
    audit_cmd->add_option("--max-votes", audit_flags.max_votes, "largest vote count (voting criteria)");
    audit_cmd->add_option("--trials", audit_flags.trials, "random trials");
    audit_cmd->add_flag("--exhaustive", audit_flags.exhaustive, "enumerate instead of sampling");
    audit_cmd->add_option("--witness-out", audit_flags.witness_out, "write the witness here");

    ReduceFlags reduce_flags;
    auto* reduce_cmd = app.add_subcommand("reduce", "build a gadget instance from x3c or tds");
    reduce_cmd->add_option("--input", reduce_flags.input, "x3c or tds file")->required();
    reduce_cmd->add_option("--to", reduce_flags.to, "ccav, ccdv, cbra or dbra")->required();
    reduce_cmd->add_option("--model", reduce_flags.model, "unique or nonunique");
    reduce_cmd->add_option("--rule", reduce_flags.rule, "rule for ccav/ccdv gadgets");
    reduce_cmd->add_flag("--relaxed", reduce_flags.relaxed, "allow parameters below the construction's assumptions");
    reduce_cmd->add_flag("--check", reduce_flags.check, "compare source oracle with target brute force");
    reduce_cmd->add_option("--out", reduce_flags.out, "write the instance here");

    std::string witness_path, instance_path;
    auto* verify_cmd = app.add_subcommand("verify", "replay a witness");
    verify_cmd->add_option("--witness", witness_path, "witness file")->required();
    verify_cmd->add_option("--instance", instance_path, "instance file (for actions)");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunReport report;
    for (const auto& a : args) report.command += (report.command.empty() ? "" : " ") + a;
    report.seed = g.seed;
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream human;
    int code = kExitOk;
    try {
        if (winners_cmd->parsed() || score_cmd->parsed()) {
            const SolutionRule r = tag<SolutionRule>(rule, "rule", parse_rule);
            const Election e = parse_election(read_file(election_path));
            report.rule = to_string(r);
            if (winners_cmd->parsed()) {
                const std::string names = join_names(e, winners(e, r));
                report.result.emplace_back("winners", names);
                human << names << '\n';
            } else {
                const ElectionEvaluation eval(e, r);
                for (std::size_t c = 0; c < e.candidate_count(); ++c) {
                    report.result.emplace_back("score." + e.name_of({c}), std::to_string(eval.score({c})));
                    human << e.name_of({c}) << ' ' << eval.score({c}) << '\n';
                }
            }
        } else if (control_cmd->parsed()) {
            code = solve_command(control_flags, false, report, human);
        } else if (bribery_cmd->parsed()) {
            code = solve_command(bribery_flags, true, report, human);
        } else if (audit_cmd->parsed()) {
            code = audit_command(audit_flags, g, report, human);
        } else if (reduce_cmd->parsed()) {
            code = reduce_command(reduce_flags, g, report, human);
        } else if (verify_cmd->parsed()) {
            code = verify_command(witness_path, instance_path, report, human);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BoundError& e) {
        err << "bound exceeded: " << e.what() << " (pass --unsafe to lift)\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (g.kv) {
        out << print_report(report);
    } else {
        out << human.str();
    }
    return code;
}

}  // namespace tsapproval::cli
