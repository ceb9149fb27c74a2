#include "fairdiv/axioms.hpp"
#include "fairdiv/corpus.hpp"
#include "fairdiv/engine.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/json_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace fairdiv;

constexpr int kSeededAgents = 3;
constexpr int kSeededItems = 4;

const std::vector<std::string> kAllAxioms = {"efp", "efa", "ef1", "efx", "pep",
                                             "pea", "sp",  "osp", "gsp"};

Json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw SchemaError(std::string("cannot open ") + what + " file " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw SchemaError(std::string(what) + " file " + path + " is not valid JSON: " + e.what());
    }
}

/// Problem selection shared by run and check: exactly one of a fixture id, a
/// JSON file, or a generator seed.
struct ProblemSource {
    std::string fixture;
    std::string file;
    std::uint64_t seed = 0;
    bool seeded = false;

    void add_options(CLI::App& cmd) {
        auto* fx = cmd.add_option("--fixture", fixture, "Built-in fixture id (E1, T1, ...)");
        auto* pf = cmd.add_option("--problem", file, "Problem JSON file");
        auto* sd = cmd.add_option("--seed", seed,
                                  "Generate a random 3-agent, 4-item monotone problem");
        fx->excludes(pf)->excludes(sd);
        pf->excludes(sd);
    }

    Problem load(const CLI::App& cmd, std::string& label) const {
        if (!fixture.empty()) {
            label = "fixture " + fixture;
            return load_fixture(fixture).problem;
        }
        if (!file.empty()) {
            label = file;
            return problem_from_json(parse_json_file(file, "problem"));
        }
        if (cmd.count("--seed") > 0) {
            label = "seed " + std::to_string(seed);
            return generate_random(DomainFlags{}, kSeededAgents, kSeededItems, seed);
        }
        throw SchemaError("no problem given: use --fixture, --problem, or --seed");
    }
};

std::string describe(const Problem& problem) {
    DomainFlags flags = classify(problem);
    std::string out = std::to_string(problem.agent_count()) + " agents, " +
                      std::to_string(problem.item_count()) +
                      (problem.item_count() == 1 ? " item" : " items");
    std::vector<std::string> tags;
    if (flags.identical) tags.push_back("identical");
    if (flags.additive) tags.push_back("additive");
    if (flags.nonzero_marginals) tags.push_back("nonzero marginals");
    if (flags.zero_one_marginals) tags.push_back("0/1 marginals");
    for (std::size_t i = 0; i < tags.size(); ++i) {
        out += (i == 0 ? "; " : ", ") + tags[i];
    }
    return out;
}

std::string bundle_text(const Problem& problem, ItemSet bundle) {
    std::string out = "{";
    bool first = true;
    for (int item : bundle.items()) {
        if (!first) out += ", ";
        out += problem.item_name(item);
        first = false;
    }
    return out + "}";
}

std::string allocation_text(const Problem& problem, const Allocation& alloc) {
    std::string out;
    for (int k = 0; k < alloc.agent_count(); ++k) {
        if (k > 0) out += "  ";
        out += "agent " + std::to_string(k + 1) + ": " + bundle_text(problem, alloc.bundle(k));
    }
    return out;
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows,
                 const std::string& indent) {
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        if (row.size() > widths.size()) widths.resize(row.size(), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    for (const auto& row : rows) {
        out << indent;
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << std::left << std::setw(static_cast<int>(widths[c]) + 2) << row[c];
        }
        out << "\n";
    }
}

void print_distribution(const Problem& problem, const AllocationDistribution& dist) {
    std::cout << "distribution over final allocations:\n";
    std::vector<std::vector<std::string>> rows;
    for (const auto& [alloc, prob] : dist.support) {
        std::vector<std::string> row{format_rational(prob)};
        for (int k = 0; k < alloc.agent_count(); ++k) {
            row.push_back("agent " + std::to_string(k + 1) + ": " +
                          bundle_text(problem, alloc.bundle(k)));
        }
        rows.push_back(std::move(row));
    }
    print_table(std::cout, rows, "  ");
}

void print_expected_utilities(const std::vector<std::vector<Rational>>& matrix) {
    std::cout << "expected utilities (entry i,k: how agent i values agent k's bundle):\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    for (std::size_t k = 0; k < matrix.size(); ++k) {
        header.push_back("agent " + std::to_string(k + 1));
    }
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::vector<std::string> row{"agent " + std::to_string(i + 1)};
        for (const Rational& v : matrix[i]) row.push_back(format_rational(v));
        rows.push_back(std::move(row));
    }
    print_table(std::cout, rows, "  ");
}

void print_strategy(const Problem& problem, const StrategyProfile& strategy,
                    const std::string& indent) {
    for (const auto& [node, bid] : strategy.overrides) {
        const auto& [agent, round, at] = node;
        std::cout << indent << "agent " << agent + 1 << " declares " << format_rational(bid)
                  << " for " << problem.item_name(round) << " at [" << allocation_text(problem, at)
                  << "]\n";
    }
}

void print_witness(const Problem& problem, const Witness& witness) {
    if (const auto* envy = std::get_if<EnvyWitness>(&witness)) {
        std::cout << "  witness: agent " << envy->envious + 1 << " values agent "
                  << envy->envied + 1 << "'s bundle at " << format_rational(envy->other_value)
                  << " against own " << format_rational(envy->own_value);
        if (envy->allocation) {
            std::cout << " in [" << allocation_text(problem, *envy->allocation) << "]";
        } else {
            std::cout << " in expectation";
        }
        std::cout << "\n";
        for (const auto& [item, value] : envy->residuals) {
            std::cout << "    still " << format_rational(value) << " after removing "
                      << problem.item_name(item) << "\n";
        }
    } else if (const auto* dom = std::get_if<DominanceWitness>(&witness)) {
        auto profile = [](const std::vector<Rational>& p) {
            std::string out = "(";
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (i > 0) out += ", ";
                out += format_rational(p[i]);
            }
            return out + ")";
        };
        std::cout << "  witness: [" << allocation_text(problem, dom->dominated) << "] giving "
                  << profile(dom->dominated_profile) << "\n"
                  << "    is dominated by [" << allocation_text(problem, dom->dominating)
                  << "] giving " << profile(dom->dominating_profile) << "\n";
    } else if (const auto* mix = std::get_if<MixtureWitness>(&witness)) {
        auto profile = [](const std::vector<Rational>& p) {
            std::string out = "(";
            for (std::size_t i = 0; i < p.size(); ++i) {
                if (i > 0) out += ", ";
                out += format_rational(p[i]);
            }
            return out + ")";
        };
        std::cout << "  witness: expected profile " << profile(mix->expected)
                  << " is dominated by the mixture\n";
        for (const auto& [alloc, weight] : mix->mixture) {
            std::cout << "    " << format_rational(weight) << " x ["
                      << allocation_text(problem, alloc) << "]\n";
        }
        std::cout << "    giving " << profile(mix->mixture_profile) << ", total gain "
                  << format_rational(mix->total_slack) << "\n";
    } else if (const auto* manip = std::get_if<ManipulationWitness>(&witness)) {
        std::cout << "  witness: ";
        if (manip->coalition.size() == 1) {
            std::cout << "agent " << manip->coalition[0] + 1;
        } else {
            std::cout << "agents ";
            for (std::size_t c = 0; c < manip->coalition.size(); ++c) {
                if (c > 0) std::cout << ", ";
                std::cout << manip->coalition[c] + 1;
            }
        }
        std::cout << (manip->coalition.size() == 1 ? " raises the own expected utility"
                                                   : " raise their total expected utility")
                  << " from " << format_rational(manip->sincere_value) << " to "
                  << format_rational(manip->deviating_value);
        if (manip->horizon >= 0) {
            std::cout << " looking one round ahead from round " << manip->horizon + 1;
        }
        std::cout << " by deviating:\n";
        print_strategy(problem, manip->deviation, "    ");
    }
}

int cmd_run(const CLI::App& cmd, const ProblemSource& source, const std::string& mechanism_id,
            const std::string& strategy_file, bool as_json) {
    std::string label;
    Problem problem = source.load(cmd, label);
    Mechanism mech = Mechanism::parse(mechanism_id);
    StrategyProfile strategy;
    if (!strategy_file.empty()) {
        strategy = strategy_from_json(problem, parse_json_file(strategy_file, "strategy"));
    }
    AllocationDistribution dist = run(problem, mech, strategy);
    auto matrix = expected_utilities(problem, dist);
    if (as_json) {
        Json out;
        out["problem"] = problem_to_json(problem);
        out["mechanism"] = mech.id();
        out["strategy"] = strategy_to_json(problem, strategy);
        out["distribution"] = distribution_to_json(problem, dist);
        Json eu = Json::array();
        for (const auto& row : matrix) {
            Json jrow = Json::array();
            for (const Rational& v : row) jrow.push_back(format_rational(v));
            eu.push_back(std::move(jrow));
        }
        out["expected_utilities"] = std::move(eu);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "problem: " << label << " (" << describe(problem) << ")\n"
              << "mechanism: " << mech.id() << "\n";
    if (strategy.sincere()) {
        std::cout << "strategy: sincere\n\n";
    } else {
        std::cout << "strategy: " << strategy.overrides.size() << " overridden bid"
                  << (strategy.overrides.size() == 1 ? "" : "s") << "\n";
        print_strategy(problem, strategy, "  ");
        std::cout << "\n";
    }
    print_distribution(problem, dist);
    std::cout << "\n";
    print_expected_utilities(matrix);
    return 0;
}

int cmd_check(const CLI::App& cmd, const ProblemSource& source, const std::string& mechanism_id,
              std::vector<std::string> axioms, long long cap, bool as_json) {
    std::string label;
    Problem problem = source.load(cmd, label);
    Mechanism mech = Mechanism::parse(mechanism_id);
    if (axioms.empty()) axioms = kAllAxioms;
    CheckConfig config;
    config.enumeration_cap = cap;
    std::vector<Verdict> verdicts;
    for (const std::string& axiom : axioms) {
        verdicts.push_back(check_axiom(problem, mech, axiom, config));
    }
    if (as_json) {
        Json out;
        out["problem"] = problem_to_json(problem);
        out["mechanism"] = mech.id();
        Json list = Json::array();
        for (const Verdict& v : verdicts) list.push_back(verdict_to_json(problem, v));
        out["verdicts"] = std::move(list);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "problem: " << label << " (" << describe(problem) << ")\n"
              << "mechanism: " << mech.id() << "\n\n";
    for (const Verdict& v : verdicts) {
        std::cout << v.axiom << ": " << (v.holds ? "holds" : "does not hold") << "\n"
                  << "  searched: " << v.search_scope << "\n";
        if (v.witness) print_witness(problem, *v.witness);
        std::cout << "\n";
    }
    return 0;
}

int cmd_corpus(const std::string& export_dir, bool as_json) {
    if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        for (const std::string& id : fixture_ids()) {
            Fixture fixture = load_fixture(id);
            std::ofstream out(std::filesystem::path(export_dir) / (id + ".json"));
            out << problem_to_json(fixture.problem).dump(2) << "\n";
        }
    }
    std::vector<ExpectationResult> results;
    for (const std::string& id : fixture_ids()) {
        Fixture fixture = load_fixture(id);
        for (ExpectationResult& r : run_fixture_expectations(fixture)) {
            results.push_back(std::move(r));
        }
    }
    int failures = 0;
    for (const ExpectationResult& r : results) failures += r.passed ? 0 : 1;
    if (as_json) {
        Json out;
        Json list = Json::array();
        for (const ExpectationResult& r : results) {
            list.push_back({{"fixture", r.fixture},
                            {"mechanism", r.mechanism},
                            {"check", r.check},
                            {"expected", r.expected},
                            {"observed", r.observed},
                            {"passed", r.passed},
                            {"note", r.note}});
        }
        out["results"] = std::move(list);
        out["passed"] = failures == 0;
        std::cout << out.dump(2) << "\n";
        return failures == 0 ? 0 : 1;
    }
    std::vector<std::vector<std::string>> rows;
    for (const ExpectationResult& r : results) {
        rows.push_back({r.passed ? "pass" : "FAIL", r.fixture,
                        r.mechanism.empty() ? "-" : r.mechanism, r.check,
                        std::string("expected ") + (r.expected ? "holds" : "fails"),
                        r.note});
    }
    print_table(std::cout, rows, "");
    std::cout << "\n"
              << results.size() - failures << "/" << results.size() << " expectations hold\n";
    return failures == 0 ? 0 : 1;
}

int cmd_report(const std::string& only_fixture, long long cap, bool as_json) {
    std::vector<std::string> ids =
        only_fixture.empty() ? fixture_ids() : std::vector<std::string>{only_fixture};
    std::vector<Mechanism> mechanisms = builtin_nonwasteful();
    mechanisms.push_back(Mechanism{MechanismKind::MinimumUtility});
    mechanisms.push_back(Mechanism{MechanismKind::Uniform});
    const std::vector<std::string> axioms = {"efp", "efa", "ef1", "efx",
                                             "pep", "pea", "sp",  "osp"};
    CheckConfig config;
    config.enumeration_cap = cap;

    // A "holds" found only by a bounded deviation search is flagged, because it
    // is a no-counterexample-found result rather than a proof.
    auto bounded = [](const Verdict& v) {
        return v.holds && v.search_scope.find("lattice") != std::string::npos;
    };

    Json jout;
    Json jfixtures = Json::array();
    bool used_bounded = false;
    for (const std::string& id : ids) {
        Fixture fixture = load_fixture(id);
        Json jfixture;
        jfixture["id"] = id;
        Json jgrid = Json::array();
        if (!as_json) {
            std::cout << "fixture " << id << " (" << describe(fixture.problem) << ")\n";
        }
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"mechanism"});
        for (const std::string& axiom : axioms) rows.back().push_back(axiom);
        for (const Mechanism& mech : mechanisms) {
            Json jrow;
            jrow["mechanism"] = mech.id();
            Json jverdicts;
            rows.push_back({mech.id()});
            for (const std::string& axiom : axioms) {
                Verdict v = check_axiom(fixture.problem, mech, axiom, config);
                if (bounded(v)) used_bounded = true;
                rows.back().push_back(v.holds ? (bounded(v) ? "Y*" : "Y") : "x");
                jverdicts[axiom] = verdict_to_json(fixture.problem, v);
            }
            jrow["verdicts"] = std::move(jverdicts);
            jgrid.push_back(std::move(jrow));
        }
        jfixture["grid"] = std::move(jgrid);
        Json jinstance = Json::array();
        for (const Expectation& e : fixture.expectations) {
            if (e.subject != Expectation::Subject::Instance) continue;
            if (e.kind == CheckKind::NoEf1Continuation) {
                auto endings = ef1_prefix_consistent_finals(fixture.problem, e.agent);
                bool any = false;
                for (const Allocation& a : endings) any = any || ef1_holds(fixture.problem, a);
                jinstance.push_back({{"check", check_kind_name(e.kind)},
                                     {"agent", e.agent + 1},
                                     {"observed", any},
                                     {"note", e.note}});
                if (!as_json) {
                    std::cout << "  " << check_kind_name(e.kind) << " (o1 forced to agent "
                              << e.agent + 1 << "): "
                              << (any ? "an EF1 ending exists" : "no EF1 ending") << " — "
                              << e.note << "\n";
                }
            } else {
                OfflineProperty property = e.kind == CheckKind::OfflineEf  ? OfflineProperty::EF
                                           : e.kind == CheckKind::OfflineEf1 ? OfflineProperty::EF1
                                                                             : OfflineProperty::EFX;
                auto found = offline_exists(fixture.problem, property, cap);
                jinstance.push_back(
                    {{"check", check_kind_name(e.kind)},
                     {"observed", found.has_value()},
                     {"allocation", found ? Json(allocation_text(fixture.problem, *found))
                                          : Json(nullptr)},
                     {"note", e.note}});
                if (!as_json) {
                    std::cout << "  " << check_kind_name(e.kind) << ": "
                              << (found ? "exists, e.g. [" +
                                              allocation_text(fixture.problem, *found) + "]"
                                        : "none exists")
                              << "\n";
                }
            }
        }
        jfixture["instance"] = std::move(jinstance);
        jfixtures.push_back(std::move(jfixture));
        if (!as_json) {
            print_table(std::cout, rows, "  ");
            std::cout << "\n";
        }
    }
    if (as_json) {
        jout["fixtures"] = std::move(jfixtures);
        std::cout << jout.dump(2) << "\n";
        return 0;
    }
    std::cout << "key: Y holds, x does not hold";
    if (used_bounded) {
        std::cout << ", Y* no violation found within the bid lattice (bounded search)";
    }
    std::cout << "\n"
              << "gsp is omitted from the grid; check it per instance with"
                 " `fairdiv check --axiom gsp`.\n";
    bool both_branches = false;
    for (const std::string& a : ids) {
        for (const std::string& b : ids) both_branches = both_branches || (a == "T6a" && b == "T6b");
    }
    if (both_branches) {
        std::cout << "T6a and T6b form a two-branch pair: whichever agent receives o1, one of"
                     " the two instances admits no EF1-consistent ending.\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairdiv — exact verification of online fair division mechanisms"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand(
        "run", "Run a mechanism and print the exact outcome distribution");
    ProblemSource run_source;
    run_source.add_options(*run_cmd);
    std::string run_mechanism = "minimum-like";
    std::string run_strategy;
    bool run_json = false;
    run_cmd->add_option("--mechanism", run_mechanism, "Mechanism id")->capture_default_str();
    run_cmd->add_option("--strategy", run_strategy, "Deviation strategy JSON file");
    run_cmd->add_flag("--json", run_json, "Emit JSON instead of tables");

    auto* check_cmd = app.add_subcommand("check", "Check axioms of a mechanism on a problem");
    ProblemSource check_source;
    check_source.add_options(*check_cmd);
    std::string check_mechanism = "minimum-like";
    std::vector<std::string> check_axioms;
    long long check_cap = kDefaultEnumerationCap;
    bool check_json = false;
    check_cmd->add_option("--mechanism", check_mechanism, "Mechanism id")->capture_default_str();
    check_cmd->add_option("--axiom", check_axioms,
                          "Axiom to check (repeatable; default: all of efp efa ef1 efx pep pea"
                          " sp osp gsp)");
    check_cmd->add_option("--cap", check_cap, "Enumeration cap")->capture_default_str();
    check_cmd->add_flag("--json", check_json, "Emit JSON instead of text");

    auto* corpus_cmd =
        app.add_subcommand("corpus", "Run every fixture expectation; exit 1 on any mismatch");
    std::string corpus_export;
    bool corpus_json = false;
    corpus_cmd->add_option("--export", corpus_export, "Write fixture problem JSON files here");
    corpus_cmd->add_flag("--json", corpus_json, "Emit JSON instead of a table");

    auto* report_cmd =
        app.add_subcommand("report", "Verdict grid of every mechanism and axiom per fixture");
    std::string report_fixture;
    long long report_cap = kDefaultEnumerationCap;
    bool report_json = false;
    report_cmd->add_option("--fixture", report_fixture, "Restrict to one fixture");
    report_cmd->add_option("--cap", report_cap, "Enumeration cap")->capture_default_str();
    report_cmd->add_flag("--json", report_json, "Emit JSON instead of the grid");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return cmd_run(*run_cmd, run_source, run_mechanism, run_strategy, run_json);
        }
        if (check_cmd->parsed()) {
            return cmd_check(*check_cmd, check_source, check_mechanism, check_axioms, check_cap,
                             check_json);
        }
        if (corpus_cmd->parsed()) {
            return cmd_corpus(corpus_export, corpus_json);
        }
        return cmd_report(report_fixture, report_cap, report_json);
    } catch (const fairdiv::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const fairdiv::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const fairdiv::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return 2;
    }
}
