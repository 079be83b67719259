#include "weyl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "weyl/error.hpp"
#include "weyl/expr_parser.hpp"
#include "weyl/properties.hpp"
#include "weyl/scenario.hpp"

namespace weyl {

namespace {

struct Options {
    std::string scenario;
    std::vector<std::string> operands;
    std::size_t trials = 200;
    std::uint64_t seed = 42;
    std::string margin;
    bool json = false;
    bool text = false;
    bool serial = false;
};

int print_result(const std::string& result, const Options& o, std::ostream& out) {
    if (o.json)
        out << nlohmann::ordered_json{{"result", result}}.dump(2) << "\n";
    else
        out << result << "\n";
    return exit_ok;
}

int cmd_normalize(const Options& o, std::ostream& out) {
    Scenario sc = load_scenario(o.scenario);
    return print_result(to_string(*sc.context, normalize(o.operands.at(0), *sc.context)), o, out);
}

int cmd_act(const Options& o, std::ostream& out) {
    Scenario sc = load_scenario(o.scenario);
    const Context& ctx = *sc.context;
    WeylElement op = normalize(o.operands.at(0), ctx);
    AElement a = parse_a_element(o.operands.at(1), ctx);
    return print_result(to_string(ctx, act(ctx, op, a)), o, out);
}

int cmd_bracket(const Options& o, std::ostream& out) {
    Scenario sc = load_scenario(o.scenario);
    const Context& ctx = *sc.context;
    return print_result(
        to_string(ctx, lie_bracket(ctx, normalize(o.operands.at(0), ctx), normalize(o.operands.at(1), ctx))), o,
        out);
}

int cmd_probe(const Options& o, std::ostream& out) {
    Scenario sc = load_scenario(o.scenario);
    std::optional<mpq_class> margin;
    if (!o.margin.empty()) {
        margin = parse_fraction(o.margin);
        if (*margin < 0 || *margin >= 1) throw UsageError("--margin must lie in [0, 1)");
    }
    ProbeReport rep = run_probes(sc, margin, o.serial ? Exec::serial : Exec::parallel);
    if (o.text)
        out << report_text(rep.json);
    else
        out << rep.json.dump(2) << "\n";
    return rep.expectations_met ? exit_ok : exit_mismatch;
}

int cmd_verify(const Options& o, std::ostream& out) {
    Scenario sc = load_scenario(o.scenario);
    VerifyOptions vo;
    vo.trials = o.trials;
    vo.seed = o.seed;
    vo.exec = o.serial ? Exec::serial : Exec::parallel;
    auto results = run_suites(*sc.context, sc.suites, vo);
    bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed(); });
    if (o.json) {
        nlohmann::ordered_json j;
        j["scenario"] = sc.name;
        j["trials"] = o.trials;
        j["seed"] = o.seed;
        nlohmann::ordered_json suites = nlohmann::ordered_json::array();
        for (const auto& r : results)
            suites.push_back({{"suite", r.name}, {"trials", r.trials}, {"failures", r.failures},
                              {"violations", r.violations}});
        j["suites"] = suites;
        j["passed"] = ok;
        out << j.dump(2) << "\n";
    } else {
        out << "verify " << sc.name << ": " << o.trials << " trials, seed " << o.seed << "\n";
        for (const auto& r : results) {
            out << "  " << r.name << ": " << (r.passed() ? "pass" : "FAIL");
            if (!r.passed()) out << " (" << r.failures << " of " << r.trials << ")";
            out << "\n";
            for (const auto& v : r.violations) out << "    " << v << "\n";
        }
        out << (ok ? "all suites passed" : "property violations found") << "\n";
    }
    return ok ? exit_ok : exit_mismatch;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic and structure probes for Weyl-type algebras A[D]", "weyl"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--scenario", o.scenario, "scenario JSON file")->required();
        auto* j = sub->add_flag("--json", o.json, "JSON output");
        auto* t = sub->add_flag("--text", o.text, "plain text output");
        j->excludes(t);
    };
    auto* normalize_cmd = app.add_subcommand("normalize", "print the normal form of an expression");
    normalize_cmd->add_option("expression", o.operands)->required()->expected(1);
    auto* act_cmd = app.add_subcommand("act", "apply an operator to an element of A");
    act_cmd->add_option("operands", o.operands, "operator and element")->required()->expected(2);
    auto* bracket_cmd = app.add_subcommand("bracket", "Lie bracket of two expressions");
    bracket_cmd->add_option("operands", o.operands, "two expressions")->required()->expected(2);
    auto* probe_cmd = app.add_subcommand("probe", "run the probes listed in a scenario");
    probe_cmd->add_option("--margin", o.margin, "interior margin fraction, overrides the scenario");
    auto* verify_cmd = app.add_subcommand("verify", "run seeded property suites");
    verify_cmd->add_option("--trials", o.trials, "trials per suite");
    verify_cmd->add_option("--seed", o.seed, "random seed");
    for (auto* sub : {normalize_cmd, act_cmd, bracket_cmd, probe_cmd, verify_cmd}) common(sub);
    for (auto* sub : {probe_cmd, verify_cmd}) sub->add_flag("--serial", o.serial, "disable OpenMP kernels");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (*normalize_cmd) return cmd_normalize(o, out);
        if (*act_cmd) return cmd_act(o, out);
        if (*bracket_cmd) return cmd_bracket(o, out);
        if (*probe_cmd) return cmd_probe(o, out);
        return cmd_verify(o, out);
    } catch (const ValidationError& e) {
        err << "error: scenario " << o.scenario << " is invalid\n";
        for (const auto& v : e.violations()) err << "  " << v << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return exit_usage;
}

}  // namespace weyl
