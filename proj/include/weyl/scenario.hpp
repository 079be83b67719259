#pragma once

// Scenario files: a JSON description of a field, generators, derivations,
// a truncation window and the probes to run on them.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "weyl/probes.hpp"

namespace weyl {

struct ProbeRequest {
    /// f1, theta_kernel, theta_kernel_f1, d_simplicity, lie_closure,
    /// assoc_closure, p_power or wronskian.
    std::string kind;
    std::string seed;
    std::optional<Window> window;
    std::optional<mpq_class> margin;
    std::optional<VerdictKind> expect_verdict;
    /// Expected F_1 basis (f1) or images of the generators (p_power), canonical text.
    std::optional<std::vector<std::string>> expect_elements;
    /// Whether a nonzero determinant is expected (wronskian).
    std::optional<bool> expect_found;
    std::string derivation;                 // p_power
    std::vector<std::string> derivations;   // wronskian, defaults to all
    std::vector<std::string> candidates;    // wronskian
};

struct Scenario {
    std::string name;
    std::string description;
    std::shared_ptr<Context> context;
    Window window;
    mpq_class margin{1, 2};
    std::vector<ProbeRequest> probes;
    /// Property suites run by `verify`; empty means all of them.
    std::vector<std::string> suites;
};

/// Exact rational from "a", "a/b" or a decimal like "0.25".
mpq_class parse_fraction(const std::string& text);
/// "num/den", always with an explicit denominator.
std::string fraction_string(const mpq_class& q);

/// Parses and validates; every violation found is reported in one ValidationError.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& path);

/// Runs every probe request in order. Returns the report and whether every
/// declared expectation held.
struct ProbeReport {
    nlohmann::ordered_json json;
    bool expectations_met = true;
};

ProbeReport run_probes(const Scenario& scenario, const std::optional<mpq_class>& margin_override = std::nullopt,
                       Exec exec = Exec::parallel);

/// Human-readable rendering of a report.
std::string report_text(const nlohmann::ordered_json& report);

}  // namespace weyl
