#include "weyl/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "weyl/error.hpp"
#include "weyl/expr_parser.hpp"
#include "weyl/properties.hpp"

namespace weyl {

using nlohmann::json;
using nlohmann::ordered_json;

mpq_class parse_fraction(const std::string& text) {
    auto bad = [&] { return UsageError("not a fraction: \"" + text + "\""); };
    if (text.empty()) throw bad();
    std::size_t dot = text.find('.');
    if (dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (negative) whole.erase(0, 1);
        if (whole.empty()) whole = "0";
        auto digits = [](const std::string& s) {
            return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
        };
        if (!digits(whole) || !digits(frac)) throw bad();
        mpz_class num(whole + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    }
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = text[i];
        if (!(std::isdigit(c) || c == '/' || (c == '-' && i == 0))) throw bad();
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw bad();
    q.canonicalize();
    return q;
}

std::string fraction_string(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

namespace {

const std::set<std::string>& probe_kinds() {
    static const std::set<std::string> kinds{"f1",           "theta_kernel",  "theta_kernel_f1", "d_simplicity",
                                             "lie_closure",  "assoc_closure", "p_power",         "wronskian"};
    return kinds;
}

bool is_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

class Violations {
public:
    void add(const std::string& where, const std::string& what) { list_.push_back(where + ": " + what); }
    bool empty() const { return list_.empty(); }
    std::size_t size() const { return list_.size(); }
    const std::vector<std::string>& list() const { return list_; }

private:
    std::vector<std::string> list_;
};

std::optional<FieldSpec> read_field(const json& j, Violations& out) {
    try {
        if (j.is_string()) {
            std::string s = j.get<std::string>();
            if (s == "Q") return FieldSpec::rational();
            if (s.rfind("F_", 0) == 0 && s.size() > 2 &&
                std::all_of(s.begin() + 2, s.end(), [](unsigned char c) { return std::isdigit(c); }))
                return FieldSpec::prime(std::stoull(s.substr(2)));
        } else if (j.is_object() && j.contains("prime") && j["prime"].is_number_unsigned()) {
            return FieldSpec::prime(j["prime"].get<std::uint64_t>());
        }
        out.add("field", "expected \"Q\", \"F_p\" or {\"prime\": p}");
    } catch (const std::exception& e) {
        out.add("field", e.what());
    }
    return std::nullopt;
}

std::optional<Window> read_window(const json& j, const Context& ctx, std::size_t cap, const std::string& where,
                                  Violations& out) {
    if (!j.is_object()) {
        out.add(where, "window must be an object");
        return std::nullopt;
    }
    std::size_t before = out.size();
    std::map<VarId, ExponentBounds> bounds;
    if (j.contains("bounds")) {
        if (!j["bounds"].is_object()) {
            out.add(where + ".bounds", "must be an object");
        } else {
            for (const auto& [name, b] : j["bounds"].items()) {
                auto v = ctx.find_variable(name);
                if (!v) {
                    out.add(where + ".bounds", "unknown variable " + name);
                    continue;
                }
                if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer()) {
                    out.add(where + ".bounds." + name, "expected [lo, hi]");
                    continue;
                }
                bounds[*v] = {b[0].get<std::int32_t>(), b[1].get<std::int32_t>()};
            }
        }
    }
    std::uint32_t level = 0;
    if (!j.contains("max_level") || !j["max_level"].is_number_unsigned())
        out.add(where + ".max_level", "required nonnegative integer");
    else
        level = j["max_level"].get<std::uint32_t>();
    if (out.size() != before) return std::nullopt;
    Window w(std::move(bounds), level, cap);
    try {
        w.validate(ctx);
    } catch (const UsageError& e) {
        out.add(where, e.what());
        return std::nullopt;
    }
    return w;
}

std::optional<mpq_class> read_margin(const json& j, const std::string& where, Violations& out) {
    try {
        mpq_class m = j.is_string() ? parse_fraction(j.get<std::string>())
                      : j.is_number_integer() ? mpq_class(j.get<long>())
                                              : throw UsageError("margin must be a fraction string");
        if (m < 0 || m >= 1) throw UsageError("margin must lie in [0, 1)");
        return m;
    } catch (const UsageError& e) {
        out.add(where, e.what());
    }
    return std::nullopt;
}

std::vector<std::string> read_string_list(const json& j, const std::string& where, Violations& out) {
    std::vector<std::string> v;
    if (!j.is_array()) {
        out.add(where, "expected an array of strings");
        return v;
    }
    for (const auto& e : j) {
        if (!e.is_string()) {
            out.add(where, "expected an array of strings");
            return {};
        }
        v.push_back(e.get<std::string>());
    }
    return v;
}

void read_derivations(const json& j, Context& ctx, std::vector<std::string>& lambda_names, Violations& out) {
    if (!j.is_array()) {
        out.add("derivations", "expected an array");
        return;
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& d = j[i];
        std::string where = "derivations[" + std::to_string(i) + "]";
        if (!d.is_object() || !d.contains("name") || !d["name"].is_string()) {
            out.add(where, "expected an object with a string name");
            continue;
        }
        std::string name = d["name"].get<std::string>();
        if (!is_identifier(name)) out.add(where, "invalid name \"" + name + "\"");
        if (!seen.insert(name).second) out.add(where, "duplicate derivation " + name);
        if (ctx.find_variable(name)) out.add(where, "name " + name + " clashes with a variable");
        int forms = int(d.contains("images")) + int(d.contains("shift")) + int(d.contains("lambda"));
        if (forms != 1) {
            out.add(where, "give exactly one of images, shift, lambda");
            continue;
        }
        std::map<VarId, AElement> images;
        std::optional<ShiftRule> shift;
        bool ok = true;
        bool lambda = false;
        if (d.contains("images") || d.contains("lambda")) {
            lambda = d.contains("lambda");
            const json& m = lambda ? d["lambda"] : d["images"];
            if (!m.is_object()) {
                out.add(where, "images must map variable names to expressions");
                continue;
            }
            for (const auto& [var, expr] : m.items()) {
                auto v = ctx.find_variable(var);
                if (!v) {
                    out.add(where, "unknown variable " + var);
                    ok = false;
                    continue;
                }
                if (!expr.is_string()) {
                    out.add(where + "." + var, "expected an expression string");
                    ok = false;
                    continue;
                }
                try {
                    AElement u = parse_a_element(expr.get<std::string>(), ctx);
                    if (lambda) {
                        if (ctx.variable(*v).kind != VarKind::laurent)
                            throw UsageError("lambda derivations act on Laurent variables only");
                        if (!(u.is_zero() || (u.size() == 1 && u.terms().begin()->first.is_one())))
                            throw UsageError("lambda entries must be scalars");
                        u = u * AElement::term(ctx.one(), Monomial::variable(*v));
                    }
                    images[*v] = std::move(u);
                } catch (const std::exception& e) {
                    out.add(where + "." + var, e.what());
                    ok = false;
                }
            }
            // Generators without an explicit image are constants of this derivation.
            for (VarId v : declared_variables(ctx)) images.try_emplace(v);
        } else {
            const json& s = d["shift"];
            std::uint32_t step = 1;
            if (d.contains("step")) {
                if (!d["step"].is_number_unsigned() || d["step"].get<std::uint32_t>() == 0) {
                    out.add(where + ".step", "must be a positive integer");
                    ok = false;
                } else {
                    step = d["step"].get<std::uint32_t>();
                }
            }
            if (!s.is_string() || !is_identifier(s.get<std::string>())) {
                out.add(where + ".shift", "expected a family name");
                continue;
            }
            shift = ShiftRule{s.get<std::string>(), step};
        }
        if (!ok) continue;
        try {
            ctx.add_derivation(Derivation(name, std::move(images), std::move(shift)));
            if (lambda) lambda_names.push_back(name);
        } catch (const std::exception& e) {
            out.add(where, e.what());
        }
    }
}

void check_lambda_matrix(const Context& ctx, const std::vector<std::string>& names, Violations& out) {
    if (names.empty()) return;
    if (!ctx.field().is_rational()) {
        out.add("derivations", "lambda derivations need characteristic 0 (p times any exponent vector is fixed)");
        return;
    }
    std::vector<VarId> cols;
    for (VarId v : all_variables(ctx))
        if (ctx.variable(v).kind == VarKind::laurent) cols.push_back(v);
    // Rational rank == number of Laurent generators iff the common integer
    // kernel of the weights is trivial.
    RowSpace rows;
    for (const auto& n : names) {
        const Derivation& d = ctx.derivation(*ctx.find_derivation(n));
        SparseVector row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            auto it = d.images().find(cols[c]);
            if (it == d.images().end() || it->second.is_zero()) continue;
            row.emplace_back(c, it->second.terms().begin()->second);
        }
        rows.insert(row);
    }
    if (rows.rank() != cols.size())
        out.add("derivations", "the lambda matrix has a nontrivial integer kernel (rank " +
                                   std::to_string(rows.rank()) + " < " + std::to_string(cols.size()) + ")");
}

void check_commutativity(const Context& ctx, Violations& out) {
    auto vars = all_variables(ctx);
    for (std::size_t i = 0; i < ctx.derivation_count(); ++i)
        for (std::size_t k = i + 1; k < ctx.derivation_count(); ++k) {
            try {
                if (!check_commuting(ctx, ctx.derivation(i), ctx.derivation(k), vars))
                    out.add("derivations", ctx.derivation(i).name() + " and " + ctx.derivation(k).name() +
                                               " do not commute");
            } catch (const std::exception& e) {
                out.add("derivations", e.what());
            }
        }
}

void check_seed_in(const WeylElement& x, const Window& w, const std::string& where, Violations& out) {
    if (!w.contains(x)) out.add(where, "seed lies outside the window");
}

ProbeRequest read_probe(const json& p, const std::string& where, const Scenario& sc, Violations& out) {
    const Context& ctx = *sc.context;
    ProbeRequest r;
    if (!p.is_object() || !p.contains("kind") || !p["kind"].is_string()) {
        out.add(where, "expected an object with a string kind");
        return r;
    }
    r.kind = p["kind"].get<std::string>();
    if (!probe_kinds().count(r.kind)) {
        out.add(where, "unknown probe kind " + r.kind);
        return r;
    }
    if (p.contains("window")) r.window = read_window(p["window"], ctx, sc.window.cap(), where + ".window", out);
    if (p.contains("margin")) r.margin = read_margin(p["margin"], where + ".margin", out);
    const Window& w = r.window ? *r.window : sc.window;

    bool needs_seed = r.kind == "d_simplicity" || r.kind == "lie_closure" || r.kind == "assoc_closure";
    if (needs_seed) {
        if (!p.contains("seed") || !p["seed"].is_string()) {
            out.add(where, "missing seed expression");
        } else {
            r.seed = p["seed"].get<std::string>();
            try {
                WeylElement x = r.kind == "d_simplicity" ? WeylElement::from_a(parse_a_element(r.seed, ctx))
                                                         : normalize(r.seed, ctx);
                if (x.is_zero()) out.add(where + ".seed", "seed is zero");
                check_seed_in(x, w, where + ".seed", out);
            } catch (const std::exception& e) {
                out.add(where + ".seed", e.what());
            }
        }
    }
    if (r.kind == "p_power") {
        if (!ctx.field().characteristic())
            out.add(where, "p_power needs a prime field");
        if (!p.contains("derivation") || !p["derivation"].is_string()) {
            out.add(where, "missing derivation name");
        } else {
            r.derivation = p["derivation"].get<std::string>();
            if (!ctx.find_derivation(r.derivation)) out.add(where, "unknown derivation " + r.derivation);
        }
    }
    if (r.kind == "wronskian") {
        if (p.contains("derivations")) {
            r.derivations = read_string_list(p["derivations"], where + ".derivations", out);
            for (const auto& n : r.derivations)
                if (!ctx.find_derivation(n)) out.add(where, "unknown derivation " + n);
        } else {
            for (const auto& d : ctx.derivations()) r.derivations.push_back(d.name());
        }
        if (p.contains("candidates")) r.candidates = read_string_list(p["candidates"], where + ".candidates", out);
        for (const auto& c : r.candidates) {
            try {
                parse_a_element(c, ctx);
            } catch (const std::exception& e) {
                out.add(where + ".candidates", e.what());
            }
        }
        if (r.candidates.size() < r.derivations.size())
            out.add(where, "need at least as many candidates as derivations");
    }
    if (p.contains("expect")) {
        const json& e = p["expect"];
        if (r.kind == "f1" || r.kind == "p_power") {
            auto list = read_string_list(e, where + ".expect", out);
            r.expect_elements = list;
        } else if (r.kind == "wronskian") {
            if (!e.is_boolean())
                out.add(where + ".expect", "expected true or false");
            else
                r.expect_found = e.get<bool>();
        } else {
            auto v = e.is_string() ? parse_verdict_kind(e.get<std::string>()) : std::nullopt;
            if (!v)
                out.add(where + ".expect", "unknown verdict");
            else
                r.expect_verdict = v;
        }
    }
    return r;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
    Violations out;
    Scenario sc;
    if (!doc.is_object()) throw ValidationError({"scenario: expected a JSON object"});

    if (doc.contains("name") && doc["name"].is_string())
        sc.name = doc["name"].get<std::string>();
    else
        out.add("name", "required string");
    if (doc.contains("description")) {
        if (doc["description"].is_string())
            sc.description = doc["description"].get<std::string>();
        else
            out.add("description", "must be a string");
    }
    std::optional<FieldSpec> field;
    if (doc.contains("field"))
        field = read_field(doc["field"], out);
    else
        out.add("field", "required");

    std::size_t var_cap = Context::default_variable_cap;
    if (doc.contains("variable_cap")) {
        if (doc["variable_cap"].is_number_unsigned() && doc["variable_cap"].get<std::size_t>() > 0)
            var_cap = doc["variable_cap"].get<std::size_t>();
        else
            out.add("variable_cap", "must be a positive integer");
    }
    std::size_t window_cap = Window::default_cap;
    if (doc.contains("window_cap")) {
        if (doc["window_cap"].is_number_unsigned() && doc["window_cap"].get<std::size_t>() > 0)
            window_cap = doc["window_cap"].get<std::size_t>();
        else
            out.add("window_cap", "must be a positive integer");
    }
    // Structural checks past this point still run on an invalid field so
    // that every violation is reported at once.
    auto ctx = std::make_shared<Context>(field.value_or(FieldSpec::rational()), var_cap);
    sc.context = ctx;

    if (!doc.contains("variables") || !doc["variables"].is_array()) {
        out.add("variables", "required array");
    } else {
        const json& vars = doc["variables"];
        for (std::size_t i = 0; i < vars.size(); ++i) {
            std::string where = "variables[" + std::to_string(i) + "]";
            const json& v = vars[i];
            if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
                out.add(where, "expected an object with a string name");
                continue;
            }
            std::string name = v["name"].get<std::string>();
            std::string kind = v.value("kind", "polynomial");
            if (!is_identifier(name)) {
                out.add(where, "invalid name \"" + name + "\"");
                continue;
            }
            if (kind != "polynomial" && kind != "laurent") {
                out.add(where, "kind must be polynomial or laurent");
                continue;
            }
            try {
                ctx->add_variable(name, kind == "laurent" ? VarKind::laurent : VarKind::polynomial);
            } catch (const std::exception& e) {
                out.add(where, e.what());
            }
        }
    }

    std::vector<std::string> lambda_names;
    if (doc.contains("derivations"))
        read_derivations(doc["derivations"], *ctx, lambda_names, out);
    else
        out.add("derivations", "required array");
    check_commutativity(*ctx, out);
    check_lambda_matrix(*ctx, lambda_names, out);

    if (doc.contains("window")) {
        if (auto w = read_window(doc["window"], *ctx, window_cap, "window", out)) sc.window = *w;
    } else {
        sc.window = Window({}, 0, window_cap);
    }
    if (doc.contains("margin"))
        if (auto m = read_margin(doc["margin"], "margin", out)) sc.margin = *m;

    if (doc.contains("probes")) {
        if (!doc["probes"].is_array()) {
            out.add("probes", "expected an array");
        } else {
            for (std::size_t i = 0; i < doc["probes"].size(); ++i)
                sc.probes.push_back(read_probe(doc["probes"][i], "probes[" + std::to_string(i) + "]", sc, out));
        }
    }
    if (doc.contains("verify")) {
        const json& v = doc["verify"];
        if (!v.is_object()) {
            out.add("verify", "expected an object");
        } else if (v.contains("suites")) {
            sc.suites = read_string_list(v["suites"], "verify.suites", out);
            auto known = suite_names();
            for (const auto& s : sc.suites)
                if (std::find(known.begin(), known.end(), s) == known.end())
                    out.add("verify.suites", "unknown suite " + s);
        }
    }
    for (const auto& [key, value] : doc.items()) {
        static const std::set<std::string> keys{"name",   "description", "field",      "variables",
                                                "derivations", "window", "margin",     "window_cap",
                                                "variable_cap", "probes", "verify"};
        if (!keys.count(key)) out.add(key, "unknown key");
    }
    if (!out.empty()) throw ValidationError(out.list());
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open scenario " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError({path.string() + ": " + e.what()});
    }
    return parse_scenario(doc);
}

namespace {

ordered_json window_json(const Context& ctx, const Window& w) {
    ordered_json bounds = ordered_json::object();
    for (const auto& [v, b] : w.bounds()) bounds[ctx.variable(v).name] = {b.lo, b.hi};
    return {{"bounds", bounds}, {"max_level", w.max_level()}};
}

ordered_json elements_json(const Context& ctx, const std::vector<WeylElement>& xs) {
    ordered_json a = ordered_json::array();
    for (const auto& x : xs) a.push_back(to_string(ctx, x));
    return a;
}

void verdict_fields(ordered_json& r, const Context& ctx, const ProbeVerdict& v) {
    r["verdict"] = to_string(v.kind);
    r["coverage"] = fraction_string(v.coverage);
    r["window_restricted"] = v.window_restricted;
    r["witness"] = elements_json(ctx, v.witness);
}

// The generators carrying the identity combination, with their ancestry.
void certificate_fields(ordered_json& r, const Context& ctx, const ProbeVerdict& v) {
    if (v.kind != VerdictKind::reaches_identity || !v.trace) return;
    const ClosureTrace& t = *v.trace;
    std::set<std::size_t> used;
    std::vector<std::size_t> stack;
    for (std::size_t k = 0; k < v.combination.size(); ++k)
        if (!v.combination[k].is_zero()) stack.push_back(k);
    while (!stack.empty()) {
        std::size_t k = stack.back();
        stack.pop_back();
        if (!used.insert(k).second) continue;
        if (t.steps[k].parent) stack.push_back(*t.steps[k].parent);
    }
    ordered_json steps = ordered_json::array();
    for (std::size_t k : used) {
        ordered_json s;
        s["generator"] = k;
        s["element"] = to_string(ctx, t.generators[k]);
        if (t.steps[k].parent) {
            s["parent"] = *t.steps[k].parent;
            s["op"] = t.op_labels[t.steps[k].op];
        } else {
            s["parent"] = nullptr;
            s["op"] = "seed";
        }
        steps.push_back(std::move(s));
    }
    ordered_json comb = ordered_json::array();
    for (std::size_t k = 0; k < v.combination.size(); ++k)
        if (!v.combination[k].is_zero())
            comb.push_back({{"generator", k}, {"coefficient", v.combination[k].to_string()}});
    r["certificate"] = {{"steps", steps}, {"combination", comb}};
}

ordered_json run_one(const Scenario& sc, const ProbeRequest& req, const mpq_class& margin, Exec exec, bool& met) {
    const Context& ctx = *sc.context;
    const Window& w = req.window ? *req.window : sc.window;
    ordered_json r;
    r["kind"] = req.kind;
    r["window"] = window_json(ctx, w);
    auto expect = [&](bool matches, ordered_json expected) {
        r["expected"] = std::move(expected);
        r["matches"] = matches;
        if (!matches) met = false;
    };
    auto expect_verdict = [&](VerdictKind got) {
        if (req.expect_verdict) expect(got == *req.expect_verdict, to_string(*req.expect_verdict));
    };

    if (req.kind == "f1") {
        SubspaceBasis f1 = compute_f1(ctx, w, exec);
        ordered_json basis = elements_json(ctx, f1.elements());
        r["dimension"] = f1.dimension();
        r["basis"] = basis;
        if (req.expect_elements) expect(basis == ordered_json(*req.expect_elements), *req.expect_elements);
    } else if (req.kind == "theta_kernel" || req.kind == "theta_kernel_f1") {
        ProbeVerdict v = req.kind == "theta_kernel" ? theta_kernel(ctx, w, exec)
                                                    : theta_kernel_f1(ctx, w, compute_f1(ctx, w, exec), exec);
        verdict_fields(r, ctx, v);
        expect_verdict(v.kind);
    } else if (req.kind == "d_simplicity" || req.kind == "assoc_closure") {
        ProbeVerdict v;
        if (req.kind == "d_simplicity") {
            AElement seed = parse_a_element(req.seed, ctx);
            r["seed"] = to_string(ctx, seed);
            v = d_simplicity_probe(ctx, seed, w, exec);
        } else {
            WeylElement seed = normalize(req.seed, ctx);
            r["seed"] = to_string(ctx, seed);
            v = assoc_ideal_closure_probe(ctx, seed, w, exec);
        }
        verdict_fields(r, ctx, v);
        r["span_dimension"] = v.trace ? v.trace->generators.size() : 0;
        certificate_fields(r, ctx, v);
        expect_verdict(v.kind);
    } else if (req.kind == "lie_closure") {
        WeylElement seed = normalize(req.seed, ctx);
        r["seed"] = to_string(ctx, seed);
        r["margin"] = fraction_string(margin);
        ProbeVerdict v = lie_ideal_closure_probe(ctx, seed, w, compute_f1(ctx, w, exec), {exec, margin});
        verdict_fields(r, ctx, v);
        r["span_dimension"] = v.trace ? v.trace->generators.size() : 0;
        r["unreached"] = elements_json(ctx, v.unreached);
        expect_verdict(v.kind);
    } else if (req.kind == "p_power") {
        const Derivation& d = ctx.derivation(*ctx.find_derivation(req.derivation));
        std::uint64_t p = ctx.field().characteristic();
        Derivation dp = p_power_derivation(ctx, d, p);
        r["derivation"] = d.name();
        r["power"] = p;
        ordered_json images = ordered_json::array();
        for (VarId v : declared_variables(ctx)) {
            AElement x = AElement::term(ctx.one(), Monomial::variable(v));
            images.push_back(ctx.variable(v).name + " -> " + to_string(ctx, apply_derivation(ctx, dp, x)));
        }
        r["images"] = images;
        if (req.expect_elements) expect(images == ordered_json(*req.expect_elements), *req.expect_elements);
    } else if (req.kind == "wronskian") {
        std::vector<Derivation> ds;
        for (const auto& n : req.derivations) ds.push_back(ctx.derivation(*ctx.find_derivation(n)));
        std::vector<AElement> cands;
        for (const auto& c : req.candidates) cands.push_back(parse_a_element(c, ctx));
        auto wit = wronskian_witness(ctx, ds, cands);
        r["derivations"] = req.derivations;
        ordered_json cj = ordered_json::array();
        for (const auto& c : cands) cj.push_back(to_string(ctx, c));
        r["candidates"] = cj;
        r["found"] = wit.has_value();
        if (wit) {
            ordered_json chosen = ordered_json::array();
            for (const auto& c : wit->chosen) chosen.push_back(to_string(ctx, c));
            r["chosen"] = chosen;
            r["determinant"] = to_string(ctx, wit->determinant);
        }
        if (req.expect_found) expect(wit.has_value() == *req.expect_found, *req.expect_found);
    }
    return r;
}

}  // namespace

ProbeReport run_probes(const Scenario& sc, const std::optional<mpq_class>& margin_override, Exec exec) {
    exec = stable_exec(*sc.context, exec);
    ProbeReport rep;
    ordered_json& j = rep.json;
    j["scenario"] = sc.name;
    j["field"] = sc.context->field().to_string();
    j["derivations"] = derivation_names(*sc.context);
    ordered_json probes = ordered_json::array();
    for (std::size_t i = 0; i < sc.probes.size(); ++i) {
        const ProbeRequest& req = sc.probes[i];
        mpq_class margin = margin_override ? *margin_override : req.margin ? *req.margin : sc.margin;
        ordered_json r = run_one(sc, req, margin, exec, rep.expectations_met);
        ordered_json entry;
        entry["index"] = i;
        for (auto& [k, v] : r.items()) entry[k] = v;
        probes.push_back(std::move(entry));
    }
    j["probes"] = std::move(probes);
    j["expectations_met"] = rep.expectations_met;
    return rep;
}

std::string report_text(const ordered_json& report) {
    std::ostringstream os;
    os << "scenario " << report["scenario"].get<std::string>() << " over " << report["field"].get<std::string>()
       << "\n";
    auto list = [&](const char* label, const ordered_json& xs) {
        if (xs.empty()) return;
        os << "    " << label << ":\n";
        for (const auto& x : xs) os << "      " << x.get<std::string>() << "\n";
    };
    for (const auto& p : report["probes"]) {
        os << "[" << p["index"].get<std::size_t>() << "] " << p["kind"].get<std::string>();
        if (p.contains("seed")) os << " seed " << p["seed"].get<std::string>();
        if (p.contains("verdict")) {
            os << ": " << p["verdict"].get<std::string>() << ", coverage " << p["coverage"].get<std::string>();
            if (p["window_restricted"].get<bool>()) os << ", window-restricted";
        } else if (p.contains("dimension")) {
            os << ": dimension " << p["dimension"].get<std::size_t>();
        } else if (p.contains("found")) {
            os << ": " << (p["found"].get<bool>() ? "nonzero determinant found" : "no nonzero determinant");
        }
        if (p.contains("matches")) os << (p["matches"].get<bool>() ? " [as expected]" : " [UNEXPECTED]");
        os << "\n";
        if (p.contains("basis")) list("basis", p["basis"]);
        if (p.contains("images")) list("images", p["images"]);
        if (p.contains("witness")) list("witness", p["witness"]);
        if (p.contains("unreached")) list("unreached", p["unreached"]);
        if (p.contains("determinant"))
            os << "    determinant: " << p["determinant"].get<std::string>() << "\n";
    }
    os << (report["expectations_met"].get<bool>() ? "all expectations met" : "some expectations NOT met") << "\n";
    return os.str();
}

}  // namespace weyl
