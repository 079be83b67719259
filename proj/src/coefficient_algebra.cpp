#include "weyl/coefficient_algebra.hpp"

#include <algorithm>
#include <cctype>

#include "weyl/error.hpp"

namespace weyl {

// --- Monomial ---------------------------------------------------------------

Monomial Monomial::variable(VarId v, std::int32_t exponent) {
    Monomial m;
    if (exponent != 0) m.entries_.emplace_back(v, exponent);
    return m;
}

std::int32_t Monomial::exponent(VarId v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const Entry& e, VarId id) { return e.first < id; });
    return it != entries_.end() && it->first == v ? it->second : 0;
}

std::int64_t Monomial::abs_degree() const {
    std::int64_t d = 0;
    for (const auto& [v, e] : entries_) d += e < 0 ? -std::int64_t{e} : e;
    return d;
}

Monomial Monomial::shifted(VarId v, std::int32_t delta) const {
    return *this * variable(v, delta);
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto i = a.entries_.begin(), j = b.entries_.begin();
    while (i != a.entries_.end() || j != b.entries_.end()) {
        if (j == b.entries_.end() || (i != a.entries_.end() && i->first < j->first)) {
            out.entries_.push_back(*i++);
        } else if (i == a.entries_.end() || j->first < i->first) {
            out.entries_.push_back(*j++);
        } else {
            std::int32_t e = i->second + j->second;
            if (e != 0) out.entries_.emplace_back(i->first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.abs_degree(), db = b.abs_degree();
    if (da != db) return da < db;
    auto ea = a.entries(), eb = b.entries();
    auto i = ea.begin(), j = eb.begin();
    while (i != ea.end() || j != eb.end()) {
        VarId v;
        std::int32_t x, y;
        if (j == eb.end() || (i != ea.end() && i->first < j->first)) {
            v = i->first, x = i->second, y = 0, ++i;
        } else if (i == ea.end() || j->first < i->first) {
            v = j->first, x = 0, y = j->second, ++j;
        } else {
            v = i->first, x = i->second, y = j->second, ++i, ++j;
        }
        (void)v;
        if (x != y) return x < y;
    }
    return false;
}

// --- AElement ---------------------------------------------------------------

AElement AElement::constant(const Scalar& c) { return term(c, Monomial{}); }

AElement AElement::term(const Scalar& c, Monomial m) {
    AElement u;
    if (!c.is_zero()) u.terms_.emplace(std::move(m), c);
    return u;
}

const Scalar* AElement::find(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
}

void AElement::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

AElement& AElement::operator+=(const AElement& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

AElement& AElement::operator-=(const AElement& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

AElement AElement::operator-() const {
    AElement out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

AElement operator*(const AElement& a, const AElement& b) {
    AElement out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
}

AElement operator*(const Scalar& c, const AElement& u) {
    AElement out;
    if (c.is_zero()) return out;
    for (const auto& [m, cu] : u.terms_) out.terms_.emplace_hint(out.terms_.end(), m, c * cu);
    return out;
}

// --- Derivation -------------------------------------------------------------

bool Derivation::covers(const Context& ctx, VarId v) const {
    if (images_.count(v)) return true;
    const auto& spec = ctx.variable(v);
    return shift_ && spec.family && *spec.family == shift_->family;
}

AElement Derivation::image(const Context& ctx, VarId v) const {
    if (auto it = images_.find(v); it != images_.end()) return it->second;
    const auto& spec = ctx.variable(v);
    if (shift_ && spec.family && *spec.family == shift_->family) {
        VarId next = ctx.family_member(shift_->family, spec.family_member + shift_->step);
        return AElement::term(ctx.one(), Monomial::variable(next));
    }
    throw UsageError("derivation " + name_ + " does not cover variable " + spec.name);
}

// --- Context ----------------------------------------------------------------

Context::Context(FieldSpec field, std::size_t variable_cap)
    : field_(field), cap_(variable_cap), vars_(new VariableSpec[variable_cap]) {}

const VariableSpec& Context::variable(VarId v) const {
    if (v >= variable_count()) throw UsageError("unknown variable id " + std::to_string(v));
    return vars_[v];
}

VarId Context::push_variable(VariableSpec spec) const {
    std::size_t n = count_.load(std::memory_order_relaxed);
    if (n >= cap_)
        throw UsageError("variable cap of " + std::to_string(cap_) + " exceeded creating " + spec.name);
    if (by_name_.count(spec.name)) throw UsageError("duplicate variable name " + spec.name);
    spec.declaration_index = static_cast<std::uint32_t>(n);
    by_name_.emplace(spec.name, static_cast<VarId>(n));
    if (spec.family) families_[*spec.family][spec.family_member] = static_cast<VarId>(n);
    vars_[n] = std::move(spec);
    count_.store(n + 1, std::memory_order_release);
    return static_cast<VarId>(n);
}

VarId Context::add_variable(const std::string& name, VarKind kind) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
        throw UsageError("invalid variable name '" + name + "'");
    if (find_derivation(name)) throw UsageError("name " + name + " already names a derivation");
    std::lock_guard lock(mutex_);
    VariableSpec spec;
    spec.name = name;
    spec.kind = kind;
    return push_variable(std::move(spec));
}

namespace {

std::optional<std::uint32_t> member_index(const std::string& name, const std::string& family) {
    if (name.size() <= family.size() || name.compare(0, family.size(), family) != 0) return std::nullopt;
    std::uint32_t idx = 0;
    for (std::size_t i = family.size(); i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
        idx = idx * 10 + static_cast<std::uint32_t>(name[i] - '0');
        if (idx > 1'000'000) return std::nullopt;
    }
    if (name[family.size()] == '0') return std::nullopt;
    return idx;
}

}  // namespace

std::size_t Context::add_derivation(Derivation d) {
    if (d.name().empty() || !std::isalpha(static_cast<unsigned char>(d.name().front())))
        throw UsageError("invalid derivation name '" + d.name() + "'");
    if (find_derivation(d.name())) throw UsageError("duplicate derivation name " + d.name());
    std::lock_guard lock(mutex_);
    if (by_name_.count(d.name())) throw UsageError("name " + d.name() + " already names a variable");
    if (d.shift()) {
        const auto& fam = d.shift()->family;
        if (d.shift()->step == 0) throw UsageError("shift step must be positive");
        if (!families_.count(fam)) {
            std::size_t n = count_.load();
            for (std::size_t v = 0; v < n; ++v) {
                if (auto idx = member_index(vars_[v].name, fam)) {
                    vars_[v].family = fam;
                    vars_[v].family_member = *idx;
                    families_[fam][*idx] = static_cast<VarId>(v);
                    family_kind_.try_emplace(fam, vars_[v].kind);
                }
            }
            if (!families_.count(fam))
                throw UsageError("shift family " + fam + " has no declared member (e.g. " + fam + "1)");
        }
    }
    derivations_.push_back(std::move(d));
    return derivations_.size() - 1;
}

VarId Context::family_member(const std::string& family, std::uint32_t index) const {
    std::lock_guard lock(mutex_);
    auto fit = families_.find(family);
    if (fit == families_.end()) throw UsageError("unknown shift family " + family);
    if (auto it = fit->second.find(index); it != fit->second.end()) return it->second;
    auto kind_it = family_kind_.find(family);
    VarKind kind = kind_it == family_kind_.end() ? VarKind::polynomial : kind_it->second;
    std::uint32_t start = fit->second.rbegin()->first + 1;
    if (index < start) start = index;
    VarId last = 0;
    for (std::uint32_t i = start; i <= index; ++i) {
        if (fit->second.count(i)) continue;
        VariableSpec spec;
        spec.name = family + std::to_string(i);
        spec.kind = kind;
        spec.family = family;
        spec.family_member = i;
        spec.implicit = true;
        last = push_variable(std::move(spec));
    }
    return last;
}

std::optional<VarId> Context::find_variable(const std::string& name) const {
    {
        std::lock_guard lock(mutex_);
        if (auto it = by_name_.find(name); it != by_name_.end()) return it->second;
    }
    std::vector<std::string> fams;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [f, members] : families_) fams.push_back(f);
    }
    for (const auto& f : fams)
        if (auto idx = member_index(name, f)) return family_member(f, *idx);
    return std::nullopt;
}

std::optional<std::size_t> Context::find_derivation(const std::string& name) const {
    for (std::size_t i = 0; i < derivations_.size(); ++i)
        if (derivations_[i].name() == name) return i;
    return std::nullopt;
}

std::vector<VarId> all_variables(const Context& ctx) {
    std::vector<VarId> out(ctx.variable_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<VarId>(i);
    return out;
}

std::vector<VarId> declared_variables(const Context& ctx) {
    std::vector<VarId> out;
    for (std::size_t i = 0; i < ctx.variable_count(); ++i)
        if (!ctx.variable(static_cast<VarId>(i)).implicit) out.push_back(static_cast<VarId>(i));
    return out;
}

// --- derivation action ------------------------------------------------------

AElement apply_derivation(const Context& ctx, const Derivation& d, const AElement& u) {
    AElement out;
    for (const auto& [m, c] : u.terms()) {
        for (const auto& [v, e] : m.entries()) {
            AElement img = d.image(ctx, v);
            if (img.is_zero()) continue;
            Scalar coef = c * Scalar::from_int(e, ctx.field());
            if (coef.is_zero()) continue;
            Monomial rest = m.shifted(v, -1);
            for (const auto& [mi, ci] : img.terms()) out.add_term(rest * mi, coef * ci);
        }
    }
    return out;
}

AElement apply_derivation(const Context& ctx, std::size_t d, const AElement& u) {
    return apply_derivation(ctx, ctx.derivation(d), u);
}

bool check_commuting(const Context& ctx, const Derivation& d1, const Derivation& d2,
                     std::span<const VarId> vars) {
    for (VarId v : vars) {
        AElement x = AElement::term(ctx.one(), Monomial::variable(v));
        AElement a = apply_derivation(ctx, d1, apply_derivation(ctx, d2, x));
        AElement b = apply_derivation(ctx, d2, apply_derivation(ctx, d1, x));
        if (!(a == b)) return false;
    }
    return true;
}

// --- printing ---------------------------------------------------------------

std::string to_string(const Context& ctx, const Monomial& m) {
    if (m.is_one()) return "1";
    std::string out;
    for (const auto& [v, e] : m.entries()) {
        if (!out.empty()) out += '*';
        out += ctx.variable(v).name;
        if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
}

std::string term_to_string(const Context& ctx, const Scalar& c, const Monomial& m) {
    if (m.is_one()) return c.to_string();
    if (c.is_one()) return to_string(ctx, m);
    if ((-c).is_one() && c.field().is_rational()) return "-" + to_string(ctx, m);
    return c.to_string() + "*" + to_string(ctx, m);
}

std::string join_signed(const std::vector<std::string>& parts) {
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (!parts[i].empty() && parts[i].front() == '-')
            out += " - " + parts[i].substr(1);
        else
            out += " + " + parts[i];
    }
    return out;
}

std::string to_string(const Context& ctx, const AElement& u) {
    std::vector<std::string> parts;
    for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it)
        parts.push_back(term_to_string(ctx, it->second, it->first));
    return join_signed(parts);
}

}  // namespace weyl
