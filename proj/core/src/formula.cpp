#include <mwb/formula.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace mwb {

struct Formula::Node {
    FormulaKind kind;
    std::string name;
    std::vector<std::string> args;
    bool value = false;
    std::vector<Formula> children;
};

Formula Formula::atom(std::string relation, std::vector<std::string> args) {
    if (!is_identifier(relation)) throw Error("invalid relation symbol '" + relation + "'");
    if (args.empty()) throw Error("atom '" + relation + "' needs at least one argument");
    for (const auto& a : args)
        if (!is_identifier(a)) throw Error("invalid variable name '" + a + "'");
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(relation), std::move(args), false, {}}));
}

Formula Formula::equal(std::string lhs, std::string rhs) {
    if (!is_identifier(lhs) || !is_identifier(rhs)) throw Error("invalid variable name in equality");
    return Formula(std::make_shared<const Node>(
        Node{FormulaKind::Equal, {}, {std::move(lhs), std::move(rhs)}, false, {}}));
}

Formula Formula::constant(bool value) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Constant, {}, {}, value, {}}));
}

Formula Formula::negation(Formula f) {
    return Formula(std::make_shared<const Node>(Node{FormulaKind::Not, {}, {}, false, {std::move(f)}}));
}

Formula Formula::binary(FormulaKind kind, Formula lhs, Formula rhs) {
    if (kind != FormulaKind::And && kind != FormulaKind::Or && kind != FormulaKind::Implies &&
        kind != FormulaKind::Iff)
        throw Error("not a binary connective");
    return Formula(std::make_shared<const Node>(Node{kind, {}, {}, false, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::quantifier(FormulaKind kind, std::string var, Formula body) {
    if (kind != FormulaKind::Exists && kind != FormulaKind::Forall) throw Error("not a quantifier");
    if (!is_identifier(var)) throw Error("invalid variable name '" + var + "'");
    return Formula(std::make_shared<const Node>(Node{kind, std::move(var), {}, false, {std::move(body)}}));
}

FormulaKind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }
const std::vector<std::string>& Formula::args() const noexcept { return node_->args; }
bool Formula::value() const noexcept { return node_->value; }
std::size_t Formula::child_count() const noexcept { return node_->children.size(); }
const Formula& Formula::child(std::size_t i) const { return node_->children.at(i); }

bool Formula::is_binary() const noexcept {
    auto k = kind();
    return k == FormulaKind::And || k == FormulaKind::Or || k == FormulaKind::Implies || k == FormulaKind::Iff;
}

namespace {

void collect_free(const Formula& f, std::multiset<std::string>& bound, std::set<std::string>& out) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equal:
        for (const auto& v : f.args())
            if (!bound.count(v)) out.insert(v);
        return;
    case FormulaKind::Constant:
        return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        auto it = bound.insert(f.name());
        collect_free(f.body(), bound, out);
        bound.erase(it);
        return;
    }
    default:
        for (std::size_t i = 0; i < f.child_count(); ++i) collect_free(f.child(i), bound, out);
    }
}

const char* connective(FormulaKind k) {
    switch (k) {
    case FormulaKind::And: return " & ";
    case FormulaKind::Or: return " | ";
    case FormulaKind::Implies: return " -> ";
    case FormulaKind::Iff: return " <-> ";
    default: return "";
    }
}

void print(const Formula& f, std::ostream& out, bool nested) {
    switch (f.kind()) {
    case FormulaKind::Atom:
        out << f.name() << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) out << (i ? "," : "") << f.args()[i];
        out << ')';
        return;
    case FormulaKind::Equal:
        out << f.args()[0] << " = " << f.args()[1];
        return;
    case FormulaKind::Constant:
        out << (f.value() ? "true" : "false");
        return;
    case FormulaKind::Not: {
        out << '!';
        const Formula& c = f.body();
        bool wrap = c.kind() == FormulaKind::Equal || c.is_binary() || c.is_quantifier();
        if (wrap) out << '(';
        print(c, out, false);
        if (wrap) out << ')';
        return;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall:
        if (nested) out << '(';
        out << (f.kind() == FormulaKind::Exists ? "exists " : "forall ") << f.name() << ". ";
        print(f.body(), out, false);
        if (nested) out << ')';
        return;
    default:
        if (nested) out << '(';
        print(f.lhs(), out, true);
        out << connective(f.kind());
        print(f.rhs(), out, true);
        if (nested) out << ')';
    }
}

} // namespace

std::set<std::string> Formula::free_variables() const {
    std::multiset<std::string> bound;
    std::set<std::string> out;
    collect_free(*this, bound, out);
    return out;
}

std::set<std::string> Formula::all_variables() const {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (f.kind() == FormulaKind::Atom || f.kind() == FormulaKind::Equal)
            out.insert(f.args().begin(), f.args().end());
        if (f.is_quantifier()) out.insert(f.name());
        for (std::size_t i = 0; i < f.child_count(); ++i) walk(f.child(i));
    };
    walk(*this);
    return out;
}

std::set<std::string> Formula::relation_symbols() const {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
        if (f.kind() == FormulaKind::Atom) out.insert(f.name());
        for (std::size_t i = 0; i < f.child_count(); ++i) walk(f.child(i));
    };
    walk(*this);
    return out;
}

std::size_t Formula::quantifier_depth() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < child_count(); ++i) d = std::max(d, child(i).quantifier_depth());
    return d + (is_quantifier() ? 1 : 0);
}

std::size_t Formula::node_count() const {
    std::size_t c = 1;
    for (std::size_t i = 0; i < child_count(); ++i) c += child(i).node_count();
    return c;
}

std::string Formula::to_string() const {
    std::ostringstream out;
    print(*this, out, false);
    return out.str();
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.args() != b.args() || a.value() != b.value() ||
        a.child_count() != b.child_count())
        return false;
    for (std::size_t i = 0; i < a.child_count(); ++i)
        if (!(a.child(i) == b.child(i))) return false;
    return true;
}

// ------------------------------------------------------------------ helpers

Formula atom(std::string relation, std::vector<std::string> args) {
    return Formula::atom(std::move(relation), std::move(args));
}
Formula eq(std::string lhs, std::string rhs) { return Formula::equal(std::move(lhs), std::move(rhs)); }
Formula top() { return Formula::constant(true); }
Formula bottom() { return Formula::constant(false); }
Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(Formula a, Formula b) { return Formula::binary(FormulaKind::And, std::move(a), std::move(b)); }
Formula disj(Formula a, Formula b) { return Formula::binary(FormulaKind::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return Formula::binary(FormulaKind::Implies, std::move(a), std::move(b)); }
Formula iff(Formula a, Formula b) { return Formula::binary(FormulaKind::Iff, std::move(a), std::move(b)); }
Formula exists(std::string var, Formula body) {
    return Formula::quantifier(FormulaKind::Exists, std::move(var), std::move(body));
}
Formula forall(std::string var, Formula body) {
    return Formula::quantifier(FormulaKind::Forall, std::move(var), std::move(body));
}

Formula conj(std::vector<Formula> parts) {
    if (parts.empty()) return top();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
    return acc;
}

Formula disj(std::vector<Formula> parts) {
    if (parts.empty()) return bottom();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
    return acc;
}

Formula exists_in(std::string var, const std::string& set, Formula body) {
    Formula guard = atom(set, {var});
    return exists(std::move(var), conj(guard, std::move(body)));
}

Formula forall_in(std::string var, const std::string& set, Formula body) {
    Formula guard = atom(set, {var});
    return forall(std::move(var), implies(guard, std::move(body)));
}

std::string fresh_variable(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

namespace {

Formula rename_impl(const Formula& f, std::map<std::string, std::string> renaming) {
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Equal: {
        std::vector<std::string> args = f.args();
        for (auto& a : args) {
            auto it = renaming.find(a);
            if (it != renaming.end()) a = it->second;
        }
        return f.kind() == FormulaKind::Atom ? atom(f.name(), std::move(args)) : eq(args[0], args[1]);
    }
    case FormulaKind::Constant:
        return f;
    case FormulaKind::Not:
        return neg(rename_impl(f.body(), std::move(renaming)));
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
        std::string var = f.name();
        renaming.erase(var);
        if (renaming.empty()) return f;
        std::set<std::string> targets;
        for (const auto& [from, to] : renaming) targets.insert(to);
        if (targets.count(var)) {
            // The bound name would capture a substituted variable.
            std::set<std::string> avoid = f.body().all_variables();
            avoid.insert(targets.begin(), targets.end());
            for (const auto& [from, to] : renaming) avoid.insert(from);
            std::string fresh = fresh_variable(var, avoid);
            renaming[var] = fresh;
            var = fresh;
        }
        return Formula::quantifier(f.kind(), var, rename_impl(f.body(), std::move(renaming)));
    }
    default:
        return Formula::binary(f.kind(), rename_impl(f.lhs(), renaming), rename_impl(f.rhs(), renaming));
    }
}

} // namespace

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming) {
    std::map<std::string, std::string> effective;
    for (const auto& [from, to] : renaming)
        if (from != to) effective.emplace(from, to);
    if (effective.empty()) return f;
    return rename_impl(f, std::move(effective));
}

PartitionedFormula::PartitionedFormula(Formula f, std::vector<std::string> objects, std::vector<std::string> params)
    : formula(std::move(f)), object_vars(std::move(objects)), param_vars(std::move(params)) {
    std::set<std::string> seen;
    for (const auto& v : object_vars)
        if (!seen.insert(v).second) throw Error("variable '" + v + "' listed twice in the partition");
    for (const auto& v : param_vars)
        if (!seen.insert(v).second) throw Error("variable '" + v + "' listed twice in the partition");
    for (const auto& v : formula.free_variables())
        if (!seen.count(v)) throw Error("free variable '" + v + "' is in neither the object nor the parameter block");
}

} // namespace mwb
