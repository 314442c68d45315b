#include <mwb/evaluator.hpp>

#include <algorithm>
#include <limits>

namespace mwb {

namespace {

constexpr std::size_t kMemoLimit = std::size_t{1} << 20;

enum class Op : std::uint8_t { Atom, Eq, Const, Not, And, Or, Implies, Iff, Exists, Forall };

struct Node {
    Op op = Op::Const;
    bool value = false;
    const Relation* rel = nullptr;
    std::vector<std::uint32_t> args;
    std::uint32_t bound = 0;
    std::vector<std::uint32_t> kids;
    const Relation* guard = nullptr;
    std::vector<std::uint32_t> free_slots;
    bool quantified = false;
    bool memoizable = false;
    std::vector<std::uint8_t> memo; // 0 unknown, 1 false, 2 true
};

} // namespace

struct Evaluator::Impl {
    const FiniteStructure* structure;
    std::size_t n;
    std::vector<std::string> variables;
    std::vector<Node> nodes;
    std::uint32_t root = 0;
    std::vector<Element> env;
    std::vector<Element> scratch;
    std::uint64_t invocations = 0;
    std::uint32_t slot_count = 0;

    std::uint32_t compile(const Formula& f, std::vector<std::pair<std::string, std::uint32_t>>& scope) {
        auto lookup = [&](const std::string& v) -> std::uint32_t {
            for (auto it = scope.rbegin(); it != scope.rend(); ++it)
                if (it->first == v) return it->second;
            throw EvalError("no value assigned to free variable '" + v + "'");
        };
        Node node;
        switch (f.kind()) {
        case FormulaKind::Atom: {
            node.op = Op::Atom;
            node.rel = structure->find_relation(f.name());
            if (!node.rel) throw EvalError("unknown relation '" + f.name() + "'");
            if (node.rel->arity() != f.args().size())
                throw EvalError("relation '" + f.name() + "' has arity " + std::to_string(node.rel->arity()) +
                                " but is applied to " + std::to_string(f.args().size()) + " arguments");
            for (const auto& a : f.args()) node.args.push_back(lookup(a));
            node.free_slots = node.args;
            break;
        }
        case FormulaKind::Equal:
            node.op = Op::Eq;
            node.args = {lookup(f.args()[0]), lookup(f.args()[1])};
            node.free_slots = node.args;
            break;
        case FormulaKind::Constant:
            node.op = Op::Const;
            node.value = f.value();
            break;
        case FormulaKind::Not:
            node.op = Op::Not;
            node.kids.push_back(compile(f.body(), scope));
            break;
        case FormulaKind::And:
        case FormulaKind::Or: {
            node.op = f.kind() == FormulaKind::And ? Op::And : Op::Or;
            // Flatten left-nested chains of the same connective.
            std::vector<const Formula*> stack{&f};
            std::vector<const Formula*> leaves;
            while (!stack.empty()) {
                const Formula* g = stack.back();
                stack.pop_back();
                if (g->kind() == f.kind()) {
                    stack.push_back(&g->rhs());
                    stack.push_back(&g->lhs());
                } else {
                    leaves.push_back(g);
                }
            }
            for (const Formula* g : leaves) node.kids.push_back(compile(*g, scope));
            break;
        }
        case FormulaKind::Implies:
        case FormulaKind::Iff:
            node.op = f.kind() == FormulaKind::Implies ? Op::Implies : Op::Iff;
            node.kids.push_back(compile(f.lhs(), scope));
            node.kids.push_back(compile(f.rhs(), scope));
            break;
        case FormulaKind::Exists:
        case FormulaKind::Forall: {
            node.op = f.kind() == FormulaKind::Exists ? Op::Exists : Op::Forall;
            node.bound = slot_count++;
            scope.emplace_back(f.name(), node.bound);
            node.kids.push_back(compile(f.body(), scope));
            scope.pop_back();
            node.quantified = true;
            break;
        }
        }
        for (std::uint32_t k : node.kids) {
            const Node& kid = nodes[k];
            node.quantified = node.quantified || kid.quantified;
            for (std::uint32_t s : kid.free_slots)
                if (!(node.op == Op::Exists || node.op == Op::Forall) || s != node.bound) node.free_slots.push_back(s);
        }
        std::sort(node.free_slots.begin(), node.free_slots.end());
        node.free_slots.erase(std::unique(node.free_slots.begin(), node.free_slots.end()), node.free_slots.end());
        if (node.op == Op::Exists || node.op == Op::Forall) node.guard = find_guard(node);
        if (node.quantified) {
            std::size_t cells = 1;
            bool fits = true;
            for (std::size_t i = 0; i < node.free_slots.size() && fits; ++i) {
                if (cells > kMemoLimit / std::max<std::size_t>(n, 1)) fits = false;
                cells *= n;
            }
            node.memoizable = fits && cells <= kMemoLimit;
        }
        nodes.push_back(std::move(node));
        return static_cast<std::uint32_t>(nodes.size() - 1);
    }

    const Relation* unary_guard_on(std::uint32_t id, std::uint32_t slot) const {
        const Node& g = nodes[id];
        if (g.op == Op::Atom && g.rel->arity() == 1 && g.args[0] == slot) return g.rel;
        if (g.op == Op::And) {
            const Relation* best = nullptr;
            for (std::uint32_t k : g.kids) {
                const Node& c = nodes[k];
                if (c.op == Op::Atom && c.rel->arity() == 1 && c.args[0] == slot &&
                    (!best || c.rel->size() < best->size()))
                    best = c.rel;
            }
            return best;
        }
        return nullptr;
    }

    const Relation* find_guard(const Node& q) const {
        const Node& body = nodes[q.kids[0]];
        if (q.op == Op::Exists) return unary_guard_on(q.kids[0], q.bound);
        if (body.op == Op::Implies) return unary_guard_on(body.kids[0], q.bound);
        return nullptr;
    }

    bool eval(std::uint32_t id) {
        Node& node = nodes[id];
        std::size_t cell = 0;
        if (node.memoizable) {
            for (std::uint32_t s : node.free_slots) cell = cell * n + env[s];
            if (node.memo.empty()) {
                std::size_t cells = 1;
                for (std::size_t i = 0; i < node.free_slots.size(); ++i) cells *= n;
                node.memo.assign(cells, 0);
            }
            if (std::uint8_t m = node.memo[cell]) return m == 2;
        }
        bool result = compute(node);
        if (node.memoizable) nodes[id].memo[cell] = result ? 2 : 1;
        return result;
    }

    bool compute(const Node& node) {
        switch (node.op) {
        case Op::Atom: {
            const std::size_t k = node.args.size();
            for (std::size_t i = 0; i < k; ++i) scratch[i] = env[node.args[i]];
            return node.rel->contains(std::span<const Element>(scratch.data(), k));
        }
        case Op::Eq:
            return env[node.args[0]] == env[node.args[1]];
        case Op::Const:
            return node.value;
        case Op::Not:
            return !eval(node.kids[0]);
        case Op::And:
            for (std::uint32_t k : node.kids)
                if (!eval(k)) return false;
            return true;
        case Op::Or:
            for (std::uint32_t k : node.kids)
                if (eval(k)) return true;
            return false;
        case Op::Implies:
            return !eval(node.kids[0]) || eval(node.kids[1]);
        case Op::Iff:
            return eval(node.kids[0]) == eval(node.kids[1]);
        case Op::Exists:
        case Op::Forall: {
            const bool want = node.op == Op::Exists;
            const std::uint32_t body = node.kids[0];
            const std::uint32_t slot = node.bound;
            if (node.guard) {
                for (Element e : node.guard->flat()) {
                    env[slot] = e;
                    if (eval(body) == want) return want;
                }
            } else {
                for (Element e = 0; e < n; ++e) {
                    env[slot] = e;
                    if (eval(body) == want) return want;
                }
            }
            return !want;
        }
        }
        return false;
    }
};

Evaluator::Evaluator(const FiniteStructure& s, const Formula& f, std::vector<std::string> variables)
    : impl_(std::make_unique<Impl>()) {
    impl_->structure = &s;
    impl_->n = s.universe_size();
    impl_->variables = std::move(variables);
    std::vector<std::pair<std::string, std::uint32_t>> scope;
    for (const auto& v : impl_->variables) {
        for (const auto& [name, slot] : scope)
            if (name == v) throw EvalError("variable '" + v + "' listed twice");
        scope.emplace_back(v, impl_->slot_count++);
    }
    impl_->root = impl_->compile(f, scope);
    impl_->env.assign(impl_->slot_count, 0);
    std::size_t max_arity = 1;
    for (const auto& node : impl_->nodes) max_arity = std::max(max_arity, node.args.size());
    impl_->scratch.assign(max_arity, 0);
}

Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;

bool Evaluator::operator()(std::span<const Element> values) {
    if (values.size() != impl_->variables.size())
        throw EvalError("expected " + std::to_string(impl_->variables.size()) + " values, got " +
                        std::to_string(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= impl_->n)
            throw EvalError("value " + std::to_string(values[i]) + " for '" + impl_->variables[i] +
                            "' is outside the universe");
        impl_->env[i] = values[i];
    }
    ++impl_->invocations;
    return impl_->eval(impl_->root);
}

bool Evaluator::evaluate(const Assignment& a) {
    std::vector<Element> values;
    values.reserve(impl_->variables.size());
    for (const auto& v : impl_->variables) {
        auto it = a.find(v);
        if (it == a.end()) throw EvalError("no value assigned to variable '" + v + "'");
        values.push_back(it->second);
    }
    return (*this)(values);
}

const std::vector<std::string>& Evaluator::variables() const noexcept { return impl_->variables; }
std::uint64_t Evaluator::invocations() const noexcept { return impl_->invocations; }

bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& a) {
    std::vector<std::string> vars;
    std::vector<Element> values;
    for (const auto& [name, value] : a) {
        vars.push_back(name);
        values.push_back(value);
    }
    Evaluator ev(s, f, std::move(vars));
    return ev(values);
}

std::vector<Tuple> solution_set(const FiniteStructure& s, const Formula& f, const std::vector<std::string>& vars,
                                const Assignment& partial) {
    std::vector<std::string> slots = vars;
    std::vector<Element> values(vars.size(), 0);
    for (const auto& [name, value] : partial) {
        if (std::find(vars.begin(), vars.end(), name) != vars.end())
            throw EvalError("variable '" + name + "' is both enumerated and fixed");
        slots.push_back(name);
        values.push_back(value);
    }
    Evaluator ev(s, f, std::move(slots));
    const std::size_t n = s.universe_size();
    const std::size_t k = vars.size();
    std::vector<Tuple> out;
    while (true) {
        if (ev(values)) out.emplace_back(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k));
        std::size_t pos = k;
        while (pos > 0) {
            --pos;
            if (++values[pos] < n) break;
            values[pos] = 0;
            if (pos == 0) return out;
        }
        if (k == 0) return out;
    }
}

} // namespace mwb
