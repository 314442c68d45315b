#pragma once

#include <mwb/common.hpp>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace mwb {

enum class FormulaKind { Atom, Equal, Constant, Not, And, Or, Implies, Iff, Exists, Forall };

/// Immutable first-order syntax tree. Copies share structure.
///
/// Binary connectives are stored as written (And/Or are left-nested, Implies
/// right-nested), so parse(to_string(f)) == f.
class Formula {
public:
    static Formula atom(std::string relation, std::vector<std::string> args);
    static Formula equal(std::string lhs, std::string rhs);
    static Formula constant(bool value);
    static Formula negation(Formula f);
    static Formula binary(FormulaKind kind, Formula lhs, Formula rhs);
    static Formula quantifier(FormulaKind kind, std::string var, Formula body);

    FormulaKind kind() const noexcept;
    /// Relation symbol (Atom) or bound variable (Exists/Forall).
    const std::string& name() const noexcept;
    /// Atom arguments, or the two sides of an equality.
    const std::vector<std::string>& args() const noexcept;
    bool value() const noexcept;
    std::size_t child_count() const noexcept;
    const Formula& child(std::size_t i) const;
    const Formula& lhs() const { return child(0); }
    const Formula& rhs() const { return child(1); }
    const Formula& body() const { return child(0); }

    bool is_quantifier() const noexcept {
        return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall;
    }
    bool is_binary() const noexcept;

    std::set<std::string> free_variables() const;
    /// Every variable name occurring anywhere (free, bound or binding).
    std::set<std::string> all_variables() const;
    std::set<std::string> relation_symbols() const;
    std::size_t quantifier_depth() const;
    std::size_t node_count() const;

    std::string to_string() const;

    friend bool operator==(const Formula& a, const Formula& b);
    friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Construction helpers; conj/disj of an empty list give true/false.
Formula atom(std::string relation, std::vector<std::string> args);
Formula eq(std::string lhs, std::string rhs);
Formula top();
Formula bottom();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula conj(std::vector<Formula> parts);
Formula disj(Formula a, Formula b);
Formula disj(std::vector<Formula> parts);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
Formula exists(std::string var, Formula body);
Formula forall(std::string var, Formula body);
/// exists var. (set(var) & body)
Formula exists_in(std::string var, const std::string& set, Formula body);
/// forall var. (set(var) -> body)
Formula forall_in(std::string var, const std::string& set, Formula body);

/// A name based on `base` that is not in `avoid`.
std::string fresh_variable(const std::string& base, const std::set<std::string>& avoid);

/// Capture-avoiding renaming of free variables. Bound variables that would
/// capture a new name are renamed first.
Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming);

/// A formula with its free variables split into an object block x and a
/// parameter block y.
struct PartitionedFormula {
    Formula formula;
    std::vector<std::string> object_vars;
    std::vector<std::string> param_vars;

    /// Throws Error unless the blocks are disjoint, duplicate-free and
    /// together cover every free variable.
    PartitionedFormula(Formula f, std::vector<std::string> objects, std::vector<std::string> params);
};

} // namespace mwb
