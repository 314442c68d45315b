#pragma once

#include <mwb/formula.hpp>
#include <mwb/structure.hpp>

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace mwb {

using Assignment = std::map<std::string, Element>;

/// Raised for unknown relations, arity mismatches and missing or
/// out-of-range assignments.
class EvalError : public Error {
public:
    using Error::Error;
};

/// Tarski satisfaction for one (structure, formula) pair, compiled once and
/// queried many times.
///
/// Variables are bound to slots in the order given at construction; every
/// free variable of the formula must be among them. Quantified subformulas
/// are memoized on the values of their free variables, and a quantifier
/// whose body starts with a unary guard (`exists y. (B(y) & ..)`,
/// `forall y. (B(y) -> ..)`) only ranges over the guard's members. Caches
/// live in the evaluator, so one instance must not be shared across threads.
class Evaluator {
public:
    /// Keeps a reference to `s`, which must outlive the evaluator.
    Evaluator(const FiniteStructure& s, const Formula& f, std::vector<std::string> variables);
    Evaluator(FiniteStructure&&, const Formula&, std::vector<std::string>) = delete;
    ~Evaluator();
    Evaluator(Evaluator&&) noexcept;
    Evaluator& operator=(Evaluator&&) noexcept;

    /// `values[i]` is the value of `variables()[i]`.
    bool operator()(std::span<const Element> values);
    bool operator()(std::initializer_list<Element> values) {
        return (*this)(std::span<const Element>(values.begin(), values.size()));
    }
    bool evaluate(const Assignment& a);

    const std::vector<std::string>& variables() const noexcept;
    /// Number of satisfaction queries answered so far.
    std::uint64_t invocations() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// s |= f[a]. Every free variable of f must be assigned.
bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& a);

/// All tuples t over the universe (lexicographic order) such that
/// s |= f[partial, vars := t].
std::vector<Tuple> solution_set(const FiniteStructure& s, const Formula& f,
                                const std::vector<std::string>& vars, const Assignment& partial = {});

} // namespace mwb
