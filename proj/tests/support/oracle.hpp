#pragma once

// Test-only helpers. The evaluator here shares nothing with the library's
// evaluator beyond the syntax tree: relations are copied into std::set and
// quantifiers loop over the universe with no caching or guard tricks.

#include <mwb/evaluator.hpp>
#include <mwb/structure.hpp>

#include <random>
#include <set>

namespace mwb::oracle {

class NaiveModel {
public:
    explicit NaiveModel(const FiniteStructure& s);
    bool holds(const Formula& f, Assignment& a) const;
    std::set<Tuple> solutions(const Formula& f, const std::vector<std::string>& vars, Assignment partial = {}) const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::map<std::string, std::set<Tuple>> rels_;
};

bool naive_holds(const FiniteStructure& s, const Formula& f, Assignment a);

/// Random formula over one binary relation `rel` and variables `vars`,
/// quantifier depth at most `qdepth`, at most `size` connectives.
Formula random_formula(std::mt19937_64& rng, std::size_t qdepth, std::size_t size,
                       const std::vector<std::string>& vars = {"x", "y", "z"}, const std::string& rel = "R");

FiniteStructure random_structure(std::mt19937_64& rng, std::size_t n,
                                 const std::vector<std::pair<std::string, std::size_t>>& signature, double density);

/// Up to `max_size` random k-tuples (duplicates dropped).
Relation random_relation(std::mt19937_64& rng, std::size_t n, std::size_t k, std::size_t max_size);

/// Random relation in which no element lies in more than `m` tuples.
Relation random_bounded_relation(std::mt19937_64& rng, std::size_t n, std::size_t k, std::size_t m,
                                 std::size_t attempts);

Permutation random_permutation(std::mt19937_64& rng, std::size_t n);

std::size_t count_occurrences(const std::vector<Tuple>& ts, Element e);

/// Multiplicity by brute force.
std::size_t naive_multiplicity(const std::vector<Tuple>& ts, std::size_t n);

} // namespace mwb::oracle
