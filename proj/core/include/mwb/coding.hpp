#pragma once

#include <mwb/evaluator.hpp>

#include <map>
#include <utility>
#include <vector>

namespace mwb {

/// phi(x, y, z) with optional parameters; on A x B x C it should be the
/// graph of a bijection A x B -> C.
struct CodingTriple {
    NamedSubset A;
    NamedSubset B;
    NamedSubset C;
    PartitionedFormula phi;
    /// Values for phi.param_vars.
    Tuple params;
};

using ElementPair = std::pair<Element, Element>;

struct BijectionCheck {
    bool ok = false;
    /// First violation found, empty when ok.
    std::string diagnosis;
    /// The function read off the solution set (first image per pair).
    std::map<ElementPair, Element> function;
};

/// Checks that `triples` (left, right, target) is the graph of a bijection
/// left x right -> target. Violations are reported in this order: size
/// mismatch, a pair with no image, a pair with two images, two pairs with
/// one image, a target with no preimage.
BijectionCheck check_bijection_graph(const std::vector<Element>& left, const std::vector<Element>& right,
                                     const std::vector<Element>& target, const std::vector<Tuple>& triples);

/// Throws Error when A, B and C overlap.
BijectionCheck verify_coding(const FiniteStructure& s, const CodingTriple& t);

/// A triple over a fresh structure: A, B, C laid out consecutively as unary
/// relations plus a ternary relation F listing f(a_i, b_j) = c_{i*|B|+j}.
/// phi is F(x,y,z).
struct CodingInstance {
    FiniteStructure structure;
    CodingTriple triple;
};

CodingInstance make_coding_instance(std::size_t a_size, std::size_t b_size);

/// Undirected simple graph; edges are stored once with u < v.
struct Graph {
    std::vector<Element> vertices;
    std::vector<ElementPair> edges;
};

/// Sorts and validates: no loops, no duplicate edges, endpoints among the
/// vertices.
Graph normalize_graph(Graph g);

struct GraphEncoding {
    /// s expanded by A, B (when absent), D and E.
    FiniteStructure expanded{1};
    NamedSubset D;
    NamedSubset E;
    /// Unordered pair {a1 < a2} -> its dedicated b.
    std::map<ElementPair, Element> pair_assignment;
    Formula edge_formula = top();
    /// The two free object variables of edge_formula.
    std::vector<std::string> edge_vars;
};

struct EncodingNames {
    std::string D = "D";
    std::string E = "E";
};

/// Pairs of A are taken in lexicographic order and each gets the next
/// unused b. Throws Error when the triple is not a coding, B is too
/// small, or the graph leaves A.
GraphEncoding encode_graph(const FiniteStructure& s, const CodingTriple& t, const Graph& g,
                           const EncodingNames& names = {});

/// Ordered pairs (u, v) satisfying the edge formula, lexicographic.
std::vector<ElementPair> defined_edges(const GraphEncoding& enc, const CodingTriple& t);

/// For each pair {a1, a2} of A, the number of b in B with f(a1, b) and
/// f(a2, b) both in D, counted by evaluation.
std::map<ElementPair, std::size_t> witness_counts(const GraphEncoding& enc, const CodingTriple& t);

/// forall w in witnesses. (psi(q, w) -> psi(p, w)), with psi's two object
/// variables renamed. Parameters of psi stay free.
Formula order_formula(const PartitionedFormula& psi, const std::string& witnesses, const std::string& p,
                      const std::string& q);

struct DefinableOrder {
    Formula formula = top();
    std::vector<std::string> vars;
    std::vector<ElementPair> relation;
    bool total = false;
    /// A listed from least to greatest; filled only when total.
    std::vector<Element> chain;
};

/// The relation (p, q) on A defined by order_formula over B.
DefinableOrder definable_order(const FiniteStructure& s, const std::string& A, const std::string& B,
                               const PartitionedFormula& psi, const Tuple& params = {});

struct DefinableEquivalence {
    Formula formula = top();
    std::vector<std::string> vars;
    std::vector<ElementPair> relation;
    bool equivalence = false;
    /// Classes in order of least element; filled only when an equivalence.
    std::vector<std::vector<Element>> classes;
};

/// exists w in B. (phi(p, w) & phi(q, w)) restricted to A.
DefinableEquivalence definable_equivalence(const FiniteStructure& s, const std::string& A, const std::string& B,
                                           const PartitionedFormula& phi, const Tuple& params = {});

/// c blocks of s marked points inside a linear order, separated by single
/// unmarked points, and the formula grouping marked points by block.
struct EquivEmbedding {
    std::size_t classes = 0;
    std::size_t class_size = 0;
    FiniteStructure order{1};
    Formula formula = top();
    std::vector<std::string> vars;
    /// Marked point -> element of make_equiv(classes, class_size).
    std::map<Element, Element> isomorphism;
};

EquivEmbedding embed_equiv_in_order(std::size_t classes, std::size_t class_size);

/// Evaluates the formula on all marked pairs and compares its image under
/// the isomorphism with make_equiv's relation tuple by tuple.
Verdict verify_equiv_embedding(const EquivEmbedding& e);

} // namespace mwb
