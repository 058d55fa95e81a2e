#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "csb/countable.hpp"
#include "csb/csb_engine.hpp"

namespace csb::catalog {

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

/// "trivial", "Z<k>", "Z2xZ2", "S3", "D<n>"; products with 'x'.
/// Throws std::invalid_argument for unknown names.
FiniteGroup group_by_name(const std::string& name);

/// trivial, Z2, Z3, Z4, Z2xZ2, Z6, S3, Z8.
std::vector<NamedGroup> default_pool();

Groupoid discrete(std::size_t n);
Groupoid delooping(const FiniteGroup& g);
Groupoid disjoint_union(const std::vector<Groupoid>& parts);
Groupoid n_copies(std::size_t n, const FiniteGroup& g);
/// One class of `objects` objects with automorphism group g.
Groupoid connected(std::size_t objects, const FiniteGroup& g);

/// Parses expressions such as "discrete(2)", "delooping(Z3)",
/// "n_copies(3,Z2)", "connected(2,S3)" and
/// "disjoint_union(discrete(1),delooping(S3))".
/// Throws std::invalid_argument for unknown kinds or bad arguments.
Groupoid build(const std::string& expr);

/// A groupoid assembled from connected blocks, remembering coordinates:
/// block b has objects 0..k-1 and morphisms (i, j, h) for h in its group,
/// composing as (j, l, h2) . (i, j, h1) = (i, l, h2 h1).
struct StructuredGroupoid {
    struct Block {
        FiniteGroup group;
        std::vector<ObjectIndex> objects;
        std::vector<MorphismIndex> morphisms;  ///< at (i * k + j) * |group| + h

        std::size_t size() const { return objects.size(); }
        MorphismIndex at(std::size_t i, std::size_t j, Element h) const {
            return morphisms[(i * size() + j) * group.order() + h];
        }
    };

    GroupoidPtr groupoid;
    std::vector<Block> blocks;
};

/// Blocks (group, object count) laid out in order, or in a random layout
/// when `rng` is given.
StructuredGroupoid structured(const std::vector<std::pair<FiniteGroup, std::size_t>>& blocks,
                              std::mt19937_64* rng = nullptr);

/// Per source block: target block, group homomorphism, object map and
/// twists; (i, j, h) goes to (s(i), s(j), t_j phi(h) t_i^-1).
struct BlockAssignment {
    std::size_t target_block;
    GroupMap phi;
    std::vector<std::size_t> object_map;
    std::vector<Element> twists;
};

Functor block_functor(const StructuredGroupoid& source, const StructuredGroupoid& target,
                      const std::vector<BlockAssignment>& assignment);

struct GeneratorParams {
    std::uint64_t seed = 1;
    std::size_t max_classes = 8;
    std::vector<NamedGroup> pool = default_pool();
    std::size_t fanout = 3;  ///< objects per class, at most
};

/// Throws std::invalid_argument on an empty pool or zero bounds.
void check_params(const GeneratorParams& params);

Groupoid random_groupoid(const GeneratorParams& params);

/// Source and target random, block map and homomorphisms random, with a
/// bias towards injective block maps and isomorphisms so that embeddings
/// and non-embeddings both occur often.
Functor random_functor(const GeneratorParams& params);

/// X and Y over one multiset of shapes, block bijections with random
/// automorphisms, scrambled layouts.
CsbProblem random_embedding_pair(const GeneratorParams& params);

/// Connected X and Y with the same group, an embedding G: Y -> X and an
/// arbitrary functor F: X -> Y.
struct ConnectedInstance {
    GroupoidPtr x;
    GroupoidPtr y;
    Functor f;
    Functor g;
};

ConnectedInstance random_connected_instance(const GeneratorParams& params);

/// A machine-checkable claim about a named example.
struct Expectation {
    std::string property;
    std::vector<std::string> subjects;
    std::string expected;
};

struct ExpectationResult {
    Expectation expectation;
    std::string actual;
    bool passed;
};

struct NamedExample {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, GroupoidPtr>> groupoids;
    std::vector<std::pair<std::string, Functor>> functors;
    std::vector<std::pair<std::string, FamilyPtr>> families;
    std::vector<std::pair<std::string, CountableMap>> maps;
    std::vector<Expectation> expectations;

    GroupoidPtr groupoid(const std::string& key) const;
    const Functor& functor(const std::string& key) const;
    FamilyPtr family(const std::string& key) const;
    const CountableMap& map(const std::string& key) const;
    bool is_countable() const { return !families.empty(); }
};

/// Names accepted by named_example; "pradic_pair" takes an optional "(k)".
std::vector<std::string> example_names();

/// Throws std::invalid_argument for unknown names.
NamedExample named_example(const std::string& name);

std::vector<ExpectationResult> check_expectations(const NamedExample& example);

/// Countable examples in problem form (keys X, Y, F, G).
CountableProblem countable_problem(const NamedExample& example);
/// Finite examples in problem form; throws HypothesisError on non-embeddings.
CsbProblem finite_problem(const NamedExample& example);

CountableFamily constant_family(const std::string& shape_name, const FiniteGroup& g);

/// Discrete-family map n -> scale * n + offset.
CountableMap affine_discrete_map(const FamilyPtr& source, const FamilyPtr& target, Index scale, Index offset);

}  // namespace csb::catalog
