#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csb/functor.hpp"

namespace csb {

using Index = std::int64_t;

/// An N-indexed family of one-object groupoids, presented by rules: class n
/// carries its exception shape if listed, otherwise the shape of its residue
/// modulo the period. Exceptions must lie below tail_start.
struct CountableFamily {
    std::vector<std::string> shape_names;
    std::vector<FiniteGroup> shapes;
    std::vector<std::pair<Index, std::size_t>> exceptions;  ///< (n, shape id), ascending n
    Index tail_start = 0;
    std::vector<std::size_t> tail_shapes;                   ///< one per residue

    std::size_t period() const { return tail_shapes.size(); }
    std::size_t shape_at(Index n) const;
    const FiniteGroup& group_at(Index n) const { return shapes[shape_at(n)]; }

    bool operator==(const CountableFamily&) const = default;
};

using FamilyPtr = std::shared_ptr<const CountableFamily>;

ValidationReport validate_family(const CountableFamily& family);

/// Every class carries the trivial group.
CountableFamily discrete_family();

struct ExceptionRule {
    Index n;
    Index image;
    GroupMap hom;
};

/// For n = modulus * q + r with n >= tail_start: n -> scale * q + offset.
struct ResidueRule {
    Index scale;
    Index offset;
    GroupMap hom;
};

/// Which rule produced an image.
struct RuleOrigin {
    bool from_exception;
    std::size_t which;  ///< exception position or residue
};

struct AppliedRule {
    Index image;
    RuleOrigin origin;
    const GroupMap* hom;
};

struct Preimage {
    Index n;
    RuleOrigin origin;
};

/// Piecewise-affine index map with group-homomorphism payloads.
class CountableMap {
public:
    CountableMap() = default;
    /// Throws StructuralError on a zero modulus, a rule count that differs
    /// from the modulus, or a scale below 1.
    CountableMap(FamilyPtr source, FamilyPtr target, std::vector<ExceptionRule> exceptions,
                 Index tail_start, Index modulus, std::vector<ResidueRule> rules);

    const FamilyPtr& source() const { return source_; }
    const FamilyPtr& target() const { return target_; }
    const std::vector<ExceptionRule>& exceptions() const { return exceptions_; }
    Index tail_start() const { return tail_start_; }
    Index modulus() const { return modulus_; }
    const std::vector<ResidueRule>& rules() const { return rules_; }

    /// Image of n, or none if n is below tail_start without an exception.
    /// Throws std::overflow_error if the image does not fit.
    std::optional<AppliedRule> apply(Index n) const;
    /// Every n with image v, by exact case analysis.
    std::vector<Preimage> preimages(Index v) const;
    /// The unique preimage; throws AmbiguousPredecessor if there are several.
    std::optional<Preimage> predecessor(Index v) const;
    /// Smallest q for which residue r's tail applies.
    Index first_quotient(std::size_t r) const;

private:
    FamilyPtr source_;
    FamilyPtr target_;
    std::vector<ExceptionRule> exceptions_;
    Index tail_start_ = 0;
    Index modulus_ = 1;
    std::vector<ResidueRule> rules_;
    std::vector<std::pair<Index, std::size_t>> by_image_;  ///< (image, exception position)
};

/// second after first, by composition-by-cases of the rules.
CountableMap compose_countable(const CountableMap& second, const CountableMap& first);

/// Identity on a family, with identity payloads.
CountableMap identity_countable(const FamilyPtr& family);

/// Checks injectivity on [0, window), exception/tail consistency and the
/// shape endpoints of every payload. Throws PreconditionError unless
/// window >= tail_start + modulus.
ValidationReport validate_countable(const CountableMap& map, Index window);

enum class EmbeddingStatus { Embedding, LeftCancellableOnly, Neither };
const char* to_string(EmbeddingStatus s);

/// Rule-level verdict, cross-checked against the functor checkers on a
/// materialized window (throws std::logic_error on disagreement).
EmbeddingStatus embedding_status_countable(const CountableMap& map, Index window);

/// F: X -> Y and G: Y -> X between families, with the composite G . F.
class CountableProblem {
public:
    /// Throws HypothesisError when the maps do not connect the families.
    CountableProblem(FamilyPtr x, FamilyPtr y, CountableMap f, CountableMap g);

    const FamilyPtr& x() const { return x_; }
    const FamilyPtr& y() const { return y_; }
    const CountableMap& f() const { return f_; }
    const CountableMap& g() const { return g_; }
    const CountableMap& composite() const { return gf_; }

private:
    FamilyPtr x_;
    FamilyPtr y_;
    CountableMap f_;
    CountableMap g_;
    CountableMap gf_;
};

enum class ChainKind { YStopper, XStopper, Cyclic, ProvablyInfinite, Undetermined };
const char* to_string(ChainKind k);

inline constexpr std::int64_t kDefaultBudget = 10000;

struct ChainOptions {
    std::int64_t budget = kDefaultBudget;
    bool detect_divergence = true;
};

/// Fate of the backward orbit of x under G . F.
///  - stoppers: `root` has no predecessor and `steps` moves lead back from x
///    to it; YStopper roots lie in im(G), XStopper roots do not
///  - Cyclic: `steps` is the cycle length
///  - ProvablyInfinite: `steps` moves were taken before divergence was proven
///  - Undetermined: the budget ran out (or an index overflowed)
struct ChainVerdict {
    ChainKind kind = ChainKind::Undetermined;
    Index root = -1;
    std::int64_t steps = 0;
    std::vector<Index> prefix;  ///< x, pred(x), ... as traced
    bool overflow = false;
};

/// Traces predecessors of x under `composite`; `g` decides im(G) membership
/// of a stopper root. Throws AmbiguousPredecessor on non-injective rules.
ChainVerdict backward_chain(const CountableMap& composite, const CountableMap& g, Index x,
                            const ChainOptions& options = {});

enum class Truth { False, True, Undetermined };
const char* to_string(Truth t);

struct CountableGPoint {
    Truth value;
    ChainVerdict chain;
};

CountableGPoint is_g_point_countable(const CountableProblem& problem, Index x,
                                     const ChainOptions& options = {});

struct ChainEntry {
    ChainKind kind = ChainKind::Undetermined;
    Index root = -1;
    std::int64_t steps = 0;
    Index predecessor = -1;  ///< -1 when there is none
    bool overflow = false;
};

/// Chain verdicts for every index of [0, window); each entry equals the
/// corresponding backward_chain verdict (prefix omitted). Shared chain
/// segments are traced once.
struct ChainTable {
    Index window = 0;
    ChainOptions options;
    std::vector<ChainEntry> entries;
};

ChainTable decompose_window(const CountableProblem& problem, Index window,
                            const ChainOptions& options = {});

enum class HBranch { GInverse, F, Undetermined };
const char* to_string(HBranch b);

struct HEntry {
    HBranch branch = HBranch::Undetermined;
    Index image = -1;
    GroupMap hom;  ///< empty for index-only tables
};

struct WindowedH {
    Index window = 0;
    std::vector<HEntry> entries;
    std::vector<Index> undetermined;
    /// Determined indices whose image falls outside [0, window).
    std::vector<Index> frontier;
};

/// h on indices only; needs no embedding hypothesis.
WindowedH index_h_window(const CountableProblem& problem, const ChainTable& table);

/// h with group payloads. Throws HypothesisError unless both maps are
/// embeddings on the window.
WindowedH construct_h_window(const CountableProblem& problem, Index window,
                             const ChainOptions& options = {});

struct FamilyEquivalence {
    bool equivalent;
    std::string reason;
};

/// Compares, per shape isomorphism type, the number of classes carrying it
/// (a shape present in the periodic tail occurs countably infinitely often).
FamilyEquivalence families_equivalent(const CountableFamily& a, const CountableFamily& b);

/// Classes [0, count) as a finite groupoid of deloopings.
Groupoid materialize_family(const CountableFamily& family, Index count);

/// The map restricted to [0, source_count) -> [0, target_count).
/// Throws std::out_of_range if an image leaves the target window.
Functor materialize_map(const CountableMap& map, const GroupoidPtr& source, Index source_count,
                        const GroupoidPtr& target, Index target_count);

/// Graphviz rendering: one edge per backward step, nodes colored by verdict.
void write_chains_dot(std::ostream& out, const ChainTable& table);

}  // namespace csb
