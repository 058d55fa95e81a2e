#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csb/finite_group.hpp"

namespace csb {

using ObjectIndex = std::uint32_t;
using MorphismIndex = std::uint32_t;
using ClassIndex = std::uint32_t;

inline constexpr MorphismIndex kNoMorphism = static_cast<MorphismIndex>(-1);

struct Arrow {
    ObjectIndex src;
    ObjectIndex dst;
    bool operator==(const Arrow&) const = default;
};

/// One composition table entry: compose(second, first) = result.
struct ComposeEntry {
    MorphismIndex second;
    MorphismIndex first;
    MorphismIndex result;
};

/// One axiom violation with the indices it involves.
struct Violation {
    std::string axiom;
    std::vector<std::size_t> indices;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool truncated = false;

    bool ok() const { return violations.empty(); }
    bool mentions(const std::string& axiom) const;
};

/// Finite groupoid with dense object/morphism tables.
///
/// Morphisms live in one flat table with src/dst arrays. Composition is stored
/// densely per composable pair: the entry for compose(s, f) sits at
/// `offset(f) + local(s)`, where local(s) is the position of s among the
/// outgoing morphisms of its source. Inverses are derived, never stored.
///
/// The constructor rejects structurally malformed tables (StructuralError);
/// axiom violations are found by validate_groupoid().
class Groupoid {
public:
    Groupoid() = default;
    Groupoid(std::size_t object_count, std::vector<Arrow> morphisms,
             std::vector<MorphismIndex> identity, const std::vector<ComposeEntry>& compose);

    std::size_t object_count() const { return object_count_; }
    std::size_t morphism_count() const { return arrows_.size(); }
    bool empty() const { return object_count_ == 0; }

    ObjectIndex src(MorphismIndex f) const { return arrows_[f].src; }
    ObjectIndex dst(MorphismIndex f) const { return arrows_[f].dst; }
    const Arrow& arrow(MorphismIndex f) const { return arrows_[f]; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    MorphismIndex identity(ObjectIndex x) const { return identity_[x]; }
    const std::vector<MorphismIndex>& identities() const { return identity_; }

    /// compose(s, f) = s after f. Requires dst(f) == src(s).
    MorphismIndex compose(MorphismIndex second, MorphismIndex first) const {
        return table_[offset_[first] + local_[second]];
    }
    bool composable(MorphismIndex second, MorphismIndex first) const {
        return dst(first) == src(second);
    }

    /// The inverse computed from the table, or kNoMorphism if none exists.
    MorphismIndex inverse(MorphismIndex f) const { return inverse_[f]; }

    /// Morphisms x -> x2 in ascending index order.
    std::span<const MorphismIndex> hom(ObjectIndex x, ObjectIndex x2) const;
    /// Morphisms with source x, ordered by (dst, index).
    std::span<const MorphismIndex> out(ObjectIndex x) const;

    /// All composition entries, ordered by (second, first).
    std::vector<ComposeEntry> compose_entries() const;

    bool operator==(const Groupoid& other) const;

private:
    std::size_t object_count_ = 0;
    std::vector<Arrow> arrows_;
    std::vector<MorphismIndex> identity_;
    std::vector<MorphismIndex> out_sorted_;
    std::vector<std::size_t> out_begin_;
    std::vector<std::uint32_t> local_;
    std::vector<std::size_t> offset_;
    std::vector<MorphismIndex> table_;
    std::vector<MorphismIndex> inverse_;
};

/// Two objects share a class iff some morphism connects them.
struct IsoClassPartition {
    std::vector<ClassIndex> class_of;
    /// Smallest object index in each class.
    std::vector<ObjectIndex> representative;

    std::size_t class_count() const { return representative.size(); }
    bool same_class(ObjectIndex a, ObjectIndex b) const { return class_of[a] == class_of[b]; }
};

struct AutomorphismGroup {
    FiniteGroup group;
    /// Morphism realizing each group element; element 0 is the identity.
    std::vector<MorphismIndex> elements;
};

/// Cap on report size; further violations set `truncated`.
inline constexpr std::size_t kMaxReportedViolations = 1000;

ValidationReport validate_groupoid(const Groupoid& g);

IsoClassPartition iso_classes(const Groupoid& g);

std::vector<MorphismIndex> hom_set(const Groupoid& g, ObjectIndex x, ObjectIndex x2);

AutomorphismGroup aut_group(const Groupoid& g, ObjectIndex x);

bool is_connected(const Groupoid& g);

/// Exactly one morphism between every ordered pair; vacuously true when empty.
bool is_proposition_groupoid(const Groupoid& g);
/// First ordered pair with |hom| != 1, if any.
std::optional<std::array<ObjectIndex, 2>> proposition_counterexample(const Groupoid& g);

struct ClassMatch {
    ClassIndex target_class;
    GroupMap group_iso;
};

/// Class bijection plus a per-class automorphism-group isomorphism
/// (between the automorphism groups at the class representatives).
struct GroupoidEquivalenceWitness {
    std::vector<ClassMatch> matches;
};

/// Lexicographically least class matching with isomorphic automorphism
/// groups, or none.
std::optional<GroupoidEquivalenceWitness> groupoids_equivalent(
    const Groupoid& a, const Groupoid& b, std::size_t group_cap = kDefaultGroupOrderCap);

}  // namespace csb
