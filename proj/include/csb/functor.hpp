#pragma once

#include <array>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "csb/groupoid.hpp"

namespace csb {

using GroupoidPtr = std::shared_ptr<const Groupoid>;

/// Object and morphism maps between two groupoids.
struct Functor {
    GroupoidPtr source;
    GroupoidPtr target;
    std::vector<ObjectIndex> obj_map;
    std::vector<MorphismIndex> mor_map;

    ObjectIndex obj(ObjectIndex x) const { return obj_map[x]; }
    MorphismIndex mor(MorphismIndex f) const { return mor_map[f]; }
};

/// True when both pointers name the same groupoid or equal tables.
bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b);

Functor identity_functor(const GroupoidPtr& g);

/// Throws StructuralError for size mismatches or out-of-range indices.
ValidationReport validate_functor(const Functor& f);

/// second after first. Throws std::invalid_argument on a groupoid mismatch.
Functor compose_functors(const Functor& second, const Functor& first);

/// n-fold composite of an endofunctor; power 0 is the identity.
Functor functor_power(const Functor& endo, std::size_t n);

struct FiberPoint {
    ObjectIndex x;      ///< source object
    MorphismIndex p;    ///< target morphism F(x) -> base
    bool operator==(const FiberPoint&) const = default;
};

/// Homotopy fiber of F over a target object, as a groupoid. Objects are the
/// pairs (x, p: F(x) -> y) in lexicographic order; a morphism
/// (x, p) -> (x2, p2) is a source morphism q: x -> x2 with p2 . F(q) = p.
struct FiberGroupoid {
    ObjectIndex base;
    Groupoid groupoid;
    std::vector<FiberPoint> points;
    /// Source morphism q labeling each fiber morphism.
    std::vector<MorphismIndex> labels;
};

FiberGroupoid fiber_groupoid(const Functor& f, ObjectIndex y);

/// hom(x, x2) -> hom(Fx, Fx2) is a bijection for every pair.
bool is_embedding_homwise(const Functor& f);
std::optional<std::array<ObjectIndex, 2>> homwise_counterexample(const Functor& f);

/// Every fiber is a proposition.
bool is_embedding_fiberwise(const Functor& f);
std::optional<ObjectIndex> fiberwise_counterexample(const Functor& f);

/// Injective on isomorphism classes.
bool is_left_cancellable(const Functor& f);
std::optional<std::array<ObjectIndex, 2>> left_cancellable_counterexample(const Functor& f);

/// Component x is a target morphism from(x) -> to(x).
struct NaturalIso {
    Functor from;
    Functor to;
    std::vector<MorphismIndex> components;
};

/// Naturality squares commute for every source morphism. Throws
/// std::out_of_range for component indices out of range and
/// std::invalid_argument for non-parallel functors.
bool check_natural_iso(const NaturalIso& n);

struct EquivalenceWitness {
    Functor quasi_inverse;
    NaturalIso unit;    ///< identity => quasi_inverse . F
    NaturalIso counit;  ///< F . quasi_inverse => identity
};

/// Quasi-inverse with validated unit and counit, if F is fully faithful and
/// essentially surjective. The quasi-inverse sends every object of a target
/// class to the smallest preimage object, connected by the smallest iso.
std::optional<EquivalenceWitness> is_equivalence(const Functor& f);

/// Inverts the action of a fully faithful functor on hom-sets: for source
/// objects y, y2 and a target morphism t: F(y) -> F(y2), the unique r with
/// F(r) = t.
class HomInverter {
public:
    explicit HomInverter(const Functor& f);
    std::optional<MorphismIndex> preimage(ObjectIndex y, ObjectIndex y2, MorphismIndex t) const;

private:
    struct Key {
        ObjectIndex y;
        ObjectIndex y2;
        MorphismIndex t;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            std::size_t h = k.y;
            h = h * 0x9E3779B97F4A7C15ull + k.y2;
            h = h * 0x9E3779B97F4A7C15ull + k.t;
            return h ^ (h >> 29);
        }
    };
    std::unordered_map<Key, MorphismIndex, KeyHash> table_;
};

}  // namespace csb
