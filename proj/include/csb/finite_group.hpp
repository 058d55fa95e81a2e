#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace csb {

using Element = std::uint32_t;

/// Finite group given by its multiplication table. mul(a, b) is the product
/// "a after b" when the group comes from composition in a groupoid.
class FiniteGroup {
public:
    FiniteGroup() : FiniteGroup(1, {0}, 0) {}
    /// Table is row-major, `order * order` entries. Throws StructuralError on
    /// size mismatch or out-of-range entries; group axioms are checked by
    /// axiom_violations().
    FiniteGroup(std::size_t order, std::vector<Element> table, Element identity);

    std::size_t order() const { return order_; }
    Element identity() const { return identity_; }
    Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
    const std::vector<Element>& table() const { return table_; }

    Element inverse(Element a) const;
    std::size_t element_order(Element a) const;
    bool is_abelian() const;
    /// Sorted multiset of element orders.
    std::vector<std::size_t> order_profile() const;

    /// Empty iff the table satisfies the group axioms.
    std::vector<std::string> axiom_violations() const;
    bool is_valid() const { return axiom_violations().empty(); }

    bool operator==(const FiniteGroup&) const = default;

private:
    std::size_t order_;
    std::vector<Element> table_;
    Element identity_;
};

/// A map of underlying sets, `image[a]` for each source element.
using GroupMap = std::vector<Element>;

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const GroupMap& map);
bool is_bijective(const GroupMap& map, std::size_t target_order);
GroupMap compose_maps(const GroupMap& second, const GroupMap& first);
GroupMap invert_bijection(const GroupMap& map);

/// Default cap on group order for isomorphism search.
inline constexpr std::size_t kDefaultGroupOrderCap = 64;

/// Some isomorphism a -> b, or none. Generators of `a` are chosen greedily
/// (smallest element not yet generated) and their images are searched in
/// ascending order, so the result is the lexicographically smallest tuple of
/// generator images. Throws LimitError if an order exceeds `cap`.
std::optional<GroupMap> groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                                          std::size_t cap = kDefaultGroupOrderCap);

/// All homomorphisms a -> b that are bijections, in the same search order.
std::vector<GroupMap> all_isomorphisms(const FiniteGroup& a, const FiniteGroup& b,
                                       std::size_t cap = kDefaultGroupOrderCap);

/// All homomorphisms a -> b (generator-image enumeration). Intended for small
/// groups; the count is bounded by |b|^(number of generators of a).
std::vector<GroupMap> all_homomorphisms(const FiniteGroup& a, const FiniteGroup& b);

/// Greedy generating set: ascending scan, keep x if not in the subgroup so far.
std::vector<Element> greedy_generators(const FiniteGroup& g);

namespace groups {
FiniteGroup trivial();
FiniteGroup cyclic(std::size_t k);
FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric3();
FiniteGroup dihedral(std::size_t n);
}  // namespace groups

}  // namespace csb
