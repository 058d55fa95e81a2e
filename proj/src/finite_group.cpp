#include "csb/finite_group.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "csb/errors.hpp"

namespace csb {

namespace {

constexpr Element kUnmapped = static_cast<Element>(-1);

// Subgroup generated by `gens`, as a membership mask.
std::vector<bool> generated_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
    std::vector<bool> in(g.order(), false);
    std::vector<Element> queue{g.identity()};
    in[g.identity()] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Element s : gens) {
            Element v = g.mul(queue[head], s);
            if (!in[v]) {
                in[v] = true;
                queue.push_back(v);
            }
        }
    }
    return in;
}

// Extend generator images to the subgroup they generate. Returns false on an
// inconsistent relation or, if `injective`, on a collision.
bool extend_map(const FiniteGroup& a, const FiniteGroup& b, const std::vector<Element>& gens,
                const std::vector<Element>& images, std::size_t assigned, bool injective,
                GroupMap& map) {
    map.assign(a.order(), kUnmapped);
    std::vector<bool> used(b.order(), false);
    map[a.identity()] = b.identity();
    used[b.identity()] = true;
    std::vector<Element> queue{a.identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Element u = queue[head];
        for (std::size_t j = 0; j < assigned; ++j) {
            Element v = a.mul(u, gens[j]);
            Element expected = b.mul(map[u], images[j]);
            if (map[v] == kUnmapped) {
                if (injective && used[expected])
                    return false;
                map[v] = expected;
                used[expected] = true;
                queue.push_back(v);
            } else if (map[v] != expected) {
                return false;
            }
        }
    }
    return true;
}

void search_maps(const FiniteGroup& a, const FiniteGroup& b, bool bijective, bool first_only,
                 std::vector<GroupMap>& out) {
    const auto gens = greedy_generators(a);
    std::vector<std::size_t> gen_orders;
    for (Element s : gens)
        gen_orders.push_back(a.element_order(s));
    std::vector<std::size_t> b_orders(b.order());
    for (Element x = 0; x < b.order(); ++x)
        b_orders[x] = b.element_order(x);

    std::vector<Element> images(gens.size(), 0);
    GroupMap scratch;
    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == gens.size()) {
            if (!extend_map(a, b, gens, images, gens.size(), bijective, scratch))
                return false;
            if (!is_homomorphism(a, b, scratch))
                return false;
            if (bijective && !is_bijective(scratch, b.order()))
                return false;
            out.push_back(scratch);
            return first_only;
        }
        for (Element cand = 0; cand < b.order(); ++cand) {
            if (bijective ? b_orders[cand] != gen_orders[i] : gen_orders[i] % b_orders[cand] != 0)
                continue;
            images[i] = cand;
            if (!extend_map(a, b, gens, images, i + 1, bijective, scratch))
                continue;
            if (assign(i + 1))
                return true;
        }
        return false;
    };
    assign(0);
}

void check_cap(const FiniteGroup& a, const FiniteGroup& b, std::size_t cap) {
    if (a.order() > cap || b.order() > cap)
        throw LimitError("group order exceeds isomorphism search cap of " + std::to_string(cap));
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table, Element identity)
    : order_(order), table_(std::move(table)), identity_(identity) {
    if (order_ == 0)
        throw StructuralError("group must have at least one element");
    if (table_.size() != order_ * order_)
        throw StructuralError("group table has " + std::to_string(table_.size()) +
                              " entries, expected " + std::to_string(order_ * order_));
    if (identity_ >= order_)
        throw StructuralError("group identity index out of range");
    for (Element e : table_)
        if (e >= order_)
            throw StructuralError("group table entry out of range");
}

Element FiniteGroup::inverse(Element a) const {
    for (Element b = 0; b < order_; ++b)
        if (mul(a, b) == identity_ && mul(b, a) == identity_)
            return b;
    throw PreconditionError("element has no inverse; group table invalid");
}

std::size_t FiniteGroup::element_order(Element a) const {
    Element x = a;
    for (std::size_t k = 1; k <= order_; ++k) {
        if (x == identity_)
            return k;
        x = mul(x, a);
    }
    throw PreconditionError("element has no finite order; group table invalid");
}

bool FiniteGroup::is_abelian() const {
    for (Element a = 0; a < order_; ++a)
        for (Element b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::vector<std::size_t> FiniteGroup::order_profile() const {
    std::vector<std::size_t> profile(order_);
    for (Element a = 0; a < order_; ++a)
        profile[a] = element_order(a);
    std::sort(profile.begin(), profile.end());
    return profile;
}

std::vector<std::string> FiniteGroup::axiom_violations() const {
    std::vector<std::string> out;
    for (Element a = 0; a < order_; ++a)
        if (mul(identity_, a) != a || mul(a, identity_) != a)
            out.push_back("identity law fails at element " + std::to_string(a));
    for (Element a = 0; a < order_; ++a)
        for (Element b = 0; b < order_; ++b)
            for (Element c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                    out.push_back("associativity fails at (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ", " + std::to_string(c) + ")");
                }
    for (Element a = 0; a < order_; ++a) {
        bool found = false;
        for (Element b = 0; b < order_ && !found; ++b)
            found = mul(a, b) == identity_ && mul(b, a) == identity_;
        if (!found)
            out.push_back("no inverse for element " + std::to_string(a));
    }
    return out;
}

bool is_homomorphism(const FiniteGroup& from, const FiniteGroup& to, const GroupMap& map) {
    if (map.size() != from.order())
        return false;
    for (Element e : map)
        if (e >= to.order())
            return false;
    if (map[from.identity()] != to.identity())
        return false;
    for (Element a = 0; a < from.order(); ++a)
        for (Element b = 0; b < from.order(); ++b)
            if (map[from.mul(a, b)] != to.mul(map[a], map[b]))
                return false;
    return true;
}

bool is_bijective(const GroupMap& map, std::size_t target_order) {
    if (map.size() != target_order)
        return false;
    std::vector<bool> hit(target_order, false);
    for (Element e : map) {
        if (e >= target_order || hit[e])
            return false;
        hit[e] = true;
    }
    return true;
}

GroupMap compose_maps(const GroupMap& second, const GroupMap& first) {
    GroupMap out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        out[i] = second.at(first[i]);
    return out;
}

GroupMap invert_bijection(const GroupMap& map) {
    GroupMap out(map.size(), kUnmapped);
    for (std::size_t i = 0; i < map.size(); ++i)
        out.at(map[i]) = static_cast<Element>(i);
    return out;
}

std::vector<Element> greedy_generators(const FiniteGroup& g) {
    std::vector<Element> gens;
    std::vector<bool> in = generated_subgroup(g, gens);
    for (Element x = 0; x < g.order(); ++x) {
        if (in[x])
            continue;
        gens.push_back(x);
        in = generated_subgroup(g, gens);
    }
    return gens;
}

std::optional<GroupMap> groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b,
                                          std::size_t cap) {
    check_cap(a, b, cap);
    if (a.order() != b.order() || a.order_profile() != b.order_profile())
        return std::nullopt;
    if (a.is_abelian() != b.is_abelian())
        return std::nullopt;
    std::vector<GroupMap> found;
    search_maps(a, b, true, true, found);
    if (found.empty())
        return std::nullopt;
    return found.front();
}

std::vector<GroupMap> all_isomorphisms(const FiniteGroup& a, const FiniteGroup& b,
                                       std::size_t cap) {
    check_cap(a, b, cap);
    std::vector<GroupMap> found;
    if (a.order() != b.order() || a.order_profile() != b.order_profile())
        return found;
    search_maps(a, b, true, false, found);
    return found;
}

std::vector<GroupMap> all_homomorphisms(const FiniteGroup& a, const FiniteGroup& b) {
    std::vector<GroupMap> found;
    search_maps(a, b, false, false, found);
    return found;
}

namespace groups {

FiniteGroup trivial() { return FiniteGroup(1, {0}, 0); }

FiniteGroup cyclic(std::size_t k) {
    if (k == 0)
        throw StructuralError("cyclic group order must be positive");
    std::vector<Element> table(k * k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            table[a * k + b] = static_cast<Element>((a + b) % k);
    return FiniteGroup(k, std::move(table), 0);
}

FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    // Element (i, j) is encoded as i * |b| + j.
    const std::size_t n = a.order() * b.order();
    std::vector<Element> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto xi = static_cast<Element>(x / b.order()), xj = static_cast<Element>(x % b.order());
            auto yi = static_cast<Element>(y / b.order()), yj = static_cast<Element>(y % b.order());
            table[x * n + y] =
                static_cast<Element>(a.mul(xi, yi) * b.order() + b.mul(xj, yj));
        }
    return FiniteGroup(n, std::move(table), static_cast<Element>(a.identity() * b.order() + b.identity()));
}

FiniteGroup symmetric3() {
    // Permutations of {0,1,2} in lexicographic order; mul(p, q) = p after q.
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto index_of = [&](const std::array<int, 3>& q) {
        return static_cast<Element>(std::find(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<Element> table(36);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            std::array<int, 3> r{};
            for (int k = 0; k < 3; ++k)
                r[k] = perms[i][perms[j][k]];
            table[i * 6 + j] = index_of(r);
        }
    return FiniteGroup(6, std::move(table), 0);
}

FiniteGroup dihedral(std::size_t n) {
    // Element r^i s^f encoded as f * n + i.
    if (n == 0)
        throw StructuralError("dihedral parameter must be positive");
    const std::size_t order = 2 * n;
    std::vector<Element> table(order * order);
    for (std::size_t x = 0; x < order; ++x)
        for (std::size_t y = 0; y < order; ++y) {
            std::size_t fx = x / n, ix = x % n, fy = y / n, iy = y % n;
            // r^ix s^fx r^iy s^fy = r^(ix +- iy) s^(fx xor fy)
            std::size_t i = fx ? (ix + n - iy) % n : (ix + iy) % n;
            table[x * order + y] = static_cast<Element>((fx ^ fy) * n + i);
        }
    return FiniteGroup(order, std::move(table), 0);
}

}  // namespace groups

}  // namespace csb
