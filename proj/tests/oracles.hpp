#pragma once

// Brute-force reference implementations used as test oracles. They share no
// code with the library beyond the data accessors.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "csb/countable.hpp"
#include "csb/functor.hpp"

namespace oracle {

using namespace csb;

inline bool is_hom(const FiniteGroup& a, const FiniteGroup& b, const GroupMap& m) {
    for (Element x = 0; x < a.order(); ++x)
        for (Element y = 0; y < a.order(); ++y)
            if (m[a.mul(x, y)] != b.mul(m[x], m[y]))
                return false;
    return true;
}

/// Automorphism count by scanning all permutations of the elements.
inline std::size_t automorphism_count(const FiniteGroup& g) {
    GroupMap p(g.order());
    std::iota(p.begin(), p.end(), 0);
    std::size_t count = 0;
    do {
        count += is_hom(g, g, p);
    } while (std::next_permutation(p.begin(), p.end()));
    return count;
}

inline bool commutative(const FiniteGroup& g) {
    for (Element x = 0; x < g.order(); ++x)
        for (Element y = 0; y < g.order(); ++y)
            if (g.mul(x, y) != g.mul(y, x))
                return false;
    return true;
}

/// Morphisms x -> x2 by scanning the arrow table.
inline std::vector<MorphismIndex> hom(const Groupoid& g, ObjectIndex x, ObjectIndex x2) {
    std::vector<MorphismIndex> out;
    for (MorphismIndex m = 0; m < g.morphism_count(); ++m)
        if (g.src(m) == x && g.dst(m) == x2)
            out.push_back(m);
    return out;
}

/// Component labels by BFS over arrows; labels are the smallest object.
inline std::vector<ObjectIndex> components(const Groupoid& g) {
    const std::size_t n = g.object_count();
    std::vector<std::vector<ObjectIndex>> adj(n);
    for (const Arrow& a : g.arrows()) {
        adj[a.src].push_back(a.dst);
        adj[a.dst].push_back(a.src);
    }
    std::vector<ObjectIndex> label(n, static_cast<ObjectIndex>(-1));
    for (ObjectIndex s = 0; s < n; ++s) {
        if (label[s] != static_cast<ObjectIndex>(-1))
            continue;
        std::vector<ObjectIndex> stack{s};
        label[s] = s;
        while (!stack.empty()) {
            ObjectIndex v = stack.back();
            stack.pop_back();
            for (ObjectIndex w : adj[v])
                if (label[w] == static_cast<ObjectIndex>(-1)) {
                    label[w] = s;
                    stack.push_back(w);
                }
        }
    }
    return label;
}

inline bool connected_objects(const Groupoid& g, ObjectIndex a, ObjectIndex b) {
    auto c = components(g);
    return c[a] == c[b];
}

/// Fully faithful: every hom-set map is a bijection.
inline bool fully_faithful(const Functor& f) {
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    for (ObjectIndex x = 0; x < s.object_count(); ++x)
        for (ObjectIndex x2 = 0; x2 < s.object_count(); ++x2) {
            auto src = hom(s, x, x2);
            auto dst = hom(t, f.obj(x), f.obj(x2));
            std::set<MorphismIndex> img;
            for (MorphismIndex m : src)
                img.insert(f.mor(m));
            if (img.size() != src.size() || src.size() != dst.size())
                return false;
        }
    return true;
}

inline bool essentially_surjective(const Functor& f) {
    auto c = components(*f.target);
    std::set<ObjectIndex> hit;
    for (ObjectIndex x : f.obj_map)
        hit.insert(c[x]);
    for (ObjectIndex y = 0; y < f.target->object_count(); ++y)
        if (!hit.count(c[y]))
            return false;
    return true;
}

inline bool injective_on_components(const Functor& f) {
    auto cs = components(*f.source);
    auto ct = components(*f.target);
    std::map<ObjectIndex, ObjectIndex> seen;
    for (ObjectIndex x = 0; x < f.source->object_count(); ++x) {
        auto [it, fresh] = seen.emplace(ct[f.obj(x)], cs[x]);
        if (!fresh && it->second != cs[x])
            return false;
    }
    return true;
}

/// Functor laws by direct table scan.
inline bool functorial(const Functor& f) {
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    if (f.obj_map.size() != s.object_count() || f.mor_map.size() != s.morphism_count())
        return false;
    for (MorphismIndex m = 0; m < s.morphism_count(); ++m)
        if (t.src(f.mor(m)) != f.obj(s.src(m)) || t.dst(f.mor(m)) != f.obj(s.dst(m)))
            return false;
    for (ObjectIndex x = 0; x < s.object_count(); ++x)
        if (f.mor(s.identity(x)) != t.identity(f.obj(x)))
            return false;
    for (MorphismIndex a = 0; a < s.morphism_count(); ++a)
        for (MorphismIndex b = 0; b < s.morphism_count(); ++b)
            if (s.dst(a) == s.src(b) && f.mor(s.compose(b, a)) != t.compose(f.mor(b), f.mor(a)))
                return false;
    return true;
}

/// Backward-chain tracer over explicit index tables: `gf` and `g` map an
/// index to its image (or -1) on [0, n).
struct TraceResult {
    ChainKind kind;
    Index root = -1;
    std::int64_t steps = 0;
};

inline TraceResult trace(const std::vector<Index>& gf, const std::vector<Index>& g, Index x, std::int64_t budget) {
    auto preimage = [](const std::vector<Index>& m, Index v) {
        std::vector<Index> out;
        for (Index n = 0; n < static_cast<Index>(m.size()); ++n)
            if (m[static_cast<std::size_t>(n)] == v)
                out.push_back(n);
        return out;
    };
    Index cur = x;
    for (std::int64_t moves = 0;; ++moves) {
        auto pre = preimage(gf, cur);
        if (pre.empty())
            return {preimage(g, cur).empty() ? ChainKind::XStopper : ChainKind::YStopper, cur, moves};
        if (moves >= budget)
            return {ChainKind::Undetermined, -1, moves};
        cur = pre.front();
        if (cur == x)
            return {ChainKind::Cyclic, -1, moves + 1};
    }
}

/// Image table of a countable map on [0, n).
inline std::vector<Index> image_table(const CountableMap& m, Index n) {
    std::vector<Index> out;
    for (Index i = 0; i < n; ++i) {
        auto a = m.apply(i);
        out.push_back(a ? a->image : -1);
    }
    return out;
}

}  // namespace oracle
