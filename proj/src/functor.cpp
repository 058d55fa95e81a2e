#include "csb/functor.hpp"

#include <stdexcept>
#include <string>

#include "csb/errors.hpp"

namespace csb {

namespace {

constexpr MorphismIndex kAmbiguous = kNoMorphism - 1;

void require_same(const GroupoidPtr& a, const GroupoidPtr& b, const char* what) {
    if (!same_groupoid(a, b))
        throw std::invalid_argument(std::string("groupoid mismatch: ") + what);
}

std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) {
    if (a == b)
        return true;
    return a && b && *a == *b;
}

Functor identity_functor(const GroupoidPtr& g) {
    Functor f{g, g, {}, {}};
    f.obj_map.resize(g->object_count());
    f.mor_map.resize(g->morphism_count());
    for (ObjectIndex x = 0; x < g->object_count(); ++x)
        f.obj_map[x] = x;
    for (MorphismIndex m = 0; m < g->morphism_count(); ++m)
        f.mor_map[m] = m;
    return f;
}

ValidationReport validate_functor(const Functor& f) {
    if (!f.source || !f.target)
        throw StructuralError("functor is missing its source or target groupoid");
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    if (f.obj_map.size() != s.object_count())
        throw StructuralError("obj_map has " + std::to_string(f.obj_map.size()) + " entries for " +
                              std::to_string(s.object_count()) + " source objects");
    if (f.mor_map.size() != s.morphism_count())
        throw StructuralError("mor_map has " + std::to_string(f.mor_map.size()) + " entries for " +
                              std::to_string(s.morphism_count()) + " source morphisms");
    for (ObjectIndex y : f.obj_map)
        if (y >= t.object_count())
            throw StructuralError("obj_map entry " + std::to_string(y) + " out of range");
    for (MorphismIndex r : f.mor_map)
        if (r >= t.morphism_count())
            throw StructuralError("mor_map entry " + std::to_string(r) + " out of range");

    ValidationReport report;
    auto add = [&](std::string axiom, std::vector<std::size_t> idx, std::string detail = {}) {
        if (report.violations.size() >= kMaxReportedViolations) {
            report.truncated = true;
            return;
        }
        report.violations.push_back({std::move(axiom), std::move(idx), std::move(detail)});
    };
    for (MorphismIndex m = 0; m < s.morphism_count(); ++m) {
        const Arrow& a = s.arrow(m);
        const Arrow& b = t.arrow(f.mor(m));
        if (b.src != f.obj(a.src) || b.dst != f.obj(a.dst))
            add("preserves-endpoints", {m}, "image morphism endpoints differ from image objects");
    }
    for (ObjectIndex x = 0; x < s.object_count(); ++x)
        if (f.mor(s.identity(x)) != t.identity(f.obj(x)))
            add("preserves-identity", {x});
    for (MorphismIndex m = 0; m < s.morphism_count(); ++m)
        for (MorphismIndex n : s.out(s.dst(m))) {
            MorphismIndex fm = f.mor(m), fn = f.mor(n);
            if (!t.composable(fn, fm))
                continue;  // already reported as an endpoint violation
            if (f.mor(s.compose(n, m)) != t.compose(fn, fm))
                add("preserves-composition", {n, m});
        }
    return report;
}

Functor compose_functors(const Functor& second, const Functor& first) {
    require_same(first.target, second.source, "target of first functor is not source of second");
    Functor out{first.source, second.target, {}, {}};
    out.obj_map.resize(first.obj_map.size());
    out.mor_map.resize(first.mor_map.size());
    for (std::size_t x = 0; x < first.obj_map.size(); ++x)
        out.obj_map[x] = second.obj_map.at(first.obj_map[x]);
    for (std::size_t m = 0; m < first.mor_map.size(); ++m)
        out.mor_map[m] = second.mor_map.at(first.mor_map[m]);
    return out;
}

Functor functor_power(const Functor& endo, std::size_t n) {
    require_same(endo.source, endo.target, "power of a non-endofunctor");
    Functor out = identity_functor(endo.source);
    for (std::size_t i = 0; i < n; ++i)
        out = compose_functors(endo, out);
    return out;
}

FiberGroupoid fiber_groupoid(const Functor& f, ObjectIndex y) {
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    if (y >= t.object_count())
        throw std::out_of_range("fiber_groupoid: base object out of range");

    FiberGroupoid fiber;
    fiber.base = y;
    std::unordered_map<std::uint64_t, ObjectIndex> point_index;
    for (ObjectIndex x = 0; x < s.object_count(); ++x)
        for (MorphismIndex p : t.hom(f.obj(x), y)) {
            point_index.emplace(pack(x, p), static_cast<ObjectIndex>(fiber.points.size()));
            fiber.points.push_back({x, p});
        }

    // From (x, p), each q: x -> x2 reaches exactly (x2, p . F(q)^-1).
    std::vector<Arrow> arrows;
    std::unordered_map<std::uint64_t, MorphismIndex> morphism_index;  // (source point, q)
    for (ObjectIndex a = 0; a < fiber.points.size(); ++a) {
        const FiberPoint& pt = fiber.points[a];
        for (MorphismIndex q : s.out(pt.x)) {
            MorphismIndex fq_inv = t.inverse(f.mor(q));
            if (fq_inv == kNoMorphism)
                throw PreconditionError("fiber_groupoid: target groupoid lacks an inverse");
            MorphismIndex p2 = t.compose(pt.p, fq_inv);
            ObjectIndex b = point_index.at(pack(s.dst(q), p2));
            morphism_index.emplace(pack(a, q), static_cast<MorphismIndex>(arrows.size()));
            arrows.push_back({a, b});
            fiber.labels.push_back(q);
        }
    }
    std::vector<MorphismIndex> identity(fiber.points.size());
    for (ObjectIndex a = 0; a < fiber.points.size(); ++a)
        identity[a] = morphism_index.at(pack(a, s.identity(fiber.points[a].x)));

    std::vector<ComposeEntry> compose;
    for (MorphismIndex m1 = 0; m1 < arrows.size(); ++m1) {
        ObjectIndex mid = arrows[m1].dst;
        MorphismIndex q1 = fiber.labels[m1];
        for (MorphismIndex q2 : s.out(fiber.points[mid].x)) {
            MorphismIndex m2 = morphism_index.at(pack(mid, q2));
            MorphismIndex r = morphism_index.at(pack(arrows[m1].src, s.compose(q2, q1)));
            compose.push_back({m2, m1, r});
        }
    }
    fiber.groupoid = Groupoid(fiber.points.size(), std::move(arrows), std::move(identity), compose);
    return fiber;
}

std::optional<std::array<ObjectIndex, 2>> homwise_counterexample(const Functor& f) {
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    std::vector<bool> hit(t.morphism_count(), false);
    for (ObjectIndex x = 0; x < s.object_count(); ++x)
        for (ObjectIndex x2 = 0; x2 < s.object_count(); ++x2) {
            auto src_hom = s.hom(x, x2);
            auto dst_hom = t.hom(f.obj(x), f.obj(x2));
            if (src_hom.size() != dst_hom.size())
                return std::array<ObjectIndex, 2>{x, x2};
            bool injective = true;
            for (MorphismIndex q : src_hom) {
                MorphismIndex r = f.mor(q);
                if (hit[r])
                    injective = false;
                hit[r] = true;
            }
            for (MorphismIndex q : src_hom)
                hit[f.mor(q)] = false;
            if (!injective)
                return std::array<ObjectIndex, 2>{x, x2};
        }
    return std::nullopt;
}

bool is_embedding_homwise(const Functor& f) { return !homwise_counterexample(f).has_value(); }

std::optional<ObjectIndex> fiberwise_counterexample(const Functor& f) {
    for (ObjectIndex y = 0; y < f.target->object_count(); ++y)
        if (!is_proposition_groupoid(fiber_groupoid(f, y).groupoid))
            return y;
    return std::nullopt;
}

bool is_embedding_fiberwise(const Functor& f) { return !fiberwise_counterexample(f).has_value(); }

std::optional<std::array<ObjectIndex, 2>> left_cancellable_counterexample(const Functor& f) {
    const auto ps = iso_classes(*f.source);
    const auto pt = iso_classes(*f.target);
    // First source object seen in each target class.
    std::vector<ObjectIndex> seen(pt.class_count(), static_cast<ObjectIndex>(-1));
    for (ObjectIndex x = 0; x < f.source->object_count(); ++x) {
        ClassIndex c = pt.class_of[f.obj(x)];
        if (seen[c] == static_cast<ObjectIndex>(-1))
            seen[c] = x;
        else if (!ps.same_class(seen[c], x))
            return std::array<ObjectIndex, 2>{seen[c], x};
    }
    return std::nullopt;
}

bool is_left_cancellable(const Functor& f) { return !left_cancellable_counterexample(f).has_value(); }

bool check_natural_iso(const NaturalIso& n) {
    require_same(n.from.source, n.to.source, "natural iso functors have different sources");
    require_same(n.from.target, n.to.target, "natural iso functors have different targets");
    const Groupoid& s = *n.from.source;
    const Groupoid& t = *n.from.target;
    if (n.components.size() != s.object_count())
        throw std::out_of_range("natural iso has " + std::to_string(n.components.size()) +
                                " components for " + std::to_string(s.object_count()) + " objects");
    for (MorphismIndex c : n.components)
        if (c >= t.morphism_count())
            throw std::out_of_range("natural iso component out of range");
    for (ObjectIndex x = 0; x < s.object_count(); ++x) {
        const Arrow& a = t.arrow(n.components[x]);
        if (a.src != n.from.obj(x) || a.dst != n.to.obj(x))
            return false;
    }
    for (MorphismIndex q = 0; q < s.morphism_count(); ++q) {
        ObjectIndex x = s.src(q), x2 = s.dst(q);
        if (t.compose(n.components[x2], n.from.mor(q)) != t.compose(n.to.mor(q), n.components[x]))
            return false;
    }
    return true;
}

std::optional<EquivalenceWitness> is_equivalence(const Functor& f) {
    if (!is_embedding_homwise(f))
        return std::nullopt;
    const Groupoid& s = *f.source;
    const Groupoid& t = *f.target;
    const auto pt = iso_classes(t);

    std::vector<ObjectIndex> chosen(pt.class_count(), static_cast<ObjectIndex>(-1));
    for (ObjectIndex x = 0; x < s.object_count(); ++x) {
        ClassIndex c = pt.class_of[f.obj(x)];
        if (chosen[c] == static_cast<ObjectIndex>(-1))
            chosen[c] = x;
    }
    for (ObjectIndex x : chosen)
        if (x == static_cast<ObjectIndex>(-1))
            return std::nullopt;  // not essentially surjective

    Functor q{f.target, f.source, std::vector<ObjectIndex>(t.object_count()),
              std::vector<MorphismIndex>(t.morphism_count())};
    std::vector<MorphismIndex> eps(t.object_count());
    for (ObjectIndex y = 0; y < t.object_count(); ++y) {
        ObjectIndex x = chosen[pt.class_of[y]];
        q.obj_map[y] = x;
        eps[y] = t.hom(f.obj(x), y).front();
    }
    const HomInverter invert(f);
    for (MorphismIndex r = 0; r < t.morphism_count(); ++r) {
        ObjectIndex y = t.src(r), y2 = t.dst(r);
        MorphismIndex target = t.compose(t.inverse(eps[y2]), t.compose(r, eps[y]));
        auto pre = invert.preimage(q.obj(y), q.obj(y2), target);
        if (!pre)
            throw CertificateError("is_equivalence: fully faithful inversion failed at morphism " +
                                   std::to_string(r));
        q.mor_map[r] = *pre;
    }

    std::vector<MorphismIndex> eta(s.object_count());
    for (ObjectIndex x = 0; x < s.object_count(); ++x) {
        auto pre = invert.preimage(x, q.obj(f.obj(x)), t.inverse(eps[f.obj(x)]));
        if (!pre)
            throw CertificateError("is_equivalence: unit component missing at object " +
                                   std::to_string(x));
        eta[x] = *pre;
    }

    EquivalenceWitness w{q,
                         NaturalIso{identity_functor(f.source), compose_functors(q, f), std::move(eta)},
                         NaturalIso{compose_functors(f, q), identity_functor(f.target), std::move(eps)}};
    if (!validate_functor(w.quasi_inverse).ok() || !check_natural_iso(w.unit) ||
        !check_natural_iso(w.counit))
        throw CertificateError("is_equivalence: constructed quasi-inverse failed validation");
    return w;
}

HomInverter::HomInverter(const Functor& f) {
    const Groupoid& s = *f.source;
    for (MorphismIndex r = 0; r < s.morphism_count(); ++r) {
        Key k{s.src(r), s.dst(r), f.mor(r)};
        auto [it, inserted] = table_.emplace(k, r);
        if (!inserted)
            it->second = kAmbiguous;
    }
}

std::optional<MorphismIndex> HomInverter::preimage(ObjectIndex y, ObjectIndex y2, MorphismIndex t) const {
    auto it = table_.find(Key{y, y2, t});
    if (it == table_.end() || it->second == kAmbiguous)
        return std::nullopt;
    return it->second;
}

}  // namespace csb
