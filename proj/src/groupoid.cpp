#include "csb/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "csb/errors.hpp"

namespace csb {

namespace {

class ReportBuilder {
public:
    explicit ReportBuilder(ValidationReport& report) : report_(report) {}

    void add(std::string axiom, std::vector<std::size_t> indices, std::string detail = {}) {
        if (report_.violations.size() >= kMaxReportedViolations) {
            report_.truncated = true;
            return;
        }
        report_.violations.push_back({std::move(axiom), std::move(indices), std::move(detail)});
    }

private:
    ValidationReport& report_;
};

}  // namespace

bool ValidationReport::mentions(const std::string& axiom) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.axiom == axiom; });
}

Groupoid::Groupoid(std::size_t object_count, std::vector<Arrow> morphisms,
                   std::vector<MorphismIndex> identity, const std::vector<ComposeEntry>& compose)
    : object_count_(object_count), arrows_(std::move(morphisms)), identity_(std::move(identity)) {
    const std::size_t m = arrows_.size();
    if (identity_.size() != object_count_)
        throw StructuralError("identity table has " + std::to_string(identity_.size()) +
                              " entries for " + std::to_string(object_count_) + " objects");
    for (std::size_t f = 0; f < m; ++f)
        if (arrows_[f].src >= object_count_ || arrows_[f].dst >= object_count_)
            throw StructuralError("morphism " + std::to_string(f) + " has an endpoint out of range");
    for (std::size_t x = 0; x < object_count_; ++x)
        if (identity_[x] >= m)
            throw StructuralError("identity of object " + std::to_string(x) + " is out of range");

    out_sorted_.resize(m);
    std::iota(out_sorted_.begin(), out_sorted_.end(), MorphismIndex{0});
    std::stable_sort(out_sorted_.begin(), out_sorted_.end(), [&](MorphismIndex a, MorphismIndex b) {
        if (arrows_[a].src != arrows_[b].src)
            return arrows_[a].src < arrows_[b].src;
        return arrows_[a].dst < arrows_[b].dst;
    });
    out_begin_.assign(object_count_ + 1, 0);
    for (const Arrow& a : arrows_)
        ++out_begin_[a.src + 1];
    std::partial_sum(out_begin_.begin(), out_begin_.end(), out_begin_.begin());
    local_.resize(m);
    for (std::size_t pos = 0; pos < m; ++pos) {
        MorphismIndex f = out_sorted_[pos];
        local_[f] = static_cast<std::uint32_t>(pos - out_begin_[arrows_[f].src]);
    }

    offset_.resize(m + 1);
    offset_[0] = 0;
    for (std::size_t f = 0; f < m; ++f) {
        ObjectIndex d = arrows_[f].dst;
        offset_[f + 1] = offset_[f] + (out_begin_[d + 1] - out_begin_[d]);
    }
    table_.assign(offset_[m], kNoMorphism);
    for (const ComposeEntry& e : compose) {
        if (e.second >= m || e.first >= m || e.result >= m)
            throw StructuralError("composition entry [" + std::to_string(e.second) + ", " +
                                  std::to_string(e.first) + ", " + std::to_string(e.result) +
                                  "] references a morphism out of range");
        if (!composable(e.second, e.first))
            throw StructuralError("composition entry for non-composable pair (" +
                                  std::to_string(e.second) + ", " + std::to_string(e.first) + ")");
        MorphismIndex& slot = table_[offset_[e.first] + local_[e.second]];
        if (slot != kNoMorphism)
            throw StructuralError("duplicate composition entry for pair (" +
                                  std::to_string(e.second) + ", " + std::to_string(e.first) + ")");
        slot = e.result;
    }
    for (std::size_t f = 0; f < m; ++f)
        for (MorphismIndex s : out(arrows_[f].dst))
            if (table_[offset_[f] + local_[s]] == kNoMorphism)
                throw StructuralError("missing composition entry for composable pair (" +
                                      std::to_string(s) + ", " + std::to_string(f) + ")");

    inverse_.assign(m, kNoMorphism);
    for (std::size_t f = 0; f < m; ++f) {
        auto fi = static_cast<MorphismIndex>(f);
        for (MorphismIndex g : hom(arrows_[f].dst, arrows_[f].src)) {
            if (this->compose(g, fi) == identity_[arrows_[f].src] &&
                this->compose(fi, g) == identity_[arrows_[f].dst]) {
                inverse_[f] = g;
                break;
            }
        }
    }
}

std::span<const MorphismIndex> Groupoid::out(ObjectIndex x) const {
    return {out_sorted_.data() + out_begin_[x], out_begin_[x + 1] - out_begin_[x]};
}

std::span<const MorphismIndex> Groupoid::hom(ObjectIndex x, ObjectIndex x2) const {
    auto all = out(x);
    auto lo = std::lower_bound(all.begin(), all.end(), x2,
                               [&](MorphismIndex f, ObjectIndex d) { return arrows_[f].dst < d; });
    auto hi = std::upper_bound(lo, all.end(), x2,
                               [&](ObjectIndex d, MorphismIndex f) { return d < arrows_[f].dst; });
    return {lo, hi};
}

std::vector<ComposeEntry> Groupoid::compose_entries() const {
    std::vector<std::vector<MorphismIndex>> incoming(object_count_);
    for (MorphismIndex f = 0; f < arrows_.size(); ++f)
        incoming[arrows_[f].dst].push_back(f);
    std::vector<ComposeEntry> entries;
    entries.reserve(table_.size());
    for (MorphismIndex s = 0; s < arrows_.size(); ++s)
        for (MorphismIndex f : incoming[arrows_[s].src])
            entries.push_back({s, f, compose(s, f)});
    return entries;
}

bool Groupoid::operator==(const Groupoid& other) const {
    return object_count_ == other.object_count_ && arrows_ == other.arrows_ &&
           identity_ == other.identity_ && table_ == other.table_;
}

ValidationReport validate_groupoid(const Groupoid& g) {
    ValidationReport report;
    ReportBuilder add(report);
    const auto m = static_cast<MorphismIndex>(g.morphism_count());

    for (ObjectIndex x = 0; x < g.object_count(); ++x) {
        const Arrow& a = g.arrow(g.identity(x));
        if (a.src != x || a.dst != x)
            add.add("identity-endpoints", {x, g.identity(x)}, "identity is not an endomorphism of its object");
    }
    auto identity_ok = [&](ObjectIndex x) {
        const Arrow& a = g.arrow(g.identity(x));
        return a.src == x && a.dst == x;
    };

    for (MorphismIndex f = 0; f < m; ++f)
        for (MorphismIndex s : g.out(g.dst(f))) {
            MorphismIndex r = g.compose(s, f);
            if (g.src(r) != g.src(f) || g.dst(r) != g.dst(s))
                add.add("compose-endpoints", {s, f, r}, "result endpoints disagree with the composable pair");
        }

    for (MorphismIndex f = 0; f < m; ++f) {
        ObjectIndex a = g.src(f), b = g.dst(f);
        if (identity_ok(b) && g.compose(g.identity(b), f) != f)
            add.add("identity-law", {g.identity(b), f}, "id after f differs from f");
        if (identity_ok(a) && g.compose(f, g.identity(a)) != f)
            add.add("identity-law", {f, g.identity(a)}, "f after id differs from f");
    }

    for (MorphismIndex f = 0; f < m; ++f)
        for (MorphismIndex s : g.out(g.dst(f))) {
            MorphismIndex sf = g.compose(s, f);
            for (MorphismIndex t : g.out(g.dst(s))) {
                MorphismIndex ts = g.compose(t, s);
                if (!g.composable(t, sf) || !g.composable(ts, f))
                    continue;
                if (g.compose(t, sf) != g.compose(ts, f))
                    add.add("associativity", {t, s, f});
            }
        }

    for (MorphismIndex f = 0; f < m; ++f) {
        ObjectIndex a = g.src(f), b = g.dst(f);
        std::size_t count = 0;
        for (MorphismIndex h : g.hom(b, a))
            if (g.compose(h, f) == g.identity(a) && g.compose(f, h) == g.identity(b))
                ++count;
        if (count == 0)
            add.add("inverse", {f}, "no two-sided inverse");
        else if (count > 1)
            add.add("inverse-uniqueness", {f}, std::to_string(count) + " two-sided inverses");
    }
    return report;
}

IsoClassPartition iso_classes(const Groupoid& g) {
    const std::size_t n = g.object_count();
    std::vector<ObjectIndex> parent(n);
    std::iota(parent.begin(), parent.end(), ObjectIndex{0});
    auto find = [&](ObjectIndex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const Arrow& a : g.arrows()) {
        ObjectIndex ra = find(a.src), rb = find(a.dst);
        if (ra != rb)
            parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    IsoClassPartition p;
    p.class_of.assign(n, 0);
    std::vector<ClassIndex> class_of_root(n, static_cast<ClassIndex>(-1));
    for (ObjectIndex x = 0; x < n; ++x) {
        ObjectIndex r = find(x);
        if (class_of_root[r] == static_cast<ClassIndex>(-1)) {
            class_of_root[r] = static_cast<ClassIndex>(p.representative.size());
            p.representative.push_back(x);
        }
        p.class_of[x] = class_of_root[r];
    }
    return p;
}

std::vector<MorphismIndex> hom_set(const Groupoid& g, ObjectIndex x, ObjectIndex x2) {
    if (x >= g.object_count() || x2 >= g.object_count())
        throw std::out_of_range("hom_set: object index out of range");
    auto h = g.hom(x, x2);
    return {h.begin(), h.end()};
}

AutomorphismGroup aut_group(const Groupoid& g, ObjectIndex x) {
    if (x >= g.object_count())
        throw std::out_of_range("aut_group: object index out of range");
    AutomorphismGroup out;
    out.elements.push_back(g.identity(x));
    for (MorphismIndex f : g.hom(x, x))
        if (f != g.identity(x))
            out.elements.push_back(f);
    std::unordered_map<MorphismIndex, Element> position;
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        position.emplace(out.elements[i], static_cast<Element>(i));
    const std::size_t k = out.elements.size();
    std::vector<Element> table(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            table[i * k + j] = position.at(g.compose(out.elements[i], out.elements[j]));
    out.group = FiniteGroup(k, std::move(table), 0);
    return out;
}

bool is_connected(const Groupoid& g) {
    return g.object_count() > 0 && iso_classes(g).class_count() == 1;
}

std::optional<std::array<ObjectIndex, 2>> proposition_counterexample(const Groupoid& g) {
    for (ObjectIndex x = 0; x < g.object_count(); ++x)
        for (ObjectIndex x2 = 0; x2 < g.object_count(); ++x2)
            if (g.hom(x, x2).size() != 1)
                return std::array<ObjectIndex, 2>{x, x2};
    return std::nullopt;
}

bool is_proposition_groupoid(const Groupoid& g) { return !proposition_counterexample(g).has_value(); }

std::optional<GroupoidEquivalenceWitness> groupoids_equivalent(const Groupoid& a, const Groupoid& b,
                                                               std::size_t group_cap) {
    const auto pa = iso_classes(a);
    const auto pb = iso_classes(b);
    if (pa.class_count() != pb.class_count())
        return std::nullopt;
    std::vector<FiniteGroup> ga, gb;
    for (ObjectIndex r : pa.representative)
        ga.push_back(aut_group(a, r).group);
    for (ObjectIndex r : pb.representative)
        gb.push_back(aut_group(b, r).group);

    // Isomorphism is an equivalence relation, so the greedy choice of the
    // smallest unused compatible class never blocks a later class.
    GroupoidEquivalenceWitness witness;
    std::vector<bool> used(pb.class_count(), false);
    for (std::size_t i = 0; i < ga.size(); ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < gb.size() && !matched; ++j) {
            if (used[j])
                continue;
            if (auto iso = groups_isomorphic(ga[i], gb[j], group_cap)) {
                used[j] = true;
                witness.matches.push_back({static_cast<ClassIndex>(j), std::move(*iso)});
                matched = true;
            }
        }
        if (!matched)
            return std::nullopt;
    }
    return witness;
}

}  // namespace csb
