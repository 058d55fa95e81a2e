#include "csb/countable.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include "csb/errors.hpp"

namespace csb {

namespace {

Index floor_div(Index a, Index b) {
    Index q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

Index floor_mod(Index a, Index b) { return a - floor_div(a, b) * b; }

Index ceil_div(Index a, Index b) { return -floor_div(-a, b); }

Index checked_affine(Index scale, Index q, Index offset) {
    Index prod = 0, sum = 0;
    if (__builtin_mul_overflow(scale, q, &prod) || __builtin_add_overflow(prod, offset, &sum))
        throw std::overflow_error("index arithmetic overflow");
    return sum;
}

void add_violation(ValidationReport& report, std::string axiom, std::vector<std::size_t> idx,
                   std::string detail = {}) {
    if (report.violations.size() >= kMaxReportedViolations) {
        report.truncated = true;
        return;
    }
    report.violations.push_back({std::move(axiom), std::move(idx), std::move(detail)});
}

bool same_family(const FamilyPtr& a, const FamilyPtr& b) {
    return a == b || (a && b && *a == *b);
}

GroupMap identity_map(std::size_t n) {
    GroupMap m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = static_cast<Element>(i);
    return m;
}

// Backward steps through residue rule r from v keep using r forever, with
// strictly increasing indices. Sufficient condition: scale divides modulus
// (so the residue condition on the next preimage is the constant r = offset
// mod scale), the first step increases, and every later preimage avoids the
// exception table.
bool diverges(const CountableMap& map, Index v, std::size_t r) {
    const ResidueRule& rule = map.rules()[r];
    const Index m = map.modulus();
    const Index a = rule.scale;
    if (m % a != 0 || floor_mod(static_cast<Index>(r) - rule.offset, a) != 0)
        return false;
    if (floor_mod(v - rule.offset, a) != 0)
        return false;
    Index n = checked_affine(m / a, v - rule.offset, static_cast<Index>(r));
    if (n <= v)
        return false;
    for (const auto& e : map.exceptions())
        if (e.n >= n)
            return false;
    return true;
}

}  // namespace

std::size_t CountableFamily::shape_at(Index n) const {
    auto it = std::lower_bound(exceptions.begin(), exceptions.end(), n,
                               [](const auto& e, Index v) { return e.first < v; });
    if (it != exceptions.end() && it->first == n)
        return it->second;
    return tail_shapes[static_cast<std::size_t>(floor_mod(n, static_cast<Index>(period())))];
}

ValidationReport validate_family(const CountableFamily& family) {
    ValidationReport report;
    if (family.shapes.size() != family.shape_names.size())
        add_violation(report, "shape-table", {}, "shape names and tables differ in length");
    for (std::size_t s = 0; s < family.shapes.size(); ++s)
        if (!family.shapes[s].is_valid())
            add_violation(report, "shape-not-a-group", {s}, family.shapes[s].axiom_violations().front());
    if (family.tail_shapes.empty())
        add_violation(report, "period", {}, "period must be at least 1");
    if (family.tail_start < 0)
        add_violation(report, "tail-start", {}, "tail_start must be non-negative");
    for (std::size_t id : family.tail_shapes)
        if (id >= family.shapes.size())
            add_violation(report, "unknown-shape", {id});
    for (std::size_t i = 0; i < family.exceptions.size(); ++i) {
        const auto& [n, id] = family.exceptions[i];
        if (id >= family.shapes.size())
            add_violation(report, "unknown-shape", {id});
        if (n < 0 || n >= family.tail_start)
            add_violation(report, "exception-overlaps-tail", {static_cast<std::size_t>(std::max<Index>(n, 0))},
                          "shape exception outside [0, tail_start)");
        if (i > 0 && family.exceptions[i - 1].first >= n)
            add_violation(report, "exception-order", {static_cast<std::size_t>(std::max<Index>(n, 0))},
                          "exceptions must be strictly ascending");
    }
    return report;
}

CountableFamily discrete_family() {
    CountableFamily f;
    f.shape_names = {"trivial"};
    f.shapes = {groups::trivial()};
    f.tail_start = 0;
    f.tail_shapes = {0};
    return f;
}

CountableMap::CountableMap(FamilyPtr source, FamilyPtr target, std::vector<ExceptionRule> exceptions,
                           Index tail_start, Index modulus, std::vector<ResidueRule> rules)
    : source_(std::move(source)), target_(std::move(target)), exceptions_(std::move(exceptions)),
      tail_start_(tail_start), modulus_(modulus), rules_(std::move(rules)) {
    if (!source_ || !target_)
        throw StructuralError("countable map needs a source and a target family");
    if (modulus_ < 1)
        throw StructuralError("modulus must be at least 1");
    if (static_cast<Index>(rules_.size()) != modulus_)
        throw StructuralError("expected one residue rule per residue: " + std::to_string(modulus_) +
                              " rules, got " + std::to_string(rules_.size()));
    if (tail_start_ < 0)
        throw StructuralError("tail_start must be non-negative");
    for (const auto& r : rules_)
        if (r.scale < 1)
            throw StructuralError("residue rule scale must be at least 1");
    std::stable_sort(exceptions_.begin(), exceptions_.end(),
                     [](const ExceptionRule& a, const ExceptionRule& b) { return a.n < b.n; });
    for (std::size_t i = 0; i < exceptions_.size(); ++i)
        by_image_.emplace_back(exceptions_[i].image, i);
    std::sort(by_image_.begin(), by_image_.end());
}

Index CountableMap::first_quotient(std::size_t r) const {
    return std::max<Index>(0, ceil_div(tail_start_ - static_cast<Index>(r), modulus_));
}

std::optional<AppliedRule> CountableMap::apply(Index n) const {
    if (n < 0)
        return std::nullopt;
    auto it = std::lower_bound(exceptions_.begin(), exceptions_.end(), n,
                               [](const ExceptionRule& e, Index v) { return e.n < v; });
    if (it != exceptions_.end() && it->n == n)
        return AppliedRule{it->image, {true, static_cast<std::size_t>(it - exceptions_.begin())}, &it->hom};
    if (n < tail_start_)
        return std::nullopt;
    auto r = static_cast<std::size_t>(n % modulus_);
    const ResidueRule& rule = rules_[r];
    return AppliedRule{checked_affine(rule.scale, n / modulus_, rule.offset), {false, r}, &rule.hom};
}

std::vector<Preimage> CountableMap::preimages(Index v) const {
    std::vector<Preimage> out;
    auto [lo, hi] = std::equal_range(by_image_.begin(), by_image_.end(), std::make_pair(v, std::size_t{0}),
                                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = lo; it != hi; ++it) {
        // A duplicated exception index is shadowed by its first entry.
        const ExceptionRule& e = exceptions_[it->second];
        if (apply(e.n)->origin.which == it->second)
            out.push_back({e.n, {true, it->second}});
    }
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        const ResidueRule& rule = rules_[r];
        Index diff = 0;
        if (__builtin_sub_overflow(v, rule.offset, &diff))
            throw std::overflow_error("index arithmetic overflow");
        if (diff < 0 || diff % rule.scale != 0)
            continue;
        Index q = diff / rule.scale;
        if (q < first_quotient(r))
            continue;
        Index n = checked_affine(modulus_, q, static_cast<Index>(r));
        auto ex = std::lower_bound(exceptions_.begin(), exceptions_.end(), n,
                                   [](const ExceptionRule& e, Index x) { return e.n < x; });
        if (ex != exceptions_.end() && ex->n == n)
            continue;
        out.push_back({n, {false, r}});
    }
    return out;
}

std::optional<Preimage> CountableMap::predecessor(Index v) const {
    auto all = preimages(v);
    if (all.empty())
        return std::nullopt;
    if (all.size() > 1)
        throw AmbiguousPredecessor("index " + std::to_string(v) + " has preimages " +
                                   std::to_string(all[0].n) + " and " + std::to_string(all[1].n));
    return all.front();
}

CountableMap compose_countable(const CountableMap& second, const CountableMap& first) {
    if (!same_family(first.target(), second.source()))
        throw std::invalid_argument("family mismatch: target of first map is not source of second");
    const Index mf = first.modulus();
    const Index mg = second.modulus();

    Index start = first.tail_start();
    for (std::size_t r = 0; r < first.rules().size(); ++r) {
        const ResidueRule& rule = first.rules()[r];
        Index q = std::max(first.first_quotient(r), ceil_div(second.tail_start() - rule.offset, rule.scale));
        start = std::max(start, checked_affine(mf, q, static_cast<Index>(r)));
    }

    Index modulus = 0;
    if (__builtin_mul_overflow(mf, mg, &modulus))
        throw std::overflow_error("composite modulus overflow");
    std::vector<ResidueRule> rules;
    rules.reserve(static_cast<std::size_t>(modulus));
    for (Index s = 0; s < modulus; ++s) {
        const ResidueRule& rf = first.rules()[static_cast<std::size_t>(s % mf)];
        Index c = checked_affine(rf.scale, s / mf, rf.offset);
        const ResidueRule& rg = second.rules()[static_cast<std::size_t>(floor_mod(c, mg))];
        Index scale = 0;
        if (__builtin_mul_overflow(rg.scale, rf.scale, &scale))
            throw std::overflow_error("composite scale overflow");
        rules.push_back({scale, checked_affine(rg.scale, floor_div(c, mg), rg.offset),
                         compose_maps(rg.hom, rf.hom)});
    }

    std::vector<ExceptionRule> exceptions;
    for (Index n = 0; n < start; ++n) {
        auto a = first.apply(n);
        if (!a)
            throw HypothesisError("first map is undefined at index " + std::to_string(n));
        auto b = second.apply(a->image);
        if (!b)
            throw HypothesisError("second map is undefined at index " + std::to_string(a->image));
        exceptions.push_back({n, b->image, compose_maps(*b->hom, *a->hom)});
    }
    return CountableMap(first.source(), second.target(), std::move(exceptions), start, modulus,
                        std::move(rules));
}

CountableMap identity_countable(const FamilyPtr& family) {
    const auto period = static_cast<Index>(family->period());
    std::vector<ExceptionRule> exceptions;
    for (Index n = 0; n < family->tail_start; ++n)
        exceptions.push_back({n, n, identity_map(family->group_at(n).order())});
    std::vector<ResidueRule> rules;
    for (Index r = 0; r < period; ++r)
        rules.push_back({period, r, identity_map(family->shapes[family->tail_shapes[r]].order())});
    return CountableMap(family, family, std::move(exceptions), family->tail_start, period, std::move(rules));
}

ValidationReport validate_countable(const CountableMap& map, Index window) {
    if (window < map.tail_start() + map.modulus())
        throw PreconditionError("validation window must be at least tail_start + modulus");
    ValidationReport report;
    for (const auto* fam : {map.source().get(), map.target().get()}) {
        auto sub = validate_family(*fam);
        for (auto& v : sub.violations)
            add_violation(report, (fam == map.source().get() ? "source-" : "target-") + v.axiom,
                          v.indices, v.detail);
    }
    if (!report.ok())
        return report;

    std::set<Index> seen;
    for (const auto& e : map.exceptions()) {
        auto n = static_cast<std::size_t>(std::max<Index>(e.n, 0));
        if (e.n < 0)
            add_violation(report, "negative-index", {n});
        else if (e.n >= map.tail_start())
            add_violation(report, "exception-overlaps-tail", {n}, "exception index is covered by the residue rules");
        if (!seen.insert(e.n).second)
            add_violation(report, "duplicate-exception", {n});
    }
    for (Index n = 0; n < map.tail_start(); ++n)
        if (!seen.count(n))
            add_violation(report, "missing-exception", {static_cast<std::size_t>(n)});

    std::vector<std::pair<Index, Index>> images;  // (image, n)
    std::set<std::tuple<const GroupMap*, std::size_t, std::size_t>> checked;
    for (Index n = 0; n < window; ++n) {
        std::optional<AppliedRule> a;
        try {
            a = map.apply(n);
        } catch (const std::overflow_error&) {
            add_violation(report, "overflow", {static_cast<std::size_t>(n)});
            continue;
        }
        if (!a)
            continue;
        if (a->image < 0) {
            add_violation(report, "negative-image", {static_cast<std::size_t>(n)});
            continue;
        }
        images.emplace_back(a->image, n);
        std::size_t src_shape = map.source()->shape_at(n);
        std::size_t dst_shape = map.target()->shape_at(a->image);
        if (!checked.emplace(a->hom, src_shape, dst_shape).second)
            continue;
        const FiniteGroup& from = map.source()->shapes[src_shape];
        const FiniteGroup& to = map.target()->shapes[dst_shape];
        if (a->hom->size() != from.order() ||
            std::any_of(a->hom->begin(), a->hom->end(), [&](Element e) { return e >= to.order(); }))
            add_violation(report, "shape-mismatch", {static_cast<std::size_t>(n)},
                          "payload does not map " + map.source()->shape_names[src_shape] + " to " +
                              map.target()->shape_names[dst_shape]);
        else if (!is_homomorphism(from, to, *a->hom))
            add_violation(report, "not-a-homomorphism", {static_cast<std::size_t>(n)});
    }
    std::sort(images.begin(), images.end());
    for (std::size_t i = 1; i < images.size(); ++i)
        if (images[i].first == images[i - 1].first)
            add_violation(report, "non-injective",
                          {static_cast<std::size_t>(images[i - 1].second), static_cast<std::size_t>(images[i].second)},
                          "both map to " + std::to_string(images[i].first));

    // Exception images against the tail, beyond the window.
    for (const auto& e : map.exceptions()) {
        if (e.n < 0 || e.n >= map.tail_start())
            continue;
        try {
            for (const auto& pre : map.preimages(e.image))
                if (pre.n >= window)
                    add_violation(report, "non-injective",
                                  {static_cast<std::size_t>(e.n), static_cast<std::size_t>(pre.n)},
                                  "exception image " + std::to_string(e.image) + " is also hit by the tail");
        } catch (const std::overflow_error&) {
            add_violation(report, "overflow", {static_cast<std::size_t>(e.n)});
        }
    }
    return report;
}

const char* to_string(EmbeddingStatus s) {
    switch (s) {
    case EmbeddingStatus::Embedding: return "embedding";
    case EmbeddingStatus::LeftCancellableOnly: return "left-cancellable-only";
    case EmbeddingStatus::Neither: return "neither";
    }
    return "?";
}

namespace {

constexpr Index kCrossCheckWindow = 256;

EmbeddingStatus rule_level_status(const CountableMap& map, Index window) {
    auto report = validate_countable(map, window);
    if (report.mentions("non-injective"))
        return EmbeddingStatus::Neither;
    if (!report.ok())
        throw PreconditionError("countable map is invalid: " + report.violations.front().axiom);
    for (Index n = 0; n < window; ++n) {
        auto a = map.apply(n);
        if (a && !is_bijective(*a->hom, map.target()->group_at(a->image).order()))
            return EmbeddingStatus::LeftCancellableOnly;
    }
    return EmbeddingStatus::Embedding;
}

EmbeddingStatus materialized_status(const CountableMap& map, Index window) {
    Index top = 0;
    for (Index n = 0; n < window; ++n)
        top = std::max(top, map.apply(n)->image);
    auto src = std::make_shared<const Groupoid>(materialize_family(*map.source(), window));
    auto dst = std::make_shared<const Groupoid>(materialize_family(*map.target(), top + 1));
    Functor f = materialize_map(map, src, window, dst, top + 1);
    if (is_embedding_homwise(f))
        return EmbeddingStatus::Embedding;
    return is_left_cancellable(f) ? EmbeddingStatus::LeftCancellableOnly : EmbeddingStatus::Neither;
}

}  // namespace

EmbeddingStatus embedding_status_countable(const CountableMap& map, Index window) {
    EmbeddingStatus status = rule_level_status(map, window);
    Index cross = std::min(window, std::max(kCrossCheckWindow, map.tail_start() + map.modulus()));
    EmbeddingStatus expected = cross == window ? status : rule_level_status(map, cross);
    if (materialized_status(map, cross) != expected)
        throw std::logic_error("rule-level embedding verdict disagrees with the materialized window");
    return status;
}

CountableProblem::CountableProblem(FamilyPtr x, FamilyPtr y, CountableMap f, CountableMap g)
    : x_(std::move(x)), y_(std::move(y)), f_(std::move(f)), g_(std::move(g)) {
    if (!same_family(f_.source(), x_) || !same_family(f_.target(), y_))
        throw HypothesisError("F must map X to Y");
    if (!same_family(g_.source(), y_) || !same_family(g_.target(), x_))
        throw HypothesisError("G must map Y to X");
    gf_ = compose_countable(g_, f_);
}

const char* to_string(ChainKind k) {
    switch (k) {
    case ChainKind::YStopper: return "YStopper";
    case ChainKind::XStopper: return "XStopper";
    case ChainKind::Cyclic: return "Cyclic";
    case ChainKind::ProvablyInfinite: return "ProvablyInfinite";
    case ChainKind::Undetermined: return "Undetermined";
    }
    return "?";
}

const char* to_string(Truth t) {
    switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Undetermined: return "undetermined";
    }
    return "?";
}

const char* to_string(HBranch b) {
    switch (b) {
    case HBranch::GInverse: return "g_inverse";
    case HBranch::F: return "f";
    case HBranch::Undetermined: return "undetermined";
    }
    return "?";
}

ChainVerdict backward_chain(const CountableMap& composite, const CountableMap& g, Index x,
                            const ChainOptions& options) {
    ChainVerdict v;
    v.prefix.push_back(x);
    Index cur = x;
    std::int64_t moves = 0;
    try {
        for (;;) {
            auto pre = composite.predecessor(cur);
            if (!pre) {
                v.kind = g.predecessor(cur) ? ChainKind::YStopper : ChainKind::XStopper;
                v.root = cur;
                v.steps = moves;
                return v;
            }
            if (options.detect_divergence && !pre->origin.from_exception &&
                diverges(composite, cur, pre->origin.which)) {
                v.kind = ChainKind::ProvablyInfinite;
                v.steps = moves;
                return v;
            }
            if (moves >= options.budget) {
                v.kind = ChainKind::Undetermined;
                v.steps = moves;
                return v;
            }
            cur = pre->n;
            ++moves;
            v.prefix.push_back(cur);
            if (cur == x) {
                v.kind = ChainKind::Cyclic;
                v.steps = moves;
                return v;
            }
        }
    } catch (const std::overflow_error&) {
        v.kind = ChainKind::Undetermined;
        v.steps = moves;
        v.overflow = true;
    }
    return v;
}

CountableGPoint is_g_point_countable(const CountableProblem& problem, Index x, const ChainOptions& options) {
    ChainVerdict chain = backward_chain(problem.composite(), problem.g(), x, options);
    Truth value = Truth::True;
    if (chain.kind == ChainKind::XStopper)
        value = Truth::False;
    else if (chain.kind == ChainKind::Undetermined)
        value = Truth::Undetermined;
    return {value, std::move(chain)};
}

ChainTable decompose_window(const CountableProblem& problem, Index window, const ChainOptions& options) {
    if (window < 0)
        throw std::invalid_argument("window must be non-negative");
    const CountableMap& gf = problem.composite();
    const CountableMap& g = problem.g();
    const std::int64_t budget = options.budget;

    ChainTable table;
    table.window = window;
    table.options = options;
    table.entries.assign(static_cast<std::size_t>(window), {});
    std::vector<char> done(static_cast<std::size_t>(window), 0);
    auto in_window = [&](Index n) { return n >= 0 && n < window; };
    std::vector<Index> path;

    auto settle = [&](std::size_t i, ChainEntry e) {
        Index node = path[i];
        if (!in_window(node))
            return;
        table.entries[static_cast<std::size_t>(node)] = e;
        done[static_cast<std::size_t>(node)] = 1;
    };

    for (Index x = 0; x < window; ++x) {
        if (done[static_cast<std::size_t>(x)])
            continue;
        path.assign(1, x);
        Index cur = x;
        std::int64_t moves = 0;
        try {
            for (;;) {
                auto next_of = [&](std::size_t i, Index fallback) {
                    return i + 1 < path.size() ? path[i + 1] : fallback;
                };
                auto pre = gf.predecessor(cur);
                if (!pre) {
                    ChainKind kind = g.predecessor(cur) ? ChainKind::YStopper : ChainKind::XStopper;
                    for (std::size_t i = 0; i < path.size(); ++i)
                        settle(i, {kind, cur, moves - static_cast<std::int64_t>(i), next_of(i, -1), false});
                    break;
                }
                if (options.detect_divergence && !pre->origin.from_exception &&
                    diverges(gf, cur, pre->origin.which)) {
                    for (std::size_t i = 0; i < path.size(); ++i)
                        settle(i, {ChainKind::ProvablyInfinite, -1, moves - static_cast<std::int64_t>(i),
                                   next_of(i, pre->n), false});
                    break;
                }
                if (moves >= budget) {
                    // Only x is settled; later path nodes have budget left.
                    settle(0, {ChainKind::Undetermined, -1, moves, next_of(0, pre->n), false});
                    break;
                }
                Index p = pre->n;
                ++moves;
                if (p == x) {
                    for (std::size_t i = 0; i < path.size(); ++i)
                        settle(i, {ChainKind::Cyclic, -1, moves, next_of(i, x), false});
                    break;
                }
                if (in_window(p) && done[static_cast<std::size_t>(p)]) {
                    const ChainEntry known = table.entries[static_cast<std::size_t>(p)];
                    if (known.kind == ChainKind::Cyclic)
                        throw std::logic_error("chain enters a cycle that does not contain it");
                    for (std::size_t i = 0; i < path.size(); ++i) {
                        std::int64_t dist = moves - static_cast<std::int64_t>(i);
                        ChainEntry e{known.kind, known.root, known.steps + dist, next_of(i, p), known.overflow};
                        if (known.kind == ChainKind::Undetermined)
                            e.root = -1;
                        if (e.steps > budget)
                            e = {ChainKind::Undetermined, -1, budget, next_of(i, p), false};
                        settle(i, e);
                    }
                    break;
                }
                path.push_back(p);
                cur = p;
            }
        } catch (const std::overflow_error&) {
            settle(0, {ChainKind::Undetermined, -1, moves, path.size() > 1 ? path[1] : -1, true});
        }
    }
    return table;
}

WindowedH index_h_window(const CountableProblem& problem, const ChainTable& table) {
    WindowedH h;
    h.window = table.window;
    h.entries.resize(table.entries.size());
    for (Index x = 0; x < table.window; ++x) {
        const ChainEntry& e = table.entries[static_cast<std::size_t>(x)];
        HEntry& out = h.entries[static_cast<std::size_t>(x)];
        switch (e.kind) {
        case ChainKind::Undetermined:
            out.branch = HBranch::Undetermined;
            h.undetermined.push_back(x);
            continue;
        case ChainKind::XStopper:
            out.branch = HBranch::F;
            out.image = problem.f().apply(x)->image;
            break;
        default: {
            auto pre = problem.g().predecessor(x);
            if (!pre)
                throw std::logic_error("g-point " + std::to_string(x) + " has no G-preimage");
            out.branch = HBranch::GInverse;
            out.image = pre->n;
        }
        }
        if (out.image >= table.window)
            h.frontier.push_back(x);
    }
    return h;
}

WindowedH construct_h_window(const CountableProblem& problem, Index window, const ChainOptions& options) {
    const CountableMap& f = problem.f();
    const CountableMap& g = problem.g();
    Index check_window = std::max({window, f.tail_start() + f.modulus(), g.tail_start() + g.modulus()});
    for (const auto& [map, name] : {std::pair{&f, "F"}, std::pair{&g, "G"}}) {
        EmbeddingStatus s = embedding_status_countable(*map, check_window);
        if (s != EmbeddingStatus::Embedding)
            throw HypothesisError(std::string(name) + " is not an embedding (" + to_string(s) + ")");
    }
    ChainTable table = decompose_window(problem, window, options);
    WindowedH h = index_h_window(problem, table);
    for (Index x = 0; x < window; ++x) {
        HEntry& e = h.entries[static_cast<std::size_t>(x)];
        if (e.branch == HBranch::F) {
            e.hom = *f.apply(x)->hom;
        } else if (e.branch == HBranch::GInverse) {
            auto applied = g.apply(e.image);
            e.hom = invert_bijection(*applied->hom);
        }
    }
    return h;
}

FamilyEquivalence families_equivalent(const CountableFamily& a, const CountableFamily& b) {
    // Shape isomorphism types across both families.
    std::vector<const FiniteGroup*> reps;
    std::vector<std::string> rep_names;
    auto type_of = [&](const FiniteGroup& g, const std::string& name) {
        for (std::size_t t = 0; t < reps.size(); ++t)
            if (groups_isomorphic(*reps[t], g))
                return t;
        reps.push_back(&g);
        rep_names.push_back(name);
        return reps.size() - 1;
    };
    struct Census {
        std::set<std::size_t> infinite;
        std::map<std::size_t, std::size_t> finite;
    };
    auto census = [&](const CountableFamily& fam) {
        Census c;
        for (std::size_t id : fam.tail_shapes)
            c.infinite.insert(type_of(fam.shapes[id], fam.shape_names[id]));
        std::set<Index> counted;
        for (const auto& [n, id] : fam.exceptions) {
            if (n < 0 || n >= fam.tail_start || !counted.insert(n).second)
                continue;
            std::size_t t = type_of(fam.shapes[id], fam.shape_names[id]);
            if (!c.infinite.count(t))
                ++c.finite[t];
        }
        return c;
    };
    Census ca = census(a);
    Census cb = census(b);
    for (std::size_t t = 0; t < reps.size(); ++t) {
        bool ia = ca.infinite.count(t), ib = cb.infinite.count(t);
        std::size_t na = ca.finite.count(t) ? ca.finite[t] : 0;
        std::size_t nb = cb.finite.count(t) ? cb.finite[t] : 0;
        if (ia != ib) {
            return {false, "shape " + rep_names[t] + " occurs infinitely often in only one family"};
        }
        if (!ia && na != nb)
            return {false, "shape " + rep_names[t] + " occurs " + std::to_string(na) + " vs " +
                               std::to_string(nb) + " times"};
    }
    return {true, "every shape type occurs equally often"};
}

Groupoid materialize_family(const CountableFamily& family, Index count) {
    std::vector<Arrow> arrows;
    std::vector<MorphismIndex> identity;
    std::vector<ComposeEntry> compose;
    for (Index n = 0; n < count; ++n) {
        const FiniteGroup& g = family.group_at(n);
        auto base = static_cast<MorphismIndex>(arrows.size());
        auto obj = static_cast<ObjectIndex>(n);
        for (std::size_t e = 0; e < g.order(); ++e)
            arrows.push_back({obj, obj});
        identity.push_back(base + g.identity());
        for (Element s = 0; s < g.order(); ++s)
            for (Element f = 0; f < g.order(); ++f)
                compose.push_back({base + s, base + f, base + g.mul(s, f)});
    }
    return Groupoid(static_cast<std::size_t>(count), std::move(arrows), std::move(identity), compose);
}

Functor materialize_map(const CountableMap& map, const GroupoidPtr& source, Index source_count,
                        const GroupoidPtr& target, Index target_count) {
    std::vector<MorphismIndex> target_base;
    MorphismIndex acc = 0;
    for (Index n = 0; n < target_count; ++n) {
        target_base.push_back(acc);
        acc += static_cast<MorphismIndex>(map.target()->group_at(n).order());
    }
    Functor f{source, target, {}, {}};
    for (Index n = 0; n < source_count; ++n) {
        auto a = map.apply(n);
        if (!a || a->image < 0 || a->image >= target_count)
            throw std::out_of_range("image of " + std::to_string(n) + " leaves the target window");
        f.obj_map.push_back(static_cast<ObjectIndex>(a->image));
        for (Element e : *a->hom)
            f.mor_map.push_back(target_base[static_cast<std::size_t>(a->image)] + e);
    }
    return f;
}

void write_chains_dot(std::ostream& out, const ChainTable& table) {
    auto color = [](ChainKind k) {
        switch (k) {
        case ChainKind::YStopper: return "palegreen";
        case ChainKind::XStopper: return "lightcoral";
        case ChainKind::Cyclic: return "lightblue";
        case ChainKind::ProvablyInfinite: return "orange";
        case ChainKind::Undetermined: return "lightgray";
        }
        return "white";
    };
    out << "digraph chains {\n  rankdir=RL;\n  node [shape=circle, style=filled];\n";
    std::map<Index, ChainKind> roots;
    for (Index x = 0; x < table.window; ++x) {
        const ChainEntry& e = table.entries[static_cast<std::size_t>(x)];
        if ((e.kind == ChainKind::YStopper || e.kind == ChainKind::XStopper) && e.root >= 0)
            roots.emplace(e.root, e.kind);
    }
    for (Index x = 0; x < table.window; ++x) {
        const ChainEntry& e = table.entries[static_cast<std::size_t>(x)];
        out << "  n" << x << " [label=\"" << x << "\", fillcolor=" << color(e.kind);
        if (roots.count(x))
            out << ", shape=doublecircle";
        out << "];\n";
    }
    for (const auto& [r, kind] : roots)
        if (r >= table.window)
            out << "  n" << r << " [label=\"" << r << "\", fillcolor=" << color(kind)
                << ", shape=doublecircle];\n";
    for (Index x = 0; x < table.window; ++x) {
        const ChainEntry& e = table.entries[static_cast<std::size_t>(x)];
        if (e.predecessor >= 0)
            out << "  n" << x << " -> n" << e.predecessor << ";\n";
    }
    out << "}\n";
}

}  // namespace csb
