#include "csb/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "csb/errors.hpp"

namespace csb::catalog {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::size_t parse_count(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw std::invalid_argument("expected a non-negative integer, got '" + s + "'");
    return std::stoul(s);
}

FiniteGroup factor_by_name(const std::string& name) {
    if (name == "trivial" || name == "1")
        return groups::trivial();
    if (name == "S3")
        return groups::symmetric3();
    if (name.size() > 1 && (name[0] == 'Z' || name[0] == 'D')) {
        std::size_t k = parse_count(name.substr(1));
        if (k == 0)
            throw std::invalid_argument("group order must be positive: " + name);
        return name[0] == 'Z' ? groups::cyclic(k) : groups::dihedral(k);
    }
    throw std::invalid_argument("unknown group '" + name + "'");
}

/// Splits "a,b(c,d),e" at top-level commas.
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty())
        out.push_back(trim(cur));
    return out;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, std::size_t num, std::size_t den) { return uniform(rng, 1, den) <= num; }

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[uniform(rng, 0, v.size() - 1)];
}

std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

BlockAssignment random_assignment(std::mt19937_64& rng, const StructuredGroupoid::Block& from,
                                  const StructuredGroupoid::Block& to, std::size_t target, GroupMap phi) {
    BlockAssignment a{target, std::move(phi), {}, {}};
    for (std::size_t i = 0; i < from.size(); ++i) {
        a.object_map.push_back(uniform(rng, 0, to.size() - 1));
        a.twists.push_back(static_cast<Element>(uniform(rng, 0, to.group.order() - 1)));
    }
    return a;
}

GroupMap random_automorphism(std::mt19937_64& rng, const FiniteGroup& g) {
    return pick(rng, all_isomorphisms(g, g));
}

/// Pairs the blocks of `from` with blocks of `to` carrying the same pool
/// shape, at random.
std::vector<std::size_t> shape_matching(std::mt19937_64& rng, const std::vector<std::size_t>& from_shapes,
                                        const std::vector<std::size_t>& to_shapes) {
    std::map<std::size_t, std::vector<std::size_t>> free;
    for (std::size_t c = 0; c < to_shapes.size(); ++c)
        free[to_shapes[c]].push_back(c);
    for (auto& [shape, list] : free)
        std::shuffle(list.begin(), list.end(), rng);
    std::vector<std::size_t> match;
    for (std::size_t s : from_shapes) {
        match.push_back(free[s].back());
        free[s].pop_back();
    }
    return match;
}

std::string join(const std::vector<Index>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

GroupMap trivial_into(const FiniteGroup& g) { return {g.identity()}; }

}  // namespace

FiniteGroup group_by_name(const std::string& name) {
    std::vector<std::string> factors;
    std::stringstream ss(name);
    for (std::string part; std::getline(ss, part, 'x');)
        factors.push_back(trim(part));
    if (factors.empty())
        throw std::invalid_argument("empty group name");
    FiniteGroup g = factor_by_name(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i)
        g = groups::product(g, factor_by_name(factors[i]));
    return g;
}

std::vector<NamedGroup> default_pool() {
    std::vector<NamedGroup> pool;
    for (const char* name : {"trivial", "Z2", "Z3", "Z4", "Z2xZ2", "Z6", "S3", "Z8"})
        pool.push_back({name, group_by_name(name)});
    return pool;
}

Groupoid discrete(std::size_t n) {
    std::vector<Arrow> arrows;
    std::vector<MorphismIndex> identity;
    std::vector<ComposeEntry> compose;
    for (std::size_t i = 0; i < n; ++i) {
        auto x = static_cast<ObjectIndex>(i);
        arrows.push_back({x, x});
        identity.push_back(x);
        compose.push_back({x, x, x});
    }
    return Groupoid(n, std::move(arrows), std::move(identity), compose);
}

Groupoid delooping(const FiniteGroup& g) {
    std::vector<Arrow> arrows(g.order(), Arrow{0, 0});
    std::vector<ComposeEntry> compose;
    for (Element s = 0; s < g.order(); ++s)
        for (Element f = 0; f < g.order(); ++f)
            compose.push_back({s, f, g.mul(s, f)});
    return Groupoid(1, std::move(arrows), {g.identity()}, compose);
}

Groupoid disjoint_union(const std::vector<Groupoid>& parts) {
    std::vector<Arrow> arrows;
    std::vector<MorphismIndex> identity;
    std::vector<ComposeEntry> compose;
    ObjectIndex obase = 0;
    for (const Groupoid& p : parts) {
        auto mbase = static_cast<MorphismIndex>(arrows.size());
        for (const Arrow& a : p.arrows())
            arrows.push_back({a.src + obase, a.dst + obase});
        for (MorphismIndex id : p.identities())
            identity.push_back(id + mbase);
        for (const ComposeEntry& e : p.compose_entries())
            compose.push_back({e.second + mbase, e.first + mbase, e.result + mbase});
        obase += static_cast<ObjectIndex>(p.object_count());
    }
    return Groupoid(obase, std::move(arrows), std::move(identity), compose);
}

Groupoid n_copies(std::size_t n, const FiniteGroup& g) {
    return disjoint_union(std::vector<Groupoid>(n, delooping(g)));
}

Groupoid connected(std::size_t objects, const FiniteGroup& g) {
    if (objects == 0)
        throw std::invalid_argument("connected groupoid needs at least one object");
    return *structured({{g, objects}}).groupoid;
}

Groupoid build(const std::string& expr) {
    std::string e = trim(expr);
    auto open = e.find('(');
    if (open == std::string::npos || e.back() != ')')
        throw std::invalid_argument("expected kind(args): '" + e + "'");
    std::string kind = trim(e.substr(0, open));
    auto args = split_args(e.substr(open + 1, e.size() - open - 2));
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument(kind + " takes " + std::to_string(n) + " argument(s)");
    };
    if (kind == "discrete") {
        want(1);
        return discrete(parse_count(args[0]));
    }
    if (kind == "delooping") {
        want(1);
        return delooping(group_by_name(args[0]));
    }
    if (kind == "n_copies") {
        want(2);
        return n_copies(parse_count(args[0]), group_by_name(args[1]));
    }
    if (kind == "connected") {
        want(2);
        return connected(parse_count(args[0]), group_by_name(args[1]));
    }
    if (kind == "disjoint_union") {
        std::vector<Groupoid> parts;
        for (const auto& a : args)
            parts.push_back(build(a));
        return disjoint_union(parts);
    }
    throw std::invalid_argument("unknown groupoid kind '" + kind + "'");
}

StructuredGroupoid structured(const std::vector<std::pair<FiniteGroup, std::size_t>>& blocks,
                              std::mt19937_64* rng) {
    std::size_t objects = 0, morphisms = 0;
    for (const auto& [g, k] : blocks) {
        objects += k;
        morphisms += k * k * g.order();
    }
    std::vector<std::size_t> operm(objects), mperm(morphisms);
    std::iota(operm.begin(), operm.end(), 0);
    std::iota(mperm.begin(), mperm.end(), 0);
    if (rng) {
        std::shuffle(operm.begin(), operm.end(), *rng);
        std::shuffle(mperm.begin(), mperm.end(), *rng);
    }

    StructuredGroupoid out;
    std::vector<Arrow> arrows(morphisms);
    std::vector<MorphismIndex> identity(objects);
    std::vector<ComposeEntry> compose;
    std::size_t onext = 0, mnext = 0;
    for (const auto& [g, k] : blocks) {
        StructuredGroupoid::Block b{g, {}, {}};
        for (std::size_t i = 0; i < k; ++i)
            b.objects.push_back(static_cast<ObjectIndex>(operm[onext++]));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (Element h = 0; h < g.order(); ++h) {
                    auto m = static_cast<MorphismIndex>(mperm[mnext++]);
                    b.morphisms.push_back(m);
                    arrows[m] = {b.objects[i], b.objects[j]};
                }
        for (std::size_t i = 0; i < k; ++i)
            identity[b.objects[i]] = b.at(i, i, g.identity());
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    for (Element h1 = 0; h1 < g.order(); ++h1)
                        for (Element h2 = 0; h2 < g.order(); ++h2)
                            compose.push_back({b.at(j, l, h2), b.at(i, j, h1), b.at(i, l, g.mul(h2, h1))});
        out.blocks.push_back(std::move(b));
    }
    out.groupoid = std::make_shared<const Groupoid>(objects, std::move(arrows), std::move(identity), compose);
    return out;
}

Functor block_functor(const StructuredGroupoid& source, const StructuredGroupoid& target,
                      const std::vector<BlockAssignment>& assignment) {
    Functor f{source.groupoid, target.groupoid, std::vector<ObjectIndex>(source.groupoid->object_count()),
              std::vector<MorphismIndex>(source.groupoid->morphism_count())};
    for (std::size_t b = 0; b < source.blocks.size(); ++b) {
        const auto& from = source.blocks[b];
        const auto& a = assignment[b];
        const auto& to = target.blocks[a.target_block];
        const FiniteGroup& h = to.group;
        for (std::size_t i = 0; i < from.size(); ++i)
            f.obj_map[from.objects[i]] = to.objects[a.object_map[i]];
        for (std::size_t i = 0; i < from.size(); ++i)
            for (std::size_t j = 0; j < from.size(); ++j)
                for (Element e = 0; e < from.group.order(); ++e) {
                    Element img = h.mul(h.mul(a.twists[j], a.phi[e]), h.inverse(a.twists[i]));
                    f.mor_map[from.at(i, j, e)] = to.at(a.object_map[i], a.object_map[j], img);
                }
    }
    return f;
}

void check_params(const GeneratorParams& params) {
    if (params.pool.empty())
        throw std::invalid_argument("generator pool is empty");
    if (params.max_classes == 0 || params.fanout == 0)
        throw std::invalid_argument("generator bounds must be positive");
}

Groupoid random_groupoid(const GeneratorParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    std::size_t classes = uniform(rng, 1, params.max_classes);
    std::vector<std::pair<FiniteGroup, std::size_t>> blocks;
    for (std::size_t c = 0; c < classes; ++c)
        blocks.emplace_back(pick(rng, params.pool).group, uniform(rng, 1, params.fanout));
    return *structured(blocks, &rng).groupoid;
}

Functor random_functor(const GeneratorParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    auto random_shapes = [&](std::size_t n) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            s.push_back(uniform(rng, 0, params.pool.size() - 1));
        return s;
    };
    // 0: shape-matched injection with isomorphisms, one block possibly
    // degraded; 1: random injection; 2: anything.
    const std::size_t mode = uniform(rng, 0, 2);
    std::vector<std::size_t> xs = random_shapes(uniform(rng, 1, params.max_classes));
    std::vector<std::size_t> ys;
    if (mode < 2) {
        ys = xs;
        std::size_t extra = uniform(rng, 0, params.max_classes - std::min(params.max_classes, xs.size()));
        for (std::size_t s : random_shapes(extra))
            ys.push_back(s);
        std::shuffle(ys.begin(), ys.end(), rng);
    } else {
        ys = random_shapes(uniform(rng, 1, params.max_classes));
    }
    auto layout = [&](const std::vector<std::size_t>& shapes) {
        std::vector<std::pair<FiniteGroup, std::size_t>> blocks;
        for (std::size_t s : shapes)
            blocks.emplace_back(params.pool[s].group, uniform(rng, 1, params.fanout));
        return structured(blocks, &rng);
    };
    StructuredGroupoid x = layout(xs);
    StructuredGroupoid y = layout(ys);

    std::vector<std::size_t> targets;
    if (mode == 0) {
        targets = shape_matching(rng, xs, ys);
    } else if (mode == 1) {
        auto perm = random_permutation(rng, ys.size());
        targets.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(xs.size()));
    } else {
        for (std::size_t b = 0; b < xs.size(); ++b)
            targets.push_back(uniform(rng, 0, ys.size() - 1));
    }
    const std::size_t degraded = mode == 0 && coin(rng, 1, 3) ? uniform(rng, 0, xs.size() - 1) : xs.size();
    std::vector<BlockAssignment> assignment;
    for (std::size_t b = 0; b < xs.size(); ++b) {
        const FiniteGroup& from = x.blocks[b].group;
        const FiniteGroup& to = y.blocks[targets[b]].group;
        auto isos = all_isomorphisms(from, to);
        bool use_iso = !isos.empty() && (mode == 0 ? b != degraded : coin(rng, 3, 4));
        GroupMap phi = use_iso ? pick(rng, isos) : pick(rng, all_homomorphisms(from, to));
        assignment.push_back(random_assignment(rng, x.blocks[b], y.blocks[targets[b]], targets[b], phi));
    }
    return block_functor(x, y, assignment);
}

CsbProblem random_embedding_pair(const GeneratorParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    std::size_t n = uniform(rng, 1, params.max_classes);
    std::vector<std::size_t> xs;
    for (std::size_t i = 0; i < n; ++i)
        xs.push_back(uniform(rng, 0, params.pool.size() - 1));
    std::vector<std::size_t> ys = xs;
    std::shuffle(ys.begin(), ys.end(), rng);
    auto layout = [&](const std::vector<std::size_t>& shapes) {
        std::vector<std::pair<FiniteGroup, std::size_t>> blocks;
        for (std::size_t s : shapes)
            blocks.emplace_back(params.pool[s].group, uniform(rng, 1, params.fanout));
        return structured(blocks, &rng);
    };
    StructuredGroupoid x = layout(xs);
    StructuredGroupoid y = layout(ys);
    auto embed = [&](const StructuredGroupoid& from, const std::vector<std::size_t>& from_shapes,
                     const StructuredGroupoid& to, const std::vector<std::size_t>& to_shapes) {
        auto match = shape_matching(rng, from_shapes, to_shapes);
        std::vector<BlockAssignment> assignment;
        for (std::size_t b = 0; b < from.blocks.size(); ++b)
            assignment.push_back(random_assignment(rng, from.blocks[b], to.blocks[match[b]], match[b],
                                                   random_automorphism(rng, from.blocks[b].group)));
        return block_functor(from, to, assignment);
    };
    Functor f = embed(x, xs, y, ys);
    Functor g = embed(y, ys, x, xs);
    return CsbProblem(x.groupoid, y.groupoid, std::move(f), std::move(g));
}

ConnectedInstance random_connected_instance(const GeneratorParams& params) {
    check_params(params);
    std::mt19937_64 rng(params.seed);
    const FiniteGroup& h = pick(rng, params.pool).group;
    StructuredGroupoid x = structured({{h, uniform(rng, 1, params.fanout)}}, &rng);
    StructuredGroupoid y = structured({{h, uniform(rng, 1, params.fanout)}}, &rng);
    Functor g = block_functor(y, x, {random_assignment(rng, y.blocks[0], x.blocks[0], 0, random_automorphism(rng, h))});
    Functor f = block_functor(x, y, {random_assignment(rng, x.blocks[0], y.blocks[0], 0, pick(rng, all_homomorphisms(h, h)))});
    return {x.groupoid, y.groupoid, std::move(f), std::move(g)};
}

CountableFamily constant_family(const std::string& shape_name, const FiniteGroup& g) {
    CountableFamily f;
    f.shape_names = {shape_name};
    f.shapes = {g};
    f.tail_shapes = {0};
    return f;
}

CountableMap affine_discrete_map(const FamilyPtr& source, const FamilyPtr& target, Index scale, Index offset) {
    return CountableMap(source, target, {}, 0, 1, {{scale, offset, {0}}});
}

namespace {

template <class T>
const T& lookup(const std::vector<std::pair<std::string, T>>& items, const std::string& key, const char* what) {
    for (const auto& [k, v] : items)
        if (k == key)
            return v;
    throw std::out_of_range(std::string("no ") + what + " named '" + key + "'");
}

Functor functor_from_maps(const GroupoidPtr& s, const GroupoidPtr& t, std::vector<ObjectIndex> obj,
                          std::vector<MorphismIndex> mor) {
    return Functor{s, t, std::move(obj), std::move(mor)};
}

/// delooping(g) -> delooping(g2) along a homomorphism.
Functor delooping_functor(const GroupoidPtr& s, const GroupoidPtr& t, const GroupMap& phi) {
    return functor_from_maps(s, t, {0}, {phi.begin(), phi.end()});
}

NamedExample point_into_circle() {
    NamedExample ex;
    ex.name = "point_into_circle";
    ex.description = "The point picking out the object of the delooping of Z2: left-cancellable, not an embedding.";
    auto x = std::make_shared<const Groupoid>(discrete(1));
    auto y = std::make_shared<const Groupoid>(delooping(groups::cyclic(2)));
    ex.groupoids = {{"X", x}, {"Y", y}};
    ex.functors = {{"F", delooping_functor(x, y, {0})}};
    ex.expectations = {{"left_cancellable", {"F"}, "true"}, {"embedding", {"F"}, "false"}};
    return ex;
}

NamedExample lc_csb_fails() {
    NamedExample ex;
    ex.name = "lc_csb_fails";
    ex.description = "A point and the delooping of Z2 map into each other left-cancellably, yet are not equivalent.";
    auto x = std::make_shared<const Groupoid>(discrete(1));
    auto y = std::make_shared<const Groupoid>(delooping(groups::cyclic(2)));
    ex.groupoids = {{"X", x}, {"Y", y}};
    ex.functors = {{"F", delooping_functor(x, y, {0})}, {"G", delooping_functor(y, x, {0, 0})}};
    ex.expectations = {{"left_cancellable", {"F"}, "true"},
                       {"left_cancellable", {"G"}, "true"},
                       {"embedding", {"F"}, "false"},
                       {"embedding", {"G"}, "false"},
                       {"groupoids_equivalent", {"X", "Y"}, "false"}};
    return ex;
}

NamedExample component_swap() {
    NamedExample ex;
    ex.name = "component_swap";
    ex.description = "Two copies of the delooping of Z3; F swaps the components, G is the identity.";
    auto x = std::make_shared<const Groupoid>(n_copies(2, groups::cyclic(3)));
    ex.groupoids = {{"X", x}, {"Y", x}};
    ex.functors = {{"F", functor_from_maps(x, x, {1, 0}, {3, 4, 5, 0, 1, 2})}, {"G", identity_functor(x)}};
    ex.expectations = {{"embedding", {"F"}, "true"},
                       {"embedding", {"G"}, "true"},
                       {"class_map", {"F", "G"}, "1,0"},
                       {"csb_certificate", {"F", "G"}, "valid"}};
    return ex;
}

NamedExample identity_example() {
    NamedExample ex;
    ex.name = "identity";
    ex.description = "Identity functors both ways on a groupoid with three classes.";
    auto x = std::make_shared<const Groupoid>(build("disjoint_union(delooping(S3),connected(2,Z2),discrete(1))"));
    ex.groupoids = {{"X", x}, {"Y", x}};
    ex.functors = {{"F", identity_functor(x)}, {"G", identity_functor(x)}};
    ex.expectations = {{"embedding", {"F"}, "true"},
                       {"class_map", {"F", "G"}, "0,1,2"},
                       {"csb_certificate", {"F", "G"}, "valid"},
                       {"groupoids_equivalent", {"X", "Y"}, "true"}};
    return ex;
}

NamedExample discrete_shift_pair(const std::string& name, const std::string& description, Index f_offset,
                                 Index g_offset) {
    NamedExample ex;
    ex.name = name;
    ex.description = description;
    auto fam = std::make_shared<const CountableFamily>(discrete_family());
    ex.families = {{"X", fam}, {"Y", fam}};
    ex.maps = {{"F", affine_discrete_map(fam, fam, 1, f_offset)}, {"G", affine_discrete_map(fam, fam, 1, g_offset)}};
    return ex;
}

NamedExample evens_odds() {
    auto ex = discrete_shift_pair("evens_odds", "Discrete families with f(n) = n+1 and g(n) = n+1.", 1, 1);
    ex.expectations = {{"embedding_status", {"F"}, "embedding"},
                       {"embedding_status", {"G"}, "embedding"},
                       {"families_equivalent", {"X", "Y"}, "true"},
                       {"chain_kinds", {"F", "G", "20"}, "YStopper:10,XStopper:10"},
                       {"h_prefix", {"F", "G", "10"}, "1,0,3,2,5,4,7,6,9,8"}};
    return ex;
}

NamedExample hilbert_hotel() {
    auto ex = discrete_shift_pair("hilbert_hotel", "Discrete families with f(n) = n and g(n) = n+1.", 0, 1);
    ex.expectations = {{"embedding_status", {"F"}, "embedding"},
                       {"embedding_status", {"G"}, "embedding"},
                       {"chain_kinds", {"F", "G", "20"}, "XStopper:20"},
                       {"h_prefix", {"F", "G", "10"}, "0,1,2,3,4,5,6,7,8,9"}};
    return ex;
}

NamedExample pradic_pair(std::size_t k) {
    NamedExample ex;
    ex.name = "pradic_pair(" + std::to_string(k) + ")";
    ex.description = "All classes B(Z" + std::to_string(k) +
                     ") versus one point followed by such classes; the shift forward is an "
                     "embedding, the map back is only left-cancellable.";
    const std::string zk = "Z" + std::to_string(k);
    FiniteGroup g = groups::cyclic(k);
    auto x = std::make_shared<const CountableFamily>(constant_family(zk, g));
    CountableFamily yf;
    yf.shape_names = {"trivial", zk};
    yf.shapes = {groups::trivial(), g};
    yf.exceptions = {{0, 0}};
    yf.tail_start = 1;
    yf.tail_shapes = {1};
    auto y = std::make_shared<const CountableFamily>(std::move(yf));
    GroupMap id(k);
    std::iota(id.begin(), id.end(), 0);
    CountableMap f(x, y, {}, 0, 1, {{1, 1, id}});
    CountableMap gm(y, x, {{0, 0, trivial_into(g)}}, 1, 1, {{1, 0, id}});
    ex.families = {{"X", x}, {"Y", y}};
    ex.maps = {{"F", std::move(f)}, {"G", std::move(gm)}};
    ex.expectations = {{"embedding_status", {"F"}, "embedding"},
                       {"embedding_status", {"G"}, "left-cancellable-only"},
                       {"families_equivalent", {"X", "Y"}, "false"},
                       {"chain_kinds", {"F", "G", "20"}, "YStopper:20"},
                       {"h_prefix", {"F", "G", "10"}, "0,1,2,3,4,5,6,7,8,9"}};
    return ex;
}

NamedExample chain_divergence() {
    NamedExample ex;
    ex.name = "chain_divergence";
    ex.description = "G permutes the naturals by 0 -> 2, 1 -> 0, 2q -> 2q+2, 2q+1 -> 2q-1 (q >= 1); the "
                     "backward orbit of 0 runs off to infinity.";
    auto fam = std::make_shared<const CountableFamily>(discrete_family());
    ex.families = {{"X", fam}, {"Y", fam}};
    ex.maps = {{"F", identity_countable(fam)},
               {"G", CountableMap(fam, fam, {{0, 2, {0}}, {1, 0, {0}}}, 2, 2, {{2, 2, {0}}, {2, -1, {0}}})}};
    ex.expectations = {{"embedding_status", {"G"}, "embedding"},
                       {"chain_verdict", {"F", "G", "0"}, "ProvablyInfinite"},
                       {"chain_verdict_plain_50", {"F", "G", "0"}, "Undetermined"},
                       {"g_point_plain_50", {"F", "G", "0"}, "undetermined"}};
    return ex;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

GroupoidPtr NamedExample::groupoid(const std::string& key) const { return lookup(groupoids, key, "groupoid"); }
const Functor& NamedExample::functor(const std::string& key) const { return lookup(functors, key, "functor"); }
FamilyPtr NamedExample::family(const std::string& key) const { return lookup(families, key, "family"); }
const CountableMap& NamedExample::map(const std::string& key) const { return lookup(maps, key, "map"); }

std::vector<std::string> example_names() {
    return {"point_into_circle", "lc_csb_fails", "component_swap",   "identity",
            "evens_odds",        "hilbert_hotel", "pradic_pair",     "chain_divergence"};
}

NamedExample named_example(const std::string& name) {
    std::string n = trim(name);
    if (n == "point_into_circle")
        return point_into_circle();
    if (n == "lc_csb_fails")
        return lc_csb_fails();
    if (n == "component_swap")
        return component_swap();
    if (n == "identity")
        return identity_example();
    if (n == "evens_odds")
        return evens_odds();
    if (n == "hilbert_hotel")
        return hilbert_hotel();
    if (n == "chain_divergence")
        return chain_divergence();
    if (n == "pradic_pair")
        return pradic_pair(2);
    if (n.rfind("pradic_pair(", 0) == 0 && n.back() == ')') {
        std::size_t k = parse_count(n.substr(12, n.size() - 13));
        if (k < 2)
            throw std::invalid_argument("pradic_pair needs k >= 2");
        return pradic_pair(k);
    }
    throw std::invalid_argument("unknown example '" + name + "'");
}

CountableProblem countable_problem(const NamedExample& ex) {
    return CountableProblem(ex.family("X"), ex.family("Y"), ex.map("F"), ex.map("G"));
}

CsbProblem finite_problem(const NamedExample& ex) {
    return CsbProblem(ex.groupoid("X"), ex.groupoid("Y"), ex.functor("F"), ex.functor("G"));
}

std::vector<ExpectationResult> check_expectations(const NamedExample& ex) {
    std::vector<ExpectationResult> results;
    for (const Expectation& e : ex.expectations) {
        const auto& s = e.subjects;
        std::string actual;
        try {
            if (e.property == "embedding") {
                actual = bool_str(is_embedding_homwise(ex.functor(s.at(0))));
            } else if (e.property == "left_cancellable") {
                actual = bool_str(is_left_cancellable(ex.functor(s.at(0))));
            } else if (e.property == "groupoids_equivalent") {
                actual = bool_str(groupoids_equivalent(*ex.groupoid(s.at(0)), *ex.groupoid(s.at(1))).has_value());
            } else if (e.property == "class_map" || e.property == "csb_certificate") {
                CsbProblem p(ex.groupoid("X"), ex.groupoid("Y"), ex.functor(s.at(0)), ex.functor(s.at(1)));
                if (e.property == "class_map") {
                    auto cm = class_map(p);
                    actual = join(std::vector<Index>(cm.begin(), cm.end()));
                } else {
                    actual = verify_csb(p).valid ? "valid" : "invalid";
                }
            } else if (e.property == "embedding_status") {
                const CountableMap& m = ex.map(s.at(0));
                actual = to_string(embedding_status_countable(m, m.tail_start() + m.modulus() + 100));
            } else if (e.property == "families_equivalent") {
                actual = bool_str(families_equivalent(*ex.family(s.at(0)), *ex.family(s.at(1))).equivalent);
            } else {
                CountableProblem p(ex.family("X"), ex.family("Y"), ex.map(s.at(0)), ex.map(s.at(1)));
                Index n = std::stoll(s.at(2));
                ChainOptions plain{50, false};
                if (e.property == "chain_kinds") {
                    ChainTable t = decompose_window(p, n);
                    std::map<ChainKind, std::size_t> counts;
                    for (const auto& entry : t.entries)
                        ++counts[entry.kind];
                    for (const auto& [kind, c] : counts)
                        actual += (actual.empty() ? "" : ",") + std::string(to_string(kind)) + ":" + std::to_string(c);
                } else if (e.property == "h_prefix") {
                    WindowedH h = index_h_window(p, decompose_window(p, n));
                    std::vector<Index> images;
                    for (const auto& entry : h.entries)
                        images.push_back(entry.image);
                    actual = join(images);
                } else if (e.property == "chain_verdict") {
                    actual = to_string(backward_chain(p.composite(), p.g(), n).kind);
                } else if (e.property == "chain_verdict_plain_50") {
                    actual = to_string(backward_chain(p.composite(), p.g(), n, plain).kind);
                } else if (e.property == "g_point_plain_50") {
                    actual = to_string(is_g_point_countable(p, n, plain).value);
                } else {
                    actual = "unknown property";
                }
            }
        } catch (const std::exception& err) {
            actual = std::string("error: ") + err.what();
        }
        results.push_back({e, actual, actual == e.expected});
    }
    return results;
}

}  // namespace csb::catalog
