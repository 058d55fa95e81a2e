#include "csb/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "csb/errors.hpp"

namespace csb::json_io {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object())
        throw SchemaError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw SchemaError(std::string("missing key '") + key + "'");
    return *it;
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    }
}

Json endpoints_only(const Functor& f) {
    Json j;
    j["obj_map"] = f.obj_map;
    j["mor_map"] = f.mor_map;
    return j;
}

Json hom_json(const GroupMap& m) { return Json(m); }

}  // namespace

Json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const Json& doc) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

const char* to_string(DocumentKind k) {
    switch (k) {
    case DocumentKind::Groupoid: return "groupoid";
    case DocumentKind::Functor: return "functor";
    case DocumentKind::FiniteProblem: return "problem";
    case DocumentKind::Family: return "family";
    case DocumentKind::Map: return "map";
    case DocumentKind::CountableProblem: return "countable-problem";
    case DocumentKind::Unknown: return "unknown";
    }
    return "unknown";
}

DocumentKind sniff(const Json& doc) {
    if (!doc.is_object())
        return DocumentKind::Unknown;
    if (doc.contains("X") && doc.contains("F")) {
        const Json& x = doc["X"];
        return x.is_object() && x.contains("tail_shapes") ? DocumentKind::CountableProblem
                                                          : DocumentKind::FiniteProblem;
    }
    if (doc.contains("objects") && doc.contains("morphisms"))
        return DocumentKind::Groupoid;
    if (doc.contains("obj_map"))
        return DocumentKind::Functor;
    if (doc.contains("tail_shapes"))
        return DocumentKind::Family;
    if (doc.contains("modulus") && doc.contains("rules"))
        return DocumentKind::Map;
    return DocumentKind::Unknown;
}

Json to_json(const FiniteGroup& g) {
    Json j;
    j["order"] = g.order();
    j["identity"] = g.identity();
    j["table"] = g.table();
    return j;
}

FiniteGroup group_from_json(const Json& j) {
    return FiniteGroup(get<std::size_t>(j, "order"), get<std::vector<Element>>(j, "table"),
                       get<Element>(j, "identity"));
}

Json to_json(const Groupoid& g) {
    Json j;
    j["objects"] = g.object_count();
    Json mors = Json::array();
    for (const Arrow& a : g.arrows())
        mors.push_back({{"src", a.src}, {"dst", a.dst}});
    j["morphisms"] = std::move(mors);
    j["identity"] = g.identities();
    Json comp = Json::array();
    for (const ComposeEntry& e : g.compose_entries())
        comp.push_back({e.second, e.first, e.result});
    j["compose"] = std::move(comp);
    return j;
}

Groupoid groupoid_from_json(const Json& j) {
    auto n = get<std::size_t>(j, "objects");
    std::vector<Arrow> arrows;
    for (const Json& m : field(j, "morphisms"))
        arrows.push_back({get<ObjectIndex>(m, "src"), get<ObjectIndex>(m, "dst")});
    auto identity = get<std::vector<MorphismIndex>>(j, "identity");
    std::vector<ComposeEntry> compose;
    for (const Json& t : field(j, "compose")) {
        auto triple = guarded("compose entry", [&] { return t.get<std::vector<MorphismIndex>>(); });
        if (triple.size() != 3)
            throw SchemaError("compose entries are [second, first, result] triples");
        compose.push_back({triple[0], triple[1], triple[2]});
    }
    return Groupoid(n, std::move(arrows), std::move(identity), compose);
}

GroupoidPtr GroupoidResolver::resolve(const Json& ref) {
    if (ref.is_string()) {
        auto path = base_ / ref.get<std::string>();
        auto key = std::filesystem::weakly_canonical(path).string();
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        auto g = std::make_shared<const Groupoid>(groupoid_from_json(read_file(path)));
        cache_.emplace(key, g);
        return g;
    }
    return std::make_shared<const Groupoid>(groupoid_from_json(ref));
}

Json to_json(const Functor& f, const Json& source_ref, const Json& target_ref) {
    Json j;
    j["source"] = source_ref;
    j["target"] = target_ref;
    j["obj_map"] = f.obj_map;
    j["mor_map"] = f.mor_map;
    return j;
}

Json to_json(const Functor& f) { return to_json(f, to_json(*f.source), to_json(*f.target)); }

Functor functor_from_json(const Json& j, GroupoidResolver& resolver) {
    Functor f;
    f.source = resolver.resolve(field(j, "source"));
    f.target = resolver.resolve(field(j, "target"));
    f.obj_map = get<std::vector<ObjectIndex>>(j, "obj_map");
    f.mor_map = get<std::vector<MorphismIndex>>(j, "mor_map");
    return f;
}

Json finite_problem_to_json(const GroupoidPtr& x, const GroupoidPtr& y, const Functor& f, const Functor& g) {
    Json j;
    j["X"] = to_json(*x);
    j["Y"] = to_json(*y);
    j["F"] = endpoints_only(f);
    j["G"] = endpoints_only(g);
    return j;
}

FiniteProblemData finite_problem_from_json(const Json& j, GroupoidResolver& resolver) {
    FiniteProblemData p;
    p.x = resolver.resolve(field(j, "X"));
    p.y = resolver.resolve(field(j, "Y"));
    auto load = [&](const char* key, const GroupoidPtr& src, const GroupoidPtr& dst) {
        const Json& fj = field(j, key);
        Functor f;
        f.source = fj.contains("source") ? resolver.resolve(fj["source"]) : src;
        f.target = fj.contains("target") ? resolver.resolve(fj["target"]) : dst;
        f.obj_map = get<std::vector<ObjectIndex>>(fj, "obj_map");
        f.mor_map = get<std::vector<MorphismIndex>>(fj, "mor_map");
        return f;
    };
    p.f = load("F", p.x, p.y);
    p.g = load("G", p.y, p.x);
    return p;
}

Json to_json(const CountableFamily& f) {
    Json j;
    Json ex = Json::array();
    for (const auto& [n, id] : f.exceptions)
        ex.push_back({n, f.shape_names[id]});
    j["exceptions"] = std::move(ex);
    j["tail_start"] = f.tail_start;
    j["period"] = f.period();
    Json tail = Json::array();
    for (std::size_t id : f.tail_shapes)
        tail.push_back(f.shape_names[id]);
    j["tail_shapes"] = std::move(tail);
    Json shapes = Json::object();
    for (std::size_t s = 0; s < f.shapes.size(); ++s)
        shapes[f.shape_names[s]] = to_json(f.shapes[s]);
    j["shapes"] = std::move(shapes);
    return j;
}

CountableFamily family_from_json(const Json& j) {
    CountableFamily f;
    const Json& shapes = field(j, "shapes");
    if (!shapes.is_object())
        throw SchemaError("'shapes' must be an object of named group tables");
    for (const auto& [name, table] : shapes.items()) {
        f.shape_names.push_back(name);
        f.shapes.push_back(group_from_json(table));
    }
    auto shape_id = [&](const Json& ref) -> std::size_t {
        if (ref.is_string()) {
            for (std::size_t s = 0; s < f.shape_names.size(); ++s)
                if (f.shape_names[s] == ref.get<std::string>())
                    return s;
            throw SchemaError("unknown shape '" + ref.get<std::string>() + "'");
        }
        if (ref.is_number_unsigned() && ref.get<std::size_t>() < f.shapes.size())
            return ref.get<std::size_t>();
        throw SchemaError("shape references are names or indices into 'shapes'");
    };
    for (const Json& e : field(j, "exceptions")) {
        if (!e.is_array() || e.size() != 2)
            throw SchemaError("family exceptions are [n, shape] pairs");
        f.exceptions.emplace_back(guarded("exception index", [&] { return e[0].get<Index>(); }), shape_id(e[1]));
    }
    std::sort(f.exceptions.begin(), f.exceptions.end());
    f.tail_start = get<Index>(j, "tail_start");
    for (const Json& s : field(j, "tail_shapes"))
        f.tail_shapes.push_back(shape_id(s));
    if (j.contains("period") && get<std::size_t>(j, "period") != f.tail_shapes.size())
        throw SchemaError("'period' differs from the number of tail shapes");
    return f;
}

Json to_json(const CountableMap& m, bool with_endpoints) {
    Json j;
    if (with_endpoints) {
        j["source"] = to_json(*m.source());
        j["target"] = to_json(*m.target());
    }
    Json ex = Json::array();
    for (const auto& e : m.exceptions())
        ex.push_back({e.n, e.image, hom_json(e.hom)});
    j["exceptions"] = std::move(ex);
    j["tail_start"] = m.tail_start();
    j["modulus"] = m.modulus();
    Json rules = Json::array();
    for (const auto& r : m.rules())
        rules.push_back({{"scale", r.scale}, {"offset", r.offset}, {"hom", hom_json(r.hom)}});
    j["rules"] = std::move(rules);
    return j;
}

CountableMap map_from_json(const Json& j, FamilyPtr source, FamilyPtr target) {
    std::vector<ExceptionRule> exceptions;
    for (const Json& e : field(j, "exceptions")) {
        if (!e.is_array() || e.size() != 3)
            throw SchemaError("map exceptions are [n, image, hom] triples");
        exceptions.push_back(guarded("map exception", [&] {
            return ExceptionRule{e[0].get<Index>(), e[1].get<Index>(), e[2].get<GroupMap>()};
        }));
    }
    std::vector<ResidueRule> rules;
    for (const Json& r : field(j, "rules"))
        rules.push_back({get<Index>(r, "scale"), get<Index>(r, "offset"), get<GroupMap>(r, "hom")});
    return CountableMap(std::move(source), std::move(target), std::move(exceptions), get<Index>(j, "tail_start"),
                        get<Index>(j, "modulus"), std::move(rules));
}

CountableMap map_from_json(const Json& j) {
    auto src = std::make_shared<const CountableFamily>(family_from_json(field(j, "source")));
    auto dst = std::make_shared<const CountableFamily>(family_from_json(field(j, "target")));
    return map_from_json(j, src, dst);
}

Json countable_problem_to_json(const CountableProblem& p) {
    Json j;
    j["X"] = to_json(*p.x());
    j["Y"] = to_json(*p.y());
    j["F"] = to_json(p.f(), false);
    j["G"] = to_json(p.g(), false);
    return j;
}

CountableProblem countable_problem_from_json(const Json& j) {
    auto x = std::make_shared<const CountableFamily>(family_from_json(field(j, "X")));
    auto y = std::make_shared<const CountableFamily>(family_from_json(field(j, "Y")));
    for (const auto& fam : {x, y}) {
        auto report = validate_family(*fam);
        if (!report.ok())
            throw SchemaError("invalid family: " + report.violations.front().axiom);
    }
    return CountableProblem(x, y, map_from_json(field(j, "F"), x, y), map_from_json(field(j, "G"), y, x));
}

Json to_json(const ValidationReport& r) {
    Json j;
    j["ok"] = r.ok();
    Json vs = Json::array();
    for (const auto& v : r.violations) {
        Json one;
        one["axiom"] = v.axiom;
        one["indices"] = v.indices;
        if (!v.detail.empty())
            one["detail"] = v.detail;
        vs.push_back(std::move(one));
    }
    j["violations"] = std::move(vs);
    j["truncated"] = r.truncated;
    return j;
}

Json to_json(const CsbCertificate& c) {
    Json j;
    j["valid"] = c.valid;
    j["h"] = endpoints_only(c.h);
    Json classes = Json::array();
    for (std::size_t k = 0; k < c.g_points.size(); ++k) {
        const GPointEntry& e = c.g_points[k];
        Json one;
        one["class"] = e.cls;
        one["g_point"] = e.g_point;
        one["branch"] = k < c.class_branch.size() ? to_string(c.class_branch[k]) : "";
        if (e.g_inverse)
            one["g_inverse_witness"] = {{"y", e.g_inverse->y}, {"p", e.g_inverse->p}};
        if (e.f_point)
            one["f_point_witness"] = {{"root_class", e.f_point->root_class}, {"steps", e.f_point->steps}};
        one["visited"] = e.visited;
        classes.push_back(std::move(one));
    }
    j["classes"] = std::move(classes);
    Json split = Json::array();
    for (const SplitWitness& s : c.split)
        split.push_back({{"y", s.y}, {"x", s.x}, {"iso", s.iso}, {"branch", to_string(s.branch)}});
    j["split_surjection"] = std::move(split);
    if (c.equivalence) {
        Json eq;
        eq["quasi_inverse"] = endpoints_only(c.equivalence->quasi_inverse);
        eq["unit"] = {{"components", c.equivalence->unit.components}};
        eq["counit"] = {{"components", c.equivalence->counit.components}};
        j["equivalence"] = std::move(eq);
    } else {
        j["equivalence"] = nullptr;
    }
    j["g_inverse_image_classes"] = c.g_inverse_image_classes;
    j["f_image_classes"] = c.f_image_classes;
    Json checks = Json::array();
    for (const auto& ch : c.checks)
        checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"detail", ch.detail}});
    j["checks"] = std::move(checks);
    Json sites = Json::array();
    for (const auto& s : c.excluded_middle_sites)
        sites.push_back({{"kind", s.kind}, {"index", s.index}, {"decided", s.decided}});
    j["excluded_middle_sites"] = std::move(sites);
    return j;
}

Json chains_to_json(const ChainTable& table, const WindowedH& h) {
    Json j;
    j["window"] = table.window;
    j["budget"] = table.options.budget;
    j["detect_divergence"] = table.options.detect_divergence;
    Json counts = Json::object();
    for (auto kind : {ChainKind::YStopper, ChainKind::XStopper, ChainKind::Cyclic, ChainKind::ProvablyInfinite,
                      ChainKind::Undetermined})
        counts[to_string(kind)] = 0;
    Json entries = Json::array();
    for (Index x = 0; x < table.window; ++x) {
        const ChainEntry& e = table.entries[static_cast<std::size_t>(x)];
        counts[to_string(e.kind)] = counts[to_string(e.kind)].get<int>() + 1;
        Json one;
        one["x"] = x;
        one["kind"] = to_string(e.kind);
        if (e.root >= 0)
            one["root"] = e.root;
        one["steps"] = e.steps;
        if (e.predecessor >= 0)
            one["predecessor"] = e.predecessor;
        if (e.overflow)
            one["overflow"] = true;
        const HEntry& he = h.entries[static_cast<std::size_t>(x)];
        one["branch"] = to_string(he.branch);
        if (he.branch != HBranch::Undetermined)
            one["h"] = he.image;
        if (!he.hom.empty())
            one["h_hom"] = he.hom;
        entries.push_back(std::move(one));
    }
    j["counts"] = std::move(counts);
    j["undetermined"] = h.undetermined;
    j["frontier"] = h.frontier;
    j["entries"] = std::move(entries);
    return j;
}

std::map<std::string, Json> example_bundle(const catalog::NamedExample& ex) {
    std::map<std::string, Json> files;
    if (ex.is_countable()) {
        for (const auto& [key, fam] : ex.families)
            files[key + ".json"] = to_json(*fam);
        for (const auto& [key, map] : ex.maps)
            files[key + ".json"] = to_json(map, true);
        if (ex.maps.size() == 2)
            files["problem.json"] = countable_problem_to_json(catalog::countable_problem(ex));
    } else {
        auto name_of = [&](const GroupoidPtr& g) -> Json {
            for (const auto& [key, gp] : ex.groupoids)
                if (gp == g)
                    return key + ".json";
            return to_json(*g);
        };
        for (const auto& [key, g] : ex.groupoids)
            files[key + ".json"] = to_json(*g);
        for (const auto& [key, f] : ex.functors)
            files[key + ".json"] = to_json(f, name_of(f.source), name_of(f.target));
        if (ex.functors.size() == 2)
            files["problem.json"] = finite_problem_to_json(ex.groupoid("X"), ex.groupoid("Y"), ex.functor("F"),
                                                           ex.functor("G"));
    }
    Json exps = Json::array();
    for (const auto& e : ex.expectations)
        exps.push_back({{"property", e.property}, {"subjects", e.subjects}, {"expected", e.expected}});
    files["expectations.json"] = {{"name", ex.name}, {"description", ex.description}, {"expectations", exps}};
    return files;
}

}  // namespace csb::json_io
