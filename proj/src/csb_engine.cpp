#include "csb/csb_engine.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "csb/errors.hpp"

namespace csb {

namespace {

constexpr ClassIndex kNoClass = static_cast<ClassIndex>(-1);
constexpr ObjectIndex kNoObject = static_cast<ObjectIndex>(-1);

std::string pair_text(const std::array<ObjectIndex, 2>& p) {
    return "(" + std::to_string(p[0]) + ", " + std::to_string(p[1]) + ")";
}

void require_embedding(const Functor& f, const char* name) {
    if (auto bad = homwise_counterexample(f))
        throw HypothesisError(std::string(name) + " is not an embedding: hom-set map at " +
                              pair_text(*bad) + " is not a bijection");
}

void require_valid(const Groupoid& g, const char* name) {
    auto report = validate_groupoid(g);
    if (!report.ok())
        throw HypothesisError(std::string(name) + " is not a valid groupoid: " +
                              report.violations.front().axiom);
}

void require_valid(const Functor& f, const char* name) {
    auto report = validate_functor(f);
    if (!report.ok())
        throw HypothesisError(std::string(name) + " is not a valid functor: " +
                              report.violations.front().axiom);
}

// Smallest y of Y with G(y) in each class of X, or kNoObject.
std::vector<ObjectIndex> smallest_g_preimage(const CsbProblem& problem) {
    std::vector<ObjectIndex> out(problem.x_classes().class_count(), kNoObject);
    for (ObjectIndex y = 0; y < problem.y().object_count(); ++y) {
        ClassIndex c = problem.x_classes().class_of[problem.g().obj(y)];
        if (out[c] == kNoObject)
            out[c] = y;
    }
    return out;
}

// An exact preimage (G(y) = x, p the identity) when one exists, else the
// smallest y of the class with its smallest morphism.
GInverseWitness fiber_point(const CsbProblem& problem, const std::vector<ObjectIndex>& class_preimage,
                            ObjectIndex x) {
    for (ObjectIndex y = 0; y < problem.y().object_count(); ++y)
        if (problem.g().obj(y) == x)
            return {y, problem.x().identity(x)};
    ObjectIndex y = class_preimage[problem.x_classes().class_of[x]];
    return {y, problem.x().hom(problem.g().obj(y), x).front()};
}

GroupoidPtr check_hypotheses(GroupoidPtr x, const GroupoidPtr& y, const Functor& f,
                             const Functor& g) {
    if (!x || !y)
        throw HypothesisError("X and Y must be present");
    require_valid(*x, "X");
    require_valid(*y, "Y");
    if (!same_groupoid(f.source, x) || !same_groupoid(f.target, y))
        throw HypothesisError("F must map X to Y");
    if (!same_groupoid(g.source, y) || !same_groupoid(g.target, x))
        throw HypothesisError("G must map Y to X");
    require_valid(f, "F");
    require_valid(g, "G");
    require_embedding(f, "F");
    require_embedding(g, "G");
    return x;
}

struct Context {
    std::vector<ClassIndex> map;
    std::vector<ClassIndex> pred;
    std::vector<ObjectIndex> g_preimage;
};

Context make_context(const CsbProblem& problem) {
    Context ctx;
    ctx.map = class_map(problem);
    ctx.pred.assign(ctx.map.size(), kNoClass);
    for (ClassIndex c = 0; c < ctx.map.size(); ++c) {
        if (ctx.pred[ctx.map[c]] != kNoClass)
            throw HypothesisError("class map is not injective; F or G is not left-cancellable");
        ctx.pred[ctx.map[c]] = c;
    }
    ctx.g_preimage = smallest_g_preimage(problem);
    return ctx;
}

GPointEntry decide_class(const CsbProblem& problem, const Context& ctx, ClassIndex c) {
    GPointEntry e{c, true, std::nullopt, std::nullopt, {}};
    // The reaching (c0, n) pairs form one backward path; a loop-free prefix of
    // length at most the class count covers every n.
    ClassIndex cur = c;
    for (std::size_t steps = 0;; ++steps) {
        e.visited.push_back(cur);
        if (ctx.g_preimage[cur] == kNoObject) {
            e.g_point = false;
            e.f_point = FPointWitness{cur, steps};
            return e;
        }
        ClassIndex p = ctx.pred[cur];
        if (p == kNoClass || p == c)
            break;
        cur = p;
    }
    e.g_inverse = fiber_point(problem, ctx.g_preimage, problem.x_classes().representative[c]);
    return e;
}

}  // namespace

CsbProblem::CsbProblem(GroupoidPtr x, GroupoidPtr y, Functor f, Functor g)
    : x_(check_hypotheses(std::move(x), y, f, g)), y_(std::move(y)), f_(std::move(f)),
      g_(std::move(g)), x_classes_(iso_classes(*x_)), y_classes_(iso_classes(*y_)),
      g_inverter_(g_) {}

const char* to_string(Branch b) { return b == Branch::GInverse ? "g_inverse" : "f"; }

std::vector<ClassIndex> class_map(const CsbProblem& problem) {
    const auto& px = problem.x_classes();
    std::vector<ClassIndex> out(px.class_count());
    for (ClassIndex c = 0; c < px.class_count(); ++c)
        out[c] = px.class_of[problem.g().obj(problem.f().obj(px.representative[c]))];
    return out;
}

GPointTable g_point_table(const CsbProblem& problem) {
    const Context ctx = make_context(problem);
    GPointTable table;
    for (ClassIndex c = 0; c < ctx.map.size(); ++c)
        table.push_back(decide_class(problem, ctx, c));
    return table;
}

GPointEntry is_g_point(const CsbProblem& problem, ObjectIndex x) {
    if (x >= problem.x().object_count())
        throw std::out_of_range("is_g_point: object out of range");
    return decide_class(problem, make_context(problem), problem.x_classes().class_of[x]);
}

GInverseWitness g_inverse_witness(const CsbProblem& problem, ObjectIndex x) {
    if (!is_g_point(problem, x).g_point)
        throw PreconditionError("g_inverse_witness: object " + std::to_string(x) + " is not a g-point");
    return fiber_point(problem, smallest_g_preimage(problem), x);
}

namespace {

Functor build_h(const CsbProblem& problem, const GPointTable& table) {
    const Groupoid& X = problem.x();
    const auto& px = problem.x_classes();
    const auto g_pre = smallest_g_preimage(problem);

    Functor h{problem.x_ptr(), problem.y_ptr(), std::vector<ObjectIndex>(X.object_count()),
              std::vector<MorphismIndex>(X.morphism_count())};
    // p_x: G(h(x)) -> x on the g-point region.
    std::vector<MorphismIndex> p(X.object_count(), kNoMorphism);
    for (ObjectIndex x = 0; x < X.object_count(); ++x) {
        ClassIndex c = px.class_of[x];
        if (table[c].g_point) {
            GInverseWitness w = fiber_point(problem, g_pre, x);
            h.obj_map[x] = w.y;
            p[x] = w.p;
        } else {
            h.obj_map[x] = problem.f().obj(x);
        }
    }
    for (MorphismIndex q = 0; q < X.morphism_count(); ++q) {
        ObjectIndex x = X.src(q), x2 = X.dst(q);
        if (!table[px.class_of[x]].g_point) {
            h.mor_map[q] = problem.f().mor(q);
            continue;
        }
        MorphismIndex t = X.compose(X.inverse(p[x2]), X.compose(q, p[x]));
        auto r = problem.g_inverter().preimage(h.obj(x), h.obj(x2), t);
        if (!r)
            throw ConstructionError("no unique G-preimage for morphism " + std::to_string(q) +
                                    "; G is not fully faithful");
        h.mor_map[q] = *r;
    }
    return h;
}

SplitWitness split_witness(const CsbProblem& problem, const GPointTable& table, const Functor& h,
                           ObjectIndex y) {
    const auto& px = problem.x_classes();
    ObjectIndex gx = problem.g().obj(y);
    if (table[px.class_of[gx]].g_point) {
        // h(G y) = y' with p: G(y') -> G(y); cancel G to get y' -> y.
        ObjectIndex y1 = h.obj(gx);
        auto p = problem.x().hom(problem.g().obj(y1), gx);
        if (p.empty())
            throw CertificateError("g-inverse witness missing at object " + std::to_string(gx));
        auto s = problem.g_inverter().preimage(y1, y, p.front());
        if (!s)
            throw CertificateError("cannot cancel G at object " + std::to_string(y));
        return {y, gx, *s, Branch::GInverse};
    }
    // The designated point of the F-fiber over y outside the g-points.
    for (ObjectIndex x = 0; x < problem.x().object_count(); ++x) {
        if (table[px.class_of[x]].g_point)
            continue;
        auto hom = problem.y().hom(problem.f().obj(x), y);
        if (!hom.empty())
            return {y, x, hom.front(), Branch::F};
    }
    throw CertificateError("no split-surjection witness for object " + std::to_string(y) +
                           " of Y; the certificate is falsified");
}

}  // namespace

Functor construct_h(const CsbProblem& problem) { return build_h(problem, g_point_table(problem)); }

SplitWitness split_surjection_witness(const CsbProblem& problem, const Functor& h, ObjectIndex y) {
    if (y >= problem.y().object_count())
        throw std::out_of_range("split_surjection_witness: object out of range");
    return split_witness(problem, g_point_table(problem), h, y);
}

const CertificateCheck* CsbCertificate::failed_check() const {
    for (const auto& c : checks)
        if (!c.passed)
            return &c;
    return nullptr;
}

CsbCertificate verify_csb(const CsbProblem& problem) {
    const Groupoid& X = problem.x();
    const Groupoid& Y = problem.y();
    const auto& px = problem.x_classes();
    const auto& py = problem.y_classes();

    CsbCertificate cert;
    cert.g_points = g_point_table(problem);
    for (const auto& e : cert.g_points)
        cert.class_branch.push_back(e.g_point ? Branch::GInverse : Branch::F);
    auto check = [&](std::string name, bool passed, std::string detail = {}) {
        cert.checks.push_back({std::move(name), passed, std::move(detail)});
    };

    for (const auto& e : cert.g_points) {
        cert.excluded_middle_sites.push_back({"g-point", e.cls, e.g_point});
        for (ClassIndex v : e.visited) {
            bool inhabited = !(e.f_point && e.f_point->root_class == v);
            cert.excluded_middle_sites.push_back({"g-fiber", px.representative[v], inhabited});
        }
    }

    try {
        cert.h = build_h(problem, cert.g_points);
    } catch (const ConstructionError& err) {
        check("construction", false, err.what());
        cert.valid = false;
        return cert;
    }
    check("construction", true);

    // Witnesses re-checked against the groupoids, not the decision code.
    const auto cmap = class_map(problem);
    std::vector<bool> class_hit_by_g(px.class_count(), false);
    for (ObjectIndex y = 0; y < Y.object_count(); ++y)
        class_hit_by_g[px.class_of[problem.g().obj(y)]] = true;
    bool witnesses_ok = true;
    std::string witness_detail;
    for (const auto& e : cert.g_points) {
        bool exclusive = e.g_point ? (e.g_inverse && !e.f_point) : (e.f_point && !e.g_inverse);
        if (!exclusive) {
            witnesses_ok = false;
            witness_detail = "class " + std::to_string(e.cls) + " does not carry exactly one witness kind";
            break;
        }
        if (e.g_point) {
            const Arrow& a = X.arrow(e.g_inverse->p);
            if (a.src != problem.g().obj(e.g_inverse->y) || a.dst != px.representative[e.cls]) {
                witnesses_ok = false;
                witness_detail = "g-inverse witness of class " + std::to_string(e.cls) + " does not connect";
                break;
            }
        } else {
            ClassIndex c = e.f_point->root_class;
            bool empty_fiber = !class_hit_by_g[c];
            for (std::size_t i = 0; i < e.f_point->steps; ++i)
                c = cmap[c];
            if (c != e.cls || !empty_fiber) {
                witnesses_ok = false;
                witness_detail = "f-point witness of class " + std::to_string(e.cls) + " does not re-check";
                break;
            }
        }
    }
    check("g-point-witnesses", witnesses_ok, witness_detail);

    auto functoriality = validate_functor(cert.h);
    check("functoriality", functoriality.ok(),
          functoriality.ok() ? "" : functoriality.violations.front().axiom);

    auto ff = homwise_counterexample(cert.h);
    check("fully-faithful", !ff, ff ? "hom-set map not bijective at " + pair_text(*ff) : "");

    bool split_ok = true;
    std::string split_detail;
    for (ObjectIndex y = 0; y < Y.object_count(); ++y) {
        try {
            SplitWitness w = split_witness(problem, cert.g_points, cert.h, y);
            const Arrow& a = Y.arrow(w.iso);
            if (a.src != cert.h.obj(w.x) || a.dst != y) {
                split_ok = false;
                split_detail = "witness iso for object " + std::to_string(y) + " has wrong endpoints";
            }
            if (w.branch == Branch::F)
                cert.excluded_middle_sites.push_back({"f-fiber-subtype", y, true});
            cert.split.push_back(w);
        } catch (const CertificateError& err) {
            split_ok = false;
            split_detail = err.what();
        }
    }
    check("split-surjective", split_ok, split_detail);

    std::set<ClassIndex> g_img, f_img;
    for (ObjectIndex x = 0; x < X.object_count(); ++x) {
        ClassIndex cy = py.class_of[cert.h.obj(x)];
        (cert.class_branch[px.class_of[x]] == Branch::GInverse ? g_img : f_img).insert(cy);
    }
    cert.g_inverse_image_classes.assign(g_img.begin(), g_img.end());
    cert.f_image_classes.assign(f_img.begin(), f_img.end());
    std::vector<ClassIndex> both;
    std::set_intersection(g_img.begin(), g_img.end(), f_img.begin(), f_img.end(),
                          std::back_inserter(both));
    check("disjointness", both.empty(),
          both.empty() ? "" : "class " + std::to_string(both.front()) + " of Y is hit by both branches");

    if (!ff) {
        try {
            cert.equivalence = is_equivalence(cert.h);
        } catch (const CertificateError& err) {
            check("equivalence", false, err.what());
        }
    }
    if (cert.checks.back().name != "equivalence")
        check("equivalence", cert.equivalence.has_value(),
              cert.equivalence ? "" : "h has no quasi-inverse");

    cert.valid = cert.failed_check() == nullptr;
    return cert;
}

}  // namespace csb
