#include <gtest/gtest.h>

#include "csb/catalog.hpp"
#include "csb/csb_engine.hpp"
#include "csb/errors.hpp"
#include "oracles.hpp"

using namespace csb;

namespace {

catalog::GeneratorParams params(std::uint64_t seed) {
    catalog::GeneratorParams p;
    p.seed = seed;
    return p;
}

/// Class of G(F(x)) for each class representative, by direct evaluation.
std::vector<ClassIndex> class_map_oracle(const CsbProblem& p) {
    auto labels = oracle::components(p.x());
    std::vector<ObjectIndex> reps;
    for (ObjectIndex x = 0; x < p.x().object_count(); ++x)
        if (labels[x] == x)
            reps.push_back(x);
    std::vector<ClassIndex> out;
    for (ObjectIndex r : reps) {
        ObjectIndex img = p.g().obj(p.f().obj(r));
        auto it = std::find(reps.begin(), reps.end(), labels[img]);
        out.push_back(static_cast<ClassIndex>(it - reps.begin()));
    }
    return out;
}

}  // namespace

TEST(CsbEngine, RejectsCancellableOnlyPair) {
    auto ex = catalog::named_example("lc_csb_fails");
    try {
        catalog::finite_problem(ex);
        FAIL() << "expected HypothesisError";
    } catch (const HypothesisError& e) {
        EXPECT_NE(std::string(e.what()).find("F"), std::string::npos);
    }
}

TEST(CsbEngine, RejectsMismatchedEndpoints) {
    auto ex = catalog::named_example("identity");
    auto other = std::make_shared<const Groupoid>(catalog::discrete(3));
    EXPECT_THROW(CsbProblem(other, ex.groupoid("Y"), ex.functor("F"), ex.functor("G")), HypothesisError);
}

TEST(CsbEngine, ComponentSwapClassMapIsTwoCycle) {
    auto p = catalog::finite_problem(catalog::named_example("component_swap"));
    EXPECT_EQ(class_map(p), (std::vector<ClassIndex>{1, 0}));
    EXPECT_EQ(class_map(p), class_map_oracle(p));
}

TEST(CsbEngine, ClassMapAgreesWithEvaluation) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        EXPECT_EQ(class_map(p), class_map_oracle(p)) << seed;
    }
}

TEST(CsbEngine, IdentityProblemGivesIdentityH) {
    auto p = catalog::finite_problem(catalog::named_example("identity"));
    auto cert = verify_csb(p);
    ASSERT_TRUE(cert.valid);
    EXPECT_EQ(cert.h.obj_map, p.f().obj_map);
    EXPECT_EQ(cert.h.mor_map, p.f().mor_map);
    for (Branch b : cert.class_branch)
        EXPECT_EQ(b, Branch::GInverse);
}

TEST(CsbEngine, FiniteEmbeddingPairsMakeEveryClassAGPoint) {
    // Injective class maps on finite sets are permutations.
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        for (const auto& e : g_point_table(p)) {
            EXPECT_TRUE(e.g_point);
            EXPECT_TRUE(e.g_inverse.has_value());
            EXPECT_FALSE(e.f_point.has_value());
        }
    }
}

TEST(CsbEngine, GInverseWitnessIsSmallest) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        for (ObjectIndex x = 0; x < p.x().object_count(); ++x) {
            auto w = g_inverse_witness(p, x);
            EXPECT_EQ(p.x().src(w.p), p.g().obj(w.y));
            EXPECT_EQ(p.x().dst(w.p), x);
            std::optional<ObjectIndex> exact;
            for (ObjectIndex y = 0; y < p.y().object_count() && !exact; ++y)
                if (p.g().obj(y) == x)
                    exact = y;
            if (exact) {
                EXPECT_EQ(w.y, *exact);
                EXPECT_EQ(w.p, p.x().identity(x));
                continue;
            }
            for (ObjectIndex y = 0; y < w.y; ++y)
                EXPECT_TRUE(oracle::hom(p.x(), p.g().obj(y), x).empty());
            auto homs = oracle::hom(p.x(), p.g().obj(w.y), x);
            EXPECT_EQ(w.p, homs.front());
        }
    }
}

TEST(CsbEngine, HIsAnEquivalenceByIndependentOracles) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        Functor h = construct_h(p);
        EXPECT_TRUE(oracle::functorial(h)) << seed;
        EXPECT_TRUE(oracle::fully_faithful(h)) << seed;
        EXPECT_TRUE(oracle::essentially_surjective(h)) << seed;
        // On g-points G(h(x)) is isomorphic to x.
        for (ObjectIndex x = 0; x < p.x().object_count(); ++x)
            EXPECT_TRUE(oracle::connected_objects(p.x(), p.g().obj(h.obj(x)), x));
    }
}

TEST(CsbEngine, CertificatesAreValidAndRecheck) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        auto cert = verify_csb(p);
        ASSERT_TRUE(cert.valid) << seed << ": " << (cert.failed_check() ? cert.failed_check()->name : "");
        EXPECT_EQ(cert.failed_check(), nullptr);
        ASSERT_EQ(cert.split.size(), p.y().object_count());
        for (ObjectIndex y = 0; y < p.y().object_count(); ++y) {
            const auto& s = cert.split[y];
            EXPECT_EQ(s.y, y);
            EXPECT_EQ(p.y().src(s.iso), cert.h.obj(s.x));
            EXPECT_EQ(p.y().dst(s.iso), y);
        }
        std::set<ClassIndex> gi(cert.g_inverse_image_classes.begin(), cert.g_inverse_image_classes.end());
        for (ClassIndex c : cert.f_image_classes)
            EXPECT_FALSE(gi.count(c));
        ASSERT_TRUE(cert.equivalence);
        EXPECT_TRUE(check_natural_iso(cert.equivalence->unit));
        EXPECT_TRUE(check_natural_iso(cert.equivalence->counit));
    }
}

TEST(CsbEngine, CheckOrderIsFixed) {
    auto cert = verify_csb(catalog::finite_problem(catalog::named_example("component_swap")));
    std::vector<std::string> names;
    for (const auto& c : cert.checks)
        names.push_back(c.name);
    EXPECT_EQ(names, (std::vector<std::string>{"construction", "g-point-witnesses", "functoriality", "fully-faithful",
                                               "split-surjective", "disjointness", "equivalence"}));
}

TEST(CsbEngine, GPointVerdictsAreClassInvariant) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        auto labels = oracle::components(p.x());
        for (ObjectIndex a = 0; a < p.x().object_count(); ++a)
            for (ObjectIndex b = 0; b < p.x().object_count(); ++b)
                if (labels[a] == labels[b]) {
                    EXPECT_EQ(is_g_point(p, a).g_point, is_g_point(p, b).g_point);
                }
    }
}

TEST(CsbEngine, ConstructionIsDeterministic) {
    auto a = catalog::random_embedding_pair(params(21));
    auto b = catalog::random_embedding_pair(params(21));
    EXPECT_EQ(construct_h(a).mor_map, construct_h(b).mor_map);
    EXPECT_EQ(verify_csb(a).h.obj_map, verify_csb(b).h.obj_map);
}

TEST(CsbEngine, ExcludedMiddleSitesCoverEveryDecision) {
    auto p = catalog::finite_problem(catalog::named_example("component_swap"));
    auto cert = verify_csb(p);
    std::map<std::string, std::size_t> kinds;
    for (const auto& s : cert.excluded_middle_sites) {
        ++kinds[s.kind];
        EXPECT_TRUE(s.decided);
    }
    EXPECT_EQ(kinds["g-point"], 2u);
}
