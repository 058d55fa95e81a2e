#include <gtest/gtest.h>

#include "csb/catalog.hpp"
#include "csb/errors.hpp"
#include "csb/functor.hpp"
#include "oracles.hpp"

using namespace csb;

namespace {

GroupoidPtr share(Groupoid g) { return std::make_shared<const Groupoid>(std::move(g)); }

catalog::GeneratorParams params(std::uint64_t seed) {
    catalog::GeneratorParams p;
    p.seed = seed;
    return p;
}

Functor point_into_circle() { return catalog::named_example("point_into_circle").functor("F"); }

}  // namespace

TEST(Functor, IdentityIsAnEquivalence) {
    auto g = share(catalog::build("disjoint_union(connected(2,S3),delooping(Z4))"));
    Functor id = identity_functor(g);
    EXPECT_TRUE(validate_functor(id).ok());
    EXPECT_TRUE(is_embedding_homwise(id));
    EXPECT_TRUE(is_embedding_fiberwise(id));
    EXPECT_TRUE(is_left_cancellable(id));
    EXPECT_TRUE(is_equivalence(id).has_value());
}

TEST(Functor, PointIntoCircleIsCancellableNotEmbedding) {
    Functor f = point_into_circle();
    EXPECT_TRUE(is_left_cancellable(f));
    EXPECT_FALSE(is_embedding_homwise(f));
    EXPECT_FALSE(is_embedding_fiberwise(f));
    auto cx = homwise_counterexample(f);
    ASSERT_TRUE(cx);
    EXPECT_EQ((*cx)[0], 0u);
    EXPECT_EQ((*cx)[1], 0u);
    EXPECT_EQ(fiberwise_counterexample(f), std::optional<ObjectIndex>(0));
}

TEST(Functor, FiberOfPointIntoCircle) {
    // Objects (0, p) for both loops p; only identities between them.
    auto fiber = fiber_groupoid(point_into_circle(), 0);
    EXPECT_EQ(fiber.groupoid.object_count(), 2u);
    EXPECT_EQ(fiber.groupoid.morphism_count(), 2u);
    EXPECT_TRUE(validate_groupoid(fiber.groupoid).ok());
    EXPECT_FALSE(is_proposition_groupoid(fiber.groupoid));
}

TEST(Functor, CollapsingTwoPointsIsNotCancellable) {
    auto two = share(catalog::discrete(2));
    auto one = share(catalog::discrete(1));
    Functor f{two, one, {0, 0}, {0, 0}};
    EXPECT_FALSE(is_left_cancellable(f));
    auto cx = left_cancellable_counterexample(f);
    ASSERT_TRUE(cx);
    EXPECT_EQ(*cx, (std::array<ObjectIndex, 2>{0, 1}));
    EXPECT_FALSE(is_embedding_homwise(f));
}

TEST(Functor, BrokenCompositionReported) {
    auto z3 = share(catalog::delooping(groups::cyclic(3)));
    // Sends 1 -> 1 and 2 -> 1: not a homomorphism.
    Functor f{z3, z3, {0}, {0, 1, 1}};
    auto report = validate_functor(f);
    EXPECT_TRUE(report.mentions("preserves-composition"));
    Functor g{z3, z3, {0}, {1, 1, 2}};
    EXPECT_TRUE(validate_functor(g).mentions("preserves-identity"));
}

TEST(Functor, SizeMismatchIsStructural) {
    auto z3 = share(catalog::delooping(groups::cyclic(3)));
    EXPECT_THROW(validate_functor(Functor{z3, z3, {0}, {0, 1}}), StructuralError);
    EXPECT_THROW(validate_functor(Functor{z3, z3, {4}, {0, 1, 2}}), StructuralError);
}

TEST(Functor, ValidationAgreesWithOracleOnRandomFunctors) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        Functor f = catalog::random_functor(params(seed));
        EXPECT_TRUE(validate_functor(f).ok()) << seed;
        EXPECT_TRUE(oracle::functorial(f)) << seed;
    }
}

TEST(Functor, EmbeddingChecksAgreeWithOracle) {
    std::size_t embeddings = 0;
    for (std::uint64_t seed = 1; seed <= 300; ++seed) {
        Functor f = catalog::random_functor(params(seed));
        bool homwise = is_embedding_homwise(f);
        EXPECT_EQ(homwise, oracle::fully_faithful(f)) << seed;
        EXPECT_EQ(homwise, is_embedding_fiberwise(f)) << seed;
        EXPECT_EQ(is_left_cancellable(f), oracle::injective_on_components(f)) << seed;
        if (homwise)
            EXPECT_TRUE(is_left_cancellable(f)) << seed;
        embeddings += homwise;
    }
    EXPECT_GT(embeddings, 20u);
    EXPECT_LT(embeddings, 280u);
}

TEST(Functor, FibersOfEmbeddingsArePropositions) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        for (const Functor* f : {&p.f(), &p.g()})
            for (ObjectIndex y = 0; y < f->target->object_count(); ++y)
                EXPECT_TRUE(is_proposition_groupoid(fiber_groupoid(*f, y).groupoid));
    }
}

TEST(Functor, FiberObjectsAreLexicographic) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Functor f = catalog::random_functor(params(seed));
        for (ObjectIndex y = 0; y < f.target->object_count(); ++y) {
            auto fib = fiber_groupoid(f, y);
            std::size_t expected = 0;
            for (ObjectIndex x = 0; x < f.source->object_count(); ++x)
                expected += oracle::hom(*f.target, f.obj(x), y).size();
            EXPECT_EQ(fib.points.size(), expected);
            EXPECT_TRUE(std::is_sorted(fib.points.begin(), fib.points.end(), [](const auto& a, const auto& b) {
                return std::tie(a.x, a.p) < std::tie(b.x, b.p);
            }));
            EXPECT_TRUE(validate_groupoid(fib.groupoid).ok());
        }
    }
}

TEST(Functor, CompositionIsPointwise) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto p = catalog::random_embedding_pair(params(seed));
        Functor gf = compose_functors(p.g(), p.f());
        for (ObjectIndex x = 0; x < p.x().object_count(); ++x)
            EXPECT_EQ(gf.obj(x), p.g().obj(p.f().obj(x)));
        for (MorphismIndex m = 0; m < p.x().morphism_count(); ++m)
            EXPECT_EQ(gf.mor(m), p.g().mor(p.f().mor(m)));
        EXPECT_THROW(compose_functors(p.f(), p.f()), std::invalid_argument);
    }
}

TEST(Functor, Powers) {
    auto p = catalog::random_embedding_pair(params(3));
    Functor gf = compose_functors(p.g(), p.f());
    Functor zero = functor_power(gf, 0);
    EXPECT_EQ(zero.obj_map, identity_functor(p.x_ptr()).obj_map);
    Functor two = functor_power(gf, 2);
    Functor manual = compose_functors(gf, gf);
    EXPECT_EQ(two.obj_map, manual.obj_map);
    EXPECT_EQ(two.mor_map, manual.mor_map);
}

TEST(Functor, NaturalityOfCentralAndNonCentralComponents) {
    auto z3 = share(catalog::delooping(groups::cyclic(3)));
    Functor id = identity_functor(z3);
    EXPECT_TRUE(check_natural_iso({id, id, {1}}));
    auto s3 = share(catalog::delooping(groups::symmetric3()));
    Functor ids = identity_functor(s3);
    // Conjugation by a transposition does not commute with every element.
    EXPECT_FALSE(check_natural_iso({ids, ids, {1}}));
    EXPECT_TRUE(check_natural_iso({ids, ids, {s3->identity(0)}}));
    EXPECT_THROW(check_natural_iso({ids, ids, {77}}), std::out_of_range);
}

TEST(Functor, SurjectiveEmbeddingsOfConnectedGroupoidsAreEquivalences) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto inst = catalog::random_connected_instance(params(seed));
        auto w = is_equivalence(inst.g);
        ASSERT_TRUE(w) << seed;
        EXPECT_TRUE(oracle::functorial(w->quasi_inverse));
        EXPECT_TRUE(check_natural_iso(w->unit));
        EXPECT_TRUE(check_natural_iso(w->counit));
    }
}

TEST(Functor, EquivalenceMatchesOracle) {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        Functor f = catalog::random_functor(params(seed));
        bool expected = oracle::fully_faithful(f) && oracle::essentially_surjective(f);
        EXPECT_EQ(is_equivalence(f).has_value(), expected) << seed;
    }
}

TEST(Functor, HomInverterRecoversPreimages) {
    auto p = catalog::random_embedding_pair(params(11));
    HomInverter inv(p.g());
    const Groupoid& y = p.y();
    for (MorphismIndex m = 0; m < y.morphism_count(); ++m)
        EXPECT_EQ(inv.preimage(y.src(m), y.dst(m), p.g().mor(m)), std::optional<MorphismIndex>(m));
}
