// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "csb/bench.hpp"
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

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok)
            detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_s > 0 && s > limit_s)
        out.fail("took " + std::to_string(s) + " s, limit " + std::to_string(limit_s) + " s");
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", out.ok ? "PASS" : "FAIL", n, title.c_str(), s,
                out.detail.empty() ? "" : " - ", out.detail.c_str());
    std::fflush(stdout);
    failures += !out.ok;
}

/// Brute-force CSB h over materialized windows: inverse tables from the
/// materialized object maps, then a plain backward walk.
std::vector<Index> brute_force_h(const catalog::NamedExample& ex, Index w) {
    const CountableMap& fm = ex.map("F");
    const CountableMap& gm = ex.map("G");
    // Discrete shifts by at most 1: images of [0, w) stay below w + 1.
    auto xw = std::make_shared<const Groupoid>(materialize_family(*ex.family("X"), w));
    auto yw = std::make_shared<const Groupoid>(materialize_family(*ex.family("Y"), w + 1));
    auto xw2 = std::make_shared<const Groupoid>(materialize_family(*ex.family("X"), w + 2));
    Functor f = materialize_map(fm, xw, w, yw, w + 1);
    Functor g = materialize_map(gm, yw, w + 1, xw2, w + 2);
    std::vector<Index> g_inv(static_cast<std::size_t>(w + 2), -1), gf_inv(static_cast<std::size_t>(w + 2), -1);
    for (Index y = 0; y <= w; ++y)
        g_inv[g.obj(static_cast<ObjectIndex>(y))] = y;
    for (Index x = 0; x < w; ++x)
        gf_inv[g.obj(f.obj(static_cast<ObjectIndex>(x)))] = x;
    std::vector<Index> h(static_cast<std::size_t>(w));
    for (Index x = 0; x < w; ++x) {
        Index cur = x;
        while (gf_inv[static_cast<std::size_t>(cur)] >= 0)
            cur = gf_inv[static_cast<std::size_t>(cur)];
        bool x_stopper = g_inv[static_cast<std::size_t>(cur)] < 0;
        h[static_cast<std::size_t>(x)] = x_stopper ? static_cast<Index>(f.obj(static_cast<ObjectIndex>(x)))
                                                   : g_inv[static_cast<std::size_t>(x)];
    }
    return h;
}

}  // namespace

int main() {
    criterion(1, "homwise and fiberwise embedding checks agree on 1000 random functors", 60, [] {
        Outcome o;
        std::size_t embeddings = 0;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            Functor f = catalog::random_functor(params(seed));
            bool homwise = is_embedding_homwise(f);
            if (homwise != is_embedding_fiberwise(f))
                o.fail("disagreement at seed " + std::to_string(seed));
            if (homwise != oracle::fully_faithful(f))
                o.fail("hom-set oracle disagrees at seed " + std::to_string(seed));
            embeddings += homwise;
        }
        if (o.ok)
            o.detail = std::to_string(embeddings) + " embeddings, " + std::to_string(1000 - embeddings) + " not";
        return o;
    });

    criterion(2, "1000 random embedding pairs yield valid, re-checked certificates", 120, [] {
        Outcome o;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            auto p = catalog::random_embedding_pair(params(seed));
            auto cert = verify_csb(p);
            std::string at = " at seed " + std::to_string(seed);
            if (!cert.valid) {
                o.fail("invalid certificate" + at);
                continue;
            }
            if (!oracle::functorial(cert.h) || !oracle::fully_faithful(cert.h) ||
                !oracle::essentially_surjective(cert.h))
                o.fail("h fails an oracle" + at);
            for (ObjectIndex y = 0; y < p.y().object_count(); ++y) {
                const auto& s = cert.split[y];
                if (p.y().src(s.iso) != cert.h.obj(s.x) || p.y().dst(s.iso) != y)
                    o.fail("split witness does not re-check" + at);
            }
            std::set<ClassIndex> gi(cert.g_inverse_image_classes.begin(), cert.g_inverse_image_classes.end());
            for (ClassIndex c : cert.f_image_classes)
                if (gi.count(c))
                    o.fail("branch images overlap" + at);
        }
        return o;
    });

    criterion(3, "g-point verdicts are constant on iso classes", 0, [] {
        Outcome o;
        for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
            auto p = catalog::random_embedding_pair(params(seed));
            auto labels = oracle::components(p.x());
            std::map<ObjectIndex, bool> verdict;
            for (ObjectIndex x = 0; x < p.x().object_count(); ++x) {
                bool v = is_g_point(p, x).g_point;
                auto [it, fresh] = verdict.emplace(labels[x], v);
                if (!fresh && it->second != v)
                    o.fail("seed " + std::to_string(seed) + " object " + std::to_string(x));
            }
        }
        return o;
    });

    criterion(4, "windowed h equals brute-force h on evens_odds and hilbert_hotel (W = 1000)", 0, [] {
        Outcome o;
        const Index w = 1000;
        for (const char* name : {"evens_odds", "hilbert_hotel"}) {
            auto ex = catalog::named_example(name);
            auto p = catalog::countable_problem(ex);
            WindowedH h = construct_h_window(p, w);
            auto expected = brute_force_h(ex, w);
            if (!h.undetermined.empty())
                o.fail(std::string(name) + ": undetermined indices");
            for (Index x = 0; x < w; ++x)
                if (h.entries[static_cast<std::size_t>(x)].image != expected[static_cast<std::size_t>(x)])
                    o.fail(std::string(name) + ": mismatch at " + std::to_string(x));
            std::set<Index> images(expected.begin(), expected.end());
            if (images.size() != expected.size())
                o.fail(std::string(name) + ": brute-force h is not injective");
        }
        return o;
    });

    criterion(5, "pradic_pair(2) and lc_csb_fails report the expected verdicts", 0, [] {
        Outcome o;
        auto ex = catalog::named_example("pradic_pair(2)");
        if (embedding_status_countable(ex.map("F"), 1000) != EmbeddingStatus::Embedding)
            o.fail("forward map is not reported as an embedding");
        if (embedding_status_countable(ex.map("G"), 1000) != EmbeddingStatus::LeftCancellableOnly)
            o.fail("backward map is not reported as left-cancellable-only");
        if (families_equivalent(*ex.family("X"), *ex.family("Y")).equivalent)
            o.fail("families reported equivalent");
        auto lc = catalog::named_example("lc_csb_fails");
        if (!is_left_cancellable(lc.functor("F")) || !is_left_cancellable(lc.functor("G")))
            o.fail("finite pair is not left-cancellable both ways");
        if (is_embedding_homwise(lc.functor("F")) || is_embedding_homwise(lc.functor("G")))
            o.fail("finite pair reported as embeddings");
        if (groupoids_equivalent(*lc.groupoid("X"), *lc.groupoid("Y")))
            o.fail("finite groupoids reported equivalent");
        return o;
    });

    criterion(6, "embeddings into connected groupoids are equivalences (200 instances)", 0, [] {
        Outcome o;
        std::size_t both = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            auto inst = catalog::random_connected_instance(params(seed));
            std::string at = " at seed " + std::to_string(seed);
            if (!oracle::functorial(inst.f) || !oracle::fully_faithful(inst.g))
                o.fail("generator broke its contract" + at);
            auto w = is_equivalence(inst.g);
            if (!w) {
                o.fail("no equivalence witness" + at);
                continue;
            }
            if (!oracle::functorial(w->quasi_inverse) || !check_natural_iso(w->unit) || !check_natural_iso(w->counit))
                o.fail("equivalence witness does not validate" + at);
            if (!is_embedding_homwise(inst.f))
                continue;
            ++both;
            CsbProblem p(inst.x, inst.y, inst.f, inst.g);
            auto cert = verify_csb(p);
            if (!cert.valid)
                o.fail("certificate invalid" + at);
            std::set<Branch> branches(cert.class_branch.begin(), cert.class_branch.end());
            if (branches.size() != 1)
                o.fail("branch tag not constant" + at);
        }
        if (o.ok)
            o.detail = std::to_string(both) + " instances with F an embedding too";
        if (both == 0)
            o.fail("no instance had F an embedding");
        return o;
    });

    criterion(7, "the diverging chain is ProvablyInfinite with detection, never decided without", 0, [] {
        Outcome o;
        auto p = catalog::countable_problem(catalog::named_example("chain_divergence"));
        if (backward_chain(p.composite(), p.g(), 0).kind != ChainKind::ProvablyInfinite)
            o.fail("0 is not ProvablyInfinite with detection");
        const ChainOptions plain{50, false};
        for (Index x = 0; x < 1000; ++x) {
            if (backward_chain(p.composite(), p.g(), x).kind != ChainKind::ProvablyInfinite)
                o.fail("detection misses " + std::to_string(x));
            auto g = is_g_point_countable(p, x, plain);
            if (g.chain.kind != ChainKind::Undetermined || g.value != Truth::Undetermined)
                o.fail("a verdict was emitted for " + std::to_string(x) + " at budget 50");
        }
        auto table = decompose_window(p, 1000, plain);
        for (const auto& e : table.entries)
            if (e.kind != ChainKind::Undetermined)
                o.fail("window decomposition decided an entry at budget 50");
        return o;
    });

    criterion(8, "chain decomposition of 10^6 elements within 5 s, near-linear scaling", 0, [] {
        Outcome o;
        BenchResult b = run_bench({10000, 100000, 1000000}, 3);
        double top = b.rows.back().mean;
        char buf[160];
        std::snprintf(buf, sizeof buf, "10^6 mean %.3f s, fitted exponent %.3f", top, b.exponent);
        o.detail = buf;
        if (top > 5.0)
            o.fail(std::string("too slow: ") + buf);
        if (b.exponent > 1.2)
            o.fail(std::string("super-linear: ") + buf);
        return o;
    });

    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
