#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "csb/bench.hpp"
#include "csb/catalog.hpp"
#include "csb/errors.hpp"
#include "csb/json_io.hpp"

namespace csb::cli {

namespace {

using json_io::Json;
namespace fs = std::filesystem;

struct Result {
    int code = kSuccess;
    std::vector<std::string> lines;
    Json report = Json::object();

    void say(std::string line) { lines.push_back(std::move(line)); }
};

struct Options {
    std::string format = "text";
    std::uint64_t seed = 1;
    std::string out;

    std::string path;
    std::string kind;
    std::string name;
    std::string action;
    std::string dot;
    std::string certificate;
    Index window = 100;
    std::int64_t budget = kDefaultBudget;
    bool no_divergence = false;
    std::vector<Index> sizes;
    std::size_t repeats = 3;
    std::size_t max_classes = 8;
    std::size_t fanout = 3;
};

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
}

void describe(Result& r, const std::string& what, const ValidationReport& rep) {
    r.report["reports"][what] = json_io::to_json(rep);
    if (rep.ok()) {
        r.say(what + ": ok");
        return;
    }
    r.say(what + ": " + std::to_string(rep.violations.size()) + (rep.truncated ? "+" : "") + " violation(s)");
    for (std::size_t i = 0; i < rep.violations.size() && i < 10; ++i) {
        const auto& v = rep.violations[i];
        r.say("  " + v.axiom + " [" + join_indices(v.indices) + "]" + (v.detail.empty() ? "" : " " + v.detail));
    }
    r.code = kFalse;
}

Json load(const Options& o, json_io::DocumentKind& kind) {
    Json doc = json_io::read_file(o.path);
    kind = json_io::sniff(doc);
    if (kind == json_io::DocumentKind::Unknown)
        throw SchemaError("unrecognized document: expected a groupoid, functor, problem, family or map");
    return doc;
}

void require_valid(const Groupoid& g, const std::string& what) {
    auto rep = validate_groupoid(g);
    if (!rep.ok())
        throw SchemaError(what + " is not a groupoid: " + rep.violations.front().axiom);
}

void require_valid(const Functor& f, const std::string& what) {
    require_valid(*f.source, what + " source");
    require_valid(*f.target, what + " target");
    auto rep = validate_functor(f);
    if (!rep.ok())
        throw SchemaError(what + " is not a functor: " + rep.violations.front().axiom);
}

Index validation_window(const CountableMap& m, Index requested) {
    return std::max(requested, m.tail_start() + m.modulus());
}

Result cmd_validate(const Options& o) {
    Result r;
    json_io::DocumentKind kind;
    Json doc = load(o, kind);
    r.report["kind"] = json_io::to_string(kind);
    json_io::GroupoidResolver resolver(fs::path(o.path).parent_path());
    switch (kind) {
    case json_io::DocumentKind::Groupoid:
        describe(r, "groupoid", validate_groupoid(json_io::groupoid_from_json(doc)));
        break;
    case json_io::DocumentKind::Functor: {
        Functor f = json_io::functor_from_json(doc, resolver);
        describe(r, "source", validate_groupoid(*f.source));
        describe(r, "target", validate_groupoid(*f.target));
        if (r.code == kSuccess)
            describe(r, "functor", validate_functor(f));
        break;
    }
    case json_io::DocumentKind::FiniteProblem: {
        auto p = json_io::finite_problem_from_json(doc, resolver);
        describe(r, "X", validate_groupoid(*p.x));
        describe(r, "Y", validate_groupoid(*p.y));
        if (r.code == kSuccess) {
            describe(r, "F", validate_functor(p.f));
            describe(r, "G", validate_functor(p.g));
        }
        break;
    }
    case json_io::DocumentKind::Family:
        describe(r, "family", validate_family(json_io::family_from_json(doc)));
        break;
    case json_io::DocumentKind::Map: {
        CountableMap m = json_io::map_from_json(doc);
        describe(r, "map", validate_countable(m, validation_window(m, o.window)));
        break;
    }
    case json_io::DocumentKind::CountableProblem: {
        CountableProblem p = json_io::countable_problem_from_json(doc);
        describe(r, "F", validate_countable(p.f(), validation_window(p.f(), o.window)));
        describe(r, "G", validate_countable(p.g(), validation_window(p.g(), o.window)));
        break;
    }
    case json_io::DocumentKind::Unknown:
        break;
    }
    r.report["valid"] = r.code == kSuccess;
    return r;
}

Result check_countable_map(const Options& o, const CountableMap& m) {
    Result r;
    auto rep = validate_countable(m, validation_window(m, o.window));
    if (!rep.ok() && !rep.mentions("non-injective"))
        throw SchemaError("map is invalid: " + rep.violations.front().axiom);
    EmbeddingStatus s = embedding_status_countable(m, validation_window(m, o.window));
    bool holds = o.kind == "embedding" ? s == EmbeddingStatus::Embedding : s != EmbeddingStatus::Neither;
    r.report["status"] = to_string(s);
    r.report["holds"] = holds;
    r.say(o.kind + ": " + (holds ? "true" : "false") + " (" + to_string(s) + ")");
    r.code = holds ? kSuccess : kFalse;
    return r;
}

Result cmd_check(const Options& o) {
    static const std::vector<std::string> kinds{"embedding", "cancellable", "equivalence", "proposition"};
    if (std::find(kinds.begin(), kinds.end(), o.kind) == kinds.end())
        throw std::invalid_argument("unknown check '" + o.kind + "'");
    json_io::DocumentKind kind;
    Json doc = load(o, kind);
    Result r;
    r.report["check"] = o.kind;

    if (o.kind == "proposition") {
        if (kind != json_io::DocumentKind::Groupoid)
            throw SchemaError("proposition check expects a groupoid");
        Groupoid g = json_io::groupoid_from_json(doc);
        require_valid(g, "input");
        auto cx = proposition_counterexample(g);
        r.report["holds"] = !cx;
        if (cx) {
            r.report["counterexample"] = {{"x", (*cx)[0]}, {"x2", (*cx)[1]}, {"hom_size", g.hom((*cx)[0], (*cx)[1]).size()}};
            r.say("proposition: false; hom(" + std::to_string((*cx)[0]) + ", " + std::to_string((*cx)[1]) +
                  ") has " + std::to_string(g.hom((*cx)[0], (*cx)[1]).size()) + " morphisms");
            r.code = kFalse;
        } else {
            r.say("proposition: true");
        }
        return r;
    }

    if (kind == json_io::DocumentKind::Map && o.kind != "equivalence")
        return check_countable_map(o, json_io::map_from_json(doc));
    if (kind != json_io::DocumentKind::Functor)
        throw SchemaError(o.kind + " check expects a functor");
    json_io::GroupoidResolver resolver(fs::path(o.path).parent_path());
    Functor f = json_io::functor_from_json(doc, resolver);
    require_valid(f, "functor");

    if (o.kind == "embedding") {
        auto cx = homwise_counterexample(f);
        bool fiberwise = is_embedding_fiberwise(f);
        r.report["holds"] = !cx;
        r.report["fiberwise_agrees"] = fiberwise == !cx;
        if (cx) {
            auto [x, x2] = *cx;
            std::size_t src = f.source->hom(x, x2).size();
            std::size_t dst = f.target->hom(f.obj(x), f.obj(x2)).size();
            r.report["counterexample"] = {{"x", x}, {"x2", x2}, {"source_hom_size", src}, {"target_hom_size", dst}};
            r.say("embedding: false; hom(" + std::to_string(x) + ", " + std::to_string(x2) + ") has " +
                  std::to_string(src) + " morphisms but hom(F" + std::to_string(x) + ", F" + std::to_string(x2) +
                  ") has " + std::to_string(dst) + " and the map is not a bijection");
            r.code = kFalse;
        } else {
            r.say("embedding: true");
        }
    } else if (o.kind == "cancellable") {
        auto cx = left_cancellable_counterexample(f);
        r.report["holds"] = !cx;
        if (cx) {
            r.report["counterexample"] = {{"x", (*cx)[0]}, {"x2", (*cx)[1]}};
            r.say("cancellable: false; objects " + std::to_string((*cx)[0]) + " and " + std::to_string((*cx)[1]) +
                  " lie in different classes with isomorphic images");
            r.code = kFalse;
        } else {
            r.say("cancellable: true");
        }
    } else {
        auto w = is_equivalence(f);
        r.report["holds"] = w.has_value();
        if (w) {
            r.report["witness"] = {{"quasi_inverse", {{"obj_map", w->quasi_inverse.obj_map},
                                                      {"mor_map", w->quasi_inverse.mor_map}}},
                                   {"unit", w->unit.components},
                                   {"counit", w->counit.components}};
            r.say("equivalence: true (quasi-inverse with validated unit and counit)");
        } else {
            auto cx = homwise_counterexample(f);
            if (cx) {
                r.report["counterexample"] = {{"reason", "not fully faithful"}, {"x", (*cx)[0]}, {"x2", (*cx)[1]}};
                r.say("equivalence: false; not fully faithful at (" + std::to_string((*cx)[0]) + ", " +
                      std::to_string((*cx)[1]) + ")");
            } else {
                auto classes = iso_classes(*f.target);
                std::vector<char> hit(classes.class_count(), 0);
                for (ObjectIndex x : f.obj_map)
                    hit[classes.class_of[x]] = 1;
                ObjectIndex y = 0;
                while (y < f.target->object_count() && hit[classes.class_of[y]])
                    ++y;
                r.report["counterexample"] = {{"reason", "not essentially surjective"}, {"y", y}};
                r.say("equivalence: false; object " + std::to_string(y) + " is not in the essential image");
            }
            r.code = kFalse;
        }
    }
    return r;
}

Result cmd_csb(const Options& o) {
    json_io::DocumentKind kind;
    Json doc = load(o, kind);
    if (kind != json_io::DocumentKind::FiniteProblem)
        throw SchemaError("csb expects a finite problem {X, Y, F, G}; use 'chains' for countable problems");
    json_io::GroupoidResolver resolver(fs::path(o.path).parent_path());
    auto data = json_io::finite_problem_from_json(doc, resolver);
    CsbProblem problem(data.x, data.y, data.f, data.g);
    CsbCertificate cert = verify_csb(problem);
    Result r;
    r.report["valid"] = cert.valid;
    r.report["h"] = {{"obj_map", cert.h.obj_map}, {"mor_map", cert.h.mor_map}};
    std::size_t g_classes = 0;
    for (Branch b : cert.class_branch)
        g_classes += b == Branch::GInverse;
    r.report["classes"] = cert.class_branch.size();
    r.report["g_inverse_classes"] = g_classes;
    if (!o.certificate.empty())
        json_io::write_file(o.certificate, json_io::to_json(cert));
    r.say(std::string("certificate: ") + (cert.valid ? "valid" : "invalid"));
    r.say("classes of X: " + std::to_string(cert.class_branch.size()) + " (g_inverse " + std::to_string(g_classes) +
          ", f " + std::to_string(cert.class_branch.size() - g_classes) + ")");
    for (const auto& c : cert.checks)
        r.say("  " + c.name + ": " + (c.passed ? "passed" : "FAILED") + (c.detail.empty() ? "" : " " + c.detail));
    if (!o.certificate.empty())
        r.say("certificate written to " + o.certificate);
    r.code = cert.valid ? kSuccess : kFalse;
    return r;
}

Result cmd_chains(const Options& o) {
    if (o.window < 0 || o.budget < 0)
        throw std::invalid_argument("window and budget must be non-negative");
    json_io::DocumentKind kind;
    Json doc = load(o, kind);
    if (kind != json_io::DocumentKind::CountableProblem)
        throw SchemaError("chains expects a countable problem {X, Y, F, G} over families");
    CountableProblem problem = json_io::countable_problem_from_json(doc);
    std::map<std::string, EmbeddingStatus> status;
    for (const auto& [name, map] : {std::pair<std::string, const CountableMap*>{"F", &problem.f()},
                                    std::pair<std::string, const CountableMap*>{"G", &problem.g()}}) {
        Index w = validation_window(*map, o.window);
        auto rep = validate_countable(*map, w);
        if (!rep.ok())
            throw SchemaError(name + " is invalid: " + rep.violations.front().axiom);
        status[name] = embedding_status_countable(*map, w);
    }
    ChainOptions opts{o.budget, !o.no_divergence};
    ChainTable table = decompose_window(problem, o.window, opts);
    bool embeddings = status["F"] == EmbeddingStatus::Embedding && status["G"] == EmbeddingStatus::Embedding;
    WindowedH h = embeddings ? construct_h_window(problem, o.window, opts) : index_h_window(problem, table);

    Result r;
    r.report = json_io::chains_to_json(table, h);
    r.report["F_status"] = to_string(status["F"]);
    r.report["G_status"] = to_string(status["G"]);
    r.report["h_level"] = embeddings ? "groupoid" : "index";
    std::map<std::string, std::size_t> kinds, branches;
    for (const auto& e : table.entries)
        ++kinds[to_string(e.kind)];
    for (const auto& e : h.entries)
        ++branches[to_string(e.branch)];
    r.say("window " + std::to_string(o.window) + ", budget " + std::to_string(o.budget) +
          (opts.detect_divergence ? "" : ", divergence detection off"));
    r.say(std::string("F: ") + to_string(status["F"]) + ", G: " + to_string(status["G"]));
    for (const auto& [k, n] : kinds)
        r.say("  " + k + ": " + std::to_string(n));
    std::string split = "h branches:";
    for (const auto& [b, n] : branches)
        split += " " + b + " " + std::to_string(n);
    r.say(split);
    if (!embeddings)
        r.say("h computed on indices only (not both maps are embeddings)");
    r.say("undetermined: " + std::to_string(h.undetermined.size()) + ", frontier: " + std::to_string(h.frontier.size()));
    if (!o.dot.empty()) {
        std::ofstream dot(o.dot);
        if (!dot)
            throw std::runtime_error("cannot write " + o.dot);
        write_chains_dot(dot, table);
        r.say("DOT written to " + o.dot);
    }
    r.code = h.undetermined.empty() ? kSuccess : kUndetermined;
    return r;
}

Result cmd_bench(const Options& o) {
    std::vector<Index> sizes = o.sizes.empty() ? std::vector<Index>{10000, 100000, 1000000} : o.sizes;
    BenchResult b = run_bench(sizes, o.repeats);
    Result r;
    Json rows = Json::array();
    r.say("size         mean_s      stddev_s    elements/s");
    for (const auto& row : b.rows) {
        rows.push_back({{"size", row.size},
                        {"seconds", row.seconds},
                        {"mean", row.mean},
                        {"stddev", row.stddev},
                        {"elements_per_second", row.elements_per_second}});
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-12lld %-11.6f %-11.6f %.3e", static_cast<long long>(row.size), row.mean,
                      row.stddev, row.elements_per_second);
        r.say(buf);
    }
    r.report["rows"] = std::move(rows);
    r.report["repeats"] = o.repeats;
    r.report["fitted_exponent"] = b.exponent;
    r.say("fitted exponent: " + std::to_string(b.exponent));
    return r;
}

Result cmd_catalog(const Options& o) {
    Result r;
    if (o.action == "list") {
        Json names = Json::array();
        for (const auto& n : catalog::example_names()) {
            auto ex = catalog::named_example(n);
            names.push_back({{"name", n}, {"description", ex.description}});
            r.say(n + "  " + ex.description);
        }
        r.report["examples"] = std::move(names);
        return r;
    }
    if (o.name.empty())
        throw std::invalid_argument("catalog " + o.action + " needs an example name");
    auto ex = catalog::named_example(o.name);
    if (o.action == "emit") {
        if (o.out.empty())
            throw std::invalid_argument("catalog emit needs --out <dir>");
        Json written = Json::array();
        for (const auto& [file, doc] : json_io::example_bundle(ex)) {
            json_io::write_file(fs::path(o.out) / file, doc);
            written.push_back(file);
            r.say("wrote " + (fs::path(o.out) / file).string());
        }
        r.report["files"] = std::move(written);
        return r;
    }
    if (o.action == "check") {
        Json results = Json::array();
        for (const auto& res : catalog::check_expectations(ex)) {
            std::string subj;
            for (const auto& s : res.expectation.subjects)
                subj += (subj.empty() ? "" : ",") + s;
            results.push_back({{"property", res.expectation.property},
                               {"subjects", res.expectation.subjects},
                               {"expected", res.expectation.expected},
                               {"actual", res.actual},
                               {"passed", res.passed}});
            r.say(std::string(res.passed ? "PASS " : "FAIL ") + res.expectation.property + "(" + subj +
                  ") = " + res.actual + (res.passed ? "" : " (expected " + res.expectation.expected + ")"));
            if (!res.passed)
                r.code = kFalse;
        }
        r.report["results"] = std::move(results);
        return r;
    }
    throw std::invalid_argument("unknown catalog action '" + o.action + "'");
}

Result cmd_generate(const Options& o) {
    catalog::GeneratorParams params;
    params.seed = o.seed;
    params.max_classes = o.max_classes;
    params.fanout = o.fanout;
    Result r;
    Json doc;
    if (o.kind == "groupoid") {
        doc = json_io::to_json(catalog::random_groupoid(params));
    } else if (o.kind == "functor") {
        doc = json_io::to_json(catalog::random_functor(params));
    } else if (o.kind == "pair") {
        CsbProblem p = catalog::random_embedding_pair(params);
        doc = json_io::finite_problem_to_json(p.x_ptr(), p.y_ptr(), p.f(), p.g());
    } else {
        throw std::invalid_argument("unknown generator '" + o.kind + "'");
    }
    r.report = doc;
    r.say(doc.dump());
    return r;
}

void emit(const Options& o, const Result& r, std::ostream& out) {
    if (o.format == "json")
        out << r.report.dump(2) << '\n';
    else
        for (const auto& line : r.lines)
            out << line << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Cantor-Schroeder-Bernstein for finite groupoids and rule-presented families"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", o.seed, "Generator seed");
    app.add_option("--out", o.out, "Report file (catalog emit: output directory)");

    auto* validate = app.add_subcommand("validate", "Validate a groupoid, functor, problem, family or map");
    validate->add_option("path", o.path)->required();
    validate->add_option("--window", o.window, "Validation window for countable maps");

    auto* check = app.add_subcommand("check", "Check embedding, cancellable, equivalence or proposition");
    check->add_option("kind", o.kind)->required();
    check->add_option("path", o.path)->required();
    check->add_option("--window", o.window, "Window for countable maps");

    auto* csb = app.add_subcommand("csb", "Construct and certify h for a finite problem");
    csb->add_option("path", o.path)->required();
    csb->add_option("--certificate", o.certificate, "Certificate output path");

    auto* chains = app.add_subcommand("chains", "Chain decomposition and windowed h for a countable problem");
    chains->add_option("path", o.path)->required();
    chains->add_option("--window", o.window, "Window size");
    chains->add_option("--budget", o.budget, "Backward step budget per chain");
    chains->add_option("--dot", o.dot, "Graphviz output path");
    chains->add_flag("--no-divergence", o.no_divergence, "Disable the divergence detector");

    auto* bench = app.add_subcommand("bench", "Time discrete chain decomposition");
    bench->add_option("sizes", o.sizes, "Window sizes")->delimiter(',');
    bench->add_option("--repeats", o.repeats, "Runs per size")->check(CLI::PositiveNumber);

    auto* cat = app.add_subcommand("catalog", "Named examples: list, emit <name>, check <name>");
    cat->add_option("action", o.action)->required()->check(CLI::IsMember({"list", "emit", "check"}));
    cat->add_option("name", o.name);

    auto* gen = app.add_subcommand("generate", "Seeded random groupoid, functor or embedding pair");
    gen->add_option("kind", o.kind)->required()->check(CLI::IsMember({"groupoid", "functor", "pair"}));
    gen->add_option("--max-classes", o.max_classes)->check(CLI::PositiveNumber);
    gen->add_option("--fanout", o.fanout)->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidInput;
    }

    Result r;
    try {
        if (validate->parsed())
            r = cmd_validate(o);
        else if (check->parsed())
            r = cmd_check(o);
        else if (csb->parsed())
            r = cmd_csb(o);
        else if (chains->parsed())
            r = cmd_chains(o);
        else if (bench->parsed())
            r = cmd_bench(o);
        else if (cat->parsed())
            r = cmd_catalog(o);
        else
            r = cmd_generate(o);
    } catch (const HypothesisError& e) {
        err << "hypothesis failed: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const CertificateError& e) {
        err << "certificate error: " << e.what() << '\n';
        return kFalse;
    } catch (const ConstructionError& e) {
        err << "construction error: " << e.what() << '\n';
        return kFalse;
    } catch (const std::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return kInvalidInput;
    }
    emit(o, r, out);
    if (!o.out.empty() && !cat->parsed())
        json_io::write_file(o.out, r.report);
    return r.code;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace csb::cli
