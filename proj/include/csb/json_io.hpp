#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "csb/catalog.hpp"
#include "csb/countable.hpp"
#include "csb/csb_engine.hpp"

namespace csb::json_io {

using Json = nlohmann::ordered_json;

/// Reads and parses a file; throws SchemaError on I/O or syntax errors.
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& doc);

enum class DocumentKind { Groupoid, Functor, FiniteProblem, Family, Map, CountableProblem, Unknown };
const char* to_string(DocumentKind k);
DocumentKind sniff(const Json& doc);

// All readers throw SchemaError for missing keys or wrong types and let
// StructuralError from the constructors through.

Json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

Json to_json(const Groupoid& g);
Groupoid groupoid_from_json(const Json& j);

/// Resolves inline groupoids and file references relative to a directory,
/// loading each referenced file once.
class GroupoidResolver {
public:
    explicit GroupoidResolver(std::filesystem::path base) : base_(std::move(base)) {}
    GroupoidPtr resolve(const Json& ref);

private:
    std::filesystem::path base_;
    std::map<std::string, GroupoidPtr> cache_;
};

/// Source and target written as given (inline by default).
Json to_json(const Functor& f, const Json& source_ref, const Json& target_ref);
Json to_json(const Functor& f);
Functor functor_from_json(const Json& j, GroupoidResolver& resolver);

struct FiniteProblemData {
    GroupoidPtr x;
    GroupoidPtr y;
    Functor f;
    Functor g;
};

Json finite_problem_to_json(const GroupoidPtr& x, const GroupoidPtr& y, const Functor& f, const Functor& g);
/// F and G may omit source/target; they default to X/Y.
FiniteProblemData finite_problem_from_json(const Json& j, GroupoidResolver& resolver);

Json to_json(const CountableFamily& f);
CountableFamily family_from_json(const Json& j);

Json to_json(const CountableMap& m, bool with_endpoints);
CountableMap map_from_json(const Json& j, FamilyPtr source, FamilyPtr target);
/// A standalone map document carrying "source" and "target" families.
CountableMap map_from_json(const Json& j);

Json countable_problem_to_json(const CountableProblem& p);
CountableProblem countable_problem_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const CsbCertificate& c);
Json chains_to_json(const ChainTable& table, const WindowedH& h);

/// File name -> document for every part of a named example, plus
/// "expectations.json".
std::map<std::string, Json> example_bundle(const catalog::NamedExample& ex);

}  // namespace csb::json_io
