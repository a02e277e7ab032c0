// Canonical JSON for verdicts, certificates, family specs and search results.
// Key order is fixed (ordered_json) and numbers use the shortest exact
// representation, so identical values always serialize to identical bytes.
#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "biunitary/families.hpp"
#include "biunitary/hadamard.hpp"
#include "biunitary/search.hpp"
#include "biunitary/spancert.hpp"

namespace biunitary {

using Json = nlohmann::ordered_json;

Json to_json(const NumericPolicy& policy);
Json to_json(const BiunitaryVerdict& verdict);
/// Keys: n, rank, expected, verdict, gap, singular_values, policy. An
/// infinite gap is written as null.
Json to_json(const SpanCertificate& cert);
/// Keys: theorem ("constr1"), base, p, d, residual.
Json to_json(const CommutingPairSpec& spec, const std::string& base_ref);
/// Keys: theorem ("constr2"), base, p1, p2, d1, d2, residual.
Json to_json(const BlockPairSpec& spec, const std::string& base_ref);
/// Keys: phases (row-major), objective, iterations, converged.
Json to_json(const SearchResult& result);

/// A family spec read back from JSON: masks only, bound later to a base matrix.
struct FamilySpecFile {
  std::string theorem;  // "constr1" | "constr2"
  std::string base_ref;
  std::vector<int> p, d;               // constr1
  std::vector<int> p1, p2, d1, d2;     // constr2
};

/// Throws Error on a malformed spec.
FamilySpecFile parse_family_spec(const Json& j);
std::variant<CommutingPairSpec, BlockPairSpec> bind_family_spec(const FamilySpecFile& spec,
                                                               const ComplexMatrix& base);

}  // namespace biunitary
