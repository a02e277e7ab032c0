#include "biunitary/serialize.hpp"

#include <cmath>

namespace biunitary {

Json to_json(const NumericPolicy& policy) {
  Json j;
  j["tol_entry"] = policy.tol_entry;
  j["tol_unitary"] = policy.tol_unitary;
  j["rank_rel_cut"] = policy.rank_rel_cut;
  j["cert_gap_min"] = policy.cert_gap_min;
  return j;
}

Json to_json(const BiunitaryVerdict& verdict) {
  Json j;
  j["is_biunitary"] = verdict.is_biunitary;
  j["max_modulus_deviation"] = verdict.max_modulus_deviation;
  j["max_unitarity_residual"] = verdict.max_unitarity_residual;
  return j;
}

Json to_json(const SpanCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["rank"] = cert.rank;
  j["expected"] = cert.expected;
  j["verdict"] = std::string(to_string(cert.verdict));
  j["gap"] = std::isfinite(cert.gap) ? Json(cert.gap) : Json(nullptr);
  j["singular_values"] = cert.singular_values;
  j["policy"] = to_json(cert.policy);
  return j;
}

Json to_json(const CommutingPairSpec& spec, const std::string& base_ref) {
  Json j;
  j["theorem"] = "constr1";
  j["base"] = base_ref;
  j["p"] = spec.p_mask.indices();
  j["d"] = spec.d_mask.indices();
  j["residual"] = spec.residual;
  return j;
}

Json to_json(const BlockPairSpec& spec, const std::string& base_ref) {
  Json j;
  j["theorem"] = "constr2";
  j["base"] = base_ref;
  j["p1"] = spec.p1_mask.indices();
  j["p2"] = spec.p2_mask.indices();
  j["d1"] = spec.d1_mask.indices();
  j["d2"] = spec.d2_mask.indices();
  j["residual"] = spec.residual;
  return j;
}

Json to_json(const SearchResult& result) {
  Json j;
  Json phases = Json::array();
  for (Eigen::Index i = 0; i < result.phases.rows(); ++i)
    for (Eigen::Index k = 0; k < result.phases.cols(); ++k) phases.push_back(result.phases(i, k));
  j["phases"] = std::move(phases);
  j["objective"] = result.objective;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  return j;
}

namespace {

std::vector<int> index_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw Error(std::string("family spec: missing index list '") + key + "'");
  }
  std::vector<int> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) throw Error(std::string("family spec: '") + key + "' must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

FamilySpecFile parse_family_spec(const Json& j) {
  if (!j.is_object() || !j.contains("theorem") || !j.at("theorem").is_string()) {
    throw Error("family spec: expected an object with a 'theorem' tag");
  }
  FamilySpecFile f;
  f.theorem = j.at("theorem").get<std::string>();
  if (j.contains("base") && j.at("base").is_string()) f.base_ref = j.at("base").get<std::string>();
  if (f.theorem == "constr1") {
    f.p = index_list(j, "p");
    f.d = index_list(j, "d");
  } else if (f.theorem == "constr2") {
    f.p1 = index_list(j, "p1");
    f.p2 = index_list(j, "p2");
    f.d1 = index_list(j, "d1");
    f.d2 = index_list(j, "d2");
  } else {
    throw Error("family spec: unknown theorem tag '" + f.theorem + "'");
  }
  return f;
}

std::variant<CommutingPairSpec, BlockPairSpec> bind_family_spec(const FamilySpecFile& spec,
                                                               const ComplexMatrix& base) {
  const auto n = static_cast<std::size_t>(base.rows());
  auto mask = [n](const std::vector<int>& idx) { return DiagProjection::from_indices(n, idx); };
  if (spec.theorem == "constr1") return make_commuting_pair(base, mask(spec.p), mask(spec.d));
  return make_block_pair(base, mask(spec.p1), mask(spec.p2), mask(spec.d1), mask(spec.d2));
}

}  // namespace biunitary
