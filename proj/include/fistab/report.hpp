#ifndef FISTAB_REPORT_HPP
#define FISTAB_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "fistab/bivariate.hpp"
#include "fistab/config.hpp"
#include "fistab/fiset.hpp"
#include "fistab/partition.hpp"
#include "fistab/rational.hpp"
#include "fistab/spectra.hpp"

namespace fistab {

using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;

inline Json to_json(const RationalPolynomial& p) { return p.to_strings(); }
inline RationalPolynomial polynomial_from_json(const Json& j) {
  return RationalPolynomial::from_strings(j.get<std::vector<std::string>>());
}

inline Json to_json(const BivariatePolynomial& p) { return p.to_strings(); }
inline BivariatePolynomial bivariate_from_json(const Json& j) {
  std::vector<RationalPolynomial> coeffs;
  for (const auto& c : j) coeffs.push_back(polynomial_from_json(c));
  return BivariatePolynomial(std::move(coeffs));
}

inline Json to_json(const Limits& c) {
  return {{"group_order", c.group_order}, {"orbit_size", c.orbit_size},   {"fiset_size", c.fiset_size},
          {"matrix_size", c.matrix_size}, {"oracle_size", c.oracle_size}, {"class_degree", c.class_degree},
          {"root_combinations", c.root_combinations}};
}

inline Limits limits_from_json(const Json& j) {
  Limits c;
  c.group_order = j.at("group_order").get<std::size_t>();
  c.orbit_size = j.at("orbit_size").get<std::size_t>();
  c.fiset_size = j.at("fiset_size").get<std::size_t>();
  c.matrix_size = j.at("matrix_size").get<std::size_t>();
  c.oracle_size = j.at("oracle_size").get<std::size_t>();
  c.class_degree = j.at("class_degree").get<int>();
  c.root_combinations = j.at("root_combinations").get<std::size_t>();
  return c;
}

/// Header shared by all command outputs: schema version, command, subject
/// and the effective caps and parameters.
inline Json report_header(const std::string& command, const std::string& subject, const JobConfig& cfg) {
  return {{"schema", kReportSchema},
          {"command", command},
          {"subject", subject},
          {"caps", to_json(cfg.caps)},
          {"params",
           {{"n_max", cfg.params.n_max},
            {"lambda_cutoff", cfg.params.lambda_cutoff},
            {"window", cfg.params.window},
            {"workers", cfg.params.workers}}}};
}

inline std::string element_json(const FISet& X, const ElementRep& e) { return X.describe(e); }

inline Json to_json(const StableRange& r) {
  Json stats = Json::array();
  for (const auto& s : r.stats)
    stats.push_back({{"n", s.n},
                     {"size", s.size},
                     {"orbits", s.orbit_count},
                     {"injective_to_next", s.injective_to_next},
                     {"orbit_map_bijective", s.orbit_map_bijective}});
  return {{"start", r.start ? Json(*r.start) : Json(nullptr)}, {"window", r.window}, {"degrees", stats}};
}

inline std::string group_name(const PermutationGroup& H) {
  const std::size_t order = H.order();
  if (order == 1) return "trivial";
  if (Integer(static_cast<unsigned long>(order)) == factorial(H.degree())) return "S_" + std::to_string(H.degree());
  return "order " + std::to_string(order);
}

inline Json to_json(const FISet& X, const Decomposition& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms) {
    std::vector<std::string> gens;
    for (const auto& g : t.H.generators()) gens.push_back(g.to_cycles());
    terms.push_back({{"m", t.m},
                     {"H", gens},
                     {"H_order", t.H.order()},
                     {"H_name", group_name(t.H)},
                     {"orbit_representative", element_json(X, t.base_element)}});
  }
  Json obs = Json::array();
  for (const auto& o : d.observations) {
    const char* kind = o.kind == ProductDecomposition::Kind::Found    ? "found"
                       : o.kind == ProductDecomposition::Kind::Absent ? "absent"
                                                                      : "undecided";
    obs.push_back({{"n", o.n}, {"orbit", o.stable_orbit}, {"outcome", kind}, {"m", o.m}, {"H_order", o.h_order}});
  }
  return {{"certified", d.certified}, {"base_degree", d.base_degree},  {"certified_from", d.certified_from},
          {"confirmed_at", d.confirmed_at}, {"terms", terms},        {"observations", obs},
          {"note", d.note}};
}

inline Json to_json(const CharPolyFamily& f) {
  return {{"lambda", f.lambda.to_string()}, {"size", f.size},       {"coefficients", to_json(f.as_bivariate())},
          {"valid_from", f.valid_from},     {"degree_bound", f.degree_bound}, {"sampled", f.sampled},
          {"verified_at", f.verified_at}};
}

inline CharPolyFamily charpoly_family_from_json(const Json& j) {
  CharPolyFamily f;
  f.lambda = Partition::parse(j.at("lambda").get<std::string>());
  f.size = j.at("size").get<int>();
  f.coefficients = bivariate_from_json(j.at("coefficients")).coefficients();
  if (static_cast<int>(f.coefficients.size()) != f.size + 1) throw ParseError("block coefficient count does not match its size");
  f.valid_from = j.at("valid_from").get<int>();
  f.degree_bound = j.at("degree_bound").get<int>();
  f.sampled = j.at("sampled").get<std::vector<int>>();
  f.verified_at = j.at("verified_at").get<std::vector<int>>();
  return f;
}

inline Json to_json(const OracleCheck& c) {
  return {{"n", c.n}, {"blocks_ok", c.blocks_ok}, {"families_ok", c.families_ok}, {"diagnostic", c.diagnostic}};
}

inline Json to_json(const SpectralReport& r) {
  Json blocks = Json::array();
  for (const auto& b : r.blocks) blocks.push_back(to_json(b));
  Json fams = Json::array();
  for (const auto& f : r.families) {
    Json sources = Json::array();
    for (const auto& [lambda, e] : f.sources) sources.push_back({{"lambda", lambda.to_string()}, {"multiplicity", e}});
    Json evidence = Json::array();
    for (const auto& [n, c] : f.real_roots) evidence.push_back({{"n", n}, {"real_roots", c}});
    Json item = {{"polynomial", f.polynomial},
                 {"factor", to_json(f.factor)},
                 {"multiplicity", to_json(f.multiplicity)},
                 {"sources", sources},
                 {"display", f.polynomial ? f.value.to_string() : f.factor.to_string()},
                 {"multiplicity_display", f.multiplicity.to_string()}};
    if (f.polynomial) item["value"] = to_json(f.value);
    if (!f.polynomial) item["real_root_counts"] = evidence;
    fams.push_back(std::move(item));
  }
  Json coinc = Json::array();
  for (const auto& c : r.coincidences) {
    std::vector<std::string> degs;
    for (const auto& d : c.degrees) degs.push_back(d.get_str());
    coinc.push_back({{"families", {c.first, c.second}}, {"degrees", degs}});
  }
  Json transcript = Json::array();
  for (const auto& t : r.transcript) transcript.push_back(to_json(t));
  return {{"kind", r.kind},
          {"stable_start", r.stable_start},
          {"sample_start", r.sample_start},
          {"lambda_cutoff", r.lambda_cutoff},
          {"complete", r.complete},
          {"blocks", blocks},
          {"families", fams},
          {"coincidences", coinc},
          {"distinct_count", r.distinct_count},
          {"distinct_from", r.distinct_from},
          {"cardinality", to_json(r.cardinality)},
          {"notes", r.notes},
          {"verification", transcript},
          {"caps", to_json(r.limits)}};
}

/// Inverse of to_json for the parts the oracle check needs; derived display
/// fields are ignored.
inline SpectralReport spectral_report_from_json(const Json& j) {
  SpectralReport r;
  r.kind = j.at("kind").get<std::string>();
  r.stable_start = j.at("stable_start").get<int>();
  r.sample_start = j.at("sample_start").get<int>();
  r.lambda_cutoff = j.at("lambda_cutoff").get<int>();
  r.complete = j.at("complete").get<bool>();
  for (const auto& b : j.at("blocks")) r.blocks.push_back(charpoly_family_from_json(b));
  for (const auto& f : j.at("families")) {
    EigenvalueFamily fam;
    fam.polynomial = f.at("polynomial").get<bool>();
    fam.factor = bivariate_from_json(f.at("factor"));
    fam.multiplicity = polynomial_from_json(f.at("multiplicity"));
    if (fam.polynomial) fam.value = polynomial_from_json(f.at("value"));
    for (const auto& s : f.at("sources"))
      fam.sources.emplace_back(Partition::parse(s.at("lambda").get<std::string>()), s.at("multiplicity").get<int>());
    r.families.push_back(std::move(fam));
  }
  for (const auto& c : j.at("coincidences")) {
    Coincidence co;
    co.first = c.at("families").at(0).get<std::size_t>();
    co.second = c.at("families").at(1).get<std::size_t>();
    for (const auto& d : c.at("degrees")) co.degrees.emplace_back(d.get<std::string>());
    r.coincidences.push_back(std::move(co));
  }
  r.distinct_count = j.at("distinct_count").get<int>();
  r.distinct_from = j.at("distinct_from").get<int>();
  r.cardinality = polynomial_from_json(j.at("cardinality"));
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.limits = limits_from_json(j.at("caps"));
  return r;
}

}  // namespace fistab

#endif  // FISTAB_REPORT_HPP
