#ifndef FISTAB_COMMANDS_HPP
#define FISTAB_COMMANDS_HPP

#include <algorithm>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fistab/config.hpp"
#include "fistab/fiset.hpp"
#include "fistab/multiplicity.hpp"
#include "fistab/relation.hpp"
#include "fistab/report.hpp"
#include "fistab/spectra.hpp"

namespace fistab {

/// Exit codes shared by every command. Hitting a cap counts as undecided.
enum ExitCode : int { kOk = 0, kFailure = 1, kUndecided = 2 };

struct CommandOptions {
  std::optional<int> n;
  std::optional<int> n_max;
  std::optional<int> lambda_cutoff;
  std::optional<int> workers;
  bool laplacian = false;
  bool singular = false;
  bool oracle_check = false;
  std::ostream* csv = nullptr;  // eval triplets or the spectrum table
};

namespace detail {

inline JobConfig effective(JobConfig cfg, const CommandOptions& opt) {
  if (opt.n_max) cfg.params.n_max = *opt.n_max;
  if (opt.lambda_cutoff) cfg.params.lambda_cutoff = *opt.lambda_cutoff;
  if (opt.workers) cfg.params.workers = *opt.workers;
  return cfg;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline int require_degree(const CommandOptions& opt) {
  if (!opt.n) throw InvalidArgument("this command needs --n");
  if (*opt.n < 0) throw InvalidArgument("--n must be nonnegative");
  return *opt.n;
}

inline EquivariantOperator operator_for(const RelationSpec& R, const std::string& kind) {
  if (kind == "laplacian") return laplacian_operator(R);
  if (kind == "gram") return gram_operator(R);
  if (kind == "adjacency") return adjacency_operator(R);
  throw InvalidArgument("unknown operator kind '" + kind + "'");
}

/// Two degrees for the oracle: the first two beyond every sampled degree
/// whose size fits the oracle cap, falling back to lower degrees.
inline std::vector<int> oracle_degrees(const SpectralReport& r, const FISet& X) {
  int hi = r.sample_start;
  for (const auto& b : r.blocks) {
    for (int n : b.sampled) hi = std::max(hi, n);
    for (int n : b.verified_at) hi = std::max(hi, n);
  }
  std::vector<int> out;
  for (int n = hi + 1; n <= hi + 2; ++n)
    if (X.cover_size(n) <= r.limits.oracle_size) out.push_back(n);
  for (int n = hi; n >= r.sample_start && out.size() < 2; --n)
    if (X.cover_size(n) <= r.limits.oracle_size) out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool run_oracle(SpectralReport& r, const EquivariantOperator& op) {
  bool ok = true;
  auto degrees = oracle_degrees(r, *op.space);
  if (degrees.empty()) throw CapExceeded("no degree fits the oracle", r.limits.oracle_size);
  for (int n : degrees) {
    auto check = consistency_check(r, op, n);
    ok = ok && check.blocks_ok && check.families_ok;
    r.transcript.push_back(std::move(check));
  }
  return ok;
}

}  // namespace detail

/// Lists X_n, or for a relation writes a JSON header and (row, col, 1)
/// triplets with row = Y_n index and col = X_n index.
inline int cmd_eval(const JobConfig& cfg, const std::string& name, const CommandOptions& opt, std::ostream& out) {
  Workspace ws(cfg);
  const int n = detail::require_degree(opt);
  if (cfg.find_fiset(name)) {
    auto X = ws.fiset(name);
    for (const auto& e : evaluate(*X, n)) out << X->describe(e) << "\n";
    return kOk;
  }
  auto R = ws.relation(name);
  auto M = materialize(R, n);
  auto LX = R.source->evaluate(n);
  auto LY = R.target->evaluate(n);
  Json header = report_header("eval", name, cfg);
  std::vector<std::string> rows, cols;
  for (std::size_t y = 0; y < LY->size(); ++y) rows.push_back(R.target->describe(LY->element(y)));
  for (std::size_t x = 0; x < LX->size(); ++x) cols.push_back(R.source->describe(LX->element(x)));
  header["degree"] = n;
  header["shape"] = {M.rows(), M.cols()};
  header["nonzeros"] = M.nonzeros();
  header["row_basis"] = rows;
  header["col_basis"] = cols;
  detail::emit(out, header);
  std::ostream& csv = opt.csv ? *opt.csv : out;
  csv << "row,col,value\n";
  std::vector<std::pair<std::size_t, std::size_t>> entries;
  for (std::size_t x = 0; x < M.cols(); ++x)
    for (auto y : M.related(x)) entries.emplace_back(y, x);
  std::sort(entries.begin(), entries.end());
  for (const auto& [y, x] : entries) csv << y << "," << x << ",1\n";
  return kOk;
}

inline int cmd_orbits(const JobConfig& cfg, const std::string& name, const CommandOptions& opt, std::ostream& out) {
  Workspace ws(cfg);
  const int n = detail::require_degree(opt);
  auto X = ws.fiset(name);
  auto level = X->evaluate(n);
  Json j = report_header("orbits", name, cfg);
  j["degree"] = n;
  j["size"] = level->size();
  Json list = Json::array();
  for (const auto& o : orbits(*level)) {
    std::vector<std::string> members;
    for (auto c : o.members) members.push_back(X->describe(level->element(c)));
    list.push_back({{"representative", X->describe(level->element(o.representative))},
                    {"size", o.members.size()},
                    {"members", members}});
  }
  j["orbits"] = list;
  detail::emit(out, j);
  return kOk;
}

/// Orbit decomposition report; exit 0 when certified, 2 when undecided.
inline int cmd_decompose(const JobConfig& base, const std::string& name, const CommandOptions& opt, std::ostream& out) {
  const JobConfig cfg = detail::effective(base, opt);
  Workspace ws(cfg);
  auto X = ws.fiset(name);
  Json j = report_header("decompose", name, cfg);
  j["stable_range"] = to_json(detect_stable_range(*X, cfg.params.n_max, cfg.params.window));
  auto d = theorem_a_decomposition(*X, cfg.params.n_max, cfg.params.window);
  j["decomposition"] = to_json(*X, d);
  std::string summary;
  for (const auto& t : d.terms)
    summary += (summary.empty() ? "" : " + ") + std::string("(m=") + std::to_string(t.m) + ", H=" + group_name(t.H) + ")";
  if (d.certified) summary += (d.terms.empty() ? "empty" : "") + std::string(" from degree ") + std::to_string(d.certified_from);
  j["summary"] = d.certified ? summary : "undecided: " + d.note;
  detail::emit(out, j);
  return d.certified ? kOk : kUndecided;
}

/// Stable multiplicities for |λ| ≤ cutoff with a per-degree cross-check over
/// the stable range up to n_max; exit 1 on any disagreement.
inline int cmd_multiplicities(const JobConfig& base, const std::string& name, const CommandOptions& opt, std::ostream& out) {
  const JobConfig cfg = detail::effective(base, opt);
  Workspace ws(cfg);
  auto X = ws.fiset(name);
  const auto range = detect_stable_range(*X, cfg.params.n_max, cfg.params.window);
  Json j = report_header("multiplicities", name, cfg);
  j["stable_start"] = range.start ? Json(*range.start) : Json(nullptr);
  if (!range.start) {
    j["summary"] = "undecided: stable range not detected";
    detail::emit(out, j);
    return kUndecided;
  }
  std::map<int, std::vector<Integer>> characters;
  auto character = [&](int n) -> const std::vector<Integer>& {
    auto it = characters.find(n);
    if (it == characters.end()) it = characters.emplace(n, permutation_character(*X, n)).first;
    return it->second;
  };
  Json table = Json::array(), zeros = Json::array(), mismatches = Json::array();
  for (const auto& lambda : partitions_up_to(cfg.params.lambda_cutoff)) {
    const Integer stable = stable_multiplicity(*X, lambda, range);
    Json per_n = Json::array();
    for (int n = multiplicity_stable_from(*X, lambda, *range.start); n <= cfg.params.n_max; ++n) {
      const Integer v = per_n_multiplicity(*X, n, lambda, character(n));
      per_n.push_back({{"n", n}, {"value", v.get_str()}});
      if (v != stable) mismatches.push_back({{"lambda", lambda.to_string()}, {"n", n}, {"stable", stable.get_str()}, {"per_n", v.get_str()}});
    }
    if (stable == 0) {
      zeros.push_back(lambda.to_string());
      continue;
    }
    table.push_back({{"lambda", lambda.to_string()},
                     {"stable", stable.get_str()},
                     {"method", X->is_induced() ? "pieri" : "per-degree"},
                     {"per_n", per_n}});
  }
  j["table"] = table;
  j["zero"] = zeros;
  j["mismatches"] = mismatches;
  detail::emit(out, j);
  return mismatches.empty() ? kOk : kFailure;
}

inline SpectralReport spectral_report_for(const JobConfig& cfg, const RelationSpec& R, const std::string& kind) {
  SpectrumOptions so{cfg.params.lambda_cutoff, cfg.params.window, cfg.params.n_max, cfg.params.workers};
  return analyze_operator(detail::operator_for(R, kind), so);
}

/// Spectral report for a relation. Self-relations give the adjacency report,
/// or the Laplacian with --laplacian; --singular analyzes rᵀr.
inline int cmd_spectrum(const JobConfig& base, const std::string& name, const CommandOptions& opt, std::ostream& out) {
  const JobConfig cfg = detail::effective(base, opt);
  Workspace ws(cfg);
  auto R = ws.relation(name);
  if (opt.laplacian && opt.singular) throw InvalidArgument("--laplacian and --singular are exclusive");
  const std::string kind = opt.laplacian ? "laplacian" : opt.singular ? "gram" : "adjacency";
  if (kind == "adjacency" && !R.is_self()) throw InvalidArgument("relation '" + name + "' is not a self-relation; use --singular");
  auto report = spectral_report_for(cfg, R, kind);
  bool ok = true;
  if (opt.oracle_check) ok = detail::run_oracle(report, detail::operator_for(R, kind));
  Json j = report_header("spectrum", name, cfg);
  j["operator"] = kind;
  j["spectrum"] = to_json(report);
  detail::emit(out, j);
  if (opt.csv) {
    *opt.csv << "n,eigenvalue,multiplicity\n";
    for (int n = std::max(report.sample_start, report.distinct_from); n <= cfg.params.n_max; ++n)
      for (const auto& f : report.families) {
        const std::string value = f.polynomial ? f.value(Rational(n)).get_str() : "root of " + f.factor.at(Rational(n)).to_string("x");
        *opt.csv << n << "," << value << "," << f.multiplicity(Rational(n)).get_str() << "\n";
      }
  }
  return ok ? kOk : kFailure;
}

/// Re-checks a saved spectrum report against the brute-force oracle at two
/// degrees; any disagreement gives exit 1.
inline int cmd_report(const JobConfig& cfg, const std::string& report_text, std::ostream& out) {
  Json saved;
  try {
    saved = Json::parse(report_text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  SpectralReport report;
  std::string name, kind;
  try {
    if (saved.at("schema").get<int>() != kReportSchema) throw ParseError("unsupported report schema");
    if (saved.at("command").get<std::string>() != "spectrum") throw ParseError("report was not produced by 'spectrum'");
    name = saved.at("subject").get<std::string>();
    kind = saved.at("operator").get<std::string>();
    report = spectral_report_from_json(saved.at("spectrum"));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  Workspace ws(cfg);
  auto R = ws.relation(name);
  report.transcript.clear();
  const bool ok = detail::run_oracle(report, detail::operator_for(R, kind));
  Json j = report_header("report", name, cfg);
  j["operator"] = kind;
  Json transcript = Json::array();
  for (const auto& t : report.transcript) transcript.push_back(to_json(t));
  j["verification"] = transcript;
  j["consistent"] = ok;
  detail::emit(out, j);
  return ok ? kOk : kFailure;
}

}  // namespace fistab

#endif  // FISTAB_COMMANDS_HPP
