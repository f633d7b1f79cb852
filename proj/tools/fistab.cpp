// Command-line front end: fistab <command> <config> <name> [flags]
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fistab/fistab.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fistab::InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable spectra of FI-set relations"};
  app.require_subcommand(1);

  fistab::CommandOptions opt;
  std::string config_path, name, out_path, csv_path, report_path;
  int n = -1, n_max = -1, cutoff = -1, workers = -1;

  auto add_common = [&](CLI::App* sub, bool needs_name) {
    sub->add_option("config", config_path, "job configuration file")->required();
    if (needs_name) sub->add_option("name", name, "FI-set or relation name")->required();
    sub->add_option("--out", out_path, "write output to this file");
  };

  auto* eval = app.add_subcommand("eval", "list X_n or the relation matrix at degree n");
  add_common(eval, true);
  eval->add_option("--n", n)->required();
  eval->add_option("--csv", csv_path, "write matrix triplets here");

  auto* orbit_cmd = app.add_subcommand("orbits", "orbits of S_n on X_n");
  add_common(orbit_cmd, true);
  orbit_cmd->add_option("--n", n)->required();

  auto* decompose = app.add_subcommand("decompose", "stable range and orbit decomposition");
  add_common(decompose, true);
  decompose->add_option("--n-max", n_max);

  auto* mult = app.add_subcommand("multiplicities", "stable isotypic multiplicities");
  add_common(mult, true);
  mult->add_option("--n-max", n_max);
  mult->add_option("--lambda-cutoff", cutoff);

  auto* spec = app.add_subcommand("spectrum", "stable spectrum of a relation");
  add_common(spec, true);
  spec->add_option("--n-max", n_max);
  spec->add_option("--lambda-cutoff", cutoff);
  spec->add_option("--workers", workers);
  spec->add_flag("--laplacian", opt.laplacian);
  spec->add_flag("--singular", opt.singular);
  spec->add_flag("--oracle-check", opt.oracle_check);
  spec->add_option("--csv", csv_path, "write an eigenvalue table here");

  auto* rep = app.add_subcommand("report", "re-verify a saved spectrum report");
  add_common(rep, false);
  rep->add_option("report", report_path, "spectrum JSON")->required();

  CLI11_PARSE(app, argc, argv);

  if (n >= 0) opt.n = n;
  if (n_max >= 0) opt.n_max = n_max;
  if (cutoff >= 0) opt.lambda_cutoff = cutoff;
  if (workers >= 1) opt.workers = workers;

  try {
    const auto cfg = fistab::parse_config(slurp(config_path));
    std::ofstream file_out, csv_out;
    if (!out_path.empty()) file_out.open(out_path);
    std::ostream& out = out_path.empty() ? std::cout : file_out;
    if (!csv_path.empty()) {
      csv_out.open(csv_path);
      opt.csv = &csv_out;
    }
    if (*eval) return fistab::cmd_eval(cfg, name, opt, out);
    if (*orbit_cmd) return fistab::cmd_orbits(cfg, name, opt, out);
    if (*decompose) return fistab::cmd_decompose(cfg, name, opt, out);
    if (*mult) return fistab::cmd_multiplicities(cfg, name, opt, out);
    if (*spec) return fistab::cmd_spectrum(cfg, name, opt, out);
    return fistab::cmd_report(cfg, slurp(report_path), out);
  } catch (const fistab::Undecided& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return fistab::kUndecided;
  } catch (const fistab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const fistab::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return fistab::kUndecided;
  } catch (const fistab::MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return fistab::kFailure;
}
