// tropweil: command-line entry point.
//
// Every verb writes one JSON report (stdout or --output) and a short human
// summary to stderr. Exit codes: 0 result agrees with the expected claim,
// 10 it contradicts it, 1 input or runtime error, 2 usage, 3 internal assertion.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "io.hpp"
#include "tropweil/acceptance.hpp"
#include "tropweil/hodge.hpp"
#include "tropweil/obstruction.hpp"
#include "tropweil/sampling.hpp"
#include "tropweil/version.hpp"
#include "tropweil/weil.hpp"

namespace {

using namespace tropweil;
using io::json;

constexpr int kAgrees = 0;
constexpr int kError = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;
constexpr int kContradicts = 10;

struct RunConfig {
  int d = 1;
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::string output;
};

struct Report {
  json result = json::object();
  json hashes = json::object();
  int exit_code = kAgrees;
  std::vector<std::string> summary;

  void hash(const std::string& name, const json& certificate) { hashes[name] = io::content_hash(certificate); }
};

unsigned default_threads() {
  if (const char* env = std::getenv("TROPWEIL_THREADS")) {
    try {
      long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit(const std::string& command, const RunConfig& cfg, const Report& report, double seconds) {
  json out = {{"tool", "tropweil"},
              {"version", kVersion},
              {"command", command},
              {"d", cfg.d},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"timing_seconds", seconds},
              {"certificate_hashes", report.hashes},
              {"exit_code", report.exit_code},
              {"result", report.result}};
  std::string text = out.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(cfg.output);
    if (!file) throw io::InputError("cannot write '" + cfg.output + "'");
    file << text;
  }
  for (const auto& line : report.summary) std::cerr << line << "\n";
}

// ---------------------------------------------------------------------------

Report run_classes(const RunConfig& cfg) {
  Report r;
  auto c = standard_classes(cfg.d);
  json h22 = {{"theta", io::class_h22_json(c.theta)}, {"w1", io::class_h22_json(c.w1)}, {"w2", io::class_h22_json(c.w2)}};
  ClassT theta = expand_class_to_T(c.theta, cfg.d), w1 = expand_class_to_T(c.w1, cfg.d),
         w2 = expand_class_to_T(c.w2, cfg.d);
  json t = {{"theta", io::class_t_json(theta)}, {"w1", io::class_t_json(w1)}, {"w2", io::class_t_json(w2)}};

  auto diffs = [](const std::vector<CoordinateDiff>& ds) {
    json out = json::array();
    for (const auto& x : ds)
      out.push_back({{"coordinate", idx::t_name(x.index)},
                     {"displayed", io::rat_str(x.displayed)},
                     {"computed", io::rat_str(x.computed)}});
    return out;
  };
  auto w1_diff = diff_T(displayed_w1_T(cfg.d), w1);
  auto w2_diff = diff_T(displayed_w2_T(cfg.d), w2);
  auto typo = theta_typo_report(cfg.d);
  json oracle = json::array();
  bool oracle_ok = true;
  for (const auto& e : theta_oracle(cfg.d)) {
    bool ok = t_coefficient(theta, e.sym2w_index) == e.expected;
    oracle_ok = oracle_ok && ok;
    oracle.push_back({{"monomial", idx::sym2w_name(e.sym2w_index)}, {"expected", e.expected.to_string()}, {"ok", ok}});
  }

  json tables = {{"gamma2", json::array()}, {"gamma_p", json::array()}, {"wedge2", json::array()},
                 {"sym2p", json::array()},  {"sym2w", json::array()},   {"h22", json::array()}};
  for (int i = 0; i < 4; ++i) {
    tables["gamma2"].push_back(idx::g2_name(i));
    tables["gamma_p"].push_back(idx::gp_name(i));
  }
  for (int i = 0; i < idx::kWedge2; ++i) tables["wedge2"].push_back(idx::wedge_name(i));
  for (int i = 0; i < idx::kSym2p; ++i) tables["sym2p"].push_back(idx::sym2p_name(i));
  for (int i = 0; i < idx::kSym2W; ++i) tables["sym2w"].push_back(idx::sym2w_name(i));
  for (int i = 0; i < idx::kH22; ++i) tables["h22"].push_back(idx::h22_name(i));

  json typo_json = {{"differences", diffs(typo.differences)},
                    {"corrected_matches", typo.corrected_matches},
                    {"notes", typo.notes}};
  r.result = {{"classes", h22},
              {"expansions", t},
              {"displayed_w1_differences", diffs(w1_diff)},
              {"displayed_w2_differences", diffs(w2_diff)},
              {"theta_oracle", oracle},
              {"theta_typo_report", typo_json},
              {"D", D_poly(cfg.d).to_string()},
              {"index_tables", tables}};
  if (!w1_diff.empty() || !w2_diff.empty()) r.exit_code = kContradicts;
  if (!oracle_ok) r.exit_code = kInternal;
  r.summary.push_back("classes d=" + std::to_string(cfg.d) + ": w1 display " +
                      (w1_diff.empty() ? "matches" : "differs in " + std::to_string(w1_diff.size()) + " coordinates") +
                      ", w2 display " + (w2_diff.empty() ? "matches" : "differs") + ", theta oracle " +
                      (oracle_ok ? "ok" : "FAILED") + ", theta display typos " +
                      std::to_string(typo.differences.size()));
  return r;
}

Report run_hodge(const RunConfig& cfg) {
  Report r;
  auto kernel = hodge_kernel(cfg.d);
  auto c = standard_classes(cfg.d);
  json members = {{"theta", is_hodge(c.theta, cfg.d)}, {"w1", is_hodge(c.w1, cfg.d)}, {"w2", is_hodge(c.w2, cfg.d)}};
  json basis = json::array();
  for (std::size_t j = 0; j < kernel.basis().cols(); ++j)
    basis.push_back(io::class_h22_json(ClassH22::from_vector(kernel.basis().column(j))));
  r.result = {{"kernel_rank", kernel.rank()},
              {"saturated_basis", basis},
              {"saturated_basis_matrix", matrix_to_string(kernel.basis())},
              {"is_hodge", members}};
  bool all = members["theta"].get<bool>() && members["w1"].get<bool>() && members["w2"].get<bool>();
  if (!all) r.exit_code = kContradicts;
  r.summary.push_back("hodge d=" + std::to_string(cfg.d) + ": kernel rank " + std::to_string(kernel.rank()) +
                      ", theta/w1/w2 " + (all ? "all Hodge" : "NOT all Hodge"));
  return r;
}

Report run_chain_check(RunConfig& cfg, const std::string& path) {
  Report r;
  Chain chain = io::chain_from_json(io::read_json_file(path));
  cfg.d = chain.d;
  for (std::size_t i = 0; i < chain.cells.size(); ++i) {
    try {
      validate_cell(chain.cells[i]);
    } catch (const std::exception& e) {
      throw io::InputError("cell " + std::to_string(i) + ": " + e.what());
    }
  }
  Torus torus(chain.d);
  FlagSum alpha = alpha_chain(torus, chain);
  json dens = json::array();
  for (const auto& q : chain.denominators) dens.push_back(q.get_str());
  r.result = {{"cells", chain.cells.size()},
              {"balanced", alpha.empty()},
              {"vol", io::class_t_json(vol_chain(chain))},
              {"alpha", {{"flag_count", alpha.size()}, {"flags", io::flags_json(alpha)}}},
              {"denominators", dens}};
  r.summary.push_back("chain check: " + std::to_string(chain.cells.size()) + " cells, " +
                      (alpha.empty() ? "balanced" : "not balanced (" + std::to_string(alpha.size()) + " flags)"));
  return r;
}

Report run_chain_subdivide(RunConfig& cfg, const std::string& path) {
  Report r;
  auto polygon = io::polygon_from_json(io::read_json_file(path));
  cfg.d = polygon.d;
  Chain chain = subdivide_polygon(polygon.loop, polygon.d);
  Torus torus(polygon.d);
  bool flags_ok = alpha_chain(torus, chain) == loop_flags(torus, polygon.loop);
  bool area_ok = vol_chain(chain) == polygon_area_form(polygon.loop);
  r.result = {{"chain", io::chain_to_json(chain)},
              {"boundary_flags_match", flags_ok},
              {"area_matches", area_ok},
              {"vol", io::class_t_json(vol_chain(chain))}};
  if (!flags_ok || !area_ok) r.exit_code = kInternal;
  r.summary.push_back("chain subdivide: " + std::to_string(chain.cells.size()) + " cells, boundary " +
                      (flags_ok ? "ok" : "MISMATCH") + ", area " + (area_ok ? "ok" : "MISMATCH"));
  return r;
}

// What the claims say about solvability modulo l: W yes, sublattices of W no.
enum class Expect { Solvable, Unsolvable, Nothing };
Expect expectation(const SublatticeSpec& l) {
  LatticeSpec lw = l.in_W();
  if (!l.is_proper()) return Expect::Solvable;
  if (lw.is_sublattice_of(LatticeSpec::standard(3))) return Expect::Unsolvable;
  return Expect::Nothing;
}

json mod_result_json(const ModResult& res, Report& r, const std::string& tag) {
  if (const auto* s = std::get_if<ResidualSolution>(&res)) {
    json j = io::solution_json(*s);
    j["verdict"] = "solvable";
    return j;
  }
  json cert = std::holds_alternative<RationalCertificate>(res)
                  ? io::certificate_json(std::get<RationalCertificate>(res))
                  : io::row_obstruction_json(std::get<RowObstruction>(res));
  r.hash(tag, cert);
  return {{"verdict", "unsolvable"}, {"certificate", cert}};
}

Report run_solve(const RunConfig& cfg, const std::string& mod, bool slack, bool doctored, const std::string& lambda_out) {
  Report r;
  SublatticeSpec l = io::sublattice_from_arg(mod);
  EquationSystem sys = assemble_system(cfg.d, slack);
  if (doctored) sys = doctored_system(sys);
  ObstructionSolver solver(sys);
  ModResult res = solver.solve_mod(l);
  bool solvable = std::holds_alternative<ResidualSolution>(res);
  bool verified = false;
  if (const auto* s = std::get_if<ResidualSolution>(&res)) {
    verified = verify_solution(*s, sys, l);
    if (!lambda_out.empty()) {
      std::ofstream out(lambda_out);
      if (!out) throw io::InputError("cannot write '" + lambda_out + "'");
      write_lambda(out, s->lambda);
    }
  } else if (const auto* c = std::get_if<RationalCertificate>(&res)) {
    verified = verify_certificate(*c, sys, l);
  } else {
    verified = true;  // divisibility rows are reported with their right-hand side for inspection
  }
  json counts = json::object();
  for (const auto& [kind, k] : sys.counts)
    counts[to_string(kind)] = {{"rows", k.rows}, {"empty_lhs", k.empty_lhs}, {"graded_dimension", k.graded_dimension}};
  r.result = mod_result_json(res, r, "solve");
  r.result["sublattice"] = io::sublattice_json(l);
  r.result["slack_descent"] = slack;
  r.result["doctored"] = doctored;
  r.result["verified"] = verified;
  r.result["system"] = {{"rows_per_block", sys.rows()},
                        {"unknowns_per_block", kLambdaCount},
                        {"block_rank", solver.block_rank()},
                        {"kernel_dimension", solver.kernel_dimension()},
                        {"obstruction_dimension", solver.obstruction_dimension()},
                        {"row_counts", counts}};
  Expect e = doctored ? Expect::Nothing : expectation(l);
  if (!verified)
    r.exit_code = kInternal;
  else if ((e == Expect::Solvable && !solvable) || (e == Expect::Unsolvable && solvable))
    r.exit_code = kContradicts;
  r.summary.push_back("solve d=" + std::to_string(cfg.d) + " mod " + l.name + ": " +
                      (solvable ? "solvable" : "unsolvable") + ", result " + (verified ? "verified" : "NOT VERIFIED") +
                      ", obstruction dimension " + std::to_string(solver.obstruction_dimension()));
  return r;
}

Report run_scan(const RunConfig& cfg, bool doctored) {
  Report r;
  EquationSystem sys = assemble_system(cfg.d);
  if (doctored) sys = doctored_system(sys);
  ScanReport scan = proper_sublattice_scan(sys);
  json functionals = json::array();
  for (const auto& f : scan.rational_functionals) functionals.push_back(io::rat_list(f));
  json primes = json::array();
  for (const auto& p : scan.bad_primes) primes.push_back(p.get_str());
  json per_prime = json::object();
  for (const auto& [p, fs] : scan.prime_solutions) {
    json list = json::array();
    for (const auto& f : fs) list.push_back({f[0], f[1], f[2]});
    per_prime[p] = list;
  }
  r.result = {{"empty", scan.empty()},
              {"obstruction_dimension", scan.obstruction_dimension},
              {"obstruction_inside_W", scan.obstruction_inside_W},
              {"rational_functionals", functionals},
              {"bad_primes", primes},
              {"prime_solutions", per_prime},
              {"functionals_checked", scan.functionals_checked},
              {"doctored", doctored}};
  bool verified = true;
  if (scan.certificate) {
    json cert = io::certificate_json(*scan.certificate);
    verified = verify_certificate(*scan.certificate, sys, SublatticeSpec::whole());
    r.result["certificate"] = cert;
    r.result["certificate_covers_W"] = verified;
    r.hash("scan", cert);
  }
  if (!verified)
    r.exit_code = kInternal;
  else if (!doctored && !scan.empty())
    r.exit_code = kContradicts;
  r.summary.push_back("scan d=" + std::to_string(cfg.d) + ": " + (scan.empty() ? "empty" : "NON-EMPTY") +
                      (scan.certificate ? " (W itself obstructed; certificate covers every sublattice)" : ""));
  return r;
}

Report run_verify(const RunConfig& cfg, const std::string& lambda_path, const std::string& mod,
                  const std::string& chains_path, const std::string& cert_path) {
  Report r;
  SublatticeSpec l = io::sublattice_from_arg(mod);
  if (!cert_path.empty()) {
    json j = io::read_json_file(cert_path);
    // Accept a bare certificate or a full report that contains one.
    const json* cj = &j;
    if (j.contains("result") && j["result"].contains("certificate")) cj = &j["result"]["certificate"];
    RationalCertificate c = io::certificate_from_json(*cj);
    EquationSystem sys = assemble_system(cfg.d);
    bool ok = verify_certificate(c, sys, l);
    r.hash("input", *cj);
    r.result["certificate_verified"] = ok;
    r.summary.push_back("certificate against d=" + std::to_string(cfg.d) + " mod " + l.name + ": " +
                        (ok ? "verified" : "REJECTED"));
    if (!ok) r.exit_code = kError;
  }
  if (lambda_path.empty() && chains_path.empty()) return r;
  if (lambda_path.empty() || chains_path.empty()) throw io::InputError("--lambda and --chains go together");

  std::ifstream in(lambda_path);
  if (!in) throw io::InputError("cannot open '" + lambda_path + "'");
  LambdaUnknowns lambda = read_lambda(in);
  json cj = io::read_json_file(chains_path);
  std::vector<Chain> chains;
  if (cj.is_array())
    for (const auto& c : cj) chains.push_back(io::chain_from_json(c));
  else
    chains.push_back(io::chain_from_json(cj));
  for (const auto& c : chains)
    for (const auto& cell : c.cells) validate_cell(cell);

  // Chunks keep their order, so the report does not depend on the thread count.
  std::size_t parts = std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, chains.size()));
  std::vector<std::future<std::vector<ChainVerdict>>> jobs;
  for (std::size_t p = 0; p < parts; ++p) {
    std::size_t lo = chains.size() * p / parts, hi = chains.size() * (p + 1) / parts;
    std::vector<Chain> slice(chains.begin() + lo, chains.begin() + hi);
    jobs.push_back(std::async(std::launch::async, [&lambda, &l, slice = std::move(slice)] {
      return verify_candidate_phi(lambda, l, slice);
    }));
  }
  json verdicts = json::array();
  std::size_t passed = 0;
  for (auto& job : jobs)
    for (const auto& v : job.get()) {
      passed += v.in_lattice;
      verdicts.push_back({{"in_lattice", v.in_lattice}, {"defect", io::class_t_json(v.defect)}});
    }
  r.result["lambda_d"] = lambda.d;
  r.result["sublattice"] = io::sublattice_json(l);
  r.result["chains"] = verdicts;
  r.result["passed"] = passed;
  if (!l.is_proper() && passed != chains.size()) r.exit_code = kContradicts;
  r.summary.push_back("verify: " + std::to_string(passed) + "/" + std::to_string(chains.size()) +
                      " chains commute modulo " + l.name);
  return r;
}

Report run_selftest(const RunConfig& cfg, const std::vector<int>& only) {
  Report r;
  AcceptanceOptions options;
  options.seed = cfg.seed;
  options.only = only;
  json criteria = json::array();
  bool pass = true, consistent = true;
  run_acceptance(options, [&](const CriterionResult& c) {
    std::cerr << format_line(c) << std::endl;
    json artifacts = json::object();
    for (const auto& [k, v] : c.artifacts) artifacts[k] = v;
    if (!c.artifacts.empty()) r.hash("criterion_" + std::to_string(c.id), artifacts);
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"pass", c.pass},
                        {"consistent", c.consistent},
                        {"detail", c.detail},
                        {"budget_seconds", c.budget_seconds},
                        {"artifacts", artifacts}});
    pass = pass && c.pass;
    consistent = consistent && c.consistent;
  });
  r.result = {{"criteria", criteria}, {"all_pass", pass}, {"all_consistent", consistent}};
  r.exit_code = !consistent ? kInternal : (!pass ? kContradicts : kAgrees);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for a tropical Weil-type abelian fourfold family"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the verb
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;
  cfg.threads = default_threads();
  app.add_option("--seed", cfg.seed, "Random seed recorded in the report");
  app.add_option("--threads", cfg.threads, "Thread budget (default: TROPWEIL_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write the JSON report here instead of stdout");

  auto add_d = [&](CLI::App* sub) { sub->add_option("--d", cfg.d, "Weil parameter d")->check(CLI::PositiveNumber); };

  auto* classes = app.add_subcommand("classes", "theta, w1, w2 and their expansions");
  add_d(classes);
  std::string format = "json";
  classes->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));

  auto* hodge = app.add_subcommand("hodge", "Kernel of the eigenwave map");
  add_d(hodge);

  auto* chain = app.add_subcommand("chain", "Weighted polygonal chains");
  chain->require_subcommand(1);
  std::string chain_file;
  auto* check = chain->add_subcommand("check", "Validate a chain; report balance, vol and alpha");
  check->add_option("file", chain_file, "Chain JSON")->required()->check(CLI::ExistingFile);
  auto* subdivide = chain->add_subcommand("subdivide", "Subdivide a polygon into cells");
  subdivide->add_option("file", chain_file, "Polygon JSON")->required()->check(CLI::ExistingFile);

  std::string mod = "w", lambda_out, lambda_in, chains_in, cert_in;
  bool slack = false, doctored = false;
  auto* solve = app.add_subcommand("solve", "Solve the ansatz system modulo a sublattice of W");
  add_d(solve);
  solve->add_option("--mod", mod, "w | theta | 0 | theta,w1 | ... | custom.json");
  solve->add_flag("--slack-descent", slack, "Give the descent rows residual slack");
  solve->add_flag("--doctored", doctored, "Replace every residual right-hand side by theta (planted solution)");
  solve->add_option("--lambda-out", lambda_out, "Write the solved lambda here");

  auto* scan = app.add_subcommand("scan", "Search for a proper sublattice modulo which the system is solvable");
  add_d(scan);
  scan->add_flag("--doctored", doctored, "Scan the planted system instead");

  auto* verify = app.add_subcommand("verify", "Check a lambda file on chains, or re-verify a stored certificate");
  add_d(verify);
  verify->add_option("--lambda", lambda_in, "Lambda file")->check(CLI::ExistingFile);
  verify->add_option("--mod", mod, "Sublattice spec");
  verify->add_option("--chains", chains_in, "Chain JSON (one chain or an array)")->check(CLI::ExistingFile);
  verify->add_option("--certificate", cert_in, "Certificate or report JSON")->check(CLI::ExistingFile);

  std::vector<int> criteria;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--criteria", criteria, "Subset of criteria (1-10)")
      ->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    Report report;
    if (*classes) {
      command = "classes";
      report = run_classes(cfg);
    } else if (*hodge) {
      command = "hodge";
      report = run_hodge(cfg);
    } else if (*check) {
      command = "chain check";
      report = run_chain_check(cfg, chain_file);
    } else if (*subdivide) {
      command = "chain subdivide";
      report = run_chain_subdivide(cfg, chain_file);
    } else if (*solve) {
      command = "solve";
      report = run_solve(cfg, mod, slack, doctored, lambda_out);
    } else if (*scan) {
      command = "scan";
      report = run_scan(cfg, doctored);
    } else if (*verify) {
      command = "verify";
      if (lambda_in.empty() && chains_in.empty() && cert_in.empty()) {
        std::cerr << "verify: nothing to do (give --lambda and --chains, or --certificate)\n";
        return kUsage;
      }
      report = run_verify(cfg, lambda_in, mod, chains_in, cert_in);
    } else if (*selftest) {
      command = "selftest";
      report = run_selftest(cfg, criteria);
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(command, cfg, report, seconds);
    return report.exit_code;
  } catch (const std::logic_error& e) {
    // Includes failed internal identities (e.g. a positivity disagreement).
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e)) {
      std::cerr << command << ": " << e.what() << "\n";
      return kError;
    }
    std::cerr << command << ": internal assertion: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kError;
  }
}
