// maxvol: command-line front end for maximum-volume column selection and the
// Label Cover -> MAX-VOL reduction.
//
// Exit status: 0 success / all checks pass, 1 a check failed, 2 usage,
// format or input error. Diagnostics go to stderr; reports are JSON with
// the schema {command, inputs, results, checks, wall_time_ms}.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxvol/maxvol.hpp"

namespace {

using maxvol::json;

constexpr std::size_t kTerminalMatrixLimit = 1'000'000;

struct UsageError : maxvol::Error {
  using maxvol::Error::Error;
};

struct Options {
  std::string report_path;
  bool timing = false;

  // shared
  std::string matrix_path, cnf_path, lc_path, output_path, sidecar_path;
  std::size_t k = 0;
  unsigned ell = 1;
  double mu = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t cap = maxvol::kDefaultEnumerationCap;
  std::size_t trials = 0;
  std::size_t rows = 6, cols = 6;

  // solve
  bool greedy = false, exact = false, local = false;
  std::vector<std::size_t> start;

  // verify
  unsigned m = 2;
  std::vector<std::size_t> p, q, block_rows, block_cols;
  std::vector<int> assignment;

  // params
  double alpha = maxvol::kDefaultAlpha;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

/// Collects the report and decides the exit status.
class Run {
 public:
  Run(std::string command, const Options& opt) : opt_(opt) {
    report_["command"] = std::move(command);
    report_["inputs"] = json::object();
    report_["results"] = json::object();
    report_["checks"] = json::array();
  }

  json& inputs() { return report_["inputs"]; }
  json& results() { return report_["results"]; }

  void add(const maxvol::CheckReport& c) {
    report_["checks"].push_back(maxvol::to_json(c));
    all_pass_ = all_pass_ && c.pass;
  }

  /// Artifact text goes to --output, or stdout when no --output is given.
  void emit_artifact(const std::string& text, bool large) {
    if (!opt_.output_path.empty()) {
      write_file(opt_.output_path, text);
      results()["output"] = opt_.output_path;
    } else {
      if (large)
        throw UsageError("matrix has more than " + std::to_string(kTerminalMatrixLimit) +
                         " entries; pass --output FILE");
      std::cout << text;
      artifact_on_stdout_ = true;
    }
  }

  int finish(std::chrono::steady_clock::time_point t0) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report_["wall_time_ms"] = opt_.timing ? ms : 0.0;
    const std::string text = report_.dump(2) + "\n";
    if (!opt_.report_path.empty())
      write_file(opt_.report_path, text);
    else if (!artifact_on_stdout_)
      std::cout << text;
    return all_pass_ ? 0 : 1;
  }

 private:
  const Options& opt_;
  json report_;
  bool all_pass_ = true;
  bool artifact_on_stdout_ = false;
};

maxvol::DenseMatrix load_matrix(const std::string& path) {
  if (path.empty()) throw UsageError("--matrix is required");
  return maxvol::parse_matrix_text(read_file(path));
}

maxvol::LabelCoverInstance load_lc(const std::string& path) {
  if (path.empty()) throw UsageError("--lc is required");
  return maxvol::parse_label_cover(read_file(path));
}

maxvol::CnfFormula load_cnf(const std::string& path) {
  if (path.empty()) throw UsageError("--cnf is required");
  return maxvol::parse_dimacs(read_file(path));
}

void require_k(const Options& opt) {
  if (opt.k < 1) throw UsageError("--k must be >= 1");
}

// ---------------------------------------------------------------------------

int cmd_solve(const Options& opt, Run& run) {
  require_k(opt);
  const int modes = int(opt.greedy) + int(opt.exact) + int(opt.local);
  if (modes != 1) throw UsageError("solve: pass exactly one of --greedy, --exact, --local");
  const auto a = load_matrix(opt.matrix_path);
  run.inputs() = {{"matrix", opt.matrix_path}, {"k", opt.k}};
  maxvol::SolveReport rep;
  if (opt.greedy) {
    rep = maxvol::greedy_select(a, opt.k);
  } else if (opt.exact) {
    run.inputs()["cap"] = opt.cap;
    rep = maxvol::exact_select(a, opt.k, opt.cap);
  } else {
    run.inputs()["mu"] = opt.mu;
    maxvol::ColumnSelection start = opt.start.empty()
                                        ? maxvol::greedy_select(a, opt.k).selection
                                        : maxvol::ColumnSelection::from_unsorted(opt.start);
    run.inputs()["start"] = std::vector<std::size_t>(start.begin(), start.end());
    rep = maxvol::local_search(a, opt.k, opt.mu, start);
  }
  run.results() = maxvol::to_json(rep);
  return 0;
}

int cmd_sat2lc(const Options& opt, Run& run) {
  const auto f = load_cnf(opt.cnf_path);
  const auto lc = maxvol::sat_to_labelcover(f);
  run.inputs() = {{"cnf", opt.cnf_path}};
  run.results() = {{"v_count", lc.v_count}, {"w_count", lc.w_count}, {"edges", lc.edges.size()},
                   {"sigma_v", lc.sigma_v}, {"sigma_w", lc.sigma_w}};
  run.emit_artifact(maxvol::to_json(lc).dump() + "\n", false);
  return 0;
}

int cmd_repeat(const Options& opt, Run& run) {
  if (opt.ell < 1) throw UsageError("--ell must be >= 1");
  const auto lc = load_lc(opt.lc_path);
  const auto rep = maxvol::repeat(lc, opt.ell);
  run.inputs() = {{"lc", opt.lc_path}, {"ell", opt.ell}};
  run.results() = {{"v_count", rep.v_count}, {"w_count", rep.w_count},
                   {"edges", rep.edges.size()}, {"sigma_v", rep.sigma_v},
                   {"sigma_w", rep.sigma_w}, {"v_degree", rep.v_degree()},
                   {"w_degree", rep.w_degree()}};
  run.emit_artifact(maxvol::to_json(rep).dump() + "\n", false);
  return 0;
}

int cmd_lc2maxvol(const Options& opt, Run& run) {
  if (opt.ell < 1) throw UsageError("--ell must be >= 1");
  const auto lc = load_lc(opt.lc_path);
  const auto inst = maxvol::build_maxvol_instance(lc, opt.ell);
  run.inputs() = {{"lc", opt.lc_path}, {"ell", opt.ell}};
  run.results() = {{"rows", inst.matrix.rows()}, {"cols", inst.matrix.cols()},
                   {"k", inst.k}, {"delta", inst.delta}};
  run.emit_artifact(maxvol::to_matrix_text(inst.matrix), inst.matrix.size() > kTerminalMatrixLimit);
  std::string sidecar = opt.sidecar_path;
  if (sidecar.empty() && !opt.output_path.empty()) sidecar = opt.output_path + ".json";
  if (!sidecar.empty()) {
    write_file(sidecar, maxvol::instance_sidecar(inst).dump(2) + "\n");
    run.results()["sidecar"] = sidecar;
  }
  return 0;
}

int cmd_verify_gadget(const Options& opt, Run& run) {
  run.inputs() = {{"m", opt.m}};
  run.add(maxvol::check_gadget(maxvol::build_gadget(opt.m)));
  return 0;
}

int cmd_verify_completeness(const Options& opt, Run& run) {
  if (opt.ell < 1) throw UsageError("--ell must be >= 1");
  const auto f = load_cnf(opt.cnf_path);
  std::vector<bool> assignment;
  if (!opt.assignment.empty()) {
    if (opt.assignment.size() != f.num_vars)
      throw UsageError("--assignment needs one 0/1 value per variable");
    for (int x : opt.assignment) assignment.push_back(x != 0);
    if (!maxvol::satisfies(f, assignment)) throw UsageError("--assignment does not satisfy the formula");
  } else if (!maxvol::find_satisfying_assignment(f, assignment)) {
    throw UsageError("formula is unsatisfiable; completeness does not apply");
  }
  const auto base = maxvol::sat_to_labelcover(f);
  const auto lc = maxvol::repeat(base, opt.ell);
  const auto inst = maxvol::build_maxvol_instance(lc, opt.ell);
  const auto sigma = maxvol::repeat_labeling(base, maxvol::labeling_from_assignment(f, assignment), opt.ell);

  run.inputs() = {{"cnf", opt.cnf_path}, {"ell", opt.ell}};
  std::vector<int> asg;
  for (bool b : assignment) asg.push_back(b ? 1 : 0);
  run.results() = {{"rows", inst.matrix.rows()}, {"cols", inst.matrix.cols()}, {"k", inst.k},
                   {"delta", inst.delta}, {"assignment", asg}};
  run.add(maxvol::check_completeness(inst, sigma));

  // Every unsatisfied (edge, i, j) triple.
  std::size_t triples = 0, failures = 0;
  double worst = 0.0;
  for (std::size_t e = 0; e < lc.edges.size(); ++e)
    for (std::uint32_t i = 0; i < lc.sigma_v; ++i)
      for (std::uint32_t j = 0; j < lc.sigma_w; ++j) {
        if (maxvol::edge_satisfied(lc.edges[e], i, j)) continue;
        const auto c = maxvol::check_unsat_edge_dot(inst, e, i, j);
        ++triples;
        worst = std::max(worst, std::fabs(c.lhs - c.rhs));
        if (!c.pass) ++failures;
      }
  maxvol::CheckReport agg;
  agg.name = "unsat_edge_dot_all";
  agg.relation = "==";
  agg.lhs = worst;
  agg.rhs = 0.0;
  agg.slack = maxvol::kExactSlack;
  agg.pass = failures == 0;
  agg.context = {{"triples", triples}, {"failures", failures},
                 {"expected_dot", maxvol::unsatisfied_edge_dot(lc)}};
  run.add(agg);

  if (inst.matrix.size() <= 50'000'000) {
    const auto gr = maxvol::greedy_select(inst.matrix, inst.k);
    run.results()["greedy"] = maxvol::to_json(gr);
  }
  return 0;
}

/// Runs `one(a)` on the --matrix input, or on `trials` seeded Gaussian
/// matrices of size rows x cols when --trials is given.
void for_each_input_matrix(const Options& opt, Run& run,
                           const std::function<void(const maxvol::DenseMatrix&)>& one) {
  if (opt.trials > 0) {
    run.inputs()["trials"] = opt.trials;
    run.inputs()["seed"] = opt.seed;
    run.inputs()["rows"] = opt.rows;
    run.inputs()["cols"] = opt.cols;
    maxvol::Rng rng(opt.seed);
    for (std::size_t t = 0; t < opt.trials; ++t) one(maxvol::random_gaussian_matrix(opt.rows, opt.cols, rng));
  } else {
    run.inputs()["matrix"] = opt.matrix_path;
    one(load_matrix(opt.matrix_path));
  }
}

int cmd_verify_union(const Options& opt, Run& run) {
  if (opt.trials > 0) {
    run.inputs() = {{"trials", opt.trials}, {"seed", opt.seed}, {"rows", opt.rows}, {"cols", opt.cols}};
    maxvol::Rng rng(opt.seed);
    for (std::size_t t = 0; t < opt.trials; ++t) {
      const auto a = maxvol::random_gaussian_matrix(opt.rows, opt.cols, rng);
      std::vector<std::size_t> perm = iota_vec(opt.cols);
      for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      const std::size_t qsize = 1 + rng.below(std::min<std::size_t>(4, opt.cols - 1));
      const std::size_t psize = rng.below(opt.cols - qsize + 1);
      std::vector<std::size_t> pv(perm.begin(), perm.begin() + psize);
      std::vector<std::size_t> qv(perm.begin() + psize, perm.begin() + psize + qsize);
      run.add(maxvol::check_union_lemma(a, maxvol::ColumnSelection::from_unsorted(pv),
                                        maxvol::ColumnSelection::from_unsorted(qv)));
    }
  } else {
    const auto a = load_matrix(opt.matrix_path);
    run.inputs() = {{"matrix", opt.matrix_path}, {"p", opt.p}, {"q", opt.q}};
    run.add(maxvol::check_union_lemma(a, maxvol::ColumnSelection::from_unsorted(opt.p),
                                      maxvol::ColumnSelection::from_unsorted(opt.q)));
  }
  return 0;
}

int cmd_verify_ratio(const Options& opt, Run& run) {
  require_k(opt);
  run.inputs()["k"] = opt.k;
  for_each_input_matrix(opt, run, [&](const maxvol::DenseMatrix& a) {
    run.add(maxvol::check_greedy_ratio(a, opt.k, opt.cap));
  });
  return 0;
}

int cmd_verify_gt(const Options& opt, Run& run) {
  require_k(opt);
  run.inputs()["k"] = opt.k;
  for_each_input_matrix(opt, run, [&](const maxvol::DenseMatrix& a) {
    maxvol::Block b;
    if (!opt.block_rows.empty() || !opt.block_cols.empty()) {
      b = {opt.block_rows, opt.block_cols};
    } else {
      maxvol::max_block_volume(a, opt.k, &b);
    }
    run.add(maxvol::check_gt_bound(a, opt.k, b));
  });
  return 0;
}

int cmd_verify_pan(const Options& opt, Run& run) {
  require_k(opt);
  run.inputs()["k"] = opt.k;
  run.inputs()["mu"] = opt.mu;
  for_each_input_matrix(opt, run, [&](const maxvol::DenseMatrix& a) {
    run.add(maxvol::check_pan_bounds(a, opt.k, opt.mu));
  });
  return 0;
}

int cmd_verify_soundness(const Options& opt, Run& run) {
  if (!opt.lc_path.empty()) {
    run.inputs() = {{"lc", opt.lc_path}, {"ell", opt.ell}};
    run.add(maxvol::brute_force_soundness_probe(load_lc(opt.lc_path), opt.ell, opt.cap));
    return 0;
  }
  run.inputs() = {{"suite", "toy"}, {"ell", 1}};
  for (const auto& toy : maxvol::toy_label_cover_instances()) {
    auto c = maxvol::brute_force_soundness_probe(toy.lc, 1, opt.cap);
    c.context["instance"] = toy.name;
    run.add(c);
  }
  return 0;
}

int cmd_params(const Options& opt, Run& run) {
  run.inputs() = {{"ell", opt.ell}, {"alpha", opt.alpha}, {"k", opt.k}};
  run.results() = maxvol::to_json(maxvol::compute_soundness_parameters(opt.ell, opt.alpha, opt.k));
  return 0;
}

int cmd_bench(const Options& opt, Run& run) {
  require_k(opt);
  const std::size_t trials = opt.trials ? opt.trials : 50;
  run.inputs() = {{"trials", trials}, {"seed", opt.seed}, {"rows", opt.rows},
                  {"cols", opt.cols}, {"k", opt.k}};
  maxvol::Rng rng(opt.seed);
  double min_ratio = 1.0, sum_ratio = 0.0;
  std::size_t optimal = 0;
  json per_trial = json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = maxvol::random_gaussian_matrix(opt.rows, opt.cols, rng);
    const auto c = maxvol::check_greedy_ratio(a, opt.k, opt.cap);
    const double g = c.context["greedy_volume"].get<double>();
    const double e = c.context["exact_volume"].get<double>();
    const double ratio = e > 0 ? g / e : 1.0;
    min_ratio = std::min(min_ratio, ratio);
    sum_ratio += ratio;
    if (c.context["greedy"] == c.context["exact"]) ++optimal;
    per_trial.push_back({{"greedy_volume", g}, {"exact_volume", e}, {"ratio", ratio}});
    run.add(c);
  }
  run.results() = {{"min_ratio", min_ratio},
                   {"mean_ratio", sum_ratio / static_cast<double>(trials)},
                   {"greedy_optimal", optimal},
                   {"one_over_k_factorial", 1.0 / maxvol::factorial(static_cast<unsigned>(opt.k))},
                   {"trials", per_trial}};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Maximum-volume column selection and the Label Cover reduction"};
  app.require_subcommand(1);
  app.add_option("--report", opt.report_path, "Write the JSON report to this file");
  app.add_flag("--timing", opt.timing, "Record wall_time_ms in the report (otherwise 0)");

  auto* solve = app.add_subcommand("solve", "Select k columns of a matrix");
  solve->add_option("--matrix", opt.matrix_path, "Matrix text file")->required();
  solve->add_option("--k", opt.k, "Number of columns")->required();
  auto* fg = solve->add_flag("--greedy", opt.greedy, "Greedy residual-norm selection");
  auto* fe = solve->add_flag("--exact", opt.exact, "Exhaustive enumeration");
  auto* fl = solve->add_flag("--local", opt.local, "Single-swap local search");
  fg->excludes(fe)->excludes(fl);
  fe->excludes(fl);
  solve->add_option("--mu", opt.mu, "Local search factor (>= 1)");
  solve->add_option("--start", opt.start, "Local search start columns (default: greedy)")->delimiter(',');
  solve->add_option("--cap", opt.cap, "Enumeration cap");

  auto* reduce = app.add_subcommand("reduce", "Reduction pipeline stages");
  reduce->require_subcommand(1);
  auto* sat2lc = reduce->add_subcommand("sat2lc", "Max-3SAT(5) DIMACS -> Label Cover JSON");
  sat2lc->add_option("--cnf", opt.cnf_path)->required();
  sat2lc->add_option("--output", opt.output_path);
  auto* rep = reduce->add_subcommand("repeat", "l-fold parallel repetition of a Label Cover instance");
  rep->add_option("--lc", opt.lc_path)->required();
  rep->add_option("--ell", opt.ell)->required();
  rep->add_option("--output", opt.output_path);
  auto* l2m = reduce->add_subcommand("lc2maxvol", "Label Cover JSON -> MAX-VOL matrix + sidecar");
  l2m->add_option("--lc", opt.lc_path)->required();
  l2m->add_option("--ell", opt.ell)->required();
  l2m->add_option("--output", opt.output_path, "Matrix text output");
  l2m->add_option("--sidecar", opt.sidecar_path, "Sidecar JSON (default: <output>.json)");

  auto* verify = app.add_subcommand("verify", "Run checks");
  verify->require_subcommand(1);
  auto add_random = [&](CLI::App* c) {
    c->add_option("--matrix", opt.matrix_path, "Matrix text file");
    c->add_option("--trials", opt.trials, "Use this many seeded Gaussian matrices instead");
    c->add_option("--seed", opt.seed);
    c->add_option("--rows", opt.rows);
    c->add_option("--cols", opt.cols);
  };
  auto* vg = verify->add_subcommand("gadget", "Hadamard gadget dot products");
  vg->add_option("--m", opt.m)->required();
  auto* vc = verify->add_subcommand("completeness", "Satisfying labeling gives volume 1");
  vc->add_option("--cnf", opt.cnf_path)->required();
  vc->add_option("--ell", opt.ell);
  vc->add_option("--assignment", opt.assignment, "0/1 per variable")->delimiter(',');
  auto* vu = verify->add_subcommand("union", "Union Lemma");
  add_random(vu);
  vu->add_option("--p", opt.p)->delimiter(',');
  vu->add_option("--q", opt.q)->delimiter(',');
  auto* vr = verify->add_subcommand("ratio", "Greedy vs exact, factor 1/k!");
  add_random(vr);
  vr->add_option("--k", opt.k)->required();
  vr->add_option("--cap", opt.cap);
  auto* vt = verify->add_subcommand("gt", "Cross-approximation bound of a k x k block");
  add_random(vt);
  vt->add_option("--k", opt.k)->required();
  vt->add_option("--rows-block", opt.block_rows)->delimiter(',');
  vt->add_option("--cols-block", opt.block_cols)->delimiter(',');
  auto* vp = verify->add_subcommand("pan", "RRQR bounds of a local mu-maximum");
  add_random(vp);
  vp->add_option("--k", opt.k)->required();
  vp->add_option("--mu", opt.mu);
  auto* vs = verify->add_subcommand("soundness-probe", "Exhaustive OPT<1 => Vol<1 probe");
  vs->add_option("--lc", opt.lc_path, "Label Cover JSON (default: built-in toy suite)");
  vs->add_option("--ell", opt.ell);
  vs->add_option("--cap", opt.cap);

  auto* params = app.add_subcommand("params", "Soundness constants");
  params->add_option("--ell", opt.ell)->required();
  params->add_option("--alpha", opt.alpha);
  params->add_option("--k", opt.k);

  auto* bench = app.add_subcommand("bench", "Experiments");
  bench->require_subcommand(1);
  auto* gve = bench->add_subcommand("greedy-vs-exact", "Greedy/exact volume ratios on random matrices");
  gve->add_option("--trials", opt.trials);
  gve->add_option("--seed", opt.seed);
  gve->add_option("--rows", opt.rows);
  gve->add_option("--cols", opt.cols);
  gve->add_option("--k", opt.k);
  gve->add_option("--cap", opt.cap);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::string name;
    std::function<int(const Options&, Run&)> fn;
    if (solve->parsed()) {
      name = "solve";
      fn = cmd_solve;
    } else if (sat2lc->parsed()) {
      name = "reduce sat2lc";
      fn = cmd_sat2lc;
    } else if (rep->parsed()) {
      name = "reduce repeat";
      fn = cmd_repeat;
    } else if (l2m->parsed()) {
      name = "reduce lc2maxvol";
      fn = cmd_lc2maxvol;
    } else if (vg->parsed()) {
      name = "verify gadget";
      fn = cmd_verify_gadget;
    } else if (vc->parsed()) {
      name = "verify completeness";
      fn = cmd_verify_completeness;
    } else if (vu->parsed()) {
      name = "verify union";
      fn = cmd_verify_union;
    } else if (vr->parsed()) {
      name = "verify ratio";
      fn = cmd_verify_ratio;
    } else if (vt->parsed()) {
      name = "verify gt";
      fn = cmd_verify_gt;
    } else if (vp->parsed()) {
      name = "verify pan";
      fn = cmd_verify_pan;
    } else if (vs->parsed()) {
      name = "verify soundness-probe";
      fn = cmd_verify_soundness;
    } else if (params->parsed()) {
      name = "params";
      fn = cmd_params;
    } else if (gve->parsed()) {
      name = "bench greedy-vs-exact";
      fn = cmd_bench;
    } else {
      std::cerr << app.help();
      return 2;
    }
    if (solve->parsed() && opt.local && !(opt.mu >= 1.0)) throw UsageError("--mu must be >= 1");
    Run run(name, opt);
    fn(opt, run);
    return run.finish(t0);
  } catch (const maxvol::Error& e) {
    std::cerr << "maxvol: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "maxvol: error: " << e.what() << '\n';
    return 2;
  }
}
