// vlink: batch front end for partition functions, R-matrix checks, joins,
// Gram/PSD reports, Brauer spectra and the R-matrix solver.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vlink/vlink.hpp"

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw UsageError(flag + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

vlink::Diagram load_diagram(const std::string& path, const std::string& flag) {
  try {
    return vlink::parse_diagram(read_file(path, flag));
  } catch (const vlink::Error& e) {
    throw UsageError(flag + " '" + path + "': " + e.what());
  }
}

struct LoadedTensor {
  vlink::ExactVertexModel exact;
  vlink::VertexModel model;
  bool rational_literals = true;
};

/// Tensor file: `rmatrix v1`, `n <n>`, optional `symmetrize on|off`, then
/// `entry i j k l <value>` lines.
LoadedTensor load_tensor(const std::string& path, const std::string& flag) {
  std::istringstream in(read_file(path, flag));
  auto fail = [&](const std::string& why) { return UsageError(flag + " '" + path + "': " + why); };
  int n = 0;
  bool symmetrize = false, header = false;
  std::vector<vlink::ModelEntry<vlink::Rational>> entries;
  LoadedTensor out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!header) {
      if (tok != std::vector<std::string>{"rmatrix", "v1"}) throw fail("expected header 'rmatrix v1'");
      header = true;
    } else if (tok[0] == "n" && tok.size() == 2) {
      n = std::stoi(tok[1]);
    } else if (tok[0] == "symmetrize" && tok.size() == 2 && (tok[1] == "on" || tok[1] == "off")) {
      symmetrize = tok[1] == "on";
    } else if (tok[0] == "entry" && tok.size() == 6) {
      try {
        entries.push_back({std::stoi(tok[1]), std::stoi(tok[2]), std::stoi(tok[3]), std::stoi(tok[4]),
                           vlink::parse_rational(tok[5])});
      } catch (const std::exception& e) {
        throw fail(std::string("bad entry line: ") + e.what());
      }
      out.rational_literals = out.rational_literals && vlink::is_rational_literal(tok[5]);
    } else {
      throw fail("unrecognized line '" + line + "'");
    }
  }
  if (!header) throw fail("empty file");
  if (n < 1) throw fail("missing or invalid 'n <n>' line");
  try {
    out.exact = vlink::make_model<vlink::Rational>(n, std::span<const vlink::ModelEntry<vlink::Rational>>(entries), symmetrize);
  } catch (const vlink::Error& e) {
    throw fail(e.what());
  }
  out.model = vlink::to_double(out.exact);
  return out;
}

std::string format_tensor(const vlink::VertexModel& r) {
  std::ostringstream out;
  out << "rmatrix v1\n"
      << "n " << r.n() << "\n"
      << "symmetrize off\n";
  out << std::setprecision(17);
  const int n = r.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          if (r(i, j, k, l) != 0.0)
            out << "entry " << i + 1 << ' ' << j + 1 << ' ' << k + 1 << ' ' << l + 1 << ' ' << r(i, j, k, l) << "\n";
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string diagram, tensor;
  bool brute = false, exact = false;
};

int run_eval(const EvalArgs& a) {
  const auto d = load_diagram(a.diagram, "--diagram");
  const auto t = load_tensor(a.tensor, "--tensor");
  json out;
  out["crossings"] = d.crossing_count();
  out["n"] = t.model.n();
  out["method"] = a.brute ? "bruteforce" : "contraction";
  out["value"] = a.brute ? vlink::eval_bruteforce(t.model, d) : vlink::eval(t.model, d);
  if (t.rational_literals || a.exact) {
    vlink::Rational q = a.brute ? vlink::eval_bruteforce(t.exact, d) : vlink::eval(t.exact, d);
    out["exact"] = vlink::to_string(q);
  }
  print(out);
  return kExitOk;
}

struct CheckArgs {
  std::string tensor;
  double tol = 1e-9;
  bool diagram_level = false;
};

int run_check(const CheckArgs& a) {
  const auto t = load_tensor(a.tensor, "--tensor");
  json out;
  out["n"] = t.model.n();
  const auto res = vlink::residuals(t.model);
  out["residuals"] = {res.r1, res.r2, res.r3};
  bool ok = std::max({res.r1, res.r2, res.r3}) <= a.tol;
  if (t.rational_literals) {
    const auto ex = vlink::residuals(t.exact);
    out["exact_residuals"] = {vlink::to_string(ex.r1), vlink::to_string(ex.r2), vlink::to_string(ex.r3)};
  }
  out["tol"] = a.tol;
  if (a.diagram_level) {
    const auto gaps = vlink::check_theorem_conditions(t.model);
    out["theorem_gaps"] = {gaps.gap1, gaps.gap2, gaps.gap3};
    ok = ok && std::max({gaps.gap1, gaps.gap2, gaps.gap3}) <= a.tol;
  }
  out["is_rmatrix"] = ok;
  print(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct JoinArgs {
  std::string left, right;
  int k = 1;
};

int run_join(const JoinArgs& a) {
  const auto g = load_diagram(a.left, "--left");
  const auto h = load_diagram(a.right, "--right");
  if (a.k < 0 || a.k > g.crossing_count() || a.k > h.crossing_count())
    throw UsageError("--k: " + std::to_string(a.k) + " exceeds the crossing count of an operand");
  std::cout << vlink::serialize_quantum(vlink::k_join(g, h, a.k));
  return kExitOk;
}

struct GramArgs {
  std::string family;
  int enumerate = -1;
  int k = 0;
  std::string tensor;
  std::string circle_power;
  double tol = 1e-8;
};

std::vector<vlink::Diagram> load_family(const GramArgs& a) {
  if (a.enumerate >= 0) {
    if (a.enumerate > 4) throw UsageError("--enumerate: at most 4 crossings");
    return vlink::all_canonical_diagrams(a.enumerate);
  }
  std::vector<std::string> paths;
  if (fs::is_directory(a.family)) {
    for (const auto& entry : fs::directory_iterator(a.family))
      if (entry.is_regular_file()) paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
  } else {
    paths = split(a.family, ',');
  }
  if (paths.empty()) throw UsageError("--family: no diagram files");
  std::vector<vlink::Diagram> out;
  for (const auto& p : paths) out.push_back(load_diagram(p, "--family"));
  return out;
}

int run_gram(const GramArgs& a) {
  if (a.tensor.empty() == a.circle_power.empty()) throw UsageError("gram: give exactly one of --tensor, --circle-power");
  if (a.family.empty() == (a.enumerate < 0)) throw UsageError("gram: give exactly one of --family, --enumerate");
  if (a.k < 0) throw UsageError("--k: must be nonnegative");
  const auto family = load_family(a);
  const auto f = a.tensor.empty()
                     ? vlink::InvariantFunction::circle_power(vlink::parse_rational(a.circle_power).get_d())
                     : vlink::InvariantFunction::from_model(load_tensor(a.tensor, "--tensor").model);
  const auto rep = vlink::gram_matrix(f, family, a.k);
  json out = vlink::to_json(rep);
  out["function"] = f.describe();
  out["tol"] = a.tol;
  out["psd"] = rep.is_psd(a.tol);
  print(out);
  return rep.is_psd(a.tol) ? kExitOk : kExitCheckFailed;
}

struct BrauerArgs {
  int ground = 8;
  std::string x = "2";
  bool spectrum = false;
  std::string eigencheck;
  std::string tableau;
  std::string psd_scan;
  int k = 1;
};

vlink::Tableau make_tableau(const BrauerArgs& a, const vlink::EvenPartition& shape) {
  if (shape.total() != a.ground) throw UsageError("--eigencheck: partition must sum to --ground");
  if (a.tableau.empty()) return vlink::Tableau::sequential(shape);
  std::vector<std::vector<int>> rows;
  for (const auto& row : split(a.tableau, ';')) {
    rows.emplace_back();
    for (const auto& cell : split(row, ',')) rows.back().push_back(std::stoi(cell));
  }
  vlink::Tableau t(a.ground / 2, rows);
  if (t.shape() != shape) throw UsageError("--tableau: shape does not match --eigencheck");
  return t;
}

int run_brauer(const BrauerArgs& a) {
  if (a.ground < 2 || a.ground % 2 != 0 || a.ground > 10) throw UsageError("--ground: must be even and at most 10");
  if (a.k != 1) throw UsageError("--k: only k = 1 is supported");
  const vlink::MatchingSpace space(a.ground);
  const vlink::Rational x = vlink::parse_rational(a.x);
  json out;
  out["ground"] = a.ground;
  out["matchings"] = space.size();
  out["x"] = vlink::to_string(x);
  bool ok = true;

  if (a.spectrum) {
    const auto eig = vlink::symmetric_eigenvalues(vlink::to_eigen(vlink::a_matrix(space, x.get_d())));
    json rows = json::array();
    bool all = true;
    for (double e : eig) {
      json labels = json::array();
      for (const auto& lambda : vlink::even_partitions(a.ground))
        if (std::abs(vlink::mu(lambda, x).get_d() - e) <= 1e-8 * std::max(1.0, std::abs(e))) labels.push_back(lambda.to_string());
      all = all && !labels.empty();
      rows.push_back({{"eigenvalue", e}, {"partitions", labels}});
    }
    out["spectrum"] = rows;
    out["all_matched"] = all;
    ok = ok && all;
  }

  if (!a.eigencheck.empty()) {
    std::vector<int> parts;
    for (const auto& p : split(a.eigencheck, ',')) parts.push_back(std::stoi(p));
    const vlink::EvenPartition shape(parts);
    const auto t = make_tableau(a, shape);
    const auto v = vlink::tableau_eigenvector(t, space);
    std::vector<vlink::Rational> vq;
    for (long long c : v) vq.emplace_back(static_cast<long>(c));
    const auto av = vlink::a_matrix(space, x).multiply(vq);
    const vlink::Rational m = vlink::mu(shape, x);
    bool a_ok = true;
    for (std::size_t i = 0; i < vq.size(); ++i) a_ok = a_ok && av[i] == m * vq[i];
    json check;
    check["partition"] = shape.to_string();
    check["mu"] = vlink::to_string(m);
    check["v_nonzero"] = std::any_of(v.begin(), v.end(), [](long long c) { return c != 0; });
    check["A_v_equals_mu_v"] = a_ok;
    ok = ok && a_ok;
    if (a.ground == 8 * a.k) {
      const auto u = vlink::symmetrized_u(v, space, a.k);
      std::vector<vlink::Rational> uq;
      for (long long c : u) uq.emplace_back(static_cast<long>(c));
      const auto aqu = vlink::aq_matrix(space, x).multiply(uq);
      const vlink::Rational scale = vlink::Rational(static_cast<long>(vlink::q_group(a.k).size())) * m;
      bool aq_ok = true;
      for (std::size_t i = 0; i < uq.size(); ++i) aq_ok = aq_ok && aqu[i] == scale * uq[i];
      check["u_F"] = vlink::u_f_coefficient(t, a.k);
      check["AQ_u_equals_Q_mu_u"] = aq_ok;
      ok = ok && aq_ok;
    }
    out["eigencheck"] = check;
  }

  if (!a.psd_scan.empty()) {
    if (a.ground != 8) throw UsageError("--psd-scan: A^Q is assembled on --ground 8 only");
    json table = json::array();
    for (const auto& tok : split(a.psd_scan, ',')) {
      const vlink::Rational xs = vlink::parse_rational(tok);
      const auto eig = vlink::symmetric_eigenvalues(vlink::to_eigen(vlink::aq_matrix(space, xs.get_d())));
      const double norm = vlink::spectral_norm(eig);
      table.push_back({{"x", vlink::to_string(xs)},
                       {"min_eigenvalue", eig.front()},
                       {"norm", norm},
                       {"psd", eig.front() >= -1e-8 * norm}});
    }
    out["psd_scan"] = table;
  }
  print(out);
  return ok ? kExitOk : kExitCheckFailed;
}

struct SolveArgs {
  vlink::SolverConfig config;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  if (a.config.n < 1 || a.config.n > 4) throw UsageError("--n: must be in [1,4]");
  if (a.config.threshold <= 0) throw UsageError("--tol: must be positive");
  const auto res = vlink::solve(a.config);
  const std::string tensor = format_tensor(res.model);
  json log;
  log["n"] = a.config.n;
  log["seed"] = a.config.seed;
  log["objective"] = res.objective;
  log["accepted_steps"] = res.accepted_steps;
  log["converged"] = res.converged;
  log["max_iterations_reached"] = res.max_iterations_reached;
  const auto r = vlink::residuals(res.model);
  log["residuals"] = {r.r1, r.r2, r.r3};
  json iters = json::array();
  for (const auto& rec : res.log) iters.push_back({rec.iteration, rec.objective, rec.step});
  log["log"] = iters;
  if (a.out.empty()) {
    std::cout << tensor;
    std::cerr << log.dump(2) << "\n";
  } else {
    std::ofstream f(a.out);
    if (!f) throw UsageError("--out: cannot write '" + a.out + "'");
    f << tensor;
    print(log);
  }
  return res.converged ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition functions and R-matrices of virtual link diagrams"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate f_R on a diagram");
  eval_cmd->add_option("--diagram", eval_args.diagram, "Diagram file")->required();
  eval_cmd->add_option("--tensor", eval_args.tensor, "Tensor file")->required();
  eval_cmd->add_flag("--brute", eval_args.brute, "Use the coloring sum instead of contraction");
  eval_cmd->add_flag("--exact", eval_args.exact, "Also report the exact rational value");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check-rmatrix", "Residuals of the R-matrix conditions");
  check_cmd->add_option("--tensor", check_args.tensor, "Tensor file")->required();
  check_cmd->add_option("--tol", check_args.tol, "Acceptance tolerance");
  check_cmd->add_flag("--diagram-level", check_args.diagram_level, "Also report fixture-diagram gaps");

  JoinArgs join_args;
  auto* join_cmd = app.add_subcommand("join", "k-join of two diagrams");
  join_cmd->add_option("--left", join_args.left, "Left diagram file")->required();
  join_cmd->add_option("--right", join_args.right, "Right diagram file")->required();
  join_cmd->add_option("--k", join_args.k, "Join order")->required();

  GramArgs gram_args;
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix M_{f,k} and PSD test");
  gram_cmd->add_option("--family", gram_args.family, "Directory of diagram files or comma-separated list");
  gram_cmd->add_option("--enumerate", gram_args.enumerate, "Use all canonical diagrams up to this many crossings");
  gram_cmd->add_option("--k", gram_args.k, "Join order")->required();
  gram_cmd->add_option("--tensor", gram_args.tensor, "Tensor file (f = f_R)");
  gram_cmd->add_option("--circle-power", gram_args.circle_power, "Circle value c (f = c^circles)");
  gram_cmd->add_option("--tol", gram_args.tol, "Relative PSD tolerance");

  BrauerArgs brauer_args;
  auto* brauer_cmd = app.add_subcommand("brauer", "Matching matrices A(x), A^Q(x) and their spectra");
  brauer_cmd->add_option("--ground", brauer_args.ground, "Ground set size 2m")->required();
  brauer_cmd->add_option("--x", brauer_args.x, "Value of x (rational p/q or decimal)");
  brauer_cmd->add_flag("--spectrum", brauer_args.spectrum, "Eigenvalues of A(x) matched to mu_lambda(x)");
  brauer_cmd->add_option("--eigencheck", brauer_args.eigencheck, "Even partition, e.g. 6,2");
  brauer_cmd->add_option("--tableau", brauer_args.tableau, "Rows of unbarred entries, e.g. 1,3,4;2");
  brauer_cmd->add_option("--psd-scan", brauer_args.psd_scan, "Comma-separated x values for A^Q(x)");
  brauer_cmd->add_option("--k", brauer_args.k, "Block parameter (ground 8k)");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Search for an R-matrix by gradient descent");
  solve_cmd->add_option("--n", solve_args.config.n, "Dimension")->required();
  solve_cmd->add_option("--seed", solve_args.config.seed, "Random seed")->required();
  solve_cmd->add_option("--max-iter", solve_args.config.max_iterations, "Iteration budget");
  solve_cmd->add_option("--tol", solve_args.config.threshold, "Objective threshold");
  solve_cmd->add_option("--scale", solve_args.config.init_scale, "Initialization scale");
  solve_cmd->add_option("--log-every", solve_args.config.log_every, "Log interval");
  solve_cmd->add_option("--out", solve_args.out, "Write the tensor file here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*eval_cmd) return run_eval(eval_args);
    if (*check_cmd) return run_check(check_args);
    if (*join_cmd) return run_join(join_args);
    if (*gram_cmd) return run_gram(gram_args);
    if (*brauer_cmd) return run_brauer(brauer_args);
    if (*solve_cmd) return run_solve(solve_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const vlink::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "error: invalid number (" << e.what() << ")\n";
    return kExitInputError;
  }
  return kExitInputError;
}
