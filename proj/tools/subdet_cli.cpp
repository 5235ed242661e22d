// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: ingest matrices and set-function instances, run
// the determinantal / submodular bound chains and property suites, and check
// the built-in worked examples against their published reference values.
//
// Exit codes: 0 ok, 1 inequality or golden-value failure, 2 input error,
// 3 numeric precondition (not positive definite, no convergence),
// 4 resource cap.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subdet/subdet.hpp"

namespace {

using subdet::json;

struct CommonOpts {
  std::string format = "text";
  std::string output;
  double tol = subdet::kDefaultTol;
  int cap = subdet::kDefaultCheckCap;
  std::uint64_t seed = 1;
  std::string grid;
  std::string partition;
};

// Output is assembled in full and written once at the end.
void emit(const CommonOpts& opts, const std::string& text) {
  if (opts.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.output);
  if (!out) throw subdet::ParseError(opts.output + ": cannot open for writing");
  out << text;
}

std::string label_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const subdet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subdet::InvalidPartition& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subdet::IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subdet::InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subdet::EmptyComplement& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const subdet::NotPositiveDefinite& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const subdet::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const subdet::GroundTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

std::string f4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int run_bounds(const std::string& matrix_file, const CommonOpts& opts) {
  const subdet::SymPDMatrix k = subdet::load_matrix(matrix_file);
  auto grid = subdet::parse_grid(opts.grid);
  subdet::ReportConfig cfg;
  cfg.matrix_label = label_of(matrix_file);
  cfg.tol = opts.tol;
  if (grid.count("k")) cfg.k_values = grid["k"];
  if (grid.count("p")) cfg.p_values = grid["p"];
  if (!opts.partition.empty())
    cfg.partition = subdet::parse_partition(opts.partition, k.size());
  const subdet::BoundReport rep = subdet::bound_report(k, cfg);

  bool ok = true;
  for (const auto& e : rep.entries)
    if (e.slack_log < -opts.tol * std::max(1.0, std::abs(e.log_bound)))
      ok = false;
  for (const auto& c : rep.ordering_checks)
    if (!c.holds) ok = false;

  if (opts.format == "json")
    emit(opts, subdet::to_json(rep).dump(2) + "\n");
  else
    emit(opts, subdet::to_text(rep));
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// eigen
// ---------------------------------------------------------------------------

int run_eigen(const std::string& matrix_file, const CommonOpts& opts) {
  const subdet::SymPDMatrix k = subdet::load_matrix(matrix_file);
  const int n = k.size();
  auto grid = subdet::parse_grid(opts.grid);
  const std::vector<int> ps = grid.count("p") ? grid["p"] : std::vector<int>{n};
  const std::vector<int> hs = grid.count("h") ? grid["h"] : std::vector<int>{};
  const std::vector<int> ls = grid.count("l") ? grid["l"] : std::vector<int>{0};
  const std::vector<int> ks = grid.count("k") ? grid["k"] : std::vector<int>{1};

  const subdet::EigenSpectrum spec = subdet::eigenvalues_sorted(k);
  json entries = json::array();
  std::ostringstream text;
  text << "matrix " << label_of(matrix_file) << ": eigenvalues ascending:";
  for (double v : spec.values) text << " " << f4(v);
  text << "\n";
  bool ok = true;
  for (int p : ps) {
    const std::vector<int> hs_eff =
        hs.empty() ? std::vector<int>{p} : hs;  // default h = p
    for (int h : hs_eff)
      for (int l : ls)
        for (int kk : ks) {
          if (!(1 <= kk && kk <= h && h <= p && p <= n)) continue;
          if (l < 0 || l > n - p) continue;
          const subdet::EigenProductBound eb =
              subdet::eigen_product_bound(k, h, p, l, kk, opts.tol);
          ok = ok && eb.actual_vs_bound.holds;
          entries.push_back(json{{"h", h},
                                 {"p", p},
                                 {"l", l},
                                 {"k", kk},
                                 {"log_bound", eb.log_bound},
                                 {"bound", std::exp(eb.log_bound)},
                                 {"log_actual", eb.log_actual},
                                 {"actual", std::exp(eb.log_actual)},
                                 {"holds", eb.actual_vs_bound.holds},
                                 {"slack_log", eb.actual_vs_bound.slack}});
          text << "h=" << h << " p=" << p << " l=" << l << " k=" << kk
               << ": bound " << f4(std::exp(eb.log_bound)) << ", actual "
               << f4(std::exp(eb.log_actual))
               << (eb.actual_vs_bound.holds ? "" : "  VIOLATED") << "\n";
        }
  }
  if (entries.empty())
    throw subdet::InvalidParams("no valid (h,p,l,k) combination in the grid");
  if (opts.format == "json") {
    json j{{"matrix", label_of(matrix_file)},
           {"eigenvalues", spec.values},
           {"residual", spec.residual},
           {"entries", entries}};
    emit(opts, j.dump(2) + "\n");
  } else {
    emit(opts, text.str());
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// submodular
// ---------------------------------------------------------------------------

json condition_json(const subdet::EqualityCondition& c) {
  return json{{"name", c.name},
              {"holds", c.holds},
              {"max_violation", c.max_violation},
              {"witness", c.witness}};
}

int run_submodular(const std::string& instance_file, const CommonOpts& opts) {
  const subdet::SetFunction f = subdet::load_instance(instance_file);
  const int n = f.ground_n();
  auto grid = subdet::parse_grid(opts.grid);
  std::vector<int> ks, ps;
  if (grid.count("k")) ks = grid["k"];
  if (grid.count("p")) ps = grid["p"];
  if (ks.empty())
    for (int k = 1; k <= n; ++k) ks.push_back(k);
  if (ps.empty())
    for (int p = 1; p <= n; ++p) ps.push_back(p);

  const double lhs = f(subdet::IndexSet::full(n));
  json entries = json::array();
  std::ostringstream text;
  text << "instance " << f.label() << " (n=" << n << "): f([1:n]) = "
       << f4(lhs) << "\n";
  bool ok = true;
  for (int p : ps) {
    for (int k : ks) {
      if (k < 1 || k > p || p > n) continue;
      const subdet::StrengthenedHan sh =
          subdet::strengthened_han_bound(f, k, p, opts.tol);
      const subdet::Thm1EqualityReport eq =
          subdet::check_thm1_equality(f, k, p, opts.cap, opts.tol);
      ok = ok && sh.lhs_vs_inner.holds && sh.inner_vs_outer.holds;
      entries.push_back(
          json{{"k", k},
               {"p", p},
               {"lhs", sh.lhs},
               {"inner", sh.inner},
               {"outer", sh.outer},
               {"chain_holds", sh.lhs_vs_inner.holds && sh.inner_vs_outer.holds},
               {"inner_equality", sh.lhs_vs_inner.equality},
               {"outer_equality", sh.inner_vs_outer.equality},
               {"equality_conditions",
                json{{"contraction_modular",
                      condition_json(eq.contraction_modular)},
                     {"i", condition_json(eq.cond_i)},
                     {"ii", condition_json(eq.cond_ii)},
                     {"iii", condition_json(eq.cond_iii)}}}});
      text << "k=" << k << " p=" << p << ": f([1:n]) " << f4(sh.lhs)
           << " <= inner " << f4(sh.inner) << " <= outer " << f4(sh.outer)
           << (sh.lhs_vs_inner.holds && sh.inner_vs_outer.holds ? ""
                                                                 : "  VIOLATED")
           << (sh.lhs_vs_inner.equality ? " [inner tight]" : "")
           << (sh.inner_vs_outer.equality ? " [outer tight]" : "") << "\n";
    }
  }

  json partition_section;
  if (!opts.partition.empty()) {
    const subdet::Partition part = subdet::parse_partition(opts.partition, n);
    const subdet::InequalityVerdict pb =
        subdet::partition_bound(f, part, opts.tol);
    ok = ok && pb.holds;
    json pentries = json::array();
    text << "partition " << part.to_string() << ": sum of blocks = "
         << f4(pb.bound) << (pb.holds ? "" : "  VIOLATED") << "\n";
    for (int p : ps) {
      if (p < 1 || p > n) continue;
      const subdet::StrengthenedPartition sp =
          subdet::strengthened_partition_bound(f, p, part, opts.tol);
      const subdet::Thm3EqualityReport eq =
          subdet::check_thm3_equality(f, p, part, opts.cap, opts.tol);
      ok = ok && sp.lhs_vs_inner.holds && sp.inner_vs_outer.holds;
      pentries.push_back(
          json{{"p", p},
               {"inner", sp.inner},
               {"outer", sp.outer},
               {"chain_holds",
                sp.lhs_vs_inner.holds && sp.inner_vs_outer.holds},
               {"inner_equality", sp.lhs_vs_inner.equality},
               {"outer_equality", sp.inner_vs_outer.equality},
               {"equality_conditions",
                json{{"conditional_modular",
                      condition_json(eq.conditional_modular)},
                     {"i", condition_json(eq.cond_i)},
                     {"ii", condition_json(eq.cond_ii)}}}});
      text << "p=" << p << ": f([1:n]) " << f4(sp.lhs) << " <= inner "
           << f4(sp.inner) << " <= sum-of-blocks " << f4(sp.outer)
           << (sp.lhs_vs_inner.holds && sp.inner_vs_outer.holds ? ""
                                                                 : "  VIOLATED")
           << "\n";
    }
    partition_section = json{{"partition", part.to_string()},
                             {"sum_of_blocks", pb.bound},
                             {"holds", pb.holds},
                             {"entries", pentries}};
  }

  if (opts.format == "json") {
    json j{{"instance", f.label()},
           {"n", n},
           {"lhs", lhs},
           {"entries", entries}};
    if (!partition_section.is_null()) j["partition"] = partition_section;
    emit(opts, j.dump(2) + "\n");
  } else {
    emit(opts, text.str());
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const std::string& suite, int trials, int max_n,
               const CommonOpts& opts) {
  json out = json::object();
  bool passed = true;
  if (suite == "submodular" || suite == "all") {
    const subdet::SuiteResult r =
        subdet::run_submodular_suite(trials, max_n, opts.seed);
    out["submodular"] = subdet::to_json(r);
    passed = passed && r.passed();
  }
  if (suite == "determinant" || suite == "all") {
    const subdet::SuiteResult r =
        subdet::run_determinant_suite(trials, max_n, opts.seed);
    out["determinant"] = subdet::to_json(r);
    passed = passed && r.passed();
  }
  if (out.empty())
    throw subdet::InvalidParams("suite must be submodular, determinant, or all");
  if (opts.format == "json") {
    emit(opts, out.dump(2) + "\n");
  } else {
    std::ostringstream text;
    for (const auto& [name, r] : out.items()) {
      text << name << " suite: " << (r["passed"].get<bool>() ? "PASS" : "FAIL")
           << " (" << r["trials"].get<int>() << " trials, "
           << r["checks"].get<long long>() << " checks, worst negative slack "
           << r["max_negative_slack"].get<double>() << ")\n";
      for (const auto& fo : r["failures"])
        text << "  FAIL " << fo["spec"].get<std::string>() << " "
             << fo["params"].get<std::string>() << " slack "
             << fo["slack"].get<double>() << "\n";
    }
    emit(opts, text.str());
  }
  return passed ? 0 : 1;
}

// ---------------------------------------------------------------------------
// paper-examples
// ---------------------------------------------------------------------------

int run_paper_examples(const CommonOpts& opts) {
  const subdet::SymPDMatrix a(
      4, {2, 1, 1, 1, 1, 3, 1, 1, 1, 1, 4, 1, 1, 1, 1, 5});
  struct Check {
    std::string name;
    double got;
    double want;
    double tol;
  };
  std::vector<Check> checks;
  checks.push_back(
      {"|A|", std::exp(subdet::log_det(a)), 74.0, 1e-9});
  checks.push_back(
      {"szasz(k=2)", std::exp(subdet::szasz_bound(a, 2)), 97.32, 0.01});
  checks.push_back(
      {"ky-fan(p=3)", std::exp(subdet::kyfan_bound(a, 3)), 95.76, 0.01});
  const subdet::StrongSzasz ss = subdet::strong_szasz_bound(a, 2, 3);
  checks.push_back({"strong-szasz(k=2,p=3)", std::exp(ss.ss1), 82.58, 0.01});
  const subdet::EigenProductBound e1 = subdet::eigen_product_bound(a, 3, 3, 0, 1);
  checks.push_back({"eigen-bound(h=3,p=3,l=0,k=1)", std::exp(e1.log_bound),
                    19.152, 0.005});
  const subdet::EigenProductBound e2 = subdet::eigen_product_bound(a, 3, 3, 0, 2);
  checks.push_back({"eigen-bound(h=3,p=3,l=0,k=2)", std::exp(e2.log_bound),
                    16.516, 0.005});
  checks.push_back(
      {"lambda1*lambda2*lambda3", std::exp(e2.log_actual), 10.872, 0.005});
  const subdet::EigenSpectrum spec = subdet::eigenvalues_sorted(a);
  checks.push_back({"lambda1", spec.values[0], 1.296, 0.001});
  checks.push_back({"lambda2", spec.values[1], 2.392, 0.001});
  checks.push_back({"lambda3", spec.values[2], 3.507, 0.001});
  const subdet::Partition part = subdet::parse_partition("1,3|2,4", 4);
  const subdet::StrongFischer sf = subdet::strong_fischer_bound(a, 2, part);
  checks.push_back({"strong-fischer(p=2,P=1,3|2,4)", std::exp(sf.sf1), 81.58,
                    0.01});
  // The reference text quotes 95 = 5*19 for this partition, but 5 and 19 are
  // the minors of {1,2} and {3,4}; the stated partition {1,3},{2,4} has
  // minors 7 and 14, so the plain Fischer product is 98.
  checks.push_back({"fischer(P=1,3|2,4)", std::exp(sf.sf2), 98.0, 0.01});

  bool ok = true;
  std::ostringstream text;
  json entries = json::array();
  for (const Check& c : checks) {
    const bool pass = std::abs(c.got - c.want) <= c.tol;
    ok = ok && pass;
    char line[160];
    std::snprintf(line, sizeof(line), "[%s] %-32s computed %12.6f  reference %10.4f  (tol %.4g)",
                  pass ? "PASS" : "FAIL", c.name.c_str(), c.got, c.want, c.tol);
    text << line << "\n";
    entries.push_back(json{{"name", c.name},
                           {"computed", c.got},
                           {"reference", c.want},
                           {"tol", c.tol},
                           {"pass", pass}});
  }
  text << "note: fischer on the stated partition {1,3},{2,4} is "
       << f4(std::exp(sf.sf2))
       << " (= 7 x 14); the often-quoted 95 (= 5 x 19) belongs to partition "
          "{1,2},{3,4}.\n";
  if (opts.format == "json") {
    json j{{"entries", entries},
           {"fischer_partition_note",
            "fischer({1,3},{2,4}) = 98 = 7*14; 95 = 5*19 matches {1,2},{3,4}"},
           {"all_pass", ok}};
    emit(opts, j.dump(2) + "\n");
  } else {
    emit(opts, text.str());
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "subdet: strengthened Han/Szasz/Fischer/Ky Fan inequality toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string matrix_file, instance_file;
  std::string suite = "all";
  int trials = 100;
  int max_n = 6;

  auto add_common = [&](CLI::App* cmd, bool with_grid = true) {
    cmd->add_option("--format", opts.format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", opts.output, "Write the report to a file");
    cmd->add_option("--tol", opts.tol, "Equality/violation tolerance");
    if (with_grid)
      cmd->add_option("--grid", opts.grid,
                      "Parameter grid, e.g. \"k=1,2;p=2,3\"");
  };

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Determinantal bound report for a matrix file");
  bounds->add_option("matrix", matrix_file, "CSV or JSON matrix file")
      ->required();
  add_common(bounds);
  bounds->add_option("--partition", opts.partition,
                     "Partition literal, e.g. \"1,3|2,4\"");

  CLI::App* eigen = app.add_subcommand(
      "eigen", "Eigenvalue-product bounds for a matrix file");
  eigen->add_option("matrix", matrix_file, "CSV or JSON matrix file")
      ->required();
  add_common(eigen);

  CLI::App* submod = app.add_subcommand(
      "submodular", "Han/partition bound chains for an instance file");
  submod->add_option("instance", instance_file, "Instance JSON file")
      ->required();
  add_common(submod);
  submod->add_option("--partition", opts.partition,
                     "Partition literal, e.g. \"1,3|2,4\"");
  submod->add_option("--cap", opts.cap,
                     "Ground-set cap for exhaustive equality checks");

  CLI::App* verify = app.add_subcommand(
      "verify", "Randomized theorem-backed property suites");
  verify->add_option("--suite", suite, "submodular, determinant, or all")
      ->check(CLI::IsMember({"submodular", "determinant", "all"}));
  verify->add_option("--trials", trials, "Number of random instances");
  verify->add_option("--max-n", max_n, "Largest ground-set size / dimension");
  verify->add_option("--seed", opts.seed, "Suite seed");
  add_common(verify, false);

  CLI::App* paper = app.add_subcommand(
      "paper-examples",
      "Check the built-in worked examples against reference values");
  add_common(paper, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (bounds->parsed()) return guarded([&] { return run_bounds(matrix_file, opts); });
  if (eigen->parsed()) return guarded([&] { return run_eigen(matrix_file, opts); });
  if (submod->parsed())
    return guarded([&] { return run_submodular(instance_file, opts); });
  if (verify->parsed())
    return guarded([&] { return run_verify(suite, trials, max_n, opts); });
  if (paper->parsed()) return guarded([&] { return run_paper_examples(opts); });
  return 2;
}
