#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "dyb/error.hpp"

using namespace dyb;
using namespace dyb::cli;

namespace {

// "1-2,2-3" -> {{1, 2}, {2, 3}}
std::vector<std::vector<int>> parse_root_pairs(const std::string& text) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto dash = tok.find('-');
    require(dash != std::string::npos, ErrorKind::Parse, "root pairs are written a-b: " + tok);
    try {
      out.push_back({std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1))});
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, "bad root pair " + tok);
    }
  }
  return out;
}

void add_options(CLI::App* app, JobSpec& job, std::string& roots) {
  app->add_option("--algebra", job.algebra, "Root datum: sl2, gl2, gl3, sl3, ...");
  app->add_option("--n", job.n, "Rank parameter of gl_n for the quantum and Macdonald families");
  app->add_flag("--quantum", job.quantum, "Quantum (U_q) instead of classical");
  app->add_option("--catalog", job.catalog, "Catalog solution name, or exchange / input");
  app->add_option("--X", job.X, "Subset X as 1-based labels")->delimiter(',');
  app->add_option("--eps", job.eps, "Coupling constant");
  app->add_option("--roots", roots, "Positive roots of l as 1-based pairs a-b, comma separated");
  app->add_option("--gamma1", job.gamma1, "Simple roots of Gamma_1 (1-based)")->delimiter(',');
  app->add_option("--gamma2", job.gamma2, "Images tau(alpha) in Gamma_2 (1-based)")->delimiter(',');
  app->add_option("--l", job.l_basis, "Basis vector of l as comma-separated rationals (repeatable)");
  app->add_option("--input", job.input, "Operator JSON written by the catalog subcommand");
  app->add_option("--modules", job.modules, "Module specs: V, 1, Sk, Lk, suffix * for duals, x for tensors")
      ->delimiter(',');
  app->add_option("--method", job.method, "exchange, abrr or both");
  app->add_option("--gauge-kind", job.gauge_kind, "Gauge kind 1, 2 or 3");
  app->add_option("--gauge-form", job.gauge_form, "Row of the 2-form as comma-separated scalars (repeatable)");
  app->add_option("--gauge-nu", job.gauge_nu, "Shift vector")->delimiter(',');
  app->add_option("--gauge-scale", job.gauge_scale, "Scale factors of the exponential symbols")->delimiter(',');
  app->add_option("--gauge-sigma", job.gauge_sigma, "Permutation as 1-based images")->delimiter(',');
  app->add_option("--order", job.order, "Series order");
  app->add_option("--depth", job.depth, "Verma truncation depth");
  app->add_option("--m", job.m, "Parameter m of the transfer identity");
  app->add_option("--r", job.r, "Macdonald operator index");
  app->add_option("--p", job.p, "Number of tensor factors of the Hecke representation");
  app->add_option("--w-dim", job.w_dim, "Dimension of W in the trace equations (2 or 3)");
  app->add_option("--seed", job.seed, "Perturbation seed");
  app->add_option("--degree", job.degree, "Laurent monomial degree bound");
  app->add_option("--partition", job.partition, "Partition, comma separated")->delimiter(',');
  app->add_option("--criterion", job.criteria, "Acceptance criteria to run (default all)")->delimiter(',');
  app->add_option("-o,--output", job.output, "Artifact path (default standard output)");
}

int emit(const JobSpec& job, const json& j) {
  std::string text = j.dump(2) + "\n";
  if (job.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(job.output);
  if (!out) {
    std::cerr << "cannot write " << job.output << "\n";
    return kPrecondition;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical Yang-Baxter toolkit: fusion and exchange matrices, catalog solutions, exact checks"};
  app.require_subcommand(1);
  JobSpec job;
  std::string roots, job_file;
  bool emit_job = false;
  app.add_flag("--emit-job", emit_job, "Print the job description instead of running it");

  auto* fus = app.add_subcommand("fusion", "Fusion and exchange matrices");
  auto* ver = app.add_subcommand("verify", "Exact residual checks");
  ver->add_option("check", job.check, "qdybe, cdybe, hecke, unitarity, cocycle, hecke-rep, gauge, negative")
      ->required();
  auto* lim = app.add_subcommand("limit", "Classical limits of exchange matrices");
  auto* cat = app.add_subcommand("catalog", "Dump a catalog solution (no name: list names)");
  auto* mac = app.add_subcommand("macdonald", "Difference operators and trace functions");
  mac->add_option("check", job.check,
                  "operator, polynomial, commute, corollary91, trace-residual, symmetry, transfer")
      ->required();
  auto* acc = app.add_subcommand("acceptance", "Run acceptance criteria");
  auto* runj = app.add_subcommand("run", "Run a job description file");
  runj->add_option("job", job_file, "Job JSON")->required();
  for (auto* sub : {fus, ver, lim, cat, mac, acc}) add_options(sub, job, roots);
  runj->add_option("-o,--output", job.output, "Artifact path (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    if (runj->parsed()) {
      std::ifstream in(job_file);
      require(in.good(), ErrorKind::Precondition, "cannot open " + job_file);
      std::string output = job.output;
      json j;
      in >> j;
      job = j.get<JobSpec>();
      if (!output.empty()) job.output = output;
    } else {
      for (auto* sub : app.get_subcommands()) job.subcommand = sub->get_name();
      if (!roots.empty()) job.roots = parse_root_pairs(roots);
    }
    if (emit_job) {
      JobSpec saved = job;
      saved.output.clear();
      return emit(job, json(saved));
    }
    RunResult r = run(job);
    if (job.subcommand == "acceptance")
      for (auto& c : r.artifact["result"]["criteria"])
        std::cerr << "criterion " << c["id"].get<int>() << ": " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
                  << c["detail"].get<std::string>() << "\n";
    int st = emit(job, r.artifact);
    return st ? st : r.status;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return classify(e);
  }
}
