#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "cli.hpp"
#include "dyb/error.hpp"

using namespace dyb;
using namespace dyb::cli;

namespace {

int exit_code(const std::string& args) {
  std::string cmd = std::string(DYB_BINARY) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

JobSpec job(std::string sub, std::string check = "") {
  JobSpec j;
  j.subcommand = std::move(sub);
  j.check = std::move(check);
  return j;
}

}  // namespace

TEST(JobSpec, RoundTripsThroughJson) {
  JobSpec j = job("verify", "gauge");
  j.algebra = "gl3";
  j.quantum = true;
  j.catalog = "appA";
  j.X = {1, 3};
  j.roots = {{1, 2}, {2, 3}};
  j.l_basis = {"1,1,1", "1,0,-1"};
  j.gauge_form = {"0,l3", "-l3,0"};
  j.gauge_nu = {"1/2", "-3"};
  j.partition = {2, 1};
  j.criteria = {4, 5};
  j.output = "out.json";
  json enc = j;
  EXPECT_EQ(enc.get<JobSpec>(), j);
  EXPECT_EQ(json::parse(enc.dump()).get<JobSpec>(), j);
  // missing fields take their defaults
  EXPECT_EQ(json::parse(R"({"subcommand": "fusion"})").get<JobSpec>(), job("fusion"));
}

TEST(Artifacts, SchemaAndDeterminism) {
  JobSpec j = job("verify", "qdybe");
  j.catalog = "R-eps-X";
  j.n = 3;
  j.X = {1, 2};
  RunResult a = run(j), b = run(j);
  EXPECT_EQ(a.status, kPass);
  EXPECT_EQ(a.artifact.dump(), b.artifact.dump());
  EXPECT_EQ(a.artifact["schema"], kSchema);
  EXPECT_EQ(a.artifact["job"].get<JobSpec>(), j);
  EXPECT_TRUE(a.artifact["pass"].get<bool>());
  EXPECT_EQ(a.artifact["result"]["reports"][0]["equation"].get<std::string>().empty(), false);
}

TEST(Artifacts, FusionBothPipelinesMatchTheExample) {
  JobSpec j = job("fusion");
  j.method = "both";
  RunResult r = run(j);
  EXPECT_EQ(r.status, kPass);
  for (const char* m : {"exchange", "abrr"}) {
    const json& jm = r.artifact["result"][m]["J"];
    EXPECT_EQ(jm["entries"]["2,1"], "-1/(l1+1)");
    EXPECT_EQ(jm["entries"].size(), 5u);
    const json& rm = r.artifact["result"][m]["R"];
    EXPECT_EQ(rm["entries"]["1,2"], "-1/(l1+1)");
    EXPECT_EQ(rm["entries"]["2,1"], "1/(l1+1)");
    EXPECT_EQ(rm["entries"]["2,2"], Scalar::parse("1-1/(l1+1)^2").str());
    EXPECT_EQ(rm["basis"][1], "(1)|(-1)");
  }
}

TEST(Artifacts, OperatorRoundTrip) {
  for (Mode m : {Mode::Classical, Mode::Quantum}) {
    RootDatum d = RootDatum::sl(2);
    DynOp r = exchange_matrix(sym_power(d, m, 2), WeightModule::vector(d, m), FusionMethod::Exchange);
    json enc = encode(r, "sl2", {"S2", "V"});
    DynOp back = decode_dynop(json::parse(enc.dump()));
    EXPECT_EQ(back.m, r.m);
    EXPECT_EQ(back.mode, m);
    EXPECT_EQ(back.dims(), r.dims());
  }
  json bad = encode(quantum_R_X(2, {1}), "gl2", {"V", "V"});
  bad["factors"] = {"V"};
  EXPECT_THROW(decode_dynop(bad), Error);
}

TEST(Artifacts, DiffOpEncoding) {
  JobSpec j = job("macdonald", "operator");
  j.n = 2;
  RunResult r = run(j);
  const json& terms = r.artifact["result"]["operator"]["terms"];
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0]["shift"].size(), 2u);
  EXPECT_TRUE(terms[0]["coefficient"].is_string());
}

TEST(Modules, SpecParser) {
  RootDatum d = RootDatum::gl(3);
  EXPECT_EQ(parse_module(d, Mode::Classical, "V").dim(), 3);
  EXPECT_EQ(parse_module(d, Mode::Classical, "S2").dim(), 6);
  EXPECT_EQ(parse_module(d, Mode::Quantum, "L2").dim(), 3);
  EXPECT_EQ(parse_module(d, Mode::Classical, "VxV*").dim(), 9);
  EXPECT_EQ(parse_module(d, Mode::Classical, "1").dim(), 1);
  EXPECT_THROW(parse_module(d, Mode::Classical, "Q"), Error);
  EXPECT_THROW(parse_module(d, Mode::Classical, "S0"), Error);
  EXPECT_EQ(parse_rationals("1,-1/2,0"), (std::vector<mpq_class>{1, mpq_class(-1, 2), 0}));
}

TEST(Workers, ParallelForCoversEveryIndex) {
  setenv("DYB_WORKERS", "3", 1);
  EXPECT_EQ(worker_count(), 3);
  std::vector<int> hits(50);
  parallel_for(50, [&](int i) { hits[i] += i + 1; });
  for (int i = 0; i < 50; ++i) EXPECT_EQ(hits[i], i + 1);
  EXPECT_THROW(parallel_for(8, [](int i) {
                 if (i == 5) fail(ErrorKind::Degenerate, "task 5");
               }),
               Error);
  unsetenv("DYB_WORKERS");
  EXPECT_GE(worker_count(), 1);
}

TEST(Acceptance, CriteriaAreNumbered) {
  EXPECT_EQ(criterion_count(), 14);
  auto res = run_acceptance({1, 2});
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].id, 1);
  EXPECT_TRUE(res[0].pass) << res[0].detail;
  EXPECT_TRUE(res[1].pass) << res[1].detail;
  EXPECT_THROW(run_acceptance({15}), Error);
}

TEST(ExitCodes, Binary) {
  EXPECT_EQ(exit_code("verify qdybe --catalog R-eps-X --n 3 --X 1,2"), kPass);
  EXPECT_EQ(exit_code("verify cdybe --catalog basic-trig --algebra sl3 --eps 2"), kPass);
  EXPECT_EQ(exit_code("verify negative --catalog R-X --n 2 --X 1,2 --seed 5"), kPass);
  EXPECT_EQ(exit_code("verify unitarity --catalog R-eps-X --n 2 --X 1,2"), kCheckFailed);
  EXPECT_EQ(exit_code("verify qdybe --catalog nonsense"), kParseError);
  EXPECT_EQ(exit_code("verify qdybe --catalog R-X --n"), kParseError);
  EXPECT_EQ(exit_code("frobnicate"), kParseError);
  EXPECT_EQ(exit_code("verify cdybe --catalog r-l --algebra gl3 --roots 1-2,2-3"), kPrecondition);
  EXPECT_EQ(exit_code("macdonald trace-residual --order 9"), kPrecondition);
  EXPECT_EQ(exit_code("verify gauge --catalog basic-rational --algebra gl2 --gauge-kind 1 "
                      "--gauge-form 0,l1 --gauge-form -l1,0"),
            kPass);
}

TEST(ExitCodes, JobFilesReproduceRuns) {
  std::string path = testing::TempDir() + "dyb_job.json";
  ASSERT_EQ(exit_code("--emit-job limit --algebra gl2 --quantum -o " + path), kPass);
  std::ifstream in(path);
  JobSpec j = json::parse(in).get<JobSpec>();
  EXPECT_EQ(j.subcommand, "limit");
  EXPECT_TRUE(j.quantum);
  EXPECT_TRUE(j.output.empty());
  EXPECT_EQ(exit_code("run " + path), kPass);
}
