#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "dyb/error.hpp"

namespace dyb::cli {

namespace {

Mode mode_of(const JobSpec& job) { return job.quantum ? Mode::Quantum : Mode::Classical; }

std::vector<int> zero_based(std::vector<int> x) {
  for (int& i : x) --i;
  return x;
}

std::vector<std::string> module_specs(const JobSpec& job, std::size_t want) {
  std::vector<std::string> specs = job.modules;
  if (specs.empty()) specs.assign(want, "V");
  require(specs.size() == want, ErrorKind::Precondition,
          "expected " + std::to_string(want) + " modules, got " + std::to_string(specs.size()));
  return specs;
}

std::vector<WeightModule> modules(const RootDatum& d, Mode mode, const std::vector<std::string>& specs) {
  std::vector<WeightModule> out;
  for (auto& s : specs) out.push_back(parse_module(d, mode, s));
  return out;
}

FusionMethod method_of(const std::string& m) {
  if (m == "exchange") return FusionMethod::Exchange;
  if (m == "abrr") return FusionMethod::ABRR;
  fail(ErrorKind::Parse, "unknown method " + m);
}

std::string gl_name(int n) { return "gl" + std::to_string(n); }

bool is_quantum_catalog(const std::string& c) {
  return c == "R-X" || c == "R-eps-X" || c == "gl-closed-form" || c == "exchange" || c == "input";
}

/// Dynamical R-matrix selected by the job, with its Hecke parameter and JSON encoding.
struct QuantumSolution {
  DynOp R;
  Scalar hecke_q;
  /// R times this scalar is Hecke with parameter hecke_q.
  Scalar hecke_scale = Scalar(1);
  std::string algebra;
  std::vector<std::string> factors;
};

QuantumSolution quantum_solution(const JobSpec& job) {
  const std::string& c = job.catalog;
  if (c == "R-X") return {quantum_R_X(job.n, job.X), Scalar(1), Scalar(1), gl_name(job.n), {"V", "V"}};
  if (c == "R-eps-X") return {quantum_R_eps_X(job.n, job.X), qpow(1), Scalar(1), gl_name(job.n), {"V", "V"}};
  if (c == "gl-closed-form") {
    DynOp r = gl_closed_forms(job.n, mode_of(job)).R;
    // R/q is Hecke with parameter q^{-2}
    if (job.quantum) return {r, qpow(-2), qpow(-1), gl_name(job.n), {"V", "V"}};
    return {r, Scalar(1), Scalar(1), gl_name(job.n), {"V", "V"}};
  }
  if (c == "exchange") {
    RootDatum d = RootDatum::from_name(job.algebra);
    auto specs = module_specs(job, 2);
    auto mods = modules(d, mode_of(job), specs);
    DynOp r = exchange_matrix(mods[0], mods[1], method_of(job.method == "both" ? "exchange" : job.method));
    if (job.quantum) return {r, qpow(-2), qpow(-1), job.algebra, specs};
    return {r, Scalar(1), Scalar(1), job.algebra, specs};
  }
  if (c == "input") {
    std::ifstream in(job.input);
    require(in.good(), ErrorKind::Precondition, "cannot open " + job.input);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      fail(ErrorKind::Parse, std::string("input JSON: ") + e.what());
    }
    const json& op = j.contains("result") && j["result"].contains("solution") ? j["result"]["solution"] : j;
    DynOp r = decode_dynop(op);
    std::vector<std::string> factors = op.at("factors").get<std::vector<std::string>>();
    Scalar q = r.mode == Mode::Quantum ? qpow(1) : Scalar(1);
    return {r, q, Scalar(1), op.at("algebra").get<std::string>(), factors};
  }
  fail(ErrorKind::Parse, "not an operator catalog: " + c);
}

ClassicalRMatrix classical_solution(const JobSpec& job) {
  RootDatum d = RootDatum::from_name(job.algebra);
  const std::string& c = job.catalog;
  Scalar eps = Scalar::parse(job.eps);
  if (c == "basic-rational") return basic_rational_r(d);
  if (c == "basic-trig") return basic_trig_r(d, eps);
  if (c == "r-eps-X") return r_eps_X(d, zero_based(job.X), eps);
  if (c == "r-l") {
    std::vector<std::pair<int, int>> roots;
    for (auto& r : job.roots) {
      require(r.size() == 2 && r[0] < r[1], ErrorKind::Parse, "roots are pairs a < b");
      roots.emplace_back(r[0] - 1, r[1] - 1);
    }
    return r_l(d, roots);
  }
  if (c == "appA") {
    BDTriple t{zero_based(job.gamma1), zero_based(job.gamma2), {}};
    for (auto& v : job.l_basis) t.l_basis.push_back(parse_rationals(v));
    check_triple(d, t);
    return triple_r(d, t);
  }
  fail(ErrorKind::Parse, "unknown catalog " + c);
}

json encode_classical(const ClassicalRMatrix& r) {
  json out = encode(r.coeffs, r.n);
  out["family"] = r.family;
  out["algebra"] = r.datum.name();
  out["coupling"] = r.coupling.str();
  return out;
}

Gauge gauge_of(const JobSpec& job) {
  Gauge g;
  g.kind = job.gauge_kind;
  require(g.kind >= 1 && g.kind <= 3, ErrorKind::Parse, "gauge kind is 1, 2 or 3");
  for (auto& row : job.gauge_form) {
    std::vector<Scalar> r;
    std::stringstream ss(row);
    std::string tok;
    while (std::getline(ss, tok, ',')) r.push_back(Scalar::parse(tok));
    g.form.push_back(r);
  }
  for (auto& x : job.gauge_nu) g.nu.push_back(parse_rationals(x).at(0));
  for (auto& x : job.gauge_scale) g.scale.push_back(Scalar::parse(x));
  g.sigma = zero_based(job.gauge_sigma);
  return g;
}

json report_list(const std::vector<ResidualReport>& reps, bool& pass) {
  json out = json::array();
  for (auto& r : reps) {
    out.push_back(encode(r));
    pass = pass && r.ok();
  }
  return out;
}

RunResult finish(const JobSpec& job, json result, bool pass) {
  RunResult r;
  r.status = pass ? kPass : kCheckFailed;
  r.artifact = {{"schema", kSchema}, {"job", job}, {"result", std::move(result)}, {"pass", pass}};
  return r;
}

RunResult run_fusion(const JobSpec& job) {
  RootDatum d = RootDatum::from_name(job.algebra);
  auto specs = module_specs(job, 2);
  auto mods = modules(d, mode_of(job), specs);
  std::vector<std::string> methods =
      job.method == "both" ? std::vector<std::string>{"exchange", "abrr"} : std::vector<std::string>{job.method};
  json result = json::object();
  std::vector<DynOp> js, rs;
  for (auto& m : methods) {
    DynOp j = fusion(mods[0], mods[1], method_of(m));
    DynOp r = exchange_matrix(mods[0], mods[1], method_of(m));
    result[m] = {{"J", encode(j, d.name(), specs)}, {"R", encode(r, d.name(), specs)}};
    js.push_back(j);
    rs.push_back(r);
  }
  bool pass = true;
  if (methods.size() == 2) {
    pass = js[0].m == js[1].m && rs[0].m == rs[1].m;
    result["agree"] = pass;
  }
  return finish(job, result, pass);
}

RunResult run_verify(const JobSpec& job) {
  const std::string& chk = job.check;
  json result = json::object();
  bool pass = true;
  if (chk == "cocycle") {
    RootDatum d = RootDatum::from_name(job.algebra);
    auto mods = modules(d, mode_of(job), module_specs(job, 3));
    std::vector<ResidualReport> reps;
    for (auto& m : job.method == "both" ? std::vector<std::string>{"exchange", "abrr"}
                                        : std::vector<std::string>{job.method})
      reps.push_back(cocycle_residual(mods[0], mods[1], mods[2], method_of(m)));
    result["reports"] = report_list(reps, pass);
    return finish(job, result, pass);
  }
  require(!job.catalog.empty(), ErrorKind::Parse, "verify needs --catalog");
  if (is_quantum_catalog(job.catalog)) {
    QuantumSolution s = quantum_solution(job);
    DynOp scaled = s.R;
    scaled.m = s.R.m * s.hecke_scale;
    std::vector<ResidualReport> reps;
    if (chk == "qdybe") {
      reps.push_back(qdybe_residual(s.R));
    } else if (chk == "hecke") {
      reps.push_back(hecke_check(scaled, s.hecke_q));
    } else if (chk == "unitarity") {
      reps.push_back(inverse_unitarity(s.R));
    } else if (chk == "hecke-rep") {
      auto rep = dynamical_hecke_rep(scaled, job.p, s.hecke_q);
      reps = rep.relations;
    } else if (chk == "gauge") {
      DynOp g = gauge_quantum(s.R, gauge_of(job));
      reps.push_back(qdybe_residual(g));
      result["gauged"] = encode(g, s.algebra, s.factors);
    } else if (chk == "negative") {
      auto rep = qdybe_residual(perturb(s.R, static_cast<unsigned>(job.seed)));
      result["reports"] = json::array({encode(rep)});
      pass = !rep.ok() && !rep.witness.is_zero();
      result["caught"] = pass;
      return finish(job, result, pass);
    } else {
      fail(ErrorKind::Parse, "check " + chk + " does not apply to operator catalogs");
    }
    result["reports"] = report_list(reps, pass);
    return finish(job, result, pass);
  }
  ClassicalRMatrix r = classical_solution(job);
  std::vector<ResidualReport> reps;
  if (chk == "cdybe") {
    reps.push_back(cdybe_residual(r));
  } else if (chk == "unitarity") {
    reps.push_back(unitarity_check(r));
  } else if (chk == "gauge") {
    ClassicalRMatrix g = gauge_classical(r, gauge_of(job));
    reps.push_back(cdybe_residual(g));
    result["gauged"] = encode_classical(g);
  } else if (chk == "negative") {
    auto rep = cdybe_residual(perturb(r, static_cast<unsigned>(job.seed)));
    result["reports"] = json::array({encode(rep)});
    pass = !rep.ok() && !rep.witness.is_zero();
    result["caught"] = pass;
    return finish(job, result, pass);
  } else {
    fail(ErrorKind::Parse, "check " + chk + " does not apply to classical r-matrices");
  }
  result["reports"] = report_list(reps, pass);
  return finish(job, result, pass);
}

Matrix lowering_raising_over_roots(const RootDatum& d, const WeightModule& v) {
  Matrix j(v.dim() * v.dim(), v.dim() * v.dim());
  for (auto& a : d.positive_roots())
    j += kron(v.gl_unit(a.b, a.a), v.gl_unit(a.a, a.b)) * d.lambda_pair(a.w).inverse();
  return j * Scalar(-1);
}

RunResult run_limit(const JobSpec& job) {
  require(job.order >= 1, ErrorKind::Precondition, "limit order must be at least 1");
  std::string alg = job.catalog == "gl-closed-form" ? gl_name(job.n) : job.algebra;
  RootDatum d = RootDatum::from_name(alg);
  WeightModule vc = WeightModule::vector(d, Mode::Classical);
  json result = json::object();
  result["algebra"] = d.name();
  std::vector<std::string> specs{"V", "V"};
  bool pass = true;
  if (job.quantum) {
    WeightModule vq = WeightModule::vector(d, Mode::Quantum);
    DynOp r = job.catalog == "gl-closed-form" ? gl_closed_forms(d.n(), Mode::Quantum).R
                                              : exchange_matrix(vq, vq, method_of(job.method));
    if (d.flavor() == Flavor::SL) r = sl2_normalized(r);
    auto lim = classical_limit(r, job.order);
    Matrix want = basic_trig_r(d, Scalar::var(vars::e())).evaluate(vc, vc) * Scalar(-1);
    bool c0 = lim[0].is_identity(), c1 = lim[1] == want;
    result["constant_term_identity"] = c0;
    result["linear_term_matches_trigonometric_r"] = c1;
    pass = c0 && c1;
    json terms = json::array();
    for (auto& m : lim) terms.push_back(encode(m));
    result["terms"] = terms;
  } else {
    DynOp r = job.catalog == "gl-closed-form" ? gl_closed_forms(d.n(), Mode::Classical).R
                                              : exchange_matrix(vc, vc, method_of(job.method));
    auto lim = classical_limit(r, job.order);
    bool c0 = lim[0].is_identity();
    bool c1 = lim[1] == basic_rational_r(d).evaluate(vc, vc) * Scalar(-1);
    auto jl = classical_limit(abrr_fusion(vc, vc), 1);
    bool cj = jl[0].is_identity() && jl[1] == lowering_raising_over_roots(d, vc);
    result["constant_term_identity"] = c0;
    result["linear_term_matches_rational_r"] = c1;
    result["fusion_linear_term_matches_j"] = cj;
    pass = c0 && c1 && cj;
    json terms = json::array();
    for (auto& m : lim) terms.push_back(encode(m));
    result["terms"] = terms;
  }
  return finish(job, result, pass);
}

RunResult run_catalog(const JobSpec& job) {
  json result = json::object();
  if (job.catalog.empty()) {
    result["names"] = catalog_names();
    return finish(job, result, true);
  }
  if (is_quantum_catalog(job.catalog)) {
    QuantumSolution s = quantum_solution(job);
    result["solution"] = encode(s.R, s.algebra, s.factors);
    if (job.catalog == "gl-closed-form") {
      ClosedForms cf = gl_closed_forms(job.n, mode_of(job));
      result["fusion"] = encode(cf.J, s.algebra, s.factors);
    }
  } else {
    result["solution"] = encode_classical(classical_solution(job));
  }
  return finish(job, result, true);
}

RunResult run_macdonald(const JobSpec& job) {
  const std::string& chk = job.check;
  json result = json::object();
  bool pass = true;
  Scalar t = Scalar::var(vars::tpar());
  if (chk == "operator") {
    result["operator"] = encode(macdonald_operator(MacdonaldFrame::polynomial(job.n), job.n, job.r, t));
  } else if (chk == "polynomial") {
    require(static_cast<int>(job.partition.size()) <= job.n, ErrorKind::Precondition, "partition longer than n");
    std::vector<int> mu = job.partition;
    mu.resize(job.n, 0);
    MacdonaldFrame f = MacdonaldFrame::polynomial(job.n);
    Scalar p = macdonald_polynomial(job.n, mu, t);
    json eig = json::array();
    for (int r = 1; r <= job.n; ++r) {
      Scalar e = macdonald_eigenvalue(f, mu, r, t);
      bool ok = macdonald_operator(f, job.n, r, t).apply(p) == e * p;
      eig.push_back({{"r", r}, {"eigenvalue", e.str()}, {"holds", ok}});
      pass = pass && ok;
    }
    bool schur = substitute(p, {{vars::tpar(), Scalar::var(vars::q())}}) == schur_polynomial(job.n, mu);
    result["polynomial"] = p.str();
    result["eigen_equations"] = eig;
    result["schur_at_t_equals_q"] = schur;
    pass = pass && schur;
  } else if (chk == "commute") {
    MacdonaldFrame f = MacdonaldFrame::polynomial(job.n);
    auto monos = laurent_monomials(job.n, job.degree);
    json pairs = json::array();
    for (int r = 1; r <= job.n; ++r)
      for (int s = r + 1; s <= job.n; ++s) {
        DiffOp a = macdonald_operator(f, job.n, r, t), b = macdonald_operator(f, job.n, s, t);
        bool op_ok = (a * b - b * a).is_zero();
        bool mono_ok = true;
        for (auto& x : monos) mono_ok = mono_ok && a.apply(b.apply(x)) == b.apply(a.apply(x));
        pairs.push_back({{"r", r}, {"s", s}, {"operator_commutator_zero", op_ok}, {"monomials_checked", monos.size()},
                         {"monomials_ok", mono_ok}});
        pass = pass && op_ok && mono_ok;
      }
    result["pairs"] = pairs;
  } else if (chk == "corollary91") {
    auto c = conjugation_check(job.m);
    result["transfer"] = encode(c.lhs);
    result["conjugated_macdonald"] = encode(c.rhs);
    result["report"] = encode(c.report);
    pass = c.report.ok();
  } else if (chk == "trace-residual") {
    result["reports"] = report_list({mr_residual(job.order, job.w_dim), dual_mr_residual(job.order, job.w_dim)}, pass);
  } else if (chk == "symmetry") {
    result["reports"] = report_list({symmetry_check(job.order)}, pass);
  } else if (chk == "transfer") {
    RootDatum d = RootDatum::sl(2);
    auto specs = module_specs(job, 3);
    auto mods = modules(d, mode_of(job), specs);
    DiffOp dv = transfer_diffop(mods[0], mods[1]), dw = transfer_diffop(mods[0], mods[2]);
    DiffOp dvw = transfer_diffop(mods[0], tensor(mods[1], mods[2]));
    bool a = dvw == dv * dw, b = dvw == dw * dv;
    result["D_V"] = encode(dv);
    result["D_W"] = encode(dw);
    result["D_VW"] = encode(dvw);
    result["product_law"] = a;
    result["commute"] = b;
    pass = a && b;
  } else {
    fail(ErrorKind::Parse, "unknown macdonald check " + chk);
  }
  return finish(job, result, pass);
}

RunResult run_acceptance_job(const JobSpec& job) {
  auto results = run_acceptance(job.criteria);
  json list = json::array();
  bool pass = true;
  for (auto& r : results) {
    list.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    pass = pass && r.pass;
  }
  return finish(job, {{"criteria", list}}, pass);
}

}  // namespace

RunResult run(const JobSpec& job) {
  const std::string& s = job.subcommand;
  if (s == "fusion") return run_fusion(job);
  if (s == "verify") return run_verify(job);
  if (s == "limit") return run_limit(job);
  if (s == "catalog") return run_catalog(job);
  if (s == "macdonald") return run_macdonald(job);
  if (s == "acceptance") return run_acceptance_job(job);
  fail(ErrorKind::Parse, "unknown subcommand '" + s + "'");
}

int classify(const std::exception& e) {
  if (auto* d = dynamic_cast<const Error*>(&e)) return d->kind() == ErrorKind::Parse ? kParseError : kPrecondition;
  if (dynamic_cast<const json::exception*>(&e)) return kParseError;
  return kPrecondition;
}

}  // namespace dyb::cli
