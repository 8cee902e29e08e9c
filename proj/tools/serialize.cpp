#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "dyb/error.hpp"

namespace dyb::cli {

json encode(const Scalar& x) { return x.str(); }

json encode(const Matrix& m) {
  json entries = json::object();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) entries[std::to_string(i) + "," + std::to_string(j)] = m(i, j).str();
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json encode(const DynOp& op, const std::string& algebra, const std::vector<std::string>& factor_specs) {
  json basis = json::array();
  for (int i = 0; i < op.dim(); ++i) {
    auto d = op.digits(i);
    std::string label;
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k) label += "|";
      label += weight_str(op.factors[k].weight(d[k]));
    }
    basis.push_back(label);
  }
  json out = encode(op.m);
  out["algebra"] = algebra;
  out["quantum"] = op.mode == Mode::Quantum;
  out["factors"] = factor_specs;
  out["basis"] = basis;
  return out;
}

json encode(const DiffOp& d) {
  json frame = json::array();
  for (int v : d.frame().coord_vars) frame.push_back(vars::name(v));
  json terms = json::array();
  for (auto& [nu, c] : d.terms()) {
    json shift = json::array();
    for (auto& x : nu) shift.push_back(x.get_str());
    json coeff = d.dim() == 1 ? encode(c(0, 0)) : encode(c);
    terms.push_back({{"shift", shift}, {"coefficient", coeff}});
  }
  return {{"frame", frame}, {"dim", d.dim()}, {"terms", terms}};
}

json encode(const ResidualReport& r) {
  json out = {{"equation", r.equation}, {"operands", r.operands}, {"entries", r.entries},
              {"nonzero", r.nonzero},   {"max_degree", r.max_degree}, {"zero", r.zero}};
  if (!r.zero) {
    out["witness_index"] = r.witness_index;
    out["witness"] = r.witness.str();
  }
  return out;
}

json encode(const Tensor2& t, int n) {
  json terms = json::object();
  auto unit = [n](int p) { return "E" + std::to_string(p / n + 1) + std::to_string(p % n + 1); };
  for (auto& [key, c] : t)
    if (!c.is_zero()) terms[unit(key.first) + "(x)" + unit(key.second)] = c.str();
  return {{"n", n}, {"terms", terms}};
}

std::vector<mpq_class> parse_rationals(const std::string& csv) {
  std::vector<mpq_class> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto v = Scalar::parse(tok).constant_value();
    if (!v) fail(ErrorKind::Parse, "expected a rational number: " + tok);
    out.push_back(*v);
  }
  return out;
}

namespace {

WeightModule parse_factor(const RootDatum& d, Mode mode, std::string spec) {
  bool is_dual = !spec.empty() && spec.back() == '*';
  if (is_dual) spec.pop_back();
  WeightModule m = [&]() -> WeightModule {
    if (spec == "V") return WeightModule::vector(d, mode);
    if (spec == "1") return WeightModule::trivial(d, mode);
    if (spec.size() >= 2 && (spec[0] == 'S' || spec[0] == 'L')) {
      int k = 0;
      try {
        k = std::stoi(spec.substr(1));
      } catch (const std::exception&) {
        fail(ErrorKind::Parse, "bad module power: " + spec);
      }
      require(k >= 1, ErrorKind::Parse, "module power must be positive: " + spec);
      return spec[0] == 'S' ? sym_power(d, mode, k) : ext_power(d, mode, k);
    }
    fail(ErrorKind::Parse, "unknown module spec: " + spec);
  }();
  return is_dual ? dual(m) : m;
}

}  // namespace

WeightModule parse_module(const RootDatum& d, Mode mode, const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, 'x')) parts.push_back(tok);
  require(!parts.empty(), ErrorKind::Parse, "empty module spec");
  WeightModule m = parse_factor(d, mode, parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) m = tensor(m, parse_factor(d, mode, parts[i]));
  return m;
}

DynOp decode_dynop(const json& j) {
  try {
    RootDatum d = RootDatum::from_name(j.at("algebra").get<std::string>());
    Mode mode = j.at("quantum").get<bool>() ? Mode::Quantum : Mode::Classical;
    std::vector<WeightModule> mods;
    for (auto& spec : j.at("factors")) mods.push_back(parse_module(d, mode, spec.get<std::string>()));
    int dim = 1;
    for (auto& m : mods) dim *= m.dim();
    require(j.at("rows").get<int>() == dim && j.at("cols").get<int>() == dim, ErrorKind::ShapeMismatch,
            "operator size does not match its factors");
    Matrix m(dim, dim);
    for (auto& [key, val] : j.at("entries").items()) {
      auto comma = key.find(',');
      require(comma != std::string::npos, ErrorKind::Parse, "bad entry key " + key);
      int r = std::stoi(key.substr(0, comma)), c = std::stoi(key.substr(comma + 1));
      require(r >= 0 && r < dim && c >= 0 && c < dim, ErrorKind::ShapeMismatch, "entry outside the operator");
      m(r, c) = Scalar::parse(val.get<std::string>());
    }
    return DynOp{mods, mode, m};
  } catch (const json::exception& e) {
    fail(ErrorKind::Parse, std::string("operator JSON: ") + e.what());
  }
}

int worker_count() {
  if (const char* env = std::getenv("DYB_WORKERS")) {
    int k = std::atoi(env);
    if (k >= 1) return k;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& task) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex mu;
  std::exception_ptr first;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace dyb::cli
