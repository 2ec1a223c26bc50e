#include "focklab/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "focklab/carleson.hpp"
#include "focklab/errors.hpp"
#include "focklab/io.hpp"
#include "focklab/operators.hpp"
#include "focklab/spectral.hpp"
#include "focklab/verify.hpp"
#include "focklab/weight.hpp"

namespace focklab {

namespace {

using nlohmann::json;

SpaceParams parse_space(const json& j) {
  SpaceParams sp;
  if (!j.is_object()) throw ConfigError("space must be an object");
  if (j.contains("m")) sp.m = j.at("m").get<int>();
  if (j.contains("p")) sp.p = j.at("p").get<double>();
  if (j.contains("beta")) sp.beta = j.at("beta").get<double>();
  try {
    sp.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
  return sp;
}

PolarGrid parse_grid(const json& params, double default_radius) {
  double radius = default_radius;
  int nodes = 32, angles = 64;
  if (params.contains("grid")) {
    const json& g = params.at("grid");
    if (g.contains("radius")) radius = g.at("radius").get<double>();
    if (g.contains("nodes_per_unit")) nodes = g.at("nodes_per_unit").get<int>();
    if (g.contains("n_angles")) angles = g.at("n_angles").get<int>();
  }
  return PolarGrid(radius, nodes, angles);
}

OperatorKind parse_operator(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("operator needs a kind");
  std::string kind = j.at("kind").get<std::string>();
  Polynomial g;
  if (j.contains("g")) {
    FunctionSymbol f = parse_symbol(j.at("g").get<std::string>());
    if (!f.is_poly()) throw ConfigError("operator symbol must be polynomial");
    g = f.prefactor();
  }
  if (kind == "volterra") return OperatorKind::volterra(g);
  if (kind == "companion") return OperatorKind::companion(g);
  if (kind == "multiplier") return OperatorKind::multiplier(g);
  if (kind == "differentiation") return OperatorKind::differentiation();
  throw ConfigError("unknown operator kind '" + kind + "'");
}

json space_to_json(const SpaceParams& sp) {
  return json{{"m", sp.m}, {"p", sp.p}, {"beta", sp.beta}};
}

json membership_to_json(const MembershipVerdict& v) {
  json trace = json::array();
  for (const auto& t : v.trace)
    trace.push_back(json{{"R", t.radius}, {"log_value", t.log_value}, {"value", t.value}});
  return json{{"status", v.status_name()},
              {"value", v.value},
              {"growth_rate", v.growth_rate},
              {"outside_quadratic_exponent", v.exponent_outside_quadratic},
              {"trace", trace}};
}

Report run_norm(const Scenario& sc) {
  Report rep;
  FunctionSymbol f = parse_symbol(sc.params.at("symbol").get<std::string>());
  SpaceParams sp = parse_space(sc.params.at("space"));
  PolarGrid grid = parse_grid(sc.params, 12.0);
  double value = space_norm(f, sp, grid);
  rep.records = json{{"value", value}, {"space", space_to_json(sp)},
                     {"symbol", format_symbol(f)}};
  rep.status = "pass";
  return rep;
}

Report run_membership(const Scenario& sc) {
  Report rep;
  FunctionSymbol f = parse_symbol(sc.params.at("symbol").get<std::string>());
  SpaceParams sp = parse_space(sc.params.at("space"));
  MembershipVerdict verdict = membership(f, sp);
  rep.records = json{{"verdict", membership_to_json(verdict)},
                     {"space", space_to_json(sp)},
                     {"symbol", format_symbol(f)}};
  std::ostringstream csv;
  csv << "R,log_value,value\n";
  for (const auto& t : verdict.trace)
    csv << format_number(t.radius) << "," << format_number(t.log_value) << ","
        << format_number(t.value) << "\n";
  rep.csv = csv.str();
  rep.status = verdict.status == MembershipStatus::Inconclusive ? "inconclusive" : "pass";
  return rep;
}

Report run_matrix(const Scenario& sc) {
  Report rep;
  OperatorKind op = parse_operator(sc.params.at("operator"));
  SpaceParams sp = parse_space(sc.params.at("space"));
  sp.p = 2.0;
  int size = sc.params.at("size").get<int>();
  OperatorMatrix mat = matrix(op, sp, size);
  rep.csv = matrix_csv(mat);
  rep.records = json{{"size", mat.size},
                     {"bandwidth", mat.bandwidth},
                     {"truncated_columns", mat.truncated_columns()},
                     {"operator", op.name()}};
  rep.status = "pass";
  return rep;
}

Report run_schatten(const Scenario& sc) {
  Report rep;
  OperatorKind op = parse_operator(sc.params.at("operator"));
  SpaceParams sp = parse_space(sc.params.at("space"));
  sp.p = 2.0;
  int size = sc.params.value("size", 400);
  std::vector<double> p_list = sc.params.at("p_list").get<std::vector<double>>();
  auto records = schatten_diagnostic(op, sp, p_list, size);
  json rows = json::array();
  std::ostringstream csv;
  csv << "p,verdict,partial_sum_half,partial_sum_full,tail_trend,decay_exponent\n";
  for (const auto& r : records) {
    rows.push_back(json{{"p", r.p},
                        {"verdict", r.convergent ? "Convergent" : "Divergent"},
                        {"partial_sum_half", r.partial_sum_half},
                        {"partial_sum_full", r.partial_sum_full},
                        {"tail_trend", r.tail_trend},
                        {"decay_exponent", r.decay_exponent}});
    csv << format_number(r.p) << "," << (r.convergent ? "Convergent" : "Divergent") << ","
        << format_number(r.partial_sum_half) << "," << format_number(r.partial_sum_full) << ","
        << format_number(r.tail_trend) << "," << format_number(r.decay_exponent) << "\n";
  }
  rep.records = json{{"rows", rows}, {"operator", op.name()}, {"size", size}};
  rep.csv = csv.str();
  rep.status = "pass";
  return rep;
}

Report run_spectrum_scan(const Scenario& sc) {
  Report rep;
  Complex a = parse_complex(sc.params.at("a").get<std::string>());
  SpaceParams sp = parse_space(sc.params.at("space"));
  std::vector<Complex> lambdas;
  for (const auto& item : sc.params.at("lambdas")) lambdas.push_back(parse_complex(item.get<std::string>()));
  std::vector<int> truncations = {50, 100, 200};
  if (sc.params.contains("truncations"))
    truncations = sc.params.at("truncations").get<std::vector<int>>();
  SpectrumScan scan = spectrum_scan(a, sp, lambdas, truncations);
  rep.csv = scan.csv();
  json rows = json::array();
  for (const auto& r : scan.records)
    rows.push_back(json{{"lambda", format_complex(r.lambda)},
                        {"membership", r.membership.status_name()},
                        {"classification", scan_class_name(r.classification)}});
  rep.records = json{{"a", format_complex(a)},
                     {"extrapolated_exponent", scan.extrapolated_exponent},
                     {"rows", rows}};
  rep.status = "pass";
  return rep;
}

json witness_to_json(const ClassificationWitness& wit) {
  json growth = json::array();
  for (const auto& [n, v] : wit.growth) growth.push_back(json{{"n", n}, {"ratio", v}});
  json tilde = json::array();
  for (const auto& [r, v] : wit.tilde_samples) tilde.push_back(json{{"abs_w", r}, {"value", v}});
  json out{{"summary", wit.summary},
           {"growth", growth},
           {"growth_slope", wit.growth_slope},
           {"tilde_samples", tilde},
           {"tilde_sup", wit.tilde_sup},
           {"tilde_decay_slope", wit.tilde_decay_slope}};
  if (wit.integrability_finite.has_value()) out["integrability_finite"] = *wit.integrability_finite;
  return out;
}

Report run_carleson(const Scenario& sc) {
  Report rep;
  std::string mode = sc.params.value("mode", std::string("classify"));
  if (mode == "classify") {
    OperatorKind op = parse_operator(sc.params.at("operator"));
    double p = sc.params.at("p").get<double>();
    double q = sc.params.at("q").get<double>();
    int m = sc.params.at("m").get<int>();
    Classification cls = classify(op, p, q, m);
    rep.records = json{{"operator", op.name()},
                       {"g", format_symbol(FunctionSymbol::poly(op.g))},
                       {"p", p},
                       {"q", q},
                       {"m", m},
                       {"verdict", verdict_name(cls.verdict)},
                       {"rule", cls.rule},
                       {"witness_summary", cls.witness.summary},
                       {"witness", witness_to_json(cls.witness)}};
    rep.status = "pass";
    return rep;
  }
  CarlesonQuery query;
  FunctionSymbol g = parse_symbol(sc.params.at("g").get<std::string>());
  if (!g.is_poly()) throw ConfigError("carleson symbol must be polynomial");
  query.g = g.prefactor();
  query.p = sc.params.value("p", 2.0);
  query.q = sc.params.at("q").get<double>();
  query.m = sc.params.value("m", 0);
  query.t = sc.params.value("t", 0.0);
  CarlesonMode scan_mode;
  if (mode == "sup") scan_mode = CarlesonMode::Sup;
  else if (mode == "vanishing") scan_mode = CarlesonMode::Vanishing;
  else if (mode == "integrability") scan_mode = CarlesonMode::Integrability;
  else throw ConfigError("unknown carleson mode '" + mode + "'");
  CarlesonScanResult res = carleson_scan(query, scan_mode);
  json samples = json::array();
  std::ostringstream csv;
  csv << "abs_w,value\n";
  for (const auto& [r, v] : res.samples) {
    samples.push_back(json{{"abs_w", r}, {"value", v}});
    csv << format_number(r) << "," << format_number(v) << "\n";
  }
  rep.records = json{{"mode", mode},
                     {"value", res.value},
                     {"fitted_decay", res.fitted_decay},
                     {"stable", res.stable},
                     {"finite", res.finite},
                     {"samples", samples}};
  rep.csv = csv.str();
  rep.status = "pass";
  return rep;
}

Report run_regularity(const Scenario& sc) {
  Report rep;
  SpaceParams sp = parse_space(sc.params.at("space"));
  RegularityReport report = regularity_report(sp);
  json samples = json::array();
  std::ostringstream csv;
  csv << "r,decay,curvature\n";
  for (const auto& s : report.samples) {
    samples.push_back(json{{"r", s.r}, {"decay", s.decay}, {"curvature", s.curvature}});
    csv << format_number(s.r) << "," << format_number(s.decay) << ","
        << format_number(s.curvature) << "\n";
  }
  bool ok = report.decay_vanishes && report.curvature_below_p && report.curvature_bounded_below;
  rep.records = json{{"r0", report.r0},
                     {"decay_vanishes", report.decay_vanishes},
                     {"curvature_below_p", report.curvature_below_p},
                     {"curvature_bounded_below", report.curvature_bounded_below},
                     {"samples", samples}};
  rep.csv = csv.str();
  rep.status = ok ? "pass" : "fail";
  return rep;
}

Report run_verify_all(const Scenario& sc) {
  VerifyOptions options;
  options.tolerance_scale = sc.params.value("tolerance_scale", 1.0);
  options.m_override = sc.params.value("m_override", -1);
  if (sc.params.contains("criteria"))
    options.criteria = sc.params.at("criteria").get<std::vector<int>>();
  return make_acceptance_report(run_acceptance(options));
}

}  // namespace

Report make_acceptance_report(const std::vector<CriterionResult>& results) {
  Report rep;
  json rows = json::array();
  std::ostringstream csv;
  csv << "criterion,title,pass,seconds\n";
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    rows.push_back(json{{"criterion", r.index},
                        {"title", r.title},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds}});
    csv << r.index << "," << r.title << "," << (r.pass ? "1" : "0") << ","
        << format_number(r.seconds) << "\n";
  }
  rep.records = json{{"criteria", rows}};
  rep.csv = csv.str();
  rep.status = all_pass ? "pass" : "fail";
  return rep;
}

std::vector<Scenario> parse_config(const json& config) {
  if (!config.is_object() || !config.contains("scenarios") || !config.at("scenarios").is_array())
    throw ConfigError("config needs a 'scenarios' array");
  std::vector<Scenario> scenarios;
  std::set<std::string> names;
  for (const auto& item : config.at("scenarios")) {
    Scenario sc;
    if (!item.is_object() || !item.contains("name") || !item.contains("kind"))
      throw ConfigError("each scenario needs 'name' and 'kind'");
    sc.name = item.at("name").get<std::string>();
    sc.kind = item.at("kind").get<std::string>();
    sc.params = item.value("params", json::object());
    if (!names.insert(sc.name).second) throw ConfigError("duplicate scenario name '" + sc.name + "'");
    scenarios.push_back(std::move(sc));
  }
  return scenarios;
}

Report run_scenario(const Scenario& sc) {
  Report rep;
  try {
    if (sc.kind == "norm") rep = run_norm(sc);
    else if (sc.kind == "membership") rep = run_membership(sc);
    else if (sc.kind == "matrix") rep = run_matrix(sc);
    else if (sc.kind == "schatten") rep = run_schatten(sc);
    else if (sc.kind == "spectrum-scan") rep = run_spectrum_scan(sc);
    else if (sc.kind == "carleson") rep = run_carleson(sc);
    else if (sc.kind == "regularity") rep = run_regularity(sc);
    else if (sc.kind == "verify-all") rep = run_verify_all(sc);
    else throw ConfigError("unknown scenario kind '" + sc.kind + "'");
  } catch (const std::exception& e) {
    rep.status = "fail";
    rep.error = e.what();
  }
  rep.scenario = sc.name;
  rep.kind = sc.kind;
  return rep;
}

bool RunOutcome::ok() const {
  for (const auto& r : reports)
    if (r.status == "fail") return false;
  return true;
}

nlohmann::json report_to_json(const Report& report, const std::string& config_hash) {
  json j{{"scenario", report.scenario},
         {"kind", report.kind},
         {"status", report.status},
         {"records", report.records},
         {"provenance", json{{"config_hash", config_hash}, {"version", "0.1.0"}}}};
  if (!report.error.empty()) j["error"] = report.error;
  return j;
}

RunOutcome run_config(const nlohmann::json& config, const RunOptions& options) {
  std::vector<Scenario> scenarios = parse_config(config);
  if (!options.filter.empty()) {
    std::vector<Scenario> kept;
    for (auto& sc : scenarios)
      if (sc.name == options.filter) kept.push_back(std::move(sc));
    scenarios = std::move(kept);
  }
  RunOutcome outcome;
  outcome.reports.resize(scenarios.size());

  unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                   : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(scenarios.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      outcome.reports[i] = run_scenario(scenarios[i]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const std::string hash = fnv1a_hex(config.dump());
  std::filesystem::create_directories(options.out_dir);
  json summary = json::array();
  for (const auto& rep : outcome.reports) {
    write_report_files(rep, options.out_dir, hash);
    summary.push_back(json{{"scenario", rep.scenario}, {"status", rep.status}});
  }
  std::ofstream(options.out_dir / "summary.json") << summary.dump(2) << "\n";
  return outcome;
}

void write_report_files(const Report& report, const std::filesystem::path& out_dir,
                        const std::string& config_hash) {
  std::filesystem::path dir = out_dir / report.scenario;
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "report.json") << report_to_json(report, config_hash).dump(2) << "\n";
  if (!report.csv.empty()) std::ofstream(dir / "data.csv") << report.csv;
}

}  // namespace focklab
