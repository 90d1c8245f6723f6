#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "cli/cli.hpp"
#include "dlr/coloring.hpp"
#include "dlr/errors.hpp"
#include "dlr/generate.hpp"
#include "dlr/indepset.hpp"
#include "dlr/io.hpp"
#include "dlr/matching.hpp"
#include "dlr/mis.hpp"
#include "dlr/oracle.hpp"
#include "dlr/setcover.hpp"

namespace dlr::cli {
namespace {

struct Global {
  std::string mode = "local";
  std::uint64_t bit_budget = 0;
  bool strict_budget = false;
  std::string json_path;
  std::optional<std::uint64_t> shuffle_seed;

  EngineConfig engine() const {
    EngineConfig c;
    c.model = mode == "congest" ? Model::Congest : Model::Local;
    c.bit_budget = bit_budget;
    c.strict_budget = strict_budget;
    c.shuffle_seed = shuffle_seed;
    return c;
  }

  Json echo(std::uint64_t n) const {
    std::uint64_t budget = bit_budget ? bit_budget : 64 * bits_for(std::max<std::uint64_t>(n, 2));
    return Json{{"mode", mode},
                {"bit_budget", budget},
                {"strict_budget", strict_budget},
                {"shuffle_seed", shuffle_seed ? Json(*shuffle_seed) : Json(nullptr)}};
  }
};

struct GraphSource {
  std::string input;
  std::string weights;
  GraphSpec gen;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "edge-list file");
    app->add_option("--weights", weights, "node-weight sidecar");
    app->add_option("--n", gen.n, "generator: number of nodes");
    app->add_option("--m", gen.m, "generator: edge target");
    app->add_option("--max-degree", gen.max_degree, "generator: degree cap (0: none)");
    app->add_option("--max-weight", gen.max_weight, "generator: weights in [1, W]");
    app->add_option("--id-stride", gen.id_stride, "generator: spacing of node ids");
    app->add_option("--seed", gen.seed, "generator seed");
  }

  WeightedGraph load() const { return input.empty() ? generate_graph(gen) : load_graph(input, weights); }

  Json echo() const {
    if (!input.empty()) return Json{{"input", input}, {"weights", weights.empty() ? Json(nullptr) : Json(weights)}};
    return Json{{"generator",
                 {{"n", gen.n},
                  {"m", gen.m},
                  {"max_degree", gen.max_degree},
                  {"max_weight", gen.max_weight},
                  {"first_id", gen.first_id},
                  {"id_stride", gen.id_stride},
                  {"seed", gen.seed}}}};
  }
};

struct CoverSource {
  std::string input;
  bool dominating = false;
  SetCoverSpec gen;

  void add(CLI::App* app) {
    app->add_option("--input,-i", input, "set-cover file (edge list with --dominating-set)");
    app->add_flag("--dominating-set", dominating, "read a graph and cover every closed neighbourhood");
    app->add_option("--elements", gen.elements, "generator: number of elements");
    app->add_option("--sets", gen.sets, "generator: number of sets");
    app->add_option("--max-set-size", gen.max_set_size, "generator: s cap");
    app->add_option("--max-element-degree", gen.max_element_degree, "generator: t cap");
    app->add_option("--max-cost", gen.max_cost, "generator: costs in [1, W]");
    app->add_option("--seed", gen.seed, "generator seed");
  }

  SetCoverInstance load() const {
    if (input.empty()) return generate_set_cover(gen);
    if (dominating) return SetCoverInstance::from_dominating_set(load_graph(input).graph);
    return load_set_cover(input);
  }

  Json echo() const {
    if (!input.empty()) return Json{{"input", input}, {"dominating_set", dominating}};
    return Json{{"generator",
                 {{"elements", gen.elements},
                  {"sets", gen.sets},
                  {"max_set_size", gen.max_set_size},
                  {"max_element_degree", gen.max_element_degree},
                  {"max_cost", gen.max_cost},
                  {"seed", gen.seed}}}};
  }
};

Json ids_of(const Graph& g, const std::vector<Index>& set) {
  Json out = Json::array();
  for (Index v : set) out.push_back(g.id(v));
  return out;
}

Json names_of(const std::vector<std::string>& names, const std::vector<Index>& set) {
  Json out = Json::array();
  for (Index v : set) out.push_back(names[v]);
  return out;
}

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

Rational parse_param(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw PreconditionError(std::string("cannot parse ") + name + " '" + text + "'");
  }
}

// Every node, with all pairs of comm-neighbours as virtual edges when d2 is set.
Multigraph coloring_graph(const std::shared_ptr<const Graph>& g, bool d2) {
  std::vector<Index> nodes(g->size());
  for (Index v = 0; v < g->size(); ++v) nodes[v] = v;
  return build_d2_multigraph(g, nodes, g->edges(), [&](Index m) {
    std::vector<std::pair<Index, Index>> pairs;
    if (!d2) return pairs;
    auto nb = g->neighbors(m);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) pairs.emplace_back(nb[i], nb[j]);
    return pairs;
  });
}

Rational uniform_x(const Graph& g, const std::string& text) {
  return text.empty() ? Rational(1, static_cast<std::int64_t>(g.max_degree()) + 1) : parse_param(text, "--x");
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int main(const std::vector<std::string>& args);

 private:
  Json document(const std::string& command, Json params, Json instance, Json result, const RunMetrics& m,
                std::uint64_t n) {
    Json p = g_.echo(n);
    for (auto& [k, v] : params.items()) p[k] = v;
    return Json{{"tool", "dlr"},
                {"command", command},
                {"params", p},
                {"instance", std::move(instance)},
                {"result", std::move(result)},
                {"metrics", metrics_json(m)}};
  }

  void emit(const Json& doc) {
    if (g_.json_path.empty()) return;
    if (g_.json_path == "-") {
      out_ << doc.dump(2) << "\n";
      return;
    }
    std::ofstream f(g_.json_path);
    if (!f) throw PreconditionError("cannot write " + g_.json_path);
    f << doc.dump(2) << "\n";
  }

  void summary(const RunMetrics& m) {
    out_ << "rounds " << m.rounds << ", max bits/edge/round " << m.max_bits_per_edge_round << ", violations "
         << m.violations.size() << (m.oracle_assisted ? ", oracle-assisted" : "") << "\n";
  }

  void generate();
  void mis();
  void matching();
  void wis();
  void setcover();
  void color();
  void round();
  void oracle();
  int verify();

  std::ostream& out_;
  std::ostream& err_;
  Global g_;
  GraphSource gsrc_;
  CoverSource csrc_;

  std::string gen_kind_ = "graph";
  std::string output_;
  std::uint64_t baseline_seed_ = 0;
  bool oracle_coloring_ = false;
  std::string eps_;
  std::string mu_ = "1/2";
  std::string delta_ = "1/4";
  std::string x_;
  std::string algo_;
  std::string backend_ = "exact";
  std::string aggregation_;
  std::string edge_weight_ = "unit";
  bool d2_ = false;
  std::string oracle_kind_;
  std::string lp_kind_ = "packing";
  std::size_t oracle_nodes_ = 24;
  std::string verify_path_;
};

void Runner::generate() {
  std::ostringstream buf;
  if (gen_kind_ == "graph") {
    write_edge_list(buf, gsrc_.load());
  } else {
    write_set_cover(buf, csrc_.load());
  }
  if (output_.empty() || output_ == "-") {
    out_ << buf.str();
    return;
  }
  std::ofstream f(output_);
  if (!f) throw PreconditionError("cannot write " + output_);
  f << buf.str();
}

void Runner::mis() {
  WeightedGraph wg = gsrc_.load();
  MisResult r;
  Json params{{"source", gsrc_.echo()}, {"oracle_coloring", oracle_coloring_}};
  if (baseline_seed_) {
    r = luby_randomized_baseline(wg.graph, baseline_seed_);
    params["algorithm"] = "luby-randomized";
    params["baseline_seed"] = baseline_seed_;
  } else {
    MisOptions opts;
    opts.engine = g_.engine();
    opts.oracle_coloring = oracle_coloring_;
    r = dlr::mis(wg.graph, opts);
    params["algorithm"] = "derandomized";
  }
  r.metrics.objective = Rational(static_cast<std::int64_t>(r.independent_set.size()));
  Json iters = Json::array();
  for (const auto& it : r.iterations)
    iters.push_back({{"nodes", it.nodes},
                     {"edges", it.edges},
                     {"removed_edges", it.removed_edges},
                     {"joined", it.joined},
                     {"good_degree_sum", it.good_degree_sum},
                     {"fractional", to_json(it.fractional)},
                     {"integral", to_json(it.integral)},
                     {"rounds", it.rounds}});
  Json result{{"independent_set", r.independent_set},
              {"size", r.independent_set.size()},
              {"iteration_bound", mis_iteration_bound(wg.graph.num_edges())},
              {"iterations", iters}};
  out_ << "mis: " << r.independent_set.size() << " nodes in " << r.iterations.size() << " iterations\n";
  summary(r.metrics);
  emit(document("mis", params, graph_json(wg), result, r.metrics, wg.graph.size()));
}

void Runner::matching() {
  WeightedGraph wg = gsrc_.load();
  MatchingOptions opts;
  opts.engine = g_.engine();
  opts.oracle_coloring = oracle_coloring_;
  if (!eps_.empty()) opts.eps = parse_param(eps_, "--eps");
  auto r = maximal_matching(wg.graph, opts);
  r.metrics.objective = Rational(static_cast<std::int64_t>(r.matching.size()));
  Json m = Json::array(), iters = Json::array();
  for (auto [a, b] : r.matching) m.push_back({a, b});
  for (const auto& it : r.iterations)
    iters.push_back({{"edges", it.edges}, {"matched", it.matched}, {"fractional", to_json(it.fractional)}, {"rounds", it.rounds}});
  Json result{{"matching", m},
              {"size", r.matching.size()},
              {"iteration_bound", matching_iteration_bound(wg.graph.num_edges(), opts.eps)},
              {"iterations", iters}};
  Json params{{"source", gsrc_.echo()}, {"eps", to_json(opts.eps)}, {"oracle_coloring", oracle_coloring_}};
  out_ << "matching: " << r.matching.size() << " edges in " << r.iterations.size() << " iterations\n";
  summary(r.metrics);
  emit(document("matching", params, graph_json(wg), result, r.metrics, wg.graph.size()));
}

void Runner::wis() {
  WeightedGraph wg = gsrc_.load();
  WisOptions opts;
  opts.engine = g_.engine();
  opts.oracle_coloring = oracle_coloring_;
  if (!eps_.empty()) opts.eps = parse_param(eps_, "--eps");
  Json params{{"source", gsrc_.echo()}, {"algo", algo_}, {"eps", to_json(opts.eps)}, {"oracle_coloring", oracle_coloring_}};
  WisResult r;
  if (algo_ == "basic") {
    Rational x = uniform_x(wg.graph, x_);
    params["x"] = to_json(x);
    r = wis_basic(wg, std::vector<Rational>(wg.graph.size(), x), opts);
  } else if (algo_ == "lp4") {
    r = wis_lp_guided(wg, opts);
  } else if (algo_ == "beta") {
    r = beta_approx_is(wg, opts);
  } else if (algo_ == "turan") {
    r = turan_fraction_is(wg, opts);
  } else {
    r = caro_wei_is(wg, opts);
  }
  r.metrics.objective = Rational(r.weight);
  Json steps = Json::array();
  for (const auto& s : r.trace.steps)
    steps.push_back({{"set", ids_of(wg.graph, s.set)},
                     {"gained", to_json(s.gained)},
                     {"reference", to_json(s.reference)},
                     {"upsilon", to_json(s.upsilon)}});
  Json result{{"independent_set", r.independent_set},
              {"weight", r.weight},
              {"bound", to_json(r.bound)},
              {"trace", {{"rho", to_json(r.trace.rho)}, {"upsilon0", to_json(r.trace.upsilon0)}, {"steps", steps}}}};
  out_ << "wis (" << algo_ << "): weight " << r.weight << " >= " << r.bound << "\n";
  summary(r.metrics);
  emit(document("wis", params, graph_json(wg), result, r.metrics, wg.graph.size()));
}

void Runner::setcover() {
  SetCoverInstance inst = csrc_.load();
  SetCoverOptions opts;
  opts.engine = g_.engine();
  opts.oracle_coloring = oracle_coloring_;
  opts.backend = backend_ == "approx" ? CoverBackend::CentralApprox : CoverBackend::CentralExact;
  auto r = set_cover(inst, opts);
  r.metrics.objective = Rational(r.cost);
  Json iters = Json::array();
  for (const auto& it : r.iterations)
    iters.push_back({{"i", it.i},
                     {"uncovered", it.uncovered},
                     {"newly_covered", it.newly_covered},
                     {"selected", it.selected},
                     {"selected_cost", it.selected_cost},
                     {"scale", to_json(it.scale)},
                     {"skipped", it.skipped},
                     {"rounds", it.rounds}});
  const auto& fc = r.fractional;
  Json result{{"cover", names_of(inst.set_names, r.cover)},
              {"completion", names_of(inst.set_names, r.completion)},
              {"cost", r.cost},
              {"completion_cost", r.completion_cost},
              {"tau", r.tau},
              {"opt_bound", to_json(r.opt_bound)},
              {"bound", to_json(r.bound)},
              {"phi", rationals(r.phi)},
              {"iterations", iters},
              {"fractional",
               {{"x", rationals(fc.x)},
                {"y", rationals(fc.y)},
                {"value", to_json(fc.value)},
                {"dual_value", to_json(fc.dual_value)},
                {"factor", to_json(fc.factor)},
                {"exact", fc.exact}}}};
  Json params{{"source", csrc_.echo()}, {"backend", backend_}, {"oracle_coloring", oracle_coloring_}};
  out_ << "setcover: " << r.cover.size() << " sets, cost " << r.cost << " (tau " << r.tau << ", OPT >= "
       << r.opt_bound << ")\n";
  summary(r.metrics);
  emit(document("setcover", params, cover_json(inst), result, r.metrics, inst.num_sets() + inst.num_elements()));
}

void Runner::color() {
  WeightedGraph wg = gsrc_.load();
  auto g = std::make_shared<const Graph>(wg.graph);
  Multigraph h = coloring_graph(g, d2_);
  Engine engine(*g, g_.engine());
  EdgeWeights w(h.num_edges(), Rational(1));
  if (edge_weight_ == "min")
    for (Index e = 0; e < h.num_edges(); ++e)
      w[e] = Rational(std::min(wg.weight[h.edges()[e].a], wg.weight[h.edges()[e].b]));
  Rational delta = parse_param(delta_, "--delta");
  Aggregation agg = aggregation_.empty() ? (engine.congest() ? Aggregation::Factor2 : Aggregation::Exact)
                                         : (aggregation_ == "factor2" ? Aggregation::Factor2 : Aggregation::Exact);
  Json params{{"source", gsrc_.echo()}, {"algo", algo_}, {"d2", d2_}, {"edge_weight", edge_weight_}};
  Json result;
  std::vector<std::uint64_t> colors;
  if (algo_ == "linial" || algo_ == "three") {
    auto c = algo_ == "linial" ? linial_coloring(engine, h) : three_color_paths_cycles(engine, h, id_coloring(h));
    colors = c.color;
    result = {{"kind", "proper"}, {"palette", c.palette}};
  } else {
    params["delta"] = to_json(delta);
    DefectiveColoring c;
    if (algo_ == "greedy") {
      c = greedy_defective_oracle(h, w, delta);
    } else {
      params["aggregation"] = agg == Aggregation::Factor2 ? "factor2" : "exact";
      ProperColoring init = linial_coloring(engine, h);
      c = algo_ == "defective" ? weighted_defective_coloring(engine, h, w, delta, init, agg)
                               : average_defective_coloring(engine, h, w, delta, init, agg);
    }
    colors = c.color;
    auto cert = scan_defect(h, w, c.color, delta, c.kind);
    result = {{"kind", c.kind == DefectKind::PerNode ? "per-node" : "average"},
              {"palette", c.palette},
              {"stage1_palette", c.stage1_palette},
              {"mono_total", to_json(cert.mono_total)},
              {"weight_total", to_json(cert.weight_total)}};
  }
  Json cs = Json::array();
  for (Index v = 0; v < g->size(); ++v) cs.push_back(colors[v]);
  result["colors"] = cs;
  auto& m = engine.metrics();
  m.objective = Rational(result["palette"].get<std::uint64_t>());
  out_ << "color (" << algo_ << "): palette " << result["palette"] << "\n";
  summary(m);
  emit(document("color", params, graph_json(wg), result, m, g->size()));
}

void Runner::round() {
  WeightedGraph wg = gsrc_.load();
  IsInstance inst = IsInstance::of(wg);
  Engine engine(*inst.comm, g_.engine());
  Rational x = uniform_x(wg.graph, x_);
  Rational eps = parse_param(eps_.empty() ? "1/10" : eps_, "--eps");
  Rational mu = parse_param(mu_, "--mu");
  Valuation val = is_utility_cost(inst);
  FractionalAssignment lam(inst.comm->size(), 2);
  for (Index v = 0; v < inst.comm->size(); ++v) {
    lam.at(v, 1) = x;
    lam.at(v, 0) = Rational(1) - x;
  }
  RoundingReport rep;
  PreprocessReport pre;
  Labeling l = round_fractional(engine, inst.h, val, lam, smallest_nonzero(inst.h, lam), eps, mu,
                                RoundingOptions::for_model(engine.config().model), &rep, &pre);
  std::vector<Index> chosen;
  for (Index v = 0; v < inst.comm->size(); ++v)
    if (l[v] == 1) chosen.push_back(v);
  UtilityCost before = evaluate(inst.h, val, lam), after = evaluate(inst.h, val, l);
  auto& m = engine.metrics();
  m.objective = after.gain();
  Json params{{"source", gsrc_.echo()}, {"problem", "independent-set"}, {"x", to_json(x)}, {"eps", to_json(eps)}, {"mu", to_json(mu)}};
  Json result{{"labeled_one", ids_of(wg.graph, chosen)},
              {"before", to_json(before)},
              {"after", to_json(after)},
              {"k", pre.k},
              {"potential", rationals(rep.potential)}};
  out_ << "round: gain " << before.gain() << " -> " << after.gain() << " with " << chosen.size() << " nodes labeled 1\n";
  summary(m);
  emit(document("round", params, graph_json(wg), result, m, wg.graph.size()));
}

void Runner::oracle() {
  OracleBudget budget;
  budget.max_nodes = oracle_nodes_;
  Json params{{"kind", oracle_kind_}, {"max_nodes", oracle_nodes_}};
  Json result, instance;
  std::uint64_t n = 0;
  RunMetrics m;
  m.oracle_assisted = true;
  if (oracle_kind_ == "setcover" || (oracle_kind_ == "lp" && lp_kind_ == "covering")) {
    SetCoverInstance inst = csrc_.load();
    params["source"] = csrc_.echo();
    instance = cover_json(inst);
    n = inst.num_sets() + inst.num_elements();
    if (oracle_kind_ == "setcover") {
      auto opt = brute_set_cover_opt(inst, budget);
      result = {{"cost", opt.cost}, {"witness", names_of(inst.set_names, opt.witness)}};
      m.objective = Rational(opt.cost);
    } else {
      params["lp"] = "covering";
      auto fc = fractional_cover(inst, CoverBackend::CentralExact, budget);
      result = {{"value", to_json(fc.value)}, {"x", rationals(fc.x)}, {"y", rationals(fc.y)}};
      m.objective = fc.value;
    }
  } else {
    WeightedGraph wg = gsrc_.load();
    params["source"] = gsrc_.echo();
    instance = graph_json(wg);
    n = wg.graph.size();
    if (oracle_kind_ == "wis") {
      auto opt = brute_max_weight_is(wg, budget);
      result = {{"weight", opt.weight}, {"witness", ids_of(wg.graph, opt.witness)}};
      m.objective = Rational(opt.weight);
    } else if (oracle_kind_ == "lp") {
      params["lp"] = "packing";
      std::vector<Rational> w(wg.weight.begin(), wg.weight.end());
      auto opt = packing_optimum(wg.graph, w, false, budget);
      result = {{"value", to_json(opt.value)}, {"x", rationals(opt.x)}};
      m.objective = opt.value;
    } else {
      Index beta = neighborhood_independence(wg.graph, budget);
      result = {{"beta", beta}};
      m.objective = Rational(beta);
    }
  }
  out_ << "oracle (" << oracle_kind_ << "): " << m.objective << "\n";
  emit(document("oracle", params, instance, result, m, n));
}

int Runner::verify() {
  std::ifstream f(verify_path_);
  if (!f) throw PreconditionError("cannot read " + verify_path_);
  Json doc;
  try {
    doc = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(verify_path_ + ": malformed JSON: " + e.what());
  }
  std::vector<Check> checks;
  try {
    checks = verify_document(doc);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(verify_path_ + ": malformed output: " + e.what());
  }
  bool ok = true;
  Json report = Json::array();
  for (const auto& c : checks) {
    ok = ok && c.ok;
    out_ << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    report.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  }
  out_ << (ok ? "verify: all " + std::to_string(checks.size()) + " checks passed\n" : "verify: FAILED\n");
  if (!g_.json_path.empty()) {
    Json doc_out{{"tool", "dlr"}, {"command", "verify"}, {"file", verify_path_}, {"ok", ok}, {"checks", report}};
    emit(doc_out);
  }
  return ok ? 0 : 1;
}

int Runner::main(const std::vector<std::string>& args) {
  CLI::App app{"Deterministic local rounding: distributed graph algorithms on a round simulator", "dlr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--mode", g_.mode, "communication model")->check(CLI::IsMember({"local", "congest"}));
  app.add_option("--bit-budget", g_.bit_budget, "bits per edge per round in CONGEST (0: 64 ceil(log2 n))");
  app.add_flag("--strict-budget", g_.strict_budget, "abort on a CONGEST budget violation");
  app.add_option("--json", g_.json_path, "write the JSON document here ('-' for stdout)");
  app.add_option("--shuffle-seed", g_.shuffle_seed, "shuffle per-round node evaluation order (test hook)");

  auto* gen = app.add_subcommand("generate", "write a seeded random instance");
  gen->add_option("kind", gen_kind_, "graph or setcover")->check(CLI::IsMember({"graph", "setcover"}));
  gen->add_option("--output,-o", output_, "output file (default stdout)");
  gen->add_option("--n", gsrc_.gen.n, "nodes");
  gen->add_option("--m", gsrc_.gen.m, "edge target");
  gen->add_option("--max-degree", gsrc_.gen.max_degree, "degree cap");
  gen->add_option("--max-weight", gsrc_.gen.max_weight, "node weights in [1, W]");
  gen->add_option("--first-id", gsrc_.gen.first_id, "smallest node id");
  gen->add_option("--id-stride", gsrc_.gen.id_stride, "spacing of node ids");
  gen->add_option("--elements", csrc_.gen.elements, "elements");
  gen->add_option("--sets", csrc_.gen.sets, "sets");
  gen->add_option("--max-set-size", csrc_.gen.max_set_size, "s cap");
  gen->add_option("--max-element-degree", csrc_.gen.max_element_degree, "t cap");
  gen->add_option("--max-cost", csrc_.gen.max_cost, "set costs in [1, W]");
  std::uint64_t seed = 1;
  gen->add_option("--seed", seed, "seed");

  auto* mis = app.add_subcommand("mis", "derandomized maximal independent set");
  gsrc_.add(mis);
  mis->add_flag("--oracle-coloring", oracle_coloring_, "sequential greedy defective coloring");
  mis->add_option("--baseline,--baseline-seed", baseline_seed_, "run randomized Luby with this seed instead");

  auto* mat = app.add_subcommand("matching", "deterministic maximal matching");
  gsrc_.add(mat);
  mat->add_option("--eps", eps_, "rounding slack (default 1/4)");
  mat->add_flag("--oracle-coloring", oracle_coloring_, "sequential greedy defective coloring");

  auto* wis = app.add_subcommand("wis", "weighted independent set approximations");
  gsrc_.add(wis);
  wis->add_option("--algo", algo_, "algorithm")
      ->required()
      ->check(CLI::IsMember({"basic", "lp4", "beta", "turan", "carowei"}));
  wis->add_option("--eps", eps_, "accuracy (default 1/10)");
  wis->add_option("--x", x_, "basic: uniform fractional value (default 1/(Delta+1))");
  wis->add_flag("--oracle-coloring", oracle_coloring_, "sequential greedy defective coloring");

  auto* sc = app.add_subcommand("setcover", "deterministic set cover");
  csrc_.add(sc);
  sc->add_option("--backend", backend_, "fractional cover backend")->check(CLI::IsMember({"exact", "approx"}));
  sc->add_flag("--oracle-coloring", oracle_coloring_, "sequential greedy defective coloring");

  auto* col = app.add_subcommand("color", "proper and defective colorings");
  gsrc_.add(col);
  col->add_option("--algo", algo_, "algorithm")
      ->required()
      ->check(CLI::IsMember({"linial", "three", "defective", "average", "greedy"}));
  col->add_option("--delta", delta_, "relative defect (default 1/4)");
  col->add_option("--aggregation", aggregation_, "manager aggregation (default by mode)")
      ->check(CLI::IsMember({"exact", "factor2"}));
  col->add_option("--edge-weight", edge_weight_, "unit, or min of endpoint weights")->check(CLI::IsMember({"unit", "min"}));
  col->add_flag("--d2", d2_, "add a virtual edge for every pair of comm-neighbours");

  auto* rnd = app.add_subcommand("round", "round a uniform fractional independent set");
  gsrc_.add(rnd);
  rnd->add_option("--x", x_, "fractional value (default 1/(Delta+1))");
  rnd->add_option("--eps", eps_, "accuracy (default 1/10)");
  rnd->add_option("--mu", mu_, "requires u - c >= mu u (default 1/2)");

  auto* orc = app.add_subcommand("oracle", "exact reference solutions");
  orc->add_option("kind", oracle_kind_, "wis, setcover, lp or beta")
      ->required()
      ->check(CLI::IsMember({"wis", "setcover", "lp", "beta"}));
  orc->add_option("--lp", lp_kind_, "lp: packing (graph) or covering (set cover)")
      ->check(CLI::IsMember({"packing", "covering"}));
  orc->add_option("--max-nodes", oracle_nodes_, "enumeration budget");
  orc->add_option("--input,-i", gsrc_.input, "instance file");
  orc->add_option("--weights", gsrc_.weights, "node-weight sidecar");
  orc->add_flag("--dominating-set", csrc_.dominating, "setcover: read a graph");

  auto* ver = app.add_subcommand("verify", "recompute the certificates of a JSON output");
  ver->add_option("file", verify_path_, "JSON document")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out_, err_);
  }
  gsrc_.gen.seed = gen->parsed() ? seed : gsrc_.gen.seed;
  csrc_.gen.seed = gen->parsed() ? seed : csrc_.gen.seed;
  if (orc->parsed()) csrc_.input = gsrc_.input;

  try {
    if (gen->parsed()) generate();
    if (mis->parsed()) this->mis();
    if (mat->parsed()) matching();
    if (wis->parsed()) this->wis();
    if (sc->parsed()) setcover();
    if (col->parsed()) color();
    if (rnd->parsed()) round();
    if (orc->parsed()) oracle();
    if (ver->parsed()) return verify();
  } catch (const ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleBudgetExceeded& e) {
    err_ << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err_ << "invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const BudgetExceeded& e) {
    err_ << "budget exceeded: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.main(args);
}

}  // namespace dlr::cli
