#include "balance_lab/report.hpp"

#include "balance_lab/balance.hpp"
#include "balance_lab/cycles.hpp"

namespace balance_lab {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.u + 1, e.v + 1});
  return out;
}

}  // namespace

json to_json(const NodeSet& nodes) {
  json out = json::array();
  for (Node v : nodes) out.push_back(v + 1);
  return out;
}

json to_json(const Cycle& cycle) {
  json out = json::array();
  for (Node v : cycle.nodes) out.push_back(v + 1);
  return out;
}

json to_json(const AppraisalMatrix& x) {
  json links = json::array();
  for (const SignedLink& l : to_edge_list(x)) links.push_back({l.from, l.to, l.sign});
  return {{"n", x.size()}, {"links", links}};
}

json to_json(const UpdateEvent& e) {
  return {{"step", e.step},
          {"i", e.i + 1},
          {"j", e.j + 1},
          {"mechanism", to_string(e.mechanism)},
          {"neighbor", e.neighbor ? json(*e.neighbor + 1) : json(nullptr)},
          {"old", e.old_value},
          {"new", e.new_value}};
}

json to_json(const RegressionResult& r) {
  return {{"k", optional_number(r.k)},
          {"b", r.b},
          {"r", optional_number(r.r)},
          {"n_points", r.n_points}};
}

json analyze_report(const AppraisalMatrix& x, const AnalyzeOptions& options) {
  const int n = x.size();
  json report;
  report["n"] = n;
  report["bilateral"] = is_bilateral(x);
  report["sign_symmetric"] = is_sign_symmetric(x);

  const TriadBalance triad = check_triad_wise(x);
  json violations = json::array();
  for (const BalanceViolation& v : triad.violations) {
    json nodes = json::array();
    for (Node u : v.nodes) nodes.push_back(u + 1);
    violations.push_back({{"kind", to_string(v.kind)}, {"nodes", nodes}});
  }
  report["triad_wise"] = {{"balanced", triad.balanced}, {"violations", violations}};

  if (auto partition = detect_two_faction(x)) {
    report["two_faction"] = {{"balanced", true},
                             {"kind", to_string(partition->kind)},
                             {"v1", to_json(partition->v1)},
                             {"v2", to_json(partition->v2)}};
  } else {
    report["two_faction"] = {{"balanced", false}};
  }

  json egos = json::array();
  bool all_egos = true;
  for (Node i = 0; i < n; ++i) {
    const auto [members, induced] = ego_network(x, i);
    const bool balanced = detect_two_faction(induced.graph).has_value();
    all_egos = all_egos && balanced;
    egos.push_back({{"node", i + 1}, {"members", to_json(members)}, {"two_faction", balanced}});
  }
  report["ego_networks"] = {{"all_two_faction", all_egos}, {"nodes", egos}};

  report["conflict_ratio"] = optional_number(conflict_ratio(x));
  report["link_density"] = n >= 2 ? json(link_density(x)) : json(nullptr);
  report["n_triad"] = count_triads(x);

  if (options.all_cycles) {
    const auto cycles = enumerate_simple_cycles(skeleton(x), {.max_length = std::nullopt,
                                                              .force = options.force});
    json cycles_json = {{"count", cycles.size()}};
    if (is_sign_symmetric(x)) {
      std::size_t negative = 0;
      for (const Cycle& c : cycles) negative += cycle_sign(x, c) < 0 ? 1 : 0;
      cycles_json["negative"] = negative;
      cycles_json["all_positive"] = negative == 0;
    } else {
      cycles_json["negative"] = nullptr;
      cycles_json["all_positive"] = nullptr;
    }
    report["cycles"] = cycles_json;
  }
  return report;
}

json equivalence_report(const UndirectedSkeleton& g, bool verify_exhaustive, bool force) {
  const EquivalenceReport certificate = check_equivalence_conditions(g, force);
  json subgraphs = json::array();
  for (const MaximalSubgraphCertificate& s : certificate.subgraphs) {
    json entry = {{"nodes", to_json(s.nodes)},
                  {"certified", s.certified},
                  {"cycles_examined", s.cycles_examined}};
    if (s.witness) {
      entry["cycle"] = to_json(s.witness->cycle);
      entry["chords"] = edges_json(find_chords(g, s.witness->cycle));
      entry["witness_chords"] = edges_json(s.witness->extra_edges);
    } else {
      entry["reason"] = s.reason;
    }
    subgraphs.push_back(entry);
  }
  json report = {{"n", g.size()},
                 {"edges", edges_json(g.edges())},
                 {"conditions_hold", certificate.holds},
                 {"maximal_cyclic_subgraphs", subgraphs}};
  if (verify_exhaustive) {
    const ExhaustiveEquivalence exhaustive = verify_equivalence_exhaustive(g, force);
    report["exhaustive"] = {{"equivalence_holds", exhaustive.holds},
                            {"assignments", exhaustive.assignments},
                            {"counterexample", exhaustive.counterexample
                                                   ? to_json(*exhaustive.counterexample)
                                                   : json(nullptr)}};
  }
  return report;
}

json absorption_json(const AbsorptionRecord& record, std::string_view engine) {
  json out = {{"engine", engine},
              {"absorbed", record.absorbed},
              {"steps", record.steps},
              {"final", to_json(record.final_x)},
              {"final_triad_wise", is_triad_wise_balanced(record.final_x)},
              {"final_conflict_ratio", optional_number(conflict_ratio(record.final_x))}};
  if (record.final_y) {
    json y = json::array();
    for (Node i = 0; i < record.final_y->size(); ++i) y.push_back((*record.final_y)[i]);
    out["final_opinions"] = y;
    out["final_aligned"] = is_opinion_aligned({record.final_x, *record.final_y});
    out["final_h"] = potential_h(SiohState{record.final_x, *record.final_y});
  } else {
    out["final_h"] = potential_h(record.final_x);
  }
  if (engine.starts_with("constructive")) out["phase1_steps"] = record.phase1_steps;
  return out;
}

json study_summary_json(const StudyResult& result) {
  const StudyConfig& c = result.config;
  json fixed = {{"n", c.n}};
  if (c.study != Study::Density) fixed["p"] = c.p;
  if (c.study != Study::C0) fixed["p_neg"] = c.p_neg;
  fixed["p1"] = c.sih.p1;
  fixed["p2"] = c.sih.p2;
  fixed["p3"] = c.sih.p3;
  fixed["master_seed"] = c.master_seed;
  fixed["max_steps"] = c.max_steps;

  json summary = {{"study", to_string(c.study)},
                  {"fixed", fixed},
                  {"trials", c.trials},
                  {"excluded", result.excluded}};
  const auto& reg = result.regression;
  summary["k"] = reg ? optional_number(reg->k) : json(nullptr);
  summary["b"] = reg ? json(reg->b) : json(nullptr);
  summary["r"] = reg ? optional_number(reg->r) : json(nullptr);
  summary["n_points"] = reg ? reg->n_points : 0;
  summary["absorbed_fraction"] = result.absorbed_fraction;
  summary["mean_steps"] = result.mean_steps;
  return summary;
}

}  // namespace balance_lab
