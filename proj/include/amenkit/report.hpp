#pragma once

#include <array>
#include <cstdint>
#include <future>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "amenkit/digraph.hpp"
#include "amenkit/enumerate.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/folner.hpp"
#include "amenkit/io.hpp"
#include "amenkit/semigroup.hpp"
#include "amenkit/universe.hpp"
#include "amenkit/verdict.hpp"
#include "amenkit/version.hpp"

// JSON report builders.  Every command produces the same envelope subtree:
// {tool, command, input, results, resources}.  All numerics that carry exact
// meaning are emitted as "p/q" strings; doubles appear only in clearly
// labeled heuristic fields and are formatted to fixed precision so repeated
// runs serialize identically.

namespace amenkit {

namespace detail {

inline std::string fixed_decimal(double v, int places) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(places) << v;
  return out.str();
}

}  // namespace detail

inline json make_report(const std::string& command, json input, json results,
                        std::uint64_t elements_enumerated) {
  json tool;
  tool["name"] = tool_name;
  tool["version"] = tool_version;
  json resources;
  resources["elements_enumerated"] = elements_enumerated;
  json r;
  r["tool"] = std::move(tool);
  r["command"] = command;
  r["input"] = std::move(input);
  r["results"] = std::move(results);
  r["resources"] = std::move(resources);
  return r;
}

inline json defect_pair_json(const DefectPair& d) {
  json j;
  j["weak"] = d.weak.str();
  j["strong"] = d.strong.str();
  return j;
}

inline json growth_classification_json(const GrowthClassification& g) {
  json j;
  j["kind"] = to_string(g.kind);
  j["degree_estimate"] = detail::fixed_decimal(g.degree_estimate, 1);
  j["rate_estimate"] = detail::fixed_decimal(g.rate_estimate, 3);
  json ratios = json::array();
  for (const auto& r : g.last_ratios) ratios.push_back(r.str());
  j["last_ratios"] = ratios;
  j["heuristic"] = true;
  return j;
}

// ---------------------------------------------------------------------------
// analyze

namespace detail {

inline void analyze_finite_into(const FiniteSemigroup& s, json& results) {
  results["order"] = s.size();
  results["commutative"] = is_commutative(s);
  results["left_cancellative"] = is_left_cancellative(s).to_json();
  results["right_cancellative"] = is_right_cancellative(s).to_json();
  results["left_reversible"] = is_left_reversible(s).to_json();
  results["klawe"] = is_klawe(s).to_json();
  results["near_left_cancellative"] = is_near_left_cancellative(s).to_json();

  const CongRelation rel = cong_relation(s);
  if (rel.status == CongRelation::Kind::Congruence) {
    const Quotient q = quotient(s, rel);
    json w;
    w["classes"] = q.semigroup.size();
    w["projection"] = q.projection;
    results["common_right_multiple_congruence"] =
        Verdict::yes("common_right_multiple_congruence", w)
            .because("the common right multiple relation is an equivalence compatible with "
                     "multiplication on both sides",
                     "exhaustive relation scan")
            .to_json();
    results["quotient_left_cancellative"] = is_left_cancellative(q.semigroup).to_json();
    results["quotient_right_cancellative"] = is_right_cancellative(q.semigroup).to_json();
  } else {
    json w;
    w["triple"] = {rel.witness[0], rel.witness[1], rel.witness[2]};
    std::string reason;
    if (rel.status == CongRelation::Kind::NotTransitive) {
      reason = "not_transitive";
    } else {
      reason = rel.failing_side == CongRelation::Side::Left ? "not_left_compatible"
                                                            : "not_right_compatible";
    }
    w["failure"] = reason;
    results["common_right_multiple_congruence"] =
        Verdict::no("common_right_multiple_congruence", w)
            .because("the common right multiple relation fails a congruence axiom at the "
                     "witness triple",
                     "exhaustive relation scan")
            .to_json();
  }

  results["sfc"] = decide_sfc_finite(s).to_json();
  results["fc"] = decide_fc_finite(s).to_json();
  results["amenable"] = amenability_verdict_finite(s).to_json();
}

template <UniverseModel U>
void analyze_fg_into(const U& u, std::size_t cap, json& results, std::uint64_t& elements) {
  const CertifiedFlags fl = u.flags();
  json certified;
  certified["commutative"] = fl.commutative;
  certified["left_cancellative"] = fl.left_cancellative;
  certified["inverse"] = fl.inverse;
  switch (fl.growth) {
    case CertifiedFlags::Growth::Polynomial:
      certified["growth"] = "polynomial";
      certified["growth_degree"] = fl.poly_degree;
      break;
    case CertifiedFlags::Growth::Exponential:
      certified["growth"] = "exponential";
      break;
    default:
      certified["growth"] = "uncertified";
      break;
  }
  results["certified"] = certified;

  const FgEvidence ev = gather_fg_evidence(u, 8, 6, cap);
  results["ball_sizes"] = ev.ball_sizes;
  if (ev.growth) results["growth_heuristic"] = growth_classification_json(*ev.growth);
  json probes = json::array();
  for (const auto& p : ev.probes) {
    json pj;
    pj["a"] = p.a;
    pj["b"] = p.b;
    pj["found"] = p.found;
    pj["radius"] = p.radius;
    probes.push_back(pj);
  }
  results["right_ideal_probes"] = probes;
  results["probe_radius"] = ev.probe_radius;
  results["amenable"] = amenability_verdict_fg(u, ev).to_json();
  elements = ev.elements_enumerated;
}

}  // namespace detail

inline json cmd_analyze(const std::string& spec, std::size_t cap = default_element_cap()) {
  const AnyUniverse u = parse_universe_spec(spec);
  json input;
  input["universe"] = spec;
  input["kind"] = universe_kind(u);

  json results;
  std::uint64_t elements = 0;
  if (const auto* t = std::get_if<TableUniverse>(&u)) {
    detail::analyze_finite_into(t->table(), results);
    elements = t->table().size();
  } else if (const auto* tr = std::get_if<TransformationUniverse>(&u)) {
    const auto ct = closure_table(*tr, cap);
    results["element_labels"] = ct.labels;
    detail::analyze_finite_into(ct.semigroup, results);
    elements = ct.semigroup.size();
  } else if (const auto* f = std::get_if<FreeUniverse>(&u)) {
    detail::analyze_fg_into(*f, cap, results, elements);
  } else if (const auto* fc = std::get_if<FreeCommutativeUniverse>(&u)) {
    detail::analyze_fg_into(*fc, cap, results, elements);
  } else {
    detail::analyze_fg_into(std::get<BicyclicUniverse>(u), cap, results, elements);
  }
  return make_report("analyze", input, results, elements);
}

// ---------------------------------------------------------------------------
// folner

namespace detail {

template <UniverseModel U>
void folner_into(const U& u, const Ratio& eps, const std::vector<std::uint32_t>& h_indices,
                 std::uint32_t rmax, std::size_t cap, json& input, json& results,
                 std::uint64_t& elements) {
  const auto gens = u.generators();
  std::vector<typename U::element_type> h;
  if (h_indices.empty()) {
    h = gens;
  } else {
    for (const auto i : h_indices) {
      if (i >= gens.size()) {
        throw parse_error("--h index " + std::to_string(i) + " outside generator range [0, " +
                              std::to_string(gens.size()) + ")",
                          0);
      }
      h.push_back(gens[i]);
    }
  }
  json hj = json::array();
  for (const auto& e : h) hj.push_back(u.format(e));
  input["h"] = hj;

  const auto r = folner_search_balls(u, h, eps, rmax, cap);
  results["found"] = r.found;
  results["searched_radius"] = r.searched;
  results["ball_sizes"] = r.ball_sizes;
  json rejected = json::array();
  for (const auto& a : r.failed_attempts) {
    json aj;
    aj["radius"] = a.radius;
    aj["ratio"] = a.ratio.str();
    aj["max_weak_defect"] = a.max_weak.str();
    rejected.push_back(aj);
  }
  results["rejected_candidates"] = rejected;
  if (r.found) {
    results["radius"] = r.radius;
    results["trigger_ratio"] = r.trigger_ratio.str();
    results["set_size"] = r.set.size();
    json set = json::array();
    for (const auto& e : r.set) set.push_back(u.format(e));
    results["set"] = set;
    json defects = json::array();
    for (const auto& [label, d] : r.defects) {
      json dj;
      dj["h"] = label;
      dj["weak"] = d.weak.str();
      dj["strong"] = d.strong.str();
      defects.push_back(dj);
    }
    results["defects"] = defects;
  }
  elements = r.elements_enumerated;
}

}  // namespace detail

inline json cmd_folner(const std::string& spec, const Ratio& eps,
                       const std::vector<std::uint32_t>& h_indices, std::uint32_t rmax,
                       std::size_t cap = default_element_cap()) {
  if (eps.is_zero() || eps.is_negative()) throw parse_error("--eps must be positive", 0);
  const AnyUniverse u = parse_universe_spec(spec);
  json input;
  input["universe"] = spec;
  input["eps"] = eps.str();
  input["rmax"] = rmax;

  json results;
  std::uint64_t elements = 0;
  std::visit(
      [&](const auto& model) {
        detail::folner_into(model, eps, h_indices, rmax, cap, input, results, elements);
      },
      u);
  return make_report("folner", input, results, elements);
}

// ---------------------------------------------------------------------------
// growth

inline json cmd_growth(const std::string& spec, std::uint32_t n,
                       std::size_t cap = default_element_cap()) {
  if (n < 6) throw parse_error("--n must be at least 6 to classify growth", 0);
  const AnyUniverse u = parse_universe_spec(spec);
  json input;
  input["universe"] = spec;
  input["n"] = n;

  json results;
  std::uint64_t elements = 0;
  std::visit(
      [&](const auto& model) {
        const auto sizes = growth_table(model, n, cap);
        results["ball_sizes"] = sizes;
        results["classification"] = growth_classification_json(classify_growth(sizes));
        elements = sizes.empty() ? 0 : sizes.back();
      },
      u);
  return make_report("growth", input, results, elements);
}

// ---------------------------------------------------------------------------
// isoperimetric

inline json cmd_isoperimetric(const std::string& path) {
  const Digraph g = load_digraph(path);
  json input;
  input["digraph"] = path;
  input["vertices"] = g.size();
  input["edges"] = g.edge_count();

  const IsoperimetricResult r = proper_isoperimetric_number(g);
  json results;
  results["value"] = r.value.str();
  results["minimizer"] = r.minimizer.members();
  results["note"] = "minimum of |out-boundary(A)|/|A| over nonempty proper vertex subsets";

  const std::uint64_t subsets = (std::uint64_t{1} << g.size()) - 2;
  return make_report("isoperimetric", std::move(input), std::move(results), subsets);
}

// ---------------------------------------------------------------------------
// qi

inline json cmd_qi(const std::string& source_path, const std::string& target_path,
                   const std::string& map_path, const Ratio& lambda) {
  const Digraph gamma = load_digraph(source_path);
  const Digraph delta = load_digraph(target_path);
  const std::vector<std::uint32_t> phi = load_vertex_map(map_path);
  if (phi.size() != gamma.size()) {
    throw parse_error("vertex map has " + std::to_string(phi.size()) +
                          " rows, source digraph has " + std::to_string(gamma.size()) +
                          " vertices",
                      0);
  }
  json input;
  input["source"] = source_path;
  input["target"] = target_path;
  input["map"] = map_path;
  input["lambda"] = lambda.str();

  json results;
  const Verdict v = verify_qi(gamma, delta, phi, lambda);
  results["verified"] = v.to_json();
  if (v.is_true()) {
    const TransferConstants tc = transfer_constants(gamma, delta, lambda);
    json cj;
    cj["c"] = tc.c;
    cj["d"] = tc.d;
    cj["e"] = tc.e;
    results["transfer_constants"] = cj;
  }
  return make_report("qi", std::move(input), std::move(results), gamma.size() + delta.size());
}

// ---------------------------------------------------------------------------
// corpus

namespace detail {

inline constexpr std::size_t corpus_check_count = 10;

inline const std::array<const char*, corpus_check_count>& corpus_check_names() {
  static const std::array<const char*, corpus_check_count> names = {
      "sfc_matches_subset_oracle",
      "sfc_iff_left_reversible",
      "sfc_implies_klawe",
      "klawe_implies_sfc",
      "sfc_implies_quotient_left_cancellative",
      "commutative_implies_sfc",
      "near_left_cancellative_implies_klawe",
      "left_reversible_implies_near_left_cancellative",
      "right_cancellative_and_klawe_implies_left_cancellative",
      "left_reversible_implies_quotient_right_cancellative",
  };
  return names;
}

struct CorpusCheckAccum {
  std::uint64_t violations = 0;
  std::vector<std::uint32_t> first_fail;  // empty when no violation seen
};

struct CorpusPartitionResult {
  std::uint64_t tables = 0;
  std::array<CorpusCheckAccum, corpus_check_count> checks;
};

inline CorpusPartitionResult corpus_scan_partition(std::uint32_t order, std::uint32_t partition,
                                                   std::uint32_t partition_count) {
  CorpusPartitionResult out;
  enumerate_semigroup_tables(
      order,
      [&](const FiniteSemigroup& s) {
        ++out.tables;
        const SfcDecision gfp = sfc_greatest_fixed_point(s);
        const Verdict oracle = sfc_bruteforce_oracle(s);
        const auto oracle_set =
            oracle.witness.at("folner_set").get<std::vector<std::uint32_t>>();
        const bool sfc = gfp.satisfied;
        const bool rev = is_left_reversible(s).is_true();
        const bool klawe = is_klawe(s).is_true();
        const bool nlc = is_near_left_cancellative(s).is_true();
        const bool comm = is_commutative(s);
        const bool lc = is_left_cancellative(s).is_true();
        const bool rc = is_right_cancellative(s).is_true();
        const CongRelation rel = cong_relation(s);
        const bool cong_ok = rel.status == CongRelation::Kind::Congruence;
        bool q_lc = false, q_rc = false;
        if (cong_ok) {
          const Quotient q = quotient(s, rel);
          q_lc = is_left_cancellative(q.semigroup).is_true();
          q_rc = is_right_cancellative(q.semigroup).is_true();
        }

        const auto record = [&](std::size_t idx, bool pass) {
          if (pass) return;
          auto& c = out.checks[idx];
          ++c.violations;
          if (c.first_fail.empty()) c.first_fail = s.entries();
        };
        record(0, sfc == oracle.is_true() && oracle_set == gfp.set.members());
        record(1, sfc == rev);
        record(2, !sfc || klawe);
        record(3, !klawe || sfc);
        record(4, !sfc || (cong_ok && q_lc));
        record(5, !comm || sfc);
        record(6, !nlc || klawe);
        record(7, !rev || nlc);
        record(8, !(rc && klawe) || lc);
        record(9, !rev || (cong_ok && q_rc));
      },
      partition, partition_count);
  return out;
}

}  // namespace detail

inline json cmd_corpus(std::uint32_t order, std::uint32_t jobs = 1) {
  if (jobs == 0) throw parse_error("--jobs must be at least 1", 0);
  std::vector<detail::CorpusPartitionResult> parts(jobs);
  if (jobs == 1) {
    parts[0] = detail::corpus_scan_partition(order, 0, 1);
  } else {
    std::vector<std::future<detail::CorpusPartitionResult>> futures;
    futures.reserve(jobs);
    for (std::uint32_t p = 0; p < jobs; ++p) {
      futures.push_back(std::async(std::launch::async, detail::corpus_scan_partition, order, p,
                                   jobs));
    }
    for (std::uint32_t p = 0; p < jobs; ++p) parts[p] = futures[p].get();
  }

  std::uint64_t total = 0;
  std::array<detail::CorpusCheckAccum, detail::corpus_check_count> merged;
  for (const auto& part : parts) {
    total += part.tables;
    for (std::size_t i = 0; i < detail::corpus_check_count; ++i) {
      merged[i].violations += part.checks[i].violations;
      if (merged[i].first_fail.empty() && !part.checks[i].first_fail.empty()) {
        merged[i].first_fail = part.checks[i].first_fail;
      }
    }
  }

  json input;
  input["order"] = order;
  input["jobs"] = jobs;

  json results;
  results["tables_scanned"] = total;
  bool all_passed = true;
  json checks = json::array();
  for (std::size_t i = 0; i < detail::corpus_check_count; ++i) {
    json c;
    c["name"] = detail::corpus_check_names()[i];
    c["violations"] = merged[i].violations;
    if (!merged[i].first_fail.empty()) {
      all_passed = false;
      json rows = json::array();
      for (std::uint32_t r = 0; r < order; ++r) {
        json row = json::array();
        for (std::uint32_t col = 0; col < order; ++col) {
          row.push_back(merged[i].first_fail[std::size_t(r) * order + col]);
        }
        rows.push_back(row);
      }
      c["counterexample"] = rows;
    }
    checks.push_back(c);
  }
  results["checks"] = checks;
  results["all_passed"] = all_passed;
  return make_report("corpus", std::move(input), std::move(results), total);
}

}  // namespace amenkit
