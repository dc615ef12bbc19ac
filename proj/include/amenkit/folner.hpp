#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amenkit/elem_set.hpp"
#include "amenkit/errors.hpp"
#include "amenkit/ratio.hpp"
#include "amenkit/semigroup.hpp"
#include "amenkit/universe.hpp"
#include "amenkit/verdict.hpp"

namespace amenkit {

// Both one-sided translate defects of a finite set, exact.
struct DefectPair {
  Ratio weak{0};    // |sF \ F| / |F|
  Ratio strong{0};  // |F \ sF| / |F|
  Ratio worst() const { return weak < strong ? strong : weak; }
};

inline DefectPair folner_defect(const FiniteSemigroup& s, const ElemSet& f, std::uint32_t elem) {
  if (f.empty()) throw empty_set_error("folner_defect: F must be nonempty");
  const ElemSet sf = left_translate(s, elem, f);
  return {Ratio::of_sizes(difference(sf, f).size(), f.size()),
          Ratio::of_sizes(difference(f, sf).size(), f.size())};
}

struct DefectProfile {
  std::vector<std::pair<std::uint32_t, DefectPair>> by_element;
  Ratio max_weak{0}, max_strong{0};
};

inline DefectProfile folner_profile(const FiniteSemigroup& s, const ElemSet& f, const ElemSet& h) {
  DefectProfile out;
  for (auto elem : h.members()) {
    const DefectPair d = folner_defect(s, f, elem);
    if (out.max_weak < d.weak) out.max_weak = d.weak;
    if (out.max_strong < d.strong) out.max_strong = d.strong;
    out.by_element.push_back({elem, d});
  }
  return out;
}

template <UniverseModel U>
DefectPair folner_defect_universe(const U& u, const std::vector<typename U::element_type>& f,
                                  const typename U::element_type& h) {
  using Key = typename U::key_type;
  if (f.empty()) throw empty_set_error("folner_defect: F must be nonempty");
  std::set<Key> fk;
  for (const auto& e : f) {
    if (!fk.insert(u.key(e)).second) {
      throw precondition_error("folner_defect: F contains duplicate canonical keys");
    }
  }
  std::set<Key> hk;
  for (const auto& e : f) hk.insert(u.key(u.multiply(h, e)));
  std::size_t weak = 0, strong = 0;
  for (const auto& k : hk)
    if (!fk.count(k)) ++weak;
  for (const auto& k : fk)
    if (!hk.count(k)) ++strong;
  return {Ratio::of_sizes(weak, f.size()), Ratio::of_sizes(strong, f.size())};
}

// ---------------------------------------------------------------------------
// Exact SFC decision for finite semigroups.
//
// With H = S and epsilon below 1/|S|, a strong defect within epsilon forces
// |F \ sF| = 0, i.e. F within sF for every s.  Sets with that property are
// closed under union, so a greatest one exists; it is the greatest fixed
// point of Phi(F) = {x in F : x in sF for all s}, reached from F = S in at
// most |S| steps.

struct SfcDecision {
  bool satisfied = false;
  ElemSet set;  // the greatest fixed point, possibly empty
  std::uint32_t iterations = 0;
};

inline SfcDecision sfc_greatest_fixed_point(const FiniteSemigroup& s) {
  const std::uint32_t n = s.size();
  ElemSet f = ElemSet::full(n);
  std::uint32_t iterations = 0;
  for (;;) {
    ++iterations;
    ElemSet next = f;
    for (std::uint32_t elem = 0; elem < n && !next.empty(); ++elem) {
      next = next & left_translate(s, elem, f);
    }
    if (next == f) break;
    f = next;
    if (f.empty()) break;
  }
  // Postcondition: F within sF for every s (vacuous when empty).
  for (std::uint32_t elem = 0; elem < n; ++elem) {
    if (!f.is_subset_of(left_translate(s, elem, f))) {
      throw inequality_violated_error("sfc fixed point: stabilized set escapes a translate");
    }
  }
  return {!f.empty(), f, iterations};
}

inline Verdict decide_sfc_finite(const FiniteSemigroup& s) {
  const SfcDecision d = sfc_greatest_fixed_point(s);
  json w;
  w["folner_set"] = d.set.members();
  w["iterations"] = d.iterations;
  if (d.satisfied) {
    return Verdict::yes("sfc", w)
        .because(
            "a nonempty set F with F contained in sF for every s exists, so the strong "
            "defect is zero for every s and every positive epsilon is met",
            "greatest fixed point computation");
  }
  return Verdict::no("sfc", w)
      .because(
          "iterating F -> {x in F : x in sF for all s} from F = S reaches the empty set, "
          "so no nonempty F has F contained in every sF",
          "greatest fixed point computation")
      .because(
          "a strong defect below 1/|S| already forces F contained in sF, so the empty "
          "fixed point rules out the full condition",
          "exact rational threshold");
}

// Independent oracle: scan all nonempty subsets.  The satisfying family is
// union closed, so the union of all hits is itself a hit and must equal the
// fixed point above.
inline Verdict sfc_bruteforce_oracle(const FiniteSemigroup& s) {
  const std::uint32_t n = s.size();
  if (n > 15) throw resource_limit_error("sfc_bruteforce_oracle: order above 15");
  std::uint32_t union_mask = 0;
  bool any = false;
  const std::uint32_t limit = static_cast<std::uint32_t>((1u << n) - 1);
  for (std::uint32_t mask = 1; mask <= limit; ++mask) {
    bool ok = true;
    for (std::uint32_t elem = 0; elem < n && ok; ++elem) {
      std::uint32_t translated = 0;
      for (std::uint32_t a = 0; a < n; ++a) {
        if (mask & (1u << a)) translated |= 1u << s.mul(elem, a);
      }
      ok = (mask & ~translated) == 0;
    }
    if (ok) {
      any = true;
      union_mask |= mask;
    }
  }
  ElemSet best(n);
  for (std::uint32_t a = 0; a < n; ++a) {
    if (union_mask & (1u << a)) best.insert(a);
  }
  json w;
  w["folner_set"] = best.members();
  if (any) {
    return Verdict::yes("sfc_oracle", w)
        .because("some nonempty subset satisfies F contained in sF for every s",
                 "exhaustive subset scan");
  }
  return Verdict::no("sfc_oracle", w)
      .because("no nonempty subset satisfies F contained in sF for every s",
               "exhaustive subset scan");
}

inline Verdict decide_fc_finite(const FiniteSemigroup& s) {
  json w;
  w["folner_set"] = ElemSet::full(s.size()).members();
  return Verdict::yes("fc", w).because(
      "every left translate of the full set stays inside it, so each weak defect is zero",
      "closure of the full set");
}

// ---------------------------------------------------------------------------
// Ball search for weak Folner sets in a generated universe.
//
// The ratio |B_{i+1}|/|B_i| < 1 + eps triggers a candidate; for generators h
// the bound |h B_i \ B_i| <= |B_{i+1}| - |B_i| makes the candidate genuine,
// but the exact defect is verified unconditionally so that longer words in H
// are also handled honestly.

template <UniverseModel U>
struct FolnerSearchResult {
  using Elem = typename U::element_type;

  struct Attempt {
    std::uint32_t radius = 0;
    Ratio ratio{0};
    Ratio max_weak{0};
  };

  bool found = false;
  std::uint32_t radius = 0;                            // Found: the i with F = B_i
  std::vector<Elem> set;                               // Found: the ball, key order
  Ratio trigger_ratio{0};                              // Found: |B_{i+1}|/|B_i|
  std::vector<std::pair<std::string, DefectPair>> defects;  // Found: per h, formatted
  std::vector<Attempt> failed_attempts;                // triggered radii that failed
  std::uint32_t searched = 0;
  std::vector<std::size_t> ball_sizes;                 // |B_1| .. |B_{searched+1}|
  std::size_t elements_enumerated = 0;
};

template <UniverseModel U>
FolnerSearchResult<U> folner_search_balls(const U& u,
                                          const std::vector<typename U::element_type>& h_set,
                                          const Ratio& eps, std::uint32_t rmax,
                                          std::size_t cap = default_element_cap()) {
  if (rmax == 0) throw precondition_error("folner_search_balls: rmax must be at least 1");
  if (eps.is_negative()) throw precondition_error("folner_search_balls: epsilon must be >= 0");
  if (h_set.empty()) throw empty_set_error("folner_search_balls: H must be nonempty");

  const auto table = balls(u, rmax + 1, cap);
  FolnerSearchResult<U> out;
  out.searched = rmax;
  out.ball_sizes = table.sizes;
  out.elements_enumerated = table.sizes.back();
  const Ratio threshold = Ratio(1) + eps;

  for (std::uint32_t i = 1; i <= rmax; ++i) {
    const Ratio ratio = Ratio::of_sizes(table.sizes[i], table.sizes[i - 1]);
    if (!(ratio < threshold)) continue;
    const auto candidate = table.ball(i);
    std::vector<std::pair<std::string, DefectPair>> defects;
    Ratio max_weak{0};
    for (const auto& h : h_set) {
      const DefectPair d = folner_defect_universe(u, candidate, h);
      if (max_weak < d.weak) max_weak = d.weak;
      defects.push_back({u.format(h), d});
    }
    if (max_weak <= eps) {
      out.found = true;
      out.radius = i;
      out.set = candidate;
      out.trigger_ratio = ratio;
      out.defects = std::move(defects);
      return out;
    }
    out.failed_attempts.push_back({i, ratio, max_weak});
  }
  return out;
}

template <UniverseModel U>
FolnerSearchResult<U> folner_search_balls(const U& u, const Ratio& eps, std::uint32_t rmax,
                                          std::size_t cap = default_element_cap()) {
  return folner_search_balls(u, u.generators(), eps, rmax, cap);
}

// ---------------------------------------------------------------------------
// Injective refinement.
//
// B keeps the elements of A whose fibre under every f in F is a singleton.
// Under the two-sided defect precondition the three bounds below are
// theorems, so a failed check signals an implementation bug, not bad input.
// When 1 - 2|F|mu is not positive the final chain bound has no content and
// is recorded as skipped; the bound helper raises instead when asked for it.

enum class ChainStatus { Checked, SkippedDenominator };

struct RefineStats {
  std::size_t a_size = 0, b_size = 0, f_count = 0;
  Ratio mu{0};
  std::vector<DefectPair> preconditions;  // defect of A under each f, input order
  bool claim1_ok = false;                 // |A \ B| <= 2|F| mu |A|
  bool claim2_ok = false;                 // |B| >= (1 - 2|F| mu) |A|
  ChainStatus chain_status = ChainStatus::SkippedDenominator;
  std::optional<Ratio> chain_bound;       // (1 + 2|F|) mu / (1 - 2|F| mu)
  std::vector<Ratio> chain_defects;       // |B \ fB| / |B| per f when checked
};

inline Ratio refine_chain_bound(std::size_t f_count, const Ratio& mu) {
  const Ratio two_f_mu = Ratio(2) * Ratio(static_cast<std::int64_t>(f_count)) * mu;
  const Ratio denom = Ratio(1) - two_f_mu;
  if (!(Ratio(0) < denom)) {
    throw denominator_error("refine_chain_bound: 1 - 2|F|mu must be positive, got " + denom.str());
  }
  return (Ratio(1) + Ratio(2) * Ratio(static_cast<std::int64_t>(f_count))) * mu / denom;
}

template <class Elem, class Mul, class KeyOf>
std::pair<std::vector<Elem>, RefineStats> refine_injective_core(const std::vector<Elem>& a_set,
                                                                const std::vector<Elem>& f_set,
                                                                const Ratio& mu, Mul mul,
                                                                KeyOf key_of) {
  using Key = std::decay_t<decltype(key_of(a_set[0]))>;
  if (a_set.empty() || f_set.empty()) {
    throw empty_set_error("refine_injective: A and F must be nonempty");
  }
  if (mu.is_negative()) throw precondition_error("refine_injective: mu must be >= 0");

  RefineStats st;
  st.a_size = a_set.size();
  st.f_count = f_set.size();
  st.mu = mu;

  std::set<Key> a_keys;
  for (const auto& a : a_set) {
    if (!a_keys.insert(key_of(a)).second) {
      throw precondition_error("refine_injective: A contains duplicate canonical keys");
    }
  }

  std::vector<std::map<Key, std::size_t>> fibre(f_set.size());
  for (std::size_t i = 0; i < f_set.size(); ++i) {
    std::size_t strong = 0, image_outside = 0;
    std::set<Key> image;
    for (const auto& a : a_set) {
      Key k = key_of(mul(f_set[i], a));
      ++fibre[i][k];
      if (image.insert(k).second && !a_keys.count(k)) ++image_outside;
    }
    for (const auto& k : a_keys) {
      if (!image.count(k)) ++strong;
    }
    const DefectPair d{Ratio::of_sizes(image_outside, a_set.size()),
                       Ratio::of_sizes(strong, a_set.size())};
    st.preconditions.push_back(d);
    if (mu < d.weak || mu < d.strong) {
      throw precondition_defect_error("refine_injective: translate " + std::to_string(i) +
                                      " has defect (weak " + d.weak.str() + ", strong " +
                                      d.strong.str() + ") exceeding mu = " + mu.str());
    }
  }

  std::vector<Elem> b;
  std::set<Key> b_keys;
  for (const auto& a : a_set) {
    bool keep = true;
    for (std::size_t i = 0; i < f_set.size() && keep; ++i) {
      keep = fibre[i].at(key_of(mul(f_set[i], a))) == 1;
    }
    if (keep) {
      b.push_back(a);
      b_keys.insert(key_of(a));
    }
  }
  st.b_size = b.size();

  const Ratio n_a(static_cast<std::int64_t>(a_set.size()));
  const Ratio two_f_mu = Ratio(2) * Ratio(static_cast<std::int64_t>(f_set.size())) * mu;
  st.claim1_ok = Ratio(static_cast<std::int64_t>(a_set.size() - b.size())) <= two_f_mu * n_a;
  st.claim2_ok = n_a <= Ratio(static_cast<std::int64_t>(b.size())) + two_f_mu * n_a;
  if (!st.claim1_ok || !st.claim2_ok) {
    throw inequality_violated_error(
        "refine_injective: a refinement cardinality bound failed; implementation bug");
  }

  // Every f separates B by construction; verify anyway.
  if (!b.empty()) {
    for (std::size_t i = 0; i < f_set.size(); ++i) {
      std::set<Key> fb;
      for (const auto& e : b) fb.insert(key_of(mul(f_set[i], e)));
      if (fb.size() != b.size()) {
        throw inequality_violated_error(
            "refine_injective: translation not injective on B; implementation bug");
      }
    }
  }

  const Ratio denom = Ratio(1) - two_f_mu;
  if (Ratio(0) < denom) {
    st.chain_status = ChainStatus::Checked;
    st.chain_bound = refine_chain_bound(f_set.size(), mu);
    if (b.empty()) {
      throw inequality_violated_error(
          "refine_injective: B empty although 1 - 2|F|mu is positive; implementation bug");
    }
    for (std::size_t i = 0; i < f_set.size(); ++i) {
      std::set<Key> fb;
      for (const auto& e : b) fb.insert(key_of(mul(f_set[i], e)));
      std::size_t outside = 0;
      for (const auto& k : b_keys) {
        if (!fb.count(k)) ++outside;
      }
      const Ratio defect = Ratio::of_sizes(outside, b.size());
      st.chain_defects.push_back(defect);
      if (*st.chain_bound < defect) {
        throw inequality_violated_error(
            "refine_injective: final chain bound failed; implementation bug");
      }
    }
  } else {
    st.chain_status = ChainStatus::SkippedDenominator;
  }
  return {std::move(b), std::move(st)};
}

struct FiniteRefineResult {
  ElemSet b;
  RefineStats stats;
};

inline FiniteRefineResult refine_injective(const FiniteSemigroup& s, const ElemSet& a,
                                           const ElemSet& f, const Ratio& mu) {
  const auto a_vec = a.members();
  const auto f_vec = f.members();
  auto [b_vec, stats] = refine_injective_core(
      a_vec, f_vec, mu, [&](std::uint32_t x, std::uint32_t y) { return s.mul(x, y); },
      [](std::uint32_t x) { return x; });
  ElemSet b(s.size());
  for (auto e : b_vec) b.insert(e);
  return {b, std::move(stats)};
}

template <UniverseModel U>
struct UniverseRefineResult {
  std::vector<typename U::element_type> b;
  RefineStats stats;
};

template <UniverseModel U>
UniverseRefineResult<U> refine_injective_universe(const U& u,
                                                  const std::vector<typename U::element_type>& a,
                                                  const std::vector<typename U::element_type>& f,
                                                  const Ratio& mu) {
  auto [b, stats] = refine_injective_core(
      a, f, mu,
      [&](const typename U::element_type& x, const typename U::element_type& y) {
        return u.multiply(x, y);
      },
      [&](const typename U::element_type& x) { return u.key(x); });
  return {std::move(b), std::move(stats)};
}

// True iff every f in F has weak defect within epsilon on X and acts
// injectively on X.
inline Verdict injective_folner_check(const FiniteSemigroup& s, const ElemSet& f, const Ratio& eps,
                                      const ElemSet& x) {
  if (x.empty()) throw empty_set_error("injective_folner_check: X must be nonempty");
  if (eps.is_negative()) throw precondition_error("injective_folner_check: epsilon must be >= 0");
  for (auto elem : f.members()) {
    const ElemSet fx = left_translate(s, elem, x);
    const Ratio weak = Ratio::of_sizes(difference(fx, x).size(), x.size());
    if (eps < weak) {
      json w;
      w["f"] = elem;
      w["reason"] = "weak defect exceeds epsilon";
      w["defect"] = weak.str();
      return Verdict::no("injective_folner", w)
          .because("some translate moves too much of X outside itself", "exact defect computation");
    }
    if (fx.size() != x.size()) {
      json w;
      w["f"] = elem;
      w["reason"] = "translation not injective on X";
      return Verdict::no("injective_folner", w)
          .because("some translate collapses two members of X", "fibre scan");
    }
  }
  json w;
  w["set"] = x.members();
  return Verdict::yes("injective_folner", w)
      .because("every f in F keeps the weak defect within epsilon and acts injectively on X",
               "exhaustive defect and fibre scan");
}

// ---------------------------------------------------------------------------
// Amenability verdicts.

inline Verdict amenability_verdict_finite(const FiniteSemigroup& s) {
  const Verdict sfc = decide_sfc_finite(s);
  if (sfc.is_true()) {
    return Verdict::yes("amenable", sfc.witness)
        .because("the strong Folner condition holds with the recorded witness set",
                 "greatest fixed point computation")
        .because("the strong Folner condition implies left amenability",
                 cites::sfc_implies_amenable);
  }
  const Verdict rev = is_left_reversible(s);
  if (rev.is_true()) {
    throw inequality_violated_error(
        "amenability: SFC failed on a left reversible finite semigroup; implementation bug");
  }
  json w;
  w["disjoint_principal_right_ideals"] = rev.witness;
  return Verdict::no("amenable", w)
      .because("no nonempty set satisfies F contained in sF for every s",
               "greatest fixed point computation")
      .because("two principal right ideals are disjoint", "exhaustive ideal scan")
      .because("left reversibility is necessary for left amenability",
               cites::reversibility_necessary);
}

struct ReversibilityProbe {
  std::string a, b;
  bool found = false;
  std::uint32_t radius = 0;
};

struct FgEvidence {
  std::vector<std::size_t> ball_sizes;
  std::optional<GrowthClassification> growth;  // heuristic label, never certifies
  std::vector<ReversibilityProbe> probes;      // one per unordered generator pair
  std::uint32_t probe_radius = 0;
  std::size_t elements_enumerated = 0;

  bool all_probes_found() const {
    return std::all_of(probes.begin(), probes.end(),
                       [](const ReversibilityProbe& p) { return p.found; });
  }
};

template <UniverseModel U>
FgEvidence gather_fg_evidence(const U& u, std::uint32_t growth_radius = 8,
                              std::uint32_t probe_radius = 6,
                              std::size_t cap = default_element_cap()) {
  FgEvidence ev;
  ev.probe_radius = probe_radius;
  ev.ball_sizes = growth_table(u, growth_radius, cap);
  ev.elements_enumerated = ev.ball_sizes.back();
  if (ev.ball_sizes.size() >= 6) ev.growth = classify_growth(ev.ball_sizes);
  const auto gens = u.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const auto r = right_ideal_intersection_search(u, gens[i], gens[j], probe_radius, cap);
      ev.probes.push_back(
          {u.format(gens[i]), u.format(gens[j]), r.common.has_value(), r.radius});
    }
  }
  return ev;
}

// Policy: True and False only from certified structure; everything else is
// Unknown with the blocking gap named.  The heuristic growth label may appear
// in the witness but never decides.
template <UniverseModel U>
Verdict amenability_verdict_fg(const U& u, const FgEvidence& ev) {
  const CertifiedFlags fl = u.flags();
  if (const auto cert = u.disjoint_ideal_certificate()) {
    const auto gens = u.generators();
    json w;
    w["disjoint_right_ideals"] =
        json{{"a", u.format(gens[cert->first])}, {"b", u.format(gens[cert->second])}};
    return Verdict::no("amenable", w)
        .because("the model certifies two generators whose right ideals are disjoint",
                 "word prefix argument")
        .because("left reversibility is necessary for left amenability",
                 cites::reversibility_necessary);
  }
  const bool poly = fl.growth == CertifiedFlags::Growth::Polynomial;
  if (poly && fl.commutative) {
    json w;
    w["certified"] = "commutative, polynomial growth";
    w["growth_degree"] = fl.poly_degree;
    return Verdict::yes("amenable", w)
        .because("the model certifies commutativity and polynomial growth", "model constructor")
        .because("commutative semigroups are left amenable", cites::commutative_amenable);
  }
  if (poly && fl.inverse) {
    json w;
    w["certified"] = "inverse, polynomial growth";
    w["growth_degree"] = fl.poly_degree;
    return Verdict::yes("amenable", w)
        .because(
            "the model certifies inverse structure, so principal right ideals pairwise "
            "intersect and collapsed pairs regain a common right multiple",
            "idempotent product argument")
        .because("the model certifies polynomial growth", "model constructor")
        .because(
            "with those cancellation properties, balls of slowly growing radius form weak "
            "and strong Folner sets",
            "ball ratio argument")
        .because("the strong Folner condition implies left amenability",
                 cites::sfc_implies_amenable);
  }
  if (poly && fl.left_cancellative) {
    if (ev.all_probes_found()) {
      json w;
      w["certified"] = "left cancellative, polynomial growth";
      w["growth_degree"] = fl.poly_degree;
      w["probe_radius"] = ev.probe_radius;
      return Verdict::yes("amenable", w)
          .because("the model certifies left cancellativity and polynomial growth",
                   "model constructor")
          .because("right ideals of every generator pair intersect within the probed radius",
                   "ball search")
          .because(
              "with those cancellation properties, balls of slowly growing radius form weak "
              "and strong Folner sets",
              "ball ratio argument")
          .because("the strong Folner condition implies left amenability",
                   cites::sfc_implies_amenable);
    }
    json w;
    w["blocking_gap"] = "left cancellative, but some generator-pair right ideal probe found "
                        "no intersection within the probed radius";
    w["probe_radius"] = ev.probe_radius;
    return Verdict::unknown("amenable", w)
        .because("verdicts are issued only from certified structure", "verdict policy");
  }
  json w;
  w["blocking_gap"] = poly ? "no certified flag implies the required cancellation properties"
                           : "growth is not certified polynomial";
  if (ev.growth) w["heuristic_growth"] = to_string(ev.growth->kind);
  return Verdict::unknown("amenable", w)
      .because("verdicts are issued only from certified structure", "verdict policy");
}

}  // namespace amenkit
