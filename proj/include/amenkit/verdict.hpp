#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace amenkit {

using json = nlohmann::ordered_json;

// Three-valued answer.  True and False are proofs; Unknown names what is
// missing.  A Verdict never upgrades a heuristic signal to True or False.
enum class Status { True, False, Unknown };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::True: return "true";
    case Status::False: return "false";
    default: return "unknown";
  }
}

// One step of a justification chain: a mathematical claim plus the authority
// for it, either a literature reference or the computation that established it.
struct Justification {
  std::string claim;
  std::string cite;
};

struct Verdict {
  std::string check;
  Status status = Status::Unknown;
  json witness;  // null when no witness applies
  std::vector<Justification> justification;

  Verdict& because(std::string claim, std::string cite) {
    justification.push_back({std::move(claim), std::move(cite)});
    return *this;
  }

  bool is_true() const { return status == Status::True; }
  bool is_false() const { return status == Status::False; }

  json to_json() const {
    json j;
    j["check"] = check;
    j["status"] = to_string(status);
    j["witness"] = witness.is_null() ? json(nullptr) : witness;
    json steps = json::array();
    for (const auto& s : justification) steps.push_back({{"claim", s.claim}, {"cite", s.cite}});
    j["justification"] = steps;
    return j;
  }

  static Verdict yes(std::string check, json witness = nullptr) {
    return Verdict{std::move(check), Status::True, std::move(witness), {}};
  }
  static Verdict no(std::string check, json witness = nullptr) {
    return Verdict{std::move(check), Status::False, std::move(witness), {}};
  }
  static Verdict unknown(std::string check, json witness = nullptr) {
    return Verdict{std::move(check), Status::Unknown, std::move(witness), {}};
  }
};

// Literature anchors used in justification chains.  Structural steps cite the
// computation ("exhaustive table scan", "greatest fixed point") inline.
namespace cites {
inline constexpr char sfc_implies_amenable[] =
    "Argabright-Wilde 1967, Theorem 1 (the strong Folner condition implies left amenability)";
inline constexpr char amenable_implies_fc[] =
    "Day 1957 (left amenable semigroups satisfy the Folner condition)";
inline constexpr char reversibility_necessary[] =
    "Paterson 1988, Prop. 1.23 (left amenability forces left reversibility)";
inline constexpr char quotient_right_cancellative[] =
    "Paterson 1988, Prop. 1.24 (common-right-multiple quotient of a left reversible "
    "semigroup is right cancellative)";
inline constexpr char klawe_quotient[] =
    "Klawe 1977 (for left amenable semigroups, SFC is equivalent to left "
    "cancellativity of the common-right-multiple quotient)";
inline constexpr char commutative_amenable[] =
    "Day 1957 (commutative semigroups are amenable)";
}  // namespace cites

}  // namespace amenkit
