#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "amenkit/errors.hpp"
#include "amenkit/ratio.hpp"
#include "amenkit/semigroup.hpp"

namespace amenkit {

// A universe is a finitely generated semigroup presented by its generators
// and a computable product on canonical forms.  Elements compare through
// their canonical key; for every built-in model the key is the canonical
// form itself, so key equality is element equality.
//
// Certified flags are structural facts supplied by the constructors of the
// built-in models; they are never inferred from sampled data.

struct CertifiedFlags {
  bool commutative = false;
  bool left_cancellative = false;
  bool inverse = false;
  enum class Growth { Uncertified, Polynomial, Exponential } growth = Growth::Uncertified;
  std::uint32_t poly_degree = 0;
};

template <class U>
concept UniverseModel = requires(const U& u, const typename U::element_type& a,
                                 const typename U::element_type& b) {
  typename U::element_type;
  typename U::key_type;
  { a == b } -> std::convertible_to<bool>;
  { u.generators() } -> std::convertible_to<std::vector<typename U::element_type>>;
  { u.multiply(a, b) } -> std::convertible_to<typename U::element_type>;
  { u.key(a) } -> std::convertible_to<typename U::key_type>;
  { u.format(a) } -> std::convertible_to<std::string>;
  { u.flags() } -> std::convertible_to<CertifiedFlags>;
};

// Element budget for ball enumeration; AMENKIT_MAX_ELEMENTS overrides.
inline std::size_t default_element_cap() {
  if (const char* s = std::getenv("AMENKIT_MAX_ELEMENTS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

// ---------------------------------------------------------------------------
// Built-in models.

// Free semigroup on k generators; elements are nonempty words.
class FreeUniverse {
 public:
  using element_type = std::vector<std::uint32_t>;
  using key_type = element_type;

  explicit FreeUniverse(std::uint32_t k) : k_(k) {
    if (k == 0) throw precondition_error("FreeUniverse: rank must be at least 1");
  }

  std::uint32_t rank() const { return k_; }

  std::vector<element_type> generators() const {
    std::vector<element_type> g;
    for (std::uint32_t i = 0; i < k_; ++i) g.push_back({i});
    return g;
  }

  element_type multiply(const element_type& a, const element_type& b) const {
    element_type out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  key_type key(const element_type& e) const { return e; }

  std::string format(const element_type& e) const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += '*';
      out += 'x' + std::to_string(e[i] + 1);
    }
    return out;
  }

  CertifiedFlags flags() const {
    CertifiedFlags f;
    f.left_cancellative = true;
    f.commutative = (k_ == 1);
    if (k_ >= 2) {
      f.growth = CertifiedFlags::Growth::Exponential;
    } else {
      f.growth = CertifiedFlags::Growth::Polynomial;
      f.poly_degree = 1;
    }
    return f;
  }

  // Distinct generators start distinct words: their right ideals are disjoint.
  std::optional<std::pair<std::size_t, std::size_t>> disjoint_ideal_certificate() const {
    if (k_ >= 2) return std::make_pair(std::size_t{0}, std::size_t{1});
    return std::nullopt;
  }

 private:
  std::uint32_t k_;
};

// Free commutative semigroup on k generators; elements are exponent vectors
// with positive total degree.
class FreeCommutativeUniverse {
 public:
  using element_type = std::vector<std::uint64_t>;
  using key_type = element_type;

  explicit FreeCommutativeUniverse(std::uint32_t k) : k_(k) {
    if (k == 0) throw precondition_error("FreeCommutativeUniverse: rank must be at least 1");
  }

  std::uint32_t rank() const { return k_; }

  std::vector<element_type> generators() const {
    std::vector<element_type> g;
    for (std::uint32_t i = 0; i < k_; ++i) {
      element_type e(k_, 0);
      e[i] = 1;
      g.push_back(std::move(e));
    }
    return g;
  }

  element_type multiply(const element_type& a, const element_type& b) const {
    element_type out(k_);
    for (std::uint32_t i = 0; i < k_; ++i) out[i] = a[i] + b[i];
    return out;
  }

  key_type key(const element_type& e) const { return e; }

  std::string format(const element_type& e) const {
    std::string out;
    for (std::uint32_t i = 0; i < k_; ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += '*';
      out += 'e' + std::to_string(i + 1);
      if (e[i] > 1) out += '^' + std::to_string(e[i]);
    }
    return out;
  }

  CertifiedFlags flags() const {
    CertifiedFlags f;
    f.commutative = true;
    f.left_cancellative = true;
    f.growth = CertifiedFlags::Growth::Polynomial;
    f.poly_degree = k_;
    return f;
  }

  std::optional<std::pair<std::size_t, std::size_t>> disjoint_ideal_certificate() const {
    return std::nullopt;
  }

 private:
  std::uint32_t k_;
};

// Bicyclic monoid on generators p, q with pq = 1, elements in normal form
// q^a p^b (the identity is (0,0), reachable as the product pq).
class BicyclicUniverse {
 public:
  using element_type = std::pair<std::uint64_t, std::uint64_t>;  // (a, b) = q^a p^b
  using key_type = element_type;

  std::vector<element_type> generators() const {
    return {{0, 1}, {1, 0}};  // p, q
  }

  element_type multiply(const element_type& x, const element_type& y) const {
    const auto [a, b] = x;
    const auto [c, d] = y;
    const std::uint64_t up = c > b ? c - b : 0;
    const std::uint64_t down = b > c ? b - c : 0;
    return {a + up, d + down};
  }

  key_type key(const element_type& e) const { return e; }

  std::string format(const element_type& e) const {
    if (e.first == 0 && e.second == 0) return "1";
    std::string out;
    if (e.first > 0) {
      out += 'q';
      if (e.first > 1) out += '^' + std::to_string(e.first);
    }
    if (e.second > 0) {
      if (!out.empty()) out += '*';
      out += 'p';
      if (e.second > 1) out += '^' + std::to_string(e.second);
    }
    return out;
  }

  CertifiedFlags flags() const {
    CertifiedFlags f;
    f.inverse = true;  // q^a p^b has inverse q^b p^a
    f.growth = CertifiedFlags::Growth::Polynomial;
    f.poly_degree = 2;
    return f;
  }

  std::optional<std::pair<std::size_t, std::size_t>> disjoint_ideal_certificate() const {
    return std::nullopt;
  }
};

// A finite semigroup viewed as a generated universe.  Generators default to
// every element.  Structural flags come from exact table scans, which on a
// finite object are proofs, and growth is polynomial of degree 0.
class TableUniverse {
 public:
  using element_type = std::uint32_t;
  using key_type = std::uint32_t;

  explicit TableUniverse(FiniteSemigroup s) : s_(std::move(s)) {
    for (std::uint32_t i = 0; i < s_.size(); ++i) gens_.push_back(i);
    scan_flags();
  }

  TableUniverse(FiniteSemigroup s, std::vector<std::uint32_t> gens)
      : s_(std::move(s)), gens_(std::move(gens)) {
    if (gens_.empty()) throw precondition_error("TableUniverse: generator set must be nonempty");
    for (auto g : gens_) {
      if (g >= s_.size()) throw index_error("TableUniverse: generator out of range");
    }
    scan_flags();
  }

  const FiniteSemigroup& table() const { return s_; }

  std::vector<element_type> generators() const { return gens_; }

  element_type multiply(element_type a, element_type b) const { return s_.mul(a, b); }

  key_type key(element_type e) const { return e; }

  std::string format(element_type e) const { return 's' + std::to_string(e); }

  CertifiedFlags flags() const { return flags_; }

  std::optional<std::pair<std::size_t, std::size_t>> disjoint_ideal_certificate() const {
    return std::nullopt;
  }

 private:
  void scan_flags() {
    flags_.commutative = is_commutative(s_);
    flags_.left_cancellative = is_left_cancellative(s_).is_true();
    flags_.growth = CertifiedFlags::Growth::Polynomial;
    flags_.poly_degree = 0;
  }

  FiniteSemigroup s_;
  std::vector<std::uint32_t> gens_;
  CertifiedFlags flags_;
};

// Semigroup of transformations of {0,...,n-1} generated by the given maps.
// Elements are image tuples; the product applies the left factor first.
class TransformationUniverse {
 public:
  using element_type = std::vector<std::uint8_t>;
  using key_type = element_type;

  TransformationUniverse(std::uint32_t points, std::vector<element_type> gens)
      : points_(points), gens_(std::move(gens)) {
    if (points_ == 0 || points_ > 255) {
      throw precondition_error("TransformationUniverse: point count must be in 1..255");
    }
    if (gens_.empty()) {
      throw precondition_error("TransformationUniverse: generator set must be nonempty");
    }
    for (const auto& g : gens_) {
      if (g.size() != points_) {
        throw precondition_error("TransformationUniverse: generator arity mismatch");
      }
      for (auto img : g) {
        if (img >= points_) throw index_error("TransformationUniverse: image point out of range");
      }
    }
  }

  std::uint32_t points() const { return points_; }

  std::vector<element_type> generators() const { return gens_; }

  element_type multiply(const element_type& a, const element_type& b) const {
    element_type out(points_);
    for (std::uint32_t p = 0; p < points_; ++p) out[p] = b[a[p]];
    return out;
  }

  key_type key(const element_type& e) const { return e; }

  std::string format(const element_type& e) const {
    std::string out = "[";
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(e[i]);
    }
    out += ']';
    return out;
  }

  CertifiedFlags flags() const { return {}; }

  std::optional<std::pair<std::size_t, std::size_t>> disjoint_ideal_certificate() const {
    return std::nullopt;
  }

 private:
  std::uint32_t points_;
  std::vector<element_type> gens_;
};

// ---------------------------------------------------------------------------
// Ball enumeration.
//
// B_1 = generators; B_{i+1} = B_i union X*B_i.  New elements at radius i+1
// can only arise as x*f with f first reached at radius i, so the frontier
// drives the search.  B_0 is empty by convention: radii index nonempty
// products, and ratio tests start from B_1.

template <UniverseModel U>
struct BallTable {
  using Elem = typename U::element_type;
  using Key = typename U::key_type;

  std::vector<std::vector<Elem>> shells;   // shells[i]: first reached at radius i+1, key order
  std::vector<std::size_t> sizes;          // sizes[i] = |B_{i+1}|
  std::map<Key, std::uint32_t> radius_of;  // canonical key -> first radius
  bool saturated = false;

  std::uint32_t radius() const { return static_cast<std::uint32_t>(sizes.size()); }

  bool contains(const Key& k, std::uint32_t i) const {
    auto it = radius_of.find(k);
    return it != radius_of.end() && it->second <= i;
  }

  std::vector<Elem> ball(std::uint32_t i) const {
    if (i == 0) return {};
    if (i > shells.size()) throw precondition_error("BallTable: radius beyond table");
    std::map<Key, Elem> acc;
    for (std::uint32_t r = 0; r < i; ++r) {
      for (const auto& e : shells[r]) acc.emplace(e, e);
    }
    std::vector<Elem> out;
    out.reserve(acc.size());
    for (auto& [k, e] : acc) out.push_back(e);
    return out;
  }
};

// Verifies (a*b)*c == a*(b*c) on a prefix of the given elements, bounded by
// budget products.  Returns the number of triples checked.
template <UniverseModel U>
std::size_t spot_check_associativity(const U& u, const std::vector<typename U::element_type>& elems,
                                     std::size_t budget = 200000) {
  std::size_t m = elems.size();
  while (m > 1 && m * m * m > budget) --m;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        const auto left = u.multiply(u.multiply(elems[i], elems[j]), elems[k]);
        const auto right = u.multiply(elems[i], u.multiply(elems[j], elems[k]));
        if (u.key(left) != u.key(right)) {
          throw error("universe product failed an associativity spot check");
        }
        ++checked;
      }
    }
  }
  return checked;
}

template <UniverseModel U>
BallTable<U> balls(const U& u, std::uint32_t radius, std::size_t cap = default_element_cap()) {
  using Elem = typename U::element_type;
  using Key = typename U::key_type;
  if (radius == 0) throw precondition_error("balls: radius must be at least 1");

  BallTable<U> table;
  const auto gens = u.generators();
  std::map<Key, Elem> first;
  for (const auto& g : gens) first.emplace(u.key(g), g);

  std::size_t total = 0;
  std::vector<Elem> frontier;
  for (auto& [k, e] : first) {
    table.radius_of.emplace(k, 1);
    frontier.push_back(e);
  }
  total += frontier.size();
  if (total > cap) throw resource_limit_error("balls: element budget exhausted at radius 1");
  table.shells.push_back(frontier);
  table.sizes.push_back(total);

  for (std::uint32_t r = 2; r <= radius; ++r) {
    std::map<Key, Elem> fresh;
    for (const auto& g : gens) {
      for (const auto& f : frontier) {
        Elem prod = u.multiply(g, f);
        Key k = u.key(prod);
        if (table.radius_of.count(k)) continue;
        auto [it, inserted] = fresh.emplace(std::move(k), prod);
        if (!inserted && !(it->second == prod)) {
          throw error("balls: canonical key collision with unequal products");
        }
      }
    }
    std::vector<Elem> shell;
    shell.reserve(fresh.size());
    for (auto& [k, e] : fresh) {
      table.radius_of.emplace(k, r);
      shell.push_back(e);
    }
    total += shell.size();
    if (total > cap) {
      throw resource_limit_error("balls: element budget exhausted at radius " + std::to_string(r));
    }
    frontier = shell;
    table.shells.push_back(std::move(shell));
    table.sizes.push_back(total);
    if (frontier.empty()) {
      table.saturated = true;
      // remaining shells are empty; sizes stay constant
      for (std::uint32_t rr = r + 1; rr <= radius; ++rr) {
        table.shells.emplace_back();
        table.sizes.push_back(total);
      }
      break;
    }
  }
  spot_check_associativity(u, table.ball(std::min<std::uint32_t>(table.radius(), 3)), 20000);
  return table;
}

// |B_1|, ..., |B_N|.
template <UniverseModel U>
std::vector<std::size_t> growth_table(const U& u, std::uint32_t n,
                                      std::size_t cap = default_element_cap()) {
  return balls(u, n, cap).sizes;
}

// ---------------------------------------------------------------------------
// Growth classification.  The class decision uses exact ratio thresholds on
// the last three consecutive ratios; the numeric estimates are heuristic
// labels and never feed a verdict.

struct GrowthClassification {
  enum class Kind { PolynomialLikely, ExponentialLikely, Inconclusive } kind;
  double degree_estimate = 0.0;  // log-log least squares slope over the last half
  double rate_estimate = 0.0;    // mean of the last three ratios
  std::vector<Ratio> last_ratios;
};

inline GrowthClassification classify_growth(const std::vector<std::size_t>& sizes) {
  if (sizes.size() < 6) {
    throw too_few_points_error("classify_growth: need at least 6 ball sizes, got " +
                               std::to_string(sizes.size()));
  }
  for (auto s : sizes) {
    if (s == 0) throw precondition_error("classify_growth: ball sizes must be positive");
  }
  GrowthClassification out;
  const std::size_t n = sizes.size();
  for (std::size_t i = n - 4; i + 1 < n; ++i) {
    out.last_ratios.push_back(Ratio::of_sizes(sizes[i + 1], sizes[i]));
  }
  const Ratio delta(1, 8);
  const Ratio poly_bound = Ratio(1) + delta;          // 9/8
  const Ratio exp_bound = Ratio(1) + Ratio(4) * delta;  // 3/2
  Ratio max_r = out.last_ratios[0], min_r = out.last_ratios[0];
  double sum = 0;
  for (const auto& r : out.last_ratios) {
    if (r > max_r) max_r = r;
    if (r < min_r) min_r = r;
    sum += r.to_double();
  }
  out.rate_estimate = sum / static_cast<double>(out.last_ratios.size());

  // Least squares slope of log|B_i| against log i over the last half.
  {
    const std::size_t from = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = 0;
    for (std::size_t i = from; i < n; ++i) {
      const double lx = std::log(static_cast<double>(i + 1));
      const double ly = std::log(static_cast<double>(sizes[i]));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      count += 1;
    }
    const double var = sxx - sx * sx / count;
    out.degree_estimate = var > 0 ? (sxy - sx * sy / count) / var : 0.0;
  }

  if (max_r < poly_bound) {
    out.kind = GrowthClassification::Kind::PolynomialLikely;
  } else if (min_r > exp_bound) {
    out.kind = GrowthClassification::Kind::ExponentialLikely;
  } else {
    out.kind = GrowthClassification::Kind::Inconclusive;
  }
  return out;
}

inline const char* to_string(GrowthClassification::Kind k) {
  switch (k) {
    case GrowthClassification::Kind::PolynomialLikely: return "polynomial_likely";
    case GrowthClassification::Kind::ExponentialLikely: return "exponential_likely";
    default: return "inconclusive";
  }
}

// ---------------------------------------------------------------------------
// Free pairs and right ideal intersections.

// Word over the two chosen elements; letter 0 is the first element.
using PairWord = std::vector<std::uint8_t>;

inline std::string format_pair_word(const PairWord& w) {
  std::string out;
  for (auto c : w) out += (c == 0 ? 'a' : 'b');
  return out;
}

template <UniverseModel U>
struct FreePairResult {
  bool collided = false;
  std::uint32_t checked_up_to = 0;  // all words of length <= this were distinct
  PairWord u, v;                    // first collision: u earlier in length-lex order
  typename U::element_type product; // common value of the colliding words
};

// Enumerates words over {a, b} in length-lex order (lengths 1..max_len) and
// reports the first pair of distinct words with equal canonical keys.
template <UniverseModel U>
FreePairResult<U> free_pair_check(const U& u, const typename U::element_type& a,
                                  const typename U::element_type& b, std::uint32_t max_len,
                                  std::size_t cap = default_element_cap()) {
  using Elem = typename U::element_type;
  using Key = typename U::key_type;
  if (max_len == 0) throw precondition_error("free_pair_check: length bound must be >= 1");
  if (max_len < 63) {
    const std::uint64_t words = (std::uint64_t{2} << max_len) - 2;
    if (words > cap) throw resource_limit_error("free_pair_check: word budget exhausted");
  } else {
    throw resource_limit_error("free_pair_check: length bound too large");
  }

  const Elem letters[2] = {a, b};
  std::map<Key, PairWord> seen;
  std::vector<std::pair<PairWord, Elem>> level;
  level.push_back({{0}, a});
  level.push_back({{1}, b});
  FreePairResult<U> res;
  for (std::uint32_t len = 1; len <= max_len; ++len) {
    for (auto& [w, e] : level) {
      auto [it, inserted] = seen.emplace(u.key(e), w);
      if (!inserted) {
        res.collided = true;
        res.u = it->second;
        res.v = w;
        res.product = e;
        res.checked_up_to = len > 0 ? len - 1 : 0;
        return res;
      }
    }
    if (len == max_len) break;
    std::vector<std::pair<PairWord, Elem>> next;
    next.reserve(level.size() * 2);
    for (const auto& [w, e] : level) {
      for (std::uint8_t c = 0; c < 2; ++c) {
        PairWord w2 = w;
        w2.push_back(c);
        next.push_back({std::move(w2), u.multiply(e, letters[c])});
      }
    }
    level = std::move(next);
  }
  res.checked_up_to = max_len;
  return res;
}

template <UniverseModel U>
struct IntersectionWitness {
  typename U::element_type common;        // element of aS intersect bS
  typename U::element_type multiplier;    // the right multiplier s applied to both suffix products
  typename U::element_type a_multiplier;  // a * a_multiplier == common (verified)
  typename U::element_type b_multiplier;  // b * b_multiplier == common (verified)
  PairWord common_prefix, u_suffix, v_suffix;
  std::uint32_t radius_searched = 0;
};

namespace detail {

template <UniverseModel U>
typename U::element_type pair_word_product(const U& u, const typename U::element_type& a,
                                           const typename U::element_type& b, const PairWord& w) {
  if (w.empty()) throw precondition_error("pair word product: empty word");
  typename U::element_type acc = (w[0] == 0) ? a : b;
  for (std::size_t i = 1; i < w.size(); ++i) acc = u.multiply(acc, (w[i] == 0) ? a : b);
  return acc;
}

}  // namespace detail

// Turns a canonical-key collision f(u) = f(v) into an explicit element of
// aS intersect bS.  If one word prefixes the other, both are extended by a
// letter that breaks the prefix; the longest common prefix is then stripped,
// leaving suffixes that start with different letters.  Equal suffix products
// settle it with an arbitrary multiplier; otherwise a common right multiple
// of the suffix products is searched over balls of increasing radius.
template <UniverseModel U>
IntersectionWitness<U> intersection_from_collision(const U& u, const typename U::element_type& a,
                                                   const typename U::element_type& b, PairWord u_word,
                                                   PairWord v_word, std::uint32_t rmax = 8,
                                                   std::size_t cap = default_element_cap()) {
  using Elem = typename U::element_type;
  if (u_word.empty() || v_word.empty()) {
    throw precondition_error("intersection_from_collision: words must be nonempty");
  }
  if (u_word == v_word) {
    throw precondition_error("intersection_from_collision: words must be distinct");
  }
  if (!(u.key(detail::pair_word_product(u, a, b, u_word)) ==
        u.key(detail::pair_word_product(u, a, b, v_word)))) {
    throw precondition_error("intersection_from_collision: words do not collide");
  }

  auto is_prefix = [](const PairWord& p, const PairWord& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
  };
  if (is_prefix(u_word, v_word) || is_prefix(v_word, u_word)) {
    const PairWord& shorter = u_word.size() <= v_word.size() ? u_word : v_word;
    const PairWord& longer = u_word.size() <= v_word.size() ? v_word : u_word;
    const std::uint8_t divergent = static_cast<std::uint8_t>(1 - longer[shorter.size()]);
    u_word.push_back(divergent);
    v_word.push_back(divergent);
  }
  std::size_t lcp = 0;
  while (lcp < u_word.size() && lcp < v_word.size() && u_word[lcp] == v_word[lcp]) ++lcp;

  IntersectionWitness<U> out;
  out.common_prefix.assign(u_word.begin(), u_word.begin() + static_cast<std::ptrdiff_t>(lcp));
  out.u_suffix.assign(u_word.begin() + static_cast<std::ptrdiff_t>(lcp), u_word.end());
  out.v_suffix.assign(v_word.begin() + static_cast<std::ptrdiff_t>(lcp), v_word.end());
  if (out.u_suffix.empty() || out.v_suffix.empty()) {
    throw error("intersection_from_collision: prefix stripping left an empty suffix");
  }

  const Elem pu = detail::pair_word_product(u, a, b, out.u_suffix);
  const Elem pv = detail::pair_word_product(u, a, b, out.v_suffix);

  std::optional<Elem> s;
  if (u.key(pu) == u.key(pv)) {
    s = a;  // any multiplier works once the suffix products agree
    out.radius_searched = 0;
  } else {
    const auto table = balls(u, rmax, cap);
    for (std::uint32_t r = 1; r <= rmax && !s; ++r) {
      for (const auto& cand : table.shells[r - 1]) {
        if (u.key(u.multiply(pu, cand)) == u.key(u.multiply(pv, cand))) {
          s = cand;
          out.radius_searched = r;
          break;
        }
      }
    }
    if (!s) {
      throw klawe_witness_error(
          "intersection_from_collision: no common right multiple within radius " +
              std::to_string(rmax),
          rmax);
    }
  }

  out.multiplier = *s;
  out.common = u.multiply(pu, *s);

  // Explicit membership: common = a * (rest of u_suffix times s), same for b.
  auto tail_multiplier = [&](const PairWord& suffix) {
    if (suffix.size() == 1) return *s;
    PairWord rest(suffix.begin() + 1, suffix.end());
    return u.multiply(detail::pair_word_product(u, a, b, rest), *s);
  };
  out.a_multiplier = tail_multiplier(out.u_suffix[0] == 0 ? out.u_suffix : out.v_suffix);
  out.b_multiplier = tail_multiplier(out.u_suffix[0] == 0 ? out.v_suffix : out.u_suffix);
  const Elem& first_elem = a;
  const Elem& second_elem = b;
  if (!(u.key(u.multiply(first_elem, out.a_multiplier)) == u.key(out.common)) ||
      !(u.key(u.multiply(second_elem, out.b_multiplier)) == u.key(out.common))) {
    throw error("intersection_from_collision: membership verification failed");
  }
  return out;
}

template <UniverseModel U>
struct IdealIntersection {
  std::optional<typename U::element_type> common;
  typename U::element_type a_multiplier{}, b_multiplier{};  // a*x = common = b*y when found
  std::uint32_t radius = 0;   // radius at which the intersection appeared
  std::uint32_t searched = 0; // rmax actually scanned
};

// Searches a*B_i and b*B_i for a common canonical key, radius by radius.
// Within a radius the smallest common key wins, which makes the result
// independent of traversal order.
template <UniverseModel U>
IdealIntersection<U> right_ideal_intersection_search(const U& u, const typename U::element_type& a,
                                                     const typename U::element_type& b,
                                                     std::uint32_t rmax,
                                                     std::size_t cap = default_element_cap()) {
  using Elem = typename U::element_type;
  using Key = typename U::key_type;
  if (rmax == 0) throw precondition_error("right_ideal_intersection_search: rmax must be >= 1");
  const auto table = balls(u, rmax, cap);
  std::map<Key, Elem> from_a, from_b;
  IdealIntersection<U> out;
  out.searched = rmax;
  for (std::uint32_t r = 1; r <= table.radius(); ++r) {
    for (const auto& x : table.shells[r - 1]) {
      const Elem ax = u.multiply(a, x);
      const Elem bx = u.multiply(b, x);
      from_a.emplace(u.key(ax), x);
      from_b.emplace(u.key(bx), x);
    }
    std::optional<Key> best;
    for (const auto& [k, x] : from_a) {
      if (from_b.count(k) && (!best || k < *best)) best = k;
    }
    if (best) {
      out.radius = r;
      out.a_multiplier = from_a.at(*best);
      out.b_multiplier = from_b.at(*best);
      out.common = u.multiply(a, out.a_multiplier);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Saturating a universe into a finite table.

template <UniverseModel U>
struct ClosureTable {
  FiniteSemigroup semigroup;
  std::vector<typename U::element_type> elements;  // index -> element, key order
  std::vector<std::string> labels;                 // index -> formatted element
};

// Enumerates the generated subsemigroup to saturation and rebuilds it as a
// validated table.  table_cap bounds the order (the table costs n^2 entries
// and an n^3 associativity scan).
template <UniverseModel U>
ClosureTable<U> closure_table(const U& u, std::size_t cap = default_element_cap(),
                              std::size_t table_cap = 256) {
  using Key = typename U::key_type;
  std::uint32_t radius = 4;
  for (;;) {
    const auto t = balls(u, radius, cap);
    if (!t.saturated && !t.shells.back().empty()) {
      radius *= 2;
      continue;
    }
    auto elements = t.ball(t.radius());
    if (elements.size() > table_cap) {
      throw resource_limit_error("closure_table: closure has " +
                                 std::to_string(elements.size()) +
                                 " elements, above the table cap of " +
                                 std::to_string(table_cap));
    }
    std::map<Key, std::uint32_t> index;
    for (std::uint32_t i = 0; i < elements.size(); ++i) index.emplace(u.key(elements[i]), i);
    const std::uint32_t n = static_cast<std::uint32_t>(elements.size());
    std::vector<std::uint32_t> entries(static_cast<std::size_t>(n) * n);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        const auto it = index.find(u.key(u.multiply(elements[i], elements[j])));
        if (it == index.end()) {
          throw error("closure_table: saturated set is not closed under products");
        }
        entries[static_cast<std::size_t>(i) * n + j] = it->second;
      }
    }
    ClosureTable<U> out{FiniteSemigroup(n, entries), std::move(elements), {}};
    out.labels.reserve(n);
    for (const auto& e : out.elements) out.labels.push_back(u.format(e));
    return out;
  }
}

}  // namespace amenkit
