#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
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

// Finite digraph with out-adjacency lists; loops allowed, parallel edges
// collapsed at construction.
class Digraph {
 public:
  explicit Digraph(std::uint32_t n) : adj_(n) {
    if (n == 0) throw precondition_error("Digraph: vertex count must be at least 1");
  }

  Digraph(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges)
      : Digraph(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
    normalize();
  }

  void add_edge(std::uint32_t u, std::uint32_t v) {
    if (u >= size() || v >= size()) {
      throw index_error("Digraph: edge endpoint outside vertex range");
    }
    adj_[u].push_back(v);
    normalized_ = false;
  }

  // Sorts and dedupes adjacency lists; called by the edge-list constructor.
  void normalize() {
    for (auto& row : adj_) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    normalized_ = true;
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(adj_.size()); }

  const std::vector<std::uint32_t>& out(std::uint32_t v) const {
    if (v >= size()) throw index_error("Digraph: vertex out of range");
    return adj_[v];
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& row : adj_) m += row.size();
    return m;
  }

  std::uint32_t out_degree_bound() const {
    std::size_t k = 0;
    for (const auto& row : adj_) k = std::max(k, row.size());
    return static_cast<std::uint32_t>(k);
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& row = out(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

 private:
  std::vector<std::vector<std::uint32_t>> adj_;
  bool normalized_ = true;
};

// Directed shortest-path distances; unreachable pairs are infinite.
class Semimetric {
 public:
  static constexpr std::uint32_t INF = std::numeric_limits<std::uint32_t>::max();

  explicit Semimetric(std::uint32_t n) : n_(n), d_(static_cast<std::size_t>(n) * n, INF) {}

  std::uint32_t size() const { return n_; }

  std::uint32_t operator()(std::uint32_t x, std::uint32_t y) const {
    if (x >= n_ || y >= n_) throw index_error("Semimetric: vertex out of range");
    return d_[static_cast<std::size_t>(x) * n_ + y];
  }

  void set(std::uint32_t x, std::uint32_t y, std::uint32_t v) {
    d_[static_cast<std::size_t>(x) * n_ + y] = v;
  }

  // First violating triple of d(x,z) <= d(x,y) + d(y,z), if any.
  std::optional<std::array<std::uint32_t, 3>> triangle_violation() const {
    for (std::uint32_t x = 0; x < n_; ++x) {
      for (std::uint32_t y = 0; y < n_; ++y) {
        const std::uint32_t dxy = (*this)(x, y);
        if (dxy == INF) continue;
        for (std::uint32_t z = 0; z < n_; ++z) {
          const std::uint32_t dyz = (*this)(y, z);
          if (dyz == INF) continue;
          const std::uint32_t dxz = (*this)(x, z);
          if (dxz == INF || dxz > dxy + dyz) return std::array<std::uint32_t, 3>{x, y, z};
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> d_;
};

inline Semimetric semimetric(const Digraph& g) {
  const std::uint32_t n = g.size();
  Semimetric d(n);
  std::vector<std::uint32_t> dist(n);
  for (std::uint32_t src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), Semimetric::INF);
    dist[src] = 0;
    std::deque<std::uint32_t> queue{src};
    while (!queue.empty()) {
      const std::uint32_t v = queue.front();
      queue.pop_front();
      for (const auto w : g.out(v)) {
        if (dist[w] == Semimetric::INF) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (std::uint32_t y = 0; y < n; ++y) d.set(src, y, dist[y]);
  }
  return d;
}

// {x outside A : some edge from A lands on x}.
inline ElemSet out_boundary(const Digraph& g, const ElemSet& a) {
  if (a.universe_size() != g.size()) {
    throw precondition_error("out_boundary: set universe does not match vertex count");
  }
  ElemSet boundary(g.size());
  for (const auto v : a.members()) {
    for (const auto w : g.out(v)) {
      if (!a.contains(w)) boundary.insert(w);
    }
  }
  return boundary;
}

inline Ratio isoperimetric_ratio(const Digraph& g, const ElemSet& a) {
  if (a.empty()) throw empty_set_error("isoperimetric_ratio: A must be nonempty");
  return Ratio::of_sizes(out_boundary(g, a).size(), a.size());
}

struct IsoperimetricResult {
  Ratio value{0};
  ElemSet minimizer;
};

// Exact minimum of |boundary(A)|/|A| over nonempty proper subsets.  On a
// finite graph the full vertex set always has empty boundary, so the proper
// restriction is what carries information; it is labeled as such in reports.
inline IsoperimetricResult proper_isoperimetric_number(const Digraph& g) {
  const std::uint32_t n = g.size();
  if (n < 2) throw precondition_error("proper_isoperimetric_number: need at least 2 vertices");
  if (n > 20) {
    throw resource_limit_error("proper_isoperimetric_number: brute force capped at 20 vertices");
  }
  std::optional<Ratio> best;
  std::uint32_t best_mask = 0;
  const std::uint32_t limit = (1u << n) - 1;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    ElemSet a(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      if (mask & (1u << v)) a.insert(v);
    }
    const Ratio r = isoperimetric_ratio(g, a);
    if (!best || r < *best) {
      best = r;
      best_mask = mask;
    }
  }
  ElemSet minimizer(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (best_mask & (1u << v)) minimizer.insert(v);
  }
  return {*best, minimizer};
}

// ---------------------------------------------------------------------------
// Cayley graphs.

// Left graph: edge s -> xs for each x in the edge set.
inline Digraph cayley_left(const FiniteSemigroup& s, const ElemSet& x) {
  Digraph g(s.size());
  for (std::uint32_t v = 0; v < s.size(); ++v) {
    for (const auto gen : x.members()) g.add_edge(v, s.mul(gen, v));
  }
  g.normalize();
  return g;
}

// Right graph: edge s -> sx.
inline Digraph cayley_right(const FiniteSemigroup& s, const ElemSet& x) {
  Digraph g(s.size());
  for (std::uint32_t v = 0; v < s.size(); ++v) {
    for (const auto gen : x.members()) g.add_edge(v, s.mul(v, gen));
  }
  g.normalize();
  return g;
}

enum class CayleySide { Left, Right };

// Cayley graph on an explicit vertex list (canonical-key order expected).
// Edges whose product falls outside the vertex list are dropped, making the
// result an honest finite truncation.
template <UniverseModel U>
Digraph cayley_on_vertices(const U& u, const std::vector<typename U::element_type>& vertices,
                           const std::vector<typename U::element_type>& edge_gens,
                           CayleySide side) {
  using Key = typename U::key_type;
  std::map<Key, std::uint32_t> index;
  for (std::uint32_t i = 0; i < vertices.size(); ++i) {
    if (!index.emplace(u.key(vertices[i]), i).second) {
      throw precondition_error("cayley_on_vertices: duplicate vertex key");
    }
  }
  Digraph g(static_cast<std::uint32_t>(vertices.size()));
  for (std::uint32_t i = 0; i < vertices.size(); ++i) {
    for (const auto& gen : edge_gens) {
      const auto prod = side == CayleySide::Right ? u.multiply(vertices[i], gen)
                                                  : u.multiply(gen, vertices[i]);
      const auto it = index.find(u.key(prod));
      if (it != index.end()) g.add_edge(i, it->second);
    }
  }
  g.normalize();
  return g;
}

template <UniverseModel U>
struct TruncatedCayley {
  Digraph graph;
  std::vector<typename U::element_type> vertices;  // index -> element, key order
};

template <UniverseModel U>
TruncatedCayley<U> cayley_ball(const U& u, std::uint32_t radius, CayleySide side,
                               std::size_t cap = default_element_cap()) {
  auto vertices = balls(u, radius, cap).ball(radius);
  Digraph g = cayley_on_vertices(u, vertices, u.generators(), side);
  return {std::move(g), std::move(vertices)};
}

// ---------------------------------------------------------------------------
// Quasi-isometry verification.
//
// Checks, for all x, y:   (1/lambda) d_B(fx, fy) - lambda <= d_A(x, y)
//                          d_A(x, y) <= lambda d_B(fx, fy) + lambda
// (the lower bound is tested as d_B <= lambda d_A + lambda^2), plus two-sided
// lambda-density of the image.  Infinite distances: the upper bound accepts
// d_A = INF only when d_B = INF; the lower bound requires d_A = INF whenever
// d_B = INF.

inline Verdict verify_qi(const Digraph& gamma, const Digraph& delta,
                         const std::vector<std::uint32_t>& phi, const Ratio& lambda) {
  if (phi.size() != gamma.size()) {
    throw precondition_error("verify_qi: map must be total on the source vertex set");
  }
  for (const auto v : phi) {
    if (v >= delta.size()) throw index_error("verify_qi: map image out of range");
  }
  if (!(Ratio(0) < lambda)) throw precondition_error("verify_qi: lambda must be positive");

  const Semimetric dg = semimetric(gamma);
  const Semimetric dd = semimetric(delta);
  const auto fmt = [](std::uint32_t d) {
    return d == Semimetric::INF ? std::string("inf") : std::to_string(d);
  };

  for (std::uint32_t x = 0; x < gamma.size(); ++x) {
    for (std::uint32_t y = 0; y < gamma.size(); ++y) {
      const std::uint32_t da = dg(x, y);
      const std::uint32_t db = dd(phi[x], phi[y]);
      bool upper_ok, lower_ok;
      if (db == Semimetric::INF) {
        upper_ok = true;                       // right side is infinite
        lower_ok = (da == Semimetric::INF);    // d_B <= lambda d_A + lambda^2 needs d_A infinite
      } else if (da == Semimetric::INF) {
        upper_ok = false;                      // finite right side cannot dominate INF
        lower_ok = true;
      } else {
        upper_ok = Ratio(static_cast<std::int64_t>(da)) <=
                   lambda * Ratio(static_cast<std::int64_t>(db)) + lambda;
        lower_ok = Ratio(static_cast<std::int64_t>(db)) <=
                   lambda * Ratio(static_cast<std::int64_t>(da)) + lambda * lambda;
      }
      if (!upper_ok || !lower_ok) {
        json w;
        w["kind"] = upper_ok ? "lower_bound" : "upper_bound";
        w["pair"] = {x, y};
        w["d_source"] = fmt(da);
        w["d_target"] = fmt(db);
        w["lambda"] = lambda.str();
        return Verdict::no("qi", w).because(
            upper_ok ? "the image pair is further apart than lambda d(x,y) + lambda^2 allows"
                     : "the source pair is further apart than lambda d(fx,fy) + lambda allows",
            "exhaustive pair scan");
      }
    }
  }

  for (std::uint32_t y = 0; y < delta.size(); ++y) {
    bool covered = false;
    for (std::uint32_t x = 0; x < gamma.size() && !covered; ++x) {
      const std::uint32_t to = dd(phi[x], y);
      const std::uint32_t from = dd(y, phi[x]);
      covered = to != Semimetric::INF && from != Semimetric::INF &&
                Ratio(static_cast<std::int64_t>(to)) <= lambda &&
                Ratio(static_cast<std::int64_t>(from)) <= lambda;
    }
    if (!covered) {
      json w;
      w["kind"] = "density";
      w["vertex"] = y;
      w["lambda"] = lambda.str();
      return Verdict::no("qi", w).because(
          "some target vertex is not within lambda of the image in both directed senses",
          "exhaustive vertex scan");
    }
  }

  json w;
  w["lambda"] = lambda.str();
  return Verdict::yes("qi", w).because(
      "both displacement bounds hold for every vertex pair and the image is lambda-dense "
      "in both directed senses",
      "exhaustive pair and vertex scan");
}

// ---------------------------------------------------------------------------
// Transfer constants and the boundary-controlled transfer of a set.

struct TransferConstants {
  std::uint64_t c = 0;  // fibre bound: sum of k^i, i = 0..floor(lambda), k = out-degree bound
  std::uint64_t d = 0;  // max walks of length <= floor(2 lambda^2 + 2 lambda) in the source
  std::uint64_t e = 0;  // max walks of length <= floor(lambda) in the target
};

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw resource_limit_error("transfer constants: walk count exceeds 64-bit range");
  }
  return a + b;
}

// Max over vertices of the number of directed walks of length <= len from the
// vertex (walks may repeat vertices; length 0 counts once).
inline std::uint64_t max_walk_count(const Digraph& g, std::uint64_t len) {
  const std::uint32_t n = g.size();
  std::vector<std::uint64_t> walks(n, 1), next(n), total(n, 1);
  for (std::uint64_t step = 1; step <= len; ++step) {
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint64_t acc = 0;
      for (const auto w : g.out(v)) acc = checked_add(acc, walks[w]);
      next[v] = acc;
    }
    walks = next;
    for (std::uint32_t v = 0; v < n; ++v) total[v] = checked_add(total[v], walks[v]);
  }
  return *std::max_element(total.begin(), total.end());
}

}  // namespace detail

inline TransferConstants transfer_constants(const Digraph& gamma, const Digraph& delta,
                                            const Ratio& lambda) {
  if (!(Ratio(0) < lambda)) throw precondition_error("transfer_constants: lambda must be positive");
  TransferConstants out;
  const std::uint64_t lam = static_cast<std::uint64_t>(lambda.floor());
  const std::uint64_t k = gamma.out_degree_bound();
  std::uint64_t power = 1;
  out.c = 1;
  for (std::uint64_t i = 1; i <= lam; ++i) {
    if (k != 0 && power > std::numeric_limits<std::uint64_t>::max() / k) {
      throw resource_limit_error("transfer constants: fibre bound exceeds 64-bit range");
    }
    power *= k;
    out.c = detail::checked_add(out.c, power);
  }
  const Ratio reach = Ratio(2) * lambda * lambda + Ratio(2) * lambda;
  out.d = detail::max_walk_count(gamma, static_cast<std::uint64_t>(reach.floor()));
  out.e = detail::max_walk_count(delta, lam);
  return out;
}

struct TransferResult {
  ElemSet q;
  TransferConstants constants;
  std::size_t boundary_a = 0, boundary_q = 0;
  bool size_bound_ok = false;      // |Q| >= |A| / C
  bool boundary_bound_ok = false;  // |bd Q| <= D E |bd A|
};

// Pushes a vertex set through a verified quasi-isometry: Q is the union of
// two-sided lambda-balls around the images of A.  Both reported bounds are
// theorems once verify_qi has passed, so a failure raises.
inline TransferResult transfer_folner_set(const Digraph& gamma, const Digraph& delta,
                                          const std::vector<std::uint32_t>& phi,
                                          const Ratio& lambda, const ElemSet& a) {
  if (a.empty()) throw empty_set_error("transfer_folner_set: A must be nonempty");
  if (a.universe_size() != gamma.size()) {
    throw precondition_error("transfer_folner_set: A lives on the wrong vertex set");
  }
  const Verdict qi = verify_qi(gamma, delta, phi, lambda);
  if (!qi.is_true()) {
    throw qi_not_verified_error("transfer_folner_set: the map is not a verified quasi-isometry");
  }

  const Semimetric dd = semimetric(delta);
  TransferResult out{ElemSet(delta.size()), transfer_constants(gamma, delta, lambda), 0, 0, false,
                     false};
  for (const auto v : a.members()) {
    const std::uint32_t center = phi[v];
    for (std::uint32_t y = 0; y < delta.size(); ++y) {
      const std::uint32_t to = dd(center, y);
      const std::uint32_t from = dd(y, center);
      if (to != Semimetric::INF && from != Semimetric::INF &&
          Ratio(static_cast<std::int64_t>(to)) <= lambda &&
          Ratio(static_cast<std::int64_t>(from)) <= lambda) {
        out.q.insert(y);
      }
    }
  }

  out.boundary_a = out_boundary(gamma, a).size();
  out.boundary_q = out_boundary(delta, out.q).size();

  // |Q| >= |A| / C, compared as C |Q| >= |A|.
  if (out.constants.c > std::numeric_limits<std::uint64_t>::max() / (out.q.size() + 1)) {
    throw resource_limit_error("transfer_folner_set: size bound product exceeds 64-bit range");
  }
  out.size_bound_ok = out.constants.c * out.q.size() >= a.size();
  if (out.constants.d != 0 && out.constants.e != 0 &&
      out.constants.d > std::numeric_limits<std::uint64_t>::max() / out.constants.e) {
    throw resource_limit_error("transfer_folner_set: boundary bound product exceeds 64-bit range");
  }
  const std::uint64_t de = out.constants.d * out.constants.e;
  if (out.boundary_a != 0 && de > std::numeric_limits<std::uint64_t>::max() / out.boundary_a) {
    throw resource_limit_error("transfer_folner_set: boundary bound product exceeds 64-bit range");
  }
  out.boundary_bound_ok = out.boundary_q <= de * out.boundary_a;
  if (!out.size_bound_ok || !out.boundary_bound_ok) {
    throw inequality_violated_error(
        "transfer_folner_set: a transfer bound failed after verification; implementation bug");
  }
  return out;
}

}  // namespace amenkit
