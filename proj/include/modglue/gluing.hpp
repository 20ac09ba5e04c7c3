#ifndef MODGLUE_GLUING_HPP
#define MODGLUE_GLUING_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mcs.hpp"

namespace modglue {

/** An element of one block of a system, before identification. */
struct TaggedElement {
  int block = 0;
  Elem value = 0;
  bool operator==(const TaggedElement&) const = default;
  bool operator<(const TaggedElement& o) const {
    return block != o.block ? block < o.block : value < o.value;
  }
};

/**
 * The sum lattice of a modular connected system: tagged block elements
 * modulo the identification relation, with the order generated by the
 * in-block orders. Carries the canonical block embeddings pi_x and the
 * per-block intervals Lambda_x of the sum.
 */
struct GluedSum {
  McSystem system;
  FiniteLattice lattice;                    // the sum, on equivalence classes
  std::vector<std::vector<Elem>> class_of;  // [block][block element] -> sum element
  std::vector<std::vector<Elem>> pi_inv;    // [block][sum element] -> block element or -1
  std::vector<TaggedElement> repr;          // lexicographically least member per class
  std::vector<std::pair<Elem, Elem>> lambda; // [block] -> (0_x, 1_x) as sum elements

  Elem pi(int x, Elem a) const { return class_of[x][a]; }
  bool in_lambda(int x, Elem e) const { return pi_inv[x][e] >= 0; }
  Elem pi_back(int x, Elem e) const {
    const Elem a = pi_inv[x][e];
    if (a < 0)
      throw IndexOutOfRange("sum element " + std::to_string(e) + " has no preimage in block " +
                            std::to_string(x));
    return a;
  }

  /** The set of blocks whose image contains the sum element e. */
  std::vector<int> blocks_containing(Elem e) const {
    std::vector<int> out;
    for (int x = 0; x < system.n_blocks(); ++x)
      if (in_lambda(x, e)) out.push_back(x);
    return out;
  }
};

namespace detail {

/** (x,a) ~ (y,b): both map to the same element of the block at x v y. */
inline bool sim_related(const McSystem& C, const TaggedElement& p, const TaggedElement& q) {
  if (!C.gamma_at(p.block, q.block)) return false;
  const int v = C.skeleton.join(p.block, q.block);
  if (!C.in_filter(p.block, v, p.value) || !C.in_filter(q.block, v, q.value)) return false;
  return C.phi(p.block, v, p.value) == C.phi(q.block, v, q.value);
}

} // namespace detail

/**
 * Glues a valid system (monotony not required) into its sum lattice.
 *
 * The identification relation is computed from its defining formula over all
 * pairs of tagged elements and then checked to be transitive; the order is
 * the reflexive-transitive closure of the per-block image orders. That the
 * result is a modular lattice, and that each pi_x embeds its block as an
 * interval, are re-verified rather than assumed: any failure is a library
 * bug and surfaces as InternalTheoremViolation.
 */
inline GluedSum glue(const McSystem& C) {
  {
    const auto v = validate_mcs(C);
    if (!v.valid()) throw InvalidSystem("cannot glue an invalid system:\n" + v.report.str());
  }

  std::vector<TaggedElement> tagged;
  for (int x = 0; x < C.n_blocks(); ++x)
    for (Elem a = 0; a < C.blocks[x].size(); ++a) tagged.push_back({x, a});
  const int m = int(tagged.size());

  std::vector<std::uint8_t> sim(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      const bool s = detail::sim_related(C, tagged[i], tagged[j]);
      sim[std::size_t(i) * m + j] = sim[std::size_t(j) * m + i] = s ? 1 : 0;
    }
  for (int i = 0; i < m; ++i)
    if (!sim[std::size_t(i) * m + i])
      throw InternalTheoremViolation("identification relation is not reflexive");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!sim[std::size_t(i) * m + j]) continue;
      for (int k = 0; k < m; ++k)
        if (sim[std::size_t(j) * m + k] && !sim[std::size_t(i) * m + k])
          throw InternalTheoremViolation("identification relation is not transitive");
    }

  // Classes, named by their lexicographically least member.
  std::vector<int> cls(m, -1);
  std::vector<TaggedElement> reps;
  for (int i = 0; i < m; ++i) {
    if (cls[i] >= 0) continue;
    const int id = int(reps.size());
    reps.push_back(tagged[i]); // tagged[] is in lexicographic order already
    for (int j = i; j < m; ++j)
      if (sim[std::size_t(i) * m + j]) cls[j] = id;
  }
  const int nsum = int(reps.size());

  GluedSum G;
  G.system = C;
  G.repr = std::move(reps);
  G.class_of.assign(C.n_blocks(), {});
  {
    int i = 0;
    for (int x = 0; x < C.n_blocks(); ++x) {
      G.class_of[x].resize(C.blocks[x].size());
      for (Elem a = 0; a < C.blocks[x].size(); ++a) G.class_of[x][a] = cls[i++];
    }
  }

  // Order: closure of the union of the embedded block orders.
  std::vector<std::uint8_t> leq(std::size_t(nsum) * nsum, 0);
  for (int e = 0; e < nsum; ++e) leq[std::size_t(e) * nsum + e] = 1;
  for (int x = 0; x < C.n_blocks(); ++x)
    for (Elem a = 0; a < C.blocks[x].size(); ++a)
      for (Elem b = 0; b < C.blocks[x].size(); ++b)
        if (C.blocks[x].leq(a, b))
          leq[std::size_t(G.class_of[x][a]) * nsum + G.class_of[x][b]] = 1;
  for (int k = 0; k < nsum; ++k)
    for (int i = 0; i < nsum; ++i) {
      if (!leq[std::size_t(i) * nsum + k]) continue;
      for (int j = 0; j < nsum; ++j) leq[std::size_t(i) * nsum + j] |= leq[std::size_t(k) * nsum + j];
    }

  try {
    G.lattice = FiniteLattice::from_order(nsum, std::move(leq));
  } catch (const Error& e) {
    throw InternalTheoremViolation(std::string("sum order is not a lattice: ") + e.what());
  }
  if (!is_modular(G.lattice)) throw InternalTheoremViolation("sum lattice is not modular");

  G.pi_inv.assign(C.n_blocks(), std::vector<Elem>(nsum, -1));
  for (int x = 0; x < C.n_blocks(); ++x) {
    for (Elem a = 0; a < C.blocks[x].size(); ++a) {
      Elem& slot = G.pi_inv[x][G.class_of[x][a]];
      if (slot >= 0) throw InternalTheoremViolation("block embedding is not injective");
      slot = a;
    }
    for (Elem a = 0; a < C.blocks[x].size(); ++a)
      for (Elem b = 0; b < C.blocks[x].size(); ++b)
        if (C.blocks[x].leq(a, b) != G.lattice.leq(G.class_of[x][a], G.class_of[x][b]))
          throw InternalTheoremViolation("block embedding does not preserve the order both ways");
    G.lambda.emplace_back(G.class_of[x][C.blocks[x].bottom()], G.class_of[x][C.blocks[x].top()]);
  }
  return G;
}

/** Order test by the adjoint closed form (join side): with v = x v y,
    pi_x(c) <= pi_y(d) iff v gamma y, d lies in the filter toward v, and
    phi_hat(c) <= phi(d) inside the block at v. */
inline bool sum_leq_closed_form(const GluedSum& G, const TaggedElement& p,
                                const TaggedElement& q) {
  const McSystem& C = G.system;
  const int v = C.skeleton.join(p.block, q.block);
  if (!C.gamma_at(v, q.block)) return false;
  if (!C.in_filter(q.block, v, q.value)) return false;
  return C.blocks[v].leq(C.phi_hat(p.block, v, p.value), C.phi(q.block, v, q.value));
}

/** Order test by the dual closed form (meet side): with w = x ^ y,
    pi_x(c) <= pi_y(d) iff w gamma x, c lies in the ideal from w, and
    phi_inv(c) <= psi_hat(d) inside the block at w. */
inline bool sum_leq_closed_form_dual(const GluedSum& G, const TaggedElement& p,
                                     const TaggedElement& q) {
  const McSystem& C = G.system;
  const int w = C.skeleton.meet(p.block, q.block);
  if (!C.gamma_at(w, p.block)) return false;
  if (!C.in_ideal(w, p.block, p.value)) return false;
  return C.blocks[w].leq(C.phi_inv(w, p.block, p.value), C.psi_hat(w, q.block, q.value));
}

/** Join and meet of two sum elements by the closed formulas through the
    blocks at x v y and x ^ y of the representatives. */
inline std::pair<Elem, Elem> sum_join_meet(const GluedSum& G, Elem e1, Elem e2) {
  const McSystem& C = G.system;
  const TaggedElement p = G.repr[e1], q = G.repr[e2];
  const int v = C.skeleton.join(p.block, q.block);
  const int w = C.skeleton.meet(p.block, q.block);
  const Elem join_local =
      C.blocks[v].join(C.phi_hat(p.block, v, p.value), C.phi_hat(q.block, v, q.value));
  const Elem meet_local =
      C.blocks[w].meet(C.psi_hat(w, p.block, p.value), C.psi_hat(w, q.block, q.value));
  return {G.pi(v, join_local), G.pi(w, meet_local)};
}

/**
 * An alternating chain of blocks (weakly increasing in the skeleton) and sum
 * elements, consecutive elements comparable inside one block. Witnesses
 * a <= b in the sum; used for diagnostics, not during order construction.
 */
struct AscendingSequence {
  std::vector<int> blocks;    // x_1 .. x_n
  std::vector<Elem> elements; // a_0 .. a_n, sum elements
};

inline bool is_valid_ascending(const GluedSum& G, const AscendingSequence& s) {
  if (s.elements.size() != s.blocks.size() + 1) return false;
  for (std::size_t i = 1; i < s.blocks.size(); ++i)
    if (!G.system.skeleton.leq(s.blocks[i - 1], s.blocks[i])) return false;
  for (std::size_t i = 0; i < s.blocks.size(); ++i) {
    const int x = s.blocks[i];
    const Elem a = s.elements[i], b = s.elements[i + 1];
    if (!G.in_lambda(x, a) || !G.in_lambda(x, b)) return false;
    if (!G.system.blocks[x].leq(G.pi_back(x, a), G.pi_back(x, b))) return false;
  }
  return true;
}

/**
 * Extracts an ascending sequence from a to b when a <= b: finds a path of
 * single-block steps and then raises each step's block to the running join,
 * which keeps the block list weakly increasing without changing elements.
 */
inline std::optional<AscendingSequence> ascending_witness(const GluedSum& G, Elem a, Elem b) {
  const int nsum = G.lattice.size();
  if (a == b) return AscendingSequence{{}, {a}};
  if (!G.lattice.leq(a, b)) return std::nullopt;

  // BFS over single-block comparabilities.
  std::vector<int> prev(nsum, -1), via(nsum, -1);
  std::vector<Elem> queue{a};
  prev[a] = a;
  for (std::size_t qi = 0; qi < queue.size() && prev[b] < 0; ++qi) {
    const Elem u = queue[qi];
    for (int x = 0; x < G.system.n_blocks(); ++x) {
      if (!G.in_lambda(x, u)) continue;
      for (Elem w = 0; w < G.system.blocks[x].size(); ++w) {
        if (!G.system.blocks[x].leq(G.pi_back(x, u), w)) continue;
        const Elem v = G.pi(x, w);
        if (prev[v] >= 0) continue;
        prev[v] = u;
        via[v] = x;
        queue.push_back(v);
      }
    }
  }
  if (prev[b] < 0) return std::nullopt; // unreachable for a closure-built order

  AscendingSequence s;
  for (Elem e = b; e != a; e = prev[e]) {
    s.elements.push_back(e);
    s.blocks.push_back(via[e]);
  }
  s.elements.push_back(a);
  std::reverse(s.elements.begin(), s.elements.end());
  std::reverse(s.blocks.begin(), s.blocks.end());
  for (std::size_t i = 1; i < s.blocks.size(); ++i)
    s.blocks[i] = G.system.skeleton.join(s.blocks[i], s.blocks[i - 1]);
  if (!is_valid_ascending(G, s))
    throw InternalTheoremViolation("lifted step chain is not an ascending sequence");
  return s;
}

/**
 * Extremes and block-anchor diagnostics of a sum. The monotone-only
 * assertions (bottom and top sit in the extreme blocks; x -> 0_x and
 * x -> 1_x reflect the skeleton order; the block set of each element is a
 * skeleton interval; no block image contains another) run only when the
 * system is monotone; otherwise `monotone_checks` is left empty and
 * `monotone_applicable` is false.
 */
struct SumExtremes {
  std::optional<Elem> bottom, top;
  std::vector<Elem> zero_of_block, one_of_block;  // 0_x and 1_x as sum elements
  std::vector<std::vector<int>> pi_sets;          // per sum element, its block set
  bool monotone_applicable = false;
  ValidationReport monotone_checks;
};

inline SumExtremes sum_extremes(const GluedSum& G) {
  const McSystem& C = G.system;
  SumExtremes out;
  out.bottom = G.lattice.bottom();
  out.top = G.lattice.top();
  for (int x = 0; x < C.n_blocks(); ++x) {
    out.zero_of_block.push_back(G.lambda[x].first);
    out.one_of_block.push_back(G.lambda[x].second);
  }
  for (Elem e = 0; e < G.lattice.size(); ++e) out.pi_sets.push_back(G.blocks_containing(e));

  out.monotone_applicable = is_monotone(C);
  if (!out.monotone_applicable) return out;
  auto& r = out.monotone_checks;
  const auto& S = C.skeleton;

  if (*out.bottom != out.zero_of_block[S.bottom()])
    r.add("sum-bottom", "sum bottom is not the zero of the least block");
  if (*out.top != out.one_of_block[S.top()])
    r.add("sum-top", "sum top is not the one of the greatest block");

  for (int x = 0; x < S.size(); ++x)
    for (int y = 0; y < S.size(); ++y) {
      const bool sxy = S.leq(x, y);
      if (sxy != G.lattice.leq(out.zero_of_block[x], out.zero_of_block[y]))
        r.add("zero-order", "x=" + std::to_string(x) + " y=" + std::to_string(y));
      if (sxy != G.lattice.leq(out.one_of_block[x], out.one_of_block[y]))
        r.add("one-order", "x=" + std::to_string(x) + " y=" + std::to_string(y));
      if (x != y && out.zero_of_block[x] == out.zero_of_block[y])
        r.add("zero-injective", "x=" + std::to_string(x) + " y=" + std::to_string(y));
      if (x != y && out.one_of_block[x] == out.one_of_block[y])
        r.add("one-injective", "x=" + std::to_string(x) + " y=" + std::to_string(y));
      if (x != y && G.lattice.leq(out.zero_of_block[y], out.zero_of_block[x]) &&
          G.lattice.leq(out.one_of_block[x], out.one_of_block[y]))
        r.add("lambda-incomparable",
              "image of block " + std::to_string(x) + " inside image of " + std::to_string(y));
    }

  // x is the greatest block containing 0_x and the least containing 1_x.
  for (int x = 0; x < S.size(); ++x) {
    for (int z : out.pi_sets[out.zero_of_block[x]])
      if (!S.leq(z, x)) r.add("zero-extreme", "x=" + std::to_string(x) + " z=" + std::to_string(z));
    for (int z : out.pi_sets[out.one_of_block[x]])
      if (!S.leq(x, z)) r.add("one-extreme", "x=" + std::to_string(x) + " z=" + std::to_string(z));
  }

  // Each element's block set is an interval of the skeleton.
  for (Elem e = 0; e < G.lattice.size(); ++e) {
    const auto& set = out.pi_sets[e];
    int lo = set.front(), hi = set.front();
    for (int z : set) {
      lo = S.meet(lo, z);
      hi = S.join(hi, z);
    }
    std::vector<int> expect;
    for (int z = 0; z < S.size(); ++z)
      if (S.leq(lo, z) && S.leq(z, hi)) expect.push_back(z);
    if (set != expect) r.add("pi-interval", "element " + std::to_string(e));
  }
  return out;
}

} // namespace modglue

#endif
