#ifndef MODGLUE_DISSECTION_HPP
#define MODGLUE_DISSECTION_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "mcs.hpp"

namespace modglue {

/** (a_*, a^*): the meet of the lower covers and the join of the upper covers
    of a, with the extremes fixed. The interval [a, a^*] is always modular
    and complemented; blocks are the maximal such intervals. */
inline std::pair<Elem, Elem> stars(const FiniteLattice& L, Elem a) {
  const Elem down = a == L.bottom() ? a : L.meet_all(L.lower_covers(a));
  const Elem up = a == L.top() ? a : L.join_all(L.upper_covers(a));
  return {down, up};
}

inline Elem star_up(const FiniteLattice& L, Elem a) { return stars(L, a).second; }
inline Elem star_down(const FiniteLattice& L, Elem a) { return stars(L, a).first; }

/**
 * The dissection of a finite modular lattice: its maximal complemented
 * intervals (blocks), the skeleton lattice they form under the order of
 * their minima, the overlap tolerance (blocks intersect), and the induced
 * modular connected system whose connections are identities on the
 * intersections. Monotone by construction.
 */
struct Dissection {
  FiniteLattice host;
  std::vector<std::pair<Elem, Elem>> blocks;  // (0_B, 1_B), sorted by minimum
  FiniteLattice skeleton;                     // on block indices
  Tolerance gamma;
  McSystem mcs;
  std::vector<std::vector<Elem>> block_elems; // [i] host elements, ascending
  std::vector<int> lowest_block, highest_block; // per host element

  int block_of_min(Elem lo) const {
    for (int i = 0; i < int(blocks.size()); ++i)
      if (blocks[i].first == lo) return i;
    return -1;
  }

  /** Local id of a host element inside block i, or -1. */
  int block_local(int i, Elem host_elem) const {
    const auto& v = block_elems[i];
    auto it = std::lower_bound(v.begin(), v.end(), host_elem);
    return it != v.end() && *it == host_elem ? int(it - v.begin()) : -1;
  }

  Interval block_interval(int i) const { return {&host, blocks[i].first, blocks[i].second}; }

  /** All blocks containing the element, as skeleton ids. */
  std::vector<int> blocks_of(Elem a) const {
    std::vector<int> out;
    for (int i = 0; i < int(blocks.size()); ++i)
      if (host.leq(blocks[i].first, a) && host.leq(a, blocks[i].second)) out.push_back(i);
    return out;
  }
};

/**
 * Dissects a modular lattice. Blocks are enumerated as the intervals
 * [x, x^*] over the fixed points of x -> (x^*)_*; the skeleton meet/join are
 * cross-checked against their closed forms on block minima, and the induced
 * system is validated (including monotony). Failures of those statements
 * are bugs, not data conditions.
 */
inline Dissection dissect(const FiniteLattice& L) {
  if (!is_modular(L)) throw NotModular("dissection requires a modular lattice");
  const int n = L.size();

  std::vector<Elem> up(n), down(n);
  for (Elem a = 0; a < n; ++a) {
    auto [d, u] = stars(L, a);
    down[a] = d;
    up[a] = u;
  }

  Dissection D;
  D.host = L;
  for (Elem x = 0; x < n; ++x)
    if (down[up[x]] == x) D.blocks.emplace_back(x, up[x]);
  const int ns = int(D.blocks.size());

  for (Elem a = 0; a < n; ++a)
    if (!(L.leq(down[up[a]], a) && L.leq(a, up[a])))
      throw InternalTheoremViolation("element " + std::to_string(a) + " lies in no block");

  std::vector<std::uint8_t> sleq(std::size_t(ns) * ns, 0);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      sleq[std::size_t(i) * ns + j] = L.leq(D.blocks[i].first, D.blocks[j].first) ? 1 : 0;
  try {
    D.skeleton = FiniteLattice::from_order(ns, std::move(sleq));
  } catch (const Error& e) {
    throw InternalTheoremViolation(std::string("block minima do not form a lattice: ") + e.what());
  }
  // Closed forms for the skeleton operations on minima.
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      const Elem ji = D.blocks[D.skeleton.join(i, j)].first;
      if (ji != L.join(D.blocks[i].first, D.blocks[j].first))
        throw InternalTheoremViolation("skeleton join differs from the join of block minima");
      const Elem mi = D.blocks[D.skeleton.meet(i, j)].first;
      if (mi != down[up[L.meet(D.blocks[i].first, D.blocks[j].first)]])
        throw InternalTheoremViolation("skeleton meet differs from its closed form");
    }

  D.gamma = equality_tolerance(ns);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      const Elem lo = L.join(D.blocks[i].first, D.blocks[j].first);
      const Elem hi = L.meet(D.blocks[i].second, D.blocks[j].second);
      if (L.leq(lo, hi)) D.gamma.set(i, j);
    }

  D.mcs.skeleton = D.skeleton;
  D.mcs.gamma = D.gamma;
  D.block_elems.resize(ns);
  for (int i = 0; i < ns; ++i) {
    std::vector<Elem> emb;
    D.mcs.blocks.push_back(interval_lattice(L, D.blocks[i].first, D.blocks[i].second, &emb));
    D.block_elems[i] = std::move(emb);
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j) {
      if (!D.skeleton.leq(i, j) || !D.gamma.at(i, j)) continue;
      Connection c;
      c.lower = i;
      c.upper = j;
      c.filter_min = D.block_local(i, D.blocks[j].first);  // 0_C inside B
      c.ideal_max = D.block_local(j, D.blocks[i].second);  // 1_B inside C
      c.phi.assign(D.block_elems[i].size(), -1);
      for (Elem a = 0; a < int(D.block_elems[i].size()); ++a) {
        const int target = D.block_local(j, D.block_elems[i][a]);
        if (L.leq(D.blocks[j].first, D.block_elems[i][a])) c.phi[a] = target;
      }
      D.mcs.connections.emplace(std::make_pair(i, j), std::move(c));
    }

  D.lowest_block.resize(n);
  D.highest_block.resize(n);
  for (Elem a = 0; a < n; ++a) {
    D.lowest_block[a] = D.block_of_min(down[a]);
    D.highest_block[a] = D.block_of_min(down[up[a]]);
    if (D.lowest_block[a] < 0 || D.highest_block[a] < 0)
      throw InternalTheoremViolation("star intervals of " + std::to_string(a) + " are not blocks");
  }

  const auto v = validate_mcs(D.mcs);
  if (!v.valid())
    throw InternalTheoremViolation("induced system failed validation:\n" + v.report.str());
  if (!v.monotone())
    throw InternalTheoremViolation("induced system is not monotone:\n" + v.monotony.str());
  return D;
}

struct ElementBlocks {
  int lowest = -1, highest = -1; // extreme blocks containing the element
  std::vector<int> all_blocks;   // every block containing it
};

/** The blocks containing a host element: its lowest block, its highest, and
    the full skeleton interval between them. */
inline ElementBlocks element_blocks(const Dissection& D, Elem a) {
  ElementBlocks out;
  out.lowest = D.lowest_block[a];
  out.highest = D.highest_block[a];
  out.all_blocks = D.blocks_of(a);
  return out;
}

} // namespace modglue

#endif
