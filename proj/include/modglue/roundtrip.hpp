#ifndef MODGLUE_ROUNDTRIP_HPP
#define MODGLUE_ROUNDTRIP_HPP

#include <string>
#include <utility>
#include <vector>

#include "dissection.hpp"
#include "gluing.hpp"

namespace modglue {

/** glue(C) together with the dissection of the result and the canonical
    isomorphism from C back onto the induced system. */
struct SumDissection {
  GluedSum sum;          // glue(C)
  Dissection dissection; // dissect(sum.lattice)
  McsIsomorphism witness; // C -> dissection.mcs
};

/**
 * Runs a monotone system through gluing and dissection and constructs the
 * canonical witness: the skeleton map sends x to the block carved out by the
 * image of its block lattice, and each block map is the embedding pi_x read
 * in block-local coordinates. The witness is verified exhaustively; failure
 * is a library bug. Requires monotony: without it the blocks of the sum need
 * not correspond to the blocks of the system at all.
 */
inline SumDissection dissection_of_glue(const McSystem& C) {
  {
    const auto v = validate_mcs(C);
    if (!v.valid()) throw InvalidSystem("system is invalid:\n" + v.report.str());
    if (!v.monotone())
      throw NotMonotone("system is not monotone; the round trip does not apply:\n" +
                        v.monotony.str());
  }
  SumDissection out{glue(C), {}, {}};
  out.dissection = dissect(out.sum.lattice);
  const int n = C.skeleton.size();
  if (int(out.dissection.blocks.size()) != n)
    throw InternalTheoremViolation("sum has " + std::to_string(out.dissection.blocks.size()) +
                                   " blocks for a skeleton of " + std::to_string(n));

  out.witness.skeleton_map.assign(n, -1);
  out.witness.block_maps.assign(n, {});
  for (int x = 0; x < n; ++x) {
    int target = -1;
    for (int i = 0; i < n; ++i)
      if (out.dissection.blocks[i] == out.sum.lambda[x]) target = i;
    if (target < 0)
      throw InternalTheoremViolation("image of block " + std::to_string(x) +
                                     " is not a block of the sum");
    out.witness.skeleton_map[x] = target;
    auto& bm = out.witness.block_maps[x];
    bm.assign(C.blocks[x].size(), -1);
    for (Elem a = 0; a < C.blocks[x].size(); ++a) {
      bm[a] = out.dissection.block_local(target, out.sum.pi(x, a));
      if (bm[a] < 0)
        throw InternalTheoremViolation("embedded element escapes its block of the sum");
    }
  }

  const auto rep = verify_mcs_isomorphism(C, out.dissection.mcs, out.witness);
  if (!rep.ok())
    throw InternalTheoremViolation("canonical system isomorphism failed verification:\n" +
                                   rep.str());
  return out;
}

/** dissect(L) together with the sum of the induced system and the canonical
    element isomorphism from L onto that sum. */
struct DissectionSum {
  Dissection dissection; // dissect(L)
  GluedSum sum;          // glue(dissection.mcs)
  std::vector<Elem> chi; // host element -> sum element
};

/**
 * Runs a modular lattice through dissection and gluing and constructs the
 * canonical witness chi: each element is sent through its lowest block into
 * the sum. Verifies that the choice of block is immaterial, that chi is a
 * bijection, and that it preserves order both ways; exhaustive over all
 * pairs. Failure is a library bug.
 */
inline DissectionSum glue_of_dissection(const FiniteLattice& L) {
  DissectionSum out{dissect(L), {}, {}};
  const Dissection& D = out.dissection;
  out.sum = glue(D.mcs);
  const int n = L.size();

  if (out.sum.lattice.size() != n)
    throw InternalTheoremViolation("sum of the dissection has " +
                                   std::to_string(out.sum.lattice.size()) + " elements, host has " +
                                   std::to_string(n));

  // The class of (x, a) must depend only on the host element carrying a.
  for (int x = 0; x < D.skeleton.size(); ++x)
    for (int y = 0; y < D.skeleton.size(); ++y)
      for (Elem p = 0; p < int(D.block_elems[x].size()); ++p)
        for (Elem q = 0; q < int(D.block_elems[y].size()); ++q) {
          const bool same_class = out.sum.pi(x, p) == out.sum.pi(y, q);
          const bool same_host = D.block_elems[x][p] == D.block_elems[y][q];
          if (same_class != same_host)
            throw InternalTheoremViolation(
                "identification does not match host equality at blocks " + std::to_string(x) +
                "," + std::to_string(y));
        }

  out.chi.assign(n, -1);
  std::vector<std::uint8_t> hit(n, 0);
  for (Elem a = 0; a < n; ++a) {
    const int x = D.lowest_block[a];
    out.chi[a] = out.sum.pi(x, D.block_local(x, a));
    if (hit[out.chi[a]]) throw InternalTheoremViolation("canonical map is not injective");
    hit[out.chi[a]] = 1;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (L.leq(a, b) != out.sum.lattice.leq(out.chi[a], out.chi[b]))
        throw InternalTheoremViolation("canonical map does not preserve the order both ways");
  return out;
}

} // namespace modglue

#endif
