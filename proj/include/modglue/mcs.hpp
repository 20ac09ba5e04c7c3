#ifndef MODGLUE_MCS_HPP
#define MODGLUE_MCS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice.hpp"
#include "tolerance.hpp"
#include "validation.hpp"

namespace modglue {

/**
 * A connection between two overlapping blocks of a modular connected system:
 * an order isomorphism phi from the principal filter [filter_min, top] of the
 * lower block onto the principal ideal [bottom, ideal_max] of the upper one.
 */
struct Connection {
  int lower = 0, upper = 0; // skeleton elements, lower <= upper
  Elem filter_min = 0;      // minimum of the source filter in L_lower
  Elem ideal_max = 0;       // maximum of the target ideal in L_upper
  std::vector<Elem> phi;    // phi[a] for a in the filter, -1 elsewhere

  bool operator==(const Connection&) const = default;
};

inline Connection identity_connection(int x, const FiniteLattice& Lx) {
  Connection c;
  c.lower = c.upper = x;
  c.filter_min = Lx.bottom();
  c.ideal_max = Lx.top();
  c.phi.resize(Lx.size());
  for (Elem a = 0; a < Lx.size(); ++a) c.phi[a] = a;
  return c;
}

/**
 * A modular connected system: a skeleton lattice, an overlap tolerance gamma
 * on it, one finite modular complemented block lattice per skeleton element,
 * and a connection for every pair x <= y with x gamma y.
 *
 * The monotony axiom MC8.2 is deliberately not part of validity: systems
 * violating it still glue to a modular lattice, and one such system is needed
 * to demonstrate that monotony is what makes dissection invert gluing.
 */
struct McSystem {
  FiniteLattice skeleton;
  Tolerance gamma;
  std::vector<FiniteLattice> blocks;
  std::map<std::pair<int, int>, Connection> connections;

  int n_blocks() const { return int(blocks.size()); }

  bool gamma_at(int x, int y) const { return gamma.at(x, y); }

  bool has_connection(int x, int y) const { return connections.count({x, y}) != 0; }

  const Connection& connection(int x, int y) const {
    auto it = connections.find({x, y});
    if (it == connections.end())
      throw MalformedSystem("no connection for (" + std::to_string(x) + "," + std::to_string(y) +
                            ")");
    return it->second;
  }

  Elem filter_min(int x, int y) const { return connection(x, y).filter_min; }
  Elem ideal_max(int x, int y) const { return connection(x, y).ideal_max; }

  bool in_filter(int x, int y, Elem a) const {
    return blocks[x].leq(filter_min(x, y), a);
  }
  bool in_ideal(int x, int y, Elem b) const {
    return blocks[y].leq(b, ideal_max(x, y));
  }

  Elem phi(int x, int y, Elem a) const {
    const Elem b = connection(x, y).phi[a];
    if (b < 0)
      throw IndexOutOfRange("element " + std::to_string(a) + " outside the filter of (" +
                            std::to_string(x) + "," + std::to_string(y) + ")");
    return b;
  }

  Elem phi_inv(int x, int y, Elem b) const {
    const auto& c = connection(x, y);
    for (Elem a = 0; a < int(c.phi.size()); ++a)
      if (c.phi[a] == b) return a;
    throw IndexOutOfRange("element " + std::to_string(b) + " outside the ideal of (" +
                          std::to_string(x) + "," + std::to_string(y) + ")");
  }

  /**
   * Total extension of phi: a |-> phi(a v Z) when x gamma y, and the
   * composition of one-step maps along a saturated skeleton chain otherwise
   * (cover steps always overlap, so the steps exist; the result does not
   * depend on the chosen chain). In the sum this computes the block-y
   * coordinate of pi_x(a) joined with the zero of block y. Preserves joins
   * and forms an adjoint pair with psi_hat: phi_hat(a) <= b iff
   * a <= psi_hat(b).
   */
  Elem phi_hat(int x, int y, Elem a) const {
    require_leq(x, y);
    if (gamma_at(x, y)) return phi(x, y, blocks[x].join(a, filter_min(x, y)));
    for (int z = 0; z < n_blocks(); ++z)
      if (skeleton.covered_by(x, z) && skeleton.leq(z, y))
        return phi_hat(z, y, phi_hat(x, z, a));
    throw InternalTheoremViolation("no cover step inside a skeleton interval");
  }

  /** Adjoint of phi_hat: b |-> phi_inv(b ^ O) when x gamma y, chain
      composition otherwise. Preserves meets. */
  Elem psi_hat(int x, int y, Elem b) const {
    require_leq(x, y);
    if (gamma_at(x, y)) return phi_inv(x, y, blocks[y].meet(b, ideal_max(x, y)));
    for (int z = 0; z < n_blocks(); ++z)
      if (skeleton.covered_by(z, y) && skeleton.leq(x, z))
        return psi_hat(x, z, psi_hat(z, y, b));
    throw InternalTheoremViolation("no cover step inside a skeleton interval");
  }

  bool operator==(const McSystem&) const = default;

private:
  void require_leq(int x, int y) const {
    if (x < 0 || x >= n_blocks() || y < 0 || y >= n_blocks() || !skeleton.leq(x, y))
      throw NotComparable(std::to_string(x) + " is not below " + std::to_string(y) +
                          " in the skeleton");
  }
};

/** A one-block system; the sum of this is the block itself. */
inline McSystem singleton_system(FiniteLattice block) {
  McSystem C;
  C.skeleton = FiniteLattice::from_covers(1, {});
  C.gamma = universal_tolerance(1);
  C.connections.emplace(std::make_pair(0, 0), identity_connection(0, block));
  C.blocks.push_back(std::move(block));
  return C;
}

struct McsValidation {
  ValidationReport report;   // structure, gamma, connection coverage, MC1-MC8.1
  ValidationReport monotony; // MC8.2, tracked separately
  bool valid() const { return report.ok(); }
  bool monotone() const { return monotony.ok(); }
};

namespace detail {

inline std::string pair_str(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

inline std::vector<Elem> filter_members(const FiniteLattice& L, Elem zmin) {
  std::vector<Elem> out;
  for (Elem a = 0; a < L.size(); ++a)
    if (L.leq(zmin, a)) out.push_back(a);
  return out;
}

inline std::vector<Elem> ideal_members(const FiniteLattice& L, Elem omax) {
  std::vector<Elem> out;
  for (Elem a = 0; a < L.size(); ++a)
    if (L.leq(a, omax)) out.push_back(a);
  return out;
}

} // namespace detail

/**
 * Checks the axioms of a modular connected system, reporting a witness for
 * every failure. MC8.2 (monotony) lands in its own report since it is a
 * flag, not a validity requirement. Throws MalformedSystem when references
 * do not resolve (wrong sizes, dangling element ids).
 */
inline McsValidation validate_mcs(const McSystem& C) {
  using detail::pair_str;
  const int n = C.skeleton.size();
  if (C.n_blocks() != n)
    throw MalformedSystem("skeleton has " + std::to_string(n) + " elements but " +
                          std::to_string(C.n_blocks()) + " blocks are given");
  if (C.gamma.n != n || C.gamma.rel.size() != std::size_t(n) * n)
    throw MalformedSystem("gamma relation size mismatch");
  for (const auto& [key, c] : C.connections) {
    auto [x, y] = key;
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw MalformedSystem("connection " + pair_str(x, y) + " out of range");
    if (c.lower != x || c.upper != y)
      throw MalformedSystem("connection " + pair_str(x, y) + " is tagged " +
                            pair_str(c.lower, c.upper));
    if (!C.skeleton.leq(x, y))
      throw MalformedSystem("connection " + pair_str(x, y) + " violates the skeleton order");
    if (c.filter_min < 0 || c.filter_min >= C.blocks[x].size())
      throw MalformedSystem("connection " + pair_str(x, y) + " filter minimum out of range");
    if (c.ideal_max < 0 || c.ideal_max >= C.blocks[y].size())
      throw MalformedSystem("connection " + pair_str(x, y) + " ideal maximum out of range");
    if (int(c.phi.size()) != C.blocks[x].size())
      throw MalformedSystem("connection " + pair_str(x, y) + " map size mismatch");
    for (Elem b : c.phi)
      if (b < -1 || b >= C.blocks[y].size())
        throw MalformedSystem("connection " + pair_str(x, y) + " maps outside the upper block");
  }

  McsValidation v;
  auto& r = v.report;

  // The skeleton is a lattice by construction; what MC1 adds at finite scale
  // is that gamma really is a tolerance on it.
  r.merge(validate_tolerance(C.skeleton, C.gamma), "TOL ");

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!C.skeleton.leq(x, y)) continue;
      const bool need = C.gamma_at(x, y);
      if (need && !C.has_connection(x, y))
        r.add("CONN", "missing connection for " + pair_str(x, y));
      if (!need && C.has_connection(x, y))
        r.add("CONN", "connection " + pair_str(x, y) + " given although not gamma-related");
    }

  // MC2: every block is a finite modular complemented lattice.
  for (int x = 0; x < n; ++x) {
    if (!is_modular(C.blocks[x])) r.add("MC2", "block " + std::to_string(x) + " is not modular");
    if (!is_complemented(C.blocks[x]))
      r.add("MC2", "block " + std::to_string(x) + " is not complemented");
  }

  // MC3: each phi is an order isomorphism from its filter onto its ideal.
  for (const auto& [key, c] : C.connections) {
    auto [x, y] = key;
    const auto& Lx = C.blocks[x];
    const auto& Ly = C.blocks[y];
    const auto F = detail::filter_members(Lx, c.filter_min);
    const auto I = detail::ideal_members(Ly, c.ideal_max);
    bool shape_ok = true;
    for (Elem a = 0; a < Lx.size(); ++a) {
      const bool inF = Lx.leq(c.filter_min, a);
      if (inF != (c.phi[a] >= 0)) {
        r.add("MC3", "connection " + pair_str(x, y) + ": map domain differs from the filter at " +
                         std::to_string(a));
        shape_ok = false;
      }
    }
    if (!shape_ok) continue;
    std::vector<std::uint8_t> hit(Ly.size(), 0);
    bool bij = true;
    for (Elem a : F) {
      const Elem b = c.phi[a];
      if (!Ly.leq(b, c.ideal_max) || hit[b]) bij = false;
      else hit[b] = 1;
    }
    if (!bij || F.size() != I.size()) {
      r.add("MC3", "connection " + pair_str(x, y) + ": map is not a bijection onto the ideal");
      continue;
    }
    for (Elem a : F)
      for (Elem b : F)
        if (Lx.leq(a, b) != Ly.leq(c.phi[a], c.phi[b])) {
          r.add("MC3", "connection " + pair_str(x, y) + ": order not preserved at (" +
                           std::to_string(a) + "," + std::to_string(b) + ")");
          a = F.back(); // one witness per connection
          break;
        }
  }

  // MC4: the diagonal connections are identities.
  for (int x = 0; x < n; ++x) {
    if (!C.has_connection(x, x)) {
      r.add("MC4", "missing identity connection at " + std::to_string(x));
      continue;
    }
    if (C.connection(x, x) != identity_connection(x, C.blocks[x]))
      r.add("MC4", "connection " + pair_str(x, x) + " is not the identity on the block");
  }

  const auto conn_ok = [&](int x, int y) {
    return C.gamma_at(x, y) && C.has_connection(x, y);
  };

  // MC5: overlapping composites force gamma across the span.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (!(C.skeleton.leq(x, y) && C.skeleton.leq(y, z))) continue;
        if (!(conn_ok(x, y) && conn_ok(y, z))) continue;
        const bool overlap = C.blocks[y].leq(C.filter_min(y, z), C.ideal_max(x, y));
        if (overlap && !C.gamma_at(x, z))
          r.add("MC5", "x=" + std::to_string(x) + " y=" + std::to_string(y) +
                           " z=" + std::to_string(z) + " overlap but x not gamma z");
      }

  // MC6: connections compose along every chain x <= z <= y with x gamma y.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!C.skeleton.leq(x, y) || !conn_ok(x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (!(C.skeleton.leq(x, z) && C.skeleton.leq(z, y))) continue;
        if (!(conn_ok(x, z) && conn_ok(z, y))) continue;
        const auto& Lx = C.blocks[x];
        const auto& Lz = C.blocks[z];
        std::vector<Elem> pulled; // phi_xz^{-1}(I_xz n F_zy), computed forward
        for (Elem a : detail::filter_members(Lx, C.filter_min(x, z)))
          if (Lz.leq(C.filter_min(z, y), C.phi(x, z, a))) pulled.push_back(a);
        if (pulled != detail::filter_members(Lx, C.filter_min(x, y))) {
          r.add("MC6", "filter of " + pair_str(x, y) + " differs from the pullback through " +
                           std::to_string(z));
          continue;
        }
        std::vector<Elem> pushed;
        for (Elem a : pulled) pushed.push_back(C.phi(z, y, C.phi(x, z, a)));
        std::sort(pushed.begin(), pushed.end());
        if (pushed != detail::ideal_members(C.blocks[y], C.ideal_max(x, y))) {
          r.add("MC6", "ideal of " + pair_str(x, y) + " differs from the pushforward through " +
                           std::to_string(z));
          continue;
        }
        for (Elem a : pulled)
          if (C.phi(x, y, a) != C.phi(z, y, C.phi(x, z, a))) {
            r.add("MC6", "composition through " + std::to_string(z) + " disagrees with phi" +
                             pair_str(x, y) + " at " + std::to_string(a));
            break;
          }
      }
    }

  // MC7: for gamma-related x, y the ideals at x v y meet inside the ideal
  // from x ^ y, and dually for the filters.
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      if (!C.gamma_at(x, y)) continue;
      const int j = C.skeleton.join(x, y), m = C.skeleton.meet(x, y);
      if (!(C.skeleton.leq(x, j) && C.skeleton.leq(y, j))) continue;
      if (!(conn_ok(x, j) && conn_ok(y, j) && conn_ok(m, j) && conn_ok(m, x) && conn_ok(m, y)))
        continue;
      const auto& Lj = C.blocks[j];
      for (Elem c = 0; c < Lj.size(); ++c)
        if (Lj.leq(c, C.ideal_max(x, j)) && Lj.leq(c, C.ideal_max(y, j)) && !Lj.leq(c, C.ideal_max(m, j))) {
          r.add("MC7a", "x=" + std::to_string(x) + " y=" + std::to_string(y) + " witness " +
                            std::to_string(c));
          break;
        }
      const auto& Lm = C.blocks[m];
      for (Elem a = 0; a < Lm.size(); ++a)
        if (Lm.leq(C.filter_min(m, x), a) && Lm.leq(C.filter_min(m, y), a) && !Lm.leq(C.filter_min(m, j), a)) {
          r.add("MC7b", "x=" + std::to_string(x) + " y=" + std::to_string(y) + " witness " +
                            std::to_string(a));
          break;
        }
    }

  // MC8.1: skeleton covers are gamma-related.
  for (auto [x, y] : C.skeleton.covers())
    if (!C.gamma_at(x, y)) r.add("MC8.1", "cover " + pair_str(x, y) + " not gamma-related");

  // MC8.2 (monotony): along covers, the filter is proper in the lower block
  // and the ideal proper in the upper block.
  for (auto [x, y] : C.skeleton.covers()) {
    if (!conn_ok(x, y)) continue;
    if (C.filter_min(x, y) == C.blocks[x].bottom())
      v.monotony.add("MC8.2", "cover " + pair_str(x, y) + ": filter is all of the lower block");
    if (C.ideal_max(x, y) == C.blocks[y].top())
      v.monotony.add("MC8.2", "cover " + pair_str(x, y) + ": ideal is all of the upper block");
  }
  return v;
}

inline bool is_monotone(const McSystem& C) { return validate_mcs(C).monotone(); }

/** The dual system: skeleton and blocks dualized, connections inverted.
    An involution on the nose, since element ids are preserved. */
inline McSystem dual_mcs(const McSystem& C) {
  {
    const auto v = validate_mcs(C);
    if (!v.valid()) throw InvalidSystem("cannot dualize an invalid system:\n" + v.report.str());
  }
  McSystem D;
  D.skeleton = dual(C.skeleton);
  D.gamma = C.gamma;
  for (const auto& B : C.blocks) D.blocks.push_back(dual(B));
  for (const auto& [key, c] : C.connections) {
    auto [x, y] = key; // x <= y in C's skeleton, so y <=' x in D's
    Connection d;
    d.lower = y;
    d.upper = x;
    d.filter_min = c.ideal_max; // the ideal becomes a filter of the dual block
    d.ideal_max = c.filter_min;
    d.phi.assign(C.blocks[y].size(), -1);
    for (Elem a = 0; a < int(c.phi.size()); ++a)
      if (c.phi[a] >= 0) d.phi[c.phi[a]] = a;
    D.connections.emplace(std::make_pair(y, x), std::move(d));
  }
  const auto v = validate_mcs(D);
  if (!v.valid())
    throw InternalTheoremViolation("dual of a valid system failed validation:\n" + v.report.str());
  return D;
}

/** Witness that two systems are isomorphic: a skeleton isomorphism plus a
    compatible family of block isomorphisms. */
struct McsIsomorphism {
  std::vector<int> skeleton_map;             // chi_S
  std::vector<std::vector<Elem>> block_maps; // chi_B, one per skeleton element
};

/** Exhaustively checks the three isomorphism clauses: gamma preserved,
    filters/ideals mapped onto filters/ideals, and commuting squares with
    the connections. */
inline ValidationReport verify_mcs_isomorphism(const McSystem& C1, const McSystem& C2,
                                               const McsIsomorphism& iso) {
  using detail::pair_str;
  ValidationReport r;
  const int n = C1.skeleton.size();
  if (C2.skeleton.size() != n || int(iso.skeleton_map.size()) != n ||
      int(iso.block_maps.size()) != n) {
    r.add("shape", "skeleton sizes or witness sizes do not match");
    return r;
  }
  if (!is_lattice_isomorphism(C1.skeleton, C2.skeleton, iso.skeleton_map)) {
    r.add("skeleton", "chi_S is not a lattice isomorphism");
    return r;
  }
  for (int x = 0; x < n; ++x)
    if (!is_lattice_isomorphism(C1.blocks[x], C2.blocks[iso.skeleton_map[x]], iso.block_maps[x]))
      r.add("blocks", "chi_B at " + std::to_string(x) + " is not a lattice isomorphism");
  if (!r.ok()) return r;

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (C1.gamma_at(x, y) != C2.gamma_at(iso.skeleton_map[x], iso.skeleton_map[y]))
        r.add("clause1", "gamma differs at " + pair_str(x, y));

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!(C1.skeleton.leq(x, y) && C1.gamma_at(x, y))) continue;
      if (!C1.has_connection(x, y)) continue;
      const int x2 = iso.skeleton_map[x], y2 = iso.skeleton_map[y];
      if (!C2.has_connection(x2, y2)) {
        r.add("clause2", "no image connection for " + pair_str(x, y));
        continue;
      }
      if (iso.block_maps[x][C1.filter_min(x, y)] != C2.filter_min(x2, y2))
        r.add("clause2", "filter of " + pair_str(x, y) + " not mapped onto the image filter");
      if (iso.block_maps[y][C1.ideal_max(x, y)] != C2.ideal_max(x2, y2))
        r.add("clause2", "ideal of " + pair_str(x, y) + " not mapped onto the image ideal");
      for (Elem a : detail::filter_members(C1.blocks[x], C1.filter_min(x, y))) {
        const Elem lhs = iso.block_maps[y][C1.phi(x, y, a)];
        const Elem a2 = iso.block_maps[x][a];
        if (!C2.in_filter(x2, y2, a2)) {
          r.add("clause3", "image of filter element " + std::to_string(a) + " of " +
                               pair_str(x, y) + " escapes the image filter");
          break;
        }
        if (lhs != C2.phi(x2, y2, a2)) {
          r.add("clause3", "square does not commute at " + pair_str(x, y) + " element " +
                               std::to_string(a));
          break;
        }
      }
    }
  return r;
}

/**
 * Searches for an isomorphism between two systems by backtracking over
 * skeleton isomorphisms and per-block isomorphisms. Block choices are pinned
 * by the commuting squares with already-chosen neighbours, which keeps the
 * search tractable at the sizes this library targets.
 */
inline std::optional<McsIsomorphism> mcs_isomorphic(const McSystem& C1, const McSystem& C2) {
  const int n = C1.skeleton.size();
  if (C2.skeleton.size() != n) return std::nullopt;
  {
    // quick multiset screen on block sizes
    std::vector<int> s1, s2;
    for (int i = 0; i < n; ++i) {
      s1.push_back(C1.blocks[i].size());
      s2.push_back(C2.blocks[i].size());
    }
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }

  std::optional<McsIsomorphism> found;
  for_each_isomorphism(C1.skeleton, C2.skeleton, {}, [&](const std::vector<Elem>& smap) {
    for (int x = 0; x < n; ++x) {
      if (C1.blocks[x].size() != C2.blocks[smap[x]].size()) return false;
      for (int y = 0; y < n; ++y)
        if (C1.gamma_at(x, y) != C2.gamma_at(smap[x], smap[y])) return false;
    }

    McsIsomorphism iso;
    iso.skeleton_map = smap;
    iso.block_maps.assign(n, {});

    std::function<bool(int)> assign = [&](int x) -> bool {
      if (x == n) return true;
      // Pin block elements forced by commuting squares with assigned blocks.
      std::vector<Elem> pins(C1.blocks[x].size(), -1);
      for (int y = 0; y < n; ++y) {
        if (y == x || iso.block_maps[y].empty()) continue;
        if (C1.skeleton.leq(x, y) && C1.gamma_at(x, y) && C1.has_connection(x, y)) {
          if (!C2.has_connection(smap[x], smap[y])) return false;
          for (Elem a : detail::filter_members(C1.blocks[x], C1.filter_min(x, y))) {
            const Elem img = iso.block_maps[y][C1.phi(x, y, a)];
            if (!C2.in_ideal(smap[x], smap[y], img)) return false;
            const Elem forced = C2.phi_inv(smap[x], smap[y], img);
            if (pins[a] >= 0 && pins[a] != forced) return false;
            pins[a] = forced;
          }
        }
        if (C1.skeleton.leq(y, x) && C1.gamma_at(y, x) && C1.has_connection(y, x)) {
          if (!C2.has_connection(smap[y], smap[x])) return false;
          for (Elem a : detail::filter_members(C1.blocks[y], C1.filter_min(y, x))) {
            const Elem img = iso.block_maps[y][a];
            if (!C2.in_filter(smap[y], smap[x], img)) return false;
            const Elem forced = C2.phi(smap[y], smap[x], img);
            const Elem where = C1.phi(y, x, a);
            if (pins[where] >= 0 && pins[where] != forced) return false;
            pins[where] = forced;
          }
        }
      }
      return for_each_isomorphism(C1.blocks[x], C2.blocks[smap[x]], pins,
                                  [&](const std::vector<Elem>& bmap) {
                                    iso.block_maps[x] = bmap;
                                    if (assign(x + 1)) return true;
                                    iso.block_maps[x].clear();
                                    return false;
                                  });
    };

    if (assign(0) && verify_mcs_isomorphism(C1, C2, iso).ok()) {
      found = std::move(iso);
      return true;
    }
    return false;
  });
  return found;
}

} // namespace modglue

#endif
