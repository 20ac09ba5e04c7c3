#ifndef MODGLUE_TOLERANCE_HPP
#define MODGLUE_TOLERANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "validation.hpp"

namespace modglue {

/**
 * A reflexive, symmetric relation compatible with meet and join: a congruence
 * without transitivity. Stored dense; plain data so that owners can copy
 * freely. Compatibility is established by validate_tolerance, not enforced
 * on construction (parsed relations may be arbitrary).
 */
struct Tolerance {
  int n = 0;
  std::vector<std::uint8_t> rel; // n*n, symmetric with full diagonal once valid

  bool at(Elem a, Elem b) const { return rel[std::size_t(a) * n + b] != 0; }

  void set(Elem a, Elem b) {
    rel[std::size_t(a) * n + b] = 1;
    rel[std::size_t(b) * n + a] = 1;
  }

  /** a <= b and a related to b. Reflexive, but not transitive in general. */
  bool leq_rel(const FiniteLattice& L, Elem a, Elem b) const { return L.leq(a, b) && at(a, b); }

  bool operator==(const Tolerance&) const = default;
};

inline Tolerance universal_tolerance(int n) {
  return Tolerance{n, std::vector<std::uint8_t>(std::size_t(n) * n, 1)};
}

inline Tolerance equality_tolerance(int n) {
  Tolerance t{n, std::vector<std::uint8_t>(std::size_t(n) * n, 0)};
  for (int i = 0; i < n; ++i) t.rel[std::size_t(i) * n + i] = 1;
  return t;
}

/** Checks reflexivity, symmetry, and meet/join compatibility, reporting every
    violated clause with a witness tuple. Empty report iff rel is a tolerance. */
inline ValidationReport validate_tolerance(const FiniteLattice& L, const Tolerance& t) {
  const int n = L.size();
  if (t.n != n || t.rel.size() != std::size_t(n) * n)
    throw DimensionMismatch("relation is not " + std::to_string(n) + "x" + std::to_string(n));
  ValidationReport r;
  for (Elem a = 0; a < n; ++a)
    if (!t.at(a, a)) r.add("reflexivity", "missing (" + std::to_string(a) + "," + std::to_string(a) + ")");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (t.at(a, b) != t.at(b, a))
        r.add("symmetry", "(" + std::to_string(a) + "," + std::to_string(b) + ") vs (" +
                              std::to_string(b) + "," + std::to_string(a) + ")");

  std::vector<std::pair<Elem, Elem>> related;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (t.at(a, b)) related.emplace_back(a, b);
  auto tuple_str = [](Elem a, Elem b, Elem c, Elem d) {
    return "a=" + std::to_string(a) + " b=" + std::to_string(b) + " c=" + std::to_string(c) +
           " d=" + std::to_string(d);
  };
  for (auto [a, b] : related)
    for (auto [c, d] : related) {
      if (!t.at(L.join(a, c), L.join(b, d)))
        r.add("join-compatibility", tuple_str(a, b, c, d) + ": join(" + std::to_string(a) + "," +
                                        std::to_string(c) + ") not related to join(" +
                                        std::to_string(b) + "," + std::to_string(d) + ")");
      if (!t.at(L.meet(a, c), L.meet(b, d)))
        r.add("meet-compatibility", tuple_str(a, b, c, d) + ": meet(" + std::to_string(a) + "," +
                                        std::to_string(c) + ") not related to meet(" +
                                        std::to_string(b) + "," + std::to_string(d) + ")");
    }
  return r;
}

/**
 * Exhaustively verifies the six derived properties every tolerance enjoys
 * (interval restriction, the join/meet biconditional, bounded spreading).
 * For a relation accepted by validate_tolerance the report is empty; a
 * counterexample indicates an implementation bug, so this doubles as a
 * consistency self-test.
 */
inline ValidationReport check_tolerance_properties(const FiniteLattice& L, const Tolerance& t) {
  const int n = L.size();
  ValidationReport r;
  auto w2 = [](Elem x, Elem y) { return "x=" + std::to_string(x) + " y=" + std::to_string(y); };
  auto w3 = [](Elem a, Elem x, Elem y) {
    return "t=" + std::to_string(a) + " x=" + std::to_string(x) + " y=" + std::to_string(y);
  };

  // (1) x~z and x <= y <= z imply x~y and y~z.
  for (Elem x = 0; x < n && r.count("restrict-to-interval") == 0; ++x)
    for (Elem z = 0; z < n; ++z) {
      if (!t.at(x, z) || !L.leq(x, z)) continue;
      for (Elem y = 0; y < n; ++y)
        if (L.leq(x, y) && L.leq(y, z) && (!t.at(x, y) || !t.at(y, z)))
          r.add("restrict-to-interval", w2(x, z) + " middle=" + std::to_string(y));
    }
  // (2) x~y iff (x v y)~(x ^ y).
  for (Elem x = 0; x < n && r.count("join-meet-iff") == 0; ++x)
    for (Elem y = 0; y < n; ++y)
      if (t.at(x, y) != t.at(L.join(x, y), L.meet(x, y))) r.add("join-meet-iff", w2(x, y));
  // (3) t~x, t~y, t <= x^y imply t~(x v y).
  for (Elem a = 0; a < n && r.count("spread-up") == 0; ++a)
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (t.at(a, x) && t.at(a, y) && L.leq(a, L.meet(x, y)) && !t.at(a, L.join(x, y)))
          r.add("spread-up", w3(a, x, y));
  // (4) dual of (3).
  for (Elem a = 0; a < n && r.count("spread-down") == 0; ++a)
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (t.at(a, x) && t.at(a, y) && L.leq(L.join(x, y), a) && !t.at(a, L.meet(x, y)))
          r.add("spread-down", w3(a, x, y));
  // (5) x~(x v y) and y~(x v y) imply the relation among every pair of
  //     x, y, x v y, x ^ y.
  auto all_pairs = [&](Elem x, Elem y) {
    const Elem j = L.join(x, y), m = L.meet(x, y);
    const Elem q[4] = {x, y, j, m};
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        if (!t.at(q[i], q[k])) return false;
    return true;
  };
  for (Elem x = 0; x < n && r.count("square-from-join") == 0; ++x)
    for (Elem y = 0; y < n; ++y)
      if (t.at(x, L.join(x, y)) && t.at(y, L.join(x, y)) && !all_pairs(x, y))
        r.add("square-from-join", w2(x, y));
  // (6) dual of (5).
  for (Elem x = 0; x < n && r.count("square-from-meet") == 0; ++x)
    for (Elem y = 0; y < n; ++y)
      if (t.at(x, L.meet(x, y)) && t.at(y, L.meet(x, y)) && !all_pairs(x, y))
        r.add("square-from-meet", w2(x, y));
  return r;
}

} // namespace modglue

#endif
