#ifndef MODGLUE_LATTICE_HPP
#define MODGLUE_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace modglue {

using Elem = int;
using CoverPair = std::pair<Elem, Elem>;

/**
 * An explicit finite lattice: dense order matrix, cover list, and
 * precomputed meet/join tables. Immutable after construction; all
 * operations are pure lookups or scans, safe for concurrent reads.
 *
 * Element ids are 0..n-1. The cover list is kept sorted so that equal
 * lattices compare equal field by field and serialize identically.
 */
class FiniteLattice {
public:
  /** An unset placeholder with no elements; assign a factory result to it. */
  FiniteLattice() = default;

  /** Builds the lattice whose order is the reflexive-transitive closure of
      `pairs`. The pairs must be exactly the covers of that order. */
  static FiniteLattice from_covers(int n, std::vector<CoverPair> pairs) {
    if (n < 1) throw NotALattice("a lattice needs at least one element");
    for (auto [a, b] : pairs) {
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw IndexOutOfRange("cover pair (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range for n=" + std::to_string(n));
      if (a == b) throw CycleDetected("self-loop on element " + std::to_string(a));
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i)
      if (pairs[i] == pairs[i - 1])
        throw NotCovers("duplicate cover (" + std::to_string(pairs[i].first) + "," +
                        std::to_string(pairs[i].second) + ")");

    std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[std::size_t(i) * n + i] = 1;
    for (auto [a, b] : pairs) leq[std::size_t(a) * n + b] = 1;
    closure(n, leq);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (leq[std::size_t(i) * n + j] && leq[std::size_t(j) * n + i])
          throw CycleDetected("elements " + std::to_string(j) + " and " + std::to_string(i) +
                              " lie on a cycle");
    // Each listed pair must be a genuine cover of the closed order.
    for (auto [a, b] : pairs) {
      for (int c = 0; c < n; ++c) {
        if (c == a || c == b) continue;
        if (leq[std::size_t(a) * n + c] && leq[std::size_t(c) * n + b])
          throw NotCovers("pair (" + std::to_string(a) + "," + std::to_string(b) +
                          ") is implied transitively via " + std::to_string(c));
      }
    }
    return finish(n, std::move(leq), std::move(pairs));
  }

  /** Builds a lattice from an explicit order matrix (row-major, leq[a*n+b]).
      The matrix must be a partial order whose every pair has meet and join. */
  static FiniteLattice from_order(int n, std::vector<std::uint8_t> leq) {
    if (n < 1) throw NotALattice("a lattice needs at least one element");
    if (leq.size() != std::size_t(n) * n) throw DimensionMismatch("order matrix size mismatch");
    for (int i = 0; i < n; ++i)
      if (!leq[std::size_t(i) * n + i]) throw NotALattice("order is not reflexive");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && leq[std::size_t(i) * n + j] && leq[std::size_t(j) * n + i])
          throw CycleDetected("order is not antisymmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
    auto closed = leq;
    closure(n, closed);
    if (closed != leq) throw NotALattice("order relation is not transitive");

    std::vector<CoverPair> pairs;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b || !leq[std::size_t(a) * n + b]) continue;
        bool cover = true;
        for (int c = 0; c < n && cover; ++c)
          if (c != a && c != b && leq[std::size_t(a) * n + c] && leq[std::size_t(c) * n + b])
            cover = false;
        if (cover) pairs.emplace_back(a, b);
      }
    std::sort(pairs.begin(), pairs.end());
    return finish(n, std::move(leq), std::move(pairs));
  }

  int size() const { return n_; }

  bool leq(Elem a, Elem b) const {
    check(a); check(b);
    return leq_[std::size_t(a) * n_ + b] != 0;
  }
  bool lt(Elem a, Elem b) const { return a != b && leq(a, b); }
  bool comparable(Elem a, Elem b) const { return leq(a, b) || leq(b, a); }

  Elem meet(Elem a, Elem b) const {
    check(a); check(b);
    return meet_[std::size_t(a) * n_ + b];
  }
  Elem join(Elem a, Elem b) const {
    check(a); check(b);
    return join_[std::size_t(a) * n_ + b];
  }

  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  const std::vector<CoverPair>& covers() const { return covers_; }
  bool covered_by(Elem a, Elem b) const {
    return std::binary_search(covers_.begin(), covers_.end(), CoverPair{a, b});
  }

  std::vector<Elem> upper_covers(Elem a) const {
    check(a);
    std::vector<Elem> out;
    for (auto [x, y] : covers_)
      if (x == a) out.push_back(y);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Elem> lower_covers(Elem a) const {
    check(a);
    std::vector<Elem> out;
    for (auto [x, y] : covers_)
      if (y == a) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Elem> atoms() const { return upper_covers(bottom_); }
  std::vector<Elem> coatoms() const { return lower_covers(top_); }

  /** Join of a set of elements; the empty join is the bottom. */
  Elem join_all(const std::vector<Elem>& xs) const {
    Elem r = bottom_;
    for (Elem x : xs) r = join(r, x);
    return r;
  }
  /** Meet of a set of elements; the empty meet is the top. */
  Elem meet_all(const std::vector<Elem>& xs) const {
    Elem r = top_;
    for (Elem x : xs) r = meet(r, x);
    return r;
  }

  bool operator==(const FiniteLattice& o) const {
    return n_ == o.n_ && leq_ == o.leq_ && covers_ == o.covers_ && meet_ == o.meet_ &&
           join_ == o.join_ && bottom_ == o.bottom_ && top_ == o.top_;
  }
  bool operator!=(const FiniteLattice& o) const { return !(*this == o); }

private:
  static void closure(int n, std::vector<std::uint8_t>& m) {
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (!m[std::size_t(i) * n + k]) continue;
        const auto* row_k = &m[std::size_t(k) * n];
        auto* row_i = &m[std::size_t(i) * n];
        for (int j = 0; j < n; ++j) row_i[j] |= row_k[j];
      }
  }

  static FiniteLattice finish(int n, std::vector<std::uint8_t> leq, std::vector<CoverPair> pairs) {
    FiniteLattice L;
    L.n_ = n;
    L.leq_ = std::move(leq);
    L.covers_ = std::move(pairs);
    L.meet_.assign(std::size_t(n) * n, -1);
    L.join_.assign(std::size_t(n) * n, -1);
    auto le = [&](Elem a, Elem b) { return L.leq_[std::size_t(a) * n + b] != 0; };
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        Elem m = -1, j = -1;
        for (int c = 0; c < n; ++c) {
          if (le(c, a) && le(c, b) && (m < 0 || le(m, c))) m = c;
          if (le(a, c) && le(b, c) && (j < 0 || le(c, j))) j = c;
        }
        // The greedy pick above is only valid if it really bounds every
        // candidate; re-scan to reject posets without unique meets/joins.
        for (int c = 0; c < n; ++c) {
          if (le(c, a) && le(c, b) && (m < 0 || !le(c, m)))
            throw NotALattice("elements " + std::to_string(a) + " and " + std::to_string(b) +
                              " have no greatest lower bound");
          if (le(a, c) && le(b, c) && (j < 0 || !le(j, c)))
            throw NotALattice("elements " + std::to_string(a) + " and " + std::to_string(b) +
                              " have no least upper bound");
        }
        if (m < 0)
          throw NotALattice("elements " + std::to_string(a) + " and " + std::to_string(b) +
                            " have no lower bound");
        if (j < 0)
          throw NotALattice("elements " + std::to_string(a) + " and " + std::to_string(b) +
                            " have no upper bound");
        L.meet_[std::size_t(a) * n + b] = L.meet_[std::size_t(b) * n + a] = m;
        L.join_[std::size_t(a) * n + b] = L.join_[std::size_t(b) * n + a] = j;
      }
    L.bottom_ = 0;
    L.top_ = 0;
    for (int c = 0; c < n; ++c) {
      L.bottom_ = L.meet_[std::size_t(L.bottom_) * n + c];
      L.top_ = L.join_[std::size_t(L.top_) * n + c];
    }
    return L;
  }

  void check(Elem a) const {
    if (a < 0 || a >= n_)
      throw IndexOutOfRange("element " + std::to_string(a) + " out of range for n=" +
                            std::to_string(n_));
  }

  int n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<CoverPair> covers_;
  std::vector<Elem> meet_, join_;
  Elem bottom_ = 0, top_ = 0;
};

/** A view of the interval [lo, hi] of a host lattice. */
struct Interval {
  const FiniteLattice* lattice;
  Elem lo, hi;

  bool contains(Elem e) const { return lattice->leq(lo, e) && lattice->leq(e, hi); }

  std::vector<Elem> members() const {
    std::vector<Elem> out;
    for (Elem e = 0; e < lattice->size(); ++e)
      if (contains(e)) out.push_back(e);
    return out;
  }
};

inline std::vector<Elem> interval_members(const FiniteLattice& L, Elem lo, Elem hi) {
  return Interval{&L, lo, hi}.members();
}

/** Extracts [lo, hi] as a standalone lattice. `embedding`, if given, receives
    the host element of each extracted element (ascending host ids). */
inline FiniteLattice interval_lattice(const FiniteLattice& L, Elem lo, Elem hi,
                                      std::vector<Elem>* embedding = nullptr) {
  if (!L.leq(lo, hi))
    throw NotComparable("interval bounds " + std::to_string(lo) + " and " + std::to_string(hi) +
                        " are not comparable");
  std::vector<Elem> mem = interval_members(L, lo, hi);
  const int m = int(mem.size());
  std::vector<std::uint8_t> leq(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      leq[std::size_t(i) * m + j] = L.leq(mem[i], mem[j]) ? 1 : 0;
  if (embedding) *embedding = mem;
  return FiniteLattice::from_order(m, std::move(leq));
}

/** Order reversed, meet and join swapped. Element ids are preserved, so
    dual(dual(L)) equals L field by field. */
inline FiniteLattice dual(const FiniteLattice& L) {
  const int n = L.size();
  std::vector<std::uint8_t> leq(std::size_t(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      leq[std::size_t(a) * n + b] = L.leq(b, a) ? 1 : 0;
  return FiniteLattice::from_order(n, std::move(leq));
}

/** Exhaustive modular-law check: a <= b implies a v (c ^ b) = (a v c) ^ b. */
inline bool is_modular(const FiniteLattice& L) {
  const int n = L.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!L.leq(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (L.join(a, L.meet(c, b)) != L.meet(L.join(a, c), b)) return false;
    }
  return true;
}

/** The six conditions of the complementation equivalence, each computed by
    its own exhaustive definition. For finite modular lattices all six agree;
    that equivalence is a test, never an assumption here. */
struct ComplementedProfile {
  bool top_is_join_of_atoms = false;
  bool bottom_is_meet_of_coatoms = false;
  bool complemented = false;
  bool relatively_complemented = false;
  bool atomistic = false;
  bool coatomistic = false;

  bool all() const {
    return top_is_join_of_atoms && bottom_is_meet_of_coatoms && complemented &&
           relatively_complemented && atomistic && coatomistic;
  }
  bool all_equal() const {
    return top_is_join_of_atoms == bottom_is_meet_of_coatoms &&
           bottom_is_meet_of_coatoms == complemented &&
           complemented == relatively_complemented && relatively_complemented == atomistic &&
           atomistic == coatomistic;
  }
};

inline bool is_complemented(const FiniteLattice& L) {
  const int n = L.size();
  for (Elem a = 0; a < n; ++a) {
    bool found = false;
    for (Elem b = 0; b < n && !found; ++b)
      found = L.join(a, b) == L.top() && L.meet(a, b) == L.bottom();
    if (!found) return false;
  }
  return true;
}

inline bool is_relatively_complemented(const FiniteLattice& L) {
  const int n = L.size();
  for (Elem lo = 0; lo < n; ++lo)
    for (Elem hi = 0; hi < n; ++hi) {
      if (!L.leq(lo, hi)) continue;
      for (Elem a = 0; a < n; ++a) {
        if (!(L.leq(lo, a) && L.leq(a, hi))) continue;
        bool found = false;
        for (Elem b = 0; b < n && !found; ++b) {
          if (!(L.leq(lo, b) && L.leq(b, hi))) continue;
          found = L.join(a, b) == hi && L.meet(a, b) == lo;
        }
        if (!found) return false;
      }
    }
  return true;
}

inline ComplementedProfile complemented_profile(const FiniteLattice& L) {
  ComplementedProfile p;
  const auto at = L.atoms();
  const auto co = L.coatoms();
  p.top_is_join_of_atoms = L.join_all(at) == L.top();
  p.bottom_is_meet_of_coatoms = L.meet_all(co) == L.bottom();
  p.complemented = is_complemented(L);
  p.relatively_complemented = is_relatively_complemented(L);
  p.atomistic = true;
  p.coatomistic = true;
  for (Elem a = 0; a < L.size(); ++a) {
    std::vector<Elem> below, above;
    for (Elem t : at)
      if (L.leq(t, a)) below.push_back(t);
    for (Elem t : co)
      if (L.leq(a, t)) above.push_back(t);
    if (L.join_all(below) != a) p.atomistic = false;
    if (L.meet_all(above) != a) p.coatomistic = false;
  }
  return p;
}

/** Element bijection witnessing that two lattices have the same order. */
struct LatticeIsomorphism {
  std::vector<Elem> map; // map[source element] = target element
};

inline bool is_lattice_isomorphism(const FiniteLattice& A, const FiniteLattice& B,
                                   const std::vector<Elem>& map) {
  const int n = A.size();
  if (B.size() != n || int(map.size()) != n) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (Elem a = 0; a < n; ++a) {
    if (map[a] < 0 || map[a] >= n || hit[map[a]]) return false;
    hit[map[a]] = 1;
  }
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (A.leq(a, b) != B.leq(map[a], map[b])) return false;
  return true;
}

namespace detail {

struct IsoSignature {
  int updeg, downdeg, downset, upset, height, depth;
  bool operator==(const IsoSignature&) const = default;
};

inline std::vector<IsoSignature> iso_signatures(const FiniteLattice& L) {
  const int n = L.size();
  std::vector<IsoSignature> sig(n);
  std::vector<int> height(n, 0), depth(n, 0);
  // Longest chains, propagated along covers in order of downset size.
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto downsize = [&](Elem e) {
    int k = 0;
    for (Elem c = 0; c < n; ++c) k += L.leq(c, e);
    return k;
  };
  std::vector<int> ds(n);
  for (Elem e = 0; e < n; ++e) ds[e] = downsize(e);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) { return ds[a] < ds[b]; });
  for (Elem e : order)
    for (auto [a, b] : L.covers())
      if (a == e) height[b] = std::max(height[b], height[e] + 1);
  std::reverse(order.begin(), order.end());
  for (Elem e : order)
    for (auto [a, b] : L.covers())
      if (b == e) depth[a] = std::max(depth[a], depth[e] + 1);
  for (Elem e = 0; e < n; ++e) {
    int up = 0, upd = 0, dnd = 0;
    for (Elem c = 0; c < n; ++c) up += L.leq(e, c);
    for (auto [a, b] : L.covers()) {
      if (a == e) ++upd;
      if (b == e) ++dnd;
    }
    sig[e] = {upd, dnd, ds[e], up, height[e], depth[e]};
  }
  return sig;
}

} // namespace detail

/**
 * Enumerates order isomorphisms A -> B extending `pinned` (pinned[a] = b, or
 * -1 for free), invoking `visit` on each; stops early when `visit` returns
 * true. Backtracking is pruned by per-element degree/height signatures.
 * Returns whether a visit was accepted.
 */
inline bool for_each_isomorphism(const FiniteLattice& A, const FiniteLattice& B,
                                 std::vector<Elem> pinned,
                                 const std::function<bool(const std::vector<Elem>&)>& visit) {
  const int n = A.size();
  if (B.size() != n) return false;
  if (pinned.empty()) pinned.assign(n, -1);
  if (int(pinned.size()) != n) throw DimensionMismatch("pin vector size mismatch");

  const auto sa = detail::iso_signatures(A);
  const auto sb = detail::iso_signatures(B);
  std::vector<std::vector<Elem>> cand(n);
  for (Elem a = 0; a < n; ++a) {
    if (pinned[a] >= 0) {
      cand[a] = {pinned[a]};
      continue;
    }
    for (Elem b = 0; b < n; ++b)
      if (sa[a] == sb[b]) cand[a].push_back(b);
    if (cand[a].empty()) return false;
  }

  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Elem x, Elem y) { return cand[x].size() < cand[y].size(); });

  std::vector<Elem> map(n, -1);
  std::vector<std::uint8_t> used(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return visit(map);
    const Elem a = order[i];
    for (Elem b : cand[a]) {
      if (used[b]) continue;
      bool okc = true;
      for (int j = 0; j < i && okc; ++j) {
        const Elem p = order[j];
        okc = A.leq(a, p) == B.leq(b, map[p]) && A.leq(p, a) == B.leq(map[p], b);
      }
      if (!okc) continue;
      map[a] = b;
      used[b] = 1;
      if (rec(i + 1)) return true;
      map[a] = -1;
      used[b] = 0;
    }
    return false;
  };
  return rec(0);
}

/** Some order-preserving bijection between the lattices, if one exists. */
inline std::optional<LatticeIsomorphism> lattice_isomorphism(const FiniteLattice& A,
                                                             const FiniteLattice& B) {
  std::optional<LatticeIsomorphism> out;
  for_each_isomorphism(A, B, {}, [&](const std::vector<Elem>& m) {
    out = LatticeIsomorphism{m};
    return true;
  });
  return out;
}

} // namespace modglue

#endif
