#ifndef MODGLUE_GENERATORS_HPP
#define MODGLUE_GENERATORS_HPP

#include <cctype>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dissection.hpp"
#include "mcs.hpp"

namespace modglue {

/**
 * A recipe for a corpus lattice or system. All kinds are deterministic for
 * a fixed (kind, params, seed); the randomized kind draws from a seeded
 * engine. Sizes are capped by max_size so accidental blowups fail fast.
 *
 * Kinds: chain(n), boolean(k), diamond(k), product(c1,...,cm) of chains,
 * divisor(n), downset_random_poset(n[,density%]), subspace(q,d),
 * stacked(k1,...,km) of diamonds sharing top/bottom elements, and
 * nonmonotone_example (a system, not a lattice).
 */
struct GenSpec {
  std::string kind;
  std::vector<long long> params;
  std::uint64_t seed = 1;
  int max_size = 64;

  static GenSpec parse(const std::string& text) {
    GenSpec s;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(unsigned(text[i]))) ++i; };
    skip();
    while (i < text.size() && (std::isalnum(unsigned(text[i])) || text[i] == '_'))
      s.kind += text[i++];
    skip();
    if (s.kind.empty()) throw UnknownKind("empty generator spec");
    if (i < text.size()) {
      if (text[i] != '(') throw UnknownKind("expected '(' in generator spec: " + text);
      ++i;
      skip();
      while (i < text.size() && text[i] != ')') {
        bool neg = false;
        if (text[i] == '-') { neg = true; ++i; }
        if (!std::isdigit(unsigned(text[i]))) throw UnknownKind("expected integer in: " + text);
        long long v = 0;
        while (i < text.size() && std::isdigit(unsigned(text[i]))) v = v * 10 + (text[i++] - '0');
        s.params.push_back(neg ? -v : v);
        skip();
        if (i < text.size() && text[i] == ',') { ++i; skip(); }
      }
      if (i >= text.size() || text[i] != ')') throw UnknownKind("missing ')' in: " + text);
      ++i;
      skip();
    }
    if (i != text.size()) throw UnknownKind("trailing characters in generator spec: " + text);
    return s;
  }

  std::string str() const {
    std::string out = kind;
    if (!params.empty()) {
      out += '(';
      for (std::size_t j = 0; j < params.size(); ++j) {
        if (j) out += ',';
        out += std::to_string(params[j]);
      }
      out += ')';
    }
    return out;
  }
};

namespace detail {

inline void cap_size(long long n, int max_size, const std::string& what) {
  if (n > max_size)
    throw TooLarge(what + " would have " + std::to_string(n) + " elements (cap " +
                   std::to_string(max_size) + ")");
}

inline FiniteLattice gen_chain(int n) {
  std::vector<CoverPair> cov;
  for (int i = 0; i + 1 < n; ++i) cov.emplace_back(i, i + 1);
  return FiniteLattice::from_covers(n, std::move(cov));
}

inline FiniteLattice gen_boolean(int k) {
  const int n = 1 << k;
  std::vector<CoverPair> cov;
  for (int m = 0; m < n; ++m)
    for (int b = 0; b < k; ++b)
      if (!(m >> b & 1)) cov.emplace_back(m, m | (1 << b));
  return FiniteLattice::from_covers(n, std::move(cov));
}

inline FiniteLattice gen_diamond(int k) {
  // 0 = bottom, 1..k = atoms, k+1 = top
  std::vector<CoverPair> cov;
  for (int i = 1; i <= k; ++i) {
    cov.emplace_back(0, i);
    cov.emplace_back(i, k + 1);
  }
  return FiniteLattice::from_covers(k + 2, std::move(cov));
}

inline FiniteLattice gen_product_of_chains(const std::vector<long long>& lens) {
  long long n = 1;
  for (long long c : lens) n *= c;
  std::vector<long long> stride(lens.size());
  long long acc = 1;
  for (int d = int(lens.size()) - 1; d >= 0; --d) {
    stride[d] = acc;
    acc *= lens[d];
  }
  std::vector<CoverPair> cov;
  for (long long e = 0; e < n; ++e) {
    long long rem = e;
    for (std::size_t d = 0; d < lens.size(); ++d) {
      const long long digit = rem / stride[d];
      rem %= stride[d];
      if (digit + 1 < lens[d]) cov.emplace_back(Elem(e), Elem(e + stride[d]));
    }
  }
  return FiniteLattice::from_covers(int(n), std::move(cov));
}

inline FiniteLattice gen_divisor(long long n) {
  std::vector<long long> divs;
  for (long long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  std::sort(divs.begin(), divs.end());
  std::vector<CoverPair> cov;
  for (std::size_t i = 0; i < divs.size(); ++i)
    for (std::size_t j = 0; j < divs.size(); ++j) {
      if (divs[j] % divs[i] != 0 || i == j) continue;
      const long long q = divs[j] / divs[i];
      bool prime = q > 1;
      for (long long p = 2; p * p <= q && prime; ++p)
        if (q % p == 0 && q != p) prime = false;
      if (prime) cov.emplace_back(Elem(i), Elem(j));
    }
  return FiniteLattice::from_covers(int(divs.size()), std::move(cov));
}

/** Downsets of a random poset, ordered by inclusion: always distributive. */
inline FiniteLattice gen_downset_random_poset(int n, int density_percent, std::uint64_t seed,
                                              int max_size) {
  if (n < 0 || n > 16) throw TooLarge("random poset limited to 16 elements");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(0, 99);
  std::vector<std::uint32_t> above(n, 0); // above[i]: strictly greater elements
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist(rng) < density_percent) above[i] |= 1u << j;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (above[i] >> k & 1) above[i] |= above[k];

  std::vector<std::uint32_t> downsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int i = 0; i < n && closed; ++i)
      if (!(mask >> i & 1) && (above[i] & mask)) closed = false; // i below a member but missing
    if (closed) downsets.push_back(mask);
  }
  cap_size((long long)downsets.size(), max_size, "downset lattice");
  const int m = int(downsets.size());
  std::vector<std::uint8_t> leq(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      leq[std::size_t(i) * m + j] = (downsets[i] & ~downsets[j]) == 0 ? 1 : 0;
  return FiniteLattice::from_order(m, std::move(leq));
}

/** The lattice of subspaces of the d-dimensional space over the prime field
    F_q, ordered by inclusion. */
inline FiniteLattice gen_subspace(int q, int d, int max_size) {
  long long nv = 1;
  for (int i = 0; i < d; ++i) nv *= q;
  if (nv > 4096) throw TooLarge("vector space too large to enumerate");
  const int vecs = int(nv);
  auto add = [&](int a, int b) {
    int out = 0, mul = 1;
    for (int i = 0; i < d; ++i) {
      out += ((a % q + b % q) % q) * mul;
      a /= q;
      b /= q;
      mul *= q;
    }
    return out;
  };

  auto span_close = [&](std::vector<char> in) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < vecs; ++a)
        for (int b = 0; b < vecs; ++b)
          if (in[a] && in[b] && !in[add(a, b)]) {
            in[add(a, b)] = 1;
            grew = true;
          }
    }
    return in;
  };

  std::set<std::vector<char>> subspaces;
  std::vector<char> zero(vecs, 0);
  zero[0] = 1;
  subspaces.insert(zero);
  std::vector<std::vector<char>> frontier{zero};
  while (!frontier.empty()) {
    std::vector<std::vector<char>> next;
    for (const auto& W : frontier)
      for (int v = 0; v < vecs; ++v) {
        if (W[v]) continue;
        auto bigger = W;
        bigger[v] = 1;
        bigger = span_close(std::move(bigger));
        if (subspaces.insert(bigger).second) next.push_back(bigger);
      }
    frontier = std::move(next);
    cap_size((long long)subspaces.size(), max_size, "subspace lattice");
  }
  std::vector<std::vector<char>> subs(subspaces.begin(), subspaces.end());
  const int m = int(subs.size());
  std::vector<std::uint8_t> leq(std::size_t(m) * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      bool sub = true;
      for (int v = 0; v < vecs && sub; ++v)
        if (subs[i][v] && !subs[j][v]) sub = false;
      leq[std::size_t(i) * m + j] = sub ? 1 : 0;
    }
  return FiniteLattice::from_order(m, std::move(leq));
}

/** Diamonds M_k stacked vertically, each sharing its bottom with the top of
    the previous one; k=1 contributes a single cover edge. */
inline FiniteLattice gen_stacked(const std::vector<long long>& ks) {
  std::vector<CoverPair> cov;
  int count = 1, top = 0;
  for (long long k : ks) {
    if (k == 1) {
      cov.emplace_back(top, count);
      top = count++;
    } else {
      const int newtop = count + int(k);
      for (int i = 0; i < k; ++i) {
        cov.emplace_back(top, count + i);
        cov.emplace_back(count + i, newtop);
      }
      top = newtop;
      count = newtop + 1;
    }
  }
  return FiniteLattice::from_covers(count, std::move(cov));
}

} // namespace detail

/** Deterministically builds the lattice described by `spec`; the result
    always passes the modular-law check. */
inline FiniteLattice gen_lattice(const GenSpec& spec) {
  using namespace detail;
  auto want = [&](std::size_t lo, std::size_t hi, const char* usage) {
    if (spec.params.size() < lo || spec.params.size() > hi)
      throw UnknownKind(std::string("usage: ") + usage);
    for (long long p : spec.params)
      if (p < 0) throw UnknownKind("negative parameter in " + spec.str());
  };
  FiniteLattice L = [&]() -> FiniteLattice {
    if (spec.kind == "chain") {
      want(1, 1, "chain(n), n >= 1");
      if (spec.params[0] < 1) throw UnknownKind("chain needs n >= 1");
      cap_size(spec.params[0], spec.max_size, "chain");
      return gen_chain(int(spec.params[0]));
    }
    if (spec.kind == "boolean") {
      want(1, 1, "boolean(k), 0 <= k <= 20");
      if (spec.params[0] > 20) throw TooLarge("boolean exponent too large");
      cap_size(1ll << spec.params[0], spec.max_size, "boolean lattice");
      return gen_boolean(int(spec.params[0]));
    }
    if (spec.kind == "diamond") {
      want(1, 1, "diamond(k), k >= 1");
      if (spec.params[0] < 1) throw UnknownKind("diamond needs k >= 1");
      cap_size(spec.params[0] + 2, spec.max_size, "diamond");
      return gen_diamond(int(spec.params[0]));
    }
    if (spec.kind == "product") {
      want(1, 8, "product(c1,...,cm), chain lengths >= 1");
      long long n = 1;
      for (long long c : spec.params) {
        if (c < 1) throw UnknownKind("product needs chain lengths >= 1");
        n *= c;
        cap_size(n, spec.max_size, "product of chains");
      }
      return gen_product_of_chains(spec.params);
    }
    if (spec.kind == "divisor") {
      want(1, 1, "divisor(n), n >= 1");
      if (spec.params[0] < 1) throw UnknownKind("divisor needs n >= 1");
      long long cnt = 0;
      for (long long d = 1; d * d <= spec.params[0]; ++d)
        if (spec.params[0] % d == 0) cnt += d * d == spec.params[0] ? 1 : 2;
      cap_size(cnt, spec.max_size, "divisor lattice");
      return gen_divisor(spec.params[0]);
    }
    if (spec.kind == "downset_random_poset" || spec.kind == "downset") {
      want(1, 2, "downset_random_poset(n[,density%])");
      const int density = spec.params.size() > 1 ? int(spec.params[1]) : 40;
      return gen_downset_random_poset(int(spec.params[0]), density, spec.seed, spec.max_size);
    }
    if (spec.kind == "subspace") {
      want(2, 2, "subspace(q,d), q prime");
      return gen_subspace(int(spec.params[0]), int(spec.params[1]), spec.max_size);
    }
    if (spec.kind == "stacked") {
      want(1, 16, "stacked(k1,...,km), ki >= 1");
      long long n = 1;
      for (long long k : spec.params) {
        if (k < 1) throw UnknownKind("stacked needs ki >= 1");
        n += k == 1 ? 1 : k + 1;
        cap_size(n, spec.max_size, "stacked diamonds");
      }
      return gen_stacked(spec.params);
    }
    throw UnknownKind("unknown lattice kind: " + spec.kind);
  }();
  if (!is_modular(L))
    throw InternalTheoremViolation("generator produced a non-modular lattice: " + spec.str());
  return L;
}

/**
 * The two-block system violating monotony: a two-element block whose whole
 * carrier is connected into a proper ideal of a diamond sitting above it.
 * Every axiom holds except the properness of the cover connection, and its
 * sum quietly collapses the lower block into the diamond.
 */
inline McSystem nonmonotone_example_system() {
  McSystem C;
  C.skeleton = detail::gen_chain(2);
  C.gamma = universal_tolerance(2);
  C.blocks.push_back(detail::gen_chain(2)); // {0 < 1}
  C.blocks.push_back(detail::gen_diamond(3)); // 0, atoms 1..3, top 4
  C.connections.emplace(std::make_pair(0, 0), identity_connection(0, C.blocks[0]));
  C.connections.emplace(std::make_pair(1, 1), identity_connection(1, C.blocks[1]));
  Connection c;
  c.lower = 0;
  c.upper = 1;
  c.filter_min = 0;            // the whole lower block: monotony fails here
  c.ideal_max = 1;             // the ideal under the first atom
  c.phi = {0, 1};
  C.connections.emplace(std::make_pair(0, 1), std::move(c));
  return C;
}

/** Builds the system described by `spec`: the dissection-induced system of
    the generated lattice, or the hand-built non-monotone example. */
inline McSystem gen_mcs(const GenSpec& spec) {
  if (spec.kind == "nonmonotone_example" || spec.kind == "nonmonotone")
    return nonmonotone_example_system();
  return dissect(gen_lattice(spec)).mcs;
}

/** The fixed test corpus: at least a hundred modular lattices of every
    generator kind, sizes 1 through 48, with pinned seeds. */
inline std::vector<GenSpec> corpus_specs() {
  std::vector<GenSpec> out;
  auto add = [&](const std::string& text, std::uint64_t seed = 1) {
    GenSpec s = GenSpec::parse(text);
    s.seed = seed;
    out.push_back(std::move(s));
  };
  for (int n = 1; n <= 10; ++n) add("chain(" + std::to_string(n) + ")");
  for (int k = 0; k <= 5; ++k) add("boolean(" + std::to_string(k) + ")");
  for (int k = 1; k <= 8; ++k) add("diamond(" + std::to_string(k) + ")");
  for (int a = 2; a <= 7; ++a)
    for (int b = a; b <= 8; ++b)
      if (a * b <= 48) add("product(" + std::to_string(a) + "," + std::to_string(b) + ")");
  add("product(2,2,2)");
  add("product(2,2,3)");
  add("product(2,2,4)");
  add("product(2,2,5)");
  add("product(2,3,3)");
  add("product(2,3,4)");
  add("product(3,3,3)");
  add("product(2,2,2,2)");
  add("product(2,2,2,3)");
  for (long long n : {2, 6, 12, 30, 36, 60, 72, 96, 120, 180, 210, 216, 240, 360, 420, 432})
    add("divisor(" + std::to_string(n) + ")");
  for (int n : {3, 4, 5, 6})
    for (std::uint64_t seed : {11u, 23u, 37u})
      add("downset_random_poset(" + std::to_string(n) + ")", seed);
  add("subspace(2,1)");
  add("subspace(2,2)");
  add("subspace(3,2)");
  add("subspace(5,2)");
  add("subspace(7,2)");
  add("subspace(2,3)");
  add("subspace(3,3)");
  add("stacked(3,3)");
  add("stacked(3,3,3)");
  add("stacked(1,3)");
  add("stacked(3,1,3)");
  add("stacked(2,3)");
  add("stacked(4,4)");
  add("stacked(2,2,2,2)");
  add("stacked(5,2,5)");
  add("stacked(3,4,5)");
  add("stacked(8,8)");
  add("stacked(6,1,6)");
  add("stacked(2,3,2,3)");
  add("stacked(3,3,3,3,3)");
  add("stacked(4,2,4,2,4)");
  add("stacked(1,1,2,1,1)");
  return out;
}

} // namespace modglue

#endif
