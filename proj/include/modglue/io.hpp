#ifndef MODGLUE_IO_HPP
#define MODGLUE_IO_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dissection.hpp"
#include "mcs.hpp"

namespace modglue {

namespace detail {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

inline long long parse_int(const Line& line, std::size_t idx) {
  const std::string& t = line.tokens[idx];
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (...) {
    throw ParseError(line.number, "expected an integer, got '" + t + "'");
  }
  if (pos != t.size()) throw ParseError(line.number, "expected an integer, got '" + t + "'");
  return v;
}

inline void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    throw ParseError(line.number, "'" + line.tokens[0] + "' takes " + std::to_string(n - 1) +
                                      " arguments");
}

struct RawLattice {
  int n = -1;
  std::vector<CoverPair> covers;
  int header_line = 0;
};

} // namespace detail

/** Parses a lattice file: a "lattice <n>" header and one "cover <a> <b>"
    line per cover pair; '#' starts a comment. */
inline FiniteLattice parse_lattice(const std::string& text) {
  detail::RawLattice raw;
  for (const auto& line : detail::tokenize(text)) {
    const std::string& kw = line.tokens[0];
    if (kw == "lattice") {
      detail::expect_arity(line, 2);
      if (raw.n >= 0) throw ParseError(line.number, "duplicate 'lattice' header");
      raw.n = int(detail::parse_int(line, 1));
      if (raw.n < 1) throw ParseError(line.number, "element count must be at least 1");
    } else if (kw == "cover") {
      detail::expect_arity(line, 3);
      if (raw.n < 0) throw ParseError(line.number, "'cover' before the 'lattice' header");
      const long long a = detail::parse_int(line, 1), b = detail::parse_int(line, 2);
      if (a < 0 || a >= raw.n || b < 0 || b >= raw.n)
        throw ParseError(line.number, "cover element out of range");
      raw.covers.emplace_back(Elem(a), Elem(b));
    } else {
      throw ParseError(line.number, "unexpected keyword '" + kw + "' in a lattice file");
    }
  }
  if (raw.n < 0) throw ParseError(1, "missing 'lattice <n>' header");
  return FiniteLattice::from_covers(raw.n, std::move(raw.covers));
}

inline std::string serialize_lattice(const FiniteLattice& L) {
  std::ostringstream os;
  os << "lattice " << L.size() << "\n";
  for (auto [a, b] : L.covers()) os << "cover " << a << " " << b << "\n";
  return os.str();
}

struct ParsedMcs {
  McSystem system;
  McsValidation validation; // attached, not enforced: non-monotone files load
};

/**
 * Parses a system file: a "skeleton" section and "block <x>" sections
 * holding lattice bodies, "gamma <x> <y>" lines, and "connect <x> <y>
 * <filter_min> <ideal_max>" sections listing "map <a> <b>" lines.
 * Structural dangling references throw MalformedSystem; axiom violations
 * are attached as the validation report.
 */
inline ParsedMcs parse_mcs(const std::string& text) {
  using detail::expect_arity;
  using detail::parse_int;

  std::optional<detail::RawLattice> skeleton;
  std::map<int, detail::RawLattice> blocks;
  std::vector<std::pair<std::pair<int, int>, int>> gammas; // pair, line
  struct RawConn {
    int x, y, fmin, imax, line;
    std::vector<std::pair<Elem, Elem>> maps;
  };
  std::vector<RawConn> conns;

  detail::RawLattice* lattice_target = nullptr;
  for (const auto& line : detail::tokenize(text)) {
    const std::string& kw = line.tokens[0];
    if (kw == "skeleton") {
      expect_arity(line, 1);
      if (skeleton) throw ParseError(line.number, "duplicate 'skeleton' section");
      skeleton.emplace();
      lattice_target = &*skeleton;
    } else if (kw == "block") {
      expect_arity(line, 2);
      const int x = int(parse_int(line, 1));
      if (blocks.count(x)) throw ParseError(line.number, "duplicate block " + std::to_string(x));
      lattice_target = &blocks[x];
    } else if (kw == "lattice") {
      expect_arity(line, 2);
      if (!lattice_target) throw ParseError(line.number, "'lattice' outside a section");
      if (lattice_target->n >= 0) throw ParseError(line.number, "duplicate 'lattice' header");
      lattice_target->n = int(parse_int(line, 1));
      lattice_target->header_line = line.number;
      if (lattice_target->n < 1) throw ParseError(line.number, "element count must be at least 1");
    } else if (kw == "cover") {
      expect_arity(line, 3);
      if (!lattice_target || lattice_target->n < 0)
        throw ParseError(line.number, "'cover' before a 'lattice' header");
      const long long a = parse_int(line, 1), b = parse_int(line, 2);
      if (a < 0 || a >= lattice_target->n || b < 0 || b >= lattice_target->n)
        throw ParseError(line.number, "cover element out of range");
      lattice_target->covers.emplace_back(Elem(a), Elem(b));
    } else if (kw == "gamma") {
      expect_arity(line, 3);
      gammas.push_back({{int(parse_int(line, 1)), int(parse_int(line, 2))}, line.number});
      lattice_target = nullptr;
    } else if (kw == "connect") {
      expect_arity(line, 5);
      conns.push_back({int(parse_int(line, 1)), int(parse_int(line, 2)), int(parse_int(line, 3)),
                       int(parse_int(line, 4)), line.number, {}});
      lattice_target = nullptr;
    } else if (kw == "map") {
      expect_arity(line, 3);
      if (conns.empty()) throw ParseError(line.number, "'map' before any 'connect' line");
      conns.back().maps.emplace_back(Elem(parse_int(line, 1)), Elem(parse_int(line, 2)));
    } else {
      throw ParseError(line.number, "unexpected keyword '" + kw + "' in a system file");
    }
  }

  if (!skeleton || skeleton->n < 0) throw ParseError(1, "missing 'skeleton' section");
  ParsedMcs out;
  out.system.skeleton = FiniteLattice::from_covers(skeleton->n, std::move(skeleton->covers));
  const int n = out.system.skeleton.size();

  for (int x = 0; x < n; ++x)
    if (!blocks.count(x) || blocks[x].n < 0)
      throw MalformedSystem("missing block section for skeleton element " + std::to_string(x));
  for (const auto& [x, raw] : blocks)
    if (x < 0 || x >= n)
      throw MalformedSystem("block " + std::to_string(x) + " outside the skeleton");
  for (auto& [x, raw] : blocks)
    out.system.blocks.push_back(FiniteLattice::from_covers(raw.n, std::move(raw.covers)));

  out.system.gamma = equality_tolerance(n);
  for (auto [pair, lineno] : gammas) {
    auto [x, y] = pair;
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw ParseError(lineno, "gamma element out of range");
    out.system.gamma.set(x, y);
  }

  for (auto& rc : conns) {
    if (rc.x < 0 || rc.x >= n || rc.y < 0 || rc.y >= n)
      throw MalformedSystem("connection endpoints out of range (line " + std::to_string(rc.line) +
                            ")");
    Connection c;
    c.lower = rc.x;
    c.upper = rc.y;
    const auto& Lx = out.system.blocks[rc.x];
    const auto& Ly = out.system.blocks[rc.y];
    if (rc.fmin < 0 || rc.fmin >= Lx.size() || rc.imax < 0 || rc.imax >= Ly.size())
      throw MalformedSystem("connection bounds out of range (line " + std::to_string(rc.line) +
                            ")");
    c.filter_min = rc.fmin;
    c.ideal_max = rc.imax;
    c.phi.assign(Lx.size(), -1);
    for (auto [a, b] : rc.maps) {
      if (a < 0 || a >= Lx.size() || b < 0 || b >= Ly.size())
        throw MalformedSystem("map element out of range in connection (" + std::to_string(rc.x) +
                              "," + std::to_string(rc.y) + ")");
      if (c.phi[a] >= 0)
        throw MalformedSystem("duplicate map for element " + std::to_string(a) +
                              " in connection (" + std::to_string(rc.x) + "," +
                              std::to_string(rc.y) + ")");
      c.phi[a] = b;
    }
    if (!out.system.connections.emplace(std::make_pair(rc.x, rc.y), std::move(c)).second)
      throw MalformedSystem("duplicate connection (" + std::to_string(rc.x) + "," +
                            std::to_string(rc.y) + ")");
  }
  for (int x = 0; x < n; ++x)
    if (!out.system.has_connection(x, x))
      throw MalformedSystem("missing identity connection for block " + std::to_string(x));

  out.validation = validate_mcs(out.system);
  return out;
}

inline std::string serialize_mcs(const McSystem& C) {
  std::ostringstream os;
  os << "skeleton\n" << serialize_lattice(C.skeleton);
  for (int x = 0; x < C.skeleton.size(); ++x)
    for (int y = x + 1; y < C.skeleton.size(); ++y)
      if (C.gamma_at(x, y)) os << "gamma " << x << " " << y << "\n";
  for (int x = 0; x < C.n_blocks(); ++x)
    os << "block " << x << "\n" << serialize_lattice(C.blocks[x]);
  for (const auto& [key, c] : C.connections) {
    os << "connect " << key.first << " " << key.second << " " << c.filter_min << " " << c.ideal_max
       << "\n";
    for (Elem a = 0; a < int(c.phi.size()); ++a)
      if (c.phi[a] >= 0) os << "map " << a << " " << c.phi[a] << "\n";
  }
  return os.str();
}

enum class FileKind { lattice, mcs };

/** A file is a system file iff its first significant line is 'skeleton'. */
inline FileKind detect_kind(const std::string& text) {
  const auto lines = detail::tokenize(text);
  if (!lines.empty() && lines.front().tokens[0] == "skeleton") return FileKind::mcs;
  return FileKind::lattice;
}

/**
 * DOT rendering of the Hasse diagram, edges pointing from lower to upper
 * cover. With a dissection, blocks become clusters: each element is drawn in
 * its lowest block and elements shared between blocks get a double border.
 */
inline std::string export_dot(const FiniteLattice& L, const Dissection* diss = nullptr) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  auto node = [&](Elem e, bool shared, int indent) {
    os << std::string(indent, ' ') << "n" << e << " [label=\"" << e << "\"";
    if (shared) os << ", peripheries=2";
    os << "];\n";
  };
  if (!diss) {
    for (Elem e = 0; e < L.size(); ++e) node(e, false, 2);
  } else {
    for (int i = 0; i < int(diss->blocks.size()); ++i) {
      os << "  subgraph cluster_" << i << " {\n    label=\"B" << i << " [" << diss->blocks[i].first
         << "," << diss->blocks[i].second << "]\";\n";
      for (Elem e : diss->block_elems[i]) {
        if (diss->lowest_block[e] != i) continue; // drawn in its lowest block only
        node(e, diss->blocks_of(e).size() > 1, 4);
      }
      os << "  }\n";
    }
  }
  for (auto [a, b] : L.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace modglue

#endif
