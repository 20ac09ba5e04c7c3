#include <doctest.h>

#include "test_helpers.hpp"

using namespace modglue;
using testing::boolean;
using testing::chain;
using testing::diamond;

TEST_CASE("a singleton system is valid and vacuously monotone") {
  const auto v = validate_mcs(singleton_system(boolean(2)));
  CHECK(v.valid());
  CHECK(v.monotone());
}

TEST_CASE("dissection-induced systems validate with monotony") {
  const auto v = validate_mcs(dissect(chain(4)).mcs);
  CHECK(v.valid());
  CHECK(v.monotone());
}

TEST_CASE("the example violating monotony fails exactly MC8.2") {
  const auto C = nonmonotone_example_system();
  const auto v = validate_mcs(C);
  CHECK(v.valid()); // MC1..MC8.1 all pass
  CHECK_FALSE(v.monotone());
  CHECK(v.monotony.count("MC8.2") == 1); // the filter side; the ideal is proper
}

TEST_CASE("structural damage is malformed, not invalid") {
  auto C = singleton_system(boolean(2));
  C.blocks.push_back(chain(2)); // more blocks than skeleton elements
  CHECK_THROWS_AS(validate_mcs(C), MalformedSystem);

  auto C2 = singleton_system(boolean(2));
  C2.connections.at({0, 0}).phi = {0, 1}; // wrong arity
  CHECK_THROWS_AS(validate_mcs(C2), MalformedSystem);
}

TEST_CASE("axiom violations are reported, not thrown") {
  auto C = singleton_system(boolean(2));
  auto& c = C.connections.at({0, 0});
  std::swap(c.phi[1], c.phi[2]); // still a bijection, still order-iso (atoms swap)
  CHECK_FALSE(validate_mcs(C).valid()); // but no longer the identity: MC4
  CHECK(validate_mcs(C).report.count("MC4") == 1);

  auto C3 = dissect(chain(3)).mcs;
  C3.connections.erase({0, 1});
  const auto v3 = validate_mcs(C3);
  CHECK(v3.report.count("CONN") == 1);
}

TEST_CASE("dual system: involution, validity, and expected shape") {
  const auto C = dissect(chain(3)).mcs;
  const auto D = dual_mcs(C);
  CHECK(validate_mcs(D).valid());
  CHECK(dual_mcs(D) == C);
  // the reversed skeleton swaps the two blocks
  CHECK(D.skeleton.bottom() == C.skeleton.top());
  CHECK(D.skeleton.top() == C.skeleton.bottom());
  // a chain is self-dual, so the dual system is isomorphic to the original
  CHECK(mcs_isomorphic(C, D).has_value());

  const auto S = singleton_system(boolean(2));
  CHECK(dual_mcs(dual_mcs(S)) == S);
  CHECK(mcs_isomorphic(S, dual_mcs(S)).has_value());

  const auto St = dissect(gen_lattice(GenSpec::parse("stacked(3,3)"))).mcs;
  CHECK(dual_mcs(dual_mcs(St)) == St);
}

TEST_CASE("dualizing commutes with dissection up to isomorphism") {
  for (const char* s : {"chain(4)", "stacked(3,3)", "product(3,3)", "stacked(2,3)",
                        "divisor(12)"}) {
    CAPTURE(s);
    const auto L = gen_lattice(GenSpec::parse(s));
    const auto A = dissect(dual(L)).mcs;
    const auto B = dual_mcs(dissect(L).mcs);
    const auto w = mcs_isomorphic(A, B);
    REQUIRE(w.has_value());
    CHECK(verify_mcs_isomorphism(A, B, *w).ok());
  }
}

TEST_CASE("systems differing only in block placement are not isomorphic") {
  const auto A = dissect(gen_lattice(GenSpec::parse("stacked(3,4)"))).mcs;
  const auto B = dissect(gen_lattice(GenSpec::parse("stacked(4,3)"))).mcs;
  CHECK_FALSE(mcs_isomorphic(A, B).has_value());
  // same skeletons and the same multiset of blocks, different attachment
  CHECK(A.skeleton == B.skeleton);
  CHECK(A.blocks[0].size() + A.blocks[1].size() == B.blocks[0].size() + B.blocks[1].size());
}

TEST_CASE("the dual of the non-monotone system stays valid and non-monotone") {
  const auto D = dual_mcs(nonmonotone_example_system());
  const auto v = validate_mcs(D);
  CHECK(v.valid());
  CHECK_FALSE(v.monotone());
}

TEST_CASE("total connection maps: identity, filter case, disjoint case") {
  const auto C = dissect(chain(4)).mcs; // blocks [0,1],[1,2],[2,3]; 0 and 2 disjoint
  for (int x = 0; x < C.n_blocks(); ++x)
    for (Elem a = 0; a < C.blocks[x].size(); ++a) {
      CHECK(C.phi_hat(x, x, a) == a);
      CHECK(C.psi_hat(x, x, a) == a);
    }
  // on the filter the total map agrees with the partial one
  for (Elem a = 0; a < C.blocks[0].size(); ++a)
    if (C.in_filter(0, 1, a)) CHECK(C.phi_hat(0, 1, a) == C.phi(0, 1, a));
  // blocks 0 and 2 of a chain do not overlap, and along a chain-shaped
  // skeleton the composed maps collapse everything to the extremes
  REQUIRE_FALSE(C.gamma_at(0, 2));
  for (Elem a = 0; a < C.blocks[0].size(); ++a)
    CHECK(C.phi_hat(0, 2, a) == C.blocks[2].bottom());
  for (Elem b = 0; b < C.blocks[2].size(); ++b)
    CHECK(C.psi_hat(0, 2, b) == C.blocks[0].top());
  CHECK_THROWS_AS(C.phi_hat(2, 0, 0), NotComparable);
}

namespace {

std::vector<McSystem> sample_systems() {
  std::vector<McSystem> out;
  for (const char* s : {"chain(5)", "stacked(3,3)", "stacked(3,1,3)", "product(3,3)",
                        "boolean(3)", "stacked(2,3,2)", "divisor(60)", "product(2,4)",
                        "product(2,2,3)"})
    out.push_back(dissect(gen_lattice(GenSpec::parse(s))).mcs);
  out.push_back(nonmonotone_example_system());
  return out;
}

} // namespace

TEST_CASE("filters shrink and ideals grow along refinements of a span") {
  for (const auto& C : sample_systems()) {
    const auto& S = C.skeleton;
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!S.leq(x, y) || !C.gamma_at(x, y)) continue;
        for (int z = 0; z < S.size(); ++z) {
          if (!(S.leq(x, z) && S.leq(z, y))) continue;
          CHECK(C.blocks[x].leq(C.filter_min(x, z), C.filter_min(x, y)));
          CHECK(C.blocks[y].leq(C.ideal_max(x, y), C.ideal_max(z, y)));
        }
      }
  }
}

TEST_CASE("filter/ideal intersections at joins and meets are exact") {
  for (const auto& C : sample_systems()) {
    const auto& S = C.skeleton;
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!C.gamma_at(x, y)) continue;
        const int j = S.join(x, y), m = S.meet(x, y);
        // ideals at the join intersect exactly in the ideal from the meet
        CHECK(C.blocks[j].meet(C.ideal_max(x, j), C.ideal_max(y, j)) == C.ideal_max(m, j));
        // filters from the meet intersect exactly in the filter toward the join
        CHECK(C.blocks[m].join(C.filter_min(m, x), C.filter_min(m, y)) == C.filter_min(m, j));
      }
    // two-sided strengthening: common refinements from one block
    for (int z = 0; z < S.size(); ++z)
      for (int x = 0; x < S.size(); ++x)
        for (int y = 0; y < S.size(); ++y) {
          if (!(S.leq(z, x) && C.gamma_at(z, x) && S.leq(z, y) && C.gamma_at(z, y))) continue;
          CHECK(C.blocks[z].join(C.filter_min(z, x), C.filter_min(z, y)) == C.filter_min(z, S.join(x, y)));
        }
    for (int z = 0; z < S.size(); ++z)
      for (int x = 0; x < S.size(); ++x)
        for (int y = 0; y < S.size(); ++y) {
          if (!(S.leq(x, z) && C.gamma_at(x, z) && S.leq(y, z) && C.gamma_at(y, z))) continue;
          CHECK(C.blocks[z].meet(C.ideal_max(x, z), C.ideal_max(y, z)) == C.ideal_max(S.meet(x, y), z));
        }
  }
}

TEST_CASE("total maps compose along chains and form adjoint pairs") {
  for (const auto& C : sample_systems()) {
    const auto& S = C.skeleton;
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!S.leq(x, y)) continue;
        for (int z = 0; z < S.size(); ++z) {
          if (!S.leq(y, z)) continue;
          for (Elem a = 0; a < C.blocks[x].size(); ++a)
            CHECK(C.phi_hat(x, z, a) == C.phi_hat(y, z, C.phi_hat(x, y, a)));
          for (Elem b = 0; b < C.blocks[z].size(); ++b)
            CHECK(C.psi_hat(x, z, b) == C.psi_hat(x, y, C.psi_hat(y, z, b)));
        }
        for (Elem a = 0; a < C.blocks[x].size(); ++a)
          for (Elem b = 0; b < C.blocks[y].size(); ++b)
            CHECK(C.blocks[y].leq(C.phi_hat(x, y, a), b) ==
                  C.blocks[x].leq(a, C.psi_hat(x, y, b)));
      }
  }
}

TEST_CASE("the lower adjoint preserves joins, the upper preserves meets") {
  for (const auto& C : sample_systems()) {
    const auto& S = C.skeleton;
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!S.leq(x, y)) continue;
        for (Elem a = 0; a < C.blocks[x].size(); ++a)
          for (Elem b = 0; b < C.blocks[x].size(); ++b)
            CHECK(C.phi_hat(x, y, C.blocks[x].join(a, b)) ==
                  C.blocks[y].join(C.phi_hat(x, y, a), C.phi_hat(x, y, b)));
        for (Elem a = 0; a < C.blocks[y].size(); ++a)
          for (Elem b = 0; b < C.blocks[y].size(); ++b)
            CHECK(C.psi_hat(x, y, C.blocks[y].meet(a, b)) ==
                  C.blocks[x].meet(C.psi_hat(x, y, a), C.psi_hat(x, y, b)));
        // both are monotone maps
        for (Elem a = 0; a < C.blocks[x].size(); ++a)
          for (Elem b = 0; b < C.blocks[x].size(); ++b)
            if (C.blocks[x].leq(a, b))
              CHECK(C.blocks[y].leq(C.phi_hat(x, y, a), C.phi_hat(x, y, b)));
      }
  }
}

TEST_CASE("regression: the adjoints need not preserve the other operation") {
  // A square glued below one atom of a diamond: the dissection system is
  // valid and monotone, yet meeting with the overlap top is not a join
  // homomorphism on the diamond. Guards against "both maps are full lattice
  // homomorphisms" creeping back in as an assumption.
  const auto L = FiniteLattice::from_covers(
      7, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}, {1, 5}, {3, 6}, {4, 6}, {5, 6}});
  REQUIRE(is_modular(L));
  const auto D = dissect(L);
  REQUIRE(D.blocks.size() == 2);
  REQUIRE(is_monotone(D.mcs));
  const auto& C = D.mcs;
  const auto& Y = C.blocks[1];
  bool join_broken = false, meet_broken = false;
  for (Elem a = 0; a < Y.size(); ++a)
    for (Elem b = 0; b < Y.size(); ++b) {
      if (C.psi_hat(0, 1, Y.join(a, b)) !=
          C.blocks[0].join(C.psi_hat(0, 1, a), C.psi_hat(0, 1, b)))
        join_broken = true;
      if (C.psi_hat(0, 1, Y.meet(a, b)) !=
          C.blocks[0].meet(C.psi_hat(0, 1, a), C.psi_hat(0, 1, b)))
        meet_broken = true;
    }
  CHECK(join_broken);
  CHECK_FALSE(meet_broken);
}

TEST_CASE("system isomorphism search") {
  const auto C = dissect(gen_lattice(GenSpec::parse("stacked(3,3)"))).mcs;

  const auto self = mcs_isomorphic(C, C);
  REQUIRE(self.has_value());
  CHECK(verify_mcs_isomorphism(C, C, *self).ok());

  CHECK_FALSE(mcs_isomorphic(dissect(chain(3)).mcs, dissect(chain(4)).mcs).has_value());

  McsIsomorphism planted;
  const auto R = testing::relabel_system_randomly(C, 20250614, &planted);
  CHECK(validate_mcs(R).valid());
  CHECK(verify_mcs_isomorphism(C, R, planted).ok());
  const auto found = mcs_isomorphic(C, R);
  REQUIRE(found.has_value());
  CHECK(verify_mcs_isomorphism(C, R, *found).ok());
}

TEST_CASE("a corrupted witness is rejected with the violated clause") {
  const auto C = dissect(gen_lattice(GenSpec::parse("stacked(3,3)"))).mcs;
  auto iso = *mcs_isomorphic(C, C);
  auto broken = iso;
  std::swap(broken.block_maps[0][0], broken.block_maps[0][1]); // not order-preserving
  CHECK_FALSE(verify_mcs_isomorphism(C, C, broken).ok());

  // An automorphism of one block that moves its overlap with a neighbour is
  // still a lattice isomorphism, but the connection squares stop commuting.
  const auto G = dissect(gen_lattice(GenSpec::parse("product(3,3)"))).mcs;
  McsIsomorphism id;
  id.skeleton_map.resize(G.skeleton.size());
  std::iota(id.skeleton_map.begin(), id.skeleton_map.end(), 0);
  for (const auto& B : G.blocks) {
    std::vector<Elem> m(B.size());
    std::iota(m.begin(), m.end(), 0);
    id.block_maps.push_back(std::move(m));
  }
  REQUIRE(verify_mcs_isomorphism(G, G, id).ok());

  bool exercised = false;
  for (int x = 0; x < G.n_blocks() && !exercised; ++x) {
    const auto& B = G.blocks[x];
    for (Elem a = 0; a < B.size() && !exercised; ++a)
      for (Elem b = a + 1; b < B.size() && !exercised; ++b) {
        auto tw = id;
        std::swap(tw.block_maps[x][a], tw.block_maps[x][b]);
        if (!is_lattice_isomorphism(B, B, tw.block_maps[x])) continue;
        CHECK_FALSE(verify_mcs_isomorphism(G, G, tw).ok());
        exercised = true;
      }
  }
  CHECK(exercised);
}
