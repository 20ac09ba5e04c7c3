#include <doctest.h>

#include "test_helpers.hpp"

using namespace modglue;
using testing::boolean;
using testing::chain;
using testing::diamond;

TEST_CASE("singleton system: the one block maps to the one block of its sum") {
  const auto r = dissection_of_glue(singleton_system(diamond(3)));
  CHECK(r.dissection.blocks.size() == 1);
  CHECK(r.witness.skeleton_map == std::vector<int>{0});
  CHECK(verify_mcs_isomorphism(singleton_system(diamond(3)), r.dissection.mcs, r.witness).ok());
}

TEST_CASE("glue-then-dissect returns an isomorphic system") {
  for (const char* s : {"chain(4)", "stacked(3,3)", "product(3,3)", "divisor(60)", "boolean(3)",
                        "stacked(3,1,3)", "product(2,4)"}) {
    CAPTURE(s);
    const auto C = dissect(gen_lattice(GenSpec::parse(s))).mcs;
    const auto r = dissection_of_glue(C);
    CHECK(verify_mcs_isomorphism(C, r.dissection.mcs, r.witness).ok());
  }
}

TEST_CASE("without monotony the round trip does not apply, and cannot") {
  const auto C = nonmonotone_example_system();
  CHECK_THROWS_AS(dissection_of_glue(C), NotMonotone);
  // and indeed no isomorphism exists: the sum is a single diamond
  const auto D = dissect(glue(C).lattice);
  CHECK(D.mcs.skeleton.size() == 1);
  CHECK_FALSE(mcs_isomorphic(D.mcs, C).has_value());
}

TEST_CASE("invalid systems are rejected up front") {
  auto C = dissect(chain(3)).mcs;
  C.connections.erase({0, 1});
  CHECK_THROWS_AS(dissection_of_glue(C), InvalidSystem);
}

TEST_CASE("dissect-then-glue returns an isomorphic lattice") {
  SUBCASE("single block") {
    const auto r = glue_of_dissection(boolean(3));
    CHECK(r.sum.lattice.size() == 8);
    CHECK(is_lattice_isomorphism(r.dissection.host, r.sum.lattice, r.chi));
  }
  SUBCASE("chain") {
    const auto r = glue_of_dissection(chain(5));
    CHECK(r.sum.lattice.size() == 5);
    CHECK(is_lattice_isomorphism(r.dissection.host, r.sum.lattice, r.chi));
  }
  SUBCASE("stacked diamonds") {
    const auto r = glue_of_dissection(gen_lattice(GenSpec::parse("stacked(3,3)")));
    CHECK(r.sum.lattice.size() == 9);
    CHECK(is_lattice_isomorphism(r.dissection.host, r.sum.lattice, r.chi));
  }
  CHECK_THROWS_AS(glue_of_dissection(testing::pentagon()), NotModular);
}

TEST_CASE("the canonical map may route through any block containing an element") {
  const auto L = gen_lattice(GenSpec::parse("stacked(2,3,2)"));
  const auto r = glue_of_dissection(L);
  for (Elem a = 0; a < L.size(); ++a)
    for (int x : r.dissection.blocks_of(a))
      CHECK(r.sum.pi(x, r.dissection.block_local(x, a)) == r.chi[a]);
}

TEST_CASE("conflation: the system of a dissection acts by join and meet in the host") {
  for (const char* s : {"stacked(3,3)", "product(3,4)", "product(2,4)", "divisor(60)",
                        "chain(5)"}) {
    CAPTURE(s);
    const auto L = gen_lattice(GenSpec::parse(s));
    const auto r = glue_of_dissection(L);
    const auto& D = r.dissection;
    const auto& C = D.mcs;
    const auto& S = D.skeleton;
    for (int x = 0; x < S.size(); ++x) {
      // the image of block x in the sum is exactly chi of the host block
      std::vector<Elem> img;
      for (Elem a : D.block_elems[x]) img.push_back(r.chi[a]);
      std::sort(img.begin(), img.end());
      std::vector<Elem> lam;
      for (Elem e = 0; e < r.sum.lattice.size(); ++e)
        if (r.sum.in_lambda(x, e)) lam.push_back(e);
      CHECK(img == lam);
      for (int y = 0; y < S.size(); ++y) {
        if (!S.leq(x, y)) continue;
        if (C.gamma_at(x, y)) {
          // connections are identities on the intersection
          for (Elem a = 0; a < int(D.block_elems[x].size()); ++a)
            if (C.in_filter(x, y, a))
              CHECK(D.block_elems[y][C.phi(x, y, a)] == D.block_elems[x][a]);
        }
        for (Elem a = 0; a < int(D.block_elems[x].size()); ++a) {
          // the total maps are join with the upper zero / meet with the lower one
          const Elem up = D.block_elems[y][C.phi_hat(x, y, a)];
          CHECK(up == L.join(D.block_elems[x][a], D.blocks[y].first));
        }
        for (Elem b = 0; b < int(D.block_elems[y].size()); ++b) {
          const Elem dn = D.block_elems[x][C.psi_hat(x, y, b)];
          CHECK(dn == L.meet(D.block_elems[y][b], D.blocks[x].second));
        }
      }
    }
  }
}

TEST_CASE("minimum elements travel with the skeleton in both directions") {
  for (const char* s : {"chain(4)", "stacked(3,3)", "product(3,3)", "boolean(2)"}) {
    CAPTURE(s);
    const auto L = gen_lattice(GenSpec::parse(s));
    const auto D = dissect(L);
    // the host minimum lies in the least block and is its zero
    CHECK(D.blocks[D.skeleton.bottom()].first == L.bottom());
    CHECK(D.blocks[D.skeleton.top()].second == L.top());
    const auto G = glue(D.mcs);
    const auto ex = sum_extremes(G);
    REQUIRE(ex.monotone_applicable);
    CHECK(ex.monotone_checks.ok());
    CHECK(*ex.bottom == ex.zero_of_block[D.skeleton.bottom()]);
    CHECK(*ex.top == ex.one_of_block[D.skeleton.top()]);
  }
}

TEST_CASE("dual hosts round trip as well") {
  for (const char* s : {"stacked(3,4)", "product(3,4)", "divisor(60)"}) {
    CAPTURE(s);
    const auto Ld = dual(gen_lattice(GenSpec::parse(s)));
    REQUIRE(is_modular(Ld));
    const auto r = glue_of_dissection(Ld);
    CHECK(is_lattice_isomorphism(Ld, r.sum.lattice, r.chi));
  }
}

TEST_CASE("round trips compose with relabelling") {
  // dissect o glue o dissect == dissect up to isomorphism, across a relabel
  const auto L = gen_lattice(GenSpec::parse("stacked(2,3)"));
  const auto L2 = testing::relabel_lattice(L, testing::random_permutation(L.size(), 99));
  const auto C = dissect(L).mcs;
  const auto C2 = dissect(L2).mcs;
  const auto r = dissection_of_glue(C);
  const auto w = mcs_isomorphic(r.dissection.mcs, C2);
  REQUIRE(w.has_value());
  CHECK(verify_mcs_isomorphism(r.dissection.mcs, C2, *w).ok());
}
