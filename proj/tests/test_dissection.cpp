#include <doctest.h>

#include "test_helpers.hpp"

using namespace modglue;
using testing::boolean;
using testing::chain;
using testing::diamond;

namespace {

std::vector<std::pair<std::string, FiniteLattice>> sample_hosts() {
  std::vector<std::pair<std::string, FiniteLattice>> out;
  for (const char* s : {"chain(6)", "boolean(3)", "diamond(4)", "product(3,4)", "product(2,4)",
                        "divisor(60)", "stacked(3,3)", "stacked(3,1,3)", "stacked(2,3,2)",
                        "subspace(2,3)"})
    out.emplace_back(s, gen_lattice(GenSpec::parse(s)));
  return out;
}

} // namespace

TEST_CASE("stars at the extremes and in a chain") {
  const auto C5 = chain(5);
  CHECK(stars(C5, 4) == std::pair<Elem, Elem>{3, 4}); // top: up-star stays put
  CHECK(stars(C5, 0) == std::pair<Elem, Elem>{0, 1});
  CHECK(stars(C5, 2) == std::pair<Elem, Elem>{1, 3});

  const auto B2 = boolean(2);
  CHECK(stars(B2, B2.bottom()) == std::pair<Elem, Elem>{B2.bottom(), B2.top()});
}

TEST_CASE("a complemented lattice is a single block") {
  for (const auto& L : {boolean(3), diamond(5), gen_lattice(GenSpec::parse("subspace(2,3)"))}) {
    const auto D = dissect(L);
    CHECK(D.blocks.size() == 1);
    CHECK(D.blocks[0] == std::pair<Elem, Elem>{L.bottom(), L.top()});
    CHECK(D.skeleton.size() == 1);
  }
}

TEST_CASE("a chain dissects into its edges") {
  const auto D = dissect(chain(4));
  REQUIRE(D.blocks.size() == 3);
  CHECK(D.blocks[0] == std::pair<Elem, Elem>{0, 1});
  CHECK(D.blocks[1] == std::pair<Elem, Elem>{1, 2});
  CHECK(D.blocks[2] == std::pair<Elem, Elem>{2, 3});
  CHECK(D.skeleton == chain(3));
  CHECK(D.gamma.at(0, 1));
  CHECK(D.gamma.at(1, 2));
  CHECK_FALSE(D.gamma.at(0, 2));
  for (int n = 2; n <= 10; ++n) CHECK(dissect(chain(n)).blocks.size() == std::size_t(n - 1));
}

TEST_CASE("two stacked diamonds share one element") {
  const auto D = dissect(gen_lattice(GenSpec::parse("stacked(3,3)")));
  REQUIRE(D.blocks.size() == 2);
  CHECK(D.blocks[0] == std::pair<Elem, Elem>{0, 4});
  CHECK(D.blocks[1] == std::pair<Elem, Elem>{4, 8});
  CHECK(D.skeleton == chain(2));
  CHECK(D.gamma.at(0, 1));
  const auto common = interval_members(D.host, 4, 4);
  CHECK(common == std::vector<Elem>{4});
  // the induced connection is the identity on that shared element
  CHECK(D.mcs.phi(0, 1, D.block_local(0, 4)) == D.block_local(1, 4));
}

TEST_CASE("dissection refuses non-modular input") {
  CHECK_THROWS_AS(dissect(testing::pentagon()), NotModular);
}

TEST_CASE("star properties hold exhaustively") {
  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    for (Elem a = 0; a < L.size(); ++a) {
      const auto [ad, au] = stars(L, a);
      CHECK(L.leq(a, star_up(L, star_down(L, a))));
      CHECK(L.leq(star_up(L, star_down(L, a)), au));                 // a <= (a_*)^* <= a^*
      CHECK(L.leq(ad, star_down(L, star_up(L, a))));                 // a_* <= (a^*)_* <= a
      CHECK(L.leq(star_down(L, star_up(L, a)), a));
      CHECK(star_up(L, star_down(L, au)) == au);                     // ((a^*)_*)^* = a^*
      CHECK(star_down(L, star_up(L, ad)) == ad);                     // ((a_*)^*)_* = a_*
      for (Elem b = 0; b < L.size(); ++b) {
        const auto [bd, bu] = stars(L, b);
        if (L.leq(a, b)) {
          CHECK(L.leq(au, bu));
          CHECK(L.leq(ad, bd));
        }
        // star images of block minima are closed under join, maxima under meet
        if (star_down(L, star_up(L, a)) == a && star_down(L, star_up(L, b)) == b) {
          const Elem j = L.join(a, b);
          CHECK(star_down(L, star_up(L, j)) == j);
        }
        if (star_up(L, star_down(L, a)) == a && star_up(L, star_down(L, b)) == b) {
          const Elem m = L.meet(a, b);
          CHECK(star_up(L, star_down(L, m)) == m);
        }
        CHECK(L.join(ad, bd) == star_down(L, L.join(a, b)));
        CHECK(L.meet(au, bu) == star_up(L, L.meet(a, b)));
      }
    }
  }
}

TEST_CASE("regression: the star maps are not adjoints of each other") {
  // the product of a 3-chain and a 2-chain, with x = (0,1) and y = (2,1)
  const auto L = gen_lattice(GenSpec::parse("product(3,2)"));
  const Elem x = 1, y = 5;
  CHECK(stars(L, x) == std::pair<Elem, Elem>{0, 3});  // x_* = (0,0), x^* = (1,1)
  CHECK(stars(L, y) == std::pair<Elem, Elem>{2, 5});  // y_* = (1,0), y^* = (2,1)
  CHECK(L.leq(stars(L, x).first, y));        // x_* <= y holds ...
  CHECK_FALSE(L.leq(x, stars(L, y).first));  // ... while x <= y_* fails
}

TEST_CASE("blocks are precisely the maximal complemented intervals") {
  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    const auto D = dissect(L);
    for (auto [lo, hi] : D.blocks) {
      CHECK(complemented_profile(interval_lattice(L, lo, hi)).all());
      for (Elem c : L.lower_covers(lo))
        CHECK_FALSE(is_complemented(interval_lattice(L, c, hi)));
      for (Elem c : L.upper_covers(hi))
        CHECK_FALSE(is_complemented(interval_lattice(L, lo, c)));
    }
    // block iff fixed point, in both star orders
    for (Elem x = 0; x < L.size(); ++x)
      for (Elem y = 0; y < L.size(); ++y) {
        const bool listed =
            std::find(D.blocks.begin(), D.blocks.end(), std::pair<Elem, Elem>{x, y}) !=
            D.blocks.end();
        CHECK(listed == (star_up(L, x) == y && star_down(L, y) == x));
      }
  }
}

TEST_CASE("blocks cover the host and overlap in intervals") {
  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    const auto D = dissect(L);
    for (Elem a = 0; a < L.size(); ++a) CHECK_FALSE(D.blocks_of(a).empty());
    for (int i = 0; i < int(D.blocks.size()); ++i)
      for (int j = 0; j < int(D.blocks.size()); ++j) {
        std::vector<Elem> common;
        for (Elem a = 0; a < L.size(); ++a) {
          const auto in = [&](int k) {
            return L.leq(D.blocks[k].first, a) && L.leq(a, D.blocks[k].second);
          };
          if (in(i) && in(j)) common.push_back(a);
        }
        CHECK(common.empty() == !D.gamma.at(i, j));
        if (!common.empty() && D.skeleton.leq(i, j))
          CHECK(common == interval_members(L, D.blocks[j].first, D.blocks[i].second));
        // overlap depends only on the skeleton meet and join
        std::vector<Elem> viamj;
        const int m = D.skeleton.meet(i, j), v = D.skeleton.join(i, j);
        for (Elem a = 0; a < L.size(); ++a) {
          const auto in = [&](int k) {
            return L.leq(D.blocks[k].first, a) && L.leq(a, D.blocks[k].second);
          };
          if (in(m) && in(v)) viamj.push_back(a);
        }
        CHECK(common == viamj);
      }
    // distinct blocks have distinct minima and distinct maxima by listing
    for (std::size_t i = 1; i < D.blocks.size(); ++i)
      CHECK(D.blocks[i - 1].first < D.blocks[i].first);
  }
}

TEST_CASE("between comparable blocks the overlap passes through the middle") {
  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    const auto D = dissect(L);
    const int ns = int(D.blocks.size());
    for (int x = 0; x < ns; ++x)
      for (int z = 0; z < ns; ++z)
        for (int y = 0; y < ns; ++y) {
          if (!(D.skeleton.leq(x, z) && D.skeleton.leq(z, y))) continue;
          for (Elem a = 0; a < L.size(); ++a) {
            const auto in = [&](int k) {
              return L.leq(D.blocks[k].first, a) && L.leq(a, D.blocks[k].second);
            };
            if (in(x) && in(y)) CHECK(in(z));
          }
        }
  }
}

TEST_CASE("the dissection tolerance is a tolerance and the system is monotone") {
  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    const auto D = dissect(L);
    CHECK(validate_tolerance(D.skeleton, D.gamma).ok());
    const auto v = validate_mcs(D.mcs);
    CHECK(v.valid());
    CHECK(v.monotone());
  }
}

TEST_CASE("blocks containing an element form a skeleton interval") {
  const auto D4 = dissect(chain(4));
  CHECK(element_blocks(D4, 0).lowest == 0);
  CHECK(element_blocks(D4, 0).highest == 0);
  CHECK(element_blocks(D4, 0).all_blocks == std::vector<int>{0});
  CHECK(element_blocks(D4, 1).lowest == 0);
  CHECK(element_blocks(D4, 1).highest == 1);
  CHECK(element_blocks(D4, 1).all_blocks == std::vector<int>{0, 1});

  const auto DB = dissect(boolean(3));
  for (Elem a = 0; a < DB.host.size(); ++a)
    CHECK(element_blocks(DB, a).all_blocks == std::vector<int>{0});

  for (const auto& [name, L] : sample_hosts()) {
    CAPTURE(name);
    const auto D = dissect(L);
    for (Elem a = 0; a < L.size(); ++a) {
      const auto eb = element_blocks(D, a);
      std::vector<int> expect;
      for (int z = 0; z < D.skeleton.size(); ++z)
        if (D.skeleton.leq(eb.lowest, z) && D.skeleton.leq(z, eb.highest)) expect.push_back(z);
      CHECK(eb.all_blocks == expect);
      for (int z : eb.all_blocks) {
        CHECK(D.skeleton.leq(eb.lowest, z));
        CHECK(D.skeleton.leq(z, eb.highest));
      }
    }
  }
}

TEST_CASE("dissecting a relabelled host gives an isomorphic system") {
  for (const char* s : {"stacked(3,3)", "chain(5)", "product(3,3)", "stacked(2,3)"}) {
    CAPTURE(s);
    const auto L = gen_lattice(GenSpec::parse(s));
    const auto perm = testing::random_permutation(L.size(), 4242);
    const auto L2 = testing::relabel_lattice(L, perm);
    const auto w = mcs_isomorphic(dissect(L).mcs, dissect(L2).mcs);
    REQUIRE(w.has_value());
    CHECK(verify_mcs_isomorphism(dissect(L).mcs, dissect(L2).mcs, *w).ok());
  }
}
