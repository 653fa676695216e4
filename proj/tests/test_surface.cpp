#include "polyg/surface.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace polyg;

namespace {

Word word2(const std::string& s) { return parse_word(s, Alphabet(2)); }
Word word3(const std::string& s) { return parse_word(s, Alphabet(3)); }
Word word4(const std::string& s) { return parse_word(s, Alphabet(4)); }

SidePairing pairing_1based(std::vector<std::pair<int, int>> pairs) {
  SidePairing sp;
  for (auto [a, b] : pairs) sp.pairs.push_back({a - 1, b - 1});
  return sp;
}

const std::vector<std::pair<int, int>> kPairsW1 = {
    {1, 2}, {3, 7}, {4, 16}, {5, 15}, {6, 18}, {8, 11}, {9, 14}, {10, 17}, {12, 13}};
const std::vector<std::pair<int, int>> kPairsW2 = {
    {1, 2}, {3, 12}, {4, 7}, {5, 10}, {6, 14}, {8, 9}, {11, 16}, {13, 15}};

// Normalize a decomposition for comparison: each cycle rotated/reflected
// to its lexicographically least edge sequence, cycles sorted.
std::vector<std::vector<int>> normalized_cycles(const CycleDecomposition& dec) {
  std::vector<std::vector<int>> out;
  for (const auto& c : dec.cycles) {
    std::vector<int> best;
    int k = c.length();
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<int> es = c.edges;
      if (dir) std::reverse(es.begin(), es.end());
      for (int r = 0; r < k; ++r) {
        std::vector<int> rot;
        for (int i = 0; i < k; ++i) rot.push_back(es[static_cast<size_t>((i + r) % k)]);
        if (best.empty() || rot < best) best = rot;
      }
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("explicit pairing for w1: chi = -4, four vertices") {
  Word w1 = word3("bbaaccabc");
  SurfaceReport r =
      verify_side_pairing({w1}, Polynomial({{0, 2, 1}}), pairing_1based(kPairsW1));
  CHECK(r.vertex_count == 4);
  CHECK(r.edge_count == 9);
  CHECK(r.face_count == 1);
  CHECK(r.euler == -4);
  CHECK(r.immersed);
  CHECK(r.polygonal);
  CHECK(r.doubled_euler == -10);
  CHECK(r.cover_degree_hint == 4);
  // one vertex of valence six, three of valence four
  std::vector<int> link_sizes;
  for (const auto& l : r.links) link_sizes.push_back(static_cast<int>(l.size()));
  std::sort(link_sizes.begin(), link_sizes.end(), std::greater<int>());
  CHECK(link_sizes == std::vector<int>{6, 4, 4, 4});
  CHECK(r.induced.length_multiset() == std::vector<int>{6, 4, 4, 4});
  // the emitted decomposition really decomposes W(w1^2)
  WhiteheadGraph g = whitehead_graph({w1}, Polynomial({{0, 2, 1}}));
  CHECK(sigma_closure_holds(g, r.induced));
}

TEST_CASE("explicit pairing for w2: chi = -3, four vertices") {
  Word w2 = word4("aabbacbccadbdcdd");
  SurfaceReport r =
      verify_side_pairing({w2}, Polynomial::x(), pairing_1based(kPairsW2));
  CHECK(r.vertex_count == 4);
  CHECK(r.edge_count == 8);
  CHECK(r.face_count == 1);
  CHECK(r.euler == -3);
  CHECK(r.immersed);
  CHECK(r.polygonal);
  CHECK(r.doubled_euler == -8);
  CHECK(r.induced.length_multiset() == std::vector<int>{4, 4, 4, 4});
  WhiteheadGraph g = whitehead_graph(w2);
  CHECK(sigma_closure_holds(g, r.induced));
}

TEST_CASE("two copies glued letter to letter: chi = m = 2") {
  Word w = word3("bbaaccabc");
  SidePairing sp;
  for (int i = 0; i < w.size(); ++i) sp.pairs.push_back({i, i + w.size()});
  SurfaceReport r = verify_side_pairing({w}, Polynomial({{0, 1, 2}}), sp);
  CHECK(r.face_count == 2);
  CHECK(r.euler == 2);
  CHECK(r.immersed);
  CHECK_FALSE(r.polygonal);
  CHECK(r.doubled_euler == 0);
}

TEST_CASE("pi-rotation pairing on w^2: chi = m = 1") {
  Word w = word2("aabb");
  SidePairing sp;
  for (int i = 0; i < w.size(); ++i) sp.pairs.push_back({i, i + w.size()});
  SurfaceReport r = verify_side_pairing({w}, Polynomial({{0, 2, 1}}), sp);
  CHECK(r.face_count == 1);
  CHECK(r.euler == 1);
  CHECK_FALSE(r.polygonal);
}

TEST_CASE("doubled_euler") {
  SurfaceReport r1 = verify_side_pairing({word3("bbaaccabc")},
                                         Polynomial({{0, 2, 1}}),
                                         pairing_1based(kPairsW1));
  CHECK(doubled_euler(r1) == -10);
  SurfaceReport r2 = verify_side_pairing({word4("aabbacbccadbdcdd")},
                                         Polynomial::x(),
                                         pairing_1based(kPairsW2));
  CHECK(doubled_euler(r2) == -8);
  // chi = m gives 0
  Word w = word2("aabb");
  SidePairing twin;
  for (int i = 0; i < w.size(); ++i) twin.pairs.push_back({i, i + w.size()});
  CHECK(doubled_euler(verify_side_pairing({w}, Polynomial({{0, 1, 2}}), twin)) == 0);
}

TEST_CASE("pairing errors") {
  Word w = word2("aabb");
  // label mismatch: position 1 reads a, position 3 reads b
  SidePairing bad = pairing_1based({{1, 3}, {2, 4}});
  CHECK_THROWS_AS(verify_side_pairing({w}, Polynomial::x(), bad), PairingError);
  try {
    verify_side_pairing({w}, Polynomial::x(), bad);
  } catch (const PairingError& e) {
    CHECK(e.kind == PairingError::Kind::label_mismatch);
    CHECK(e.pair == std::make_pair(0, 2));
  }
  // not a partition
  SidePairing dup = pairing_1based({{1, 2}, {2, 3}});
  CHECK_THROWS_AS(verify_side_pairing({w}, Polynomial::x(), dup), PairingError);
  SidePairing incomplete = pairing_1based({{1, 2}});
  CHECK_THROWS_AS(verify_side_pairing({w}, Polynomial::x(), incomplete),
                  PairingError);
}

TEST_CASE("Euler formula and handshake on every constructed surface") {
  Word w = word2("aabb");
  for (auto exponent : {1, 2}) {
    auto reports = oracle_enumerate(w, exponent, 1);
    for (const SurfaceReport& r : reports) {
      CHECK(r.euler == r.vertex_count - r.edge_count + r.face_count);
      CHECK(2 * r.edge_count ==
            static_cast<int>(r.polygons.size()) * w.size() * exponent);
      int link_total = 0;
      for (const auto& l : r.links) link_total += static_cast<int>(l.size());
      CHECK(link_total == 2 * r.edge_count);
      CHECK(static_cast<int>(r.links.size()) == r.vertex_count);
      // immersion iff every link cycle is simple in W(f(U))
      bool all_simple = true;
      for (const auto& c : r.induced.cycles) {
        std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
        if (distinct.size() != c.vertices.size()) all_simple = false;
      }
      CHECK(r.immersed == all_simple);
    }
  }
}

TEST_CASE("oracle: aabb admits a polygonal pairing") {
  auto reports = oracle_enumerate(word2("aabb"), 1, 1);
  REQUIRE_FALSE(reports.empty());
  bool any = false;
  for (const auto& r : reports)
    if (r.polygonal) any = true;
  CHECK(any);
}

TEST_CASE("oracle: ab squared gives only chi = m outcomes") {
  auto reports = oracle_enumerate(word2("ab"), 2, 1);
  REQUIRE_FALSE(reports.empty());
  for (const auto& r : reports) {
    CHECK(r.euler == r.face_count);
    CHECK_FALSE(r.polygonal);
  }
}

TEST_CASE("oracle: odd boundary has no pairings; guard trips") {
  CHECK(oracle_enumerate(word2("aBaab"), 1, 1).empty());
  CHECK_THROWS_AS(oracle_enumerate(word2("ab"), 11, 1), Error);
}

TEST_CASE("build_surface round trip on the w1 certificate") {
  Word w1 = word3("bbaaccabc");
  WhiteheadGraph g = whitehead_graph({w1}, Polynomial({{0, 2, 1}}));
  SurfaceReport from_pairing =
      verify_side_pairing({w1}, Polynomial({{0, 2, 1}}), pairing_1based(kPairsW1));
  SurfaceReport rebuilt = build_surface(g, from_pairing.induced);
  CHECK(rebuilt.euler == from_pairing.euler);
  CHECK(rebuilt.vertex_count == from_pairing.vertex_count);
  CHECK(rebuilt.polygonal);
  CHECK(normalized_cycles(rebuilt.induced) ==
        normalized_cycles(from_pairing.induced));
  // the derived pairing is the original one
  SidePairing sp = from_pairing.pairing;
  SidePairing sp2 = rebuilt.pairing;
  sp.normalize();
  sp2.normalize();
  CHECK(sp.pairs == sp2.pairs);
}

TEST_CASE("build_surface rejects inconsistent decompositions") {
  Word w = word2("aabb");
  WhiteheadGraph g = whitehead_graph(w);
  CycleDecomposition dec;
  dec.cycles.push_back({{0, 1}, {vertex_of(Letter(1, +1)), vertex_of(Letter(1, -1))}});
  // edges 2, 3 missing
  CHECK_THROWS_AS(build_surface(g, dec), Error);
}

TEST_CASE("orientability bookkeeping") {
  // torus from abAB: one polygon, opposite-sign pairs only
  Word w = word2("abAB");
  SidePairing sp = pairing_1based({{1, 3}, {2, 4}});
  SurfaceReport r = verify_side_pairing({w}, Polynomial::x(), sp);
  CHECK(r.euler == 0);
  CHECK(r.orientable);
  CHECK(r.genus == 1);
  CHECK(r.polygonal);  // chi = 0 < m = 1

  // the w1 surface glues same-sign edges of one polygon: non-orientable
  SurfaceReport r1 = verify_side_pairing({word3("bbaaccabc")},
                                         Polynomial({{0, 2, 1}}),
                                         pairing_1based(kPairsW1));
  CHECK_FALSE(r1.orientable);
  CHECK(r1.genus == 6);  // crosscaps: 2 - chi
}
