#include "polyg/transition.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace polyg;

namespace {

Word word2(const std::string& s) { return parse_word(s, Alphabet(2)); }
Word word3(const std::string& s) { return parse_word(s, Alphabet(3)); }

std::vector<std::string> displays(const std::vector<Polynomial>& ps, int r) {
  std::vector<std::string> out;
  for (const Polynomial& f : ps) out.push_back(f.display(r));
  return out;
}

}  // namespace

TEST_CASE("enumerate_polynomials: graded order") {
  SearchBounds b;
  b.max_exponent = 2;
  b.max_coefficient = 1;
  b.max_total_edges = 100;
  auto ps = enumerate_polynomials({4}, b);
  CHECK(displays(ps, 1) == std::vector<std::string>{"x", "x^2", "x + x^2"});

  b.max_exponent = 1;
  b.max_coefficient = 2;
  auto ps2 = enumerate_polynomials({4}, b);
  CHECK(displays(ps2, 1) == std::vector<std::string>{"x", "2x"});

  b.max_exponent = 2;
  b.max_coefficient = 2;
  b.max_total_edges = 4;  // only f = x fits the budget
  auto ps3 = enumerate_polynomials({4}, b);
  CHECK(displays(ps3, 1) == std::vector<std::string>{"x"});

  // ties in the budget break lexicographically on the coefficient tuple:
  // x^2 = (0,1) before 2x = (2,0)
  b.max_total_edges = 100;
  auto ps4 = enumerate_polynomials({4}, b);
  REQUIRE(ps4.size() >= 3);
  CHECK(ps4[0].display(1) == "x");
  CHECK(ps4[1].display(1) == "x^2");
  CHECK(ps4[2].display(1) == "2x");

  SearchBounds huge;
  huge.max_exponent = 24;
  huge.max_coefficient = 3;
  CHECK_THROWS_AS(enumerate_polynomials({4}, huge), Error);

  SearchBounds bad;
  bad.max_coefficient = 0;
  CHECK_THROWS_AS(enumerate_polynomials({4}, bad), Error);
}

TEST_CASE("transition system counts") {
  Word w1 = word3("bbaaccabc");
  WhiteheadGraph squared = whitehead_graph({w1}, Polynomial({{0, 2, 1}}));
  TransitionSystemSpace space1(squared);
  CHECK(space1.count() == 3375);  // 15^3, degree 6 at each of a, b, c

  Word w2 = parse_word("aabbacbccadbdcdd", Alphabet(4));
  TransitionSystemSpace space2(whitehead_graph(w2));
  CHECK(space2.count() == 81);  // 3^4, degree 4 at each of a, b, c, d

  TransitionSystemSpace odd(whitehead_graph(word2("aba")));
  CHECK(odd.empty());
  CHECK(odd.count() == 0);
}

TEST_CASE("transition systems: matchings are valid and exhaustive") {
  WhiteheadGraph g = whitehead_graph({word2("aabb")}, Polynomial({{0, 2, 1}}));
  TransitionSystemSpace space(g);
  uint64_t n = space.count();
  CHECK(n == 9);  // degrees 4 at a and b: 3 x 3
  std::set<std::string> seen;
  for (uint64_t i = 0; i < n; ++i) {
    TransitionSystem ts = space.at(i);
    std::string key;
    for (int gen = 1; gen <= 2; ++gen) {
      const auto& pairs = ts.matchings[static_cast<size_t>(gen - 1)];
      // every incidence at the positive vertex matched exactly once
      std::set<int> used;
      for (const auto& [x, y] : pairs) {
        used.insert(x.edge);
        used.insert(y.edge);
        key += std::to_string(x.edge) + "-" + std::to_string(y.edge) + ";";
      }
      CHECK(static_cast<int>(used.size()) ==
            g.degree(vertex_of(Letter(gen, +1))));
      // induced matching at the inverse, re-induced, returns the original
      VertexId vinv = vertex_inverse(vertex_of(Letter(gen, +1)));
      for (const auto& [x, y] : ts.induced_at_inverse(g, gen)) {
        CHECK(x.at == vinv);
        CHECK(y.at == vinv);
        Incidence back_x{g.sigma(x), vertex_inverse(vinv)};
        Incidence back_y{g.sigma(y), vertex_inverse(vinv)};
        bool found = false;
        for (const auto& [p, q] : pairs)
          if ((p == back_x && q == back_y) || (p == back_y && q == back_x))
            found = true;
        CHECK(found);
      }
    }
    seen.insert(key);
  }
  CHECK(seen.size() == n);  // all distinct
}

TEST_CASE("enumerate_transition_systems streams the whole product") {
  WhiteheadGraph g = whitehead_graph({word2("aabb")}, Polynomial({{0, 2, 1}}));
  uint64_t count = 0;
  enumerate_transition_systems(g, [&](uint64_t idx, const TransitionSystem&) {
    CHECK(idx == count);
    ++count;
    return true;
  });
  CHECK(count == 9);
  // early stop
  count = 0;
  enumerate_transition_systems(g, [&](uint64_t, const TransitionSystem&) {
    return ++count < 3;
  });
  CHECK(count == 3);
}

TEST_CASE("trace_cycles: forced system on W(aabb)") {
  WhiteheadGraph g = whitehead_graph(word2("aabb"));
  TransitionSystemSpace space(g);
  REQUIRE(space.count() == 1);
  TraceResult r = trace_cycles(g, space.at(0));
  REQUIRE(r.decomposition.has_value());
  CHECK(r.decomposition->cycles.size() == 1);
  CHECK(r.decomposition->length_multiset() == std::vector<int>{4});
  CHECK(sigma_closure_holds(g, *r.decomposition));
  // edge partition
  std::set<int> edges;
  for (const auto& c : r.decomposition->cycles)
    for (int e : c.edges) edges.insert(e);
  CHECK(static_cast<int>(edges.size()) == g.edge_count());
}

TEST_CASE("trace_cycles: twin pairing on W(w+w) is all bigons") {
  Word w = word2("aabb");
  WhiteheadGraph g = whitehead_graph({w}, Polynomial({{0, 1, 2}}));
  // Pair each incidence of the first copy with its twin in the second:
  // copy 1 edges are 0..3, copy 2 edges are 4..7.
  TransitionSystem ts;
  ts.matchings.resize(2);
  for (int gen = 1; gen <= 2; ++gen) {
    VertexId v = vertex_of(Letter(gen, +1));
    for (const Incidence& inc : g.incidences_at(v)) {
      if (inc.edge >= 4) continue;
      ts.matchings[static_cast<size_t>(gen - 1)].push_back(
          {inc, Incidence{inc.edge + 4, v}});
    }
  }
  TraceResult r = trace_cycles(g, ts);
  CHECK_FALSE(r.decomposition.has_value());
  CHECK(r.rejection == TraceRejection::all_bigons);
}

TEST_CASE("trace_cycles: accepted decompositions partition the edges") {
  Word w1 = word3("bbaaccabc");
  WhiteheadGraph g = whitehead_graph({w1}, Polynomial({{0, 2, 1}}));
  TransitionSystemSpace space(g);
  int accepted = 0;
  for (uint64_t i = 0; i < space.count() && accepted < 25; ++i) {
    TraceResult r = trace_cycles(g, space.at(i));
    if (!r.decomposition) continue;
    ++accepted;
    int total = 0;
    std::set<int> seen;
    for (const auto& c : r.decomposition->cycles) {
      total += c.length();
      for (int e : c.edges) CHECK(seen.insert(e).second);
      std::set<VertexId> distinct(c.vertices.begin(), c.vertices.end());
      CHECK(distinct.size() == c.vertices.size());
    }
    CHECK(total == g.edge_count());
    CHECK(sigma_closure_holds(g, *r.decomposition));
  }
  CHECK(accepted > 0);
}
