#include "polyg/reduce.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <numeric>

using namespace polyg;

namespace {

Word word2(const std::string& s) { return parse_word(s, Alphabet(2)); }

std::string cyclic_canon(const Word& w) {
  std::string best = w.str();
  for (int k = 1; k < w.size(); ++k) best = std::min(best, rotate(w, k).str());
  return best;
}

// All cyclically reduced rank-2 words of length len (linear forms).
void enumerate_words(int len, std::vector<Word>& out) {
  Alphabet ab(2);
  std::vector<Letter> pool{{1, +1}, {1, -1}, {2, +1}, {2, -1}};
  std::vector<Letter> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == len) {
      Word w(ab, cur);
      if (w.size() == len && w.is_cyclically_reduced()) out.push_back(w);
      return;
    }
    for (Letter x : pool) {
      if (!cur.empty() && x == cur.back().inverse()) continue;
      cur.push_back(x);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<size_t>(n)) {
    std::iota(p.begin(), p.end(), 0);
  }
  int find(int x) {
    while (p[static_cast<size_t>(x)] != x) x = p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { p[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

TEST_CASE("enumerate_whitehead_moves counts") {
  // rank 2: 4 multipliers x 2^2 subsets, plus 1 transposition and 2
  // inversions.
  std::vector<WhiteheadMove> moves = enumerate_whitehead_moves(Alphabet(2));
  int type2 = 0, type1 = 0;
  for (const auto& m : moves)
    (m.kind == WhiteheadMove::Kind::multiplier ? type2 : type1)++;
  CHECK(type2 == 16);
  CHECK(type1 == 3);

  CHECK(enumerate_whitehead_moves(Alphabet(1)).empty());

  std::vector<WhiteheadMove> moves3 = enumerate_whitehead_moves(Alphabet(3));
  int type2_3 = 0;
  for (const auto& m : moves3)
    if (m.kind == WhiteheadMove::Kind::multiplier) ++type2_3;
  CHECK(type2_3 == 6 * 16);  // 6 multipliers x 2^4 subsets
}

TEST_CASE("every move is an automorphism: apply then invert") {
  for (int rank = 2; rank <= 3; ++rank) {
    Alphabet ab(rank);
    for (const WhiteheadMove& m : enumerate_whitehead_moves(ab)) {
      AutomorphismSpec phi = m.automorphism(ab);
      AutomorphismSpec inv = m.inverted(ab).automorphism(ab);
      for (int g = 1; g <= rank; ++g) {
        Word basis(ab, {Letter(g, +1)});
        CHECK(apply_automorphism(inv, apply_automorphism(phi, basis)) == basis);
        CHECK(apply_automorphism(phi, apply_automorphism(inv, basis)) == basis);
      }
    }
  }
}

TEST_CASE("minimize: known words") {
  ReductionTrace t = minimize({word2("ababbabbb")});
  CHECK(t.initial_length() == 9);
  CHECK(t.final_length() == 5);
  Word target = word2("aBaab");
  Word final_word = t.final_words[0];
  bool matches = cyclic_equal(final_word, target) ||
                 cyclic_equal(final_word, inverse(target));
  CHECK(matches);

  ReductionTrace t1 = minimize({parse_word("bbaaccabc", Alphabet(3))});
  CHECK(t1.steps.empty());
  CHECK(t1.final_words[0].str() == "bbaaccabc");

  ReductionTrace ta = minimize({word2("a")});
  CHECK(ta.steps.empty());
  CHECK(ta.final_words[0].str() == "a");
}

TEST_CASE("minimize: no enumerated move reduces a minimal word") {
  Word w1 = parse_word("bbaaccabc", Alphabet(3));
  Alphabet ab = w1.alphabet();
  for (const WhiteheadMove& m : enumerate_whitehead_moves(ab)) {
    Word img = cyclic_reduce(apply_automorphism(m.automorphism(ab), w1));
    CHECK(img.size() >= w1.size());
  }
}

TEST_CASE("trace validity: lengths decrease, composition matches") {
  std::vector<std::vector<std::string>> inputs = {
      {"ababbabbb"}, {"aabbab"}, {"abababab"}, {"aabb", "ab"}};
  for (const auto& texts : inputs) {
    std::vector<Word> words;
    for (const auto& s : texts) words.push_back(word2(s));
    ReductionTrace t = minimize(words);
    int prev = t.initial_length();
    for (const ReductionStep& s : t.steps) {
      CHECK(s.total_length_after < prev);
      prev = s.total_length_after;
    }
    CHECK(prev == t.final_length());
    // composed automorphism reproduces the final words up to rotation
    Alphabet ab(2);
    AutomorphismSpec composed = AutomorphismSpec::identity(ab);
    for (const ReductionStep& s : t.steps)
      composed = compose(s.move.automorphism(ab), composed);
    for (size_t i = 0; i < words.size(); ++i) {
      Word img = cyclic_reduce(apply_automorphism(composed, t.initial[i]));
      CHECK(cyclic_equal(img, t.final_words[i]));
    }
  }
}

// Greedy descent reaches the same minimum as a capped orbit search over
// all enumerated moves: rank-2 words of length <= 6, intermediate states
// allowed up to length 8.
TEST_CASE("greedy minimization matches capped orbit minimum") {
  constexpr int kAssertLen = 6;
  constexpr int kCapLen = 8;
  std::vector<Word> all;
  for (int len = 1; len <= kCapLen; ++len) enumerate_words(len, all);

  std::map<std::string, int> node_of;
  std::vector<Word> rep;
  for (const Word& w : all) {
    std::string canon = cyclic_canon(w);
    if (!node_of.count(canon)) {
      node_of[canon] = static_cast<int>(rep.size());
      rep.push_back(w);
    }
  }
  Dsu dsu(static_cast<int>(rep.size()));
  Alphabet ab(2);
  std::vector<WhiteheadMove> moves = enumerate_whitehead_moves(ab);
  std::vector<AutomorphismSpec> autos;
  for (const auto& m : moves) autos.push_back(m.automorphism(ab));
  for (size_t i = 0; i < rep.size(); ++i) {
    for (const AutomorphismSpec& phi : autos) {
      Word img = cyclic_reduce(apply_automorphism(phi, rep[i]));
      if (img.empty() || img.size() > kCapLen) continue;
      auto it = node_of.find(cyclic_canon(img));
      if (it != node_of.end()) dsu.unite(static_cast<int>(i), it->second);
    }
  }
  std::map<int, int> comp_min;
  for (size_t i = 0; i < rep.size(); ++i) {
    int root = dsu.find(static_cast<int>(i));
    auto it = comp_min.find(root);
    if (it == comp_min.end() || rep[i].size() < it->second)
      comp_min[root] = rep[i].size();
  }
  int checked = 0;
  for (size_t i = 0; i < rep.size(); ++i) {
    if (rep[i].size() > kAssertLen) continue;
    ReductionTrace t = minimize({rep[i]});
    CHECK(t.final_length() == comp_min[dsu.find(static_cast<int>(i))]);
    ++checked;
  }
  CHECK(checked > 200);  // 234 cyclic classes of length <= 6
}

TEST_CASE("is_diskbusting") {
  DiskbustingVerdict v1 = is_diskbusting({parse_word("bbaaccabc", Alphabet(3))});
  CHECK(v1.value);
  CHECK(v1.connected);
  CHECK(v1.cut_vertices.empty());

  DiskbustingVerdict va = is_diskbusting({word2("a")});
  CHECK_FALSE(va.value);
  CHECK_FALSE(va.connected);

  DiskbustingVerdict vb = is_diskbusting({word2("aabb")});
  CHECK(vb.value);

  CHECK_THROWS_AS(is_diskbusting({word2("ab"), word2("abab")}), Error);
  CHECK_THROWS_AS(is_diskbusting({word2("")}), Error);
}
