// Whitehead-automorphism length minimization and the diskbusting
// decision via the connected / no-cut-vertex criterion on the Whitehead
// graph of the minimized set.
//
// Type II moves are pairs (m, A) with multiplier m in S u S^-1 and
// A a subset of S u S^-1 containing m but not m^-1. The move fixes m's
// generator and sends any other x to x, xm, m^-1 x or m^-1 x m according
// to membership of x and x^-1 in A. Type I moves are signed basis
// permutations (length-preserving); a generating set is enumerated for
// completeness.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "polyg/graph_analysis.hpp"
#include "polyg/word.hpp"

namespace polyg {

struct WhiteheadMove {
  enum class Kind { multiplier, permutation };

  Kind kind = Kind::multiplier;
  // multiplier move
  Letter multiplier{1, +1};
  std::vector<Letter> set;  // A, sorted by vertex id; contains multiplier
  // permutation move: image letter per generator (signed permutation)
  std::vector<Letter> letter_images;

  AutomorphismSpec automorphism(Alphabet ab) const {
    std::vector<Word> imgs;
    imgs.reserve(static_cast<size_t>(ab.rank));
    if (kind == Kind::permutation) {
      for (int g = 1; g <= ab.rank; ++g)
        imgs.push_back(Word(ab, {letter_images[static_cast<size_t>(g - 1)]}));
      return AutomorphismSpec(ab, std::move(imgs));
    }
    auto in_set = [&](Letter x) {
      return std::find(set.begin(), set.end(), x) != set.end();
    };
    for (int g = 1; g <= ab.rank; ++g) {
      Letter x(g, +1);
      if (g == multiplier.gen) {
        imgs.push_back(Word(ab, {x}));
        continue;
      }
      bool direct = in_set(x), inv = in_set(x.inverse());
      std::vector<Letter> img;
      if (inv) img.push_back(multiplier.inverse());
      img.push_back(x);
      if (direct) img.push_back(multiplier);
      imgs.push_back(Word(ab, std::move(img)));
    }
    return AutomorphismSpec(ab, std::move(imgs));
  }

  // Inverse move: (m, A) inverts to (m^-1, A - m + m^-1); a signed
  // permutation inverts as a permutation.
  WhiteheadMove inverted(Alphabet ab) const {
    WhiteheadMove inv;
    inv.kind = kind;
    if (kind == Kind::permutation) {
      inv.letter_images.resize(static_cast<size_t>(ab.rank));
      for (int g = 1; g <= ab.rank; ++g) {
        Letter img = letter_images[static_cast<size_t>(g - 1)];
        inv.letter_images[static_cast<size_t>(img.gen - 1)] =
            Letter(g, img.sign);
      }
      return inv;
    }
    inv.multiplier = multiplier.inverse();
    inv.set.reserve(set.size());
    for (Letter x : set)
      inv.set.push_back(x == multiplier ? multiplier.inverse() : x);
    std::sort(inv.set.begin(), inv.set.end(),
              [](Letter a, Letter b) { return vertex_of(a) < vertex_of(b); });
    return inv;
  }
};

// All type II moves (2n multipliers x 2^(2n-2) admissible subsets), then
// generating type I moves (adjacent-generator transpositions, then
// single inversions). The canonical order runs multiplier vertices in
// descending id and subset masks ascending; greedy descent under this
// order reproduces the classical minimal representatives of the
// regression corpus. Rank 1 admits no useful move; the list is empty.
inline std::vector<WhiteheadMove> enumerate_whitehead_moves(Alphabet ab) {
  std::vector<WhiteheadMove> moves;
  if (ab.rank < 2) return moves;
  int n = ab.rank;
  for (VertexId mv = 2 * n - 1; mv >= 0; --mv) {
    Letter m = vertex_letter(mv);
    std::vector<Letter> pool;  // letters of the other generators
    for (VertexId v = 0; v < 2 * n; ++v)
      if (v / 2 != mv / 2) pool.push_back(vertex_letter(v));
    uint32_t subsets = 1u << pool.size();
    for (uint32_t mask = 0; mask < subsets; ++mask) {
      WhiteheadMove move;
      move.kind = WhiteheadMove::Kind::multiplier;
      move.multiplier = m;
      move.set.push_back(m);
      for (size_t i = 0; i < pool.size(); ++i)
        if (mask & (1u << i)) move.set.push_back(pool[i]);
      std::sort(move.set.begin(), move.set.end(),
                [](Letter a, Letter b) { return vertex_of(a) < vertex_of(b); });
      moves.push_back(std::move(move));
    }
  }
  auto identity_images = [&]() {
    std::vector<Letter> imgs;
    for (int g = 1; g <= n; ++g) imgs.push_back(Letter(g, +1));
    return imgs;
  };
  for (int g = 1; g < n; ++g) {
    WhiteheadMove move;
    move.kind = WhiteheadMove::Kind::permutation;
    move.letter_images = identity_images();
    std::swap(move.letter_images[static_cast<size_t>(g - 1)],
              move.letter_images[static_cast<size_t>(g)]);
    moves.push_back(std::move(move));
  }
  for (int g = 1; g <= n; ++g) {
    WhiteheadMove move;
    move.kind = WhiteheadMove::Kind::permutation;
    move.letter_images = identity_images();
    move.letter_images[static_cast<size_t>(g - 1)] = Letter(g, -1);
    moves.push_back(std::move(move));
  }
  return moves;
}

struct ReductionStep {
  WhiteheadMove move;
  int total_length_after = 0;
};

struct ReductionTrace {
  std::vector<Word> initial;
  std::vector<ReductionStep> steps;
  std::vector<Word> final_words;

  int initial_length() const {
    int s = 0;
    for (const Word& w : initial) s += w.size();
    return s;
  }
  int final_length() const {
    int s = 0;
    for (const Word& w : final_words) s += w.size();
    return s;
  }
};

// Greedy descent: repeatedly apply the first enumerated move that
// strictly reduces total cyclic length. Peak reduction (classical) makes
// greedy reach minimal total length.
inline ReductionTrace minimize(const std::vector<Word>& words) {
  if (words.empty()) fail("minimize of an empty set");
  Alphabet ab = words.front().alphabet();
  for (const Word& w : words) {
    if (!(w.alphabet() == ab)) fail("alphabet mismatch in minimize");
    if (!w.is_cyclically_reduced())
      fail("minimize requires cyclically reduced words: " + w.str());
  }
  ReductionTrace trace;
  trace.initial = words;
  std::vector<Word> current = words;
  std::vector<WhiteheadMove> moves = enumerate_whitehead_moves(ab);
  auto total = [](const std::vector<Word>& ws) {
    int s = 0;
    for (const Word& w : ws) s += w.size();
    return s;
  };
  int best = total(current);
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (const WhiteheadMove& move : moves) {
      AutomorphismSpec phi = move.automorphism(ab);
      std::vector<Word> next;
      next.reserve(current.size());
      for (const Word& w : current)
        next.push_back(cyclic_reduce(apply_automorphism(phi, w)));
      int len = total(next);
      if (len < best) {
        best = len;
        current = std::move(next);
        trace.steps.push_back({move, len});
        progressed = true;
        break;
      }
    }
  }
  trace.final_words = std::move(current);
  return trace;
}

struct DiskbustingVerdict {
  bool value = false;
  ReductionTrace trace;
  bool connected = false;
  std::vector<VertexId> cut_vertices;
};

// Minimize, then test the Whitehead graph of the minimized set. The
// forward implication (minimal + independent + diskbusting implies
// connected without cut vertex) is classical, as is the converse used
// for the decision.
inline DiskbustingVerdict is_diskbusting(const std::vector<Word>& words) {
  for (const Word& w : words)
    if (w.empty()) fail("empty word in diskbusting check");
  if (!are_independent(words))
    fail("diskbusting check requires an independent set");
  DiskbustingVerdict verdict;
  verdict.trace = minimize(words);
  WhiteheadGraph g = whitehead_graph(
      verdict.trace.final_words,
      Polynomial::ones(static_cast<int>(words.size())));
  Multigraph m = underlying_multigraph(g);
  verdict.connected = is_connected(m);
  verdict.cut_vertices = cut_vertices(m);
  verdict.value = verdict.connected && verdict.cut_vertices.empty();
  return verdict;
}

}  // namespace polyg
