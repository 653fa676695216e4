// Whitehead graphs W(f(U)) with edge provenance and the connecting map
// sigma on edge incidences.
//
// Vertices are S u S^-1, encoded as ids 0..2n-1: generator g gets
// 2(g-1) for the positive vertex and 2(g-1)+1 for the inverse vertex.
// The graph of f(U) = sum c_ij x_i^j is the edge-disjoint union of
// c_ij copies of W(w_i^j) over the common vertex set; sigma is the
// per-summand connecting map, so W(2w) and W(w^2) coincide as graphs
// but carry different sigmas.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "polyg/word.hpp"

namespace polyg {

using VertexId = int;

inline VertexId vertex_of(Letter x) {
  return 2 * (x.gen - 1) + (x.sign > 0 ? 0 : 1);
}

inline VertexId vertex_inverse(VertexId v) { return v ^ 1; }

inline bool vertex_is_positive(VertexId v) { return (v & 1) == 0; }

inline Letter vertex_letter(VertexId v) {
  return Letter(v / 2 + 1, (v & 1) ? -1 : +1);
}

inline std::string vertex_name(VertexId v) {
  return std::string(1, vertex_letter(v).to_char());
}

// Non-zero polynomial f(x_1,...,x_r) = sum c_ij x_i^j with c_ij >= 0.
// Terms are kept sorted by (word, exponent); coefficients are positive.
struct PolyTerm {
  int word = 0;      // 0-based index into U
  int exponent = 1;  // j >= 1
  int coeff = 1;     // c_ij >= 1

  auto operator<=>(const PolyTerm&) const = default;
};

class Polynomial {
public:
  Polynomial() = default;

  explicit Polynomial(std::vector<PolyTerm> terms) {
    std::sort(terms.begin(), terms.end());
    for (const PolyTerm& t : terms) {
      if (t.word < 0 || t.exponent < 1 || t.coeff < 1)
        fail("invalid polynomial term");
      if (!terms_.empty() && terms_.back().word == t.word &&
          terms_.back().exponent == t.exponent)
        terms_.back().coeff += t.coeff;
      else
        terms_.push_back(t);
    }
    if (terms_.empty()) fail("polynomial must be non-zero");
  }

  // f = x_{word+1}
  static Polynomial x(int word = 0) { return Polynomial({{word, 1, 1}}); }

  // f = x_1 + x_2 + ... + x_r
  static Polynomial ones(int r) {
    std::vector<PolyTerm> ts;
    for (int i = 0; i < r; ++i) ts.push_back({i, 1, 1});
    return Polynomial(std::move(ts));
  }

  const std::vector<PolyTerm>& terms() const { return terms_; }

  int edge_budget(const std::vector<Word>& words) const {
    int total = 0;
    for (const PolyTerm& t : terms_) {
      if (t.word >= static_cast<int>(words.size()))
        fail("polynomial term refers to a missing word");
      total += t.coeff * t.exponent * words[static_cast<size_t>(t.word)].size();
    }
    return total;
  }

  // "x^2", "2x", "x1 + 2x2^3", ... The variable index is omitted for a
  // single-word tuple.
  std::string display(int word_count) const {
    std::string s;
    for (const PolyTerm& t : terms_) {
      if (!s.empty()) s += " + ";
      if (t.coeff != 1) s += std::to_string(t.coeff);
      s += "x";
      if (word_count > 1) s += std::to_string(t.word + 1);
      if (t.exponent != 1) s += "^" + std::to_string(t.exponent);
    }
    return s;
  }

  bool operator==(const Polynomial&) const = default;

private:
  std::vector<PolyTerm> terms_;
};

struct EdgeProvenance {
  int word = 0;      // i (0-based)
  int exponent = 1;  // j
  int copy = 0;      // k (0-based, < c_ij)
  int position = 0;  // 0-based position within w_i^j

  auto operator<=>(const EdgeProvenance&) const = default;
};

// Edge for the length-2 cyclic subword at `position`: joins the vertex of
// that letter and the inverse vertex of the next letter. Cyclic
// reducedness of the source word rules out loops.
struct WGEdge {
  int id = 0;
  std::array<VertexId, 2> ends{};  // ends[0] = letter vertex, ends[1] = next-inverse vertex
  EdgeProvenance prov;
};

struct Incidence {
  int edge = 0;
  VertexId at = 0;

  auto operator<=>(const Incidence&) const = default;
};

class WhiteheadGraph {
public:
  WhiteheadGraph(Alphabet ab, std::vector<Word> words, Polynomial f)
      : alphabet_(ab), words_(std::move(words)), poly_(f) {
    for (const Word& w : words_) {
      if (!(w.alphabet() == ab)) fail("word alphabet mismatch");
      if (w.empty()) fail("Whitehead graph of an empty word");
      if (!w.is_cyclically_reduced())
        fail("Whitehead graph requires cyclically reduced words: " + w.str());
    }
    build();
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& words() const { return words_; }
  const Polynomial& polynomial() const { return poly_; }
  const std::vector<WGEdge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int vertex_count() const { return 2 * alphabet_.rank; }

  const WGEdge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

  // Which slot of `edge` the vertex v occupies. Total because there are
  // no loops.
  int slot_of(int edge, VertexId v) const {
    const WGEdge& e = edges_[static_cast<size_t>(edge)];
    if (e.ends[0] == v) return 0;
    if (e.ends[1] == v) return 1;
    fail("vertex " + vertex_name(v) + " is not an endpoint of edge " +
         std::to_string(edge));
  }

  VertexId other_end(int edge, VertexId v) const {
    const WGEdge& e = edges_[static_cast<size_t>(edge)];
    return e.ends[slot_of(edge, v) ^ 1];
  }

  // Connecting map: the neighbouring edge along the source word. The
  // result has v^-1 as an endpoint, and sigma(sigma(e,v), v^-1) = e.
  int sigma(const Incidence& inc) const {
    if (inc.edge < 0 || inc.edge >= edge_count()) fail("invalid incidence edge");
    return sigma_[static_cast<size_t>(inc.edge)]
                 [static_cast<size_t>(slot_of(inc.edge, inc.at))];
  }

  // All incidences with end = v, in edge-id order.
  const std::vector<Incidence>& incidences_at(VertexId v) const {
    if (v < 0 || v >= vertex_count()) fail("vertex out of range");
    return at_[static_cast<size_t>(v)];
  }

  int degree(VertexId v) const {
    return static_cast<int>(incidences_at(v).size());
  }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<size_t>(vertex_count()));
    for (int v = 0; v < vertex_count(); ++v) d[static_cast<size_t>(v)] = degree(v);
    return d;
  }

private:
  void build() {
    for (const PolyTerm& t : poly_.terms()) {
      const Word& w = words_[static_cast<size_t>(t.word)];
      int base_len = w.size();
      int len = t.exponent * base_len;
      for (int copy = 0; copy < t.coeff; ++copy) {
        int base = static_cast<int>(edges_.size());
        for (int p = 0; p < len; ++p) {
          Letter cur = w.at(p % base_len);
          Letter nxt = w.at((p + 1) % base_len);
          WGEdge e;
          e.id = base + p;
          e.ends = {vertex_of(cur), vertex_of(nxt.inverse())};
          e.prov = {t.word, t.exponent, copy, p};
          edges_.push_back(e);
        }
        for (int p = 0; p < len; ++p) {
          int prev = base + (p + len - 1) % len;
          int next = base + (p + 1) % len;
          sigma_.push_back({prev, next});  // slot 0: letter vertex; slot 1: next-inverse
        }
      }
    }
    at_.assign(static_cast<size_t>(vertex_count()), {});
    for (const WGEdge& e : edges_) {
      at_[static_cast<size_t>(e.ends[0])].push_back({e.id, e.ends[0]});
      at_[static_cast<size_t>(e.ends[1])].push_back({e.id, e.ends[1]});
    }
  }

  Alphabet alphabet_{1};
  std::vector<Word> words_;
  Polynomial poly_;
  std::vector<WGEdge> edges_;
  std::vector<std::array<int, 2>> sigma_;
  std::vector<std::vector<Incidence>> at_;
};

inline WhiteheadGraph whitehead_graph(const std::vector<Word>& words,
                                      const Polynomial& f) {
  if (words.empty()) fail("Whitehead graph of an empty tuple");
  return WhiteheadGraph(words.front().alphabet(), words, f);
}

inline WhiteheadGraph whitehead_graph(const Word& w) {
  return whitehead_graph({w}, Polynomial::x());
}

}  // namespace polyg
