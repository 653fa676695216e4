// JSON and DOT serialization. All orderings are deterministic so that
// identical invocations produce byte-identical output; positions, word
// indices, copies and pair entries are 1-based in JSON to match the
// surface syntax of the CLI.

#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "polyg/graph_analysis.hpp"
#include "polyg/reduce.hpp"
#include "polyg/search.hpp"
#include "polyg/surface.hpp"

namespace polyg {

using Json = nlohmann::ordered_json;

inline Json polynomial_json(const Polynomial& f, int word_count) {
  Json terms = Json::array();
  for (const PolyTerm& t : f.terms())
    terms.push_back(
        {{"word", t.word + 1}, {"exponent", t.exponent}, {"coefficient", t.coeff}});
  return {{"terms", terms}, {"display", f.display(word_count)}};
}

inline Json whitehead_graph_json(const WhiteheadGraph& g, bool with_sigma = true) {
  Json j;
  j["operation"] = "whitehead_graph";
  j["rank"] = g.alphabet().rank;
  Json words = Json::array();
  for (const Word& w : g.words()) words.push_back(w.str());
  j["words"] = words;
  j["polynomial"] = polynomial_json(g.polynomial(), static_cast<int>(g.words().size()));
  j["edge_count"] = g.edge_count();
  Json degrees = Json::object();
  for (int v = 0; v < g.vertex_count(); ++v)
    degrees[vertex_name(v)] = g.degree(v);
  j["degrees"] = degrees;
  Json edges = Json::array();
  for (const WGEdge& e : g.edges())
    edges.push_back({{"id", e.id},
                     {"ends", {vertex_name(e.ends[0]), vertex_name(e.ends[1])}},
                     {"word", e.prov.word + 1},
                     {"exponent", e.prov.exponent},
                     {"copy", e.prov.copy + 1},
                     {"position", e.prov.position + 1}});
  j["edges"] = edges;
  if (with_sigma) {
    // pairs of incidence records: sigma(e, v) = e', with v^-1 on e'
    Json sigma = Json::array();
    for (const WGEdge& e : g.edges())
      for (VertexId v : e.ends)
        sigma.push_back({{"edge", e.id},
                         {"at", vertex_name(v)},
                         {"next", g.sigma({e.id, v})},
                         {"next_at", vertex_name(vertex_inverse(v))}});
    j["sigma"] = sigma;
  }
  return j;
}

inline std::string whitehead_graph_dot(const WhiteheadGraph& g,
                                       const std::string& name = "W") {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < g.vertex_count(); ++v)
    os << "  " << vertex_name(v) << ";\n";
  for (const WGEdge& e : g.edges())
    os << "  " << vertex_name(e.ends[0]) << " -- " << vertex_name(e.ends[1])
       << " [label=\"e" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

inline Json manning_json(const ManningVerdict& v) {
  Json j;
  j["operation"] = "manning_obstruction";
  j["applies"] = v.applies;
  if (v.k)
    j["k"] = *v.k;
  else
    j["k"] = nullptr;
  Json witness;
  if (v.valence)
    witness["k_valent"] = *v.valence;
  else
    witness["k_valent"] = nullptr;
  witness["edge_connectivity"] = v.edge_conn;
  witness["planar"] = v.planar;
  j["witness"] = witness;
  j["meaning"] =
      v.applies ? "not virtually geometric" : "inconclusive";
  return j;
}

inline Json move_json(const WhiteheadMove& m) {
  Json j;
  if (m.kind == WhiteheadMove::Kind::multiplier) {
    j["type"] = "multiplier";
    j["multiplier"] = std::string(1, m.multiplier.to_char());
    Json set = Json::array();
    for (Letter x : m.set) set.push_back(std::string(1, x.to_char()));
    j["set"] = set;
  } else {
    j["type"] = "permutation";
    Json imgs = Json::array();
    for (Letter x : m.letter_images) imgs.push_back(std::string(1, x.to_char()));
    j["images"] = imgs;
  }
  return j;
}

inline Json trace_json(const ReductionTrace& t) {
  Json j;
  j["operation"] = "minimize";
  Json initial = Json::array();
  for (const Word& w : t.initial) initial.push_back(w.str());
  j["initial"] = initial;
  j["initial_total_length"] = t.initial_length();
  Json steps = Json::array();
  for (const ReductionStep& s : t.steps) {
    Json step = move_json(s.move);
    step["total_length_after"] = s.total_length_after;
    steps.push_back(step);
  }
  j["steps"] = steps;
  Json final_words = Json::array();
  for (const Word& w : t.final_words) final_words.push_back(w.str());
  j["final"] = final_words;
  j["final_total_length"] = t.final_length();
  return j;
}

inline Json decomposition_json(const CycleDecomposition& dec) {
  Json cycles = Json::array();
  for (const auto& c : dec.cycles) {
    Json vertices = Json::array();
    for (VertexId v : c.vertices) vertices.push_back(vertex_name(v));
    cycles.push_back(
        {{"edges", c.edges}, {"vertices", vertices}, {"length", c.length()}});
  }
  Json j;
  j["cycles"] = cycles;
  j["cycle_lengths"] = dec.length_multiset();
  return j;
}

inline Json surface_json(const SurfaceReport& r) {
  Json j;
  Json polys = Json::array();
  for (const PolygonSpec& p : r.polygons) {
    std::string b;
    for (Letter x : p.boundary) b.push_back(x.to_char());
    polys.push_back({{"word", p.word + 1},
                     {"exponent", p.exponent},
                     {"copy", p.copy + 1},
                     {"boundary", b}});
  }
  j["polygons"] = polys;
  Json pairs = Json::array();
  for (auto [a, b] : r.pairing.pairs) pairs.push_back({a + 1, b + 1});
  j["pairs"] = pairs;
  j["vertices"] = r.vertex_count;
  j["edges"] = r.edge_count;
  j["faces"] = r.face_count;
  j["euler"] = r.euler;
  j["immersed"] = r.immersed;
  j["polygonal"] = r.polygonal;
  j["doubled_euler"] = r.doubled_euler;
  j["cover_degree_hint"] = r.cover_degree_hint;
  j["orientable"] = r.orientable;
  j["genus"] = r.genus;
  Json links = Json::array();
  for (const auto& link : r.links) {
    Json corners = Json::array();
    for (const LinkCorner& c : link)
      corners.push_back({{"polygon", c.polygon + 1},
                         {"corner", c.vertex + 1},
                         {"in", std::string(1, c.in.to_char())},
                         {"out", std::string(1, c.out.to_char())}});
    links.push_back(corners);
  }
  Json qedges = Json::array();
  for (const QuotientEdge& e : r.quotient_edges)
    qedges.push_back({{"label", std::string(1, Letter(e.gen, +1).to_char())},
                      {"tail", e.tail},
                      {"head", e.head}});
  j["one_skeleton"] = qedges;
  j["links"] = links;
  j["link_cycles"] = decomposition_json(r.induced);
  return j;
}

// The quotient 1-complex as a labeled digraph.
inline std::string surface_one_skeleton_dot(const SurfaceReport& r,
                                            const std::string& name = "S1") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < r.vertex_count; ++v) os << "  v" << v << ";\n";
  for (const QuotientEdge& e : r.quotient_edges)
    os << "  v" << e.tail << " -> v" << e.head << " [label=\""
       << Letter(e.gen, +1).to_char() << "\"];\n";
  os << "}\n";
  return os.str();
}

inline Json transition_system_json(const TransitionSystem& ts) {
  Json matchings = Json::object();
  for (size_t gi = 0; gi < ts.matchings.size(); ++gi) {
    if (ts.matchings[gi].empty()) continue;
    Json pairs = Json::array();
    for (const auto& [a, b] : ts.matchings[gi])
      pairs.push_back({a.edge, b.edge});
    matchings[std::string(1, Letter(static_cast<int>(gi) + 1, +1).to_char())] =
        pairs;
  }
  return {{"matchings_at_positive_vertices", matchings}};
}

inline Json certificate_json(const PolygonalityCertificate& cert,
                             int word_count) {
  Json j;
  if (cert.is_proper_power()) {
    const auto& pp = std::get<ProperPowerCertificate>(cert.value);
    j["kind"] = "proper_power";
    j["word"] = pp.word.str();
    j["root"] = pp.root.str();
    j["exponent"] = pp.exponent;
  } else {
    const auto& sc = std::get<SurfaceCertificate>(cert.value);
    j["kind"] = "surface";
    j["polynomial"] = polynomial_json(sc.f, word_count);
    j["system_index"] = sc.system_index;
    j["transition_system"] = transition_system_json(sc.system);
    j["decomposition"] = decomposition_json(sc.decomposition);
    j["surface"] = surface_json(sc.surface);
  }
  return j;
}

inline Json bounds_json(const SearchBounds& b) {
  Json j;
  j["max_exponent"] = b.max_exponent;
  j["max_coefficient"] = b.max_coefficient;
  j["max_total_edges"] = b.max_total_edges;
  if (b.time_budget_ms > 0) j["time_budget_ms"] = b.time_budget_ms;
  return j;
}

inline Json diskbusting_json(const DiskbustingVerdict& v) {
  Json j;
  j["operation"] = "is_diskbusting";
  j["value"] = v.value;
  Json witness;
  Json minimized = Json::array();
  for (const Word& w : v.trace.final_words) minimized.push_back(w.str());
  witness["minimized"] = minimized;
  witness["connected"] = v.connected;
  Json cuts = Json::array();
  for (VertexId c : v.cut_vertices) cuts.push_back(vertex_name(c));
  witness["cut_vertices"] = cuts;
  j["witness"] = witness;
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace polyg
