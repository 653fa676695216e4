// polyg: Whitehead-graph analysis and polygonality certificates for
// words in free groups.
//
// Exit codes: 0 success / certificate found; 2 input error; 3 negative
// result (no certificate at the bounds, non-polygonal surface, label
// mismatch).

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "polyg/polyg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNegative = 3;

int default_jobs() {
  if (const char* env = std::getenv("POLYG_JOBS")) {
    int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

std::vector<polyg::Word> parse_words(const std::vector<std::string>& texts,
                                     int rank_flag) {
  polyg::Alphabet ab = polyg::infer_alphabet(texts);
  if (rank_flag > 0) {
    if (rank_flag < ab.rank)
      polyg::fail("--rank " + std::to_string(rank_flag) +
                  " is below the highest generator used");
    ab = polyg::Alphabet(rank_flag);
  }
  std::vector<polyg::Word> words;
  for (const std::string& t : texts) words.push_back(polyg::parse_word(t, ab));
  return words;
}

// "1-2,3-7,..." -> 0-based pairs
polyg::SidePairing parse_pairs(const std::string& text) {
  auto number = [](const std::string& s) {
    if (s.empty() || s.size() > 6 ||
        !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      polyg::fail("malformed pair component '" + s + "'");
    return std::stoi(s);
  };
  polyg::SidePairing sp;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    size_t dash = item.find('-');
    if (dash == std::string::npos)
      polyg::fail("malformed pair '" + item + "' (expected like 3-7)");
    int a = number(item.substr(0, dash));
    int b = number(item.substr(dash + 1));
    if (a < 1 || b < 1) polyg::fail("pair positions are 1-based");
    sp.pairs.push_back({a - 1, b - 1});
  }
  if (sp.pairs.empty()) polyg::fail("empty pair list");
  return sp;
}

int cmd_analyze(const std::string& text, int rank_flag,
                const std::string& dot_path, bool certify) {
  std::vector<polyg::Word> words = parse_words({text}, rank_flag);
  polyg::Word w = polyg::cyclic_reduce(words[0]);
  if (w.empty()) polyg::fail("word is trivial after cyclic reduction");

  polyg::Json j;
  j["input"] = {{"word", text}, {"rank", w.alphabet().rank}};
  j["cyclically_reduced"] = w.str();
  polyg::RootPower rp = polyg::primitive_root(w);
  j["root"] = {{"operation", "primitive_root"},
               {"root", rp.root.str()},
               {"exponent", rp.exponent}};
  polyg::DiskbustingVerdict disk = polyg::is_diskbusting({w});
  j["reduction"] = polyg::trace_json(disk.trace);
  j["diskbusting"] = polyg::diskbusting_json(disk);

  polyg::WhiteheadGraph g = polyg::whitehead_graph(w);
  j["whitehead_graph"] = polyg::whitehead_graph_json(g);
  polyg::Multigraph m = polyg::underlying_multigraph(g);
  polyg::Json graph;
  graph["connected"] = {{"operation", "is_connected"},
                        {"value", polyg::is_connected(m)}};
  polyg::Json cuts = polyg::Json::array();
  for (int v : polyg::cut_vertices(m)) cuts.push_back(polyg::vertex_name(v));
  graph["cut_vertices"] = {{"operation", "cut_vertices"}, {"value", cuts}};
  graph["edge_connectivity"] = {{"operation", "edge_connectivity"},
                                {"value", polyg::edge_connectivity(m)}};
  graph["planar"] = {{"operation", "is_planar"},
                     {"value", polyg::is_planar(m)}};
  std::optional<int> valence = polyg::is_k_valent(m);
  graph["k_valent"] = {{"operation", "is_k_valent"},
                       {"value", valence ? polyg::Json(*valence) : polyg::Json(nullptr)}};
  j["graph"] = graph;
  j["manning"] = polyg::manning_json(polyg::manning_obstruction(w));
  if (certify) {
    polyg::SearchOutcome out =
        polyg::search_certificate({w}, polyg::SearchBounds{}, default_jobs());
    j["certificate"] = out.certificate
                           ? polyg::certificate_json(*out.certificate, 1)
                           : polyg::Json(nullptr);
  }

  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) polyg::fail("cannot write DOT file " + dot_path);
    out << polyg::whitehead_graph_dot(g);
  }
  std::cout << polyg::dump(j);
  return kExitOk;
}

// Size of the bounded (polynomial x transition-system) space, saturated
// at UINT64_MAX; lets us warn before a multi-hour exhaustive scan.
uint64_t bounded_space_size(const std::vector<polyg::Word>& words,
                            const polyg::SearchBounds& bounds) {
  std::vector<int> lengths;
  for (const polyg::Word& w : words) lengths.push_back(w.size());
  auto sat_mul = [](uint64_t a, uint64_t b) {
    return (a != 0 && b > UINT64_MAX / a) ? UINT64_MAX : a * b;
  };
  uint64_t total = 0;
  for (const polyg::Polynomial& f :
       polyg::enumerate_polynomials(lengths, bounds)) {
    uint64_t systems = 1;
    int rank = words.front().alphabet().rank;
    for (int gen = 1; gen <= rank && systems > 0; ++gen) {
      long deg = 0;
      for (const polyg::PolyTerm& t : f.terms()) {
        const polyg::Word& w = words[static_cast<size_t>(t.word)];
        int occurrences = 0;
        for (const polyg::Letter& x : w.letters())
          if (x.gen == gen) ++occurrences;
        deg += static_cast<long>(t.coeff) * t.exponent * occurrences;
      }
      if (deg % 2 != 0) {
        systems = 0;
        break;
      }
      for (long d = deg - 1; d > 1; d -= 2)
        systems = sat_mul(systems, static_cast<uint64_t>(d));
    }
    total = total > UINT64_MAX - systems ? UINT64_MAX : total + systems;
  }
  return total;
}

int cmd_search(const std::vector<std::string>& texts, int rank_flag,
               polyg::SearchBounds bounds, bool all, int jobs) {
  std::vector<polyg::Word> words = parse_words(texts, rank_flag);
  for (polyg::Word& w : words) w = polyg::cyclic_reduce(w);

  uint64_t space = bounded_space_size(words, bounds);
  if (space > 100000000ull && bounds.time_budget_ms == 0)
    std::cerr << "note: the bounded space holds "
              << (space == UINT64_MAX ? std::string(">1e19")
                                      : std::to_string(space))
              << " transition systems; exhausting it may take very long "
                 "(consider --max-edges, --max-coeff or --time-budget-ms)\n";

  polyg::Json j;
  polyg::Json query = polyg::Json::array();
  for (const polyg::Word& w : words) query.push_back(w.str());
  j["words"] = query;
  j["bounds"] = polyg::bounds_json(bounds);

  if (all) {
    polyg::Json certs = polyg::Json::array();
    polyg::search_all(words, bounds, [&](const polyg::SurfaceCertificate& sc) {
      certs.push_back(polyg::certificate_json(
          polyg::PolygonalityCertificate{sc}, static_cast<int>(words.size())));
    });
    j["certificates"] = certs;
    j["found"] = !certs.empty();
    std::cout << polyg::dump(j);
    return certs.empty() ? kExitNegative : kExitOk;
  }

  polyg::SearchOutcome outcome = polyg::search_certificate(words, bounds, jobs);
  j["polynomials_tried"] = outcome.polynomials_tried;
  j["systems_tried"] = outcome.systems_tried;
  if (outcome.certificate) {
    j["found"] = true;
    j["certificate"] =
        polyg::certificate_json(*outcome.certificate, static_cast<int>(words.size()));
    std::cout << polyg::dump(j);
    return kExitOk;
  }
  j["found"] = false;
  j["certificate"] = nullptr;
  j["exhausted"] = !outcome.timed_out;
  j["timed_out"] = outcome.timed_out;
  if (outcome.polynomials_tried == 0)
    std::cerr << "note: no polynomial fits --max-edges "
              << bounds.max_total_edges << "; raise it for words this long\n";
  std::cout << polyg::dump(j);
  return kExitNegative;
}

int cmd_verify(const std::string& text, int rank_flag, int power, int copies,
               const std::string& pairs_text, const std::string& dot_path) {
  std::vector<polyg::Word> words = parse_words({text}, rank_flag);
  const polyg::Word& w = words[0];
  if (w.empty() || !w.is_cyclically_reduced())
    polyg::fail("verify requires a nonempty cyclically reduced word "
                "(positions refer to the word as given)");
  if (power < 1 || copies < 1) polyg::fail("--power and --copies must be >= 1");
  polyg::SidePairing sp = parse_pairs(pairs_text);
  polyg::Polynomial f({{0, power, copies}});

  polyg::SurfaceReport report;
  try {
    report = polyg::verify_side_pairing({w}, f, sp);
  } catch (const polyg::PairingError& e) {
    polyg::Json err;
    err["error"] = e.what();
    if (e.pair.first >= 0)
      err["pair"] = {e.pair.first + 1, e.pair.second + 1};
    std::cout << polyg::dump(err);
    return e.kind == polyg::PairingError::Kind::label_mismatch ? kExitNegative
                                                               : kExitInput;
  }
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) polyg::fail("cannot write DOT file " + dot_path);
    out << polyg::surface_one_skeleton_dot(report);
  }
  polyg::Json j;
  j["word"] = w.str();
  j["power"] = power;
  j["copies"] = copies;
  j["surface"] = polyg::surface_json(report);
  std::cout << polyg::dump(j);
  return report.polygonal ? kExitOk : kExitNegative;
}

int cmd_oracle(const std::string& text, int rank_flag, int power, int copies,
               bool full) {
  std::vector<polyg::Word> words = parse_words({text}, rank_flag);
  const polyg::Word& w = words[0];
  if (w.empty() || !w.is_cyclically_reduced())
    polyg::fail("oracle requires a nonempty cyclically reduced word");
  std::vector<polyg::SurfaceReport> reports =
      polyg::oracle_enumerate(w, power, copies);
  int polygonal = 0;
  for (const auto& r : reports)
    if (r.polygonal) ++polygonal;
  polyg::Json j;
  j["operation"] = "oracle_enumerate";
  j["word"] = w.str();
  j["power"] = power;
  j["copies"] = copies;
  j["pairings"] = reports.size();
  j["polygonal_pairings"] = polygonal;
  polyg::Json arr = polyg::Json::array();
  for (const auto& r : reports)
    if (full || r.polygonal) arr.push_back(polyg::surface_json(r));
  j[full ? "reports" : "polygonal_reports"] = arr;
  std::cout << polyg::dump(j);
  return polygonal > 0 ? kExitOk : kExitNegative;
}

int cmd_reduce(const std::vector<std::string>& texts, int rank_flag) {
  std::vector<polyg::Word> words = parse_words(texts, rank_flag);
  for (polyg::Word& w : words) w = polyg::cyclic_reduce(w);
  for (const polyg::Word& w : words)
    if (w.empty()) polyg::fail("trivial word in reduce input");
  polyg::ReductionTrace trace = polyg::minimize(words);
  std::cout << polyg::dump(polyg::trace_json(trace));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead-graph analysis and polygonality certificates for "
               "words in free groups"};
  app.require_subcommand(1);
  int rank = 0;

  auto* analyze = app.add_subcommand(
      "analyze", "Roots, minimization, diskbusting, Whitehead-graph "
                 "statistics and the non-virtual-geometricity obstruction");
  std::string analyze_word, dot_path;
  bool certify = false;
  analyze->add_option("word", analyze_word, "word, e.g. bbaaccabc")->required();
  analyze->add_option("--rank", rank, "alphabet rank (default: inferred)");
  analyze->add_option("--dot", dot_path, "write the Whitehead graph as DOT");
  analyze->add_flag("--certify", certify,
                    "also search for a polygonality certificate at default "
                    "bounds");

  auto* search = app.add_subcommand(
      "search", "Search for a polygonality certificate over bounded "
                "polynomials and transition systems");
  std::vector<std::string> search_words;
  polyg::SearchBounds bounds;
  bool all = false;
  int jobs = default_jobs();
  search->add_option("words", search_words, "independent cyclically reduced words")
      ->required();
  search->add_option("--rank", rank, "alphabet rank (default: inferred)");
  search->add_option("--max-exp", bounds.max_exponent, "max exponent J");
  search->add_option("--max-coeff", bounds.max_coefficient, "max coefficient C");
  search->add_option("--max-edges", bounds.max_total_edges, "max total edges");
  search->add_option("--time-budget-ms", bounds.time_budget_ms,
                     "stop after this many milliseconds (0 = off)");
  search->add_flag("--all", all, "list every accepted decomposition");
  search->add_option("--jobs", jobs, "parallel workers (env POLYG_JOBS)");

  auto* verify = app.add_subcommand(
      "verify", "Glue an explicit side-pairing and report the surface");
  std::string verify_word, pairs_text;
  int power = 1, copies = 1;
  verify->add_option("word", verify_word, "cyclically reduced word")->required();
  verify->add_option("--rank", rank, "alphabet rank (default: inferred)");
  verify->add_option("--power", power, "boundary reads word^power");
  verify->add_option("--copies", copies, "number of polygons");
  verify->add_option("--pairs", pairs_text, "pairing, e.g. 1-2,3-7,...")
      ->required();
  std::string surface_dot_path;
  verify->add_option("--dot", surface_dot_path,
                     "write the glued 1-skeleton as DOT");

  auto* oracle = app.add_subcommand(
      "oracle", "Enumerate and glue every side-pairing (small inputs only)");
  std::string oracle_word;
  bool full = false;
  oracle->add_option("word", oracle_word, "cyclically reduced word")->required();
  oracle->add_option("--rank", rank, "alphabet rank (default: inferred)");
  oracle->add_option("--power", power, "boundary reads word^power");
  oracle->add_option("--copies", copies, "number of polygons");
  oracle->add_flag("--full", full, "include non-polygonal reports");

  auto* reduce = app.add_subcommand(
      "reduce", "Whitehead-move length minimization with full trace");
  std::vector<std::string> reduce_words;
  reduce->add_option("words", reduce_words, "cyclically reduced words")->required();
  reduce->add_option("--rank", rank, "alphabet rank (default: inferred)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(analyze_word, rank, dot_path, certify);
    if (*search) return cmd_search(search_words, rank, bounds, all, jobs);
    if (*verify)
      return cmd_verify(verify_word, rank, power, copies, pairs_text,
                        surface_dot_path);
    if (*oracle) return cmd_oracle(oracle_word, rank, power, copies, full);
    if (*reduce) return cmd_reduce(reduce_words, rank);
  } catch (const polyg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
