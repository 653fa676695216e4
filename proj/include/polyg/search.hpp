// The polygonality search: proper powers first, then polynomials in
// graded order and transition systems in odometer order until a traced
// decomposition is accepted, at which point the surface it encodes is
// built and certified.
//
// Words are taken as given, not auto-minimized: polygonality depends on
// the basis. Exhaustion at the bounds is reported as such and proves
// nothing. The (polynomial x system) space is split into independent
// ranges for parallel scans; the reported certificate is always the
// canonically first accepted one, so results do not depend on
// scheduling.

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "polyg/surface.hpp"
#include "polyg/transition.hpp"

namespace polyg {

struct ProperPowerCertificate {
  Word word;
  Word root;
  int exponent = 2;
};

struct SurfaceCertificate {
  Polynomial f;
  uint64_t system_index = 0;  // position in the transition-system odometer
  TransitionSystem system;
  CycleDecomposition decomposition;
  SurfaceReport surface;
};

struct PolygonalityCertificate {
  std::variant<ProperPowerCertificate, SurfaceCertificate> value;

  bool is_proper_power() const {
    return std::holds_alternative<ProperPowerCertificate>(value);
  }
};

struct SearchOutcome {
  std::optional<PolygonalityCertificate> certificate;
  bool timed_out = false;
  // Canonical counters: on success, systems up to and including the hit;
  // on exhaustion, the whole space. Independent of the job count.
  uint64_t polynomials_tried = 0;
  uint64_t systems_tried = 0;
};

namespace detail {

class Deadline {
public:
  explicit Deadline(long budget_ms) {
    if (budget_ms > 0)
      end_ = std::chrono::steady_clock::now() +
             std::chrono::milliseconds(budget_ms);
  }
  bool expired() const {
    return end_ && std::chrono::steady_clock::now() >= *end_;
  }

private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

// Least accepted index in [0, N), or UINT64_MAX. Ranges are scanned in
// parallel; the minimum over successes is scheduling-independent.
inline uint64_t first_accepted_index(const WhiteheadGraph& g,
                                     const TransitionSystemSpace& space,
                                     uint64_t total, int jobs,
                                     const Deadline& deadline,
                                     bool& timed_out) {
  std::atomic<uint64_t> best{UINT64_MAX};
  std::atomic<bool> expired{false};
  auto scan = [&](uint64_t lo, uint64_t hi) {
    for (uint64_t idx = lo; idx < hi; ++idx) {
      if (idx >= best.load(std::memory_order_relaxed)) return;
      if ((idx & 0xff) == 0 && deadline.expired()) {
        expired.store(true, std::memory_order_relaxed);
        return;
      }
      TransitionSystem ts = space.at(idx);
      if (trace_cycles(g, ts).decomposition) {
        uint64_t cur = best.load(std::memory_order_relaxed);
        while (idx < cur &&
               !best.compare_exchange_weak(cur, idx, std::memory_order_relaxed))
          ;
        return;
      }
    }
  };
  int workers = static_cast<int>(
      std::min<uint64_t>(total, static_cast<uint64_t>(std::max(jobs, 1))));
  if (workers <= 1) {
    scan(0, total);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = total / static_cast<uint64_t>(workers);
    for (int k = 0; k < workers; ++k) {
      uint64_t lo = chunk * static_cast<uint64_t>(k);
      uint64_t hi = (k == workers - 1) ? total : lo + chunk;
      pool.emplace_back(scan, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (expired.load()) timed_out = true;
  return best.load();
}

inline void validate_search_input(const std::vector<Word>& words) {
  if (words.empty()) fail("search requires at least one word");
  for (const Word& w : words) {
    if (w.empty()) fail("search requires nonempty words");
    if (!w.is_cyclically_reduced())
      fail("search requires cyclically reduced words: " + w.str());
  }
  if (!are_independent(words))
    fail("search requires an independent word set");
}

}  // namespace detail

// Build and certify the surface for an accepted system: the Euler count
// chi = t - E/2 + m and the equivalence chi < m iff 2t < sum of cycle
// lengths are asserted numerically, never assumed.
inline SurfaceCertificate certify_system(const WhiteheadGraph& g,
                                         const Polynomial& f,
                                         uint64_t system_index,
                                         const TransitionSystem& ts,
                                         const CycleDecomposition& dec) {
  if (!sigma_closure_holds(g, dec))
    fail("accepted decomposition fails sigma-closure");
  SurfaceReport surface = build_surface(g, dec);
  int t = static_cast<int>(dec.cycles.size());
  int total_len = 0;
  for (const auto& c : dec.cycles) total_len += c.length();
  if (total_len != g.edge_count())
    fail("accepted decomposition does not partition the edges");
  if (surface.euler != t - g.edge_count() / 2 + surface.face_count)
    fail("surface Euler count disagrees with the cycle formula");
  bool chi_lt_m = surface.euler < surface.face_count;
  if (chi_lt_m != (2 * t < total_len))
    fail("chi < m is not equivalent to 2t < total cycle length");
  if (!chi_lt_m) fail("accepted decomposition yields chi = m");
  return SurfaceCertificate{f, system_index, ts, dec, surface};
}

inline SearchOutcome search_certificate(const std::vector<Word>& words,
                                        const SearchBounds& bounds,
                                        int jobs = 1) {
  bounds.validate();
  detail::validate_search_input(words);
  SearchOutcome outcome;

  for (const Word& w : words) {
    RootPower rp = primitive_root(w);
    if (rp.exponent >= 2) {
      outcome.certificate = PolygonalityCertificate{
          ProperPowerCertificate{w, rp.root, rp.exponent}};
      return outcome;
    }
  }

  std::vector<int> lengths;
  for (const Word& w : words) lengths.push_back(w.size());
  std::vector<Polynomial> polys = enumerate_polynomials(lengths, bounds);
  detail::Deadline deadline(bounds.time_budget_ms);

  for (const Polynomial& f : polys) {
    ++outcome.polynomials_tried;
    WhiteheadGraph g = whitehead_graph(words, f);
    TransitionSystemSpace space(g);
    uint64_t total = space.count();
    if (total == 0) continue;
    bool timed_out = false;
    uint64_t hit =
        detail::first_accepted_index(g, space, total, jobs, deadline, timed_out);
    if (hit != UINT64_MAX) {
      outcome.systems_tried += hit + 1;
      TransitionSystem ts = space.at(hit);
      TraceResult traced = trace_cycles(g, ts);
      outcome.certificate = PolygonalityCertificate{
          certify_system(g, f, hit, ts, *traced.decomposition)};
      return outcome;
    }
    outcome.systems_tried += total;
    if (timed_out) {
      outcome.timed_out = true;
      return outcome;
    }
  }
  return outcome;
}

// Exhaustive variant: every accepted decomposition across the bounded
// space, in canonical order.
inline void search_all(const std::vector<Word>& words,
                       const SearchBounds& bounds,
                       const std::function<void(const SurfaceCertificate&)>& emit) {
  bounds.validate();
  detail::validate_search_input(words);
  std::vector<int> lengths;
  for (const Word& w : words) lengths.push_back(w.size());
  detail::Deadline deadline(bounds.time_budget_ms);
  for (const Polynomial& f : enumerate_polynomials(lengths, bounds)) {
    WhiteheadGraph g = whitehead_graph(words, f);
    TransitionSystemSpace space(g);
    uint64_t total = space.count();
    for (uint64_t idx = 0; idx < total; ++idx) {
      if (deadline.expired()) return;
      TransitionSystem ts = space.at(idx);
      TraceResult traced = trace_cycles(g, ts);
      if (traced.decomposition)
        emit(certify_system(g, f, idx, ts, *traced.decomposition));
    }
  }
}

}  // namespace polyg
