#include "diskpat/decide.hpp"

#include <algorithm>
#include <future>

namespace diskpat {

namespace {

// Degenerate weight-0 meridians: a slotless disk or a face with several
// boundary walks (its walk-splitting curve misses the pattern entirely).
std::optional<MeridianWitness> weight_zero_witness(const CutSurface& s) {
  for (int d = 0; d < s.num_disks(); ++d)
    if (s.disk_weight(d) == 0) {
      MeridianWitness w;
      w.kind = MeridianWitness::Kind::SystemDisk;
      w.disk_id = s.disk_id(d);
      w.weight = 0;
      return w;
    }
  for (FaceIndex f = 0; f < s.num_faces(); ++f)
    if (s.face(f).walks.size() >= 2) {
      MeridianWitness w;
      w.kind = MeridianWitness::Kind::SparseFace;
      w.face = f;
      w.weight = 0;
      return w;
    }
  return std::nullopt;
}

struct SwapCandidate {
  NormalCurve curve;
  DiskIndex disk = -1;
  int reduction = 0;
};

}  // namespace

Terminal run_to_terminal(const CutSurface& pattern,
                         const DecisionOptions& opts) {
  DiskSystemState st(pattern);
  {
    // Degenerate inputs short-circuit before any surgery.
    auto w = weight_zero_witness(st.surface());
    if (w) return Terminal{std::move(st), 0, {*w}, 0};
  }
  st = to_minimal_system(std::move(st));

  const int iteration_cap = st.total_weight() + st.surface().num_disks() + 4;
  for (int iter = 0; iter <= iteration_cap; ++iter) {
    const CutSurface& s = st.surface();
    if (auto w = weight_zero_witness(s))
      return Terminal{std::move(st), 0, {*w}, 0};
    if (find_wave(st)) {
      st = make_waveless(std::move(st));
      continue;
    }

    int max_w = st.max_disk_weight();
    EnumerationOptions eopts;
    eopts.budget = opts.budget;
    eopts.max_weight = max_w;
    std::vector<NormalCurve> classes = enumerate_curves(s, eopts);

    // Reducing swaps: a curve splitting a disk pair with fewer crossings
    // than the disk it replaces.  Swaps that would orphan a pattern curve
    // are skipped; the light parallel copies already cap the supremum.
    std::optional<SwapCandidate> best;
    for (const auto& curve : classes) {
      auto part = side_partition(s, curve);
      for (int d = 0; d < s.num_disks(); ++d) {
        if (!part.separates(s.plus_circle(d), s.minus_circle(d))) continue;
        int reduction = s.disk_weight(d) - curve.weight();
        if (reduction <= 0) continue;
        bool better =
            !best || reduction > best->reduction ||
            (reduction == best->reduction &&
             (curve.itinerary < best->curve.itinerary ||
              (curve.itinerary == best->curve.itinerary && d < best->disk)));
        if (better) best = SwapCandidate{curve, d, reduction};
      }
    }
    if (best) {
      bool applied = false;
      try {
        st = disk_swap(st, best->disk, best->curve);
        applied = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OrphanedCurve) throw;
      }
      if (applied) continue;
      // Orphaning swap: fall through and treat the state as terminal;
      // the curve still participates in the supremum below.
    }

    Terminal t{std::move(st), 0, {}, static_cast<long long>(classes.size())};
    const CutSurface& fs = t.state.surface();
    int n_sup = -1;
    for (int d = 0; d < fs.num_disks(); ++d)
      n_sup = (n_sup == -1) ? fs.disk_weight(d)
                            : std::min(n_sup, fs.disk_weight(d));
    for (const auto& curve : classes) n_sup = std::min(n_sup, curve.weight());
    t.n_sup = n_sup;
    for (int d = 0; d < fs.num_disks(); ++d)
      if (fs.disk_weight(d) == n_sup) {
        MeridianWitness w;
        w.kind = MeridianWitness::Kind::SystemDisk;
        w.disk_id = fs.disk_id(d);
        w.weight = n_sup;
        t.minimal_meridians.push_back(std::move(w));
      }
    for (const auto& curve : classes)
      if (curve.weight() == n_sup) {
        MeridianWitness w;
        w.kind = MeridianWitness::Kind::Curve;
        w.curve = curve;
        w.weight = n_sup;
        t.minimal_meridians.push_back(std::move(w));
      }
    return t;
  }
  fail(ErrorCode::Internal, "reduction loop exceeded its move bound");
}

Decision decide_disk_condition(const CutSurface& pattern, int n,
                               const DecisionOptions& opts) {
  require(n >= 1, ErrorCode::BadParam, "disk-condition level must be >= 1");
  Decision d;
  d.requested_n = n;
  d.terminal = run_to_terminal(pattern, opts);
  d.certified = d.terminal.n_sup >= n;
  return d;
}

int supremum(const CutSurface& pattern, const DecisionOptions& opts) {
  return run_to_terminal(pattern, opts).n_sup;
}

// -----------------------------------------------------------------------

namespace {

const std::array<std::array<int, 3>, 3> kMinimalTriples = {
    {{6, 6, 6}, {4, 8, 8}, {4, 6, 12}}};

std::string dominated_triple(std::array<int, 3> ns) {
  std::sort(ns.begin(), ns.end());
  for (const auto& t : kMinimalTriples) {
    auto sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (ns[0] >= sorted[0] && ns[1] >= sorted[1] && ns[2] >= sorted[2]) {
      return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]) + ")";
    }
  }
  return "";
}

}  // namespace

ManifoldReport manifold_check(const std::array<ManifoldInput, 3>& inputs,
                              const DecisionOptions& opts) {
  ManifoldReport report;
  std::array<std::future<Decision>, 3> futures;
  for (int i = 0; i < 3; ++i) {
    require(inputs[i].n >= 1, ErrorCode::BadParam, "n_i must be >= 1");
    futures[i] = std::async(std::launch::async, [&, i] {
      return decide_disk_condition(inputs[i].pattern, inputs[i].n, opts);
    });
  }
  for (int i = 0; i < 3; ++i) {
    Decision d = futures[i].get();
    report.parts[i].name = inputs[i].name;
    report.parts[i].n = inputs[i].n;
    report.parts[i].certified = d.certified;
    report.parts[i].n_sup = d.terminal.n_sup;
    report.parts[i].triple_curve_count =
        static_cast<int>(trace_triple_curves(inputs[i].pattern).size());
  }
  report.sum = Rational(1, inputs[0].n) + Rational(1, inputs[1].n) +
               Rational(1, inputs[2].n);
  report.sum_ok = report.sum <= Rational(1, 2);
  report.all_certified = report.parts[0].certified &&
                         report.parts[1].certified &&
                         report.parts[2].certified;
  report.pass = report.sum_ok && report.all_certified;
  report.dominated_minimal_triple =
      dominated_triple({inputs[0].n, inputs[1].n, inputs[2].n});
  report.triple_counts_agree =
      report.parts[0].triple_curve_count == report.parts[1].triple_curve_count &&
      report.parts[1].triple_curve_count == report.parts[2].triple_curve_count;
  return report;
}

GammaPrimeClause gamma_prime_clause(const CutSurface& pattern,
                                    const DecisionOptions& opts) {
  Terminal t = run_to_terminal(pattern, opts);
  GammaPrimeClause clause;
  const CutSurface& s = t.state.surface();
  if (t.n_sup == 0) return clause;  // degenerate pattern, clause fails

  // Maximality: every face is a disk and within each face every pair of
  // circle segments is adjacent across a single arc side, so every
  // essential arc class is parallel into the pattern.
  clause.maximal = true;
  for (FaceIndex f = 0; f < s.num_faces() && clause.maximal; ++f) {
    if (s.face(f).walks.size() != 1) {
      clause.maximal = false;
      break;
    }
    const auto& walk = s.face(f).walks[0];
    const int len = static_cast<int>(walk.size());
    std::vector<int> segs;
    for (int i = 0; i < len; ++i)
      if (!walk[i].is_port) segs.push_back(i);
    for (size_t a = 0; a < segs.size() && clause.maximal; ++a)
      for (size_t b = a + 1; b < segs.size() && clause.maximal; ++b) {
        int fwd = (segs[b] - segs[a] + len) % len;
        int bwd = (segs[a] - segs[b] + len) % len;
        if (fwd != 2 && bwd != 2) clause.maximal = false;
      }
  }

  clause.two_cycle_free = true;
  for (int comp = 0; comp < s.num_components() && clause.two_cycle_free;
       ++comp) {
    if (s.component(comp).arcs.empty()) {
      clause.two_cycle_free = false;
      continue;
    }
    GammaPrime g = build_gamma_prime(s, comp);
    for (size_t i = 0; i < g.edges.size() && clause.two_cycle_free; ++i)
      for (size_t j = i + 1; j < g.edges.size(); ++j)
        if (g.edges[i].u == g.edges[j].u && g.edges[i].v == g.edges[j].v) {
          clause.two_cycle_free = false;
          break;
        }
  }
  return clause;
}

AtoroidalReport atoroidal_check(const std::array<ManifoldInput, 3>& inputs,
                                const DecisionOptions& opts) {
  AtoroidalReport report;
  report.manifold = manifold_check(inputs, opts);
  report.strict_sum = report.manifold.sum < Rational(1, 2);
  for (int i = 0; i < 3; ++i) {
    report.clauses[i] = gamma_prime_clause(inputs[i].pattern, opts);
    if (report.clauses[i].holds()) ++report.boundary_parallel_handlebodies;
  }
  report.granted = report.manifold.pass && report.strict_sum &&
                   report.boundary_parallel_handlebodies >= 2;
  return report;
}

}  // namespace diskpat
