#include "diskpat/moves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dsu.hpp"

namespace diskpat {

int DiskSystemState::max_disk_weight() const {
  int best = 0;
  for (int d = 0; d < surface_.num_disks(); ++d)
    best = std::max(best, surface_.disk_weight(d));
  return best;
}

DiskSystemState DiskSystemState::advanced(CutSurface next,
                                          MoveLogEntry entry) const {
  DiskSystemState out(std::move(next));
  out.log_ = log_;
  out.log_.push_back(std::move(entry));
  return out;
}

namespace {

// Merge arcs end-to-end across the pairing junctions of the circles being
// reglued.  `junction(slot)` returns the glued far slot for slots on those
// circles, -1 elsewhere.  Closed chains have no free end and are the
// orphan case.
std::vector<std::array<int, 2>> chain_arcs(
    const std::vector<std::array<int, 2>>& arcs,
    const std::function<int(int)>& junction) {
  std::map<int, std::pair<int, int>> at;  // junction-side slot -> (arc, end)
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a)
    for (int e = 0; e < 2; ++e)
      if (junction(arcs[a][e]) != -1) at[arcs[a][e]] = {a, e};

  std::vector<std::array<int, 2>> out;
  std::vector<bool> used(arcs.size(), false);
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) {
    if (used[a]) continue;
    int e0 = arcs[a][0], e1 = arcs[a][1];
    bool j0 = junction(e0) != -1, j1 = junction(e1) != -1;
    if (j0 && j1) continue;  // interior of some chain, or orphaned
    used[a] = true;
    if (!j0 && !j1) {
      out.push_back({e0, e1});
      continue;
    }
    int start = j0 ? e1 : e0;
    int far = j0 ? e0 : e1;
    while (junction(far) != -1) {
      int j = junction(far);
      auto it = at.find(j);
      require(it != at.end(), ErrorCode::Internal, "chain junction misses arc");
      auto [b, end] = it->second;
      require(!used[b], ErrorCode::Internal, "chain revisits an arc");
      used[b] = true;
      far = arcs[b][1 - end];
    }
    out.push_back({start, far});
  }
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a)
    require(used[a], ErrorCode::OrphanedCurve,
            "surgery would close a pattern curve away from every disk");
  return out;
}

SurfaceSpec drop_disk_from_spec(const CutSurface& s, DiskIndex d,
                                std::vector<std::array<int, 2>> arcs) {
  auto junction = [&](int slot) -> int {
    if (slot >= s.num_slots()) return -1;  // freshly created slots
    CircleIndex c = s.slot(slot).circle;
    if (c == s.plus_circle(d) || c == s.minus_circle(d))
      return s.partner_slot(slot);
    return -1;
  };
  SurfaceSpec spec;
  spec.genus = s.genus();
  for (int k = 0; k < s.num_disks(); ++k)
    if (k != d) spec.disk_ids.push_back(s.disk_id(k));
  spec.arcs = chain_arcs(arcs, junction);
  for (int k = 0; k < s.num_disks(); ++k) {
    if (k == d) continue;
    spec.circle_slots.push_back(s.circle(s.plus_circle(k)).slots);
    spec.circle_slots.push_back(s.circle(s.minus_circle(k)).slots);
    std::vector<std::array<int, 2>> rows;
    for (SlotId u : s.circle(s.plus_circle(k)).slots)
      rows.push_back({u, s.partner_slot(u)});
    spec.pairing.push_back(std::move(rows));
  }
  return spec;
}

struct CutPieces {
  std::vector<std::array<int, 2>> arcs;  // subdivided arc list
  std::vector<int> left_slots;           // new circle, traversal order
  std::vector<int> right_slots;          // new circle, boundary order
  std::vector<std::array<int, 2>> new_pairing;
};

// Cut the surface along the curve: crossings become slots of the new
// circle pair, crossed arcs split into pieces.
CutPieces cut_along(const CutSurface& s, const NormalCurve& curve) {
  CurveGeometry geo = realize_curve(s, curve);
  const int W = curve.weight();
  const int base = s.num_slots();
  auto idL = [&](int t) { return base + 2 * t; };
  auto idR = [&](int t) { return base + 2 * t + 1; };

  std::vector<std::vector<int>> byarc(s.num_arcs());
  for (int t = 0; t < W; ++t) byarc[geo.crossings[t].arc].push_back(t);
  for (auto& v : byarc)
    std::sort(v.begin(), v.end(), [&](int x, int y) {
      return geo.crossings[x].pos_from_end0 < geo.crossings[y].pos_from_end0;
    });

  auto toward_end1 = [&](int t) {
    return geo.crossings[t].left_toward_end1 ? idL(t) : idR(t);
  };
  auto toward_end0 = [&](int t) {
    return geo.crossings[t].left_toward_end1 ? idR(t) : idL(t);
  };

  CutPieces out;
  for (ArcIndex a = 0; a < s.num_arcs(); ++a) {
    const auto& cr = byarc[a];
    if (cr.empty()) {
      out.arcs.push_back({s.arc(a)[0], s.arc(a)[1]});
      continue;
    }
    out.arcs.push_back({s.arc(a)[0], toward_end0(cr.front())});
    for (size_t i = 0; i + 1 < cr.size(); ++i)
      out.arcs.push_back({toward_end1(cr[i]), toward_end0(cr[i + 1])});
    out.arcs.push_back({toward_end1(cr.back()), s.arc(a)[1]});
  }
  for (int t = 0; t < W; ++t) out.left_slots.push_back(idL(t));
  out.right_slots.push_back(idR(0));
  for (int t = W - 1; t >= 1; --t) out.right_slots.push_back(idR(t));
  for (int t = 0; t < W; ++t) out.new_pairing.push_back({idL(t), idR(t)});
  return out;
}

}  // namespace

CutSurface reglue_disk(const CutSurface& s, DiskIndex d) {
  std::vector<std::array<int, 2>> arcs;
  for (ArcIndex a = 0; a < s.num_arcs(); ++a)
    arcs.push_back({s.arc(a)[0], s.arc(a)[1]});
  return build_cut_surface(drop_disk_from_spec(s, d, std::move(arcs)));
}

CutSurface recut(const CutSurface& s, DiskIndex d, const NormalCurve& curve) {
  require(separates_disk_pair(s, curve, d), ErrorCode::InvalidSwap,
          "curve does not split the two sides of the disk");
  CutPieces cut = cut_along(s, curve);
  SurfaceSpec spec = drop_disk_from_spec(s, d, std::move(cut.arcs));
  // The replacement disk takes the vacated position under the same id.
  spec.disk_ids.insert(spec.disk_ids.begin() + d, s.disk_id(d));
  spec.circle_slots.insert(spec.circle_slots.begin() + 2 * d,
                           {cut.left_slots, cut.right_slots});
  spec.pairing.insert(spec.pairing.begin() + d, cut.new_pairing);
  return build_cut_surface(spec);
}

CutSurface add_disk_along(const CutSurface& s, const NormalCurve& curve,
                          const std::string& disk_id) {
  CutPieces cut = cut_along(s, curve);
  SurfaceSpec spec;
  spec.genus = s.genus();
  spec.disk_ids = s.disk_ids();
  spec.disk_ids.push_back(disk_id);
  for (int k = 0; k < s.num_disks(); ++k) {
    spec.circle_slots.push_back(s.circle(s.plus_circle(k)).slots);
    spec.circle_slots.push_back(s.circle(s.minus_circle(k)).slots);
    std::vector<std::array<int, 2>> rows;
    for (SlotId u : s.circle(s.plus_circle(k)).slots)
      rows.push_back({u, s.partner_slot(u)});
    spec.pairing.push_back(std::move(rows));
  }
  spec.circle_slots.push_back(cut.left_slots);
  spec.circle_slots.push_back(cut.right_slots);
  spec.pairing.push_back(cut.new_pairing);
  spec.arcs = cut.arcs;
  return build_cut_surface(spec);
}

DiskSystemState to_minimal_system(DiskSystemState st) {
  while (st.surface().num_disks() > st.surface().genus()) {
    const CutSurface& s = st.surface();
    DiskIndex pick = -1;
    for (DiskIndex d = 0; d < s.num_disks() && pick == -1; ++d)
      if (s.component_of_circle(s.plus_circle(d)) !=
          s.component_of_circle(s.minus_circle(d)))
        pick = d;
    require(pick != -1, ErrorCode::Internal,
            "no disk joins two components of an oversized system");
    int before = st.total_weight();
    CutSurface next = reglue_disk(s, pick);
    MoveLogEntry e{MoveLogEntry::Kind::RemoveDisk, s.disk_id(pick),
                   std::nullopt,  std::nullopt,
                   before,        next.total_weight(),
                   next.total_weight() < before};
    st = st.advanced(std::move(next), std::move(e));
  }
  return st;
}

std::optional<WaveRef> find_wave(const DiskSystemState& st) {
  const CutSurface& s = st.surface();
  for (ArcIndex a = 0; a < s.num_arcs(); ++a) {
    CircleIndex c0 = s.slot(s.arc(a)[0]).circle;
    CircleIndex c1 = s.slot(s.arc(a)[1]).circle;
    if (c0 != c1) continue;
    auto sides = arc_sides(s, a);
    if (!sides.side_a.empty() && !sides.side_b.empty())
      return WaveRef{a, c0, s.circle(c0).disk};
  }
  return std::nullopt;
}

namespace {

// Boundary piece of the compressed disk: the wave pushed off its side
// port together with the circle interval from `y` forward to `x`.  The
// crossings are exactly the arcs at the interior slots, entered through
// the port arriving at each slot.
std::optional<NormalCurve> compression_piece(const CutSurface& s, SlotId x,
                                             SlotId y) {
  std::vector<PortIndex> entries;
  for (SlotId t = s.succ_slot(y); t != x; t = s.succ_slot(t)) {
    ArcIndex a = s.slot(t).arc;
    int dir = (s.arc(a)[1] == t) ? 0 : 1;  // traversal ending at t
    entries.push_back(make_port(a, dir));
  }
  if (entries.empty()) return std::nullopt;
  return canonical_curve(std::move(entries));
}

}  // namespace

DiskSystemState compress_wave(const DiskSystemState& st, const WaveRef& wave) {
  const CutSurface& s = st.surface();
  SlotId s1 = s.arc(wave.arc)[0];
  SlotId s2 = s.arc(wave.arc)[1];
  require(s.slot(s1).circle == wave.circle && s.slot(s2).circle == wave.circle,
          ErrorCode::BadParam, "wave reference does not match its arc");

  std::vector<NormalCurve> valid;
  for (auto& cand : {compression_piece(s, s1, s2), compression_piece(s, s2, s1)}) {
    if (!cand) continue;  // empty interval piece is never essential
    if (separates_disk_pair(s, *cand, wave.disk)) valid.push_back(*cand);
  }
  require(!valid.empty(), ErrorCode::NoValidPiece,
          "neither compression piece swaps for the disk");
  std::sort(valid.begin(), valid.end(),
            [](const NormalCurve& a, const NormalCurve& b) {
              if (a.weight() != b.weight()) return a.weight() < b.weight();
              return a.itinerary < b.itinerary;
            });
  const NormalCurve& chosen = valid.front();

  int before = st.total_weight();
  CutSurface next = recut(s, wave.disk, chosen);
  int after = next.total_weight();
  require(after <= before - 2, ErrorCode::Internal,
          "wave compression failed to reduce the crossing count");
  MoveLogEntry e{MoveLogEntry::Kind::CompressWave,
                 s.disk_id(wave.disk),
                 chosen,
                 wave.arc,
                 before,
                 after,
                 true};
  return st.advanced(std::move(next), std::move(e));
}

DiskSystemState disk_swap(const DiskSystemState& st, DiskIndex d,
                          const NormalCurve& curve) {
  const CutSurface& s = st.surface();
  int before = st.total_weight();
  int triple_count_before = static_cast<int>(trace_triple_curves(s).size());
  CutSurface next = recut(s, d, curve);
  require(next.genus() == s.genus() && next.num_disks() == s.num_disks(),
          ErrorCode::Internal, "swap changed the system shape");
  require(static_cast<int>(trace_triple_curves(next).size()) ==
              triple_count_before,
          ErrorCode::Internal, "swap changed the pattern curve count");
  int after = next.total_weight();
  MoveLogEntry e{MoveLogEntry::Kind::DiskSwap,
                 s.disk_id(d),
                 curve,
                 std::nullopt,
                 before,
                 after,
                 after < before};
  return st.advanced(std::move(next), std::move(e));
}

DiskSystemState make_waveless(DiskSystemState st) {
  const int cap = st.total_weight() / 2 + 1;
  for (int moves = 0; moves <= cap; ++moves) {
    auto wave = find_wave(st);
    if (!wave) return st;
    st = compress_wave(st, *wave);
  }
  fail(ErrorCode::Internal, "wave compression exceeded its move bound");
}

GammaPrime build_gamma_prime(const CutSurface& s, int component) {
  const Component& comp = s.component(component);
  require(!comp.arcs.empty(), ErrorCode::BadParam,
          "collapsed graph of an empty arc system");

  for (ArcIndex a : comp.arcs) {
    CircleIndex c0 = s.slot(s.arc(a)[0]).circle;
    CircleIndex c1 = s.slot(s.arc(a)[1]).circle;
    if (c0 != c1) continue;
    auto sides = arc_sides(s, a);
    require(sides.side_a.empty() || sides.side_b.empty(), ErrorCode::HasWave,
            "component has an essential wave");
    fail(ErrorCode::Unsupported,
         "boundary-parallel arc present; swap in the lighter parallel disk "
         "copy first");
  }

  // Parallel families: arcs cobounding a square face, transitively.
  detail::Dsu classes(s.num_arcs());
  for (FaceIndex f : comp.faces) {
    const auto& walk = s.face(f).walks[0];
    if (walk.size() != 4) continue;
    std::vector<ArcIndex> ports;
    for (const auto& it : walk)
      if (it.is_port) ports.push_back(arc_of_port(it.id));
    if (ports.size() == 2) classes.unite(ports[0], ports[1]);
  }

  GammaPrime g;
  g.component = component;
  g.vertices = comp.circles;
  std::map<int, int> edge_of_class;
  for (ArcIndex a : comp.arcs) {
    int rep = classes.find(a);
    auto [it, fresh] = edge_of_class.emplace(rep, static_cast<int>(g.edges.size()));
    if (fresh) {
      CircleIndex u = s.slot(s.arc(a)[0]).circle;
      CircleIndex v = s.slot(s.arc(a)[1]).circle;
      g.edges.push_back({std::min(u, v), std::max(u, v), {}});
    }
    g.edges[it->second].arcs.push_back(a);
  }
  for (auto& e : g.edges) std::sort(e.arcs.begin(), e.arcs.end());

  // Rotation: incident edges in slot order, consecutive repeats collapsed.
  for (CircleIndex c : g.vertices) {
    std::vector<int> rot;
    for (SlotId u : s.circle(c).slots) {
      int e = edge_of_class[classes.find(s.slot(u).arc)];
      if (rot.empty() || rot.back() != e) rot.push_back(e);
    }
    while (rot.size() > 1 && rot.front() == rot.back()) rot.pop_back();
    g.rotation.push_back(std::move(rot));
  }
  return g;
}

std::optional<CircleIndex> find_vertex_outside_2cycles(const GammaPrime& g) {
  std::set<CircleIndex> in_cycle;
  for (size_t i = 0; i < g.edges.size(); ++i)
    for (size_t j = i + 1; j < g.edges.size(); ++j)
      if (g.edges[i].u == g.edges[j].u && g.edges[i].v == g.edges[j].v) {
        in_cycle.insert(g.edges[i].u);
        in_cycle.insert(g.edges[i].v);
      }
  for (CircleIndex v : g.vertices)
    if (!in_cycle.count(v)) return v;
  return std::nullopt;
}

DiskSystemState extend_to_waveless_basis(DiskSystemState st) {
  require(!find_wave(st), ErrorCode::HasWave,
          "basis extension requires a waveless system");
  int added = 0;
  for (;;) {
    const CutSurface& s = st.surface();
    int target = -1;
    for (int i = 0; i < s.num_components() && target == -1; ++i)
      if (s.component(i).circles.size() > 3) target = i;
    if (target == -1) break;

    GammaPrime g = build_gamma_prime(s, target);
    auto v = find_vertex_outside_2cycles(g);
    require(v.has_value(), ErrorCode::Internal,
            "every vertex of the collapsed graph lies in a 2-cycle");

    // The single edge class to the least neighbour.
    int edge = -1;
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].u != *v && g.edges[e].v != *v) continue;
      CircleIndex other = g.edges[e].u == *v ? g.edges[e].v : g.edges[e].u;
      if (edge == -1 ||
          other < (g.edges[edge].u == *v ? g.edges[edge].v : g.edges[edge].u))
        edge = static_cast<int>(e);
    }
    require(edge != -1, ErrorCode::Internal, "isolated vertex in Gamma'");
    CircleIndex u = g.edges[edge].u == *v ? g.edges[edge].v : g.edges[edge].u;

    // Collar boundary of v, u and the edge family: crosses every other
    // arc at the two vertices once, nothing else.
    std::vector<int> loads(s.num_arcs(), 0);
    std::set<ArcIndex> family(g.edges[edge].arcs.begin(),
                              g.edges[edge].arcs.end());
    for (ArcIndex a : s.component(target).arcs) {
      if (family.count(a)) continue;
      CircleIndex c0 = s.slot(s.arc(a)[0]).circle;
      CircleIndex c1 = s.slot(s.arc(a)[1]).circle;
      int hits = (c0 == *v || c0 == u ? 1 : 0) + (c1 == *v || c1 == u ? 1 : 0);
      loads[a] = hits;
    }
    auto candidates = enumerate_curves_with_loads(s, target, loads);
    std::optional<NormalCurve> beta;
    for (auto& cand : candidates) {
      auto part = side_partition(s, cand);
      std::vector<CircleIndex> pair{std::min(u, *v), std::max(u, *v)};
      if (part.side_a == pair || part.side_b == pair) {
        require(!beta, ErrorCode::Internal, "collar curve is not unique");
        beta = cand;
      }
    }
    require(beta.has_value(), ErrorCode::Internal,
            "no curve realizes the collar of the chosen edge");

    int before = st.total_weight();
    CutSurface next = add_disk_along(s, *beta, "B" + std::to_string(++added));
    MoveLogEntry e{MoveLogEntry::Kind::AddDisk,
                   "B" + std::to_string(added),
                   *beta,
                   std::nullopt,
                   before,
                   next.total_weight(),
                   false};
    st = st.advanced(std::move(next), std::move(e));
    require(!find_wave(st), ErrorCode::Internal,
            "basis extension introduced a wave");
  }
  if (st.surface().genus() >= 2) {
    require(st.surface().num_disks() == 3 * st.surface().genus() - 3,
            ErrorCode::Internal, "basis does not have 3g-3 disks");
    for (int i = 0; i < st.surface().num_components(); ++i)
      require(st.surface().component(i).circles.size() == 3,
              ErrorCode::Internal, "basis component is not a pair of pants");
  }
  return st;
}

bool is_n_waveless(const DiskSystemState& st, int n,
                   const EnumerationBudget& budget) {
  require(n >= 1, ErrorCode::BadParam, "waveless level must be positive");
  const CutSurface& s = st.surface();
  for (CircleIndex c = 0; c < s.num_circles(); ++c) {
    const Component& comp = s.component(s.component_of_circle(c));
    if (comp.circles.size() < 3) continue;  // no essential wave exists
    require(comp.filled, ErrorCode::Unsupported,
            "wave bounds on sparse components are undecidable here; the "
            "decision engine rejects such patterns with a weight-0 witness");
    if (min_essential_wave_below(s, c, (n + 1) / 2, budget).has_value())
      return false;
  }
  return true;
}

}  // namespace diskpat
