#include "diskpat/pattern.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "dsu.hpp"

namespace diskpat {

namespace {

const char* kCodeNames[] = {
    "SlotMismatch",   "NonPlanar",  "PairingInvalid", "InvalidSwap",
    "NotDisjoint",    "OrphanedCurve", "NoValidPiece", "HasWave",
    "BudgetExceeded", "BadParam",   "BadLabel",       "InadmissiblePair",
    "Unsupported",    "Internal",
};

}  // namespace

const char* to_string(ErrorCode code) {
  return kCodeNames[static_cast<int>(code)];
}

std::string CutSurface::circle_name(CircleIndex c) const {
  return disk_ids_[circles_[c].disk] + (circles_[c].sign > 0 ? "+" : "-");
}

int CutSurface::total_weight() const {
  int total = 0;
  for (int d = 0; d < num_disks(); ++d) total += disk_weight(d);
  return total;
}

SlotId CutSurface::succ_slot(SlotId s) const {
  const auto& info = slots_[s];
  const auto& sl = circles_[info.circle].slots;
  return sl[(info.pos + 1) % sl.size()];
}

SlotId CutSurface::pred_slot(SlotId s) const {
  const auto& info = slots_[s];
  const auto& sl = circles_[info.circle].slots;
  return sl[(info.pos + sl.size() - 1) % sl.size()];
}

SurfaceSpec CutSurface::to_spec() const {
  SurfaceSpec spec;
  spec.genus = genus_;
  spec.disk_ids = disk_ids_;
  spec.circle_slots.resize(circles_.size());
  for (size_t c = 0; c < circles_.size(); ++c)
    spec.circle_slots[c] = circles_[c].slots;
  spec.arcs.reserve(arcs_.size());
  for (const auto& a : arcs_) {
    spec.arcs.push_back({std::min(a[0], a[1]), std::max(a[0], a[1])});
  }
  std::sort(spec.arcs.begin(), spec.arcs.end());
  spec.pairing.resize(num_disks());
  for (int d = 0; d < num_disks(); ++d) {
    for (SlotId u : circles_[plus_circle(d)].slots)
      spec.pairing[d].push_back({u, partner_[u]});
  }
  return spec;
}

CutSurface build_cut_surface(const SurfaceSpec& spec) {
  CutSurface s;
  require(spec.genus >= 1, ErrorCode::BadParam, "genus must be >= 1");
  const int k = static_cast<int>(spec.disk_ids.size());
  require(k >= spec.genus, ErrorCode::BadParam,
          "need at least genus many disks");
  require(static_cast<int>(spec.circle_slots.size()) == 2 * k,
          ErrorCode::SlotMismatch, "expected two circles per disk");
  {
    std::set<std::string> ids(spec.disk_ids.begin(), spec.disk_ids.end());
    require(static_cast<int>(ids.size()) == k, ErrorCode::SlotMismatch,
            "duplicate disk ids");
  }

  s.genus_ = spec.genus;
  s.disk_ids_ = spec.disk_ids;

  // Canonical slot renumbering by (circle, pos).
  std::map<int, SlotId> renum;
  s.circles_.resize(2 * k);
  for (int c = 0; c < 2 * k; ++c) {
    s.circles_[c].disk = c / 2;
    s.circles_[c].sign = (c % 2 == 0) ? +1 : -1;
    for (int raw : spec.circle_slots[c]) {
      require(!renum.count(raw), ErrorCode::SlotMismatch,
              "slot id appears on two circle positions");
      SlotId id = static_cast<SlotId>(s.slots_.size());
      renum[raw] = id;
      s.circles_[c].slots.push_back(id);
      s.slots_.push_back({c, static_cast<int>(s.circles_[c].slots.size()) - 1, -1});
    }
  }
  for (int d = 0; d < k; ++d) {
    require(s.circles_[2 * d].slots.size() == s.circles_[2 * d + 1].slots.size(),
            ErrorCode::PairingInvalid,
            "slot counts differ on the two sides of disk " + spec.disk_ids[d]);
  }

  // Arcs, canonically sorted; every slot is one arc end.
  std::vector<std::array<SlotId, 2>> arcs;
  for (const auto& raw : spec.arcs) {
    auto it0 = renum.find(raw[0]);
    auto it1 = renum.find(raw[1]);
    require(it0 != renum.end() && it1 != renum.end(), ErrorCode::SlotMismatch,
            "arc references unknown slot");
    require(it0->second != it1->second, ErrorCode::SlotMismatch,
            "arc with identical ends");
    SlotId lo = std::min(it0->second, it1->second);
    SlotId hi = std::max(it0->second, it1->second);
    arcs.push_back({lo, hi});
  }
  std::sort(arcs.begin(), arcs.end());
  for (size_t i = 0; i + 1 < arcs.size(); ++i)
    require(arcs[i] != arcs[i + 1], ErrorCode::SlotMismatch, "duplicate arc");
  s.arcs_ = arcs;
  for (ArcIndex a = 0; a < s.num_arcs(); ++a) {
    for (SlotId e : s.arcs_[a]) {
      require(s.slots_[e].arc == -1, ErrorCode::SlotMismatch,
              "slot used by two arcs");
      s.slots_[e].arc = a;
    }
  }
  for (SlotId e = 0; e < s.num_slots(); ++e)
    require(s.slots_[e].arc != -1, ErrorCode::SlotMismatch,
            "slot not used by any arc");

  // Pairing: per disk a bijection plus circle -> minus circle that reverses
  // the cyclic order: sigma(succ(u)) == pred(sigma(u)).
  require(static_cast<int>(spec.pairing.size()) == k, ErrorCode::PairingInvalid,
          "pairing must list every disk");
  s.partner_.assign(s.num_slots(), -1);
  for (int d = 0; d < k; ++d) {
    const auto& plus = s.circles_[2 * d].slots;
    require(spec.pairing[d].size() == plus.size(), ErrorCode::PairingInvalid,
            "pairing size mismatch on disk " + spec.disk_ids[d]);
    for (const auto& pr : spec.pairing[d]) {
      auto itp = renum.find(pr[0]);
      auto itm = renum.find(pr[1]);
      require(itp != renum.end() && itm != renum.end(),
              ErrorCode::PairingInvalid, "pairing references unknown slot");
      SlotId u = itp->second, v = itm->second;
      require(s.slots_[u].circle == 2 * d && s.slots_[v].circle == 2 * d + 1,
              ErrorCode::PairingInvalid, "pairing entry on wrong circle");
      require(s.partner_[u] == -1 && s.partner_[v] == -1,
              ErrorCode::PairingInvalid, "pairing not a bijection");
      s.partner_[u] = v;
      s.partner_[v] = u;
    }
    for (SlotId u : plus) {
      require(s.partner_[u] != -1, ErrorCode::PairingInvalid,
              "pairing misses a slot");
      if (plus.size() >= 2) {
        require(s.partner_[s.succ_slot(u)] == s.pred_slot(s.partner_[u]),
                ErrorCode::PairingInvalid,
                "pairing does not reverse orientation on disk " +
                    spec.disk_ids[d]);
      }
    }
  }

  // Segments.
  s.seg_base_.resize(2 * k);
  for (int c = 0; c < 2 * k; ++c) {
    s.seg_base_[c] = static_cast<int>(s.segment_circle_.size());
    int m = static_cast<int>(s.circles_[c].slots.size());
    for (int pos = 0; pos < std::max(m, 1); ++pos) {
      s.segment_circle_.push_back(c);
      s.segment_pos_.push_back(pos);
    }
  }

  // Boundary walks.  Directed item ids: segment s -> s, port p -> S + p.
  const int num_seg = s.num_segments();
  const int num_items = num_seg + 2 * s.num_arcs();
  auto successor = [&](int item) -> int {
    if (item < num_seg) {
      CircleIndex c = s.segment_circle_[item];
      int pos = s.segment_pos_[item];
      const auto& sl = s.circles_[c].slots;
      SlotId t = sl[(pos + 1) % sl.size()];
      ArcIndex a = s.slots_[t].arc;
      int dir = (s.arcs_[a][0] == t) ? 0 : 1;
      return num_seg + make_port(a, dir);
    }
    PortIndex p = item - num_seg;
    SlotId e = s.port_finish(p);
    return s.segment_index(s.slots_[e].circle, s.slots_[e].pos);
  };

  std::vector<int> walk_of_item(num_items, -1);
  std::vector<std::vector<WalkItem>> walks;
  for (int start = 0; start < num_items; ++start) {
    if (walk_of_item[start] != -1) continue;
    if (start < num_seg) {
      CircleIndex c = s.segment_circle_[start];
      if (s.circles_[c].slots.empty()) {
        // Whole slotless circle: its own singleton walk.
        walk_of_item[start] = static_cast<int>(walks.size());
        walks.push_back({WalkItem{false, start}});
        continue;
      }
    }
    int w = static_cast<int>(walks.size());
    walks.emplace_back();
    int item = start;
    do {
      require(walk_of_item[item] == -1, ErrorCode::Internal, "walk trace clash");
      walk_of_item[item] = w;
      walks[w].push_back(item < num_seg ? WalkItem{false, item}
                                        : WalkItem{true, item - num_seg});
      item = successor(item);
    } while (item != start);
  }

  // Group walks into faces.  Start with one face per walk, then apply the
  // slotless-circle rule, then absorb any Euler deficit canonically.
  const int num_walks = static_cast<int>(walks.size());
  detail::Dsu face_group(num_walks);
  std::vector<bool> placed(2 * k, false);
  for (int c = 0; c < 2 * k; ++c) {
    if (!s.circles_[c].slots.empty() || placed[c]) continue;
    int cw = walk_of_item[s.segment_index(c, 0)];
    int partner = (c % 2 == 0) ? c + 1 : c - 1;
    if (s.circles_[partner].slots.empty()) {
      int pw = walk_of_item[s.segment_index(partner, 0)];
      face_group.unite(cw, pw);
      placed[c] = placed[partner] = true;
    } else {
      int pw = walk_of_item[s.segment_index(partner, 0)];
      face_group.unite(cw, pw);
      placed[c] = true;
    }
  }

  // Connected components of the surface: circles linked by arcs and by
  // walks sharing a face.
  detail::Dsu comp(2 * k);
  for (const auto& a : s.arcs_)
    comp.unite(s.slots_[a[0]].circle, s.slots_[a[1]].circle);
  auto walk_circle = [&](int w) -> CircleIndex {
    for (const auto& it : walks[w]) {
      if (!it.is_port) return s.segment_circle_[it.id];
    }
    fail(ErrorCode::Internal, "walk without segments");
  };
  {
    std::map<int, int> rep_circle;  // face-group rep -> a circle in it
    for (int w = 0; w < num_walks; ++w) {
      int g = face_group.find(w);
      CircleIndex c = walk_circle(w);
      auto [it, fresh] = rep_circle.emplace(g, c);
      if (!fresh) comp.unite(it->second, c);
    }
  }

  // Per-component Euler bookkeeping.
  std::map<int, std::vector<int>> comp_walks;  // comp rep -> walk ids
  for (int w = 0; w < num_walks; ++w)
    comp_walks[comp.find(walk_circle(w))].push_back(w);

  for (auto& [rep, ws] : comp_walks) {
    int circles_count = 0, arcs_count = 0;
    for (int c = 0; c < 2 * k; ++c)
      if (comp.find(c) == rep) ++circles_count;
    for (const auto& a : s.arcs_)
      if (comp.find(s.slots_[a[0]].circle) == rep) ++arcs_count;
    int target2 = 2 - circles_count + arcs_count + static_cast<int>(ws.size());
    require(target2 % 2 == 0 && target2 >= 2, ErrorCode::NonPlanar,
            "boundary walks do not close up a planar piece");
    int target_faces = target2 / 2;
    std::set<int> groups;
    for (int w : ws) groups.insert(face_group.find(w));
    int have = static_cast<int>(groups.size());
    require(have >= target_faces, ErrorCode::NonPlanar,
            "face trace yields negative genus data");
    // Deficit: absorb later groups into the first, canonically.
    auto it = groups.begin();
    int first = *it;
    std::vector<int> rest(std::next(it), groups.end());
    for (int i = 0; i < have - target_faces; ++i)
      face_group.unite(first, rest[rest.size() - 1 - i]);
  }

  // Materialize faces in canonical order (least walk id first).
  std::map<int, FaceIndex> group_face;
  for (int w = 0; w < num_walks; ++w) {
    int g = face_group.find(w);
    auto [it, fresh] = group_face.emplace(g, static_cast<FaceIndex>(s.faces_.size()));
    if (fresh) s.faces_.emplace_back();
    s.faces_[it->second].walks.push_back(std::move(walks[w]));
  }

  // Components in canonical order; faces and membership lists.
  s.circle_component_.assign(2 * k, -1);
  std::map<int, int> comp_index;
  for (int c = 0; c < 2 * k; ++c) {
    int rep = comp.find(c);
    auto [it, fresh] = comp_index.emplace(rep, static_cast<int>(s.components_.size()));
    if (fresh) s.components_.emplace_back();
    s.circle_component_[c] = it->second;
    s.components_[it->second].circles.push_back(c);
  }
  for (ArcIndex a = 0; a < s.num_arcs(); ++a)
    s.components_[s.circle_component_[s.slots_[s.arcs_[a][0]].circle]].arcs.push_back(a);
  for (FaceIndex f = 0; f < s.num_faces(); ++f) {
    CircleIndex c = -1;
    for (const auto& it : s.faces_[f].walks[0])
      if (!it.is_port) {
        c = s.segment_circle_[it.id];
        break;
      }
    s.faces_[f].component = s.circle_component_[c];
    s.components_[s.faces_[f].component].faces.push_back(f);
  }

  require(static_cast<int>(s.components_.size()) == k - s.genus_ + 1,
          ErrorCode::NonPlanar,
          "component count incompatible with declared genus");
  {
    detail::Dsu assembly(static_cast<int>(s.components_.size()));
    for (int d = 0; d < k; ++d)
      assembly.unite(s.circle_component_[2 * d], s.circle_component_[2 * d + 1]);
    int rep = assembly.find(0);
    for (int i = 1; i < static_cast<int>(s.components_.size()); ++i)
      require(assembly.find(i) == rep, ErrorCode::NonPlanar,
              "disk pairings do not assemble a connected surface");
  }

  // Item locations and filled flags.
  s.port_loc_.assign(2 * s.num_arcs(), {});
  s.seg_loc_.assign(num_seg, {});
  for (FaceIndex f = 0; f < s.num_faces(); ++f) {
    for (int w = 0; w < static_cast<int>(s.faces_[f].walks.size()); ++w) {
      const auto& walk = s.faces_[f].walks[w];
      for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
        ItemLocation loc{f, w, i};
        if (walk[i].is_port)
          s.port_loc_[walk[i].id] = loc;
        else
          s.seg_loc_[walk[i].id] = loc;
      }
    }
  }
  for (auto& component : s.components_) {
    component.filled = true;
    for (CircleIndex c : component.circles)
      if (s.circles_[c].slots.empty()) component.filled = false;
    for (FaceIndex f : component.faces)
      if (s.faces_[f].walks.size() != 1) component.filled = false;
  }
  return s;
}

std::vector<TripleCurve> trace_triple_curves(const CutSurface& s) {
  std::vector<TripleCurve> out;
  // Directed state (arc, entry end); each undirected curve is one forward
  // orbit, whose reverse orbit gets consumed alongside it.
  std::vector<bool> used(2 * std::max(s.num_arcs(), 1), false);
  for (ArcIndex start = 0; start < s.num_arcs(); ++start) {
    if (used[2 * start] || used[2 * start + 1]) continue;
    TripleCurve fwd;
    std::vector<int> dirs;
    ArcIndex a = start;
    int dir = 0;
    while (!used[2 * a + dir]) {
      used[2 * a + dir] = true;
      fwd.push_back(a);
      dirs.push_back(dir);
      SlotId exit = s.arc(a)[1 - dir];
      SlotId entry = s.partner_slot(exit);
      a = s.slot(entry).arc;
      dir = (s.arc(a)[0] == entry) ? 0 : 1;
    }
    for (size_t i = 0; i < fwd.size(); ++i) used[2 * fwd[i] + 1 - dirs[i]] = true;
    // Canonical form: least arc first, smaller of the two directions.
    auto rotate_min = [](TripleCurve c) {
      auto it = std::min_element(c.begin(), c.end());
      std::rotate(c.begin(), it, c.end());
      return c;
    };
    TripleCurve rev(fwd.rbegin(), fwd.rend());
    out.push_back(std::min(rotate_min(std::move(fwd)), rotate_min(std::move(rev))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

BoundaryPattern make_boundary_pattern(CutSurface surface) {
  auto curves = trace_triple_curves(surface);
  return BoundaryPattern{std::move(surface), std::move(curves)};
}

ArcSides arc_sides(const CutSurface& s, ArcIndex a) {
  CircleIndex base0 = s.slot(s.arc(a)[0]).circle;
  CircleIndex base1 = s.slot(s.arc(a)[1]).circle;
  require(base0 == base1, ErrorCode::Unsupported,
          "arc side data is defined for arcs returning to one circle");
  FaceIndex fa = s.port_location(make_port(a, 0)).face;
  FaceIndex fb = s.port_location(make_port(a, 1)).face;
  require(fa != fb, ErrorCode::Internal,
          "returning arc flanked by a single face on a planar piece");

  // Flood the face graph without crossing arc a.
  std::vector<int> side(s.num_faces(), -1);
  std::queue<FaceIndex> q;
  side[fa] = 0;
  side[fb] = 1;
  q.push(fa);
  q.push(fb);
  while (!q.empty()) {
    FaceIndex f = q.front();
    q.pop();
    for (const auto& walk : s.face(f).walks) {
      for (const auto& it : walk) {
        if (!it.is_port || arc_of_port(it.id) == a) continue;
        FaceIndex g = s.port_location(opposite_port(it.id)).face;
        if (side[g] == -1) {
          side[g] = side[f];
          q.push(g);
        }
      }
    }
  }

  ArcSides result;
  int comp = s.face(fa).component;
  for (CircleIndex c : s.component(comp).circles) {
    if (c == base0) continue;
    int which = -1;
    int m = static_cast<int>(s.circle(c).slots.size());
    for (int pos = 0; pos < std::max(m, 1); ++pos) {
      int sd = side[s.segment_location(s.segment_index(c, pos)).face];
      require(sd != -1, ErrorCode::Internal, "circle outside arc flood");
      require(which == -1 || which == sd, ErrorCode::Internal,
              "circle split by a single arc");
      which = sd;
    }
    (which == 0 ? result.side_a : result.side_b).push_back(c);
  }
  return result;
}

namespace {

// Face classes after regluing all disks (segments glued in matching pairs).
detail::Dsu glued_faces(const CutSurface& s) {
  detail::Dsu glue(s.num_faces());
  for (int d = 0; d < s.num_disks(); ++d) {
    CircleIndex cp = s.plus_circle(d);
    CircleIndex cm = s.minus_circle(d);
    int m = s.disk_weight(d);
    if (m == 0) {
      glue.unite(s.segment_location(s.segment_index(cp, 0)).face,
                 s.segment_location(s.segment_index(cm, 0)).face);
      continue;
    }
    const auto& plus = s.circle(cp).slots;
    for (int pos = 0; pos < m; ++pos) {
      SlotId u_next = plus[(pos + 1) % m];
      SlotId v = s.partner_slot(u_next);
      int minus_pos = s.slot(v).pos;
      glue.unite(s.segment_location(s.segment_index(cp, pos)).face,
                 s.segment_location(s.segment_index(cm, minus_pos)).face);
    }
  }
  return glue;
}

}  // namespace

ValidationReport validate_pattern(const CutSurface& s) {
  ValidationReport report;

  for (CircleIndex c = 0; c < s.num_circles(); ++c)
    if (s.circle(c).slots.empty()) report.slotless_circles.push_back(c);
  for (FaceIndex f = 0; f < s.num_faces(); ++f)
    if (s.face(f).walks.size() >= 2) report.multiwalk_faces.push_back(f);

  // Two-colourability of the glued pattern complement.
  auto glue = glued_faces(s);
  std::vector<int> colour(s.num_faces(), -1);
  report.two_colourable = true;
  for (FaceIndex f0 = 0; f0 < s.num_faces() && report.two_colourable; ++f0) {
    int rep = glue.find(f0);
    if (colour[rep] != -1) continue;
    colour[rep] = 0;
    std::queue<int> q;
    q.push(rep);
    while (!q.empty() && report.two_colourable) {
      int g = q.front();
      q.pop();
      for (FaceIndex f = 0; f < s.num_faces(); ++f) {
        if (glue.find(f) != g) continue;
        for (const auto& walk : s.face(f).walks) {
          for (const auto& it : walk) {
            if (!it.is_port) continue;
            int h = glue.find(s.port_location(opposite_port(it.id)).face);
            if (colour[h] == -1) {
              colour[h] = 1 - colour[g];
              q.push(h);
            } else if (colour[h] == colour[g]) {
              report.two_colourable = false;
            }
          }
        }
      }
    }
  }

  // Pattern curves with a conservative essentiality certificate: a curve
  // is certified when none of its arcs cuts off a circle-free piece (its
  // crossings with the disks are then already minimal and positive).
  for (auto& cycle : trace_triple_curves(s)) {
    TripleCurveInfo info;
    info.crossings = static_cast<int>(cycle.size());
    info.essential = Essentiality::Certified;
    for (ArcIndex a : cycle) {
      CircleIndex c0 = s.slot(s.arc(a)[0]).circle;
      CircleIndex c1 = s.slot(s.arc(a)[1]).circle;
      if (c0 != c1) continue;
      auto sides = arc_sides(s, a);
      if (sides.side_a.empty() || sides.side_b.empty())
        info.essential = Essentiality::Unverified;
    }
    info.arcs = std::move(cycle);
    report.triple_curves.push_back(std::move(info));
  }
  return report;
}

}  // namespace diskpat
