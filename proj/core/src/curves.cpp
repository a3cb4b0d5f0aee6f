#include "diskpat/curves.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace diskpat {

namespace {

// Union-find with explicit undo, no path compression; the backtracking
// search rolls glue operations back frame by frame.
struct UndoDsu {
  std::vector<int> parent, size;
  std::vector<int> joined;

  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    size.push_back(1);
    return static_cast<int>(parent.size()) - 1;
  }
  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  // Returns false when already united (a cycle closed).
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    joined.push_back(b);
    return true;
  }
  size_t mark() const { return joined.size(); }
  void rollback_unions(size_t m) {
    while (joined.size() > m) {
      int b = joined.back();
      joined.pop_back();
      size[parent[b]] -= size[b];
      parent[b] = b;
    }
  }
  void shrink(size_t n) {
    parent.resize(n);
    size.resize(n);
  }
};

// Chord layout over one component: ordered chord-end ids per port (and per
// segment for wave terminals) plus the chord pairing inside faces.
struct Layout {
  const CutSurface* s = nullptr;
  int comp = -1;
  std::vector<std::vector<int>> port_ends;
  std::vector<std::vector<int>> seg_ends;
  std::vector<int> chord_partner;
  std::vector<int> end_port;  // global port, or -1 for terminal ends
};

// ------------------------------------------------------------------
// Non-crossing chord matcher.
//
// Endpoint positions sit around a disk face in walk order, grouped by
// item.  Given per-item-pair multiplicities, a non-crossing perfect
// matching realizing them exists iff the multiset is laminar; any
// non-crossing matching contains an adjacent matched pair, so
// backtracking over adjacent candidates is complete.
struct Matcher {
  std::vector<int> pos_item;                 // endpoint -> local item id
  std::map<std::array<int, 2>, int> counts;  // {lo item, hi item} -> remaining
  std::vector<int> matched;                  // endpoint -> endpoint or -1
  int unmatched = 0;

  bool solve() {
    if (unmatched == 0) return true;
    const int k = static_cast<int>(pos_item.size());
    for (int x = 0; x < k; ++x) {
      if (matched[x] != -1) continue;
      int y = (x + 1) % k;
      while (matched[y] != -1) y = (y + 1) % k;
      if (y == x) break;
      if (pos_item[x] != pos_item[y]) {
        std::array<int, 2> key{std::min(pos_item[x], pos_item[y]),
                               std::max(pos_item[x], pos_item[y])};
        auto it = counts.find(key);
        if (it != counts.end() && it->second > 0) {
          --it->second;
          matched[x] = y;
          matched[y] = x;
          unmatched -= 2;
          if (solve()) return true;
          ++it->second;
          matched[x] = matched[y] = -1;
          unmatched += 2;
        }
      }
    }
    return false;
  }
};

// ------------------------------------------------------------------
// Region computation: the chords of a single embedded curve or wave cut
// the component into exactly two pieces.  Regions are tracked per face by
// a nesting stack and glued across arcs gap-by-gap (reversed on the far
// side).  Returns the circles on each side, excluding `exclude_base`.
CirclePartition region_sides(const Layout& L, CircleIndex exclude_base) {
  const CutSurface& s = *L.s;
  const Component& comp = s.component(L.comp);

  std::vector<int> region_parent;
  auto fresh_region = [&]() {
    region_parent.push_back(static_cast<int>(region_parent.size()));
    return static_cast<int>(region_parent.size()) - 1;
  };
  auto rfind = [&](int x) {
    while (region_parent[x] != x) x = region_parent[x];
    return x;
  };
  auto runite = [&](int a, int b) {
    a = rfind(a);
    b = rfind(b);
    if (a != b) region_parent[std::max(a, b)] = std::min(a, b);
  };

  std::map<PortIndex, std::vector<int>> gaps;
  std::vector<std::pair<CircleIndex, int>> bodies;

  for (FaceIndex f : comp.faces) {
    require(s.face(f).walks.size() == 1, ErrorCode::Internal,
            "region pass on a sparse face");
    const auto& walk = s.face(f).walks[0];
    int region = fresh_region();
    const int face_outer = region;
    std::vector<std::pair<int, int>> stack;  // (chord instance, parent region)
    auto process_end = [&](int e) {
      int inst = std::min(e, L.chord_partner[e]);
      if (!stack.empty() && stack.back().first == inst) {
        region = stack.back().second;
        stack.pop_back();
      } else {
        stack.push_back({inst, region});
        region = fresh_region();
      }
    };
    for (const WalkItem& it : walk) {
      if (it.is_port) {
        auto& g = gaps[it.id];
        g.push_back(region);
        for (int e : L.port_ends[it.id]) {
          process_end(e);
          g.push_back(region);
        }
      } else {
        CircleIndex c = s.segment_circle(it.id);
        bool track = (c != exclude_base);
        if (track) bodies.push_back({c, region});
        for (int e : L.seg_ends[it.id]) {
          process_end(e);
          if (track) bodies.push_back({c, region});
        }
      }
    }
    require(stack.empty() && rfind(region) == rfind(face_outer),
            ErrorCode::Internal, "face region scan did not close");
  }

  for (ArcIndex a : comp.arcs) {
    auto& gp = gaps[make_port(a, 0)];
    auto& gq = gaps[make_port(a, 1)];
    // Each side records L+1 gap regions; strand order reverses across the
    // arc, so gap i meets gap L-i.
    require(gp.size() == gq.size() && !gp.empty(), ErrorCode::Internal,
            "arc glued with unequal loads");
    size_t last = gp.size() - 1;
    for (size_t i = 0; i <= last; ++i) runite(gp[i], gq[last - i]);
  }

  std::set<int> classes;
  for (auto& [p, g] : gaps)
    for (int r : g) classes.insert(rfind(r));
  for (auto& [c, r] : bodies) classes.insert(rfind(r));
  require(classes.size() == 2, ErrorCode::Internal,
          "embedded curve did not split its component in two");
  int class_a = *classes.begin();

  std::map<CircleIndex, int> circle_side;
  for (auto& [c, r] : bodies) {
    int side = (rfind(r) == class_a) ? 0 : 1;
    auto [it, fresh] = circle_side.emplace(c, side);
    require(fresh || it->second == side, ErrorCode::Internal,
            "circle split by a disjoint curve");
  }
  CirclePartition part;
  for (auto& [c, side] : circle_side)
    (side == 0 ? part.side_a : part.side_b).push_back(c);
  if (part.side_a.empty()) std::swap(part.side_a, part.side_b);
  if (!part.side_a.empty() && !part.side_b.empty() &&
      part.side_b.front() < part.side_a.front())
    std::swap(part.side_a, part.side_b);
  return part;
}

// ------------------------------------------------------------------
// Bounded exhaustive enumeration over laminar chord vectors, face by
// face.  Strand ends glue across arcs as soon as both sides are placed;
// a branch survives only while it can still trace to a single component,
// so every emitted object is one closed curve (or one wave).
class Engine {
 public:
  Engine(const CutSurface& s, int comp, int max_weight,
         const EnumerationBudget& budget, CircleIndex wave_base,
         int shard_count, int only_shard,
         const std::vector<int>* pinned_loads = nullptr)
      : s_(s),
        comp_(comp),
        max_weight_(max_weight),
        budget_(budget),
        wave_base_(wave_base),
        shard_count_(shard_count),
        only_shard_(only_shard),
        pinned_(pinned_loads) {
    build_faces();
    port_ends_.resize(2 * std::max(s.num_arcs(), 1));
    seg_ends_.resize(std::max(s.num_segments(), 1));
    port_set_.assign(2 * std::max(s.num_arcs(), 1), false);
  }

  struct Hit {
    NormalCurve curve;  // canonical closed itinerary, or open wave crossings
    std::vector<std::array<int, 3>> coord;  // sorted (face, item, item)
    bool essential = false;
  };

  std::vector<Hit> run() {
    assign_face(0);
    return std::move(hits_);
  }

 private:
  struct FaceCtx {
    FaceIndex face = -1;
    std::vector<WalkItem> items;
    std::vector<int> hostable;              // walk positions hosting ends
    std::vector<std::array<int, 2>> types;  // hostable position pairs
    std::vector<int> counts;                // per type, live
    std::vector<int> last_touch;            // per type: is this the final
                                            // type touching items[0]/[1]?
    std::vector<int> used;                  // per walk position, live
  };

  void build_faces() {
    const Component& comp = s_.component(comp_);
    require(comp.filled, ErrorCode::Unsupported,
            "enumeration needs a component whose faces are all disks");
    // Greedy order: most ports facing already-placed faces first.
    std::set<FaceIndex> left(comp.faces.begin(), comp.faces.end());
    std::set<FaceIndex> done;
    while (!left.empty()) {
      FaceIndex best = -1;
      int best_bound = -1;
      for (FaceIndex f : left) {
        int bound = 0;
        for (const auto& it : s_.face(f).walks[0])
          if (it.is_port &&
              done.count(s_.port_location(opposite_port(it.id)).face))
            ++bound;
        if (bound > best_bound) {
          best_bound = bound;
          best = f;
        }
      }
      left.erase(best);
      done.insert(best);
      FaceCtx ctx;
      ctx.face = best;
      ctx.items = s_.face(best).walks[0];
      for (int i = 0; i < static_cast<int>(ctx.items.size()); ++i) {
        const auto& it = ctx.items[i];
        if (it.is_port)
          ctx.hostable.push_back(i);
        else if (wave_base_ >= 0 && s_.segment_circle(it.id) == wave_base_)
          ctx.hostable.push_back(i);
      }
      for (size_t i = 0; i < ctx.hostable.size(); ++i)
        for (size_t j = i + 1; j < ctx.hostable.size(); ++j)
          ctx.types.push_back({ctx.hostable[i], ctx.hostable[j]});
      ctx.counts.assign(ctx.types.size(), 0);
      ctx.used.assign(ctx.items.size(), 0);
      order_.push_back(std::move(ctx));
    }
  }

  void bump_nodes() {
    if (++nodes_ > budget_.max_nodes)
      fail(ErrorCode::BudgetExceeded, "enumeration node cap hit");
  }

  bool is_port_item(const FaceCtx& ctx, int pos) const {
    return ctx.items[pos].is_port;
  }

  // Fixed load for bound ports (partner already placed), else -1.
  int port_quota(const FaceCtx& ctx, int pos) const {
    if (pinned_) return (*pinned_)[arc_of_port(ctx.items[pos].id)];
    PortIndex q = opposite_port(ctx.items[pos].id);
    if (port_set_[q]) return static_cast<int>(port_ends_[q].size());
    return -1;
  }

  // ---- search --------------------------------------------------------

  void assign_face(size_t rank) {
    if (rank == order_.size()) {
      finish();
      return;
    }
    choose_type(rank, 0, 0, 0);
  }

  void choose_type(size_t rank, size_t type_idx, int local_port_ends,
                   int local_terminals) {
    FaceCtx& ctx = order_[rank];
    if (type_idx == ctx.types.size()) {
      // Bound ports must be exactly consumed.
      for (int pos : ctx.hostable) {
        if (!is_port_item(ctx, pos)) continue;
        int quota = port_quota(ctx, pos);
        if (quota >= 0 && ctx.used[pos] != quota) return;
      }
      settle_face(rank, local_terminals);
      return;
    }
    bump_nodes();
    auto [i, j] = ctx.types[type_idx];
    bool port_i = is_port_item(ctx, i), port_j = is_port_item(ctx, j);

    // Upper bound for this type's count.
    int cap = 2 * max_weight_ - port_end_count_ - local_port_ends;
    int per_chord_ends = (port_i ? 1 : 0) + (port_j ? 1 : 0);
    if (per_chord_ends > 0) cap /= per_chord_ends;
    for (int pos : {i, j}) {
      if (is_port_item(ctx, pos)) {
        int quota = port_quota(ctx, pos);
        if (quota >= 0) cap = std::min(cap, quota - ctx.used[pos]);
      } else {
        cap = std::min(cap, 2 - terminals_ - local_terminals);
      }
    }
    if (i == j) cap = 0;  // never happens; types pair distinct positions

    for (int cnt = 0; cnt <= std::max(cap, 0); ++cnt) {
      ctx.counts[type_idx] = cnt;
      ctx.used[i] += cnt;
      ctx.used[j] += cnt;
      choose_type(rank, type_idx + 1, local_port_ends + cnt * per_chord_ends,
                  local_terminals + cnt * (2 - per_chord_ends));
      ctx.used[i] -= cnt;
      ctx.used[j] -= cnt;
      if (cnt >= cap) break;
    }
    ctx.counts[type_idx] = 0;
  }

  // ---- frame bookkeeping ----------------------------------------------
  struct Frame {
    size_t ends_before = 0;
    size_t dsu_mark = 0;
    int open_before = 0, closed_before = 0, terminals_before = 0;
    int port_ends_before = 0;
    std::vector<PortIndex> ports_set;
    std::vector<SegmentIndex> segs_set;
    std::vector<int> glued_ends;
  };

  int new_end(int port, int seg) {
    int e = dsu_.add();
    chord_partner_.push_back(-1);
    glue_partner_.push_back(-1);
    end_port_.push_back(port);
    end_seg_.push_back(seg);
    return e;
  }

  bool glue_arc(PortIndex p, PortIndex q, Frame& fr) {
    auto& ep = port_ends_[p];
    auto& eq = port_ends_[q];
    if (ep.size() != eq.size()) return false;
    const int n = static_cast<int>(ep.size());
    for (int i = 0; i < n; ++i) {
      int a = ep[i], b = eq[n - 1 - i];
      glue_partner_[a] = b;
      glue_partner_[b] = a;
      fr.glued_ends.push_back(a);
      open_ends_ -= 2;
      if (!dsu_.unite(a, b)) ++closed_cycles_;
    }
    return true;
  }

  void undo_frame(Frame& fr) {
    for (int e : fr.glued_ends) {
      glue_partner_[glue_partner_[e]] = -1;
      glue_partner_[e] = -1;
    }
    dsu_.rollback_unions(fr.dsu_mark);
    for (PortIndex p : fr.ports_set) {
      port_ends_[p].clear();
      port_set_[p] = false;
    }
    for (SegmentIndex g : fr.segs_set) seg_ends_[g].clear();
    dsu_.shrink(fr.ends_before);
    chord_partner_.resize(fr.ends_before);
    glue_partner_.resize(fr.ends_before);
    end_port_.resize(fr.ends_before);
    end_seg_.resize(fr.ends_before);
    open_ends_ = fr.open_before;
    closed_cycles_ = fr.closed_before;
    terminals_ = fr.terminals_before;
    port_end_count_ = fr.port_ends_before;
  }

  void settle_face(size_t rank, int local_terminals) {
    bump_nodes();
    FaceCtx& ctx = order_[rank];
    if (terminals_ + local_terminals > 2) return;

    Frame fr;
    fr.ends_before = chord_partner_.size();
    fr.dsu_mark = dsu_.mark();
    fr.open_before = open_ends_;
    fr.closed_before = closed_cycles_;
    fr.terminals_before = terminals_;
    fr.port_ends_before = port_end_count_;

    // Mark every port of this face as placed.
    for (int pos : ctx.hostable) {
      const auto& it = ctx.items[pos];
      if (it.is_port && !port_set_[it.id]) {
        port_set_[it.id] = true;
        fr.ports_set.push_back(it.id);
      }
    }

    // Create chord ends in walk order and match them.
    Matcher m;
    std::vector<int> pos_end;
    for (int pos : ctx.hostable) {
      const auto& it = ctx.items[pos];
      for (int r = 0; r < ctx.used[pos]; ++r) {
        int e = new_end(it.is_port ? it.id : -1, it.is_port ? -1 : it.id);
        m.pos_item.push_back(pos);
        pos_end.push_back(e);
        if (it.is_port) {
          port_ends_[it.id].push_back(e);
          ++open_ends_;
          ++port_end_count_;
        } else {
          if (seg_ends_[it.id].empty()) fr.segs_set.push_back(it.id);
          seg_ends_[it.id].push_back(e);
          ++terminals_;
        }
      }
    }
    for (size_t t = 0; t < ctx.types.size(); ++t)
      if (ctx.counts[t]) {
        auto [i, j] = ctx.types[t];
        m.counts[{std::min(i, j), std::max(i, j)}] += ctx.counts[t];
      }
    m.matched.assign(m.pos_item.size(), -1);
    m.unmatched = static_cast<int>(m.pos_item.size());

    bool viable = m.solve();
    if (viable) {
      for (size_t x = 0; x < m.pos_item.size(); ++x)
        chord_partner_[pos_end[x]] = pos_end[m.matched[x]];

      for (int pos : ctx.hostable) {
        const auto& it = ctx.items[pos];
        if (!it.is_port) continue;
        PortIndex p = it.id, q = opposite_port(p);
        if (!port_set_[q]) continue;
        bool same_face = s_.port_location(q).face == ctx.face;
        if (same_face && q < p) continue;  // glue intra-face arcs once
        if (!glue_arc(p, q, fr)) {
          viable = false;
          break;
        }
      }
    }

    // Crossings committed so far plus crossings forced by open strands.
    if (viable && port_end_count_ + open_ends_ > 2 * max_weight_)
      viable = false;

    // Shard split over complete first-face assignments.
    if (viable && rank == 0 && shard_count_ > 1 && only_shard_ >= 0) {
      long long key = top_counter_++;
      if (key % shard_count_ != only_shard_) viable = false;
    }

    if (viable) {
      if (wave_base_ < 0) {
        if (closed_cycles_ == 1 && open_ends_ == 0) {
          emit_curve();
        } else if (closed_cycles_ == 0) {
          assign_face(rank + 1);
        }
        // closed cycle with open strands: dead branch
      } else {
        if (closed_cycles_ == 0) assign_face(rank + 1);
      }
    }
    undo_frame(fr);
  }

  void finish() {
    if (wave_base_ < 0) return;  // closed curves emit at closure time
    if (terminals_ != 2 || open_ends_ != 0 || closed_cycles_ != 0) return;
    if (chord_partner_.empty()) return;
    emit_wave();
  }

  void note_solution() {
    if (++emitted_ > budget_.max_solutions)
      fail(ErrorCode::BudgetExceeded, "enumeration solution cap hit");
  }

  std::vector<std::array<int, 3>> coord_vector() const {
    std::vector<std::array<int, 3>> flat;
    for (const FaceCtx& ctx : order_)
      for (size_t t = 0; t < ctx.types.size(); ++t)
        for (int r = 0; r < ctx.counts[t]; ++r)
          flat.push_back({ctx.face, ctx.types[t][0], ctx.types[t][1]});
    std::sort(flat.begin(), flat.end());
    return flat;
  }

  Layout live_layout() const {
    Layout L;
    L.s = &s_;
    L.comp = comp_;
    L.port_ends = port_ends_;
    L.seg_ends = seg_ends_;
    L.chord_partner = chord_partner_;
    L.end_port = end_port_;
    return L;
  }

  void emit_curve() {
    note_solution();
    std::vector<PortIndex> entries;
    int e = 0;
    do {
      int g = glue_partner_[e];
      require(g != -1, ErrorCode::Internal, "open strand in a closed cycle");
      entries.push_back(end_port_[g]);
      e = chord_partner_[g];
    } while (e != 0);
    Hit hit;
    hit.curve = canonical_curve(std::move(entries));
    hit.coord = coord_vector();
    CirclePartition part = region_sides(live_layout(), -1);
    require(part.essential(), ErrorCode::Internal,
            "normal closed curve with a circle-free side");
    hit.essential = true;
    hits_.push_back(std::move(hit));
  }

  void emit_wave() {
    note_solution();
    int t0 = -1, t1 = -1;
    for (size_t e = 0; e < end_seg_.size(); ++e) {
      if (end_seg_[e] == -1) continue;
      if (t0 == -1)
        t0 = static_cast<int>(e);
      else
        t1 = static_cast<int>(e);
    }
    std::vector<PortIndex> entries;
    int e = chord_partner_[t0];
    while (end_seg_[e] == -1) {
      int g = glue_partner_[e];
      entries.push_back(end_port_[g]);
      e = chord_partner_[g];
    }
    require(e == t1, ErrorCode::Internal, "wave trace lost its far end");
    std::vector<PortIndex> rev(entries.rbegin(), entries.rend());
    for (auto& p : rev) p = opposite_port(p);
    Hit hit;
    hit.curve.itinerary = std::min(entries, rev);
    hit.coord = coord_vector();
    CirclePartition part = region_sides(live_layout(), wave_base_);
    hit.essential = part.essential();
    hits_.push_back(std::move(hit));
  }

  const CutSurface& s_;
  int comp_;
  int max_weight_;
  EnumerationBudget budget_;
  CircleIndex wave_base_;
  int shard_count_, only_shard_;
  const std::vector<int>* pinned_;

  std::vector<FaceCtx> order_;
  std::vector<std::vector<int>> port_ends_;
  std::vector<std::vector<int>> seg_ends_;
  std::vector<bool> port_set_;
  std::vector<int> chord_partner_, glue_partner_, end_port_, end_seg_;
  UndoDsu dsu_;
  int open_ends_ = 0, closed_cycles_ = 0, terminals_ = 0, port_end_count_ = 0;
  long long nodes_ = 0, emitted_ = 0, top_counter_ = 0;
  std::vector<Hit> hits_;
};

}  // namespace

NormalCurve canonical_curve(std::vector<PortIndex> entries) {
  if (entries.empty()) return {};
  auto best_rotation = [](const std::vector<PortIndex>& v) {
    std::vector<PortIndex> best = v;
    std::vector<PortIndex> cand = v;
    for (size_t r = 1; r < v.size(); ++r) {
      std::rotate(cand.begin(), cand.begin() + 1, cand.end());
      if (cand < best) best = cand;
    }
    return best;
  };
  std::vector<PortIndex> rev(entries.rbegin(), entries.rend());
  for (auto& p : rev) p = opposite_port(p);
  NormalCurve c;
  c.itinerary = std::min(best_rotation(entries), best_rotation(rev));
  return c;
}

bool CirclePartition::separates(CircleIndex c1, CircleIndex c2) const {
  auto in = [](const std::vector<CircleIndex>& v, CircleIndex c) {
    return std::find(v.begin(), v.end(), c) != v.end();
  };
  return (in(side_a, c1) && in(side_b, c2)) ||
         (in(side_a, c2) && in(side_b, c1));
}

std::vector<NormalCurve> enumerate_curves(const CutSurface& s,
                                          const EnumerationOptions& opts) {
  struct Entry {
    std::vector<std::array<int, 3>> coord;
    NormalCurve curve;
    bool operator<(const Entry& o) const { return coord < o.coord; }
  };
  std::vector<Entry> entries;
  for (int comp = 0; comp < s.num_components(); ++comp) {
    auto run_shard = [&](int shard) {
      Engine eng(s, comp, opts.max_weight, opts.budget, -1, opts.shard_count,
                 shard);
      for (auto& hit : eng.run())
        entries.push_back({std::move(hit.coord), std::move(hit.curve)});
    };
    if (opts.shard_count > 1 && opts.only_shard < 0) {
      for (int shard = 0; shard < opts.shard_count; ++shard) run_shard(shard);
    } else if (opts.shard_count > 1) {
      run_shard(opts.only_shard);
    } else {
      run_shard(-1);
    }
  }
  std::sort(entries.begin(), entries.end());
  for (size_t i = 0; i + 1 < entries.size(); ++i)
    require(entries[i].curve != entries[i + 1].curve, ErrorCode::Internal,
            "duplicate isotopy class emitted");
  std::vector<NormalCurve> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.push_back(std::move(e.curve));
  return out;
}

std::vector<NormalCurve> enumerate_curves_with_loads(
    const CutSurface& s, int component, const std::vector<int>& arc_loads,
    const EnumerationBudget& budget) {
  int total = 0;
  for (int l : arc_loads) total += l;
  Engine eng(s, component, total, budget, -1, 1, -1, &arc_loads);
  std::vector<NormalCurve> out;
  for (auto& hit : eng.run())
    if (hit.curve.weight() == total) out.push_back(std::move(hit.curve));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Rebuild the full chord layout of a single curve from its itinerary.
struct Materialized {
  Layout L;
  // Forward trace, one entry per crossing: {exit end, entry end}.
  std::vector<std::array<int, 2>> links;
  std::vector<PortIndex> entries;
};

Materialized materialize(const CutSurface& s, const NormalCurve& c) {
  require(!c.itinerary.empty(), ErrorCode::BadParam,
          "cannot materialize an empty itinerary");
  const int W = c.weight();
  int comp = s.face(s.port_location(c.itinerary[0]).face).component;
  require(s.component(comp).filled, ErrorCode::Unsupported,
          "curve materialization needs a filled component");

  std::map<FaceIndex, std::map<std::array<int, 2>, int>> counts;
  for (int i = 0; i < W; ++i) {
    PortIndex entry = c.itinerary[i];
    PortIndex exit = opposite_port(c.itinerary[(i + 1) % W]);
    const auto& le = s.port_location(entry);
    const auto& lx = s.port_location(exit);
    require(le.face == lx.face, ErrorCode::BadParam,
            "itinerary leaves a face it never entered");
    require(le.index != lx.index, ErrorCode::BadParam,
            "itinerary bounces off one arc side");
    counts[le.face][{std::min(le.index, lx.index),
                     std::max(le.index, lx.index)}] += 1;
  }

  Materialized out;
  out.L.s = &s;
  out.L.comp = comp;
  out.L.port_ends.resize(2 * std::max(s.num_arcs(), 1));
  out.L.seg_ends.resize(std::max(s.num_segments(), 1));

  for (auto& [f, face_counts] : counts) {
    const auto& walk = s.face(f).walks[0];
    std::map<int, int> load;
    for (auto& [key, cnt] : face_counts) {
      load[key[0]] += cnt;
      load[key[1]] += cnt;
    }
    Matcher m;
    std::vector<int> pos_end;
    for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
      if (!load.count(i)) continue;
      require(walk[i].is_port, ErrorCode::BadParam,
              "closed itinerary touches a boundary segment");
      for (int r = 0; r < load[i]; ++r) {
        int e = static_cast<int>(out.L.chord_partner.size());
        out.L.chord_partner.push_back(-1);
        out.L.end_port.push_back(walk[i].id);
        out.L.port_ends[walk[i].id].push_back(e);
        m.pos_item.push_back(i);
        pos_end.push_back(e);
      }
    }
    m.counts = face_counts;
    m.matched.assign(m.pos_item.size(), -1);
    m.unmatched = static_cast<int>(m.pos_item.size());
    require(m.solve(), ErrorCode::BadParam,
            "itinerary chords are not laminar in a face");
    for (size_t x = 0; x < m.pos_item.size(); ++x)
      out.L.chord_partner[pos_end[x]] = pos_end[m.matched[x]];
  }

  std::vector<int> glue(out.L.chord_partner.size(), -1);
  for (ArcIndex a = 0; a < s.num_arcs(); ++a) {
    auto& ep = out.L.port_ends[make_port(a, 0)];
    auto& eq = out.L.port_ends[make_port(a, 1)];
    require(ep.size() == eq.size(), ErrorCode::BadParam,
            "itinerary crossing counts disagree across an arc");
    const int n = static_cast<int>(ep.size());
    for (int i = 0; i < n; ++i) {
      glue[ep[i]] = eq[n - 1 - i];
      glue[eq[n - 1 - i]] = ep[i];
    }
  }
  std::vector<bool> seen(out.L.chord_partner.size(), false);
  int e = 0;
  do {
    int g = glue[e];
    require(g != -1 && !seen[e] && !seen[g], ErrorCode::BadParam,
            "itinerary does not trace to a single closed curve");
    seen[e] = true;
    seen[g] = true;
    out.links.push_back({e, g});
    out.entries.push_back(out.L.end_port[g]);
    e = out.L.chord_partner[g];
  } while (e != 0);
  require(static_cast<int>(out.links.size()) == W &&
              std::count(seen.begin(), seen.end(), false) == 0,
          ErrorCode::BadParam, "itinerary traces to several components");
  require(canonical_curve(out.entries).itinerary == c.itinerary,
          ErrorCode::BadParam, "itinerary is not in canonical form");
  return out;
}

}  // namespace

CirclePartition side_partition(const CutSurface& s, const NormalCurve& c) {
  auto mat = materialize(s, c);
  return region_sides(mat.L, -1);
}

bool separates_disk_pair(const CutSurface& s, const NormalCurve& c,
                         DiskIndex d) {
  return side_partition(s, c).separates(s.plus_circle(d), s.minus_circle(d));
}

CurveGeometry realize_curve(const CutSurface& s, const NormalCurve& c) {
  auto mat = materialize(s, c);
  const int W = c.weight();

  // Entry port of traced crossing j when walked forward / backward.
  auto entry_at = [&](int j, bool reversed) {
    return mat.L.end_port[mat.links[j][reversed ? 0 : 1]];
  };

  // Align the trace with the canonical itinerary: crossing i of the
  // output sits between face visits i and i+1, so it carries entry
  // itinerary[(i+1) % W].
  for (bool reversed : {false, true}) {
    for (int off = 0; off < W; ++off) {
      bool match = true;
      for (int i = 0; i < W && match; ++i) {
        int j = reversed ? ((off - i) % W + W) % W : (off + i) % W;
        if (entry_at(j, reversed) != c.itinerary[(i + 1) % W]) match = false;
      }
      if (!match) continue;
      CurveGeometry geo;
      geo.arc_loads.assign(s.num_arcs(), 0);
      for (ArcIndex a = 0; a < s.num_arcs(); ++a)
        geo.arc_loads[a] =
            static_cast<int>(mat.L.port_ends[make_port(a, 0)].size());
      for (int i = 0; i < W; ++i) {
        int j = reversed ? ((off - i) % W + W) % W : (off + i) % W;
        int exit_end = mat.links[j][reversed ? 1 : 0];
        PortIndex q = mat.L.end_port[exit_end];
        ArcIndex a = arc_of_port(q);
        const auto& ends = mat.L.port_ends[q];
        int idx = static_cast<int>(
            std::find(ends.begin(), ends.end(), exit_end) - ends.begin());
        CurveGeometry::Crossing cr;
        cr.arc = a;
        cr.pos_from_end0 = (s.port_start(q) == s.arc(a)[0])
                               ? idx
                               : static_cast<int>(ends.size()) - 1 - idx;
        cr.left_toward_end1 = (s.port_finish(q) == s.arc(a)[1]);
        geo.crossings.push_back(cr);
      }
      return geo;
    }
  }
  fail(ErrorCode::Internal, "could not align curve trace with itinerary");
}

namespace {

std::optional<int> wave_search(const CutSurface& s, CircleIndex c, int hi,
                               const EnumerationBudget& budget) {
  int comp = s.component_of_circle(c);
  require(s.component(comp).filled, ErrorCode::Unsupported,
          "wave search needs a filled component");
  for (int w = 0; w <= hi; ++w) {
    Engine eng(s, comp, w, budget, c, 1, -1);
    int best = -1;
    for (auto& hit : eng.run()) {
      if (!hit.essential) continue;
      if (best == -1 || hit.curve.weight() < best) best = hit.curve.weight();
    }
    if (best >= 0) return best;
  }
  return std::nullopt;
}

}  // namespace

std::optional<int> min_essential_wave(const CutSurface& s, CircleIndex c,
                                      const EnumerationBudget& budget) {
  int comp = s.component_of_circle(c);
  if (s.component(comp).circles.size() < 3) return std::nullopt;
  int bound = 2 * static_cast<int>(s.component(comp).arcs.size()) + 4;
  auto hit = wave_search(s, c, bound, budget);
  require(hit.has_value(), ErrorCode::Internal,
          "component with three circles admits no essential wave");
  return hit;
}

std::optional<int> min_essential_wave_below(const CutSurface& s,
                                            CircleIndex c, int cap,
                                            const EnumerationBudget& budget) {
  if (cap <= 0) return std::nullopt;
  int comp = s.component_of_circle(c);
  if (s.component(comp).circles.size() < 3) return std::nullopt;
  return wave_search(s, c, cap - 1, budget);
}

}  // namespace diskpat
