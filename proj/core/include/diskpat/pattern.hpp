#pragma once

// Combinatorial model of a handlebody boundary pattern cut along a system
// of meridian disks.
//
// Conventions used throughout the library:
//
//   - A genus-g handlebody H carries a system of k >= g meridian disks
//     D1..Dk.  Cutting the boundary surface along the disk boundaries
//     yields the cut surface S, a disjoint union of punctured spheres.
//     Each disk contributes two boundary circles Di+ and Di-.
//
//   - The pattern curves live in the boundary as a set of disjoint closed
//     curves; in S they appear as properly embedded arcs.  Each arc end
//     sits in a "slot" on a circle.  Slots are listed per circle in cyclic
//     order, oriented so that the surface lies on the LEFT when walking
//     along the circle.
//
//   - The two circles of a disk reglue via an orientation-reversing slot
//     bijection (the pairing).  Tracing arcs through the pairings
//     recovers the closed pattern curves.
//
//   - Faces (complementary regions of the arcs in S) are derived by
//     boundary-walk tracing:  after a directed segment ending at slot x
//     comes the arc traversal leaving x; after an arc traversal ending at
//     slot y comes the directed segment starting at y.  Every walk keeps
//     its face on the left.  A face may own several walks (sparse
//     patterns); walk grouping is normalized canonically, see
//     build_cut_surface.
//
// Index conventions:
//   - disk d in [0, k);  circle 2d = Dd+, circle 2d+1 = Dd-.
//   - slot ids are global, 0..S-1, canonically ordered by (circle, pos).
//   - port p encodes the directed traversal of arc p/2 from end p%2 to
//     end 1-p%2; the face containing port p lies on the left of that
//     traversal.  Each arc side belongs to exactly one face walk.
//   - segment (c, pos) runs from slot pos to slot pos+1 (mod m) of circle
//     c; a slotless circle owns a single degenerate segment.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diskpat/errors.hpp"

namespace diskpat {

using DiskIndex = int;
using CircleIndex = int;
using SlotId = int;
using ArcIndex = int;
using PortIndex = int;
using SegmentIndex = int;
using FaceIndex = int;

inline ArcIndex arc_of_port(PortIndex p) { return p / 2; }
inline int dir_of_port(PortIndex p) { return p % 2; }
inline PortIndex make_port(ArcIndex a, int dir) { return 2 * a + dir; }
inline PortIndex opposite_port(PortIndex p) { return p ^ 1; }

// Raw build input.  Slot ids may be any distinct ints; the builder
// renumbers canonically.  Circle 2d / 2d+1 are the +/- sides of disk d.
struct SurfaceSpec {
  int genus = 0;
  std::vector<std::string> disk_ids;                // size k
  std::vector<std::vector<int>> circle_slots;       // size 2k, cyclic lists
  std::vector<std::array<int, 2>> arcs;             // pairs of slot ids
  std::vector<std::vector<std::array<int, 2>>> pairing;  // per disk: {plus slot, minus slot}
};

struct SlotInfo {
  CircleIndex circle = -1;
  int pos = -1;
  ArcIndex arc = -1;
};

struct Circle {
  DiskIndex disk = -1;
  int sign = +1;  // +1 for Dd+, -1 for Dd-
  std::vector<SlotId> slots;
};

struct WalkItem {
  bool is_port = false;
  int id = -1;  // PortIndex or SegmentIndex
  friend bool operator==(const WalkItem&, const WalkItem&) = default;
};

struct Face {
  std::vector<std::vector<WalkItem>> walks;
  int component = -1;
};

struct ItemLocation {
  FaceIndex face = -1;
  int walk = -1;
  int index = -1;
};

struct Component {
  std::vector<CircleIndex> circles;
  std::vector<ArcIndex> arcs;
  std::vector<FaceIndex> faces;
  // True when every face is a one-walk disk and every circle carries a
  // slot; the normal-curve machinery requires this.
  bool filled = false;
};

class CutSurface {
 public:
  int genus() const { return genus_; }
  int num_disks() const { return static_cast<int>(disk_ids_.size()); }
  int num_circles() const { return static_cast<int>(circles_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  int num_slots() const { return static_cast<int>(slots_.size()); }
  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_segments() const { return static_cast<int>(segment_circle_.size()); }
  int num_components() const { return static_cast<int>(components_.size()); }

  const std::string& disk_id(DiskIndex d) const { return disk_ids_[d]; }
  const std::vector<std::string>& disk_ids() const { return disk_ids_; }
  CircleIndex plus_circle(DiskIndex d) const { return 2 * d; }
  CircleIndex minus_circle(DiskIndex d) const { return 2 * d + 1; }
  const Circle& circle(CircleIndex c) const { return circles_[c]; }
  std::string circle_name(CircleIndex c) const;

  const SlotInfo& slot(SlotId s) const { return slots_[s]; }
  const std::array<SlotId, 2>& arc(ArcIndex a) const { return arcs_[a]; }
  // Slot on the other side of the circle's disk glued to s.
  SlotId partner_slot(SlotId s) const { return partner_[s]; }

  // Number of crossings between the pattern and disk d.
  int disk_weight(DiskIndex d) const {
    return static_cast<int>(circles_[plus_circle(d)].slots.size());
  }
  int total_weight() const;

  const Face& face(FaceIndex f) const { return faces_[f]; }
  const std::vector<Face>& faces() const { return faces_; }
  const Component& component(int i) const { return components_[i]; }
  int component_of_circle(CircleIndex c) const { return circle_component_[c]; }

  SegmentIndex segment_index(CircleIndex c, int pos) const {
    return seg_base_[c] + pos;
  }
  CircleIndex segment_circle(SegmentIndex s) const { return segment_circle_[s]; }
  int segment_pos(SegmentIndex s) const { return segment_pos_[s]; }

  const ItemLocation& port_location(PortIndex p) const { return port_loc_[p]; }
  const ItemLocation& segment_location(SegmentIndex s) const { return seg_loc_[s]; }

  // Directed traversal of arc(p): start and finish slots.
  SlotId port_start(PortIndex p) const { return arcs_[arc_of_port(p)][dir_of_port(p)]; }
  SlotId port_finish(PortIndex p) const { return arcs_[arc_of_port(p)][1 - dir_of_port(p)]; }

  SlotId succ_slot(SlotId s) const;
  SlotId pred_slot(SlotId s) const;

  // Export in canonical form (stable ids, sorted arcs).
  SurfaceSpec to_spec() const;

  friend CutSurface build_cut_surface(const SurfaceSpec& spec);

 private:
  int genus_ = 0;
  std::vector<std::string> disk_ids_;
  std::vector<Circle> circles_;
  std::vector<SlotInfo> slots_;
  std::vector<std::array<SlotId, 2>> arcs_;
  std::vector<SlotId> partner_;
  std::vector<Face> faces_;
  std::vector<Component> components_;
  std::vector<int> circle_component_;
  std::vector<int> seg_base_;
  std::vector<CircleIndex> segment_circle_;
  std::vector<int> segment_pos_;
  std::vector<ItemLocation> port_loc_;
  std::vector<ItemLocation> seg_loc_;
};

// Validates the spec and derives the face structure.  Throws Error with
// SlotMismatch / PairingInvalid / NonPlanar on bad input.  Walk grouping
// for sparse inputs is normalized: slotless circles join their partner's
// face (or pair up when both sides are slotless), and any remaining Euler
// deficit is absorbed canonically; the Euler identity per component and
// the global genus/assembly checks are enforced afterwards.
CutSurface build_cut_surface(const SurfaceSpec& spec);

// One closed pattern curve: the cyclic arc sequence obtained by tracing
// through the pairings, in canonical rotation.  Crossing count with the
// disk system equals size().
using TripleCurve = std::vector<ArcIndex>;

std::vector<TripleCurve> trace_triple_curves(const CutSurface& s);

enum class Essentiality { Certified, Unverified };

struct TripleCurveInfo {
  TripleCurve arcs;
  int crossings = 0;
  Essentiality essential = Essentiality::Unverified;
};

struct ValidationReport {
  bool two_colourable = false;
  std::vector<TripleCurveInfo> triple_curves;
  std::vector<CircleIndex> slotless_circles;
  std::vector<FaceIndex> multiwalk_faces;
  bool all_certified_essential() const {
    for (const auto& t : triple_curves)
      if (t.essential != Essentiality::Certified) return false;
    return true;
  }
};

struct BoundaryPattern {
  CutSurface surface;
  std::vector<TripleCurve> triple_curves;
};

BoundaryPattern make_boundary_pattern(CutSurface surface);

ValidationReport validate_pattern(const CutSurface& s);

// Side data for a properly embedded pattern arc: the circles strictly on
// each side when the component is cut along the arc (the arc's own base
// circles excluded when the ends share a circle).
struct ArcSides {
  std::vector<CircleIndex> side_a, side_b;
};

ArcSides arc_sides(const CutSurface& s, ArcIndex a);

}  // namespace diskpat
