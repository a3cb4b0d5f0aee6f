#pragma once

// Normal curves and waves in a cut surface.
//
// A closed curve in minimal position crosses the pattern arcs
// transversally and never enters and leaves a face through the same arc
// side, so inside each (disk) face it decomposes into chords joining two
// distinct boundary items.  A curve is recorded by its itinerary: the
// cyclic sequence of ports it enters, canonicalized over rotation and
// direction reversal.  Distinct itineraries are distinct isotopy classes;
// the crossing weight is the itinerary length.
//
// Waves are embedded arcs with both endpoints free on one circle; their
// terminal chord ends sit on segments of that circle.
//
// Enumeration requires every involved component to be "filled" (each
// face a one-walk disk, no slotless circles); sparse components are
// handled upstream by the decision engine.

#include <optional>
#include <vector>

#include "diskpat/pattern.hpp"

namespace diskpat {

struct NormalCurve {
  std::vector<PortIndex> itinerary;
  int weight() const { return static_cast<int>(itinerary.size()); }
  friend auto operator<=>(const NormalCurve&, const NormalCurve&) = default;
};

NormalCurve canonical_curve(std::vector<PortIndex> entries);

struct CirclePartition {
  // Sorted circle indices; side_a holds the least circle of the component.
  std::vector<CircleIndex> side_a, side_b;
  bool essential() const { return !side_a.empty() && !side_b.empty(); }
  bool separates(CircleIndex c1, CircleIndex c2) const;
};

struct EnumerationBudget {
  long long max_solutions = 200000;
  long long max_nodes = 50000000;
};

struct EnumerationOptions {
  EnumerationBudget budget;
  int max_weight = 0;
  // Results are independent of the shard split; shards partition the
  // top-level search canonically and merge by union.
  int shard_count = 1;
  int only_shard = -1;  // enumerate a single shard when >= 0
};

// One representative per isotopy class of essential simple closed curve
// of weight <= max_weight, over every component.  Curves parallel to a
// boundary circle count as essential (they bound parallel meridian
// copies).  Deterministic order: lexicographic over sorted coordinate
// vectors.  Throws BudgetExceeded when the work cap is hit.
std::vector<NormalCurve> enumerate_curves(const CutSurface& s,
                                          const EnumerationOptions& opts);

inline int weight(const NormalCurve& c) { return c.weight(); }

// Curves realizing exact per-arc crossing counts in one component
// (surgery support; the vector is indexed by arc).
std::vector<NormalCurve> enumerate_curves_with_loads(
    const CutSurface& s, int component, const std::vector<int>& arc_loads,
    const EnumerationBudget& budget = {});

CirclePartition side_partition(const CutSurface& s, const NormalCurve& c);

// True when the curve splits Dd+ from Dd-; such a curve bounds a disk
// usable for a swap on disk d.
bool separates_disk_pair(const CutSurface& s, const NormalCurve& c, DiskIndex d);

// Minimum crossing weight over essential embedded waves based at circle
// c, or nullopt when no essential wave exists (component with fewer than
// three circles).
std::optional<int> min_essential_wave(const CutSurface& s, CircleIndex c,
                                      const EnumerationBudget& budget = {});

// Same search cut off below `cap`: nullopt here means only that no
// essential wave has weight < cap.
std::optional<int> min_essential_wave_below(const CutSurface& s, CircleIndex c,
                                            int cap,
                                            const EnumerationBudget& budget = {});

// Geometric strand data used by surgery: where a curve crosses each arc
// and on which side its left germ points.
struct CurveGeometry {
  struct Crossing {
    ArcIndex arc = -1;
    int pos_from_end0 = -1;       // rank among the curve's strands on this arc
    bool left_toward_end1 = false;  // left germ points toward arc ends[1]
  };
  std::vector<Crossing> crossings;  // aligned with the itinerary
  std::vector<int> arc_loads;       // strands per arc
};

CurveGeometry realize_curve(const CutSurface& s, const NormalCurve& c);

}  // namespace diskpat
