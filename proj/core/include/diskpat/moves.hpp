#pragma once

// Moves on disk systems: regluing a disk away, disk swaps realised as
// cut-then-reglue surgery on the combinatorial map, wave compression,
// the collapsed pattern graph with parallel arc classes merged, and
// waveless basis extension.
//
// States are immutable values; every move returns a new state carrying a
// move log suitable for certificate replay.

#include <optional>

#include "diskpat/curves.hpp"
#include "diskpat/pattern.hpp"

namespace diskpat {

struct MoveLogEntry {
  enum class Kind { RemoveDisk, CompressWave, DiskSwap, AddDisk };
  Kind kind;
  std::string disk_id;               // disk acted on (pre-move naming)
  std::optional<NormalCurve> curve;  // swap curve / new disk boundary
  std::optional<ArcIndex> wave_arc;  // compressed wave
  int total_before = 0;
  int total_after = 0;
  bool reducing = false;
};

class DiskSystemState {
 public:
  explicit DiskSystemState(CutSurface s) : surface_(std::move(s)) {}

  const CutSurface& surface() const { return surface_; }
  const std::vector<MoveLogEntry>& log() const { return log_; }
  int total_weight() const { return surface_.total_weight(); }
  int disk_weight(DiskIndex d) const { return surface_.disk_weight(d); }
  int max_disk_weight() const;

  DiskSystemState advanced(CutSurface next, MoveLogEntry entry) const;

 private:
  CutSurface surface_;
  std::vector<MoveLogEntry> log_;
};

// ---------------------------------------------------------------------
// Surgery primitives on the cut surface.

// Remove disk d and reglue its two circles: paired arcs merge into
// chains.  Throws OrphanedCurve when a pattern curve would close up away
// from every remaining disk (the model keeps no free-floating curves).
CutSurface reglue_disk(const CutSurface& s, DiskIndex d);

// Swap disk d for the disk bounded by `curve`: cut along the curve (its
// crossings become the slots of the new circle pair) and reglue the old
// disk.  The curve must split Dd+ from Dd-; InvalidSwap otherwise.
CutSurface recut(const CutSurface& s, DiskIndex d, const NormalCurve& curve);

// Append a new disk bounded by `curve`, splitting its component.
CutSurface add_disk_along(const CutSurface& s, const NormalCurve& curve,
                          const std::string& disk_id);

// ---------------------------------------------------------------------
// State-level moves.

// Reduce to a minimal system (genus many disks): repeatedly reglue the
// least disk whose circles lie in different components.
DiskSystemState to_minimal_system(DiskSystemState st);

struct WaveRef {
  ArcIndex arc = -1;
  CircleIndex circle = -1;
  DiskIndex disk = -1;
};

// A pattern arc returning to one circle with other circles on both sides,
// or nullopt when the system is waveless.
std::optional<WaveRef> find_wave(const DiskSystemState& st);

// Split the disk boundary at the wave ends, push both pieces to normal
// position, and swap in the piece that splits the disk's circle pair
// (ties: lighter piece, then canonical itinerary).  Drops the total
// crossing count by at least two.
DiskSystemState compress_wave(const DiskSystemState& st, const WaveRef& wave);

DiskSystemState disk_swap(const DiskSystemState& st, DiskIndex d,
                          const NormalCurve& curve);

// Compress waves until none remain; at most total/2 moves.
DiskSystemState make_waveless(DiskSystemState st);

// ---------------------------------------------------------------------
// Collapsed pattern graph.

struct GammaPrime {
  int component = -1;
  std::vector<CircleIndex> vertices;
  struct Edge {
    CircleIndex u = -1, v = -1;
    std::vector<ArcIndex> arcs;  // the parallel family, multiplicity = size
  };
  std::vector<Edge> edges;
  // Per vertex: incident edge ids in the cyclic slot order of the circle,
  // consecutive repeats collapsed.
  std::vector<std::vector<int>> rotation;
};

// Collapse circles to vertices and merge parallel arcs (arcs cobounding a
// two-arc square face, transitively).  Requires a waveless component with
// no boundary-parallel arcs: an essential returning arc raises HasWave, a
// trivial one Unsupported (a parallel-copy swap reduces it first).
GammaPrime build_gamma_prime(const CutSurface& s, int component);

// A vertex in no pair of distinct parallel-class edges with equal ends.
// Absence signals a broken invariant upstream, not a valid outcome.
std::optional<CircleIndex> find_vertex_outside_2cycles(const GammaPrime& g);

// Split non-pants components along collars of single-edge vertex pairs
// until every component is a pair of pants.  Requires waveless input; the
// added disks introduce no waves.
DiskSystemState extend_to_waveless_basis(DiskSystemState st);

// Every essential wave at every circle crosses the pattern at least
// ceil(n/2) times (vacuously true where no essential wave exists).
bool is_n_waveless(const DiskSystemState& st, int n,
                   const EnumerationBudget& budget = {});

}  // namespace diskpat
