#pragma once

// The decision engine: reduces a pattern to a locally minimal waveless
// system (wave compressions and reducing disk swaps), enumerates the
// meridian-bounding curves up to the current maximum disk weight, and
// reports either a certificate with the supremum crossing bound or a
// light meridian witness.
//
// Exit-code conventions for the CLI: 0 certified/pass, 1 violation/fail,
// 2 invalid input, 3 budget exceeded.

#include <array>
#include <optional>
#include <string>

#include "diskpat/moves.hpp"
#include "diskpat/rational.hpp"

namespace diskpat {

struct DecisionOptions {
  EnumerationBudget budget;
};

struct MeridianWitness {
  enum class Kind {
    SystemDisk,  // a disk of the final system
    Curve,       // an enumerated disjoint meridian curve
    SparseFace,  // weight-0 meridian from a face with several walks
  };
  Kind kind = Kind::SystemDisk;
  std::string disk_id;  // SystemDisk
  NormalCurve curve;    // Curve
  FaceIndex face = -1;  // SparseFace
  int weight = 0;
};

// Locally minimal terminal data shared by decide and the supremum query.
struct Terminal {
  DiskSystemState state;
  int n_sup = 0;
  std::vector<MeridianWitness> minimal_meridians;  // all realizing n_sup
  long long curve_classes = 0;  // enumerated at the final state
};

Terminal run_to_terminal(const CutSurface& pattern,
                         const DecisionOptions& opts = {});

struct Decision {
  int requested_n = 0;
  bool certified = false;
  Terminal terminal;
  const MeridianWitness& witness() const {
    require(!terminal.minimal_meridians.empty(), ErrorCode::Internal,
            "decision carries no witness");
    return terminal.minimal_meridians.front();
  }
};

// Determines whether every meridian disk crosses the pattern at least n
// times.  Certified iff the terminal supremum is >= n; otherwise the
// lightest meridian found is the violation witness.
Decision decide_disk_condition(const CutSurface& pattern, int n,
                               const DecisionOptions& opts = {});

// The supremum bound satisfied by the pattern (0 for degenerate inputs
// with weight-0 meridians).
int supremum(const CutSurface& pattern, const DecisionOptions& opts = {});

// ---------------------------------------------------------------------

struct HandlebodyVerdict {
  std::string name;
  int n = 0;
  bool certified = false;
  int n_sup = 0;
  int triple_curve_count = 0;
};

struct ManifoldReport {
  std::array<HandlebodyVerdict, 3> parts;
  Rational sum;          // 1/n1 + 1/n2 + 1/n3, exact
  bool sum_ok = false;   // sum <= 1/2
  bool all_certified = false;
  bool pass = false;
  // The minimal triple (sorted) this labelling dominates, if any.
  std::string dominated_minimal_triple;
  bool triple_counts_agree = false;
};

struct ManifoldInput {
  CutSurface pattern;
  int n = 0;
  std::string name;
};

// Per-handlebody decisions run concurrently; the report is deterministic.
ManifoldReport manifold_check(const std::array<ManifoldInput, 3>& inputs,
                              const DecisionOptions& opts = {});

struct GammaPrimeClause {
  bool maximal = false;         // every face a disk, all segment pairs
                                // adjacent across one arc side
  bool two_cycle_free = false;  // no pair of edge classes with equal ends
  bool holds() const { return maximal && two_cycle_free; }
};

struct AtoroidalReport {
  ManifoldReport manifold;
  bool strict_sum = false;  // sum < 1/2
  std::array<GammaPrimeClause, 3> clauses;
  int boundary_parallel_handlebodies = 0;  // clauses that hold
  bool granted = false;  // strict_sum and at least two clauses hold
};

AtoroidalReport atoroidal_check(const std::array<ManifoldInput, 3>& inputs,
                                const DecisionOptions& opts = {});

// Clause (b) on one pattern: reduce to a locally minimal waveless system
// and test its collapsed graph.
GammaPrimeClause gamma_prime_clause(const CutSurface& pattern,
                                    const DecisionOptions& opts = {});

}  // namespace diskpat
