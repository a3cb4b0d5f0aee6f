#pragma once

// Exact combinatorial curvature audits for trivalent-graph face complexes.
// Every angle and curvature is stored as a rational in units of 2*pi, so
// all verdicts are exact integer arithmetic.

#include <string>
#include <vector>

#include "diskpat/rational.hpp"

namespace diskpat {

// Curvature of an (m,n)-gon cone point: 1 - m/n in units of 2*pi.
// n must lie in {4, 6, 8, 12}; m >= 1.
Rational face_curvature(int m, int n);

// Boundary jump angle at a vertex whose two adjacent faces carry labels
// n1, n2: 1/n1 + 1/n2 - 1/2 in units of 2*pi.  The pair (4,4) never
// occurs under the sum condition and is rejected.
Rational jump_angle(int n1, int n2);

struct GonDiagram {
  enum class Topology { Disk, Torus };
  Topology topology = Topology::Disk;
  std::vector<std::pair<int, int>> faces;           // (m, n)
  std::vector<std::pair<int, int>> boundary_jumps;  // (n1, n2), disk only
};

struct AuditVerdict {
  bool consistent = false;       // the Gauss-Bonnet identity holds exactly
  Rational curvature_sum;        // sum of face curvatures
  Rational jump_sum;             // sum of boundary jump angles (disk)
  std::vector<int> positive_faces;  // indices of faces with m < n
  bool all_flat = false;         // every face has m == n
  bool exceeds_disk_bound = false;  // curvature_sum > 1 (disk identity)
  std::string note;
};

// Disk identity: sum K(F) = 1 - sum theta_v (2*pi units).  With every
// jump <= -1/12 a consistent diagram forces sum K > 1 and hence a face
// with m < n; the verdict records both.
AuditVerdict audit_disk_diagram(const GonDiagram& d);

// Torus identity: sum K(F) = 0; if some face has m > n another must have
// m < n.  all_flat reports the terminal all-(m = n) state.
AuditVerdict audit_torus_diagram(const GonDiagram& d);

}  // namespace diskpat
