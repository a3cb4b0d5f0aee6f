#include "diskpat/curvature.hpp"

#include "diskpat/errors.hpp"

namespace diskpat {

namespace {

void check_label(int n) {
  require(n == 4 || n == 6 || n == 8 || n == 12, ErrorCode::BadLabel,
          "disk-condition label must be one of 4, 6, 8, 12 (got " +
              std::to_string(n) + ")");
}

}  // namespace

Rational face_curvature(int m, int n) {
  require(m >= 1, ErrorCode::BadLabel, "face needs at least one vertex");
  check_label(n);
  return Rational(1) - Rational(m, n);
}

Rational jump_angle(int n1, int n2) {
  check_label(n1);
  check_label(n2);
  require(!(n1 == 4 && n2 == 4), ErrorCode::InadmissiblePair,
          "adjacent faces cannot both carry label 4");
  return Rational(1, n1) + Rational(1, n2) - Rational(1, 2);
}

namespace {

AuditVerdict sum_faces(const GonDiagram& d) {
  AuditVerdict v;
  v.all_flat = true;
  for (size_t i = 0; i < d.faces.size(); ++i) {
    auto [m, n] = d.faces[i];
    v.curvature_sum = v.curvature_sum + face_curvature(m, n);
    if (m < n) v.positive_faces.push_back(static_cast<int>(i));
    if (m != n) v.all_flat = false;
  }
  return v;
}

}  // namespace

AuditVerdict audit_disk_diagram(const GonDiagram& d) {
  require(d.topology == GonDiagram::Topology::Disk, ErrorCode::BadParam,
          "not a disk diagram");
  AuditVerdict v = sum_faces(d);
  for (auto [n1, n2] : d.boundary_jumps)
    v.jump_sum = v.jump_sum + jump_angle(n1, n2);
  v.consistent = (v.curvature_sum == Rational(1) - v.jump_sum);
  v.exceeds_disk_bound = v.curvature_sum > Rational(1);
  if (!v.consistent) {
    v.note = "curvature sum " + v.curvature_sum.str() +
             " does not match 1 - jump sum = " +
             (Rational(1) - v.jump_sum).str();
  } else if (!v.positive_faces.empty()) {
    v.note = "positive-curvature faces present";
  } else {
    v.note = "no positive face; impossible for a disk with admissible jumps";
  }
  return v;
}

AuditVerdict audit_torus_diagram(const GonDiagram& d) {
  require(d.topology == GonDiagram::Topology::Torus, ErrorCode::BadParam,
          "not a torus diagram");
  require(d.boundary_jumps.empty(), ErrorCode::BadParam,
          "torus diagrams have no boundary vertices");
  AuditVerdict v = sum_faces(d);
  v.consistent = (v.curvature_sum == Rational(0));
  bool has_negative = false;
  for (auto [m, n] : d.faces)
    if (m > n) has_negative = true;
  if (!v.consistent) {
    v.note = "curvature sum " + v.curvature_sum.str() + " is not 0";
  } else if (v.all_flat) {
    v.note = "terminal state: every face is an (n,n)-gon";
  } else if (has_negative && v.positive_faces.empty()) {
    // Cannot happen when the sum identity holds; kept as a tripwire.
    v.note = "negative face without positive face";
    v.consistent = false;
  } else {
    v.note = "positive and negative faces balance";
  }
  return v;
}

}  // namespace diskpat
