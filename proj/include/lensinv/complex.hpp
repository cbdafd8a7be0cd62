#pragma once

// Pre-simplicial complexes carrying Euclidean metric data, and the defect
// angles around their edge classes.
//
// Edges are not determined by their endpoints: every tetrahedron slot names an
// edge class directly, and several slots of one tetrahedron may name the same
// class. Likewise each tetrahedron face names a face class. A face class used
// once is boundary; a closed complex has every face class used exactly twice.
// Open patches are accepted so that local configurations can be studied.

#include <array>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lensinv/tetgeom.hpp"

namespace lensinv {

struct Tetrahedron {
  std::array<int, 4> vertices;  ///< vertex class of each local vertex
  std::array<int, 6> edges;     ///< edge class of each slot, in EdgeSlot::index() order
  std::array<int, 4> faces;     ///< face class of the face opposite each local vertex

  int edge(EdgeSlot e) const { return edges[e.index()]; }
};

class PreComplex {
 public:
  PreComplex(int vertex_count, std::vector<std::string> edge_names, int face_count,
             std::vector<Tetrahedron> tetrahedra);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edge_names_.size()); }
  int face_count() const { return face_count_; }
  int tetrahedron_count() const { return static_cast<int>(tetrahedra_.size()); }

  const std::vector<std::string>& edge_names() const { return edge_names_; }
  const std::vector<Tetrahedron>& tetrahedra() const { return tetrahedra_; }

  /// V - E + F - T of the cell complex.
  int euler_characteristic() const;

  /// Every face class is shared by exactly two tetrahedron faces (no boundary).
  bool is_closed() const { return closed_; }

 private:
  int vertex_count_;
  std::vector<std::string> edge_names_;
  int face_count_;
  std::vector<Tetrahedron> tetrahedra_;
  bool closed_ = false;
};

/// Length per edge class and orientation sign (+1 / -1) per tetrahedron.
struct MetricData {
  Eigen::VectorXd lengths;
  std::vector<int> signs;
};

/// Throws InvalidMetric unless sizes match, lengths are positive and signs are +-1.
void validate_metric(const PreComplex& c, const MetricData& m);

/// Six lengths of tetrahedron `t` pulled back from the edge classes.
TetrahedronLengths tetrahedron_lengths(const PreComplex& c, const MetricData& m, int t);

/// Representative of `angle` modulo 2 pi in (-pi, pi].
double reduce_angle(double angle);

/// omega_a = -sum over (tetrahedron T, slot s mapped to a) of sign(T) * angle(T, s),
/// reduced to (-pi, pi]. Repeated slots of one tetrahedron all contribute.
Eigen::VectorXd defect_angles(const PreComplex& c, const MetricData& m);

/// Unreduced signed sums, useful for seeing how many full turns close up.
Eigen::VectorXd defect_angles_unreduced(const PreComplex& c, const MetricData& m);

/// A(a, b) = d omega_a / d l_b, summed slot by slot over every tetrahedron that
/// contains both classes.
Eigen::MatrixXd defect_jacobian_analytic(const PreComplex& c, const MetricData& m);

/// Central finite differences of the unreduced defect angles with step h.
Eigen::MatrixXd defect_jacobian_fd(const PreComplex& c, const MetricData& m, double h);

/// True when every defect angle is within `tol` of zero.
bool is_permitted(const PreComplex& c, const MetricData& m, double tol = 1e-9);

}  // namespace lensinv
