#pragma once

// Euclidean tetrahedron primitives expressed in terms of the six edge lengths.
//
// Local vertices are labelled 0..3. The six edges are addressed by EdgeSlot
// and stored in the fixed order 01, 02, 03, 12, 13, 23.

#include <array>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Core>

namespace lensinv {

using Point3 = Eigen::Vector3d;

/// Unordered pair of distinct local vertices of a tetrahedron.
class EdgeSlot {
 public:
  static constexpr int kCount = 6;

  constexpr EdgeSlot(int u, int v) : lo_(u < v ? u : v), hi_(u < v ? v : u) {
    if (u == v || u < 0 || v < 0 || u > 3 || v > 3)
      throw std::invalid_argument("EdgeSlot: need two distinct local vertices in 0..3");
  }

  static constexpr EdgeSlot from_index(int index) {
    constexpr int kLo[kCount] = {0, 0, 0, 1, 1, 2};
    constexpr int kHi[kCount] = {1, 2, 3, 2, 3, 3};
    if (index < 0 || index >= kCount) throw std::invalid_argument("EdgeSlot: index out of range");
    return EdgeSlot(kLo[index], kHi[index]);
  }

  constexpr int u() const { return lo_; }
  constexpr int v() const { return hi_; }

  /// Position in the canonical order 01, 02, 03, 12, 13, 23.
  constexpr int index() const {
    return lo_ == 0 ? hi_ - 1 : (lo_ == 1 ? hi_ + 1 : 5);
  }

  /// The edge sharing no vertex with this one.
  constexpr EdgeSlot opposite() const { return from_index(5 - index()); }

  constexpr bool operator==(const EdgeSlot&) const = default;

 private:
  int lo_;
  int hi_;
};

inline constexpr std::array<EdgeSlot, 6> kAllSlots = {
    EdgeSlot(0, 1), EdgeSlot(0, 2), EdgeSlot(0, 3),
    EdgeSlot(1, 2), EdgeSlot(1, 3), EdgeSlot(2, 3)};

/// Six positive edge lengths of an abstract tetrahedron.
///
/// Construction only checks positivity; realizability is checked lazily by
/// the geometric operations, which throw DegenerateTetrahedron.
class TetrahedronLengths {
 public:
  explicit TetrahedronLengths(const std::array<double, 6>& lengths);

  static TetrahedronLengths from_points(const Point3& p0, const Point3& p1,
                                        const Point3& p2, const Point3& p3);

  double operator[](EdgeSlot e) const { return l_[e.index()]; }
  const std::array<double, 6>& values() const { return l_; }
  double max_length() const;

  /// Copy with one edge changed (used by finite-difference checks).
  TetrahedronLengths with(EdgeSlot e, double length) const;

 private:
  std::array<double, 6> l_;
};

/// Cayley–Menger determinant, equal to 288 V^2. Computed through the Gram
/// matrix of the three edge vectors at vertex 0, which it equals times 8.
double cayley_menger_determinant(const TetrahedronLengths& t);

/// True when the Cayley–Menger determinant clears 1e-12 * (max length)^6.
bool is_nondegenerate(const TetrahedronLengths& t);

double unsigned_volume(const TetrahedronLengths& t);

/// (1/6) det[b - a, c - a, d - a].
double oriented_volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d);

/// Interior dihedral angle along edge `e`, in (0, pi).
double dihedral_angle(const TetrahedronLengths& t, EdgeSlot e);

/// All six partial derivatives d(angle at `at`)/d(length of edge i), indexed by
/// EdgeSlot::index().
std::array<double, 6> dihedral_gradients(const TetrahedronLengths& t, EdgeSlot at);

double dihedral_gradient(const TetrahedronLengths& t, EdgeSlot at, EdgeSlot wrt);

/// Two tetrahedra ABCD and EABC glued along ABC. Returns d l_DE / d l_AB with
/// the remaining eight lengths held fixed:
///
///   -(l_AB / l_DE) * V_CEDA V_BCED / (V_ABCD V_EABC)
///
/// with oriented volumes taken from the given embedding. Throws
/// DegenerateTetrahedron when ABCD or EABC is flat and FlatConfiguration when
/// D and E coincide.
double skew_length_response(const Point3& a, const Point3& b, const Point3& c,
                            const Point3& d, const Point3& e);

}  // namespace lensinv
