#pragma once

// Test-only oracles. Everything here works from coordinates and never calls
// the length-based routines it is used to check.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lensinv/complex.hpp"
#include "lensinv/tetgeom.hpp"

namespace lensinv::testing {

/// Interior dihedral angle at edge (i, j) of the tetrahedron p, from face normals.
inline double dihedral_from_normals(const std::array<Point3, 4>& p, int i, int j) {
  int k = -1, l = -1;
  for (int v = 0; v < 4; ++v) {
    if (v == i || v == j) continue;
    (k < 0 ? k : l) = v;
  }
  const Point3 axis = (p[j] - p[i]).normalized();
  Point3 x = p[k] - p[i];
  Point3 y = p[l] - p[i];
  x -= x.dot(axis) * axis;
  y -= y.dot(axis) * axis;
  return std::acos(std::clamp(x.normalized().dot(y.normalized()), -1.0, 1.0));
}

/// Bordered 5 x 5 Cayley–Menger determinant.
inline double bordered_cayley_menger(const TetrahedronLengths& t) {
  Eigen::Matrix<double, 5, 5> m = Eigen::Matrix<double, 5, 5>::Zero();
  for (int i = 1; i < 5; ++i) m(0, i) = m(i, 0) = 1.0;
  for (EdgeSlot e : kAllSlots) {
    const double sq = t[e] * t[e];
    m(e.u() + 1, e.v() + 1) = m(e.v() + 1, e.u() + 1) = sq;
  }
  return m.determinant();
}

/// Central finite-difference derivative.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::array<Point3, 4> random_tetrahedron(std::mt19937_64& rng, double min_volume = 0.02) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::array<Point3, 4> p;
    for (auto& x : p) x = Point3(u(rng), u(rng), u(rng));
    if (std::abs(oriented_volume(p[0], p[1], p[2], p[3])) > min_volume) return p;
  }
}

/// Random realizable lengths in [0.5, 2], away from flatness.
inline TetrahedronLengths random_lengths(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (;;) {
    std::array<double, 6> l;
    for (double& x : l) x = u(rng);
    const TetrahedronLengths t(l);
    if (bordered_cayley_menger(t) > 0.05 * std::pow(t.max_length(), 6)) return t;
  }
}

/// Point at distances (da, db, dc) from a, b, c, on the side of plane abc
/// given by the sign of oriented_volume(a, b, c, x).
inline Point3 trilaterate(const Point3& a, const Point3& b, const Point3& c, double da, double db, double dc,
                          double side) {
  const Point3 ex = (b - a).normalized();
  const double i = ex.dot(c - a);
  const Point3 ey = ((c - a) - i * ex).normalized();
  const Point3 ez = ex.cross(ey);
  const double d = (b - a).norm();
  const double j = ey.dot(c - a);
  const double x = (da * da - db * db + d * d) / (2.0 * d);
  const double y = (da * da - dc * dc + i * i + j * j) / (2.0 * j) - (i / j) * x;
  const double z = std::sqrt(std::max(da * da - x * x - y * y, 0.0));
  return a + x * ex + y * ey + (side > 0 ? z : -z) * ez;
}

/// A simplicial patch built from points: every vertex is its own class, edges
/// and faces are keyed by their vertex sets, lengths are distances and signs
/// are the signs of the oriented volumes in the listed vertex order.
struct Patch {
  PreComplex complex;
  MetricData metric;
  std::map<std::pair<int, int>, int> edge_of;

  int edge(int u, int v) const { return edge_of.at({std::min(u, v), std::max(u, v)}); }
};

inline Patch make_patch(const std::vector<Point3>& points, const std::vector<std::array<int, 4>>& tets) {
  std::map<std::pair<int, int>, int> edge_of;
  std::map<std::array<int, 3>, int> face_of;
  std::vector<std::string> names;
  std::vector<Tetrahedron> out;
  std::vector<int> signs;
  for (const auto& t : tets) {
    Tetrahedron tet{};
    tet.vertices = t;
    for (EdgeSlot e : kAllSlots) {
      const std::pair<int, int> key{std::min(t[e.u()], t[e.v()]), std::max(t[e.u()], t[e.v()])};
      auto [it, inserted] = edge_of.try_emplace(key, static_cast<int>(names.size()));
      if (inserted) names.push_back(std::to_string(key.first) + "-" + std::to_string(key.second));
      tet.edges[e.index()] = it->second;
    }
    for (int m = 0; m < 4; ++m) {
      std::array<int, 3> key{};
      int n = 0;
      for (int v = 0; v < 4; ++v)
        if (v != m) key[n++] = t[v];
      std::sort(key.begin(), key.end());
      tet.faces[m] = face_of.try_emplace(key, static_cast<int>(face_of.size())).first->second;
    }
    out.push_back(tet);
    signs.push_back(oriented_volume(points[t[0]], points[t[1]], points[t[2]], points[t[3]]) > 0 ? 1 : -1);
  }
  Eigen::VectorXd lengths(static_cast<Eigen::Index>(names.size()));
  for (const auto& [key, e] : edge_of) lengths[e] = (points[key.second] - points[key.first]).norm();
  return Patch{PreComplex(static_cast<int>(points.size()), std::move(names), static_cast<int>(face_of.size()),
                          std::move(out)),
               MetricData{lengths, signs}, edge_of};
}

}  // namespace lensinv::testing
