#include "lensinv/tetgeom.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "lensinv/errors.hpp"

namespace lensinv {

namespace {

constexpr double kDegeneracyFloor = 1e-12;

int slot_of(int a, int b) { return EdgeSlot(a, b).index(); }

// Gram matrix of the edge vectors (j - i, k - i, l - i) seen from base vertex i,
// written in squared lengths, together with its derivative with respect to the
// squared length of every edge. Entries are linear in the squared lengths, so
// each derivative is a constant matrix.
struct LocalGram {
  Eigen::Matrix3d g;
  std::array<Eigen::Matrix3d, 6> dg;
};

LocalGram local_gram(const TetrahedronLengths& t, int base, const std::array<int, 3>& others) {
  const auto& l = t.values();
  auto sq = [&](int a, int b) { return l[slot_of(a, b)] * l[slot_of(a, b)]; };

  LocalGram out;
  for (auto& m : out.dg) m.setZero();
  for (int a = 0; a < 3; ++a) {
    const int va = others[a];
    out.g(a, a) = sq(base, va);
    out.dg[slot_of(base, va)](a, a) = 1.0;
    for (int b = a + 1; b < 3; ++b) {
      const int vb = others[b];
      const double value = 0.5 * (sq(base, va) + sq(base, vb) - sq(va, vb));
      out.g(a, b) = out.g(b, a) = value;
      for (auto [slot, coeff] : {std::pair{slot_of(base, va), 0.5},
                                 std::pair{slot_of(base, vb), 0.5},
                                 std::pair{slot_of(va, vb), -0.5}}) {
        out.dg[slot](a, b) += coeff;
        out.dg[slot](b, a) += coeff;
      }
    }
  }
  return out;
}

Eigen::Matrix3d cofactors(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      c(i, j) = m(i1, j1) * m(i2, j2) - m(i1, j2) * m(i2, j1);
    }
  }
  return c;
}

void require_nondegenerate(const TetrahedronLengths& t) {
  if (!is_nondegenerate(t))
    throw DegenerateTetrahedron("tetrahedron edge lengths are not realizable as a nondegenerate Euclidean tetrahedron");
}

// Angle at edge (i, j) between the faces ijk and ijl, as atan2(Y, N) with
// N = |u|^2 (v.w) - (u.v)(u.w) and Y = |u| sqrt(det Gram) = 6 V |u|.
struct AngleTerms {
  LocalGram gram;
  double n;
  double y;
  double det;
};

AngleTerms angle_terms(const TetrahedronLengths& t, EdgeSlot e) {
  const EdgeSlot opp = e.opposite();
  AngleTerms a{local_gram(t, e.u(), {e.v(), opp.u(), opp.v()}), 0.0, 0.0, 0.0};
  const auto& g = a.gram.g;
  a.n = g(0, 0) * g(1, 2) - g(0, 1) * g(0, 2);
  a.det = std::max(g.determinant(), 0.0);
  a.y = std::sqrt(g(0, 0) * a.det);
  return a;
}

}  // namespace

TetrahedronLengths::TetrahedronLengths(const std::array<double, 6>& lengths) : l_(lengths) {
  for (double x : l_) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw DegenerateTetrahedron("tetrahedron edge lengths must be positive and finite");
  }
}

TetrahedronLengths TetrahedronLengths::from_points(const Point3& p0, const Point3& p1,
                                                   const Point3& p2, const Point3& p3) {
  const std::array<const Point3*, 4> p = {&p0, &p1, &p2, &p3};
  std::array<double, 6> l{};
  for (EdgeSlot e : kAllSlots) l[e.index()] = (*p[e.v()] - *p[e.u()]).norm();
  return TetrahedronLengths(l);
}

double TetrahedronLengths::max_length() const { return *std::max_element(l_.begin(), l_.end()); }

TetrahedronLengths TetrahedronLengths::with(EdgeSlot e, double length) const {
  auto copy = l_;
  copy[e.index()] = length;
  return TetrahedronLengths(copy);
}

double cayley_menger_determinant(const TetrahedronLengths& t) {
  return 8.0 * local_gram(t, 0, {1, 2, 3}).g.determinant();
}

bool is_nondegenerate(const TetrahedronLengths& t) {
  const double scale = std::pow(t.max_length(), 6);
  return cayley_menger_determinant(t) > kDegeneracyFloor * scale;
}

double unsigned_volume(const TetrahedronLengths& t) {
  require_nondegenerate(t);
  return std::sqrt(cayley_menger_determinant(t) / 288.0);
}

double oriented_volume(const Point3& a, const Point3& b, const Point3& c, const Point3& d) {
  return (b - a).dot((c - a).cross(d - a)) / 6.0;
}

double dihedral_angle(const TetrahedronLengths& t, EdgeSlot e) {
  require_nondegenerate(t);
  const AngleTerms a = angle_terms(t, e);
  return std::atan2(a.y, a.n);
}

std::array<double, 6> dihedral_gradients(const TetrahedronLengths& t, EdgeSlot at) {
  require_nondegenerate(t);
  const AngleTerms a = angle_terms(t, at);
  const auto& g = a.gram.g;
  const Eigen::Matrix3d cof = cofactors(g);
  const double denom = a.n * a.n + a.y * a.y;

  std::array<double, 6> grad{};
  for (int s = 0; s < 6; ++s) {
    const Eigen::Matrix3d& dg = a.gram.dg[s];
    const double d_det = cof.cwiseProduct(dg).sum();
    const double d_n = dg(0, 0) * g(1, 2) + g(0, 0) * dg(1, 2) - dg(0, 1) * g(0, 2) - g(0, 1) * dg(0, 2);
    const double d_y = (dg(0, 0) * a.det + g(0, 0) * d_det) / (2.0 * a.y);
    const double d_theta_d_sq = (a.n * d_y - a.y * d_n) / denom;
    grad[s] = 2.0 * t.values()[s] * d_theta_d_sq;
  }
  return grad;
}

double dihedral_gradient(const TetrahedronLengths& t, EdgeSlot at, EdgeSlot wrt) {
  return dihedral_gradients(t, at)[wrt.index()];
}

double skew_length_response(const Point3& a, const Point3& b, const Point3& c,
                            const Point3& d, const Point3& e) {
  require_nondegenerate(TetrahedronLengths::from_points(a, b, c, d));
  require_nondegenerate(TetrahedronLengths::from_points(e, a, b, c));

  const double l_ab = (b - a).norm();
  const double l_de = (e - d).norm();
  const double scale = std::max({l_ab, (c - a).norm(), (d - a).norm(), (e - a).norm()});
  if (l_de <= kDegeneracyFloor * scale)
    throw FlatConfiguration("apexes D and E coincide");

  const double v_ceda = oriented_volume(c, e, d, a);
  const double v_bced = oriented_volume(b, c, e, d);
  const double v_abcd = oriented_volume(a, b, c, d);
  const double v_eabc = oriented_volume(e, a, b, c);
  return -(l_ab / l_de) * (v_ceda * v_bced) / (v_abcd * v_eabc);
}

}  // namespace lensinv
