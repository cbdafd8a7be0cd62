#pragma once

// Small patches around one edge, each with the closed-form value of one
// entry of d omega / d l written in coordinate volumes.

#include <string>
#include <vector>

#include "oracles.hpp"

namespace lensinv::testing {

enum Label { A, B, C, D, E, F };

inline double vol(const std::vector<Point3>& p, int a, int b, int c, int d) {
  return oriented_volume(p[a], p[b], p[c], p[d]);
}

inline double len(const std::vector<Point3>& p, int a, int b) { return (p[b] - p[a]).norm(); }

// Off-axis points around a slightly tilted edge DE.
inline const std::vector<Point3> kStar3 = {{1.0, 0.0, 0.1},    {-0.5, 0.9, -0.2}, {-0.4, -0.8, 0.05},
                                           {0.05, -0.03, -0.8}, {-0.02, 0.04, 0.9}};
inline const std::vector<Point3> kStar4 = {{1.0, 0.1, 0.1},     {0.1, 1.1, -0.2},  {-0.9, 0.2, 0.05},
                                           {0.05, -0.03, -0.8}, {-0.02, 0.04, 0.9}, {0.2, -1.0, 0.1}};
// ABCD and EABC share the face ABC.
inline const std::vector<Point3> kFacePair = {
    {0, 0, 0}, {1.2, 0.1, 0}, {0.3, 1.0, 0.1}, {0.5, 0.4, 0.9}, {0.4, 0.3, -0.7}};
// ABED plus a neighbour that contains DE but not AB.
inline const std::vector<Point3> kSkewPair = {{0.1, 0.0, 0.0}, {1.1, 0.2, 0.1}, {0, 0, 0},
                                              {0.3, 0.9, 0.2}, {0.4, 0.1, 1.0}, {0.9, 1.0, 0.8}};

struct CaseFixture {
  std::string name;
  Patch patch;
  int row;  ///< omega edge
  int col;  ///< length edge
  double expected;
};

inline std::vector<CaseFixture> case_fixtures() {
  std::vector<CaseFixture> out;
  {
    const auto& p = kSkewPair;
    Patch patch = make_patch(p, {{A, B, E, D}, {B, E, D, F}});
    const int row = patch.edge(D, E), col = patch.edge(A, B);
    out.push_back({"skew edges in one tetrahedron", std::move(patch), row, col,
                   -len(p, A, B) * len(p, D, E) / 6.0 / vol(p, A, B, E, D)});
  }
  {
    const auto& p = kFacePair;
    Patch patch = make_patch(p, {{A, B, C, D}, {E, A, B, C}});
    const int row = patch.edge(A, C), col = patch.edge(A, B);
    out.push_back({"edges on a common face of two tetrahedra", std::move(patch), row, col,
                   len(p, A, B) * len(p, A, C) / 6.0 * vol(p, B, C, E, D) /
                       (vol(p, A, B, C, D) * vol(p, E, A, B, C))});
  }
  {
    const auto& p = kStar3;
    Patch patch = make_patch(p, {{A, B, E, D}, {B, C, E, D}, {C, A, E, D}});
    const int de = patch.edge(D, E);
    const double l = len(p, D, E);
    out.push_back({"edge surrounded by three tetrahedra", std::move(patch), de, de,
                   -l * l / 6.0 * vol(p, A, B, C, D) * vol(p, E, A, B, C) /
                       (vol(p, A, B, E, D) * vol(p, B, C, E, D) * vol(p, C, A, E, D))});
  }
  {
    const auto& p = kStar4;
    Patch patch = make_patch(p, {{A, B, E, D}, {B, C, E, D}, {C, F, E, D}, {F, A, E, D}});
    const int de = patch.edge(D, E);
    const double l = len(p, D, E);
    out.push_back(
        {"edge surrounded by four tetrahedra", std::move(patch), de, de,
         -l * l / 6.0 *
             (vol(p, A, B, C, D) * vol(p, E, A, B, C) / (vol(p, A, B, E, D) * vol(p, B, C, E, D) * vol(p, C, A, E, D)) +
              vol(p, A, C, F, D) * vol(p, E, A, C, F) /
                  (vol(p, A, C, E, D) * vol(p, C, F, E, D) * vol(p, F, A, E, D)))});
  }
  return out;
}

}  // namespace lensinv::testing
