#pragma once

#include <array>
#include <optional>

#include "simplexlab/hireal.hpp"

// The one-parameter family of regular spherical 3-simplices sigma(.) in S^3:
// edge length x, face plane angle alpha, dihedral angle phi.
namespace simplexlab::simplex {

using Vec4 = std::array<HiReal, 4>;
using Mat4 = std::array<Vec4, 4>;

HiReal dot(const Vec4& a, const Vec4& b);
Vec4 normalized(const Vec4& v);
Precision precision_of(const Vec4& v);

// x_* = arccos(-1/3), the edge length at which sigma degenerates to a hemisphere.
HiReal max_edge(Precision p);
// arctan(2 sqrt 2), the Euclidean regular-tetrahedron dihedral angle (x -> 0).
HiReal min_dihedral(Precision p);

// alpha = 2 arcsin(1 / (2 cos(x/2))). Domain 0 < x < x_*.
HiReal edge_to_face_angle(const HiReal& x);
// phi = 2 arcsin(1 / (2 cos(alpha/2))). Domain pi/3 < alpha < 2pi/3.
HiReal face_angle_to_dihedral(const HiReal& alpha);
// x = 2 arccos(sin(phi/2) / sqrt(4 sin^2(phi/2) - 1)). Domain arctan(2 sqrt 2) < phi < pi.
HiReal dihedral_to_edge(const HiReal& phi);

struct SimplexParams {
  HiReal x;
  HiReal alpha;
  HiReal phi;

  static SimplexParams from_edge(const HiReal& x);
  static SimplexParams from_dihedral(const HiReal& phi);
};

// Four unit vectors in R^4 together with their Gram matrix. When the vertices
// span R^4 the dual basis (rows d_i with d_i . v_j = delta_ij) is cached, which
// turns membership into four dot products.
class SphericalSimplex {
 public:
  explicit SphericalSimplex(Mat4 vertices);

  const Mat4& vertices() const { return vertices_; }
  const Vec4& vertex(int i) const { return vertices_[static_cast<size_t>(i)]; }
  const Mat4& gram() const { return gram_; }
  int gram_rank() const { return rank_; }
  bool nondegenerate() const { return dual_.has_value(); }
  Precision precision() const { return precision_; }

  // Throws SingularSimplex when the Gram rank is below 4.
  const Mat4& dual() const;
  // Coefficients c with p = sum c_i v_i.
  std::array<HiReal, 4> barycentric(const Vec4& p) const;

 private:
  Mat4 vertices_;
  Mat4 gram_;
  Precision precision_;
  int rank_ = 0;
  std::optional<Mat4> dual_;
};

// Rank of a symmetric positive semidefinite matrix by pivoted Cholesky with
// pivot threshold 10^(-digits/2).
int psd_rank(const Mat4& m);

// Canonical regular simplex with edge x: the rows of the lower-triangular
// Cholesky factor of (1 - cos x) I + cos x J. Domain 0 < x <= x_*; x_* itself
// yields the rank-3 hemisphere configuration.
SphericalSimplex make_vertices(const HiReal& x);

// True iff p = sum c_i v_i with every c_i >= -10^(-digits/2).
bool contains(const SphericalSimplex& s, const Vec4& p);

}  // namespace simplexlab::simplex
