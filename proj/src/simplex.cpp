#include "simplexlab/simplex.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "simplexlab/errors.hpp"

namespace simplexlab::simplex {

HiReal dot(const Vec4& a, const Vec4& b) {
  HiReal s = a[0] * b[0];
  for (size_t i = 1; i < 4; ++i) s += a[i] * b[i];
  return s;
}

Vec4 normalized(const Vec4& v) {
  const HiReal n = sqrt(dot(v, v));
  if (n.is_zero()) throw DomainError("cannot normalize the zero vector");
  return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

Precision precision_of(const Vec4& v) {
  return std::min({v[0].precision(), v[1].precision(), v[2].precision(), v[3].precision()});
}

HiReal max_edge(Precision p) { return acos(HiReal(-1L, p) / 3); }

HiReal min_dihedral(Precision p) { return atan(2 * sqrt(HiReal(2L, p))); }

namespace {

void require_open(const HiReal& v, const HiReal& lo, const HiReal& hi, const char* what, const char* range) {
  if (!(lo < v && v < hi)) {
    throw DomainError(std::string(what) + " = " + v.to_scientific(20) + " outside " + range);
  }
}

}  // namespace

HiReal edge_to_face_angle(const HiReal& x) {
  const Precision p = x.precision();
  require_open(x, HiReal(p), max_edge(p), "edge length", "(0, arccos(-1/3))");
  return 2 * asin(1 / (2 * cos(x / 2)));
}

HiReal face_angle_to_dihedral(const HiReal& alpha) {
  const Precision p = alpha.precision();
  const HiReal pi = HiReal::pi(p);
  require_open(alpha, pi / 3, 2 * pi / 3, "face angle", "(pi/3, 2pi/3)");
  return 2 * asin(1 / (2 * cos(alpha / 2)));
}

HiReal dihedral_to_edge(const HiReal& phi) {
  const Precision p = phi.precision();
  require_open(phi, min_dihedral(p), HiReal::pi(p), "dihedral angle", "(arctan(2 sqrt 2), pi)");
  const HiReal s = sin(phi / 2);
  return 2 * arccos_hp(s / sqrt(4 * s * s - 1));
}

SimplexParams SimplexParams::from_edge(const HiReal& x) {
  HiReal alpha = edge_to_face_angle(x);
  HiReal phi = face_angle_to_dihedral(alpha);
  return {x, std::move(alpha), std::move(phi)};
}

SimplexParams SimplexParams::from_dihedral(const HiReal& phi) {
  HiReal x = dihedral_to_edge(phi);
  HiReal alpha = edge_to_face_angle(x);
  return {std::move(x), std::move(alpha), phi};
}

int psd_rank(const Mat4& m) {
  const Precision p = std::min({precision_of(m[0]), precision_of(m[1]), precision_of(m[2]), precision_of(m[3])});
  const HiReal threshold = HiReal::pow10(-p.digits() / 2, p);
  Mat4 a = m;
  for (size_t k = 0; k < 4; ++k) {
    size_t best = k;
    for (size_t j = k + 1; j < 4; ++j) {
      if (a[j][j] > a[best][best]) best = j;
    }
    std::swap(a[k], a[best]);
    for (auto& row : a) std::swap(row[k], row[best]);
    if (a[k][k] <= threshold) return static_cast<int>(k);
    const HiReal pivot = sqrt(a[k][k]);
    for (size_t i = k + 1; i < 4; ++i) a[i][k] /= pivot;
    for (size_t i = k + 1; i < 4; ++i) {
      for (size_t j = k + 1; j < 4; ++j) a[i][j] -= a[i][k] * a[j][k];
    }
  }
  return 4;
}

namespace {

// Inverse by Gauss-Jordan elimination with partial pivoting; nullopt if a
// pivot falls below the threshold.
std::optional<Mat4> invert(const Mat4& m, const HiReal& threshold) {
  const Precision p = threshold.precision();
  Mat4 a = m;
  Mat4 inv;
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) inv[i][j] = HiReal(i == j ? 1L : 0L, p);
  }
  for (size_t col = 0; col < 4; ++col) {
    size_t best = col;
    for (size_t r = col + 1; r < 4; ++r) {
      if (abs(a[r][col]) > abs(a[best][col])) best = r;
    }
    if (abs(a[best][col]) <= threshold) return std::nullopt;
    std::swap(a[col], a[best]);
    std::swap(inv[col], inv[best]);
    const HiReal pivot = a[col][col];
    for (size_t j = 0; j < 4; ++j) {
      a[col][j] /= pivot;
      inv[col][j] /= pivot;
    }
    for (size_t r = 0; r < 4; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const HiReal factor = a[r][col];
      for (size_t j = 0; j < 4; ++j) {
        a[r][j] -= factor * a[col][j];
        inv[r][j] -= factor * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

SphericalSimplex::SphericalSimplex(Mat4 vertices)
    : vertices_(std::move(vertices)),
      precision_(std::min({precision_of(vertices_[0]), precision_of(vertices_[1]), precision_of(vertices_[2]),
                           precision_of(vertices_[3])})) {
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = i; j < 4; ++j) {
      gram_[i][j] = dot(vertices_[i], vertices_[j]);
      if (j != i) gram_[j][i] = gram_[i][j];
    }
  }
  rank_ = psd_rank(gram_);
  if (rank_ == 4) {
    const HiReal threshold = HiReal::pow10(-precision_.digits() / 2, precision_);
    if (auto inv = invert(vertices_, threshold)) {
      Mat4 d;
      for (size_t i = 0; i < 4; ++i) {
        for (size_t k = 0; k < 4; ++k) d[i][k] = (*inv)[k][i];
      }
      dual_ = std::move(d);
    } else {
      rank_ = 3;
    }
  }
}

const Mat4& SphericalSimplex::dual() const {
  if (!dual_) {
    throw SingularSimplex("simplex vertices span only a rank-" + std::to_string(rank_) + " subspace");
  }
  return *dual_;
}

std::array<HiReal, 4> SphericalSimplex::barycentric(const Vec4& p) const {
  const Mat4& d = dual();
  return {dot(d[0], p), dot(d[1], p), dot(d[2], p), dot(d[3], p)};
}

SphericalSimplex make_vertices(const HiReal& x) {
  const Precision p = x.precision();
  const HiReal band = HiReal::pow10(-p.digits() / 2, p);
  if (!(x > 0) || x > max_edge(p) + band) {
    throw DomainError("edge length " + x.to_scientific(20) + " outside (0, arccos(-1/3)]");
  }
  const HiReal noise = HiReal::pow10(-(p.digits() - 10), p);
  const HiReal c = cos(x);
  Mat4 gram;
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) gram[i][j] = i == j ? HiReal(1L, p) : c;
  }
  // Lower-triangular Cholesky factor; rows are the vertices.
  Mat4 l;
  for (auto& row : l) row.fill(HiReal(p));
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      HiReal s = gram[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (abs(s) <= noise) {
          s = HiReal(p);
        } else if (s < 0) {
          throw DomainError("Gram matrix not positive semidefinite: cos x < -1/3");
        }
        l[i][i] = sqrt(s);
      } else if (l[j][j].is_zero()) {
        l[i][j] = HiReal(p);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return SphericalSimplex(std::move(l));
}

bool contains(const SphericalSimplex& s, const Vec4& p) {
  const Precision prec = s.precision();
  const HiReal eps = HiReal::pow10(-prec.digits() / 2, prec);
  const auto c = s.barycentric(p);
  return std::all_of(c.begin(), c.end(), [&](const HiReal& ci) { return ci >= -eps; });
}

}  // namespace simplexlab::simplex
