#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplexlab/hireal.hpp"
#include "simplexlab/simplex.hpp"

// Facet-reflection orbits of a seed simplex on S^3: generations T_0, T_1, ...
// where T_{n+1} holds the not-yet-seen mirror images of T_n across their
// facets. Tiles are deduplicated by quantized canonical keys.
namespace simplexlab::orbit {

using simplex::Mat4;
using simplex::SphericalSimplex;
using simplex::Vec4;

struct Isometry {
  Mat4 matrix;

  Vec4 apply(const Vec4& v) const;
  // max |M^T M - I| entry.
  HiReal orthogonality_defect() const;
  // Sign of the determinant.
  int orientation() const;
};

struct Tile {
  SphericalSimplex simplex;
  int depth = 0;
  // Facet of the parent this tile was reflected across; none for the seed.
  std::optional<int> parent_facet;
  std::optional<size_t> parent;
};

struct MultiplicitySample {
  std::array<double, 4> point;
  int count = 0;
};

struct OrbitOptions {
  int precision_digits = 60;
  int quantum = 40;
  std::uint64_t sample_seed = 1;
  int samples = 100;
  // A sample belongs to W only if every barycentric coordinate against every
  // generated tile is at least this far from 0.
  double boundary_margin = 1e-8;
};

struct OrbitReport {
  Rational seed_phi_over_pi;
  int max_depth = 0;
  size_t max_tiles = 0;
  OrbitOptions options;
  // New tiles per generation; entry 0 is the seed.
  std::vector<size_t> tiles_per_depth;
  size_t distinct_tiles = 0;
  size_t distinct_vertices = 0;
  bool closed = false;
  // "closed", "max_depth" or "max_tiles".
  std::string stop_reason;
  std::vector<MultiplicitySample> multiplicity_samples;
  // Images skipped because their key could not be stabilized.
  std::vector<std::string> warnings;
  std::vector<Tile> tiles;
};

// Mirror image across the central hyperplane through the three vertices other
// than `facet` (facet i is the one opposite vertex i).
std::pair<SphericalSimplex, Isometry> reflect_across_facet(const SphericalSimplex& s, int facet);

// Key of one point, rounded to `quantum` decimal digits.
std::string vertex_key(const Vec4& v, int quantum);

// Key of the vertex set: rounded vertices sorted lexicographically. Equal
// point sets give equal keys. Coordinates close to a rounding boundary
// trigger refinement at quantum + 2; KeyUnstable once refinement would exceed
// precision - 10 digits.
std::string canonical_key(const SphericalSimplex& s, int quantum);

// Breadth-first generation from the regular simplex with dihedral angle
// seed_phi_over_pi * pi. Hitting a cap is a normal outcome (closed = false).
OrbitReport explore(const Rational& seed_phi_over_pi, int max_depth, size_t max_tiles,
                    const OrbitOptions& options = {});

}  // namespace simplexlab::orbit
