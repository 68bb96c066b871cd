#include "simplexlab/orbit.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "simplexlab/errors.hpp"

namespace simplexlab::orbit {

using simplex::dot;
using simplex::precision_of;

Vec4 Isometry::apply(const Vec4& v) const {
  return {dot(matrix[0], v), dot(matrix[1], v), dot(matrix[2], v), dot(matrix[3], v)};
}

HiReal Isometry::orthogonality_defect() const {
  HiReal worst(precision_of(matrix[0]));
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) {
      HiReal s = matrix[0][i] * matrix[0][j];
      for (size_t k = 1; k < 4; ++k) s += matrix[k][i] * matrix[k][j];
      if (i == j) s -= HiReal(1L, s.precision());
      worst = max(worst, abs(s));
    }
  }
  return worst;
}

int Isometry::orientation() const {
  Mat4 a = matrix;
  int sign = 1;
  for (size_t col = 0; col < 4; ++col) {
    size_t best = col;
    for (size_t r = col + 1; r < 4; ++r) {
      if (abs(a[r][col]) > abs(a[best][col])) best = r;
    }
    if (a[best][col].is_zero()) return 0;
    if (best != col) {
      std::swap(a[best], a[col]);
      sign = -sign;
    }
    if (a[col][col].sign() < 0) sign = -sign;
    for (size_t r = col + 1; r < 4; ++r) {
      const HiReal factor = a[r][col] / a[col][col];
      for (size_t j = col; j < 4; ++j) a[r][j] -= factor * a[col][j];
    }
  }
  return sign;
}

std::pair<SphericalSimplex, Isometry> reflect_across_facet(const SphericalSimplex& s, int facet) {
  if (facet < 0 || facet > 3) throw DomainError("facet index must be 0..3, got " + std::to_string(facet));
  const auto f = static_cast<size_t>(facet);
  // The dual row is orthogonal to the three vertices spanning the facet.
  const Vec4 n = simplex::normalized(s.dual()[f]);
  const Precision p = precision_of(n);
  Isometry iso;
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < 4; ++j) iso.matrix[i][j] = HiReal(i == j ? 1L : 0L, p) - 2 * n[i] * n[j];
  }
  Mat4 vertices = s.vertices();
  vertices[f] = iso.apply(vertices[f]);
  return {SphericalSimplex(std::move(vertices)), std::move(iso)};
}

namespace {

// Rounded coordinates at `quantum` digits, or nullopt when a coordinate lies
// within 10^-6 (in units of the last kept digit) of a rounding boundary.
std::optional<std::string> try_vertex_key(const Vec4& v, int quantum) {
  const Precision p = precision_of(v);
  const HiReal scale = HiReal::pow10(quantum, p);
  const HiReal band = HiReal::pow10(-6, p);
  const HiReal half(Rational(1, 2), p);
  std::string out = "(";
  for (size_t i = 0; i < 4; ++i) {
    const HiReal scaled = v[i] * scale;
    HiReal rounded = floor(scaled);
    const HiReal frac = scaled - rounded;
    if (abs(frac - half) < band) return std::nullopt;
    if (frac > half) rounded = rounded + 1;
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), rounded.raw(), MPFR_RNDN);
    out += z.get_str();
    out += i < 3 ? "," : ")";
  }
  return out;
}

void check_quantum(int quantum, Precision p) {
  if (quantum < 1 || quantum > p.digits() - 10) {
    throw DomainError("key quantum " + std::to_string(quantum) + " must lie in [1, precision - 10]");
  }
}

}  // namespace

std::string vertex_key(const Vec4& v, int quantum) {
  const Precision p = precision_of(v);
  check_quantum(quantum, p);
  for (int q = quantum; q <= p.digits() - 10; q += 2) {
    if (auto key = try_vertex_key(v, q)) return "q" + std::to_string(q) + *key;
  }
  throw KeyUnstable("vertex key could not be stabilized below " + std::to_string(p.digits() - 10) + " digits");
}

std::string canonical_key(const SphericalSimplex& s, int quantum) {
  const Precision p = s.precision();
  check_quantum(quantum, p);
  for (int q = quantum; q <= p.digits() - 10; q += 2) {
    std::array<std::string, 4> parts;
    bool stable = true;
    for (size_t i = 0; i < 4 && stable; ++i) {
      auto key = try_vertex_key(s.vertices()[i], q);
      if (key) {
        parts[i] = std::move(*key);
      } else {
        stable = false;
      }
    }
    if (!stable) continue;
    std::sort(parts.begin(), parts.end());
    std::string out = "q" + std::to_string(q) + ":";
    for (const auto& part : parts) out += part;
    return out;
  }
  throw KeyUnstable("simplex key could not be stabilized below " + std::to_string(p.digits() - 10) + " digits");
}

namespace {

std::vector<MultiplicitySample> sample_multiplicities(const std::vector<Tile>& tiles, const OrbitOptions& options,
                                                      Precision p) {
  std::vector<MultiplicitySample> out;
  std::mt19937_64 rng(options.sample_seed);
  std::normal_distribution<double> normal;
  const HiReal margin(options.boundary_margin, p);
  const long max_attempts = 1000L * std::max(options.samples, 1);
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < options.samples; ++attempt) {
    std::array<double, 4> z{normal(rng), normal(rng), normal(rng), normal(rng)};
    const Vec4 point = simplex::normalized({HiReal(z[0], p), HiReal(z[1], p), HiReal(z[2], p), HiReal(z[3], p)});
    int count = 0;
    bool in_w = true;
    for (const auto& tile : tiles) {
      const auto c = tile.simplex.barycentric(point);
      if (std::any_of(c.begin(), c.end(), [&](const HiReal& ci) { return abs(ci) <= margin; })) {
        in_w = false;
        break;
      }
      if (std::all_of(c.begin(), c.end(), [](const HiReal& ci) { return ci.sign() > 0; })) ++count;
    }
    if (!in_w) continue;
    out.push_back({{point[0].to_double(), point[1].to_double(), point[2].to_double(), point[3].to_double()}, count});
  }
  return out;
}

}  // namespace

OrbitReport explore(const Rational& seed_phi_over_pi, int max_depth, size_t max_tiles, const OrbitOptions& options) {
  if (max_depth < 0) throw DomainError("max depth must be non-negative");
  if (max_tiles < 1) throw DomainError("max tiles must be positive");
  const Precision p(options.precision_digits);
  check_quantum(options.quantum, p);

  const HiReal phi = HiReal::pi(p) * HiReal(seed_phi_over_pi, p);
  const SphericalSimplex seed = simplex::make_vertices(simplex::dihedral_to_edge(phi));

  OrbitReport report;
  report.seed_phi_over_pi = seed_phi_over_pi;
  report.max_depth = max_depth;
  report.max_tiles = max_tiles;
  report.options = options;

  std::unordered_set<std::string> seen{canonical_key(seed, options.quantum)};
  report.tiles.push_back(Tile{seed, 0, std::nullopt, std::nullopt});
  report.tiles_per_depth.push_back(1);

  std::vector<size_t> frontier{0};
  bool capped = false;
  for (int depth = 0;; ++depth) {
    if (depth == max_depth) {
      report.stop_reason = "max_depth";
      break;
    }
    std::vector<size_t> next;
    for (const size_t idx : frontier) {
      for (int facet = 0; facet < 4 && !capped; ++facet) {
        auto [image, iso] = reflect_across_facet(report.tiles[idx].simplex, facet);
        std::string key;
        try {
          key = canonical_key(image, options.quantum);
        } catch (const KeyUnstable& e) {
          report.warnings.push_back("tile " + std::to_string(idx) + " facet " + std::to_string(facet) + ": " +
                                    e.what());
          continue;
        }
        if (!seen.insert(std::move(key)).second) continue;
        if (report.tiles.size() >= max_tiles) {
          capped = true;
          break;
        }
        next.push_back(report.tiles.size());
        report.tiles.push_back(Tile{std::move(image), depth + 1, facet, idx});
      }
      if (capped) break;
    }
    report.tiles_per_depth.push_back(next.size());
    if (capped) {
      report.stop_reason = "max_tiles";
      break;
    }
    if (next.empty()) {
      report.closed = true;
      report.stop_reason = "closed";
      break;
    }
    frontier = std::move(next);
  }

  std::set<std::string> vertices;
  for (const auto& tile : report.tiles) {
    for (const auto& v : tile.simplex.vertices()) {
      try {
        vertices.insert(vertex_key(v, options.quantum));
      } catch (const KeyUnstable& e) {
        report.warnings.push_back(std::string("vertex: ") + e.what());
      }
    }
  }
  report.distinct_tiles = report.tiles.size();
  report.distinct_vertices = vertices.size();
  report.multiplicity_samples = sample_multiplicities(report.tiles, options, p);
  return report;
}

}  // namespace simplexlab::orbit
