#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/volume.hpp"

namespace simplexlab::volume {

namespace {

using DualRows = std::array<std::array<double, 4>, 4>;

std::uint64_t count_block_hits(const DualRows& dual, std::uint64_t seed, std::uint64_t block, std::uint64_t count) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::array<double, 4> z{normal(rng), normal(rng), normal(rng), normal(rng)};
    const double norm = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
    for (double& c : z) c /= norm;
    bool inside = true;
    for (const auto& row : dual) {
      if (row[0] * z[0] + row[1] * z[1] + row[2] * z[2] + row[3] * z[3] < 0) {
        inside = false;
        break;
      }
    }
    hits += inside ? 1 : 0;
  }
  return hits;
}

}  // namespace

McEstimate mc_volume(const simplex::SphericalSimplex& s, std::uint64_t n, std::uint64_t seed, unsigned workers) {
  if (n < 10000) throw DomainError("Monte Carlo needs at least 10^4 samples");
  const auto& dual_hp = s.dual();
  DualRows dual{};
  for (size_t i = 0; i < 4; ++i) {
    for (size_t k = 0; k < 4; ++k) dual[i][k] = dual_hp[i][k].to_double();
  }

  const std::uint64_t blocks = (n + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::uint64_t> block_hits(blocks, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      const std::uint64_t count = std::min(kMonteCarloBlock, n - b * kMonteCarloBlock);
      block_hits[b] = count_block_hits(dual, seed, b, count);
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();

  McEstimate out;
  out.samples = n;
  for (auto h : block_hits) out.hits += h;
  const double total = 2 * std::numbers::pi * std::numbers::pi;
  const double fraction = static_cast<double>(out.hits) / static_cast<double>(n);
  out.estimate = total * fraction;
  out.standard_error = total * std::sqrt(fraction * (1 - fraction) / static_cast<double>(n));
  return out;
}

}  // namespace simplexlab::volume
