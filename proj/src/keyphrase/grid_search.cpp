#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "coursekit/error.hpp"
#include "coursekit/keyphrase.hpp"

namespace coursekit {

namespace {

// Mean rating of one chunk's top-k. Selected ratings are summed in sorted
// order so equal selections give bit-identical objectives.
double chunk_top_k_rating(const TuningChunk& chunk, const WeightVector& w, std::size_t k,
                          std::vector<std::size_t>& order, std::vector<double>& scores,
                          std::vector<double>& picked) {
  const auto& cands = chunk.candidates;
  scores.resize(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) scores[i] = combined_score(cands[i].factors, w);
  order.resize(cands.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(k, cands.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      if (cands[a].factors.alpha != cands[b].factors.alpha) {
                        return cands[a].factors.alpha > cands[b].factors.alpha;
                      }
                      if (cands[a].text != cands[b].text) return cands[a].text < cands[b].text;
                      return a < b;
                    });
  picked.clear();
  for (std::size_t i = 0; i < take; ++i) picked.push_back(cands[order[i]].rating);
  std::sort(picked.begin(), picked.end());
  double sum = 0.0;
  for (double r : picked) sum += r;
  return take == 0 ? 0.0 : sum / static_cast<double>(take);
}

}  // namespace

double tuning_objective(std::span<const TuningChunk> chunks, const WeightVector& w, int k) {
  if (chunks.empty()) throw ArgumentError("no annotated chunks");
  if (k < 1) throw ArgumentError("k must be >= 1");
  std::vector<std::size_t> order;
  std::vector<double> scores;
  std::vector<double> picked;
  double total = 0.0;
  for (const auto& c : chunks) {
    total += chunk_top_k_rating(c, w, static_cast<std::size_t>(k), order, scores, picked);
  }
  return total / static_cast<double>(chunks.size());
}

std::vector<WeightVector> simplex_lattice(double step) {
  if (!(step > 0.0) || step > 1.0) throw ArgumentError("grid step must lie in (0, 1]");
  const long long n = std::llround(1.0 / step);
  if (n < 1 || std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) {
    throw ArgumentError("grid step must divide 1");
  }
  const double denom = static_cast<double>(n);
  std::vector<WeightVector> out;
  for (long long a = 0; a <= n; ++a) {
    for (long long b = 0; a + b <= n; ++b) {
      for (long long c = 0; a + b + c <= n; ++c) {
        for (long long d = 0; a + b + c + d <= n; ++d) {
          const long long e = n - a - b - c - d;
          out.emplace_back(std::array<double, kFactorCount>{
              static_cast<double>(a) / denom, static_cast<double>(b) / denom,
              static_cast<double>(c) / denom, static_cast<double>(d) / denom,
              static_cast<double>(e) / denom});
        }
      }
    }
  }
  return out;
}

GridSearchResult grid_search_weights(std::span<const TuningChunk> chunks, int k, double step,
                                     unsigned jobs) {
  if (chunks.empty()) throw ArgumentError("grid search needs at least one annotated chunk");
  if (k < 1) throw ArgumentError("k must be >= 1");
  for (const auto& c : chunks) {
    if (c.candidates.size() < static_cast<std::size_t>(k)) {
      throw ArgumentError("chunk " + c.chunk_id + " has fewer than k annotated keyphrases");
    }
  }
  const auto lattice = simplex_lattice(step);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(lattice.size())));

  struct Best {
    std::size_t index = 0;
    double objective = -1.0;
  };
  // Contiguous blocks keep the first-maximum-wins rule identical to a serial scan.
  std::vector<Best> best(jobs);
  auto scan = [&](unsigned job) {
    const std::size_t begin = lattice.size() * job / jobs;
    const std::size_t end = lattice.size() * (job + 1) / jobs;
    Best b{begin, -1.0};
    for (std::size_t i = begin; i < end; ++i) {
      const double obj = tuning_objective(chunks, lattice[i], k);
      if (obj > b.objective) b = {i, obj};
    }
    best[job] = b;
  };
  if (jobs == 1) {
    scan(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(scan, j);
    for (auto& t : threads) t.join();
  }
  Best overall = best.front();
  for (const auto& b : best) {
    if (b.objective > overall.objective) overall = b;
  }
  return {lattice[overall.index], overall.objective, lattice.size()};
}

}  // namespace coursekit
