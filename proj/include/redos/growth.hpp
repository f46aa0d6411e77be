#ifndef REDOS_GROWTH_HPP
#define REDOS_GROWTH_HPP

#include <cstdint>
#include <vector>

#include "redos/pnfa.hpp"
#include "redos/transducer.hpp"

namespace redos {

// Worst-case backtracking-tree sizes by input length: sizes[n] is the
// maximum state-node count over all words of length n, scanned
// exhaustively. Cost is |alphabet|^n per length; keep max_n small for
// alphabets with more than one symbol.
struct WorstCase {
  std::vector<std::uint64_t> sizes;  // index = word length, 0..max_n
  bool budget_exceeded = false;      // some tree hit the per-word budget
};

WorstCase worst_btr_sizes_serial(const Pnfa& a, int max_n,
                                 std::uint64_t per_word_budget = kDefaultBtrBudget);

// Same result, OpenMP-parallel over the words of each length. Falls back
// to the serial loop when built without OpenMP.
WorstCase worst_btr_sizes_parallel(const Pnfa& a, int max_n,
                                   std::uint64_t per_word_budget = kDefaultBtrBudget);

// Empirical growth of transducer output sizes over correctly decorated
// inputs. f[n] = max output size over tested |w| <= n; exhaustive per
// length while |alphabet|^n <= exhaustive_cutoff, randomized sampling
// beyond that.
struct GrowthEstimate {
  enum class Verdict { Exponential, Polynomial, Inconclusive };
  std::vector<std::uint64_t> f;  // index = length bound, 0..max_n
  std::vector<double> ratios;    // f[n+1]/f[n]
  double loglog_slope = 0.0;     // fit over the top half
  Verdict verdict = Verdict::Inconclusive;
  int degree = 0;  // rounded slope when Polynomial
  bool empirical = true;  // always; this is a probe, not a proof
  bool budget_exceeded = false;
  std::uint64_t seed = 0;
  bool exhaustive = true;  // no sampling was needed
};

GrowthEstimate growth_probe(const Stt& stt, const std::vector<Symbol>& alphabet,
                            int max_n, std::uint64_t budget_nodes = 2'000'000,
                            std::uint64_t seed = 1,
                            std::uint64_t exhaustive_cutoff = 2048,
                            int samples_per_length = 48, double theta = 0.25,
                            int window = 4);

// Ratio/slope classification shared by the probe and the CLI; exposed for
// reuse on worst-case scans.
void classify_growth(GrowthEstimate& est, double theta, int window);

}  // namespace redos

#endif
