#include "redos/growth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace redos {

namespace {

Word word_from_index(const std::vector<Symbol>& sigma, std::uint64_t idx,
                     int n) {
  Word w(static_cast<size_t>(n));
  std::uint64_t k = sigma.size();
  for (int i = n - 1; i >= 0; --i) {
    w[static_cast<size_t>(i)] = sigma[static_cast<size_t>(idx % k)];
    idx /= k;
  }
  return w;
}

std::uint64_t pow_count(std::uint64_t base, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (1ull << 62) / base) return 1ull << 62;  // saturate
    r *= base;
  }
  return r;
}

}  // namespace

WorstCase worst_btr_sizes_serial(const Pnfa& a, int max_n,
                                 std::uint64_t per_word_budget) {
  WorstCase out;
  const std::vector<Symbol>& sigma = a.alphabet;
  for (int n = 0; n <= max_n; ++n) {
    if (n > 0 && sigma.empty()) break;
    std::uint64_t total = pow_count(std::max<std::uint64_t>(sigma.size(), 1), n);
    std::uint64_t best = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      BtrTree t = btr(a, word_from_index(sigma, idx, n), per_word_budget);
      if (!t.complete) out.budget_exceeded = true;
      best = std::max(best, t.state_nodes);
    }
    out.sizes.push_back(best);
  }
  return out;
}

WorstCase worst_btr_sizes_parallel(const Pnfa& a, int max_n,
                                   std::uint64_t per_word_budget) {
#ifndef _OPENMP
  return worst_btr_sizes_serial(a, max_n, per_word_budget);
#else
  WorstCase out;
  const std::vector<Symbol>& sigma = a.alphabet;
  for (int n = 0; n <= max_n; ++n) {
    if (n > 0 && sigma.empty()) break;
    std::int64_t total = static_cast<std::int64_t>(
        pow_count(std::max<std::uint64_t>(sigma.size(), 1), n));
    std::uint64_t best = 0;
    int over = 0;
#pragma omp parallel for schedule(dynamic, 64) \
    reduction(max : best) reduction(| : over)
    for (std::int64_t idx = 0; idx < total; ++idx) {
      BtrTree t = btr(a, word_from_index(sigma, static_cast<std::uint64_t>(idx), n),
                      per_word_budget);
      if (!t.complete) over = 1;
      best = std::max(best, t.state_nodes);
    }
    if (over) out.budget_exceeded = true;
    out.sizes.push_back(best);
  }
  return out;
#endif
}

void classify_growth(GrowthEstimate& est, double theta, int window) {
  est.ratios.clear();
  for (size_t i = 0; i + 1 < est.f.size(); ++i)
    est.ratios.push_back(est.f[i] == 0
                             ? 0.0
                             : static_cast<double>(est.f[i + 1]) /
                                   static_cast<double>(est.f[i]));

  // log-log slope over the top half of the nonzero points
  std::vector<std::pair<double, double>> pts;
  for (size_t n = 1; n < est.f.size(); ++n)
    if (est.f[n] > 0)
      pts.emplace_back(std::log(static_cast<double>(n)),
                       std::log(static_cast<double>(est.f[n])));
  if (pts.size() >= 4) pts.erase(pts.begin(), pts.begin() + pts.size() / 2);
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) sx += x, sy += y, sxx += x * x, sxy += x * y;
    double m = pts.size();
    double denom = m * sxx - sx * sx;
    est.loglog_slope = denom > 1e-12 ? (m * sxy - sx * sy) / denom : 0.0;
  }

  if (static_cast<int>(est.ratios.size()) < window) {
    est.verdict = GrowthEstimate::Verdict::Inconclusive;
    return;
  }
  bool exp = true;
  for (size_t i = est.ratios.size() - static_cast<size_t>(window);
       i < est.ratios.size(); ++i)
    exp = exp && est.ratios[i] >= 1.0 + theta;
  if (exp) {
    est.verdict = GrowthEstimate::Verdict::Exponential;
    return;
  }
  est.verdict = GrowthEstimate::Verdict::Polynomial;
  est.degree = std::max(0, static_cast<int>(std::lround(est.loglog_slope)));
}

GrowthEstimate growth_probe(const Stt& stt, const std::vector<Symbol>& alphabet,
                            int max_n, std::uint64_t budget_nodes,
                            std::uint64_t seed, std::uint64_t exhaustive_cutoff,
                            int samples_per_length, double theta, int window) {
  GrowthEstimate est;
  est.seed = seed;
  std::mt19937_64 rng(seed);

  auto probe_word = [&](const Word& w) -> std::uint64_t {
    SttRunResult r = run_stt(stt, decorate(w), budget_nodes);
    if (r.budget_exceeded) est.budget_exceeded = true;
    std::uint64_t best = 0;
    for (const OutputTree& t : r.outputs) best = std::max(best, t.size());
    return std::max(best, r.budget_exceeded ? r.peak_frontier_nodes : 0);
  };

  std::uint64_t running_max = 0;
  for (int n = 0; n <= max_n; ++n) {
    if (n == 0) {
      running_max = probe_word({});
      est.f.push_back(running_max);
      continue;
    }
    if (alphabet.empty()) {
      est.f.push_back(running_max);
      continue;
    }
    std::uint64_t total = pow_count(alphabet.size(), n);
    std::uint64_t best = 0;
    if (total <= exhaustive_cutoff) {
      for (std::uint64_t idx = 0; idx < total; ++idx)
        best = std::max(best, probe_word(word_from_index(alphabet, idx, n)));
    } else {
      est.exhaustive = false;
      std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
      for (int s = 0; s < samples_per_length; ++s)
        best = std::max(best, probe_word(word_from_index(alphabet, pick(rng), n)));
    }
    running_max = std::max(running_max, best);
    est.f.push_back(running_max);
  }
  classify_growth(est, theta, window);
  return est;
}

}  // namespace redos
