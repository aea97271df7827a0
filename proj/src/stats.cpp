#include "fqpat/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace fqpat {

namespace {

// Runs body over fixed trial chunks and merges the per-chunk accumulators in
// chunk order, so results are identical for any worker count.
template <typename Acc>
Acc run_trials(std::uint64_t trials, unsigned workers,
               const std::function<void(std::uint64_t, std::uint64_t, Acc&)>& body,
               const std::function<void(Acc&, const Acc&)>& merge) {
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t nchunks = (trials + kChunk - 1) / kChunk;
  if (workers <= 1 || nchunks <= 1) {
    Acc acc{};
    body(0, trials, acc);
    return acc;
  }
  std::vector<Acc> parts(nchunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      std::uint64_t t0 = c * kChunk, t1 = std::min(trials, t0 + kChunk);
      body(t0, t1, parts[c]);
    }
  };
  std::vector<std::thread> pool;
  unsigned nw = std::min<unsigned>(workers, static_cast<unsigned>(nchunks));
  pool.reserve(nw);
  for (unsigned i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  Acc acc = std::move(parts[0]);
  for (std::uint64_t c = 1; c < nchunks; ++c) merge(acc, parts[c]);
  return acc;
}

double falling_factorial(double x, std::uint32_t r) {
  double v = 1.0;
  for (std::uint32_t i = 0; i < r; ++i) v *= (x - i);
  return v;
}

}  // namespace

double Histogram::mean() const {
  if (trials == 0) return 0.0;
  double s = 0.0;
  for (const auto& [v, c] : counts) s += static_cast<double>(v) * static_cast<double>(c);
  return s / static_cast<double>(trials);
}

double Histogram::variance() const {
  if (trials == 0) return 0.0;
  double m = mean(), s = 0.0;
  for (const auto& [v, c] : counts) {
    double d = static_cast<double>(v) - m;
    s += d * d * static_cast<double>(c);
  }
  return s / static_cast<double>(trials);
}

MeanStderr Histogram::factorial_moment(std::uint32_t r) const {
  if (r == 0 || trials == 0) fail(Errc::BadParams, "need r >= 1 and a nonempty histogram");
  double s = 0.0, s2 = 0.0;
  for (const auto& [v, c] : counts) {
    double f = falling_factorial(static_cast<double>(v), r);
    s += f * static_cast<double>(c);
    s2 += f * f * static_cast<double>(c);
  }
  double m = s / static_cast<double>(trials);
  double var = std::max(0.0, s2 / static_cast<double>(trials) - m * m);
  return {m, std::sqrt(var / static_cast<double>(trials))};
}

MeanStderr estimate_p_contains(const PatternFamily& family, double delta, std::uint64_t trials,
                               std::uint64_t seed, unsigned workers) {
  if (trials == 0) fail(Errc::BadParams, "need trials >= 1");
  auto space = family.space_ptr();
  std::uint64_t hits = run_trials<std::uint64_t>(
      trials, workers,
      [&](std::uint64_t t0, std::uint64_t t1, std::uint64_t& acc) {
        for (std::uint64_t t = t0; t < t1; ++t) {
          SampleSet e = sample_bernoulli(space, delta, seed, t);
          if (family.contains_any(e)) ++acc;
        }
      },
      [](std::uint64_t& a, const std::uint64_t& b) { a += b; });
  double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

Histogram distribution_X(const PatternFamily& family, double delta, std::uint64_t trials,
                         std::uint64_t seed, unsigned workers) {
  if (trials == 0) fail(Errc::BadParams, "need trials >= 1");
  auto space = family.space_ptr();
  using Map = std::map<std::uint64_t, std::uint64_t>;
  Map counts = run_trials<Map>(
      trials, workers,
      [&](std::uint64_t t0, std::uint64_t t1, Map& acc) {
        for (std::uint64_t t = t0; t < t1; ++t) {
          SampleSet e = sample_bernoulli(space, delta, seed, t);
          ++acc[family.count_in(e)];
        }
      },
      [](Map& a, const Map& b) {
        for (const auto& [v, c] : b) a[v] += c;
      });
  Histogram h;
  h.counts = std::move(counts);
  h.trials = trials;
  return h;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pi = i < p.size() ? p[i] : 0.0;
    double qi = i < q.size() ? q[i] : 0.0;
    s += std::fabs(pi - qi);
  }
  return 0.5 * s;
}

PoissonFit poisson_fit(const Histogram& hist, double lambda, std::uint32_t r_max) {
  if (hist.trials == 0) fail(Errc::BadParams, "empty histogram");
  if (!(lambda > 0.0)) fail(Errc::BadParams, "lambda must be positive");
  if (r_max < 1) fail(Errc::BadParams, "r_max must be >= 1");
  PoissonFit fit;
  fit.lambda = lambda;
  std::uint64_t maxk = hist.counts.empty() ? 0 : hist.counts.rbegin()->first;
  std::vector<double> emp(maxk + 1, 0.0), po(maxk + 1, 0.0);
  for (const auto& [v, c] : hist.counts)
    emp[v] = static_cast<double>(c) / static_cast<double>(hist.trials);
  double pk = std::exp(-lambda), cum = 0.0;
  for (std::uint64_t k = 0; k <= maxk; ++k) {
    po[k] = pk;
    cum += pk;
    pk *= lambda / static_cast<double>(k + 1);
  }
  // the empirical pmf is zero beyond maxk, so the tail enters as-is
  fit.tv_distance = std::min(1.0, tv_distance(emp, po) + 0.5 * std::max(0.0, 1.0 - cum));
  for (std::uint32_t r = 1; r <= r_max; ++r) fit.moments.push_back(hist.factorial_moment(r));
  return fit;
}

std::vector<SweepRow> threshold_sweep(const PatternFamily& family,
                                      const std::vector<double>& scale_list, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers) {
  if (trials == 0) fail(Errc::BadParams, "need trials >= 1");
  if (scale_list.empty()) fail(Errc::BadParams, "empty scale list");
  for (double s : scale_list)
    if (!(s > 0.0)) fail(Errc::BadParams, "scales must be positive");
  if (!std::is_sorted(scale_list.begin(), scale_list.end()))
    fail(Errc::BadParams, "scale list must be ascending");

  const double t = threshold(family);
  std::vector<double> deltas;
  deltas.reserve(scale_list.size());
  for (double s : scale_list) deltas.push_back(std::min(1.0, std::max(0.0, s * t)));

  auto space = family.space_ptr();
  using Hits = std::vector<std::uint64_t>;
  Hits hits = run_trials<Hits>(
      trials, workers,
      [&](std::uint64_t t0, std::uint64_t t1, Hits& acc) {
        if (acc.empty()) acc.assign(deltas.size(), 0);
        for (std::uint64_t tr = t0; tr < t1; ++tr) {
          auto sets = coupled_sweep(space, deltas, seed, tr);
          // nested sets: once one scale hits, every larger one does
          bool found = false;
          for (std::size_t s = 0; s < sets.size(); ++s) {
            if (!found && family.contains_any(sets[s])) found = true;
            if (found) ++acc[s];
          }
        }
      },
      [](Hits& a, const Hits& b) {
        if (a.empty()) a = b;
        else
          for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
      });

  std::vector<SweepRow> rows(scale_list.size());
  for (std::size_t s = 0; s < scale_list.size(); ++s) {
    rows[s].scale = scale_list[s];
    rows[s].delta = deltas[s];
    rows[s].hits = hits[s];
    rows[s].p_hat = static_cast<double>(hits[s]) / static_cast<double>(trials);
    rows[s].stderror = std::sqrt(rows[s].p_hat * (1.0 - rows[s].p_hat) / static_cast<double>(trials));
    rows[s].e_x = expected_X(family, deltas[s]);
  }
  return rows;
}

MeanStderr empirical_EY(const PatternFamily& family, double delta, std::uint64_t trials,
                        std::uint64_t seed, unsigned workers) {
  if (trials == 0) fail(Errc::BadParams, "need trials >= 1");
  auto space = family.space_ptr();
  struct Acc {
    double s = 0.0, s2 = 0.0;
  };
  Acc acc = run_trials<Acc>(
      trials, workers,
      [&](std::uint64_t t0, std::uint64_t t1, Acc& a) {
        for (std::uint64_t t = t0; t < t1; ++t) {
          SampleSet e = sample_bernoulli(space, delta, seed, t);
          double y = static_cast<double>(family.count_pairs_in(e));
          a.s += y;
          a.s2 += y * y;
        }
      },
      [](Acc& a, const Acc& b) {
        a.s += b.s;
        a.s2 += b.s2;
      });
  double m = acc.s / static_cast<double>(trials);
  double var = std::max(0.0, acc.s2 / static_cast<double>(trials) - m * m);
  return {m, std::sqrt(var / static_cast<double>(trials))};
}

}  // namespace fqpat
