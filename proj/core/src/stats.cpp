#include "algoprob/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <numeric>
#include <thread>

#include "algoprob/errors.hpp"
#include "algoprob/random.hpp"

namespace algoprob {

std::string tie_policy_name(TiePolicy p) { return p == TiePolicy::kStrict ? "strict" : "fractional"; }

TiePolicy parse_tie_policy(const std::string& name) {
  if (name == "strict") return TiePolicy::kStrict;
  if (name == "fractional") return TiePolicy::kFractional;
  throw RangeError("unknown tie policy '" + name + "' (expected strict or fractional)");
}

PairedRanking join(const TupleDistribution& a, const TupleDistribution& b) {
  if (a.k() != b.k()) {
    throw MismatchError("cannot compare distributions with k=" + std::to_string(a.k()) + " and k=" +
                        std::to_string(b.k()));
  }
  return PairedRanking{a.k(), a.probability_vector(), b.probability_vector()};
}

namespace {

// Positions sorted by value descending, position ascending.
std::vector<std::size_t> order_desc(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

struct RankStats {
  std::vector<double> centered;
  double sum_squares = 0.0;  // of the centered ranks
  double raw_sum_squares = 0.0;
};

RankStats rank_stats(std::vector<double> r) {
  RankStats s;
  const double mean = (static_cast<double>(r.size()) + 1.0) / 2.0;
  for (double v : r) s.raw_sum_squares += v * v;
  for (double& v : r) {
    v -= mean;
    s.sum_squares += v * v;
  }
  s.centered = std::move(r);
  return s;
}

// Rank correlation from the cross term sum(rx_c * ry_c) of centered ranks.
double rho_from_cross(double cross, const RankStats& x, const RankStats& y, TiePolicy policy) {
  const double n = static_cast<double>(x.centered.size());
  if (policy == TiePolicy::kStrict) {
    // sum d^2 = sum rx^2 + sum ry^2 - 2 sum rx ry, and sum rx ry = cross + n mean^2.
    const double mean = (n + 1.0) / 2.0;
    const double d2 = x.raw_sum_squares + y.raw_sum_squares - 2.0 * (cross + n * mean * mean);
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  }
  return cross / std::sqrt(x.sum_squares * y.sum_squares);
}

void check_pair(std::span<const double> x, std::span<const double> y, TiePolicy policy,
                const RankStats* rx = nullptr, const RankStats* ry = nullptr) {
  if (x.size() != y.size()) throw MismatchError("rank vectors differ in length");
  if (x.size() < 2) throw UndefinedCorrelationError("rank correlation needs at least two pairs");
  if (policy == TiePolicy::kFractional && rx && ry && (rx->sum_squares == 0.0 || ry->sum_squares == 0.0)) {
    throw UndefinedCorrelationError("a rank vector has zero variance (all values tied)");
  }
}

}  // namespace

std::vector<double> strict_ranks(std::span<const double> values) {
  const auto order = order_desc(values);
  std::vector<double> r(values.size());
  for (std::size_t i = 0; i < order.size(); ++i) r[order[i]] = static_cast<double>(i + 1);
  return r;
}

std::vector<double> average_ranks(std::span<const double> values) {
  const auto order = order_desc(values);
  std::vector<double> r(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j.
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t t = i; t < j; ++t) r[order[t]] = avg;
    i = j;
  }
  return r;
}

std::vector<double> ranks(std::span<const double> values, TiePolicy policy) {
  return policy == TiePolicy::kStrict ? strict_ranks(values) : average_ranks(values);
}

double spearman(std::span<const double> x, std::span<const double> y, TiePolicy policy) {
  check_pair(x, y, policy);
  const RankStats rx = rank_stats(ranks(x, policy));
  const RankStats ry = rank_stats(ranks(y, policy));
  check_pair(x, y, policy, &rx, &ry);
  double cross = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) cross += rx.centered[i] * ry.centered[i];
  return std::clamp(rho_from_cross(cross, rx, ry, policy), -1.0, 1.0);
}

double spearman(const PairedRanking& p, TiePolicy policy) { return spearman(p.x, p.y, policy); }

double permutation_test(std::span<const double> x, std::span<const double> y, double rho_obs,
                        TiePolicy policy, const PermutationOptions& options) {
  check_pair(x, y, policy);
  const RankStats rx = rank_stats(ranks(x, policy));
  const RankStats ry = rank_stats(ranks(y, policy));
  check_pair(x, y, policy, &rx, &ry);

  // Ties with the observed statistic count as "at least as extreme".
  const double threshold = std::abs(rho_obs) - 1e-12;
  const std::uint64_t trials = options.permutations;

  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    std::vector<double> perm(ry.centered.size());
    for (std::uint64_t t = begin; t < end; ++t) {
      std::copy(ry.centered.begin(), ry.centered.end(), perm.begin());
      SplitMix64 rng = SplitMix64::for_stream(options.seed, t);
      shuffle(std::span<double>(perm), rng);
      double cross = 0.0;
      for (std::size_t i = 0; i < perm.size(); ++i) cross += rx.centered[i] * perm[i];
      if (std::abs(rho_from_cross(cross, rx, ry, policy)) >= threshold) ++hits;
    }
    return hits;
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(1, trials / 256)));
  std::uint64_t hits = 0;
  if (threads == 1) {
    hits = run(0, trials);
  } else {
    std::vector<std::uint64_t> partial(threads, 0);
    {
      std::vector<std::jthread> workers;
      const std::uint64_t chunk = (trials + threads - 1) / threads;
      for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t begin = std::min(trials, w * chunk);
        const std::uint64_t end = std::min(trials, begin + chunk);
        workers.emplace_back([&, w, begin, end] { partial[w] = run(begin, end); });
      }
    }
    hits = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  }
  return static_cast<double>(hits + 1) / static_cast<double>(trials + 1);
}

double permutation_test(const PairedRanking& p, double rho_obs, TiePolicy policy,
                        const PermutationOptions& options) {
  return permutation_test(p.x, p.y, rho_obs, policy, options);
}

CorrelationResult correlate(const PairedRanking& p, const StatsOptions& options) {
  CorrelationResult r;
  r.rho = spearman(p, options.tie_policy);
  r.p_value = permutation_test(p, r.rho, options.tie_policy,
                               PermutationOptions{options.permutations, options.seed, options.threads});
  r.n = p.n();
  r.tie_policy = options.tie_policy;
  r.permutations = options.permutations;
  r.seed = options.seed;
  return r;
}

Significance significance(double p_value) {
  if (p_value <= 0.01) return Significance::kStrong;
  if (p_value <= 0.10) return Significance::kWeak;
  return Significance::kNone;
}

std::string marker(Significance s) {
  switch (s) {
    case Significance::kStrong:
      return "‡";
    case Significance::kWeak:
      return "†";
    case Significance::kNone:
      return "";
  }
  return "";
}

CorrelationMatrix correlation_matrix(std::span<const std::string> names,
                                     std::span<const TupleDistribution> dists, const StatsOptions& options) {
  if (names.size() != dists.size()) throw MismatchError("one name per distribution required");
  if (dists.empty()) throw EmptyInputError("no distributions to compare");
  CorrelationMatrix m;
  m.k = dists.front().k();
  for (const auto& d : dists) {
    if (d.k() != m.k) throw MismatchError("all distributions in a matrix must share k");
  }
  m.names.assign(names.begin(), names.end());
  m.options = options;
  const std::size_t n = dists.size();
  m.cells.assign(n, std::vector<MatrixCell>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      MatrixCell cell;
      try {
        cell.result = correlate(join(dists[i], dists[j]), options);
      } catch (const UndefinedCorrelationError& e) {
        cell.note = e.what();
      }
      m.cells[i][j] = cell;
      m.cells[j][i] = cell;
    }
  }
  return m;
}

namespace {

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string matrix_csv(const CorrelationMatrix& m) {
  std::string out = "k = " + std::to_string(m.k);
  for (const auto& name : m.names) out += "," + name;
  out += '\n';
  for (std::size_t i = 0; i < m.names.size(); ++i) {
    out += m.names[i];
    for (const auto& cell : m.cells[i]) {
      out += ',';
      if (cell.result) {
        out += format_double("%.4f", cell.result->rho) + marker(significance(cell.result->p_value));
      } else {
        out += "NA";
      }
    }
    out += '\n';
  }
  return out;
}

std::string matrix_json(const CorrelationMatrix& m) {
  using nlohmann::json;
  json cells = json::array();
  for (const auto& row : m.cells) {
    json jrow = json::array();
    for (const auto& cell : row) {
      if (cell.result) {
        jrow.push_back({{"rho", cell.result->rho},
                        {"p_value", cell.result->p_value},
                        {"n", cell.result->n},
                        {"marker", marker(significance(cell.result->p_value))}});
      } else {
        jrow.push_back({{"rho", nullptr}, {"note", cell.note}});
      }
    }
    cells.push_back(std::move(jrow));
  }
  json out = {{"k", m.k},
              {"names", m.names},
              {"tie_policy", tie_policy_name(m.options.tie_policy)},
              {"permutations", m.options.permutations},
              {"seed", m.options.seed},
              {"cells", std::move(cells)}};
  return out.dump(2) + "\n";
}

std::string ranked_series_csv(const TupleDistribution& d) {
  std::string out = "rank,tuple,probability\n";
  if (d.total() == 0) return out;
  const auto r = rank(d);
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    out += std::to_string(i + 1) + "," + r.entries[i].tuple.to_string() + "," +
           format_double("%.17g", r.entries[i].probability) + "\n";
  }
  return out;
}

std::string lexicographic_series_csv(const TupleDistribution& d) {
  std::string out = "index,tuple,probability\n";
  const auto p = d.probability_vector();
  for (std::size_t i = 0; i < p.size(); ++i) {
    out += std::to_string(i) + "," + Tuple{static_cast<std::uint32_t>(i), d.k()}.to_string() + "," +
           format_double("%.17g", p[i]) + "\n";
  }
  return out;
}

double total_variation(const TupleDistribution& a, const TupleDistribution& b) {
  if (a.k() != b.k()) throw MismatchError("total variation needs equal k");
  if (a.total() == 0 || b.total() == 0) throw EmptyInputError("total variation of an empty distribution");
  const auto pa = a.probability_vector();
  const auto pb = b.probability_vector();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) sum += std::abs(pa[i] - pb[i]);
  return std::min(1.0, sum / 2.0);
}

AlgorithmicityReport algorithmicity_score(const TupleDistribution& d, const TupleDistribution& ref,
                                          const StatsOptions& options) {
  if (d.k() != ref.k()) {
    throw MismatchError("data has k=" + std::to_string(d.k()) + " but the reference has k=" +
                        std::to_string(ref.k()));
  }
  AlgorithmicityReport report;
  try {
    report.correlation = correlate(join(d, ref), options);
  } catch (const UndefinedCorrelationError& e) {
    report.correlation_note = e.what();
  }
  report.tv_reference = total_variation(d, ref);
  report.tv_uniform = total_variation(d, uniform_distribution(d.k()));
  report.closer_to_reference = report.tv_reference < report.tv_uniform;
  return report;
}

}  // namespace algoprob
