#include "bintree/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace bintree {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double time_once(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

void fill_speedups(std::vector<BenchRecord>& rows) {
  const auto baseline = std::find_if(rows.begin(), rows.end(),
                                     [](const BenchRecord& r) { return !std::isnan(r.wall_seconds); });
  if (baseline == rows.end()) return;
  const double reference = baseline->wall_seconds * static_cast<double>(baseline->M);
  for (auto& row : rows) {
    row.baseline_M = baseline->M;
    if (std::isnan(row.wall_seconds)) {
      row.speedup = row.efficiency = kNaN;
      continue;
    }
    row.speedup = reference / row.wall_seconds;
    row.efficiency = row.speedup / static_cast<double>(row.M);
  }
}

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "N/A";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << x;
  return os.str();
}

}  // namespace

std::vector<BenchRecord> run_bench(std::span<const BenchPoint> grid, const BenchWorkload& workload,
                                   int repetitions) {
  repetitions = std::max(repetitions, 1);
  const auto cores = static_cast<std::uint64_t>(std::max(1, omp_get_num_procs()));

  std::vector<BenchRecord> out;
  std::vector<BenchRecord> group;
  auto flush = [&] {
    fill_speedups(group);
    out.insert(out.end(), group.begin(), group.end());
    group.clear();
  };

  for (const BenchPoint& point : grid) {
    if (!group.empty() && group.front().N != point.N) flush();
    BenchRecord rec;
    rec.N = point.N;
    rec.M = point.M;
    rec.oversubscribed = point.M > cores;
    if (auto run = workload(point.N, point.M)) {
      std::vector<double> times;
      for (int i = 0; i < repetitions; ++i) times.push_back(time_once(*run));
      rec.wall_seconds = median(std::move(times));
    } else {
      rec.wall_seconds = kNaN;
    }
    group.push_back(rec);
  }
  flush();
  return out;
}

std::vector<BenchRecord> run_exact_bench(std::span<const BenchPoint> grid,
                                         const ValuationRequest& tmpl, int repetitions) {
  auto workload = [&tmpl](int n, std::uint64_t m) -> std::optional<std::function<void()>> {
    if (m < 1 || n < 1 || n > kMaxDepth || m > (std::uint64_t{1} << n)) return std::nullopt;
    ValuationRequest req = tmpl;
    req.inputs.N = n;
    req.params = derive_crr(req.inputs);
    req.workers = m;
    req.threads = 0;
    req.allow_large = true;
    return [req] {
      volatile double sink = value_exact_parallel(req);
      (void)sink;
    };
  };
  return run_bench(grid, workload, repetitions);
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> records) {
  os << "N,M,wall_seconds,speedup,efficiency,baseline_M\n";
  const auto old = os.precision(17);
  for (const auto& r : records) {
    auto num = [&](double x) -> std::ostream& { return std::isnan(x) ? os << "NA" : os << x; };
    os << r.N << ',' << r.M << ',';
    num(r.wall_seconds) << ',';
    num(r.speedup) << ',';
    num(r.efficiency) << ',' << r.baseline_M << '\n';
  }
  os.precision(old);
}

void write_bench_table(std::ostream& os, std::span<const BenchRecord> records) {
  std::vector<std::uint64_t> ms;
  std::map<int, std::map<std::uint64_t, BenchRecord>> by_n;
  bool oversubscribed = false;
  for (const auto& r : records) {
    if (std::find(ms.begin(), ms.end(), r.M) == ms.end()) ms.push_back(r.M);
    by_n[r.N][r.M] = r;
    oversubscribed = oversubscribed || r.oversubscribed;
  }
  std::sort(ms.begin(), ms.end());

  auto block = [&](const char* title, auto field, int precision) {
    os << title << '\n' << std::setw(6) << "N";
    for (auto m : ms) os << std::setw(12) << ("M=" + std::to_string(m));
    os << '\n';
    for (const auto& [n, row] : by_n) {
      os << std::setw(6) << n;
      for (auto m : ms) {
        const auto it = row.find(m);
        std::string cell = it == row.end() ? "-" : format_number(field(it->second), precision);
        if (it != row.end() && it->second.oversubscribed) cell += "*";
        os << std::setw(12) << cell;
      }
      os << '\n';
    }
  };
  block("(a) Wall clock time [s]", [](const BenchRecord& r) { return r.wall_seconds; }, 4);
  block("(b) Observed speedup S_M", [](const BenchRecord& r) { return r.speedup; }, 2);
  block("(c) Observed efficiency E_M", [](const BenchRecord& r) { return r.efficiency; }, 2);
  if (oversubscribed) os << "* M exceeds the " << omp_get_num_procs() << " available cores\n";
}

}  // namespace bintree
