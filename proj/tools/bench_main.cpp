/// Benchmark: parallel decision kernels against the serial reference
/// implementations, on fixed-seed random graphs.  The references enumerate
/// subsets and simple cycles outright, so sizes stay small; each timed pair
/// is also checked for agreement and a disagreement aborts with exit 1.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ck/classify.hpp"
#include "ck/graph.hpp"
#include "ck/periodic.hpp"
#include "ck/reference.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ck::DirectedGraph random_graph(std::mt19937& rng, int n, double edge_factor,
                               bool no_sinks = false) {
  std::vector<std::string> verts;
  for (int v = 0; v < n; ++v) verts.push_back("v" + std::to_string(v));
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int edges = static_cast<int>(edge_factor * n);
  std::vector<std::array<std::string, 3>> triples;
  std::vector<int> outdeg(n, 0);
  for (int e = 0; e < edges; ++e) {
    const int src = pick(rng);
    ++outdeg[src];
    triples.push_back({"e" + std::to_string(e), "v" + std::to_string(src),
                       "v" + std::to_string(pick(rng))});
  }
  if (no_sinks) {
    // The pure-infiniteness deciders assume a sink-free graph.
    int extra = edges;
    for (int v = 0; v < n; ++v)
      if (outdeg[v] == 0)
        triples.push_back({"e" + std::to_string(extra++),
                           "v" + std::to_string(v),
                           "v" + std::to_string(pick(rng))});
  }
  return ck::DirectedGraph(std::move(verts), std::move(triples));
}

std::vector<int> random_weights(std::mt19937& rng, const ck::DirectedGraph& g) {
  std::uniform_int_distribution<int> w(-3, 3);
  std::vector<int> out(g.edge_count());
  for (int& x : out) x = w(rng);
  return out;
}

struct Row {
  const char* name;
  int n;
  int iters;
  double parallel_ms = 0;
  double serial_ms = 0;
  bool agree = true;
};

Row bench_pure_infiniteness(std::mt19937& rng, int n, int iters) {
  Row row{"pure infiniteness", n, iters};
  for (int i = 0; i < iters; ++i) {
    const ck::DirectedGraph g = random_graph(rng, n, 1.8, /*no_sinks=*/true);
    const auto t0 = Clock::now();
    const ck::Verdict fast = ck::is_purely_infinite(g);
    row.parallel_ms += ms_since(t0);
    const auto t1 = Clock::now();
    const bool slow = ck::reference::purely_infinite(g);
    row.serial_ms += ms_since(t1);
    if (fast.value == ck::Truth::Unknown ||
        (fast.value == ck::Truth::Yes) != slow)
      row.agree = false;
  }
  return row;
}

Row bench_mean_cycles(std::mt19937& rng, int n, int iters) {
  Row row{"extremal cycle means", n, iters};
  for (int i = 0; i < iters; ++i) {
    const ck::DirectedGraph g = random_graph(rng, n, 1.4);
    const std::vector<int> w = random_weights(rng, g);
    const auto t0 = Clock::now();
    const auto fast = ck::mean_cycles(g, w);
    row.parallel_ms += ms_since(t0);
    const auto t1 = Clock::now();
    const auto slow = ck::reference::extremal_cycle_means(g, w);
    row.serial_ms += ms_since(t1);
    bool same = fast.size() == slow.size();
    for (std::size_t c = 0; same && c < fast.size(); ++c)
      same = fast[c].vertices == slow[c].vertices &&
             fast[c].min_mean == slow[c].min_mean &&
             fast[c].max_mean == slow[c].max_mean;
    if (!same) row.agree = false;
  }
  return row;
}

void print_row(const Row& r) {
  std::printf("%-22s %4d %6d %14.2f %14.2f %8.2fx %s\n", r.name, r.n, r.iters,
              r.parallel_ms, r.serial_ms,
              r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
              r.agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int iters = 20;
  if (argc > 1) iters = std::max(1, std::atoi(argv[1]));
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP threads: (built without OpenMP)\n");
#endif
  std::printf("%-22s %4s %6s %14s %14s %9s %s\n", "kernel", "n", "iters",
              "parallel(ms)", "serial(ms)", "speedup", "agree");

  std::mt19937 rng(20260823);  // fixed seed: runs are reproducible
  bool all_agree = true;
  for (int n : {10, 13, 16}) {
    const Row r = bench_pure_infiniteness(rng, n, iters);
    print_row(r);
    all_agree = all_agree && r.agree;
  }
  for (int n : {10, 12, 14}) {
    const Row r = bench_mean_cycles(rng, n, iters);
    print_row(r);
    all_agree = all_agree && r.agree;
  }
  if (!all_agree) {
    std::printf("kernel/reference DISAGREEMENT\n");
    return 1;
  }
  return 0;
}
