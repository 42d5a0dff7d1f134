// Serial vs OpenMP timings for the data-parallel kernels.
#include <chrono>
#include <cstdio>

#include "ctlab/gnp.hpp"
#include "ctlab/regularity.hpp"

using namespace ctlab;

namespace {

template <typename F>
double ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    int n = 20000;
    Rat p(1, 100);
    double s = ms([&] { sample_gnp_serial(n, p, 7); });
    double q = ms([&] { sample_gnp(n, p, 7); });
    row("gnp pair sampling (n=2e4)", s, q);
  }
  {
    auto pg = sample_blowup_subgraph(3, 60, Rat(3, 5), Rat(1), 11);
    RegParams params{Rat(1, 2), Rat(3, 5), Rat(1)};
    GexpOptions opts;
    double s = ms([&] { typicality_census_serial(pg, 3, 2, params, opts); });
    double q = ms([&] { typicality_census(pg, 3, 2, params, opts); });
    row("typicality census (180 v)", s, q);
  }
  {
    // loose epsilon so no violation exists and both versions scan all trials
    auto pg = sample_blowup_subgraph(3, 400, Rat(1, 4), Rat(1), 3);
    RegParams params{Rat(1, 2), Rat(1, 4), Rat(1)};
    double s = ms([&] {
      check_regular_sampled_serial(pg.graph, pg.parts[0], pg.parts[1], params, 2000, 5);
    });
    double q = ms([&] {
      check_regular_sampled(pg.graph, pg.parts[0], pg.parts[1], params, 2000, 5);
    });
    row("sampled regularity (2k tr)", s, q);
  }
  return 0;
}
