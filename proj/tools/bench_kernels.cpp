// Compares the serial reference kernels against their OpenMP variants:
// batch separation over target vertices and brute-force tree enumeration.
#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "arbx/randomgen.hpp"
#include "arbx/separation.hpp"
#include "arbx/solver.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double time_of(F&& f, int repeats) {
  auto start = Clock::now();
  for (int i = 0; i < repeats; ++i) f();
  return std::chrono::duration<double>(Clock::now() - start).count() / repeats;
}

arbx::FractionalSolution random_fractional(const arbx::Instance& inst, std::mt19937_64& rng) {
  arbx::FractionalSolution x = arbx::FractionalSolution::zeros(inst);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& v : x.x) v = u(rng);
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 120;
  int repeats = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937_64 rng(42);

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (OpenMP disabled)\n";
#endif

  arbx::RandomInstanceParams params;
  params.min_n = params.max_n = n;
  params.arc_prob = 0.5;
  params.max_precedences = n;
  arbx::Instance inst = arbx::random_instance(rng, params);
  arbx::FractionalSolution x = random_fractional(inst, rng);

  auto serial = arbx::separate_all_serial(inst, x);
  auto parallel = arbx::separate_all(inst, x);
  if (serial.size() != parallel.size()) {
    std::cerr << "separation mismatch between serial and parallel kernels\n";
    return 1;
  }
  double ts = time_of([&] { arbx::separate_all_serial(inst, x); }, repeats);
  double tp = time_of([&] { arbx::separate_all(inst, x); }, repeats);
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "separation  n=" << n << "  serial " << ts << "s  parallel " << tp << "s  speedup "
            << std::setprecision(2) << ts / tp << "x\n";

  arbx::RandomInstanceParams small;
  small.min_n = small.max_n = 8;
  small.arc_prob = 0.9;
  arbx::Instance tiny = arbx::random_instance(rng, small);
  arbx::SolverLimits limits;
  auto bs = arbx::brute_force_pcmca_serial(tiny, limits);
  auto bp = arbx::brute_force_pcmca(tiny, limits);
  if (bs.status != bp.status ||
      (bs.best && bp.best && bs.best->parent != bp.best->parent)) {
    std::cerr << "brute-force mismatch between serial and parallel kernels\n";
    return 1;
  }
  double bts = time_of([&] { arbx::brute_force_pcmca_serial(tiny, limits); }, repeats);
  double btp = time_of([&] { arbx::brute_force_pcmca(tiny, limits); }, repeats);
  std::cout << std::setprecision(4);
  std::cout << "brute-force n=8  serial " << bts << "s  parallel " << btp << "s  speedup "
            << std::setprecision(2) << bts / btp << "x\n";
  return 0;
}
