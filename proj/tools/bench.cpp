// Benchmark: OpenMP kernels against their serial reference implementations.
//
//   csurf_bench [--size N] [--blocks M]
//
// Times GF(2) elimination on random N x N matrices and batch classification
// of M random blocks, serial vs parallel.

#include <chrono>
#include <cstring>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "csurf/batch.hpp"
#include "csurf/builders.hpp"
#include "csurf/gf2.hpp"

using namespace csurf;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

Gf2Matrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Gf2Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t w = 0; w < words_for_bits(n); ++w) m.row_ptr(r)[w] = rng();
    return m;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t size = 3000;
    std::size_t nblocks = 200;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--size")) size = std::strtoull(argv[i + 1], nullptr, 10);
        if (!std::strcmp(argv[i], "--blocks")) nblocks = std::strtoull(argv[i + 1], nullptr, 10);
    }

#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; parallel rows time serial code\n";
#endif

    {
        std::cout << "\nGF(2) rank of a random " << size << " x " << size << " matrix\n";
        Gf2Matrix m = random_matrix(size, 7);
        auto t0 = clock_type::now();
        std::size_t r_serial = m.rank_serial();
        double t_serial = seconds_since(t0);
        t0 = clock_type::now();
        std::size_t r_parallel = m.rank(0);
        double t_parallel = seconds_since(t0);
        std::cout << "  serial:   " << t_serial << " s  (rank " << r_serial << ")\n";
        std::cout << "  parallel: " << t_parallel << " s  (rank " << r_parallel << ")\n";
        if (r_serial != r_parallel) {
            std::cerr << "rank mismatch between kernels\n";
            return 1;
        }
        std::cout << "  speedup:  " << t_serial / t_parallel << "x\n";
    }

    {
        std::cout << "\nclassification of " << nblocks << " random blocks\n";
        std::vector<IsolatingBlock> blocks;
        for (std::size_t s = 0; s < nblocks; ++s) blocks.push_back(random_block(s + 1, 400));
        auto t0 = clock_type::now();
        auto serial = classify_batch_serial(blocks);
        double t_serial = seconds_since(t0);
        t0 = clock_type::now();
        auto parallel = classify_batch(blocks, 0);
        double t_parallel = seconds_since(t0);
        std::cout << "  serial:   " << t_serial << " s\n";
        std::cout << "  parallel: " << t_parallel << " s\n";
        for (std::size_t i = 0; i < serial.size(); ++i) {
            if (serial[i].report_json != parallel[i].report_json) {
                std::cerr << "batch mismatch at block " << i << "\n";
                return 1;
            }
        }
        std::cout << "  speedup:  " << t_serial / t_parallel << "x\n";
    }
    return 0;
}
