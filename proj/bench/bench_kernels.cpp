// Compares the OpenMP kernels against their serial references and times one
// full coded round. Build target only; not part of the test suite.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "codedmat/matdot.hpp"
#include "codedmat/poly.hpp"

using namespace codedmat;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
    auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    PrimeField f;
    std::mt19937_64 rng(1);

    {
        const std::size_t n = 384;
        FieldMatrix a = FieldMatrix::random(f, n, n, rng);
        FieldMatrix b = FieldMatrix::random(f, n, n, rng);
        FieldMatrix serial, parallel;
        double ts = time_ms([&] { serial = matmul_serial(a, b); }, 3);
        double tp = time_ms([&] { parallel = matmul(a, b); }, 3);
        std::printf("matmul %zux%zu        serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n", n, n,
                    ts, tp, ts / tp, serial == parallel ? "match" : "MISMATCH");
    }

    {
        const std::size_t k = 31, dim = 128;  // the m = 16 decode shape
        std::vector<Fe> xs(k);
        for (std::size_t i = 0; i < k; ++i) xs[i] = static_cast<Fe>(i + 1);
        std::vector<FieldMatrix> ys;
        for (std::size_t i = 0; i < k; ++i) ys.push_back(FieldMatrix::random(f, dim, dim, rng));
        std::vector<FieldMatrix> serial, parallel;
        double ts = time_ms([&] { serial = matrix_poly_coeffs_serial(xs, ys); }, 3);
        double tp = time_ms([&] { parallel = matrix_poly_coeffs(xs, ys); }, 3);
        std::printf("interpolate k=%zu %zux%zu  serial %8.2f ms   parallel %8.2f ms   x%.2f   %s\n",
                    k, dim, dim, ts, tp, ts / tp, serial == parallel ? "match" : "MISMATCH");
    }

    {
        const std::size_t n = 240, m = 8;
        FieldMatrix a = FieldMatrix::random(f, n, n, rng);
        FieldMatrix b = FieldMatrix::random(f, n, n, rng);
        MatDotSpec spec = MatDotSpec::create(f, m, 2 * m + 1);
        double t = time_ms(
            [&] {
                std::vector<MatDotShare> shares = matdot_encode(a, b, spec);
                std::vector<WorkerProduct> prods;
                for (const MatDotShare& s : shares) prods.push_back(matdot_worker(s));
                FieldMatrix c = matdot_decode(prods, spec);
                if (c.rows() != n) std::abort();
            },
            1);
        std::printf("full round N=%zu m=%zu P=%zu: %.2f ms\n", n, m, spec.workers, t);
    }
    return 0;
}
