// Micro-benchmark comparing the serial reference kernels against the
// OpenMP remainder-tree implementations.

#include <chrono>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#include "nmc/field_eval.hpp"
#include "nmc/gf2x.hpp"
#include "nmc/harness.hpp"
#include "nmc/rng.hpp"
#include "nmc/table_code.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

uint64_t checksum(const std::vector<uint64_t>& v) {
    uint64_t h = 0;
    for (uint64_t x : v) h = h * 0x9e3779b97f4a7c15ull + x;
    return h;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel benchmark"};
    int m = 18;
    int degree = 2303;
    int reps = 3;
    uint64_t seed = 7;
    app.add_option("--m", m, "field degree for full-field evaluation");
    app.add_option("--degree", degree, "polynomial degree");
    app.add_option("--reps", reps, "repetitions (fastest counts)");
    app.add_option("--seed", seed, "rng seed");
    CLI11_PARSE(app, argc, argv);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads: %d\n", threads);

    nmc::FieldSpec field = nmc::FieldSpec::standard(m);
    nmc::RngStream rng(seed);
    nmc::Poly p = nmc::random_poly(field, degree, rng);

    std::printf("\nfull-field evaluation, m=%d, deg=%d (%llu points)\n", m, degree,
                static_cast<unsigned long long>(1ull << m));
    double best_serial = 1e300, best_tree = 1e300;
    uint64_t cks = 0, ckt = 0;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        auto vs = nmc::eval_on_field_serial(field, p);
        best_serial = std::min(best_serial, seconds_since(t0));
        cks = checksum(vs);

        t0 = std::chrono::steady_clock::now();
        auto vt = nmc::eval_on_field(field, p);
        best_tree = std::min(best_tree, seconds_since(t0));
        ckt = checksum(vt);
    }
    std::printf("  horner serial      %8.3f s\n", best_serial);
    std::printf("  remainder tree omp %8.3f s   (speedup %.1fx)%s\n", best_tree,
                best_serial / best_tree, cks == ckt ? "" : "  MISMATCH");

    // tamper grid: sampled strong-NM cells, serial loop vs the same loop
    // under omp (mirrors the experiment runner's fan-out)
    std::printf("\nsampled tampering grid, table code n=16 k=4 t=128, 64 functions\n");
    nmc::CodeParams cp{16, 4, 128, 0.0, seed};
    nmc::RngStream crng(seed);
    nmc::TableCode code = nmc::TableCode::build(cp, crng);
    nmc::RngStream frng(seed + 1);
    std::vector<nmc::TamperSpec> fam = nmc::sample_family("bitwise", 16, 64, frng);
    const uint64_t samples = 20000;
    std::vector<uint64_t> msgs(1ull << 4);
    for (uint64_t s = 0; s < msgs.size(); ++s) msgs[s] = s;

    auto run_grid = [&](bool parallel) {
        std::vector<double> errs(fam.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
        for (int64_t i = 0; i < static_cast<int64_t>(fam.size()); ++i) {
            nmc::RngStream cell(nmc::RngStream::mix(seed, static_cast<uint64_t>(i)));
            errs[static_cast<size_t>(i)] =
                nmc::strong_nm_error_sampled(code, fam[static_cast<size_t>(i)], msgs, samples, cell);
        }
        double acc = 0;
        for (double e : errs) acc += e;
        return acc;
    };

    auto t0 = std::chrono::steady_clock::now();
    double sum_serial = run_grid(false);
    double grid_serial = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    double sum_par = run_grid(true);
    double grid_par = seconds_since(t0);
    std::printf("  serial             %8.3f s\n", grid_serial);
    std::printf("  omp                %8.3f s   (speedup %.1fx)%s\n", grid_par,
                grid_serial / grid_par, sum_serial == sum_par ? "" : "  MISMATCH");
    return 0;
}
