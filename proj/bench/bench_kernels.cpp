// Benchmark: OpenMP kernels against their serial reference implementations.
//
// Usage: lrlab_bench [n k log2q ell seed]
// Prints a table of wall-clock times and speedups; results are checked for
// agreement before any timing is reported.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "lrlab/listrec.hpp"
#include "lrlab/reference.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double ref_ms, double par_ms) {
    std::cout << std::left << std::setw(18) << name << std::right << std::fixed
              << std::setprecision(1) << std::setw(12) << ref_ms << " ms" << std::setw(12) << par_ms
              << " ms" << std::setw(10) << std::setprecision(2) << (ref_ms / par_ms) << "x\n";
}

} // namespace

int main(int argc, char** argv) {
    int n = 14, k = 5, log2q = 4, ell = 3;
    std::uint64_t seed = 7;
    if (argc > 1) n = std::atoi(argv[1]);
    if (argc > 2) k = std::atoi(argv[2]);
    if (argc > 3) log2q = std::atoi(argv[3]);
    if (argc > 4) ell = std::atoi(argv[4]);
    if (argc > 5) seed = std::strtoull(argv[5], nullptr, 10);

    using namespace lrlab;
    const auto field = Field::make_extension(2, static_cast<std::uint32_t>(log2q));
    Rng rng = Rng::substream(seed, 0);
    const LinearCode code = sample_rlc(field, n, k, rng);
    Rng lrng = Rng::substream(seed, 1);
    const RecoveryBall ball = make_ball(Rational(1, 4), sample_input_lists(field, n, ell, lrng));

    std::cout << "q=" << field->q() << " n=" << n << " k=" << k << " ell=" << ell << " ("
              << codeword_count(code) << " codewords)";
#ifdef _OPENMP
    std::cout << ", OpenMP max threads " << omp_get_max_threads();
#else
    std::cout << ", OpenMP disabled";
#endif
    std::cout << "\n\n";
    std::cout << std::left << std::setw(18) << "kernel" << std::right << std::setw(15)
              << "reference" << std::setw(15) << "parallel" << std::setw(11) << "speedup\n";

    RecoveredList slow_list, fast_list;
    const double t_ref_rec = time_ms([&] { slow_list = ref::recover_list(code, ball); });
    const double t_par_rec = time_ms([&] { fast_list = recover_list(code, ball); });
    if (slow_list.codewords != fast_list.codewords || slow_list.span_dim != fast_list.span_dim) {
        std::cerr << "MISMATCH: recover_list disagrees with the reference\n";
        return 1;
    }
    row("recover_list", t_ref_rec, t_par_rec);

    DistanceResult slow_d, fast_d;
    const double t_ref_d = time_ms([&] { slow_d = ref::min_distance_naive(code); });
    const double t_par_d = time_ms([&] { fast_d = min_distance(code); });
    if (slow_d.d != fast_d.d || slow_d.witness_message != fast_d.witness_message) {
        std::cerr << "MISMATCH: min_distance disagrees with the reference\n";
        return 1;
    }
    row("min_distance", t_ref_d, t_par_d);

    std::cout << "\nrecovered list size " << fast_list.codewords.size() << ", span dim "
              << fast_list.span_dim << "; minimum distance " << fast_d.d << "\n";
    return 0;
}
