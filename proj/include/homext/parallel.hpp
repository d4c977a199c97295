#pragma once

// Index-range kernels shared by the verifiers. Exec::Serial is the
// reference path; Exec::Parallel splits the range with a static OpenMP
// schedule and concatenates per-thread failures in thread order, which
// reproduces the serial witness order exactly.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "homext/report.hpp"

namespace homext {

enum class Exec { Serial, Parallel };

// body(i, out) appends failures for index i to out.
template <class Body>
void run_check(Exec exec, Check& check, std::size_t count, Body&& body) {
    check.evaluated += count;
    if (exec == Exec::Serial || count < 64) {
        std::vector<Failure> out;
        for (std::size_t i = 0; i < count; ++i) body(i, out);
        for (Failure& f : out) check.record(std::move(f));
        return;
    }
#ifdef _OPENMP
    int threads = omp_get_max_threads();
    std::vector<std::vector<Failure>> per(static_cast<std::size_t>(threads));
    std::vector<std::size_t> extra(static_cast<std::size_t>(threads), 0);
    const std::size_t cap = Check::kMaxWitnesses;
#pragma omp parallel num_threads(threads)
    {
        auto tid = static_cast<std::size_t>(omp_get_thread_num());
        std::vector<Failure>& out = per[tid];
        std::vector<Failure> scratch;
#pragma omp for schedule(static)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            scratch.clear();
            body(static_cast<std::size_t>(i), scratch);
            for (Failure& f : scratch) {
                if (out.size() < cap) out.push_back(std::move(f));
                else ++extra[tid];
            }
        }
    }
    for (std::size_t t = 0; t < per.size(); ++t) {
        for (Failure& f : per[t]) check.record(std::move(f));
        check.failed += extra[t];
    }
#else
    std::vector<Failure> out;
    for (std::size_t i = 0; i < count; ++i) body(i, out);
    for (Failure& f : out) check.record(std::move(f));
#endif
}

} // namespace homext
