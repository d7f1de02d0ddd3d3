// Serial reference checker vs the OpenMP one on the same instance list.
// Each run gets a fresh oracle so neither side profits from a warm memo.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "vnim/check.hpp"

using namespace vnim;

namespace {

template <typename F>
double time_ms(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv)
{
    const std::size_t max_vertices = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
    const Weight max_weight = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 3;

    Envelope env;
    env.orientation = Orientation::undirected;
    env.max_vertices = max_vertices;
    env.max_weight = max_weight;
    const auto instances = enumerate_instances(env);

    CheckOptions options;
    options.verify_witness = true;

    CheckReport serial, parallel;
    const double serial_ms = time_ms([&] {
        Oracle oracle(options.budget);
        serial = check_instances_serial(instances, options, oracle);
    });
    const double parallel_ms = time_ms([&] {
        Oracle oracle(options.budget);
        parallel = check_instances_parallel(instances, options, oracle);
    });

    std::cout << "instances " << instances.size() << "\n"
              << "threads   " << omp_get_max_threads() << "\n"
              << "serial    " << serial_ms << " ms\n"
              << "parallel  " << parallel_ms << " ms\n"
              << "speedup   " << serial_ms / parallel_ms << "\n";

    const bool same = serial.tested == parallel.tested && serial.routed == parallel.routed &&
                      serial.mismatches.size() == parallel.mismatches.size();
    if (!same || !serial.clean()) {
        std::cerr << "reports differ or contain mismatches\n";
        return 1;
    }
    return 0;
}
