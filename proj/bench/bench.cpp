// Timing comparison of the OpenMP-parallel kernels against their serial
// reference paths: per-commodity shortest-path evaluation inside the
// equilibrium solver, and the oracle capacity grid sweep.

#include <chrono>
#include <cstdio>
#include <functional>

#include "cndp/equilibrium.hpp"
#include "cndp/oracle.hpp"
#include "cndp/random_instances.hpp"

using namespace cndp;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto end = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(end - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
    {
        RandomInstanceOptions opts;
        opts.num_commodities = 4;
        opts.extra_edges = 12;
        opts.max_degree = 4;
        Instance inst = random_instance(7, opts);
        CapacityVector caps(static_cast<size_t>(inst.num_edges()), 1.0);

        WardropOptions serial;
        serial.parallel = false;
        WardropOptions parallel;
        parallel.parallel = true;

        double t_serial = time_ms([&] {
            for (int rep = 0; rep < 50; ++rep) {
                solve_wardrop(inst, caps, serial);
            }
        });
        double t_parallel = time_ms([&] {
            for (int rep = 0; rep < 50; ++rep) {
                solve_wardrop(inst, caps, parallel);
            }
        });
        report("wardrop (50 solves)", t_serial, t_parallel);
    }

    {
        RandomInstanceOptions opts;
        opts.num_commodities = 1;
        opts.extra_edges = 2;
        opts.min_path_hops = 1;
        opts.max_path_hops = 2;
        opts.single_sink = true;
        opts.max_degree = 2;
        Instance inst = random_instance(11, opts);

        OracleOptions serial;
        serial.resolution = 24;
        serial.parallel = false;
        OracleOptions parallel = serial;
        parallel.parallel = true;

        double t_serial = time_ms([&] { oracle_search(inst, serial); });
        double t_parallel = time_ms([&] { oracle_search(inst, parallel); });
        report("oracle grid (res 24)", t_serial, t_parallel);
    }

    return 0;
}
