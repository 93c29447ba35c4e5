// Timing harness for the data-parallel kernels: runs each one in serial
// reference mode and under OpenMP, checks the outputs are bitwise identical
// and prints the speedup. Not part of the test suite; build and run directly.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "growth/classify.hpp"
#include "growth/embedding.hpp"
#include "growth/format.hpp"
#include "growth/parallel.hpp"
#include "growth/spec.hpp"
#include "growth/witness.hpp"

using namespace growth;

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void bench(const char* name, const std::function<std::string()>& kernel) {
    std::string serial_out, omp_out;
    double serial_ms = 0.0, omp_ms = 0.0;
    {
        par::ModeGuard g(par::Mode::serial);
        kernel(); // warm-up
        serial_ms = time_ms([&] { serial_out = kernel(); });
    }
    {
        par::ModeGuard g(par::Mode::openmp);
        kernel();
        omp_ms = time_ms([&] { omp_out = kernel(); });
    }
    std::printf("%-28s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   bitwise %s\n", name,
                serial_ms, omp_ms, serial_ms / omp_ms, serial_out == omp_out ? "OK" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif

    const GridConfig cfg;

    bench("classify powlog:2:1", [&] { return classify(powlog_spec(2, 1), cfg).to_text(); });

    bench("dlog invgeo(powlog,expm1)", [&] {
        const auto spec = invgeo_spec(powlog_spec(2, 1), expm1_spec(), 0.5);
        const auto [cm, cp] = dlog_constants(spec, cfg);
        return format_real(cm) + "," + format_real(cp);
    });

    bench("boundary sweep 21 samples", [&] {
        std::ostringstream csv;
        write_boundary_csv(csv, boundary_sweep(pow_spec(2), pow_spec(4), 0.0, 2.0, 21, cfg));
        return csv.str();
    });

    bench("disk modular 1024^2", [&] {
        QuadConfig q;
        q.n_radial = 1024;
        q.n_angular = 1024;
        return format_real(weighted_integral({0.5, 1.0}, pow_spec(2), 0.0, 1.0, q));
    });

    bench("lux family 512^2", [&] {
        QuadConfig q;
        q.n_radial = 512;
        q.n_angular = 512;
        std::vector<TestFunction> family;
        for (int i = 0; i <= 4; ++i) family.push_back({0.2 * i, 1.0});
        std::ostringstream csv;
        write_witness_csv(csv, witness_embedding(pow_spec(2), pow_spec(4), 0, 2, family, q));
        return csv.str();
    });

    return 0;
}
