// Benchmark: serial reference sweep vs the OpenMP kernel on the same grid,
// with a bit-identity check between the two result sets.

#include <chrono>
#include <cstdio>
#include <string>

#include "specnorm/reports.hpp"
#include "specnorm/sweep.hpp"

using namespace specnorm;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n_max = 120;
    int repeat = 3;
    std::string theta_text = "0.1pi";
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto next = [&](const char* what) -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "missing value for %s\n", what);
                std::exit(2);
            }
            return argv[++i];
        };
        if (a == "--n-max") {
            n_max = std::stoi(next("--n-max"));
        } else if (a == "--repeat") {
            repeat = std::stoi(next("--repeat"));
        } else if (a == "--theta") {
            theta_text = next("--theta");
        } else {
            std::fprintf(stderr, "usage: bench_sweep [--n-max N] [--repeat R] [--theta A]\n");
            return 2;
        }
    }

    WeightSpec spec = WeightSpec::hermite();
    Angle theta = Angle::parse(theta_text);
    PrecisionPolicy pol = PrecisionPolicy::with_target(30);

    std::printf("bounds sweep, hermite, theta=%s, even n <= %d, %d repeats\n",
                theta.describe().c_str(), n_max, repeat);

    double best_serial = 1e300, best_parallel = 1e300;
    std::string csv_serial, csv_parallel;
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        auto rows = bounds_sweep(spec, theta, n_max, 2, pol, /*parallel=*/false);
        double dt = seconds_since(t0);
        best_serial = std::min(best_serial, dt);
        csv_serial = bounds_csv(rows, 30);
        std::printf("  serial   run %d: %8.3f s\n", r + 1, dt);
    }
    for (int r = 0; r < repeat; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        auto rows = bounds_sweep(spec, theta, n_max, 2, pol, /*parallel=*/true);
        double dt = seconds_since(t0);
        best_parallel = std::min(best_parallel, dt);
        csv_parallel = bounds_csv(rows, 30);
        std::printf("  parallel run %d: %8.3f s\n", r + 1, dt);
    }

    bool identical = csv_serial == csv_parallel;
    std::printf("best serial   : %8.3f s\n", best_serial);
    std::printf("best parallel : %8.3f s  (speedup %.2fx)\n", best_parallel,
                best_serial / best_parallel);
    std::printf("bit-identical results: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
