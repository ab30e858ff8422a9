// Compares the parallel grid search against the serial reference on
// identical inputs, and times batch detection across replicates. Run with
// FCPD_THREADS=k to pin the worker count.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fcpd/detector.hpp"
#include "fcpd/parallel.hpp"
#include "fcpd/simulation.hpp"
#include "fcpd/tuning.hpp"

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Eigen::VectorXd noisy_steps(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    Eigen::VectorXd y(n);
    for (int t = 0; t < n; ++t) {
        double level = (t >= n / 3) + (t >= 2 * n / 3);
        y[t] = 3.0 * level + noise(rng);
    }
    return y;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 2000;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;
    if (n < 10 || reps < 1) {
        std::cerr << "usage: parbench [n >= 10] [reps >= 1]\n";
        return 1;
    }

    std::cout << "thread budget: " << fcpd::thread_budget() << "\n";
    fcpd::TuningGrid grid = fcpd::TuningGrid::standard();

    double t_par = 0.0, t_ser = 0.0;
    bool all_equal = true;
    for (int rep = 0; rep < reps; ++rep) {
        Eigen::VectorXd y = noisy_steps(n, 1234 + static_cast<std::uint64_t>(rep));

        double t0 = now_ms();
        fcpd::TuningResult parallel = fcpd::grid_search(y, grid, 0.001);
        double t1 = now_ms();
        fcpd::TuningResult serial = fcpd::grid_search_reference(y, grid, 0.001);
        double t2 = now_ms();

        t_par += t1 - t0;
        t_ser += t2 - t1;
        bool equal = parallel.lambda == serial.lambda && parallel.c == serial.c &&
                     parallel.changepoints == serial.changepoints &&
                     parallel.bic == serial.bic;
        all_equal = all_equal && equal;
        std::cout << "rep " << rep << ": lambda=" << parallel.lambda << " c=" << parallel.c
                  << " cps=" << parallel.changepoints.size()
                  << (equal ? "" : "  MISMATCH vs reference") << "\n";
    }

    std::cout << "grid_search           " << t_par / reps << " ms/rep\n";
    std::cout << "grid_search_reference " << t_ser / reps << " ms/rep\n";

    // Batch detection over independent replicates, the second parallel axis.
    fcpd::ScenarioDesign design;
    design.kind = fcpd::ScenarioKind::none;
    design.transform = fcpd::PathTransform::identity;
    design.none_length = n;

    double t3 = now_ms();
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng(777 + static_cast<std::uint64_t>(rep));
        fcpd::Scenario scenario = fcpd::sample_scenario(design, rng);
        scenario.seed = rng();
        auto [series, truth] = fcpd::generate_series(scenario);
        (void)truth;
        fcpd::DetectorConfig config;
        fcpd::ChangepointReport report = fcpd::detect(series, config);
        (void)report;
    }
    double t4 = now_ms();
    std::cout << "detect                " << (t4 - t3) / reps << " ms/rep (n=" << n << ")\n";

    if (!all_equal) {
        std::cerr << "parallel and reference grid searches disagreed\n";
        return 1;
    }
    return 0;
}
