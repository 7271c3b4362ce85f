/*
Serial reference vs OpenMP sweep of h_t over a t-grid.

  bench_sweep [dim] [steps]
*/

#include "cyent/entropy.hpp"
#include "cyent/parallel.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

int main(int argc, char **argv)
{
    namespace chrono = std::chrono;
    const int dim = argc > 1 ? std::atoi(argv[1]) : 4;
    const int steps = argc > 2 ? std::atoi(argv[2]) : 401;

    const cyent::VarietySpec X = cyent::make_variety(dim);
    const cyent::Rational tol = cyent::default_tolerance();

    auto t_1 = chrono::steady_clock::now();
    const auto serial = cyent::sweep_serial(X, -3.0, 3.0, steps, tol);
    auto t_2 = chrono::steady_clock::now();
    const auto parallel = cyent::sweep(X, -3.0, 3.0, steps, tol);
    auto t_3 = chrono::steady_clock::now();

    // same rows, bit for bit
    for (std::size_t i = 0; i < serial.size(); i++)
        if (serial[i].result.lambda != parallel[i].result.lambda ||
            serial[i].result.bracket.lo != parallel[i].result.bracket.lo)
        {
            std::cerr << "mismatch at row " << i << '\n';
            return 1;
        }

    const double ms_serial = chrono::duration<double, std::milli>(t_2 - t_1).count();
    const double ms_parallel = chrono::duration<double, std::milli>(t_3 - t_2).count();
    std::cout << "dim " << dim << ", " << steps << " grid points\n"
              << "serial:   " << ms_serial << " ms\n"
              << "parallel: " << ms_parallel << " ms (" << cyent::configured_threads()
              << " threads, speedup " << ms_serial / ms_parallel << ")\n";
}
