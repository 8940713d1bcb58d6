#pragma once

#include <random>

#include "platelim/conic.hpp"

namespace platelim {

// Random cone program with a known optimal value, built by sampling a
// complementary primal-dual pair (x*, y*, z*) and setting b = A x*,
// c = A' y* + z*. Strong duality then pins the optimal objective to c'x*.
struct CertifiedInstance {
    ConicProgram program;
    double optimal_objective = 0.0;
};

inline CertifiedInstance make_certified_socp(uint64_t seed, int max_cols = 500) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto in_range = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    CertifiedInstance inst;
    ConicProgram& p = inst.program;
    const int target_cols = 10 + static_cast<int>(unit(rng) * (max_cols - 10));

    std::vector<double> x, z;
    while (static_cast<int>(x.size()) < target_cols) {
        const double pick = unit(rng);
        if (pick < 0.25) {
            const int dim = 1 + static_cast<int>(unit(rng) * 4.0);
            p.cones.push_back({ConeKind::free_block, dim});
            for (int k = 0; k < dim; ++k) {
                x.push_back(gauss(rng));
                z.push_back(0.0);
            }
        } else if (pick < 0.6) {
            const int dim = 1 + static_cast<int>(unit(rng) * 7.0);
            p.cones.push_back({ConeKind::nonneg, dim});
            for (int k = 0; k < dim; ++k) {
                if (unit(rng) < 0.5) {
                    x.push_back(in_range(0.1, 2.0));
                    z.push_back(0.0);
                } else {
                    x.push_back(0.0);
                    z.push_back(in_range(0.1, 2.0));
                }
            }
        } else {
            const int dim = 2 + static_cast<int>(unit(rng) * 6.0);
            p.cones.push_back({ConeKind::soc, dim});
            std::vector<double> tail(dim - 1);
            double tail_norm = 0.0;
            for (double& t : tail) {
                t = gauss(rng);
                tail_norm += t * t;
            }
            tail_norm = std::sqrt(tail_norm);
            const double mode = unit(rng);
            if (mode < 0.4) {  // x interior, z = 0
                x.push_back(tail_norm + in_range(0.5, 1.5));
                for (double t : tail) x.push_back(t);
                for (int k = 0; k < dim; ++k) z.push_back(0.0);
            } else if (mode < 0.7) {  // z interior, x = 0
                for (int k = 0; k < dim; ++k) x.push_back(0.0);
                z.push_back(tail_norm + in_range(0.5, 1.5));
                for (double t : tail) z.push_back(t);
            } else {  // both on the boundary, z proportional to the reflection
                const double s = in_range(0.1, 2.0);
                x.push_back(tail_norm);
                for (double t : tail) x.push_back(t);
                z.push_back(s * tail_norm);
                for (double t : tail) z.push_back(-s * t);
            }
        }
    }
    p.cols = static_cast<int>(x.size());
    const int m = 3 + static_cast<int>(unit(rng) * (p.cols / 2 - 3));
    p.rows = m;

    std::vector<double> y(m);
    for (double& v : y) v = gauss(rng);

    // Sparse A: three entries per column plus a guaranteed entry per row.
    std::vector<std::vector<std::pair<int, double>>> cols_of(p.cols);
    std::vector<char> row_used(m, 0);
    for (int j = 0; j < p.cols; ++j) {
        for (int k = 0; k < 3; ++k) {
            const int i = static_cast<int>(unit(rng) * m) % m;
            cols_of[j].push_back({i, gauss(rng)});
            row_used[i] = 1;
        }
    }
    for (int i = 0; i < m; ++i) {
        if (!row_used[i]) {
            const int j = static_cast<int>(unit(rng) * p.cols) % p.cols;
            cols_of[j].push_back({i, gauss(rng)});
        }
    }

    std::vector<double> b(m, 0.0), c(p.cols, 0.0);
    for (int j = 0; j < p.cols; ++j) {
        for (const auto& [i, v] : cols_of[j]) {
            p.entries.push_back({i, j, v});
            b[i] += v * x[j];
            c[j] += v * y[i];
        }
        c[j] += z[j];
    }
    p.rhs = std::move(b);
    p.objective = std::move(c);

    inst.optimal_objective = 0.0;
    for (int j = 0; j < p.cols; ++j) inst.optimal_objective += p.objective[j] * x[j];
    // c'x* = b'y* + x'z* = b'y* exactly by construction.
    return inst;
}

}  // namespace platelim
