#pragma once

#include <random>

#include "qsep/linalg.hpp"

namespace qsep::testing {

inline ComplexMatrix random_matrix(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
    return m;
}

inline ComplexMatrix random_hermitian(int d, std::mt19937_64& rng) {
    const ComplexMatrix m = random_matrix(d, rng);
    ComplexMatrix h(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) h(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    return h;
}

inline ComplexMatrix random_psd(int d, std::mt19937_64& rng) {
    const ComplexMatrix m = random_matrix(d, rng);
    return m * dagger(m);
}

inline ComplexVector random_vector(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v[i] = Complex(g(rng), g(rng));
    return v;
}

}  // namespace qsep::testing
