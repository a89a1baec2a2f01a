#pragma once

#include <random>

#include "sigmadelta/expr.hpp"
#include "sigmadelta/tower.hpp"

namespace sigmadelta::testing {

inline RatFunc rf(std::string_view text) { return parse_ratfunc(text); }

/// Random polynomial in x and t with small integer coefficients.
inline Poly random_poly(std::mt19937& rng, unsigned max_degree = 2, int max_coeff = 3) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    Poly p;
    for (unsigned i = 0; i <= max_degree; ++i)
        for (unsigned j = 0; i + j <= max_degree; ++j) {
            int c = coeff(rng);
            if (c) p += Poly(c) * Poly::variable("x", i) * Poly::variable("t", j);
        }
    return p;
}

inline RatFunc random_ratfunc(std::mt19937& rng, unsigned max_degree = 2) {
    Poly d;
    while (d.is_zero()) d = random_poly(rng, 1, 2);
    return RatFunc(random_poly(rng, max_degree), d);
}

inline TowerElem random_tower(std::mt19937& rng, int support = 3) {
    std::uniform_int_distribution<int> power(-2, 2);
    TowerElem e;
    for (int k = 0; k < support; ++k)
        e += TowerElem(TowerElem::coeff(random_ratfunc(rng, 1), RatFunc(random_poly(rng, 1))), power(rng));
    return e;
}

}  // namespace sigmadelta::testing
