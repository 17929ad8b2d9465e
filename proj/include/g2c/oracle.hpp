#pragma once

#include "g2c/jacobian.hpp"

namespace g2c {

// chi(T) = T^4 - s1 T^3 + s2 T^2 - q s1 T + q^2
struct FrobCharPoly {
    mpz_class s1, s2, q;

    mpz_class order() const {  // chi(1) = #J
        return 1 - s1 + s2 - q * s1 + q * q;
    }
    bool operator==(const FrobCharPoly& o) const {
        return s1 == o.s1 && s2 == o.s2 && q == o.q;
    }
};

struct ZetaData {
    mpz_class count_q, count_q2;  // #C(F_q), #C(F_{q^2})
    FrobCharPoly chi;
};

// Ground truth by quadratic-character enumeration over F_q and F_{q^2}.
// Refuses when q^2 > 10^8. threads bounds the enumeration workers; the
// result does not depend on it.
ZetaData naive_chi(const Curve& c, int threads = 1);

// The quadratic factor of chi over Z_3 with unit roots, mod 3^m:
// T^2 + g1 T + g0 where g0 = pi_1 pi_2. Requires s2 != 0 mod 3.
std::vector<mpz_class> unit_root_factor(const FrobCharPoly& chi, int m);
mpz_class unit_root_product(const FrobCharPoly& chi, int m);

}  // namespace g2c
