#pragma once

#include "epco/cocycle.hpp"

namespace epco::testing {

// the Z-system on Z_a with tau(k) = (k+b) mod a and xi(k) = floor((b+k)/a)
inline Cocycle division_cocycle(long a, long b) {
    auto Z = Group::integers();
    std::vector<int> tau(a);
    for (long k = 0; k < a; ++k) tau[k] = static_cast<int>(((k + b) % a + a) % a);
    std::vector<GroupElement> xi;
    for (long k = 0; k < a; ++k) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), mpz_class(b + k).get_mpz_t(), mpz_class(a).get_mpz_t());
        xi.push_back(Z->from_integer(q));
    }
    auto act = SetAction::free_abelian(Z, static_cast<int>(a), {tau});
    return Cocycle::generating(std::move(act), Z, {std::move(xi)});
}

// integer cocycle on the canonical rotation of Z_a with a given generating function
inline Cocycle rotation_cocycle(const std::vector<long>& xi_values) {
    auto Z = Group::integers();
    long a = static_cast<long>(xi_values.size());
    std::vector<int> tau(a);
    for (long k = 0; k < a; ++k) tau[k] = static_cast<int>((k + 1) % a);
    std::vector<GroupElement> xi;
    for (long v : xi_values) xi.push_back(Z->from_integer(v));
    auto act = SetAction::free_abelian(Z, static_cast<int>(a), {tau});
    return Cocycle::generating(std::move(act), Z, {std::move(xi)});
}

} // namespace epco::testing
