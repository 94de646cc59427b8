#pragma once

#include "chtouca/rational.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace chtouca {

// Either Q or a finite field GF(p^k). Elements are carried as Q values; for a
// finite field the value is the integer index sum c_i p^i of the coordinate
// vector in the power basis of F_p[x]/(modulus).
class Field {
public:
    static Field rational();
    // modulus: monic, coefficients c_0..c_k; empty picks the first irreducible.
    static Field finite(int p, int k, std::vector<int> modulus = {});

    bool is_rational() const { return tab_ == nullptr; }
    int characteristic() const { return p_; }
    int degree() const { return k_; }
    long order() const { return q_; }  // 0 for Q
    const std::vector<int>& modulus() const;

    Q zero() const { return Q(0); }
    Q one() const { return Q(1); }
    Q from_int(long v) const;

    Q add(const Q& a, const Q& b) const;
    Q sub(const Q& a, const Q& b) const;
    Q neg(const Q& a) const;
    Q mul(const Q& a, const Q& b) const;
    Q inv(const Q& a) const;
    Q div(const Q& a, const Q& b) const { return mul(a, inv(b)); }
    Q pow(const Q& a, long e) const;
    bool is_zero(const Q& a) const { return a == 0; }

    bool contains(const Q& a) const;
    std::vector<Q> elements() const;  // finite fields only
    std::string format(const Q& a) const;
    Q parse(const std::string& s) const;

    Q random(std::mt19937_64& rng, int bound = 5) const;
    Q random_nonzero(std::mt19937_64& rng, int bound = 5) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    static std::vector<int> first_irreducible(int p, int k);

private:
    struct Tables {
        std::vector<int> modulus;
        std::vector<int> exp, log;  // log[0] unused
        std::vector<std::vector<int>> digits;
    };
    int p_ = 0, k_ = 0;
    long q_ = 0;
    std::shared_ptr<const Tables> tab_;

    long idx(const Q& a) const;
};

}  // namespace chtouca
