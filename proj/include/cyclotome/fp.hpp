#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cyclotome {

// Exact arithmetic mod a prime p, 2 <= p < 2^31. Values are stored
// normalized in [0, p). No floating point anywhere in the artifact.
struct PrimeField {
    uint32_t p = 2;

    PrimeField() = default;
    explicit PrimeField(uint32_t prime) : p(prime) {
        if (!is_prime(prime))
            throw std::invalid_argument("PrimeField: " + std::to_string(prime) + " is not prime");
    }

    static bool is_prime(uint32_t n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    uint32_t reduce(int64_t x) const {
        int64_t r = x % int64_t(p);
        if (r < 0) r += p;
        return uint32_t(r);
    }
    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const { return uint32_t((uint64_t(a) * b) % p); }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint32_t r = 1 % p, base = a % p;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
    // p prime, so a^(p-2) inverts nonzero a
    uint32_t inv(uint32_t a) const {
        if (a % p == 0) throw std::domain_error("PrimeField::inv of zero");
        return pow(a, p - 2);
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const { return p == o.p; }
    bool operator!=(const PrimeField& o) const { return p != o.p; }
};

} // namespace cyclotome
