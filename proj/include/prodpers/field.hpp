#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "prodpers/core.hpp"

namespace prodpers {

// Prime field GF(q) with runtime characteristic. Default is GF(2);
// odd primes matter because product-complex boundaries carry signs.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t q = 2) : q_(q) {
        if (!is_prime(q)) throw std::invalid_argument("field characteristic must be prime");
        inverse_.assign(q_, 0);
        for (std::uint32_t x = 1; x < q_; ++x) inverse_[x] = pow_mod(x, q_ - 2);
    }

    std::uint32_t characteristic() const { return q_; }

    // Reduces an arbitrary integer coefficient into [0, q).
    std::uint32_t reduce(std::int64_t c) const {
        std::int64_t r = c % static_cast<std::int64_t>(q_);
        if (r < 0) r += q_;
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
        std::uint32_t s = x + y;
        return s >= q_ ? s - q_ : s;
    }

    std::uint32_t neg(std::uint32_t x) const { return x == 0 ? 0 : q_ - x; }

    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        return static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(x) * y) % q_);
    }

    std::uint32_t inv(std::uint32_t x) const {
        if (x == 0) throw std::domain_error("inverse of zero");
        return inverse_[x];
    }

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint32_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint32_t pow_mod(std::uint32_t base, std::uint32_t e) const {
        std::uint64_t acc = 1, b = base;
        while (e) {
            if (e & 1) acc = acc * b % q_;
            b = b * b % q_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(acc);
    }

    std::uint32_t q_;
    std::vector<std::uint32_t> inverse_;
};

} // namespace prodpers
