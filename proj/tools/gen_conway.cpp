// Regenerates core/src/conway_table.inc: Conway polynomials for all p^t <= 2^16.
//   gen_conway > core/src/conway_table.inc

#include <cstdint>
#include <cstdio>

#include "pgsnf/conway.hpp"

int main() {
    constexpr std::uint64_t kLimit = 1u << 16;
    for (std::uint64_t p = 2; p <= kLimit; ++p) {
        if (!pgsnf::is_prime(p)) continue;
        std::uint64_t q = p;
        for (unsigned t = 1; q <= kLimit; ++t, q *= p) {
            const auto f = pgsnf::compute_conway_polynomial(p, t);
            std::printf("%llu, %u,", static_cast<unsigned long long>(p), t);
            for (auto c : f) std::printf(" %llu,", static_cast<unsigned long long>(c));
            std::printf("\n");
        }
    }
}
