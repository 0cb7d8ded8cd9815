#include "flan/params.hpp"

#include <string>

#include "flan/errors.hpp"

namespace flan {

namespace {

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for all 64-bit integers.
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

void LshParams::validate() const {
    if (charlens.empty()) throw ValidationError("charlens must be nonempty");
    std::uint32_t prev = 0;
    for (std::uint32_t len : charlens) {
        if (len < 1) throw ValidationError("charlens entries must be >= 1");
        if (len <= prev) throw ValidationError("charlens must be strictly increasing");
        prev = len;
    }
    if (num_repetitions < 1) throw ValidationError("num_repetitions must be >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
    if (num_bins < 1) throw ValidationError("num_bins must be >= 1");
    if (!is_power_of_two(universe_size)) throw ValidationError("universe_size must be a power of two");
    if (!is_power_of_two(folded_universe_size)) {
        throw ValidationError("folded_universe_size must be a power of two");
    }
    if (universe_size % num_bins != 0) {
        throw ValidationError("universe_size must be divisible by num_bins");
    }
    if (universe_size > (1ull << 62) || folded_universe_size > (1ull << 62)) {
        throw ValidationError("universe sizes above 2^62 are not supported");
    }
    if (!is_prime_u64(prime)) {
        throw ValidationError("prime is not prime: " + std::to_string(prime));
    }
}

std::vector<RepetitionCoeffs> draw_coefficients(const LshParams& params) {
    params.validate();
    std::uint64_t state = params.seed;
    std::vector<RepetitionCoeffs> coeffs(params.num_repetitions);
    const std::uint64_t u = params.universe_size;
    for (auto& rep : coeffs) {
        rep.substring.a = 1 + splitmix64(state) % u;  // [1, U]
        rep.substring.b = splitmix64(state) % u;      // [0, U-1]
        rep.fold.a = 1 + splitmix64(state) % u;
        rep.fold.b = splitmix64(state) % u;
    }
    return coeffs;
}

}  // namespace flan
