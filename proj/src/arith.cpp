#include "cubictrace/arith.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cubictrace::arith {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(std::int64_t n) {
    if (n < 1) return false;
    for (auto [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

int mobius(std::int64_t n) {
    auto f = factorize(n);
    for (auto [p, e] : f)
        if (e > 1) return 0;
    return f.size() % 2 ? -1 : 1;
}

std::int64_t totient(std::int64_t n) {
    std::int64_t t = n;
    for (auto [p, e] : factorize(n)) t = t / p * (p - 1);
    return t;
}

std::int64_t tau(std::int64_t n) {
    std::int64_t t = 1;
    for (auto [p, e] : factorize(n)) t *= (e + 1);
    return t;
}

int omega(std::int64_t n) { return static_cast<int>(factorize(n).size()); }

int big_omega(std::int64_t n) {
    int t = 0;
    for (auto [p, e] : factorize(n)) t += e;
    return t;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    a = mod_pos(a, m);
    // Extended Euclid on (a, m).
    std::int64_t r0 = a, r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1; r0 = r1; r1 = r2;
        std::int64_t s2 = s0 - q * s1; s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw NotCoprime(a, m);
    return mod_pos(s0, m);
}

cplx additive_character(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("additive_character: zero denominator");
    double arg = two_pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(arg), std::sin(arg)};
}

cplx psi_p(std::int64_t num, std::int64_t den, std::int64_t p) {
    if (den == 0) throw std::invalid_argument("psi_p: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    // Split den = p^t * m with (m,p)=1; the p-principal part of num/den is
    // b/p^t (mod 1) with b = num * mbar mod p^t.
    std::int64_t pt = 1;
    while (den % p == 0) { den /= p; pt *= p; }
    if (pt == 1) return {1.0, 0.0};
    std::int64_t b = mod_pos(num % pt * inverse_mod(den, pt) % pt, pt);
    // psi_p(x) = e^{-2 pi i b/p^t}
    return additive_character(-b, pt);
}

namespace {

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1;
    b = mod_pos(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
        b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// Smallest generator of (Z/p^e)^x for odd p (a primitive root mod p that
// stays primitive mod p^2 generates every p-power level).
std::int64_t primitive_root(std::int64_t p) {
    auto fac = factorize(p - 1);
    for (std::int64_t g = 2;; ++g) {
        bool ok = true;
        for (auto [f, e] : fac)
            if (powmod(g, (p - 1) / f, p) == 1) { ok = false; break; }
        if (!ok) continue;
        if (powmod(g, p - 1, p * p) == 1) return g + p;
        return g;
    }
}

cplx kloosterman_ppow(std::int64_t m, std::int64_t n, std::int64_t p, int e) {
    std::int64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    m = mod_pos(m, q);
    n = mod_pos(n, q);
    cplx sum = 0.0;
    if (p == 2) {
        if (e == 1) return additive_character(m + n, 2);
        if (e == 2) return additive_character(m + n, 4) + additive_character(3 * (m + n), 4);
        // units mod 2^e are {+-3^j}; pair x with q-x, whose inverse is q-xbar
        std::int64_t x = 1, xi = 1, i3 = inverse_mod(3, q);
        std::int64_t half = q / 4;
        for (std::int64_t j = 0; j < half; ++j) {
            double arg = two_pi * static_cast<double>((m * x + n * xi) % q) /
                         static_cast<double>(q);
            sum += 2.0 * std::cos(arg);
            x = x * 3 % q;
            xi = xi * i3 % q;
        }
        return sum;
    }
    if (e == 1) {
        // O(p) inverse table via the division recurrence
        std::vector<std::int32_t> inv(p);
        inv[1] = 1;
        for (std::int64_t i = 2; i < p; ++i)
            inv[i] = static_cast<std::int32_t>((p - p / i) * inv[p % i] % p);
        for (std::int64_t x = 1; x < p; ++x)
            sum += additive_character((m * x + n * inv[x]) % p, p);
        return sum;
    }
    std::int64_t g = primitive_root(p);
    std::int64_t gi = inverse_mod(g, q);
    std::int64_t phi = q / p * (p - 1);
    std::int64_t x = 1, xi = 1;
    for (std::int64_t j = 0; j < phi; ++j) {
        double arg = two_pi *
                     static_cast<double>((static_cast<__int128>(m) * x + static_cast<__int128>(n) * xi) % q) /
                     static_cast<double>(q);
        sum += cplx(std::cos(arg), std::sin(arg));
        x = static_cast<std::int64_t>(static_cast<__int128>(x) * g % q);
        xi = static_cast<std::int64_t>(static_cast<__int128>(xi) * gi % q);
    }
    return sum;
}

}  // namespace

double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c) {
    if (c < 1) throw std::invalid_argument("kloosterman: c must be >= 1");
    if (c == 1) return 1.0;
    // CRT: S(m,n;qr) = S(m rbar, n rbar; q) S(m qbar, n qbar; r) for (q,r)=1.
    cplx prod = 1.0;
    for (auto [p, e] : factorize(c)) {
        std::int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        std::int64_t r = c / q;
        std::int64_t rbar = inverse_mod(r % q, q);
        prod *= kloosterman_ppow(m % q * rbar % q, n % q * rbar % q, p, e);
    }
    assert(std::abs(prod.imag()) < 1e-10 * (1.0 + std::abs(prod.real())) + 1e-7);
    return prod.real();
}

std::int64_t a_factor(std::int64_t N, std::int64_t c) {
    if (!is_squarefree(N)) throw NotSquarefree(N);
    std::int64_t v = 1;
    for (auto [p, e] : factorize(N)) v *= (c % p == 0) ? (p - 1) : -1;
    return v;
}

cplx a_factor_m(std::int64_t N, std::int64_t M, std::int64_t c) {
    if (!is_squarefree(N)) throw NotSquarefree(N);
    if (std::gcd(mod_pos(M, N == 1 ? 1 : N), N) != 1) throw NotCoprime(M, N);
    cplx v = 1.0;
    for (auto [p, e] : factorize(N))
        if (c % p != 0) v *= additive_character(mod_pos(M, p), p);
    return v;
}

std::int64_t tilde_m(std::int64_t N, std::int64_t M) {
    if (!is_squarefree(N)) throw NotSquarefree(N);
    if (N == 1) return 1;
    if (std::gcd(mod_pos(M, N), N) != 1) throw NotCoprime(M, N);
    // CRT over the prime factors of N: Mtilde == -M (N/p)^3 (mod p).
    std::int64_t r = 0, mod = 1;
    for (auto [p, e] : factorize(N)) {
        std::int64_t q = N / p;
        std::int64_t target = mod_pos(-(M % p) * (q % p) % p * (q % p) % p * (q % p) % p, p);
        // Merge r (mod mod) with target (mod p); the moduli are coprime.
        std::int64_t t = mod_pos((target - r) % p * inverse_mod(mod % p, p) % p, p);
        r += mod * t;
        mod *= p;
    }
    return r == 0 ? N : r;  // represent in [1, N]
}

}  // namespace cubictrace::arith
