#pragma once

// Exact integer and character-sum primitives: multiplicative functions,
// modular inverses, additive characters e(x) and their p-part companions,
// classical Kloosterman sums, and the per-prime A-factors attached to a
// cubic level N^3 (N squarefree).

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cubictrace::arith {

using cplx = std::complex<double>;

struct NotSquarefree : std::invalid_argument {
    explicit NotSquarefree(std::int64_t n)
        : std::invalid_argument("level must be squarefree, got " + std::to_string(n)) {}
};

struct NotCoprime : std::invalid_argument {
    NotCoprime(std::int64_t a, std::int64_t b)
        : std::invalid_argument("arguments must be coprime: gcd(" + std::to_string(a) +
                                ", " + std::to_string(b) + ") != 1") {}
};

// Trial-division factorization; (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

bool is_squarefree(std::int64_t n);
bool is_prime(std::int64_t n);

int mobius(std::int64_t n);
std::int64_t totient(std::int64_t n);
std::int64_t tau(std::int64_t n);
int omega(std::int64_t n);            // number of distinct prime factors
int big_omega(std::int64_t n);        // number of prime factors with multiplicity

std::int64_t gcd(std::int64_t a, std::int64_t b);

// x with a*x == 1 (mod m), 0 <= x < m; extended Euclid.  Requires gcd(a,m)=1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);

// Normalize a into [0, m).
std::int64_t mod_pos(std::int64_t a, std::int64_t m);

// e(num/den) = exp(2*pi*i*num/den).  The fraction need not be reduced.
cplx additive_character(std::int64_t num, std::int64_t den);

// psi_p(x) = e^{-2 pi i r_p(x)} where r_p(x) is the p-principal part of the
// rational x = num/den: the unique b/p^t (mod 1) with x - b/p^t integral at p.
cplx psi_p(std::int64_t num, std::int64_t den, std::int64_t p);

// Classical Kloosterman sum S(m,n;c) = sum_{x mod c, (x,c)=1} e((m x + n xbar)/c).
// Real by the x -> -x symmetry; the imaginary residue is asserted < 1e-12.
double kloosterman(std::int64_t m, std::int64_t n, std::int64_t c);

// A_N(c) = prod_{p|N} (-1 if p does not divide c, p-1 if p | c).
std::int64_t a_factor(std::int64_t N, std::int64_t c);

// A_{N,M}(c) = prod_{p|N} (e(M/p) if p does not divide c, 1 if p | c).
cplx a_factor_m(std::int64_t N, std::int64_t M, std::int64_t c);

// The unique 1 <= Mtilde <= N with Mtilde == -M (N/p)^3 (mod p) for each p|N.
std::int64_t tilde_m(std::int64_t N, std::int64_t M);

}  // namespace cubictrace::arith
