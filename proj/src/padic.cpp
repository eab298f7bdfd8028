#include "cubictrace/padic.hpp"

#include "cubictrace/arith.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace cubictrace::padic {

namespace {

std::int64_t ipow(std::int64_t p, int e) {
    std::int64_t r = 1;
    while (e-- > 0) {
        assert(r < (std::int64_t{1} << 62) / p);
        r *= p;
    }
    return r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// psi_p(u / p^t) for integer u: e^{-2 pi i u / p^t}.
cplx psi_scaled(std::int64_t u, std::int64_t pt) {
    double arg = -2.0 * std::numbers::pi * static_cast<double>(arith::mod_pos(u, pt)) /
                 static_cast<double>(pt);
    return {std::cos(arg), std::sin(arg)};
}

void check_spec(const LocalTestSpec& spec) {
    if (spec.m_p < 1 || spec.m_p > spec.p - 1)
        throw std::invalid_argument("LocalTestSpec: m_p must lie in [1, p-1]");
}

}  // namespace

PAdicApprox padic(std::int64_t p, int valuation, std::int64_t unit, int precision) {
    if (precision < 1) throw std::invalid_argument("padic: precision must be >= 1");
    PAdicApprox x{p, valuation, 0, precision};
    x.unit = arith::mod_pos(unit, ipow(p, precision));
    return x.normalized();
}

PAdicApprox padic_int(std::int64_t p, std::int64_t n, int precision) {
    return padic(p, 0, n, precision);
}

PAdicApprox PAdicApprox::normalized() const {
    PAdicApprox x = *this;
    while (x.unit != 0 && x.unit % x.p == 0 && x.precision > 1) {
        x.unit /= x.p;
        x.valuation += 1;
        x.precision -= 1;
    }
    return x;
}

int PAdicApprox::val() const {
    PAdicApprox x = normalized();
    if (x.unit == 0 || x.unit % x.p == 0)
        throw InsufficientPrecision("valuation unresolved (unit vanishes mod p^precision)");
    return x.valuation;
}

bool PAdicApprox::val_at_least(int k) const {
    PAdicApprox x = normalized();
    if (x.unit != 0 && x.unit % x.p != 0) return x.valuation >= k;
    // unit is 0: we only know v_p(x) >= abs_precision().
    if (abs_precision() >= k) return true;
    throw InsufficientPrecision("cannot decide v_p(x) >= " + std::to_string(k));
}

std::int64_t PAdicApprox::residue_at(int scale, int digits) const {
    if (!val_at_least(scale))
        throw std::invalid_argument("residue_at: v_p(x) < requested scale");
    if (abs_precision() < scale + digits)
        throw InsufficientPrecision("residue_at needs " + std::to_string(scale + digits) +
                                    " absolute digits, have " + std::to_string(abs_precision()));
    // x = p^valuation * unit; x / p^scale = p^(valuation-scale) * unit.
    std::int64_t pd = ipow(p, digits);
    std::int64_t r = unit % pd;
    for (int i = 0; i < valuation - scale && r != 0; ++i) r = r * p % pd;
    return r;
}

PAdicApprox PAdicApprox::operator-() const {
    PAdicApprox x = *this;
    std::int64_t pd = ipow(p, precision);
    x.unit = arith::mod_pos(-unit, pd);
    return x;
}

PAdicApprox PAdicApprox::operator*(const PAdicApprox& o) const {
    assert(p == o.p);
    int prec = std::min(precision, o.precision);
    std::int64_t pd = ipow(p, prec);
    PAdicApprox r{p, valuation + o.valuation, mulmod(unit % pd, o.unit % pd, pd), prec};
    return r.normalized();
}

PAdicApprox PAdicApprox::operator+(const PAdicApprox& o) const {
    assert(p == o.p);
    int v = std::min(valuation, o.valuation);
    int abs = std::min(abs_precision(), o.abs_precision());
    int prec = abs - v;
    if (prec < 1)
        throw InsufficientPrecision("sum has no resolved digits");
    std::int64_t pd = ipow(p, prec);
    std::int64_t a = unit % pd, b = o.unit % pd;
    for (int i = 0; i < valuation - v; ++i) a = a * p % pd;
    for (int i = 0; i < o.valuation - v; ++i) b = b * p % pd;
    PAdicApprox r{p, v, (a + b) % pd, prec};
    return r.normalized();
}

cplx local_kloosterman(std::int64_t theta1, std::int64_t theta2, std::int64_t p, int t) {
    if (t < 0) throw std::invalid_argument("local_kloosterman: t must be >= 0");
    if (t == 0) return 1.0;
    std::int64_t pt = ipow(p, t);
    cplx sum = 0.0;
    for (std::int64_t x = 1; x < pt; ++x) {
        if (x % p == 0) continue;
        std::int64_t xbar = arith::inverse_mod(x, pt);
        // psi_p(-(theta1 x + theta2 xbar)/p^t) = e(+(theta1 x + theta2 xbar)/p^t)
        sum += psi_scaled(-(mulmod(arith::mod_pos(theta1, pt), x, pt) +
                            mulmod(arith::mod_pos(theta2, pt), xbar, pt)),
                          pt);
    }
    return sum;
}

cplx eval_f(const LocalTestSpec& spec, const Matrix2Local& g) {
    check_spec(spec);
    const std::int64_t p = spec.p;
    const auto& e00 = g[0];
    const auto& e01 = g[1];
    const auto& e10 = g[2];
    const auto& e11 = g[3];

    // Central p-power scaling: the diagonal entries must share one exact
    // valuation v, with v_p(e01) >= v-1 and v_p(e10) >= v+2.
    int v;
    PAdicApprox n00 = e00.normalized(), n11 = e11.normalized();
    bool z00 = n00.unit_is_zero() || n00.unit % p == 0;
    bool z11 = n11.unit_is_zero() || n11.unit % p == 0;
    if (!z00) {
        v = n00.val();
        if (z11) {
            if (e11.abs_precision() > v) return 0.0;  // v_p(e11) > v, off support
            throw InsufficientPrecision("diagonal entry undecided");
        }
        if (n11.val() != v) return 0.0;
    } else if (!z11) {
        v = n11.val();
        if (e00.abs_precision() > v) return 0.0;
        throw InsufficientPrecision("diagonal entry undecided");
    } else {
        throw InsufficientPrecision("both diagonal entries vanish to stored precision");
    }
    if (!e01.val_at_least(v - 1)) return 0.0;
    if (!e10.val_at_least(v + 2)) return 0.0;

    std::int64_t a1 = e00.residue_at(v, 1);
    std::int64_t b1 = e01.val_at_least(v) ? 0 : e01.residue_at(v - 1, 1);
    std::int64_t c1 = e10.val_at_least(v + 3) ? 0 : e10.residue_at(v + 2, 1);

    std::int64_t arg2 = spec.m_p % p * c1 % p * arith::inverse_mod(a1, p) % p;
    cplx sum = 0.0;
    for (std::int64_t l = 1; l < p; ++l)
        sum += psi_scaled(b1 * l + arg2 * arith::inverse_mod(l, p), p);
    return static_cast<double>(p + 1) * sum;
}

cplx eval_f_twisted(const LocalTestSpec& spec, const Matrix2Local& g) {
    check_spec(spec);
    const std::int64_t p = spec.p;
    const auto& e00 = g[0];
    const auto& e01 = g[1];
    const auto& e10 = g[2];
    const auto& e11 = g[3];

    // Scaled pattern [[c, p^-2 d], [p a, b]]: the off-diagonal entries carry
    // exact unit valuations v-2 and v+1 respectively.
    int v;
    PAdicApprox n01 = e01.normalized(), n10 = e10.normalized();
    bool z01 = n01.unit_is_zero() || n01.unit % p == 0;
    bool z10 = n10.unit_is_zero() || n10.unit % p == 0;
    if (!z01 && !z10) {
        if (n10.val() - n01.val() != 3) return 0.0;
        v = n01.val() + 2;
    } else if (!z01) {
        v = n01.val() + 2;
        if (e10.abs_precision() > v + 1) return 0.0;
        throw InsufficientPrecision("lower-left entry undecided");
    } else if (!z10) {
        v = n10.val() - 1;
        if (e01.abs_precision() > v - 2) return 0.0;
        throw InsufficientPrecision("upper-right entry undecided");
    } else {
        throw InsufficientPrecision("both off-diagonal entries vanish to stored precision");
    }
    if (!e00.val_at_least(v)) return 0.0;
    if (!e11.val_at_least(v)) return 0.0;

    std::int64_t d1 = e01.residue_at(v - 2, 1);
    std::int64_t a1 = e10.residue_at(v + 1, 1);
    std::int64_t c1 = e00.val_at_least(v + 1) ? 0 : e00.residue_at(v, 1);
    std::int64_t b1 = e11.val_at_least(v + 1) ? 0 : e11.residue_at(v, 1);

    std::int64_t arg1 = c1 * arith::inverse_mod(a1, p) % p;
    std::int64_t arg2 = spec.m_p % p * b1 % p * arith::inverse_mod(d1, p) % p;
    cplx sum = 0.0;
    for (std::int64_t l = 1; l < p; ++l)
        sum += psi_scaled(arg1 * l + arg2 * arith::inverse_mod(l, p), p);
    return static_cast<double>(p + 1) * sum;
}

double orbital_first_local(const LocalTestSpec& spec) {
    check_spec(spec);
    return spec.variant == Variant::plain
               ? static_cast<double>(spec.p * (spec.p + 1))
               : 0.0;
}

cplx orbital_second_local_closed(const LocalTestSpec& spec, const PAdicApprox& a) {
    check_spec(spec);
    const std::int64_t p = spec.p;
    const int v = a.val();
    if (spec.variant == Variant::twisted) {
        if (v != -3) return 0.0;
        std::int64_t a0 = a.residue_at(-3, 1);  // p^3 a mod p
        if ((a0 + spec.m_p) % p != 0) return 0.0;
        return static_cast<double>(p * p * (p + 1));
    }
    if (v > -4 || v % 2 != 0) return 0.0;
    const int t = -v / 2;
    cplx s = local_kloosterman(1, a.residue_at(v, t), p, t);
    cplx value = static_cast<double>(p * (p + 1)) * s;
    if (t == 2) value *= psi_scaled(-spec.m_p, p);  // psi_p(-m_p/p)
    return value;
}

cplx orbital_second_local_bruteforce(const LocalTestSpec& spec, const PAdicApprox& a) {
    check_spec(spec);
    const std::int64_t p = spec.p;
    const int v = a.val();

    if (spec.variant == Variant::twisted) {
        // Support needs v_p(a+xy) = -3 with v_p(xy) >= -2, hence v_p(a) = -3.
        if (v != -3) return 0.0;
        if (a.precision < 2)
            throw InsufficientPrecision("twisted brute force needs >= 2 digits of a");
        cplx J = 0.0;
        const PAdicApprox one = padic_int(p, 1, a.precision + 4);
        for (std::int64_t x0 = 0; x0 < p; ++x0) {
            PAdicApprox x = padic(p, -1, x0, 1);
            for (std::int64_t y0 = 0; y0 < p; ++y0) {
                PAdicApprox y = padic(p, -1, y0, 1);
                Matrix2Local g{-x, -(a + x * y), one, y};
                cplx fv = eval_f_twisted(spec, g);
                if (fv == 0.0) continue;
                // conj(psi_p(x)) psi_p(y), weight 1 per residue class
                J += fv * std::conj(psi_scaled(x0, p)) * psi_scaled(y0, p);
            }
        }
        return J;
    }

    // Plain: support forces v_p(x) = v_p(y) = -t (t >= 2) and
    // v_p(a+xy) >= -1-t; only t = -v/2 can meet the latter, the other
    // candidate depths fail the support valuation check identically.
    if (v > -4 || v % 2 != 0) return 0.0;
    const int t = -v / 2;
    if (a.precision < t + 2)
        throw InsufficientPrecision("plain brute force needs precision >= t+2");
    const std::int64_t pt = ipow(p, t);
    cplx J = 0.0;
    const PAdicApprox one = padic_int(p, 1, a.precision + 2 * t);
    for (std::int64_t x0 = 1; x0 < pt; ++x0) {
        if (x0 % p == 0) continue;
        PAdicApprox x = padic(p, -t, x0, t);
        for (std::int64_t y0 = 1; y0 < pt; ++y0) {
            if (y0 % p == 0) continue;
            PAdicApprox y = padic(p, -t, y0, t);
            Matrix2Local g{-x, -(a + x * y), one, y};
            cplx fv = eval_f(spec, g);
            if (fv == 0.0) continue;
            J += fv * std::conj(psi_scaled(x0, pt)) * psi_scaled(y0, pt);
        }
    }
    return J;
}

cplx orbital_second_unramified(int r1, int r2, std::int64_t p, const PAdicApprox& a) {
    if (r1 < 0 || r2 < 0) throw std::invalid_argument("orbital_second_unramified: r1,r2 >= 0");
    const int v = a.val();
    if (v > r1 + r2 || (r1 + r2 - v) % 2 != 0) return 0.0;
    const int t = (r1 + r2 - v) / 2;
    double scale = std::pow(static_cast<double>(p), -(r1 + r2));
    if (t == 0) return scale;
    const std::int64_t pt = ipow(p, t);
    // theta1 = p^r1, theta2 = a p^{2t-r1} (valuation r2), both mod p^t.
    std::int64_t theta1 = r1 >= t ? 0 : ipow(p, r1);
    std::int64_t theta2 = 0;
    if (r2 < t) {
        std::int64_t u = a.residue_at(v, t - r2);
        theta2 = u % ipow(p, t - r2);
        for (int i = 0; i < r2; ++i) theta2 = theta2 * p % pt;
    }
    return scale * local_kloosterman(theta1, theta2, p, t);
}

}  // namespace cubictrace::padic
